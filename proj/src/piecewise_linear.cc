// Copyright 2026 The contractlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "contractlab/piecewise_linear.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace contractlab {
namespace {

constexpr double kDomainSlack = 1e-12;

double Interpolate(const Breakpoint& a, const Breakpoint& b, double x) {
  if (x <= a.x) return a.y;
  if (x >= b.x) return b.y;
  double t = (x - a.x) / (b.x - a.x);
  return a.y + t * (b.y - a.y);
}

}  // namespace

PiecewiseLinearFn::PiecewiseLinearFn(std::vector<Breakpoint> points)
    : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw std::invalid_argument("PiecewiseLinearFn needs >= 2 breakpoints");
  }
  for (size_t k = 0; k < points_.size(); ++k) {
    if (!std::isfinite(points_[k].x) || !std::isfinite(points_[k].y)) {
      throw std::invalid_argument("PiecewiseLinearFn: non-finite breakpoint");
    }
    if (k > 0 && !(points_[k].x > points_[k - 1].x)) {
      throw std::invalid_argument(
          "PiecewiseLinearFn: x not strictly increasing at breakpoint " +
          std::to_string(k));
    }
  }
}

PiecewiseLinearFn PiecewiseLinearFn::Constant(double x0, double x1, double y) {
  return PiecewiseLinearFn({{x0, y}, {x1, y}});
}

double PiecewiseLinearFn::Clamp(double x) const {
  if (points_.empty()) throw std::logic_error("empty PiecewiseLinearFn");
  if (x < x_min() - kDomainSlack || x > x_max() + kDomainSlack ||
      std::isnan(x)) {
    throw std::out_of_range("PiecewiseLinearFn: x=" + std::to_string(x) +
                            " outside [" + std::to_string(x_min()) + ", " +
                            std::to_string(x_max()) + "]");
  }
  return std::clamp(x, x_min(), x_max());
}

int PiecewiseLinearFn::Segment(double x) const {
  auto it = std::upper_bound(
      points_.begin(), points_.end(), x,
      [](double v, const Breakpoint& p) { return v < p.x; });
  int k = static_cast<int>(it - points_.begin()) - 1;
  return std::clamp(k, 0, num_segments() - 1);
}

double PiecewiseLinearFn::Eval(double x) const {
  x = Clamp(x);
  int k = Segment(x);
  if (x == points_[k].x) return points_[k].y;
  if (x == points_[k + 1].x) return points_[k + 1].y;
  return Interpolate(points_[k], points_[k + 1], x);
}

double PiecewiseLinearFn::Slope(int segment) const {
  const Breakpoint& a = points_.at(segment);
  const Breakpoint& b = points_.at(segment + 1);
  return (b.y - a.y) / (b.x - a.x);
}

double PiecewiseLinearFn::Inverse(double y) const {
  if (points_.empty()) throw std::logic_error("empty PiecewiseLinearFn");
  if (y < y_first() - kDomainSlack || y > y_last() + kDomainSlack ||
      std::isnan(y)) {
    throw std::out_of_range("PiecewiseLinearFn::Inverse: y=" +
                            std::to_string(y) + " outside range");
  }
  if (y <= points_.front().y) return points_.front().x;
  auto it = std::lower_bound(
      points_.begin(), points_.end(), y,
      [](const Breakpoint& p, double v) { return p.y < v; });
  if (it == points_.end()) return points_.back().x;
  const Breakpoint& b = *it;
  const Breakpoint& a = *(it - 1);
  if (y >= b.y) return b.x;
  return a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x);
}

SlopeInterval PiecewiseLinearFn::Subgradient(double x) const {
  x = Clamp(x);
  int k = Segment(x);
  if (x == points_[k + 1].x && k + 1 < num_segments()) ++k;
  double right = Slope(k);
  if (x != points_[k].x) return {right, right};
  if (k == 0) return {right, right};
  double left = Slope(k - 1);
  return {std::min(left, right), std::max(left, right)};
}

bool PiecewiseLinearFn::IsNondecreasing(double tol) const {
  for (size_t k = 1; k < points_.size(); ++k) {
    if (points_[k].y < points_[k - 1].y - tol) return false;
  }
  return true;
}

bool PiecewiseLinearFn::IsConvex(double tol) const {
  for (int k = 1; k < num_segments(); ++k) {
    // Compare in value units so that very short segments do not amplify noise.
    const Breakpoint& a = points_[k - 1];
    const Breakpoint& b = points_[k + 1];
    if (points_[k].y > Interpolate(a, b, points_[k].x) + tol) return false;
  }
  return true;
}

bool PiecewiseLinearFn::IsConcave(double tol) const {
  for (int k = 1; k < num_segments(); ++k) {
    const Breakpoint& a = points_[k - 1];
    const Breakpoint& b = points_[k + 1];
    if (points_[k].y < Interpolate(a, b, points_[k].x) - tol) return false;
  }
  return true;
}

PiecewiseLinearFn PiecewiseLinearFn::Restrict(double x0, double x1) const {
  x0 = Clamp(x0);
  x1 = Clamp(x1);
  if (!(x1 > x0)) throw std::invalid_argument("Restrict: empty interval");
  std::vector<Breakpoint> out;
  out.push_back({x0, Eval(x0)});
  for (const Breakpoint& p : points_) {
    if (p.x > x0 && p.x < x1) out.push_back(p);
  }
  out.push_back({x1, Eval(x1)});
  return PiecewiseLinearFn(std::move(out));
}

PiecewiseLinearFn PiecewiseLinearFn::ExtendFlat(double x1) const {
  if (x1 <= x_max()) return *this;
  std::vector<Breakpoint> out = points_;
  out.push_back({x1, points_.back().y});
  return PiecewiseLinearFn(std::move(out));
}

PiecewiseLinearFn PiecewiseLinearFn::Simplified(double tol) const {
  std::vector<Breakpoint> out;
  out.push_back(points_.front());
  for (size_t k = 1; k + 1 < points_.size(); ++k) {
    double predicted = Interpolate(out.back(), points_[k + 1], points_[k].x);
    if (std::abs(predicted - points_[k].y) > tol) out.push_back(points_[k]);
  }
  out.push_back(points_.back());
  return PiecewiseLinearFn(std::move(out));
}

PiecewiseLinearFn PointwiseMin(const PiecewiseLinearFn& a,
                               const PiecewiseLinearFn& b) {
  double lo = std::max(a.x_min(), b.x_min());
  double hi = std::min(a.x_max(), b.x_max());
  if (!(hi > lo)) throw std::invalid_argument("PointwiseMin: disjoint domains");
  std::vector<double> xs = {lo, hi};
  for (const Breakpoint& p : a.breakpoints()) {
    if (p.x > lo && p.x < hi) xs.push_back(p.x);
  }
  for (const Breakpoint& p : b.breakpoints()) {
    if (p.x > lo && p.x < hi) xs.push_back(p.x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Breakpoint> out;
  for (size_t k = 0; k < xs.size(); ++k) {
    double ya = a.Eval(xs[k]);
    double yb = b.Eval(xs[k]);
    out.push_back({xs[k], std::min(ya, yb)});
    if (k + 1 == xs.size()) break;
    double da = ya - yb;
    double db = a.Eval(xs[k + 1]) - b.Eval(xs[k + 1]);
    if ((da < 0 && db > 0) || (da > 0 && db < 0)) {
      double t = da / (da - db);
      double xc = xs[k] + t * (xs[k + 1] - xs[k]);
      if (xc > xs[k] && xc < xs[k + 1]) {
        out.push_back({xc, std::min(a.Eval(xc), b.Eval(xc))});
      }
    }
  }
  return PiecewiseLinearFn(std::move(out));
}

PiecewiseLinearFn ConcaveClosure(std::span<const Breakpoint> points) {
  if (points.size() < 2) {
    throw std::invalid_argument("ConcaveClosure needs >= 2 points");
  }
  std::vector<Breakpoint> hull;
  for (const Breakpoint& p : points) {
    if (!hull.empty() && !(p.x > hull.back().x)) {
      throw std::invalid_argument("ConcaveClosure: x not strictly increasing");
    }
    while (hull.size() >= 2) {
      const Breakpoint& o = hull[hull.size() - 2];
      const Breakpoint& a = hull.back();
      double cross = (a.x - o.x) * (p.y - o.y) - (a.y - o.y) * (p.x - o.x);
      if (cross <= 0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return PiecewiseLinearFn(std::move(hull));
}

}  // namespace contractlab
