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


#include "contractlab/function_learning.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace contractlab {
namespace {

void Append(std::vector<Breakpoint>& points, double x, double y) {
  if (!points.empty() && !(x > points.back().x)) {
    points.back().y = std::max(points.back().y, y);
    return;
  }
  points.push_back({x, y});
}

}  // namespace

int64_t SlopeGridHalfWidth(double eps) {
  if (!(eps > 0 && eps < 4)) throw std::invalid_argument("eps out of range");
  return static_cast<int64_t>(std::ceil(4 / eps * std::log(4 / eps)));
}

PiecewiseLinearFn LearnConvex(const SubgradientOracle& oracle, double eps) {
  const int64_t i_max = SlopeGridHalfWidth(eps);
  std::vector<double> xs;
  xs.reserve(2 * i_max + 1);
  double running = 0;
  for (int64_t i = -i_max; i <= i_max; ++i) {
    running = std::max(running, oracle(std::exp(i * eps / 4)));
    xs.push_back(running);
  }
  std::vector<Breakpoint> points;
  Append(points, 0, 0);
  Append(points, xs[0], 0);
  double g = 0;
  for (int64_t i = -i_max; i < i_max; ++i) {
    size_t k = static_cast<size_t>(i + i_max);
    g += std::exp(i * eps / 4) * (xs[k + 1] - xs[k]);
    Append(points, xs[k + 1], g);
  }
  if (g < 1) {
    double last_slope = std::exp(i_max * eps / 4);
    Append(points, xs.back() + (1 - g) / last_slope, 1);
  }
  return PiecewiseLinearFn(std::move(points));
}

PiecewiseLinearFn InvertConvex(const PiecewiseLinearFn& g) {
  std::vector<Breakpoint> points;
  for (const Breakpoint& p : g.breakpoints()) {
    if (!points.empty() && !(p.y > points.back().x)) {
      points.back().y = std::max(points.back().y, p.x);
      continue;
    }
    points.push_back({p.y, p.x});
  }
  return PiecewiseLinearFn(std::move(points));
}

PiecewiseLinearFn LearnConcave(const SubgradientOracle& oracle, double eps) {
  PiecewiseLinearFn g = LearnConvex(oracle, eps * eps / 2);
  PiecewiseLinearFn f = InvertConvex(g);
  if (f.x_max() > 1) f = f.Restrict(0, 1);
  return PointwiseMin(f, PiecewiseLinearFn::Constant(0, 1, 1));
}

}  // namespace contractlab
