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


#ifndef CONTRACTLAB_PIECEWISE_LINEAR_H_
#define CONTRACTLAB_PIECEWISE_LINEAR_H_

#include <span>
#include <vector>

namespace contractlab {

struct Breakpoint {
  double x = 0;
  double y = 0;
};

// Closed interval of slopes. Bounds may be infinite.
struct SlopeInterval {
  double lo = 0;
  double hi = 0;
  bool Contains(double s, double tol) const {
    return s >= lo - tol && s <= hi + tol;
  }
};

// Continuous function given by breakpoints with strictly increasing x and
// linear interpolation in between. The domain is [x_first, x_last]; points
// outside it (beyond a 1e-12 slack) raise std::out_of_range.
class PiecewiseLinearFn {
 public:
  PiecewiseLinearFn() = default;
  // Requires at least two breakpoints with strictly increasing x.
  explicit PiecewiseLinearFn(std::vector<Breakpoint> points);

  // Constant function on [x0, x1].
  static PiecewiseLinearFn Constant(double x0, double x1, double y);

  double Eval(double x) const;

  // Leftmost x with Eval(x) == y. Requires a nondecreasing function and y in
  // its range.
  double Inverse(double y) const;

  // [left slope, right slope] sorted ascending at interior breakpoints, the
  // single slope inside a segment, and the one-sided slope at the domain ends.
  SlopeInterval Subgradient(double x) const;

  double Slope(int segment) const;
  int num_segments() const { return static_cast<int>(points_.size()) - 1; }
  std::span<const Breakpoint> breakpoints() const { return points_; }
  double x_min() const { return points_.front().x; }
  double x_max() const { return points_.back().x; }
  double y_first() const { return points_.front().y; }
  double y_last() const { return points_.back().y; }
  bool empty() const { return points_.empty(); }

  bool IsNondecreasing(double tol) const;
  bool IsConvex(double tol) const;
  bool IsConcave(double tol) const;

  // Restriction to [x0, x1] (a subset of the domain).
  PiecewiseLinearFn Restrict(double x0, double x1) const;

  // Extends the domain to [x_min, x1] with a constant tail at the last value.
  PiecewiseLinearFn ExtendFlat(double x1) const;

  // Drops breakpoints whose neighbors are collinear within tol.
  PiecewiseLinearFn Simplified(double tol) const;

 private:
  // Index k of the segment [x_k, x_{k+1}] containing x.
  int Segment(double x) const;
  double Clamp(double x) const;

  std::vector<Breakpoint> points_;
};

// Pointwise minimum on the intersection of the domains, including crossing
// points as breakpoints.
PiecewiseLinearFn PointwiseMin(const PiecewiseLinearFn& a,
                               const PiecewiseLinearFn& b);

// Upper concave hull of points with distinct sorted x.
PiecewiseLinearFn ConcaveClosure(std::span<const Breakpoint> points);

}  // namespace contractlab

#endif  // CONTRACTLAB_PIECEWISE_LINEAR_H_
