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


#ifndef CONTRACTLAB_FUNCTION_LEARNING_H_
#define CONTRACTLAB_FUNCTION_LEARNING_H_

#include <cstdint>
#include <functional>

#include "contractlab/piecewise_linear.h"

namespace contractlab {

// Given a slope s > 0, returns x~ such that some z in [x~ - a, x~] has s in
// the subdifferential of the hidden convex function (a is the accuracy).
using SubgradientOracle = std::function<double(double slope)>;

// ceil((4/eps) ln(4/eps)).
int64_t SlopeGridHalfWidth(double eps);

// Queries slopes e^{i eps/4}, i = -i_max..i_max, and assembles a convex
// nondecreasing under-approximation G~ of G starting at (0, 0). The oracle
// must be an (eps^2/16)-subgradient oracle of G: [0, s] -> [0, 1].
PiecewiseLinearFn LearnConvex(const SubgradientOracle& oracle, double eps);

// Learns a concave nondecreasing F: [0, 1] -> [0, 1] from an oracle for
// G = F^{-1} (accuracy eps^4/64) by inverting LearnConvex(oracle, eps^2/2).
// The result is defined on [0, 1], satisfies F~ >= F and is capped at 1.
PiecewiseLinearFn LearnConcave(const SubgradientOracle& oracle, double eps);

// Inverse of a nondecreasing convex function with G(x_min) = 0. Flat pieces
// map to their rightmost point so the inverse dominates.
PiecewiseLinearFn InvertConvex(const PiecewiseLinearFn& g);

}  // namespace contractlab

#endif  // CONTRACTLAB_FUNCTION_LEARNING_H_
