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

#ifndef CONTRACTLAB_NUMERIC_H_
#define CONTRACTLAB_NUMERIC_H_

namespace contractlab {

// Absolute tolerance for probability and invariant checks.
inline constexpr double kTolerance = 1e-9;

// Agent utilities within this distance of the maximum count as tied.
inline constexpr double kTieTolerance = 1e-7;

}  // namespace contractlab

#endif  // CONTRACTLAB_NUMERIC_H_
