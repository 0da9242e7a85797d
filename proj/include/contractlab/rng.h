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


#ifndef CONTRACTLAB_RNG_H_
#define CONTRACTLAB_RNG_H_

#include <cstdint>
#include <span>
#include <string_view>

namespace contractlab {

// Counter-based generator: draw k is SplitMix64's finalizer applied to
// seed + k * golden_gamma. Child streams use Mix(seed ^ fnv1a(label)).
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed) {}

  uint64_t NextU64();
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  // Inverse-CDF draw from pmf in ascending index order.
  int Sample(std::span<const double> pmf);

  Rng Child(std::string_view label) const { return Rng(ChildSeed(seed_, label)); }
  static uint64_t ChildSeed(uint64_t seed, std::string_view label);
  static uint64_t Mix(uint64_t z);

  uint64_t seed() const { return seed_; }
  uint64_t counter() const { return counter_; }

 private:
  uint64_t seed_;
  uint64_t counter_ = 0;
};

}  // namespace contractlab

#endif  // CONTRACTLAB_RNG_H_
