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


#include "contractlab/rng.h"

namespace contractlab {
namespace {

constexpr uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;
constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

}  // namespace

uint64_t Rng::Mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t Rng::ChildSeed(uint64_t seed, std::string_view label) {
  uint64_t h = kFnvOffset;
  for (unsigned char c : label) {
    h ^= c;
    h *= kFnvPrime;
  }
  return Mix(seed ^ h);
}

uint64_t Rng::NextU64() {
  ++counter_;
  return Mix(seed_ + counter_ * kGoldenGamma);
}

double Rng::Uniform() { return (NextU64() >> 11) * 0x1.0p-53; }

int Rng::Sample(std::span<const double> pmf) {
  double u = Uniform();
  double cumulative = 0;
  int last_positive = 0;
  for (size_t w = 0; w < pmf.size(); ++w) {
    if (pmf[w] <= 0) continue;
    last_positive = static_cast<int>(w);
    cumulative += pmf[w];
    if (u < cumulative) return last_positive;
  }
  return last_positive;
}

}  // namespace contractlab
