//
// Copyright 2026 The labeldp Authors
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
//

#ifndef LABELDP_RANDOM_H_
#define LABELDP_RANDOM_H_

#include <cmath>
#include <cstdint>
#include <random>

namespace labeldp {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream split rule: the seed of stream `index` under `master` is
// Mix64(master ^ Mix64(index)). Streams for distinct indices are treated as
// independent; nested keys are derived by repeated application.
constexpr uint64_t DeriveSeed(uint64_t master, uint64_t index) {
  return Mix64(master ^ Mix64(index));
}

// Deterministic random source. The engine output sequence is fixed by the
// standard, and every variate below is derived from raw engine words without
// going through <random> distributions, whose algorithms are unspecified.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1).
  double OpenUniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Uniform integer in [0, n). n must be positive.
  int UniformInt(int n) {
    const int v = static_cast<int>(Uniform() * n);
    return v < n ? v : n - 1;
  }

  // Laplace(0, scale) by inverse CDF:
  //   z = -scale * sign(u - 1/2) * ln(1 - 2|u - 1/2|),  u ~ U(0, 1).
  double Laplace(double scale) {
    const double u = OpenUniform() - 0.5;
    if (scale == 0.0) return 0.0;
    const double magnitude = -scale * std::log1p(-2.0 * std::abs(u));
    return u < 0 ? -magnitude : magnitude;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace labeldp

#endif  // LABELDP_RANDOM_H_
