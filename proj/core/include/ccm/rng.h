// Copyright 2026 The CCM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CCM_RNG_H_
#define CCM_RNG_H_

#include <cstdint>
#include <random>

namespace ccm {

// SplitMix64 finalizer; a bijective 64-bit mix.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seed of the example at `step`; independent of worker count and order.
constexpr std::uint64_t DeriveSeed(std::uint64_t base_seed, std::uint64_t step) {
  return Mix64(Mix64(base_seed) ^ (step * 0xd1b54a32d192ed03ull + 0x632be59bd9b4e019ull));
}

// Deterministic random source. The engine's output sequence is fixed by the
// standard and the derived draws below avoid the implementation-defined
// std:: distributions, so streams are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n), n > 0, by rejection.
  std::uint64_t UniformBelow(std::uint64_t n) {
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n + 1) % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v > limit);
    return v % n;
  }

  bool Bernoulli(double p) { return Uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ccm

#endif  // CCM_RNG_H_
