// Copyright 2026 The balhyp Authors
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

#ifndef BALHYP_RANDOM_H_
#define BALHYP_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace balhyp {

// A (seed, stream) pair names one reproducible random stream.
struct Seed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Splittable derivation: the stream for child `index` under `tag` of
// `parent`. Deriving new children never perturbs existing ones.
Seed DeriveSeed(Seed parent, std::uint64_t tag, std::uint64_t index);

// Random source whose output is identical on every platform.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The standard distributions are not (their algorithms are
// implementation-defined), so every variate below is derived from raw
// 64-bit words by a fixed recipe.
class Rng {
 public:
  explicit Rng(Seed seed);

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform01() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }
  // Uniform on (0, 1].
  double UniformOpenClosed() {
    return static_cast<double>((NextU64() >> 11) + 1) * 0x1.0p-53;
  }
  bool Bernoulli(double p) { return Uniform01() < p; }
  // Uniform on [0, bound), unbiased (Lemire's multiply-and-reject).
  std::uint64_t UniformInt(std::uint64_t bound);

  // Fisher-Yates shuffle.
  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[UniformInt(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace balhyp

#endif  // BALHYP_RANDOM_H_
