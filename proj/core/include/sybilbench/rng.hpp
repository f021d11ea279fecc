// Copyright 2026 The Sybilbench Authors
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

#ifndef SYBILBENCH_RNG_HPP_
#define SYBILBENCH_RNG_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace sybilbench {

// SplitMix64 engine. Satisfies UniformRandomBitGenerator, but callers should
// prefer the helpers below over <random> distributions: their output is fixed
// by this library rather than by the standard library vendor, which keeps
// seeded runs byte-identical across toolchains.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

// Mixes a master seed with a stream index into an independent child seed.
// Used for counter-based per-trial and per-stage streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// Named stages of a seeded run; each draws from its own derived stream.
enum class Stream : std::uint64_t {
  kDualSubset = 1,
  kResistance = 2,
  kResistanceProb = 3,
  kAttack = 4,
  kSplit = 5,
  kBaseline = 6,
  kCentrality = 7,
  kEstimator = 8,
};

inline std::uint64_t derive_seed(std::uint64_t master, Stream stream) {
  return derive_seed(master, static_cast<std::uint64_t>(stream));
}

// Uniform sample of `count` distinct elements, in draw order.
template <typename T>
std::vector<T> sample_without_replacement(std::span<const T> items,
                                          std::size_t count, Rng& rng) {
  std::vector<T> pool(items.begin(), items.end());
  if (count > pool.size()) count = pool.size();
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace sybilbench

#endif  // SYBILBENCH_RNG_HPP_
