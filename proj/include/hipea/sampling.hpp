// Copyright 2026 The hipea Authors
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

#ifndef HIPEA_SAMPLING_HPP_
#define HIPEA_SAMPLING_HPP_

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <vector>

#include "hipea/error.hpp"

namespace hipea {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_tag(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Seeds depend on what is being sampled, never on scheduling order.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t s = splitmix64(root);
  for (auto t : tags) s = splitmix64(s ^ splitmix64(t));
  return s;
}

inline std::uint64_t draw_binomial(std::uint64_t n, double p, std::mt19937_64& rng) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  std::binomial_distribution<std::uint64_t> d(n, p);
  return d(rng);
}

// Multinomial draw by sequential conditional binomials.
inline std::vector<std::uint64_t> multinomial(std::uint64_t shots, const std::vector<double>& probs, std::mt19937_64& rng) {
  std::vector<std::uint64_t> counts(probs.size(), 0);
  double remaining = 0.0;
  std::size_t last = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < 0.0) fail(Errc::InvalidArgument, "negative probability");
    if (probs[i] > 0.0) last = i;
    remaining += probs[i];
  }
  if (last == probs.size()) fail(Errc::InvalidArgument, "distribution has no mass");
  std::uint64_t left = shots;
  for (std::size_t i = 0; i < last && left > 0; ++i) {
    counts[i] = draw_binomial(left, std::clamp(probs[i] / remaining, 0.0, 1.0), rng);
    left -= counts[i];
    remaining -= probs[i];
  }
  counts[last] = left;
  return counts;
}

inline std::vector<std::uint64_t> sample_counts(const std::vector<double>& probs, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) fail(Errc::InvalidArgument, "shots must be at least 1");
  std::mt19937_64 rng(seed);
  return multinomial(shots, probs, rng);
}

}  // namespace hipea

#endif  // HIPEA_SAMPLING_HPP_
