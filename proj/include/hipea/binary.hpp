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

#ifndef HIPEA_BINARY_HPP_
#define HIPEA_BINARY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "hipea/error.hpp"

namespace hipea {

// A bit sequence. Whether it is MSB-first or LSB-first depends on the
// caller: eigenvalue strings are MSB-first, extraction paths LSB-first.
using Bits = std::vector<std::uint8_t>;

constexpr int kMaxBitWidth = 30;

inline std::string bits_string(const Bits& b) {
  std::string s;
  s.reserve(b.size());
  for (auto x : b) s.push_back(x ? '1' : '0');
  return s;
}

inline Bits parse_bits(std::string_view s) {
  Bits b;
  b.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') fail(Errc::ParseError, "bit string contains '" + std::string(1, c) + "'");
    b.push_back(c == '1' ? 1 : 0);
  }
  return b;
}

inline Bits reversed(Bits b) {
  std::reverse(b.begin(), b.end());
  return b;
}

// m-bit fixed point value 0.b1 b2 ... bm, b1 most significant.
class BinaryFraction {
 public:
  BinaryFraction() = default;
  explicit BinaryFraction(Bits msb_first) : bits_(std::move(msb_first)) {
    if (bits_.empty() || static_cast<int>(bits_.size()) > kMaxBitWidth)
      fail(Errc::InvalidArgument, "bit width must be in 1.." + std::to_string(kMaxBitWidth));
    for (auto& x : bits_)
      if (x > 1) fail(Errc::InvalidArgument, "bits must be 0 or 1");
  }

  static BinaryFraction parse(std::string_view s) { return BinaryFraction(parse_bits(s)); }

  static BinaryFraction from_numerator(std::uint64_t num, int m) {
    if (m < 1 || m > kMaxBitWidth) fail(Errc::InvalidArgument, "bit width out of range");
    if (num >= (std::uint64_t{1} << m)) fail(Errc::NotRepresentable, "numerator exceeds 2^m");
    Bits b(static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k) b[static_cast<std::size_t>(k - 1)] = (num >> (m - k)) & 1u;
    return BinaryFraction(std::move(b));
  }

  int width() const { return static_cast<int>(bits_.size()); }
  const Bits& bits() const { return bits_; }

  // k is 1-based, k = 1 is the most significant bit.
  int bit(int k) const {
    if (k < 1 || k > width()) fail(Errc::InvalidArgument, "bit index out of range");
    return bits_[static_cast<std::size_t>(k - 1)];
  }

  std::uint64_t numerator() const {
    std::uint64_t n = 0;
    for (auto x : bits_) n = (n << 1) | x;
    return n;
  }

  double value() const { return std::ldexp(static_cast<double>(numerator()), -width()); }

  std::string str() const { return bits_string(bits_); }

  // The l lowest bits, lowest first: what l iterations would extract.
  Bits low_path(int l) const {
    if (l < 0 || l > width()) fail(Errc::InvalidArgument, "path length out of range");
    Bits p;
    for (int i = 0; i < l; ++i) p.push_back(bits_[static_cast<std::size_t>(width() - 1 - i)]);
    return p;
  }

  friend bool operator==(const BinaryFraction&, const BinaryFraction&) = default;
  friend auto operator<=>(const BinaryFraction& a, const BinaryFraction& b) { return a.bits_ <=> b.bits_; }

 private:
  Bits bits_;
};

inline double decode_bits(const BinaryFraction& f) { return f.value(); }

inline BinaryFraction encode_value(double v, int m) {
  if (m < 1 || m > kMaxBitWidth) fail(Errc::InvalidArgument, "bit width out of range");
  if (!(v >= 0.0 && v < 1.0)) fail(Errc::NotRepresentable, "value " + std::to_string(v) + " outside [0,1)");
  const double scaled = std::ldexp(v, m);
  const double k = std::round(scaled);
  if (std::abs(scaled - k) > std::ldexp(1e-9, m))
    fail(Errc::NotRepresentable, "value " + std::to_string(v) + " is not an m-bit dyadic fraction (m=" + std::to_string(m) + ")");
  if (k >= std::ldexp(1.0, m))
    fail(Errc::NotRepresentable, "value " + std::to_string(v) + " rounds to 1 at width " + std::to_string(m));
  return BinaryFraction::from_numerator(static_cast<std::uint64_t>(k), m);
}

// Path (LSB-first) rendered the way outcome labels are printed: most
// significant extracted bit first.
inline std::string path_label(const Bits& lsb_first) { return bits_string(reversed(lsb_first)); }

// Bits already known before iteration l, MSB-first: reverse of the path prefix.
inline Bits known_low_bits(const Bits& path_lsb_first) { return reversed(path_lsb_first); }

// omega = -2pi (0.0 b1 b2 ... br)_2
inline double rotation_angle(const Bits& known_msb_first) {
  double frac = 0.0;
  for (std::size_t i = 0; i < known_msb_first.size(); ++i)
    if (known_msb_first[i]) frac += std::ldexp(1.0, -static_cast<int>(i) - 2);
  return frac == 0.0 ? 0.0 : -2.0 * std::numbers::pi * frac;
}

inline std::string format_omega(const Bits& known_msb_first) {
  return "-2pi(0.0" + bits_string(known_msb_first) + ")";
}

inline Bits parse_omega(std::string_view s) {
  constexpr std::string_view head = "-2pi(0.0";
  if (s.size() < head.size() + 1 || s.substr(0, head.size()) != head || s.back() != ')')
    fail(Errc::ParseError, "malformed rotation string '" + std::string(s) + "'");
  return parse_bits(s.substr(head.size(), s.size() - head.size() - 1));
}

struct TreeGroup {
  Bits suffix;                       // low bits, lowest first
  std::vector<std::size_t> members;  // indices into the eigenvalue list
};

struct Divergence {
  int bit_position = 0;  // k, 1 = MSB
  int iteration = 0;     // m + 1 - k
  Bits parent_suffix;    // shared low bits before the split, lowest first
  std::size_t zero_size = 0;
  std::size_t one_size = 0;
};

struct DivergenceTree {
  int m = 0;
  std::vector<std::vector<TreeGroup>> levels;  // levels[l-1] is iteration l
  std::vector<Divergence> divergences;

  std::vector<int> divergence_iterations() const {
    std::vector<int> it;
    for (const auto& d : divergences) it.push_back(d.iteration);
    return it;
  }

  // Number of distinct low-l suffixes.
  std::size_t group_count(int l) const { return levels.at(static_cast<std::size_t>(l - 1)).size(); }
};

inline DivergenceTree build_divergence_tree(const std::vector<BinaryFraction>& phis) {
  if (phis.empty()) fail(Errc::InvalidArgument, "empty eigenvalue list");
  const int m = phis.front().width();
  for (const auto& p : phis)
    if (p.width() != m) fail(Errc::InvalidArgument, "eigenvalues have unequal bit widths");
  for (std::size_t i = 0; i < phis.size(); ++i)
    for (std::size_t j = i + 1; j < phis.size(); ++j)
      if (phis[i] == phis[j]) fail(Errc::DegenerateSpectrum, "eigenvalue " + phis[i].str() + " repeated");

  DivergenceTree tree;
  tree.m = m;
  std::vector<TreeGroup> current{{{}, {}}};
  for (std::size_t j = 0; j < phis.size(); ++j) current.front().members.push_back(j);

  for (int l = 1; l <= m; ++l) {
    const int k = m + 1 - l;
    std::vector<TreeGroup> next;
    for (const auto& g : current) {
      TreeGroup zero{g.suffix, {}}, one{g.suffix, {}};
      zero.suffix.push_back(0);
      one.suffix.push_back(1);
      for (auto j : g.members) (phis[j].bit(k) ? one : zero).members.push_back(j);
      if (!zero.members.empty() && !one.members.empty())
        tree.divergences.push_back({k, l, g.suffix, zero.members.size(), one.members.size()});
      if (!zero.members.empty()) next.push_back(std::move(zero));
      if (!one.members.empty()) next.push_back(std::move(one));
    }
    tree.levels.push_back(next);
    current = std::move(next);
  }
  return tree;
}

}  // namespace hipea

#endif  // HIPEA_BINARY_HPP_
