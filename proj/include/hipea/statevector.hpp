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

#ifndef HIPEA_STATEVECTOR_HPP_
#define HIPEA_STATEVECTOR_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "hipea/error.hpp"
#include "hipea/linalg.hpp"
#include "hipea/spectrum.hpp"

namespace hipea {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Square complex matrix, row-major, side 2^k.
struct CMatrix {
  std::size_t dim = 0;
  std::vector<cplx> data;

  explicit CMatrix(std::size_t d = 0) : dim(d), data(d * d, 0.0) {}
  cplx& operator()(std::size_t i, std::size_t j) { return data[i * dim + j]; }
  cplx operator()(std::size_t i, std::size_t j) const { return data[i * dim + j]; }
};

inline CMatrix adjoint(const CMatrix& a) {
  CMatrix r(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) r(i, j) = std::conj(a(j, i));
  return r;
}

// e^{2 pi i r / 2^m}, with the quarter turns exact.
inline cplx dyadic_phase(std::uint64_t r, int m) {
  const std::uint64_t full = std::uint64_t{1} << m;
  r %= full;
  if (r == 0) return {1.0, 0.0};
  if (m >= 1 && r == full / 2) return {-1.0, 0.0};
  if (m >= 2 && r == full / 4) return {0.0, 1.0};
  if (m >= 2 && r == 3 * full / 4) return {0.0, -1.0};
  const double a = 2.0 * std::numbers::pi * std::ldexp(static_cast<double>(r), -m);
  return {std::cos(a), std::sin(a)};
}

// U^power = exp(2 pi i A power) built from the spectrum; identity off its span.
inline CMatrix evolution_operator(const Spectrum& s, std::int64_t power) {
  const std::uint64_t full = std::uint64_t{1} << s.m;
  const std::int64_t signed_full = static_cast<std::int64_t>(full);
  const std::uint64_t p = static_cast<std::uint64_t>(((power % signed_full) + signed_full) % signed_full);
  CMatrix u(s.dim);
  for (std::size_t i = 0; i < s.dim; ++i) u(i, i) = 1.0;
  for (const auto& pair : s.pairs) {
    const cplx c = dyadic_phase((pair.phi.numerator() * p) % full, s.m) - 1.0;
    if (c == cplx{0.0, 0.0}) continue;
    for (std::size_t i = 0; i < s.dim; ++i)
      for (std::size_t j = 0; j < s.dim; ++j) u(i, j) += c * pair.u[i] * pair.u[j];
  }
  return u;
}

struct OutcomeDistribution {
  std::vector<int> qubits;  // first listed qubit is the most significant outcome bit
  std::vector<double> probs;

  int width() const { return static_cast<int>(qubits.size()); }
  double operator[](std::uint64_t outcome) const { return probs.at(outcome); }

  std::string label(std::uint64_t outcome) const {
    std::string s;
    for (int k = width() - 1; k >= 0; --k) s.push_back(((outcome >> k) & 1u) ? '1' : '0');
    return s;
  }

  // Marginal over the listed positions (indices into qubits).
  OutcomeDistribution marginal(const std::vector<int>& positions) const {
    OutcomeDistribution r;
    for (int p : positions) r.qubits.push_back(qubits.at(static_cast<std::size_t>(p)));
    r.probs.assign(std::size_t{1} << positions.size(), 0.0);
    for (std::uint64_t o = 0; o < probs.size(); ++o) {
      std::uint64_t sub = 0;
      for (int p : positions) sub = (sub << 1) | ((o >> (width() - 1 - p)) & 1u);
      r.probs[sub] += probs[o];
    }
    return r;
  }
};

// Ancillas (top register) are qubits 0..n_top-1, qubit 0 being top[1];
// the bottom register follows, most significant qubit first. Qubit q is bit
// (n_qubits-1-q) of the basis index, so bottom amplitudes are contiguous.
class QuantumState {
 public:
  static constexpr int kMaxQubits = 20;

  QuantumState(int n_top, const Vector& b) {
    CVector c(b.begin(), b.end());
    init(n_top, c, b.size());
  }

  QuantumState(int n_top, const CVector& bottom) { init(n_top, bottom, bottom.size()); }

  int n_top() const { return n_top_; }
  int n_bottom() const { return n_bottom_; }
  int n_qubits() const { return n_top_ + n_bottom_; }
  std::size_t bottom_dim() const { return std::size_t{1} << n_bottom_; }
  const CVector& amplitudes() const { return amp_; }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return std::sqrt(s);
  }

  void hadamard(int q) {
    const std::uint64_t mask = bit_mask(q);
    const double r = 1.0 / std::numbers::sqrt2;
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
      if (i & mask) continue;
      const cplx a0 = amp_[i], a1 = amp_[i | mask];
      amp_[i] = r * (a0 + a1);
      amp_[i | mask] = r * (a0 - a1);
    }
  }

  // |1> picks up e^{i omega}.
  void phase(int q, double omega) {
    const std::uint64_t mask = bit_mask(q);
    const cplx f = std::polar(1.0, omega);
    for (std::uint64_t i = 0; i < amp_.size(); ++i)
      if (i & mask) amp_[i] *= f;
  }

  void controlled_power(int control, const Spectrum& s, std::int64_t power) {
    if (control < 0 || control >= n_top_) fail(Errc::BadQubit, "control must be a top-register qubit");
    if (s.dim != bottom_dim()) fail(Errc::DimensionMismatch, "spectrum dimension differs from bottom register");
    controlled_bottom_unitary(control, evolution_operator(s, power));
  }

  void controlled_bottom_unitary(int control, const CMatrix& u) {
    if (control < 0 || control >= n_top_) fail(Errc::BadQubit, "control must be a top-register qubit");
    if (u.dim != bottom_dim()) fail(Errc::DimensionMismatch, "operator dimension differs from bottom register");
    const std::uint64_t mask = bit_mask(control);
    const std::size_t d = bottom_dim();
    CVector block(d);
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << n_top_); ++t) {
      const std::uint64_t base = t * d;
      if (!(base & mask)) continue;
      for (std::size_t i = 0; i < d; ++i) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc += u(i, j) * amp_[base + j];
        block[i] = acc;
      }
      for (std::size_t i = 0; i < d; ++i) amp_[base + i] = block[i];
    }
  }

  // Dense unitary on the listed qubits, first listed = most significant.
  void apply_unitary(const std::vector<int>& qubits, const CMatrix& u) {
    const std::size_t k = qubits.size();
    if (u.dim != (std::size_t{1} << k)) fail(Errc::DimensionMismatch, "unitary size does not match qubit count");
    std::vector<std::uint64_t> masks;
    std::uint64_t all = 0;
    for (int q : qubits) {
      masks.push_back(bit_mask(q));
      if (all & masks.back()) fail(Errc::BadQubit, "qubit listed twice");
      all |= masks.back();
    }
    CVector in(u.dim), out(u.dim);
    std::vector<std::uint64_t> idx(u.dim);
    for (std::uint64_t base = 0; base < amp_.size(); ++base) {
      if (base & all) continue;
      for (std::uint64_t o = 0; o < u.dim; ++o) {
        std::uint64_t i = base;
        for (std::size_t b = 0; b < k; ++b)
          if ((o >> (k - 1 - b)) & 1u) i |= masks[b];
        idx[o] = i;
        in[o] = amp_[i];
      }
      for (std::size_t r = 0; r < u.dim; ++r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < u.dim; ++c) acc += u(r, c) * in[c];
        out[r] = acc;
      }
      for (std::uint64_t o = 0; o < u.dim; ++o) amp_[idx[o]] = out[o];
    }
  }

  // Ry(angles[c]) on target where c is the value held by the controls.
  void multiplexed_ry(int target, const std::vector<int>& controls, const std::vector<double>& angles) {
    if (angles.size() != (std::size_t{1} << controls.size())) fail(Errc::DimensionMismatch, "one angle per control value");
    const std::uint64_t tmask = bit_mask(target);
    std::vector<std::uint64_t> cm;
    for (int q : controls) {
      cm.push_back(bit_mask(q));
      if (cm.back() == tmask) fail(Errc::BadQubit, "target is also a control");
    }
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
      if (i & tmask) continue;
      std::uint64_t c = 0;
      for (auto m : cm) c = (c << 1) | ((i & m) ? 1u : 0u);
      const double h = 0.5 * angles[c];
      const double cs = std::cos(h), sn = std::sin(h);
      const cplx a0 = amp_[i], a1 = amp_[i | tmask];
      amp_[i] = cs * a0 - sn * a1;
      amp_[i | tmask] = sn * a0 + cs * a1;
    }
  }

  OutcomeDistribution distribution(const std::vector<int>& qubits) const {
    if (qubits.empty()) fail(Errc::BadQubit, "no qubits to measure");
    OutcomeDistribution d;
    d.qubits = qubits;
    d.probs.assign(std::size_t{1} << qubits.size(), 0.0);
    std::vector<std::uint64_t> masks;
    for (int q : qubits) masks.push_back(bit_mask(q));
    for (std::uint64_t i = 0; i < amp_.size(); ++i) d.probs[outcome_of(i, masks)] += std::norm(amp_[i]);
    return d;
  }

  // Projects onto the outcome, renormalizes, returns its prior probability.
  double collapse(const std::vector<int>& qubits, std::uint64_t outcome) {
    if (qubits.empty()) fail(Errc::BadQubit, "no qubits to collapse");
    if (outcome >= (std::uint64_t{1} << qubits.size())) fail(Errc::InvalidArgument, "outcome has too many bits");
    std::vector<std::uint64_t> masks;
    for (int q : qubits) masks.push_back(bit_mask(q));
    double p = 0.0;
    for (std::uint64_t i = 0; i < amp_.size(); ++i)
      if (outcome_of(i, masks) == outcome) p += std::norm(amp_[i]);
    if (p < 1e-14) fail(Errc::ImpossibleOutcome, "post-selected outcome has probability " + std::to_string(p));
    const double f = 1.0 / std::sqrt(p);
    for (std::uint64_t i = 0; i < amp_.size(); ++i) amp_[i] = outcome_of(i, masks) == outcome ? amp_[i] * f : cplx{0.0, 0.0};
    return p;
  }

  // Bottom register state after discarding the top register. Only defined
  // when the two are unentangled.
  CVector pure_bottom() const {
    const std::size_t d = bottom_dim();
    const std::uint64_t blocks = std::uint64_t{1} << n_top_;
    std::uint64_t ref = 0;
    double best = -1.0;
    std::vector<double> w(blocks, 0.0);
    for (std::uint64_t t = 0; t < blocks; ++t) {
      for (std::size_t i = 0; i < d; ++i) w[t] += std::norm(amp_[t * d + i]);
      if (w[t] > best) {
        best = w[t];
        ref = t;
      }
    }
    for (std::uint64_t t = 0; t < blocks; ++t) {
      if (t == ref) continue;
      cplx ov = 0.0;
      for (std::size_t i = 0; i < d; ++i) ov += std::conj(amp_[ref * d + i]) * amp_[t * d + i];
      if (w[ref] * w[t] - std::norm(ov) > 1e-12)
        fail(Errc::ImpureReduction, "bottom register is entangled with the top register");
    }
    CVector out(amp_.begin() + static_cast<std::ptrdiff_t>(ref * d), amp_.begin() + static_cast<std::ptrdiff_t>((ref + 1) * d));
    const double f = 1.0 / std::sqrt(best);
    for (auto& a : out) a *= f;
    return out;
  }

  std::vector<double> bottom_probabilities() const {
    std::vector<double> p(bottom_dim(), 0.0);
    for (std::uint64_t i = 0; i < amp_.size(); ++i) p[i % bottom_dim()] += std::norm(amp_[i]);
    return p;
  }

 private:
  void init(int n_top, const CVector& bottom, std::size_t len) {
    if (n_top < 0) fail(Errc::BadQubit, "negative ancilla count");
    if (!is_power_of_two(len)) fail(Errc::BadDimension, "bottom length " + std::to_string(len) + " is not a power of two");
    n_top_ = n_top;
    n_bottom_ = log2_exact(len);
    if (n_qubits() > kMaxQubits) fail(Errc::TooManyQubits, std::to_string(n_qubits()) + " qubits exceeds the limit of " + std::to_string(kMaxQubits));
    double s = 0.0;
    for (const auto& a : bottom) s += std::norm(a);
    if (std::abs(std::sqrt(s) - 1.0) > 1e-10) fail(Errc::NotNormalized, "bottom register vector must have unit norm");
    amp_.assign(std::size_t{1} << n_qubits(), 0.0);
    for (std::size_t i = 0; i < len; ++i) amp_[i] = bottom[i];
  }

  std::uint64_t bit_mask(int q) const {
    if (q < 0 || q >= n_qubits()) fail(Errc::BadQubit, "qubit " + std::to_string(q) + " out of range");
    return std::uint64_t{1} << (n_qubits() - 1 - q);
  }

  static std::uint64_t outcome_of(std::uint64_t i, const std::vector<std::uint64_t>& masks) {
    std::uint64_t o = 0;
    for (auto m : masks) o = (o << 1) | ((i & m) ? 1u : 0u);
    return o;
  }

  int n_top_ = 0;
  int n_bottom_ = 0;
  CVector amp_;
};

// Free-function spellings of the gate set.
inline QuantumState init_state(int n_top, const Vector& b) { return QuantumState(n_top, b); }
inline void apply_hadamard(QuantumState& s, int q) { s.hadamard(q); }
inline void apply_phase(QuantumState& s, int q, double omega) { s.phase(q, omega); }
inline void apply_controlled_power(QuantumState& s, int control, const Spectrum& sp, std::int64_t power) {
  s.controlled_power(control, sp, power);
}
inline OutcomeDistribution outcome_distribution(const QuantumState& s, const std::vector<int>& qubits) {
  return s.distribution(qubits);
}
inline double collapse_onto(QuantumState& s, const std::vector<int>& qubits, std::uint64_t outcome) {
  return s.collapse(qubits, outcome);
}

}  // namespace hipea

#endif  // HIPEA_STATEVECTOR_HPP_
