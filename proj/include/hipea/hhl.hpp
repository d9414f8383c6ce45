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

#ifndef HIPEA_HHL_HPP_
#define HIPEA_HHL_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "hipea/error.hpp"
#include "hipea/linalg.hpp"
#include "hipea/spectrum.hpp"
#include "hipea/statevector.hpp"

namespace hipea {

constexpr int kMaxHhlClockQubits = 12;

// Dense QFT on 2^k points: F(j, k) = e^{2 pi i jk / M} / sqrt(M).
inline CMatrix qft_matrix(int k, bool inverse) {
  const std::size_t n = std::size_t{1} << k;
  CMatrix f(n);
  const double r = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < n; ++c) {
      const std::uint64_t e = (j * c) % n;
      f(j, c) = r * dyadic_phase(inverse ? (n - e) % n : e, k);
    }
  return f;
}

struct HhlResult {
  Vector x_normalized;
  double success_probability = 0.0;
  double C = 0.0;
  double leakage = 0.0;  // clock register weight away from |0..0> before post-selection
  int qubits = 0;
};

// Ancilla is qubit 0, the clock register qubits 1..m (qubit 1 most
// significant), then the bottom register. C <= 0 selects the smallest
// eigenvalue.
inline HhlResult run_hhl(const Spectrum& s, const Vector& b, double c_const = 0.0) {
  s.validate();
  if (b.size() != s.dim) fail(Errc::DimensionMismatch, "b length differs from dimension");
  const int m = s.m;
  if (m > kMaxHhlClockQubits) fail(Errc::TooManyQubits, "clock register limited to " + std::to_string(kMaxHhlClockQubits) + " qubits");
  double phi_min = 1.0;
  for (const auto& p : s.pairs) phi_min = std::min(phi_min, p.phi.value());
  const double c = c_const > 0.0 ? c_const : phi_min;
  if (c > phi_min + 1e-15) fail(Errc::InvalidArgument, "C must not exceed the smallest eigenvalue");

  QuantumState st(1 + m, b);
  std::vector<int> clock;
  for (int i = 1; i <= m; ++i) clock.push_back(i);

  auto estimate_phase = [&](int sign) {
    for (int i = 1; i <= m; ++i) st.hadamard(i);
    for (int i = 1; i <= m; ++i) st.controlled_power(i, s, sign * (std::int64_t{1} << (m - i)));
  };

  estimate_phase(+1);
  st.apply_unitary(clock, qft_matrix(m, true));

  const std::size_t grid = std::size_t{1} << m;
  std::vector<double> angles(grid, 0.0);
  for (std::size_t k = 1; k < grid; ++k) {
    const double lambda = std::ldexp(static_cast<double>(k), -m);
    angles[k] = 2.0 * std::asin(std::min(1.0, c / lambda));
  }
  st.multiplexed_ry(0, clock, angles);

  // Uncompute: forward QFT, inverse powers, Hadamards.
  st.apply_unitary(clock, qft_matrix(m, false));
  for (int i = 1; i <= m; ++i) st.controlled_power(i, s, -(std::int64_t{1} << (m - i)));
  for (int i = 1; i <= m; ++i) st.hadamard(i);

  HhlResult res;
  res.C = c;
  res.qubits = st.n_qubits();
  res.leakage = 1.0 - st.distribution(clock).probs[0];
  res.success_probability = st.distribution({0}).probs[1];
  if (res.success_probability < 1e-14) fail(Errc::PostSelectionNull, "ancilla never reads 1");
  st.collapse({0}, 1);
  const CVector bottom = st.pure_bottom();

  // Strip the global phase so the state is real.
  std::size_t big = 0;
  for (std::size_t i = 0; i < bottom.size(); ++i)
    if (std::abs(bottom[i]) > std::abs(bottom[big])) big = i;
  const cplx g = std::conj(bottom[big]) / std::abs(bottom[big]);
  for (const auto& a : bottom) {
    const cplx r = a * g;
    if (std::abs(r.imag()) > 1e-10) fail(Errc::ImpureReduction, "post-selected state is not real up to a phase");
    res.x_normalized.push_back(r.real());
  }
  res.x_normalized = normalized(res.x_normalized);
  return res;
}

// Distance between hipea_x / |hipea_x| and the HHL state, up to overall sign.
inline double compare_normalized(const Vector& hipea_x, const HhlResult& hhl) {
  const double n = norm(hipea_x);
  if (n == 0.0 || norm(hhl.x_normalized) == 0.0) fail(Errc::ZeroVector, "cannot compare a zero vector");
  const Vector u = scaled(hipea_x, 1.0 / n);
  const Vector neg = scaled(hhl.x_normalized, -1.0);
  return std::min(norm(subtract(u, hhl.x_normalized)), norm(subtract(u, neg)));
}

}  // namespace hipea

#endif  // HIPEA_HHL_HPP_
