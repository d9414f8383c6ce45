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

#ifndef HIPEA_ITERATION_HPP_
#define HIPEA_ITERATION_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "hipea/binary.hpp"
#include "hipea/error.hpp"
#include "hipea/spectrum.hpp"
#include "hipea/statevector.hpp"

namespace hipea {

// One ancilla's job in an iteration: it plays the part of the single
// ancilla in iteration `mapped_iteration` of the one-qubit scheme.
struct AncillaAssignment {
  int ancilla = 1;           // 1-based, top[1] is qubit 0
  int mapped_iteration = 1;  // l'
  std::int64_t power = 1;    // 2^(m - l')
  Bits known;                // l'-1 bits, MSB-first, fed into omega

  double omega() const { return rotation_angle(known); }
  std::string omega_label() const { return format_omega(known); }
};

struct IterationSpec {
  int iteration = 1;
  std::vector<AncillaAssignment> assignments;
};

inline AncillaAssignment make_assignment(int ancilla, int mapped_iteration, int m, const Bits& known_msb_first) {
  if (mapped_iteration < 1 || mapped_iteration > m) fail(Errc::InvalidArgument, "mapped iteration out of range");
  if (static_cast<int>(known_msb_first.size()) != mapped_iteration - 1)
    fail(Errc::InvalidArgument, "iteration " + std::to_string(mapped_iteration) + " needs " +
                                    std::to_string(mapped_iteration - 1) + " known bits");
  return {ancilla, mapped_iteration, std::int64_t{1} << (m - mapped_iteration), known_msb_first};
}

inline void validate_spec(const IterationSpec& spec, int n_top) {
  std::vector<bool> seen(static_cast<std::size_t>(n_top) + 1, false);
  for (const auto& a : spec.assignments) {
    if (a.ancilla < 1 || a.ancilla > n_top) fail(Errc::BadQubit, "ancilla " + std::to_string(a.ancilla) + " out of range");
    if (seen[static_cast<std::size_t>(a.ancilla)]) fail(Errc::InvalidArgument, "ancilla assigned twice");
    seen[static_cast<std::size_t>(a.ancilla)] = true;
    if (a.power <= 0 || (a.power & (a.power - 1)) != 0) fail(Errc::InvalidArgument, "power must be a power of two");
  }
}

// H, controlled U^power, phase omega, H on each assigned ancilla. Returns the
// joint distribution over the assigned ancillas in listed order; measurement
// itself is left to the caller.
inline OutcomeDistribution run_iteration_circuit(QuantumState& state, const Spectrum& s, const IterationSpec& spec) {
  validate_spec(spec, state.n_top());
  std::vector<int> qubits;
  for (const auto& a : spec.assignments) {
    const int q = a.ancilla - 1;
    state.hadamard(q);
    state.controlled_power(q, s, a.power);
    state.phase(q, a.omega());
    state.hadamard(q);
    qubits.push_back(q);
  }
  return state.distribution(qubits);
}

// ---- analytic oracle ------------------------------------------------------
// Kept apart from the circuit code on purpose: integer arithmetic on the
// bit strings, cos^2 / sin^2 of the residual phase, nothing else.

// Conditional factor for one branch: cos^2 or sin^2 of pi * Delta, with
// Delta = 0.phi_{m-l+1}..phi_m - 0.0 w_1..w_{l-1}.
inline double branch_factor(const BinaryFraction& phi, const Bits& omega_bits, int l, int outcome) {
  const int m = phi.width();
  if (l < 1 || l > m) fail(Errc::InvalidArgument, "iteration out of range");
  if (static_cast<int>(omega_bits.size()) != l - 1) fail(Errc::InvalidArgument, "omega needs l-1 bits");
  const std::int64_t full = std::int64_t{1} << l;
  std::int64_t a = 0;
  for (int k = m - l + 1; k <= m; ++k) a = 2 * a + phi.bit(k);
  std::int64_t w = 0;
  for (std::size_t i = 0; i < omega_bits.size(); ++i)
    if (omega_bits[i]) w += std::int64_t{1} << (l - 2 - static_cast<int>(i));
  const std::int64_t d = (((a - w) % full) + full) % full;
  double c2;
  if (d == 0)
    c2 = 1.0;
  else if (2 * d == full)
    c2 = 0.0;
  else {
    const double c = std::cos(std::numbers::pi * static_cast<double>(d) / static_cast<double>(full));
    c2 = c * c;
  }
  return outcome == 0 ? c2 : 1.0 - c2;
}

inline double branch_outcome_probability(double beta, const BinaryFraction& phi, const Bits& omega_bits, int l, int outcome) {
  return beta * beta * branch_factor(phi, omega_bits, l, outcome);
}

// Probability of seeing path[i] at iteration i+1 for every i, the
// iteration-(i+1) ancilla having been fed schedule[i].
inline double path_probability(const Spectrum& s, const Bits& path, const std::vector<Bits>& schedule) {
  if (path.size() != schedule.size()) fail(Errc::InvalidArgument, "path and schedule lengths differ");
  double total = 0.0;
  for (const auto& pair : s.pairs) {
    double f = pair.beta * pair.beta;
    for (std::size_t i = 0; i < path.size() && f != 0.0; ++i)
      f *= branch_factor(pair.phi, schedule[i], static_cast<int>(i) + 1, path[i]);
    total += f;
  }
  return total;
}

// Schedule that a target path implies: iteration i is fed the i-1 bits
// already on the path.
inline std::vector<Bits> schedule_for(const Bits& path) {
  std::vector<Bits> sched;
  for (std::size_t i = 0; i < path.size(); ++i)
    sched.push_back(reversed(Bits(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i))));
  return sched;
}

}  // namespace hipea

#endif  // HIPEA_ITERATION_HPP_
