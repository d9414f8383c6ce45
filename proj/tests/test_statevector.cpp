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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "hipea/sampling.hpp"
#include "hipea/spectrum.hpp"
#include "hipea/statevector.hpp"
#include "support/random_fixtures.hpp"

using namespace hipea;

namespace {

constexpr double kPi = std::numbers::pi;
const double kR = 1.0 / std::sqrt(2.0);

void expect_amps(const QuantumState& s, const CVector& want, double tol = 1e-12) {
  ASSERT_EQ(s.amplitudes().size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_LT(std::abs(s.amplitudes()[i] - want[i]), tol) << "index " << i;
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return Errc::InvalidArgument;
}

CVector random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(n);
  double s = 0.0;
  for (auto& a : v) {
    a = {g(rng), g(rng)};
    s += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(s);
  return v;
}

cplx inner(const CVector& a, const CVector& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace

TEST(Init, Examples) {
  expect_amps(init_state(1, {1.0, 0.0}), {1.0, 0.0, 0.0, 0.0});
  expect_amps(init_state(0, {0.0, 1.0}), {0.0, 1.0});
  const auto f = paper_fixture();
  const auto st = init_state(1, f.b);
  const auto p = st.bottom_probabilities();
  const Vector want = {0.12517, 0.25543, 0.00157, 0.61780};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(p[i], want[i], 1e-3);
}

TEST(Init, Errors) {
  EXPECT_EQ(code_of([] { init_state(1, {1.0, 1.0}); }), Errc::NotNormalized);
  EXPECT_EQ(code_of([] { init_state(1, {1.0, 0.0, 0.0}); }), Errc::BadDimension);
  EXPECT_EQ(code_of([] { init_state(19, {1.0, 0.0, 0.0, 0.0}); }), Errc::TooManyQubits);
}

TEST(Gates, Hadamard) {
  auto s = init_state(1, Vector{1.0});
  apply_hadamard(s, 0);
  expect_amps(s, {kR, kR});
  apply_hadamard(s, 0);
  expect_amps(s, {1.0, 0.0});
  QuantumState flipped(0, CVector{0.0, 1.0});
  apply_hadamard(flipped, 0);
  expect_amps(flipped, {kR, -kR});
  EXPECT_EQ(code_of([&] { apply_hadamard(s, 1); }), Errc::BadQubit);
}

TEST(Gates, Phase) {
  auto s = init_state(1, Vector{1.0});
  apply_hadamard(s, 0);
  auto t = s;
  apply_phase(t, 0, 0.0);
  expect_amps(t, {kR, kR});
  t = s;
  apply_phase(t, 0, kPi);
  expect_amps(t, {kR, -kR});
  t = s;
  apply_phase(t, 0, -2.0 * kPi * 0.25);
  expect_amps(t, {kR, cplx{0.0, -kR}});
  EXPECT_EQ(code_of([&] { apply_phase(t, 3, 1.0); }), Errc::BadQubit);
}

TEST(Gates, ControlledPowerFullTurnIsIdentity) {
  const auto f = paper_fixture();
  auto s = init_state(1, f.b);
  apply_hadamard(s, 0);
  const auto before = s.amplitudes();
  apply_controlled_power(s, 0, f.spectrum, std::int64_t{1} << 9);
  expect_amps(s, before);
}

TEST(Gates, ControlledPowerLastBitSign) {
  const auto f = paper_fixture();
  for (const auto& pair : f.spectrum.pairs) {
    QuantumState s(1, pair.u);
    s.hadamard(0);
    apply_controlled_power(s, 0, f.spectrum, std::int64_t{1} << 8);
    const double sign = pair.phi.bit(9) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_LT(std::abs(s.amplitudes()[i] - cplx{kR * pair.u[i]}), 1e-12);
      EXPECT_LT(std::abs(s.amplitudes()[4 + i] - cplx{sign * kR * pair.u[i]}), 1e-12);
    }
  }
}

TEST(Gates, ControlOffLeavesStateUnchanged) {
  const auto f = paper_fixture();
  auto s = init_state(1, f.b);
  const auto before = s.amplitudes();
  apply_controlled_power(s, 0, f.spectrum, 3);
  expect_amps(s, before);
}

TEST(Gates, ControlledPowerErrors) {
  const auto f = paper_fixture();
  auto s = init_state(1, Vector{1.0, 0.0});
  EXPECT_EQ(code_of([&] { apply_controlled_power(s, 0, f.spectrum, 1); }), Errc::DimensionMismatch);
  auto t = init_state(1, f.b);
  EXPECT_EQ(code_of([&] { apply_controlled_power(t, 1, f.spectrum, 1); }), Errc::BadQubit);
}

TEST(Gates, SemigroupProperty) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = testing_support::random_problem(4, 8, rng);
    const std::int64_t a = static_cast<std::int64_t>(rng() % 300), b = static_cast<std::int64_t>(rng() % 300) - 150;
    QuantumState twice(1, random_state(4, rng));
    twice.hadamard(0);
    QuantumState once = twice;
    twice.controlled_power(0, p.spectrum, a);
    twice.controlled_power(0, p.spectrum, b);
    once.controlled_power(0, p.spectrum, a + b);
    expect_amps(twice, once.amplitudes());
  }
}

TEST(Gates, UnitarityOnRandomStates) {
  std::mt19937_64 rng(6);
  const auto p = testing_support::random_problem(4, 7, rng);
  for (int trial = 0; trial < 100; ++trial) {
    // two ancillas plus a 4-dim bottom register
    CVector bottom_a = random_state(4, rng), bottom_b = random_state(4, rng);
    QuantumState a(2, bottom_a), b(2, bottom_b);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    auto apply = [&](QuantumState& s, int step, double w, std::int64_t pw) {
      s.hadamard(step % 2);
      s.phase((step + 1) % 2, w);
      s.controlled_power(step % 2, p.spectrum, pw);
    };
    for (int step = 0; step < 6; ++step) {
      const double w = ang(rng);
      const std::int64_t pw = static_cast<std::int64_t>(rng() % 200);
      apply(a, step, w, pw);
      apply(b, step, w, pw);
      ASSERT_NEAR(a.norm(), 1.0, 1e-12);
    }
    const cplx before = inner(CVector(bottom_a), CVector(bottom_b));
    const cplx after = inner(a.amplitudes(), b.amplitudes());
    ASSERT_LT(std::abs(before - after), 1e-12);
  }
}

TEST(Distribution, Examples) {
  auto s = init_state(1, Vector{1.0});
  s.hadamard(0);
  const auto d = outcome_distribution(s, {0});
  EXPECT_NEAR(d[0], 0.5, 1e-15);
  EXPECT_NEAR(d[1], 0.5, 1e-15);

  const auto f = paper_fixture();
  auto st = init_state(1, f.b);
  const auto bottom = outcome_distribution(st, {1, 2});
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(bottom[i], f.b[i] * f.b[i], 1e-14);
  EXPECT_EQ(code_of([&] { outcome_distribution(st, {}); }), Errc::BadQubit);
  EXPECT_EQ(code_of([&] { outcome_distribution(st, {3}); }), Errc::BadQubit);
}

TEST(Distribution, FixtureFirstIteration) {
  const auto f = paper_fixture();
  auto st = init_state(1, f.b);
  st.hadamard(0);
  st.controlled_power(0, f.spectrum, std::int64_t{1} << 8);
  st.hadamard(0);
  const auto d = outcome_distribution(st, {0});
  EXPECT_NEAR(d[0], 0.05260, 1e-4);
  EXPECT_NEAR(d[1], 0.94740, 1e-4);
}

TEST(Distribution, MarginalsAreConsistent) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    QuantumState s(3, random_state(4, rng));
    for (int q = 0; q < 3; ++q) s.hadamard(q);
    s.phase(1, 0.3 * trial);
    s.hadamard(1);
    const auto joint = s.distribution({0, 1, 2});
    double total = 0.0;
    for (double p : joint.probs) total += p;
    EXPECT_NEAR(total, 1.0, 1e-12);
    const auto m = joint.marginal({0, 2});
    const auto direct = s.distribution({0, 2});
    for (std::size_t o = 0; o < 4; ++o) EXPECT_NEAR(m[o], direct[o], 1e-12);
  }
}

TEST(Collapse, Examples) {
  auto s = init_state(1, Vector{1.0});
  s.hadamard(0);
  EXPECT_NEAR(collapse_onto(s, {0}, 0), 0.5, 1e-15);
  expect_amps(s, {1.0, 0.0});

  QuantumState bell(2, CVector{1.0});
  bell.hadamard(0);
  CMatrix cnot(4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  bell.apply_unitary({0, 1}, cnot);
  EXPECT_NEAR(bell.collapse({0}, 1), 0.5, 1e-15);
  expect_amps(bell, {0.0, 0.0, 0.0, 1.0});
  EXPECT_EQ(code_of([&] { bell.collapse({0}, 0); }), Errc::ImpossibleOutcome);
}

TEST(Collapse, FullPathLeavesEigenvector) {
  const auto f = paper_fixture();
  for (const auto& pair : f.spectrum.pairs) {
    QuantumState st(1, f.b);
    double prob = 1.0;
    Bits path;
    for (int l = 1; l <= 9; ++l) {
      st.hadamard(0);
      st.controlled_power(0, f.spectrum, std::int64_t{1} << (9 - l));
      st.phase(0, rotation_angle(known_low_bits(path)));
      st.hadamard(0);
      const int bit = pair.phi.bit(10 - l);
      prob *= st.collapse({0}, static_cast<std::uint64_t>(bit));
      if (bit) st.hadamard(0), st.phase(0, kPi), st.hadamard(0);  // reset ancilla: X = H Z H
      path.push_back(static_cast<std::uint8_t>(bit));
    }
    EXPECT_NEAR(prob, pair.beta * pair.beta, 1e-12);
    const CVector bottom = st.pure_bottom();
    const cplx ov = inner(CVector(pair.u.begin(), pair.u.end()), bottom);
    EXPECT_NEAR(std::abs(ov), 1.0, 1e-12);
  }
}

TEST(PureBottom, DetectsEntanglement) {
  QuantumState s(1, CVector{1.0, 0.0});
  s.hadamard(0);
  CMatrix cnot(4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  s.apply_unitary({0, 1}, cnot);
  EXPECT_EQ(code_of([&] { s.pure_bottom(); }), Errc::ImpureReduction);
}

TEST(Sampling, PointMassAndDeterminism) {
  const auto c = sample_counts({1.0, 0.0}, 12345, 9);
  EXPECT_EQ(c[0], 12345u);
  EXPECT_EQ(c[1], 0u);
  EXPECT_EQ(sample_counts({0.3, 0.7}, 1000, 5), sample_counts({0.3, 0.7}, 1000, 5));
  const auto h = sample_counts({0.5, 0.5}, 1000000, 77);
  EXPECT_NEAR(h[0] / 1e6, 0.5, 5 * std::sqrt(0.25 / 1e6));
  EXPECT_NEAR(h[1] / 1e6, 0.5, 5 * std::sqrt(0.25 / 1e6));
}
