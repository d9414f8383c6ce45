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

#include <random>

#include "hipea/iteration.hpp"
#include "hipea/spectrum.hpp"
#include "hipea/statevector.hpp"
#include "support/coherent_path.hpp"
#include "support/frozen.hpp"
#include "support/random_fixtures.hpp"

using namespace hipea;

using testing_support::random_bits;
using testing_support::simulated_path_probability;

TEST(Assignment, Construction) {
  const auto a = make_assignment(2, 7, 9, parse_bits("110000"));
  EXPECT_EQ(a.power, 4);
  EXPECT_EQ(a.omega_label(), "-2pi(0.0110000)");
  EXPECT_THROW(make_assignment(1, 3, 9, parse_bits("1")), Error);
  EXPECT_THROW(make_assignment(1, 10, 9, parse_bits("000000000")), Error);
}

TEST(Assignment, SpecValidation) {
  QuantumState st(2, Vector{1.0, 0.0});
  const Spectrum s{2, 2, {{BinaryFraction::parse("01"), {1.0, 0.0}, 1.0}, {BinaryFraction::parse("10"), {0.0, 1.0}, 0.0}}};
  IterationSpec dup{1, {make_assignment(1, 1, 2, {}), make_assignment(1, 1, 2, {})}};
  EXPECT_THROW(run_iteration_circuit(st, s, dup), Error);
  IterationSpec bad{1, {make_assignment(3, 1, 2, {})}};
  EXPECT_THROW(run_iteration_circuit(st, s, bad), Error);
}

TEST(Circuit, SingleEigenvalueIsDeterministic) {
  const auto phi = BinaryFraction::parse("1011001");
  const Spectrum s{7, 2, {{phi, {1.0, 0.0}, 1.0}}};
  QuantumState st(1, Vector{1.0, 0.0});
  Bits path;
  for (int l = 1; l <= 7; ++l) {
    IterationSpec spec{l, {make_assignment(1, l, 7, known_low_bits(path))}};
    const auto d = run_iteration_circuit(st, s, spec);
    const int bit = phi.bit(8 - l);
    EXPECT_NEAR(d[static_cast<std::uint64_t>(bit)], 1.0, 1e-12) << "iteration " << l;
    st.collapse({0}, static_cast<std::uint64_t>(bit));
    if (bit) {
      st.hadamard(0);
      st.phase(0, std::numbers::pi);
      st.hadamard(0);
    }
    path.push_back(static_cast<std::uint8_t>(bit));
  }
}

TEST(Circuit, FixtureFirstIteration) {
  const auto f = paper_fixture();
  QuantumState st(1, f.b);
  const auto d = run_iteration_circuit(st, f.spectrum, {1, {make_assignment(1, 1, 9, {})}});
  EXPECT_NEAR(d[0], frozen::oracle::kP0, 1e-10);
  EXPECT_NEAR(d[1], frozen::oracle::kP1, 1e-10);
  EXPECT_NEAR(d[0], 0.0526, 1e-4);
}

TEST(Circuit, FixtureThreeAncillaFirstIteration) {
  const auto f = paper_fixture();
  QuantumState st(3, f.b);
  // top[q] plays iteration q with all-zero rotations
  IterationSpec spec{1, {make_assignment(3, 3, 9, {0, 0}), make_assignment(2, 2, 9, {0}), make_assignment(1, 1, 9, {})}};
  const auto d = run_iteration_circuit(st, f.spectrum, spec);
  EXPECT_NEAR(d[0], frozen::oracle::kBeta2[0], 1e-4);
  EXPECT_NEAR(d[0], frozen::oracle::kBeta2[0], 1e-10);
}

TEST(Oracle, BranchFactorExamples) {
  const auto phi0 = BinaryFraction::parse("0");
  const auto phi1 = BinaryFraction::parse("1");
  EXPECT_EQ(branch_outcome_probability(1.0, phi0, {}, 1, 0), 1.0);
  EXPECT_EQ(branch_outcome_probability(1.0, phi1, {}, 1, 1), 1.0);
  EXPECT_EQ(branch_factor(BinaryFraction::parse("01"), {1}, 2, 0), 1.0);
  EXPECT_EQ(branch_factor(BinaryFraction::parse("11"), {1}, 2, 0), 0.0);
  EXPECT_NEAR(branch_factor(BinaryFraction::parse("11"), {0}, 2, 0), 0.5, 1e-15);
  const auto phi4 = BinaryFraction::parse("011011011");
  EXPECT_NEAR(branch_outcome_probability(0.4945, phi4, {}, 1, 1), 0.24453, 1e-5);
}

TEST(Oracle, FixturePaths) {
  const auto f = paper_fixture();
  EXPECT_NEAR(path_probability(f.spectrum, {0, 0}, schedule_for({0, 0})), frozen::oracle::kBeta2[0], 1e-12);
  EXPECT_NEAR(path_probability(f.spectrum, {0}, {{}}), frozen::oracle::kP0, 1e-10);
  for (std::size_t j = 0; j < 4; ++j) {
    const Bits path = f.spectrum.pairs[j].phi.low_path(9);
    EXPECT_NEAR(path_probability(f.spectrum, path, schedule_for(path)), frozen::oracle::kBeta2[j], 1e-12);
  }
  // 1-1-1... is the low path of no eigenvalue beyond iteration 3
  const Bits dead = {1, 1, 1};
  EXPECT_EQ(path_probability(f.spectrum, dead, schedule_for(dead)), 0.0);
}

TEST(Oracle, DivergenceKillIsExact) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 4 + trial % 7;
    const auto phis = testing_support::random_dyadics(2, m, rng);
    // first iteration where the two low paths differ
    int l = 1;
    while (phis[0].low_path(l) == phis[1].low_path(l)) ++l;
    const Bits target = phis[0].low_path(l);
    const auto sched = schedule_for(target);
    double f = 1.0;
    for (int i = 0; i < l; ++i) f *= branch_factor(phis[1], sched[static_cast<std::size_t>(i)], i + 1, target[static_cast<std::size_t>(i)]);
    ASSERT_EQ(f, 0.0);
  }
}

TEST(Oracle, MatchesSimulatorOnRandomSchedules) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = std::size_t{1} << (1 + trial % 3);
    const int m = 4 + trial % 7;
    const auto p = testing_support::random_problem(n, m, rng);
    const std::size_t len = 1 + rng() % static_cast<std::uint64_t>(m);
    const Bits path = random_bits(len, rng);
    std::vector<Bits> sched;
    for (std::size_t i = 0; i < len; ++i) sched.push_back(random_bits(i, rng));
    const double oracle = path_probability(p.spectrum, path, sched);
    const double sim = simulated_path_probability(p.spectrum, p.b, path, sched);
    ASSERT_NEAR(oracle, sim, 1e-10) << "trial " << trial;
  }
}

TEST(Oracle, LemmaOneOnRandomSpectra) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testing_support::random_problem(std::size_t{1} << (1 + trial % 3), 4 + trial % 7, rng);
    for (const auto& pair : p.spectrum.pairs) {
      const Bits path = pair.phi.low_path(p.spectrum.m);
      ASSERT_NEAR(path_probability(p.spectrum, path, schedule_for(path)), pair.beta * pair.beta, 1e-10);
      ASSERT_NEAR(simulated_path_probability(p.spectrum, p.b, path, schedule_for(path)), pair.beta * pair.beta, 1e-10);
    }
  }
}
