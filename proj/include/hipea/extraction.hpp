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

#ifndef HIPEA_EXTRACTION_HPP_
#define HIPEA_EXTRACTION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hipea/binary.hpp"
#include "hipea/error.hpp"
#include "hipea/iteration.hpp"
#include "hipea/parallel.hpp"
#include "hipea/sampling.hpp"
#include "hipea/spectrum.hpp"
#include "hipea/statevector.hpp"

namespace hipea {

constexpr std::uint64_t kDefaultShots = 100000;

struct Mode {
  bool sampled = false;
  std::uint64_t shots = kDefaultShots;
  std::uint64_t seed = 0;

  static Mode exact() { return {}; }
  static Mode sampling(std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) fail(Errc::InvalidArgument, "shots must be at least 1");
    return {true, shots, seed};
  }

  // Below this a branch counts as dead.
  double threshold() const {
    if (!sampled) return 1e-9;
    return std::max(5.0 / static_cast<double>(shots), 1e-4);
  }

  std::string name() const { return sampled ? "sampled" : "exact"; }
};

struct RunOptions {
  Mode mode;
  int workers = 1;
};

struct OutcomeEntry {
  std::string label;  // whole path so far, most significant extracted bit first
  double probability = 0.0;
  std::optional<std::uint64_t> count;
  bool followed = false;
};

struct Measurement {
  std::vector<int> ancillas;
  std::vector<std::string> omegas;
  std::vector<OutcomeEntry> outcomes;
};

struct IterationRecord {
  int iteration = 0;
  std::vector<Measurement> measurements;
};

struct ExperimentLog {
  int id = 0;
  std::string path;
  std::vector<IterationRecord> records;
};

struct ExtractedPair {
  BinaryFraction phi;
  double beta_abs = 0.0;
  std::vector<double> bottom_probabilities;  // post-selected on phi's own path
  std::vector<std::uint64_t> bottom_counts;  // sampled mode only
  std::uint64_t path_shots = 0;              // sampled mode only
};

struct Counters {
  int experiments = 0;
  int iterations = 0;
  int peak_ancillas = 0;
  int bottom_qubits = 0;
  std::vector<int> ancillas_per_iteration;
  std::vector<int> activation_iterations;
  std::vector<int> experiments_per_iteration;
  std::vector<int> survivors_per_iteration;

  int total_qubits() const { return peak_ancillas + bottom_qubits; }
};

struct ExtractionResult {
  std::string algorithm;
  std::vector<ExtractedPair> pairs;  // ordered by extracted path, lowest bit first
  std::vector<ExperimentLog> logs;
  Counters counters;
};

namespace detail {

// A run conditioned on a prefix of outcomes. `steps` holds the conditional
// probability of each outcome group taken, which is all the sampler needs to
// replay the prefix.
struct Branch {
  Bits path;  // lowest bit first
  CVector bottom;
  double probability = 1.0;
  std::vector<double> steps;
};

inline Branch root_branch(const Vector& b) {
  Branch br;
  br.bottom.assign(b.begin(), b.end());
  return br;
}

inline Bits appended(Bits p, std::uint8_t bit) {
  p.push_back(bit);
  return p;
}

// Estimated joint probabilities of prefix-then-outcome for every outcome of
// the final step. A fresh batch of shots replays the prefix.
struct Estimate {
  std::vector<double> probability;
  std::vector<std::uint64_t> counts;
};

inline Estimate estimate(const Mode& mode, const Branch& br, const std::vector<double>& cond, std::uint64_t seed) {
  Estimate e;
  e.probability.resize(cond.size());
  if (!mode.sampled) {
    for (std::size_t o = 0; o < cond.size(); ++o) e.probability[o] = br.probability * cond[o];
    return e;
  }
  std::mt19937_64 rng(seed);
  std::uint64_t n = mode.shots;
  for (double p : br.steps) n = draw_binomial(n, p, rng);
  e.counts.assign(cond.size(), 0);
  if (n > 0) e.counts = multinomial(n, cond, rng);
  for (std::size_t o = 0; o < cond.size(); ++o)
    e.probability[o] = static_cast<double>(e.counts[o]) / static_cast<double>(mode.shots);
  return e;
}

inline std::uint64_t seed_for(const Mode& mode, std::string_view algorithm, std::string_view key, int iteration, std::uint64_t salt = 0) {
  return derive_seed(mode.seed, {hash_tag(algorithm), hash_tag(key), static_cast<std::uint64_t>(iteration), salt});
}

inline OutcomeEntry entry(const Bits& path, const Estimate& e, std::size_t o, bool followed) {
  OutcomeEntry en{path_label(path), e.probability[o], std::nullopt, followed};
  if (!e.counts.empty()) en.count = e.counts[o];
  return en;
}

inline ExtractedPair finish_pair(const Mode& mode, const Branch& br, double estimated, std::optional<std::uint64_t> count,
                                 std::uint64_t seed) {
  ExtractedPair p;
  p.phi = BinaryFraction(reversed(br.path));
  p.beta_abs = std::sqrt(std::max(estimated, 0.0));
  std::vector<double> probs;
  for (const auto& a : br.bottom) probs.push_back(std::norm(a));
  if (!mode.sampled) {
    p.bottom_probabilities = probs;
    return p;
  }
  p.path_shots = count.value_or(0);
  std::mt19937_64 rng(seed);
  p.bottom_counts = p.path_shots > 0 ? multinomial(p.path_shots, probs, rng) : std::vector<std::uint64_t>(probs.size(), 0);
  for (auto c : p.bottom_counts)
    p.bottom_probabilities.push_back(p.path_shots ? static_cast<double>(c) / static_cast<double>(p.path_shots) : 0.0);
  return p;
}

// Takes the chosen outcome on the listed qubits and drops the top register.
inline Branch advance(const Branch& br, QuantumState st, const std::vector<int>& qubits, std::uint64_t outcome,
                      double cond, const Bits& new_bits) {
  st.collapse(qubits, outcome);
  Branch next;
  next.bottom = st.pure_bottom();
  next.probability = br.probability * cond;
  next.steps = br.steps;
  next.steps.push_back(cond);
  next.path = br.path;
  next.path.insert(next.path.end(), new_bits.begin(), new_bits.end());
  return next;
}

inline bool path_less(const ExtractedPair& a, const ExtractedPair& b) {
  return reversed(a.phi.bits()) < reversed(b.phi.bits());
}

inline void check_problem(const Spectrum& s, const Vector& b) {
  s.validate();
  if (b.size() != s.dim) fail(Errc::DimensionMismatch, "b length differs from dimension");
  if (std::abs(norm(b) - 1.0) > 1e-10) fail(Errc::NotNormalized, "b must have unit norm");
  build_divergence_tree(s.phis());
}

inline std::vector<int> survivor_counts(const std::vector<ExtractedPair>& pairs, int m, int step) {
  std::vector<int> out;
  for (int l = step; l < m + step; l += step) {
    const int len = std::min(l, m);
    std::vector<Bits> seen;
    for (const auto& p : pairs) {
      Bits pre = p.phi.low_path(len);
      if (std::find(seen.begin(), seen.end(), pre) == seen.end()) seen.push_back(pre);
    }
    out.push_back(static_cast<int>(seen.size()));
  }
  return out;
}

}  // namespace detail

// ---- HIPEA-1: one ancilla, one experiment per eigenvalue -------------------

inline ExtractionResult run_hipea1(const Spectrum& s, const Vector& b, const RunOptions& opt = {}) {
  detail::check_problem(s, b);
  const Mode& mode = opt.mode;
  const double tau = mode.threshold();
  const int m = s.m;

  struct Done {
    Bits forced;
    detail::Branch branch;
    ExperimentLog log;
    ExtractedPair pair;
    std::vector<Bits> spawned;
  };

  auto run_one = [&](const Bits& forced) {
    Done d;
    d.forced = forced;
    detail::Branch br = detail::root_branch(b);
    const std::string key = "prefix:" + bits_string(forced);
    detail::Estimate last;
    std::uint8_t last_bit = 0;
    for (int l = 1; l <= m; ++l) {
      QuantumState st(1, br.bottom);
      IterationSpec spec{l, {make_assignment(1, l, m, known_low_bits(br.path))}};
      const auto dist = run_iteration_circuit(st, s, spec);
      const auto est = detail::estimate(mode, br, dist.probs, detail::seed_for(mode, "hipea1", key, l));
      const bool v0 = est.probability[0] >= tau, v1 = est.probability[1] >= tau;
      std::uint8_t bit;
      if (l <= static_cast<int>(forced.size())) {
        bit = forced[static_cast<std::size_t>(l - 1)];
        if (!(bit ? v1 : v0))
          fail(Errc::InconsistentBranch, "replayed branch " + path_label(detail::appended(br.path, bit)) + " fell below threshold");
      } else if (v0 && v1) {
        bit = 0;
        d.spawned.push_back(detail::appended(br.path, 1));
      } else if (v0 || v1) {
        bit = v0 ? 0 : 1;
      } else {
        fail(Errc::InconsistentBranch, "no viable outcome at iteration " + std::to_string(br.path.size() + 1));
      }
      Measurement meas{{1}, {spec.assignments[0].omega_label()}, {}};
      for (std::uint8_t o = 0; o < 2; ++o) meas.outcomes.push_back(detail::entry(detail::appended(br.path, o), est, o, o == bit));
      d.log.records.push_back({l, {meas}});
      br = detail::advance(br, st, {0}, bit, dist.probs[bit], {bit});
      last = est;
      last_bit = bit;
    }
    std::optional<std::uint64_t> count;
    if (!last.counts.empty()) count = last.counts[last_bit];
    d.pair = detail::finish_pair(mode, br, last.probability[last_bit], count, detail::seed_for(mode, "hipea1", key, m + 1, 1));
    d.log.path = path_label(br.path);
    d.branch = std::move(br);
    return d;
  };

  std::vector<Done> done;
  std::vector<Bits> wave{Bits{}};
  while (!wave.empty()) {
    auto results = parallel_map(wave.size(), opt.workers, [&](std::size_t i) { return run_one(wave[i]); });
    wave.clear();
    for (auto& r : results) {
      for (auto& sp : r.spawned) wave.push_back(sp);
      done.push_back(std::move(r));
    }
    if (done.size() > s.size()) fail(Errc::InconsistentBranch, "more branches than eigenvalues");
  }
  std::sort(done.begin(), done.end(), [](const Done& a, const Done& b) { return a.branch.path < b.branch.path; });

  ExtractionResult res;
  res.algorithm = "hipea1";
  for (std::size_t i = 0; i < done.size(); ++i) {
    done[i].log.id = static_cast<int>(i) + 1;
    res.logs.push_back(std::move(done[i].log));
    res.pairs.push_back(std::move(done[i].pair));
  }
  res.counters.experiments = static_cast<int>(done.size());
  res.counters.iterations = m;
  res.counters.peak_ancillas = 1;
  res.counters.bottom_qubits = s.n_bottom();
  res.counters.ancillas_per_iteration.assign(static_cast<std::size_t>(m), 1);
  res.counters.experiments_per_iteration.assign(static_cast<std::size_t>(m), res.counters.experiments);
  res.counters.survivors_per_iteration = detail::survivor_counts(res.pairs, m, 1);
  return res;
}

// ---- HIPEA-2: one experiment, a new ancilla per divergence -----------------

inline ExtractionResult run_hipea2(const Spectrum& s, const Vector& b, const RunOptions& opt = {}) {
  detail::check_problem(s, b);
  const Mode& mode = opt.mode;
  const double tau = mode.threshold();
  const int m = s.m;

  struct Track {
    int ancilla = 1;
    int activated = 1;
    detail::Branch branch;
    detail::Estimate last;
    std::uint8_t last_bit = 0;
  };
  struct Step {
    detail::Branch next;
    std::optional<detail::Branch> spawn;
    detail::Estimate est;
    std::uint8_t bit = 0;
    Measurement meas;
  };

  std::vector<Track> tracks{{1, 1, detail::root_branch(b), {}, 0}};
  std::vector<Track> late;
  ExperimentLog log{1, "", {}};
  ExtractionResult res;
  res.algorithm = "hipea2";

  for (int l = 1; l <= m; ++l) {
    const std::size_t active = tracks.size();
    if (static_cast<int>(active) + s.n_bottom() > QuantumState::kMaxQubits)
      fail(Errc::TooManyQubits, "ancilla budget exceeded");
    IterationSpec spec{l, {}};
    for (std::size_t a = 0; a < active; ++a)
      spec.assignments.push_back(make_assignment(tracks[a].ancilla, l, m, known_low_bits(tracks[a].branch.path)));

    auto steps = parallel_map(active, opt.workers, [&](std::size_t a) {
      const Track& t = tracks[a];
      QuantumState st(static_cast<int>(active), t.branch.bottom);
      const auto joint = run_iteration_circuit(st, s, spec);
      const auto own = joint.marginal({static_cast<int>(a)});
      Step out;
      out.est = detail::estimate(mode, t.branch, own.probs,
                                 detail::seed_for(mode, "hipea2", "ancilla:" + std::to_string(t.ancilla), l));
      const bool v0 = out.est.probability[0] >= tau, v1 = out.est.probability[1] >= tau;
      if (!v0 && !v1) fail(Errc::InconsistentBranch, "no viable outcome at iteration " + std::to_string(t.branch.path.size() + 1));
      out.bit = v0 ? 0 : 1;
      const int q = static_cast<int>(a);
      if (v0 && v1) out.spawn = detail::advance(t.branch, st, {q}, 1, own.probs[1], {1});
      out.next = detail::advance(t.branch, st, {q}, out.bit, own.probs[out.bit], {out.bit});
      out.meas = {{t.ancilla}, {spec.assignments[a].omega_label()}, {}};
      for (std::uint8_t o = 0; o < 2; ++o)
        out.meas.outcomes.push_back(detail::entry(detail::appended(t.branch.path, o), out.est, o, o == out.bit || (o == 1 && out.spawn)));
      return out;
    });

    IterationRecord rec{l, {}};
    for (std::size_t a = 0; a < active; ++a) {
      tracks[a].branch = std::move(steps[a].next);
      tracks[a].last = steps[a].est;
      tracks[a].last_bit = steps[a].bit;
      rec.measurements.push_back(std::move(steps[a].meas));
    }
    for (std::size_t a = 0; a < active; ++a) {
      if (!steps[a].spawn) continue;
      Track nt;
      nt.activated = l + 1;
      nt.branch = std::move(*steps[a].spawn);
      nt.last = steps[a].est;
      nt.last_bit = 1;
      // A split in the final iteration is already fully read out by the
      // parent ancilla; no new qubit is needed.
      if (l == m) {
        nt.ancilla = tracks[a].ancilla;
        late.push_back(std::move(nt));
        continue;
      }
      nt.ancilla = static_cast<int>(tracks.size()) + 1;
      tracks.push_back(std::move(nt));
      res.counters.activation_iterations.push_back(l + 1);
    }
    if (tracks.size() + late.size() > s.size()) fail(Errc::InconsistentBranch, "more branches than eigenvalues");
    log.records.push_back(std::move(rec));
    res.counters.ancillas_per_iteration.push_back(static_cast<int>(active));
  }

  auto finish = [&](const Track& t, std::uint64_t salt) {
    std::optional<std::uint64_t> count;
    if (!t.last.counts.empty()) count = t.last.counts[t.last_bit];
    res.pairs.push_back(detail::finish_pair(mode, t.branch, t.last.probability[t.last_bit], count,
                                            detail::seed_for(mode, "hipea2", "ancilla:" + std::to_string(t.ancilla), m + 1, salt)));
  };
  for (const auto& t : tracks) finish(t, 1);
  for (const auto& t : late) finish(t, 2);
  std::sort(res.pairs.begin(), res.pairs.end(), detail::path_less);
  res.logs.push_back(std::move(log));
  res.counters.experiments = 1;
  res.counters.iterations = m;
  res.counters.peak_ancillas = static_cast<int>(tracks.size());
  res.counters.bottom_qubits = s.n_bottom();
  res.counters.experiments_per_iteration.assign(static_cast<std::size_t>(m), 1);
  res.counters.survivors_per_iteration = detail::survivor_counts(res.pairs, m, 1);
  return res;
}

// ---- HIPEA-3: n_top ancillas, traversed rotation parameters ----------------

struct ExperimentBounds {
  long long min = 0;
  long long max = 0;
};

// Both bounds as the scheme states them. The minimum is zero at n_top = 1,
// which undercounts; see the tests.
inline ExperimentBounds experiment_count_bounds(long long n, long long m, long long n_top) {
  if (n < 1 || m < 1 || n_top < 1 || n_top > 62) fail(Errc::InvalidArgument, "arguments must be positive");
  const long long iters = (m + n_top - 1) / n_top;
  const long long half = 1LL << (n_top - 1);
  return {iters * (half - 1), half + n * (iters - 1) * half};
}

inline ExtractionResult run_hipea3(const Spectrum& s, const Vector& b, int n_top, const RunOptions& opt = {}) {
  detail::check_problem(s, b);
  if (n_top < 1) fail(Errc::InvalidArgument, "n_top must be at least 1");
  const Mode& mode = opt.mode;
  const double tau = mode.threshold();
  const int m = s.m;
  const int iterations = (m + n_top - 1) / n_top;
  if (std::min(n_top, m) + s.n_bottom() > QuantumState::kMaxQubits) fail(Errc::TooManyQubits, "n_top too large");

  struct Found {
    detail::Branch branch;
    double estimate = 0.0;
    std::optional<std::uint64_t> count;
    std::string key;
  };
  struct Job {
    std::size_t survivor;
    std::uint64_t t;
  };
  struct Ran {
    ExperimentLog log;
    std::vector<Found> found;
  };

  ExtractionResult res;
  res.algorithm = "hipea3";
  std::vector<Found> survivors{{detail::root_branch(b), 1.0, std::nullopt, ""}};
  int next_id = 1;

  for (int l = 1; l <= iterations; ++l) {
    const int r = std::min(n_top, m - (l - 1) * n_top);
    const std::uint64_t per = std::uint64_t{1} << (r - 1);
    std::vector<Job> jobs;
    for (std::size_t si = 0; si < survivors.size(); ++si)
      for (std::uint64_t t = 0; t < per; ++t) jobs.push_back({si, t});

    auto ran = parallel_map(jobs.size(), opt.workers, [&](std::size_t j) {
      const auto& sv = survivors[jobs[j].survivor];
      const std::uint64_t t = jobs[j].t;
      Ran out;
      out.log.path = path_label(sv.branch.path);
      // Hypothesized bits for qubits 1..r-1, qubit 1 being the lowest.
      Bits hyp;
      for (int q = 1; q < r; ++q) hyp.push_back(static_cast<std::uint8_t>((t >> (q - 1)) & 1u));
      IterationSpec spec{l, {}};
      std::vector<int> qubits;
      Measurement meas;
      for (int q = r; q >= 1; --q) {
        Bits lsb = sv.branch.path;
        lsb.insert(lsb.end(), hyp.begin(), hyp.begin() + (q - 1));
        spec.assignments.push_back(make_assignment(q, (l - 1) * n_top + q, m, known_low_bits(lsb)));
        qubits.push_back(q - 1);
        meas.ancillas.push_back(q);
        meas.omegas.push_back(spec.assignments.back().omega_label());
      }
      QuantumState st(r, sv.branch.bottom);
      const auto dist = run_iteration_circuit(st, s, spec);
      const std::string key = "survivor:" + bits_string(sv.branch.path) + "/t:" + std::to_string(t);
      const auto est = detail::estimate(mode, sv.branch, dist.probs, detail::seed_for(mode, "hipea3", key, l));
      for (std::uint8_t v = 0; v < 2; ++v) {
        const std::uint64_t o = (std::uint64_t{v} << (r - 1)) | t;
        Bits bits = hyp;
        bits.push_back(v);
        const bool viable = est.probability[o] >= tau;
        meas.outcomes.push_back(detail::entry([&] {
          Bits p = sv.branch.path;
          p.insert(p.end(), bits.begin(), bits.end());
          return p;
        }(), est, o, viable));
        if (!viable) continue;
        Found f;
        f.branch = detail::advance(sv.branch, st, qubits, o, dist.probs[o], bits);
        f.estimate = est.probability[o];
        if (!est.counts.empty()) f.count = est.counts[o];
        f.key = key;
        out.found.push_back(std::move(f));
      }
      out.log.records.push_back({l, {meas}});
      return out;
    });

    std::vector<Found> next;
    for (auto& rj : ran) {
      rj.log.id = next_id++;
      res.logs.push_back(std::move(rj.log));
      for (auto& f : rj.found) next.push_back(std::move(f));
    }
    if (next.empty()) fail(Errc::InconsistentBranch, "every branch died in iteration " + std::to_string(l));
    if (next.size() > s.size()) fail(Errc::InconsistentBranch, "more branches than eigenvalues");
    res.counters.experiments_per_iteration.push_back(static_cast<int>(jobs.size()));
    res.counters.survivors_per_iteration.push_back(static_cast<int>(next.size()));
    res.counters.ancillas_per_iteration.push_back(r);
    res.counters.peak_ancillas = std::max(res.counters.peak_ancillas, r);
    survivors = std::move(next);
  }

  for (const auto& f : survivors)
    res.pairs.push_back(detail::finish_pair(mode, f.branch, f.estimate, f.count,
                                            detail::seed_for(mode, "hipea3", f.key, iterations + 1, 1)));
  std::sort(res.pairs.begin(), res.pairs.end(), detail::path_less);
  res.counters.experiments = next_id - 1;
  res.counters.iterations = iterations;
  res.counters.bottom_qubits = s.n_bottom();
  return res;
}

}  // namespace hipea

#endif  // HIPEA_EXTRACTION_HPP_
