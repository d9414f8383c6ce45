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

#ifndef HIPEA_REPORT_HPP_
#define HIPEA_REPORT_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hipea/binary.hpp"
#include "hipea/error.hpp"
#include "hipea/extraction.hpp"
#include "hipea/hhl.hpp"
#include "hipea/linalg.hpp"
#include "hipea/reconstruction.hpp"
#include "hipea/spectrum.hpp"

namespace hipea {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kToolName = "hipea";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// ---- problem ----------------------------------------------------------------

struct ProblemSpec {
  int m = 0;
  bool from_matrix = false;
  Matrix matrix;      // given, or synthesized from the spectrum
  Spectrum spectrum;  // betas filled in against the normalized b
  Vector b;           // as given
  double b_norm = 1.0;
  std::string algorithm = "all";
  int n_top = 3;
  Mode mode;

  Vector b_unit() const { return scaled(b, 1.0 / b_norm); }
};

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"hipea1", "hipea2", "hipea3", "hhl", "all"};
  return names;
}

namespace detail {

template <typename T>
T field(const ojson& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

inline Vector vector_field(const ojson& j, const char* key) { return field<Vector>(j, key); }

}  // namespace detail

inline ProblemSpec parse_problem(const ojson& j) {
  if (!j.is_object()) fail(Errc::ParseError, "problem must be a JSON object");
  ProblemSpec p;
  p.m = detail::field<int>(j, "m");
  if (p.m < 1 || p.m > kMaxBitWidth) fail(Errc::InvalidArgument, "m must be in 1.." + std::to_string(kMaxBitWidth));
  const bool has_matrix = j.contains("matrix"), has_spectrum = j.contains("spectrum");
  if (has_matrix == has_spectrum) fail(Errc::ParseError, "exactly one of 'matrix' and 'spectrum' is required");

  if (j.contains("algorithm")) p.algorithm = detail::field<std::string>(j, "algorithm");
  bool known = false;
  for (const auto& a : algorithm_names()) known = known || a == p.algorithm;
  if (!known) fail(Errc::InvalidArgument, "unknown algorithm '" + p.algorithm + "'");
  if (j.contains("n_top")) p.n_top = detail::field<int>(j, "n_top");
  if (p.n_top < 1) fail(Errc::InvalidArgument, "n_top must be positive");
  std::string mode = j.contains("mode") ? detail::field<std::string>(j, "mode") : "exact";
  std::uint64_t shots = j.contains("shots") ? detail::field<std::uint64_t>(j, "shots") : kDefaultShots;
  std::uint64_t seed = j.contains("seed") ? detail::field<std::uint64_t>(j, "seed") : 0;
  if (mode == "exact") {
    p.mode = Mode::exact();
    p.mode.shots = shots;
    p.mode.seed = seed;
  } else if (mode == "sampled") {
    p.mode = Mode::sampling(shots, seed);
  } else {
    fail(Errc::InvalidArgument, "mode must be 'exact' or 'sampled'");
  }

  std::optional<Vector> betas;
  if (has_matrix) {
    const auto rows = detail::field<std::vector<Vector>>(j, "matrix");
    p.matrix = Matrix::from_rows(rows);
    if (!is_power_of_two(p.matrix.dim())) fail(Errc::BadDimension, "dimension " + std::to_string(p.matrix.dim()) + " is not a power of two");
    p.spectrum = spectrum_from_matrix(p.matrix, p.m);
    p.from_matrix = true;
  } else {
    const auto& sj = j.at("spectrum");
    const auto bits = detail::field<std::vector<std::string>>(sj, "eigenvalues");
    const auto vecs = detail::field<std::vector<Vector>>(sj, "eigenvectors");
    if (bits.size() != vecs.size()) fail(Errc::ParseError, "eigenvalues and eigenvectors differ in count");
    if (vecs.empty()) fail(Errc::ParseError, "empty spectrum");
    p.spectrum.m = p.m;
    p.spectrum.dim = vecs.front().size();
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (static_cast<int>(bits[i].size()) != p.m)
        fail(Errc::InvalidArgument, "eigenvalue '" + bits[i] + "' does not have " + std::to_string(p.m) + " bits");
      p.spectrum.pairs.push_back({BinaryFraction::parse(bits[i]), vecs[i], 0.0});
    }
    p.spectrum.validate_shape();
    p.matrix = spectral_synthesize(p.spectrum);
    if (sj.contains("betas")) betas = detail::vector_field(sj, "betas");
  }

  if (j.contains("b")) {
    p.b = detail::vector_field(j, "b");
  } else if (betas) {
    if (betas->size() != p.spectrum.size()) fail(Errc::ParseError, "one beta per eigenvalue");
    p.b.assign(p.spectrum.dim, 0.0);
    for (std::size_t k = 0; k < betas->size(); ++k)
      for (std::size_t i = 0; i < p.b.size(); ++i) p.b[i] += (*betas)[k] * p.spectrum.pairs[k].u[i];
  } else {
    fail(Errc::ParseError, "field 'b' is required");
  }
  if (p.b.size() != p.spectrum.dim) fail(Errc::BadDimension, "b has length " + std::to_string(p.b.size()) + ", expected " + std::to_string(p.spectrum.dim));
  p.b_norm = norm(p.b);
  if (p.b_norm == 0.0) fail(Errc::ZeroVector, "b is zero");
  p.spectrum = with_projections(p.spectrum, p.b_unit());
  if (betas) {
    if (betas->size() != p.spectrum.size()) fail(Errc::ParseError, "one beta per eigenvalue");
    for (std::size_t k = 0; k < betas->size(); ++k)
      if (std::abs((*betas)[k] - p.spectrum.pairs[k].beta * p.b_norm) > 1e-6)
        fail(Errc::InvalidArgument, "supplied betas disagree with b");
  }
  return p;
}

inline ojson read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open '" + path + "'");
  try {
    return ojson::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, path + ": " + e.what());
  }
}

inline ProblemSpec load_problem(const std::string& path) { return parse_problem(read_json_file(path)); }

inline ojson fixture_json(const std::string& name) {
  if (name != "paper-sec4") fail(Errc::InvalidArgument, "unknown fixture '" + name + "'");
  const auto f = paper_fixture();
  ojson j;
  j["m"] = f.spectrum.m;
  ojson s;
  s["eigenvalues"] = ojson::array();
  s["eigenvectors"] = ojson::array();
  for (const auto& p : f.spectrum.pairs) {
    s["eigenvalues"].push_back(p.phi.str());
    s["eigenvectors"].push_back(p.u);
  }
  j["spectrum"] = s;
  j["b"] = f.b;
  j["algorithm"] = "all";
  j["n_top"] = 3;
  j["mode"] = "exact";
  j["shots"] = kDefaultShots;
  j["seed"] = 42;
  return j;
}

// ---- report -----------------------------------------------------------------

struct AlgorithmReport {
  std::string algorithm;
  std::optional<ExtractionResult> extraction;
  Table u_abs;
  std::optional<SignPattern> signs;
  Table products;
  Vector x;
  std::optional<double> epsilon;
  std::optional<HhlResult> hhl;
  std::optional<double> normalized_distance;  // hhl only, against the reference
  std::vector<std::pair<std::string, double>> contrast;  // hhl only, against each HIPEA x
  std::vector<std::string> warnings;
};

struct SolveReport {
  int schema_version = kSchemaVersion;
  std::string tool = kToolName;
  std::string version = kToolVersion;
  Mode mode;
  int m = 0;
  std::size_t dim = 0;
  int n_top = 0;
  bool from_matrix = false;
  double b_norm = 1.0;
  Vector reference_x;
  std::vector<AlgorithmReport> results;

  bool ambiguous() const {
    for (const auto& r : results)
      if (r.signs && r.signs->ambiguous) return true;
    return false;
  }
};

inline AlgorithmReport solve_with(const ProblemSpec& p, const std::string& algorithm, const Vector& reference, int workers) {
  AlgorithmReport r;
  r.algorithm = algorithm;
  const RunOptions opt{p.mode, workers};
  const Vector bu = p.b_unit();
  if (algorithm == "hhl") {
    r.hhl = run_hhl(p.spectrum, bu);
    r.x = r.hhl->x_normalized;
    r.normalized_distance = compare_normalized(reference, *r.hhl);
    return r;
  }
  if (algorithm == "hipea1")
    r.extraction = run_hipea1(p.spectrum, bu, opt);
  else if (algorithm == "hipea2")
    r.extraction = run_hipea2(p.spectrum, bu, opt);
  else if (algorithm == "hipea3")
    r.extraction = run_hipea3(p.spectrum, bu, p.n_top, opt);
  else
    fail(Errc::InvalidArgument, "unknown algorithm '" + algorithm + "'");

  Vector beta;
  std::vector<BinaryFraction> phis;
  for (const auto& pr : r.extraction->pairs) {
    beta.push_back(pr.beta_abs);
    phis.push_back(pr.phi);
  }
  r.u_abs = eigenvector_magnitudes(r.extraction->pairs);
  const double margin = p.mode.sampled ? sampled_sign_margin(r.u_abs, beta, p.mode.shots) : 1e-6;
  r.signs = resolve_signs(r.u_abs, beta, bu, margin);
  if (r.signs->ambiguous)
    r.warnings.push_back("AmbiguousSigns: runner-up residual within " + std::to_string(margin) + " of the minimum");
  r.products = signed_products(r.u_abs, beta, *r.signs);
  r.x = scaled(assemble_solution(r.products, phis), p.b_norm);
  r.epsilon = relative_error(reference, r.x);
  return r;
}

inline SolveReport run_job(const ProblemSpec& p, int workers = 1) {
  SolveReport rep;
  rep.mode = p.mode;
  rep.m = p.m;
  rep.dim = p.spectrum.dim;
  rep.n_top = p.n_top;
  rep.from_matrix = p.from_matrix;
  rep.b_norm = p.b_norm;
  // A spectrum on a proper subspace makes A singular; b lies in its range.
  rep.reference_x = p.spectrum.size() == p.spectrum.dim ? direct_solve(p.matrix, p.b)
                                                        : scaled(spectral_solution(p.spectrum), p.b_norm);
  std::vector<std::string> algs;
  if (p.algorithm == "all")
    algs = {"hipea1", "hipea2", "hipea3", "hhl"};
  else
    algs = {p.algorithm};
  for (const auto& a : algs) rep.results.push_back(solve_with(p, a, rep.reference_x, workers));
  for (auto& r : rep.results) {
    if (!r.hhl) continue;
    for (const auto& o : rep.results)
      if (o.extraction) r.contrast.push_back({o.algorithm, compare_normalized(o.x, *r.hhl)});
  }
  return rep;
}

// ---- JSON -------------------------------------------------------------------

inline ojson to_json(const ExtractionResult& e) {
  ojson j;
  ojson pairs = ojson::array();
  for (const auto& p : e.pairs) {
    ojson pj;
    pj["bitstring"] = p.phi.str();
    pj["value"] = p.phi.value();
    pj["beta_abs"] = p.beta_abs;
    pj["bottom_probabilities"] = p.bottom_probabilities;
    if (!p.bottom_counts.empty()) {
      pj["bottom_counts"] = p.bottom_counts;
      pj["path_shots"] = p.path_shots;
    }
    pairs.push_back(pj);
  }
  j["extracted"] = pairs;
  const auto& c = e.counters;
  j["resources"] = {{"experiments", c.experiments},
                    {"iterations", c.iterations},
                    {"peak_ancillas", c.peak_ancillas},
                    {"bottom_qubits", c.bottom_qubits},
                    {"total_qubits", c.total_qubits()},
                    {"ancillas_per_iteration", c.ancillas_per_iteration},
                    {"activation_iterations", c.activation_iterations},
                    {"experiments_per_iteration", c.experiments_per_iteration},
                    {"survivors_per_iteration", c.survivors_per_iteration}};
  ojson logs = ojson::array();
  for (const auto& log : e.logs) {
    ojson lj;
    lj["id"] = log.id;
    lj["path"] = log.path;
    ojson recs = ojson::array();
    for (const auto& rec : log.records) {
      ojson rj;
      rj["iteration"] = rec.iteration;
      ojson ms = ojson::array();
      for (const auto& meas : rec.measurements) {
        ojson mj;
        mj["ancillas"] = meas.ancillas;
        mj["omegas"] = meas.omegas;
        ojson rad = ojson::array();
        for (const auto& w : meas.omegas) rad.push_back(rotation_angle(parse_omega(w)));
        mj["omega_rad"] = rad;
        ojson outs = ojson::array();
        for (const auto& o : meas.outcomes) {
          ojson oj;
          oj["label"] = o.label;
          oj["probability"] = o.probability;
          if (o.count) oj["count"] = *o.count;
          oj["followed"] = o.followed;
          outs.push_back(oj);
        }
        mj["outcomes"] = outs;
        ms.push_back(mj);
      }
      rj["measurements"] = ms;
      recs.push_back(rj);
    }
    lj["records"] = recs;
    logs.push_back(lj);
  }
  j["experiments"] = logs;
  return j;
}

inline ojson to_json(const SolveReport& r) {
  ojson j;
  j["schema_version"] = r.schema_version;
  j["provenance"] = {{"tool", r.tool}, {"version", r.version}, {"mode", r.mode.name()}, {"shots", r.mode.shots}, {"seed", r.mode.seed}};
  j["problem"] = {{"m", r.m}, {"dim", r.dim}, {"n_top", r.n_top}, {"input", r.from_matrix ? "matrix" : "spectrum"}, {"b_norm", r.b_norm}};
  j["reference_x"] = r.reference_x;
  ojson results = ojson::array();
  for (const auto& a : r.results) {
    ojson aj;
    aj["algorithm"] = a.algorithm;
    if (a.extraction) {
      const ojson ej = to_json(*a.extraction);
      aj["extracted"] = ej["extracted"];
      aj["u_abs"] = a.u_abs;
      aj["signs"] = {{"n", a.signs->n},
                     {"indeterminate", a.signs->indeterminate},
                     {"residual", a.signs->residual},
                     {"runner_up", std::isfinite(a.signs->runner_up) ? ojson(a.signs->runner_up) : ojson(nullptr)},
                     {"margin", a.signs->margin},
                     {"ambiguous", a.signs->ambiguous}};
      aj["signed_products"] = a.products;
      aj["x"] = a.x;
      aj["epsilon"] = *a.epsilon;
      aj["resources"] = ej["resources"];
      aj["experiments"] = ej["experiments"];
    }
    if (a.hhl) {
      aj["x_normalized"] = a.hhl->x_normalized;
      aj["success_probability"] = a.hhl->success_probability;
      aj["C"] = a.hhl->C;
      aj["leakage"] = a.hhl->leakage;
      aj["qubits"] = a.hhl->qubits;
      aj["normalized_distance"] = *a.normalized_distance;
      ojson c = ojson::array();
      for (const auto& [name, d] : a.contrast) c.push_back({{"algorithm", name}, {"normalized_distance", d}});
      aj["contrast"] = c;
    }
    aj["warnings"] = a.warnings;
    results.push_back(aj);
  }
  j["results"] = results;
  return j;
}

inline std::string dump_report(const SolveReport& r) { return to_json(r).dump(2) + "\n"; }

namespace detail {

inline ExtractionResult extraction_from_json(const std::string& algorithm, const ojson& a) {
  ExtractionResult e;
  e.algorithm = algorithm;
  for (const auto& pj : a.at("extracted")) {
    ExtractedPair p;
    p.phi = BinaryFraction::parse(pj.at("bitstring").get<std::string>());
    p.beta_abs = pj.at("beta_abs").get<double>();
    p.bottom_probabilities = pj.at("bottom_probabilities").get<std::vector<double>>();
    if (pj.contains("bottom_counts")) {
      p.bottom_counts = pj.at("bottom_counts").get<std::vector<std::uint64_t>>();
      p.path_shots = pj.at("path_shots").get<std::uint64_t>();
    }
    e.pairs.push_back(p);
  }
  const auto& rj = a.at("resources");
  e.counters.experiments = rj.at("experiments").get<int>();
  e.counters.iterations = rj.at("iterations").get<int>();
  e.counters.peak_ancillas = rj.at("peak_ancillas").get<int>();
  e.counters.bottom_qubits = rj.at("bottom_qubits").get<int>();
  e.counters.ancillas_per_iteration = rj.at("ancillas_per_iteration").get<std::vector<int>>();
  e.counters.activation_iterations = rj.at("activation_iterations").get<std::vector<int>>();
  e.counters.experiments_per_iteration = rj.at("experiments_per_iteration").get<std::vector<int>>();
  e.counters.survivors_per_iteration = rj.at("survivors_per_iteration").get<std::vector<int>>();
  for (const auto& lj : a.at("experiments")) {
    ExperimentLog log;
    log.id = lj.at("id").get<int>();
    log.path = lj.at("path").get<std::string>();
    for (const auto& recj : lj.at("records")) {
      IterationRecord rec;
      rec.iteration = recj.at("iteration").get<int>();
      for (const auto& mj : recj.at("measurements")) {
        Measurement meas;
        meas.ancillas = mj.at("ancillas").get<std::vector<int>>();
        meas.omegas = mj.at("omegas").get<std::vector<std::string>>();
        const auto rad = mj.at("omega_rad").get<std::vector<double>>();
        if (rad.size() != meas.omegas.size()) fail(Errc::ParseError, "omega_rad length mismatch");
        for (std::size_t i = 0; i < rad.size(); ++i)
          if (std::abs(rotation_angle(parse_omega(meas.omegas[i])) - rad[i]) > 1e-12)
            fail(Errc::ParseError, "rotation string " + meas.omegas[i] + " disagrees with its angle");
        for (const auto& oj : mj.at("outcomes")) {
          OutcomeEntry o;
          o.label = oj.at("label").get<std::string>();
          o.probability = oj.at("probability").get<double>();
          if (oj.contains("count")) o.count = oj.at("count").get<std::uint64_t>();
          o.followed = oj.at("followed").get<bool>();
          meas.outcomes.push_back(o);
        }
        rec.measurements.push_back(meas);
      }
      log.records.push_back(rec);
    }
    e.logs.push_back(log);
  }
  return e;
}

}  // namespace detail

// Rebuilds a report and re-checks what can be re-derived: each epsilon from
// its own x and the stored reference, each rotation string from its angle.
inline SolveReport report_from_json(const ojson& j) {
  try {
    SolveReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion) fail(Errc::ParseError, "unsupported schema_version");
    const auto& pv = j.at("provenance");
    r.tool = pv.at("tool").get<std::string>();
    r.version = pv.at("version").get<std::string>();
    r.mode.sampled = pv.at("mode").get<std::string>() == "sampled";
    r.mode.shots = pv.at("shots").get<std::uint64_t>();
    r.mode.seed = pv.at("seed").get<std::uint64_t>();
    const auto& pj = j.at("problem");
    r.m = pj.at("m").get<int>();
    r.dim = pj.at("dim").get<std::size_t>();
    r.n_top = pj.at("n_top").get<int>();
    r.from_matrix = pj.at("input").get<std::string>() == "matrix";
    r.b_norm = pj.at("b_norm").get<double>();
    r.reference_x = j.at("reference_x").get<Vector>();
    for (const auto& aj : j.at("results")) {
      AlgorithmReport a;
      a.algorithm = aj.at("algorithm").get<std::string>();
      a.x = aj.contains("x") ? aj.at("x").get<Vector>() : Vector{};
      if (aj.contains("extracted")) {
        a.extraction = detail::extraction_from_json(a.algorithm, aj);
        a.u_abs = aj.at("u_abs").get<Table>();
        SignPattern sp;
        const auto& sj = aj.at("signs");
        sp.n = sj.at("n").get<std::vector<std::vector<int>>>();
        sp.indeterminate = sj.at("indeterminate").get<std::vector<std::vector<bool>>>();
        sp.residual = sj.at("residual").get<double>();
        sp.runner_up = sj.at("runner_up").is_null() ? std::numeric_limits<double>::infinity() : sj.at("runner_up").get<double>();
        sp.margin = sj.at("margin").get<double>();
        sp.ambiguous = sj.at("ambiguous").get<bool>();
        a.signs = sp;
        a.products = aj.at("signed_products").get<Table>();
        a.epsilon = aj.at("epsilon").get<double>();
        if (std::abs(relative_error(r.reference_x, a.x) - *a.epsilon) > 1e-12)
          fail(Errc::ParseError, a.algorithm + ": stored epsilon does not match x");
      }
      if (aj.contains("x_normalized")) {
        HhlResult h;
        h.x_normalized = aj.at("x_normalized").get<Vector>();
        h.success_probability = aj.at("success_probability").get<double>();
        h.C = aj.at("C").get<double>();
        h.leakage = aj.at("leakage").get<double>();
        h.qubits = aj.at("qubits").get<int>();
        a.hhl = h;
        a.normalized_distance = aj.at("normalized_distance").get<double>();
        for (const auto& c : aj.at("contrast"))
          a.contrast.push_back({c.at("algorithm").get<std::string>(), c.at("normalized_distance").get<double>()});
      }
      a.warnings = aj.at("warnings").get<std::vector<std::string>>();
      r.results.push_back(std::move(a));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("report: ") + e.what());
  }
}

// ---- CSV --------------------------------------------------------------------

inline std::string csv_table(const ExtractionResult& e) {
  std::ostringstream out;
  out << "experiment,iteration,ancilla,omega,outcome,probability\n";
  char buf[32];
  for (const auto& log : e.logs)
    for (const auto& rec : log.records)
      for (const auto& meas : rec.measurements) {
        std::string anc, om;
        for (std::size_t i = 0; i < meas.ancillas.size(); ++i) {
          anc += (i ? " " : "") + std::to_string(meas.ancillas[i]);
          om += (i ? " " : "") + meas.omegas[i];
        }
        for (const auto& o : meas.outcomes) {
          std::snprintf(buf, sizeof buf, "%.5f", o.probability);
          out << log.id << ',' << rec.iteration << ',' << anc << ',' << om << ',' << o.label << ',' << buf << '\n';
        }
      }
  return out.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(Errc::IoError, "write to '" + path + "' failed");
}

}  // namespace hipea

#endif  // HIPEA_REPORT_HPP_
