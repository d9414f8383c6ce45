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

#ifndef HIPEA_CLI_HPP_
#define HIPEA_CLI_HPP_

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hipea/error.hpp"
#include "hipea/extraction.hpp"
#include "hipea/report.hpp"

namespace hipea {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitAmbiguous = 3,
  kExitRuntime = 4,
};

inline int exit_code_for(Errc c) {
  switch (c) {
    case Errc::AmbiguousSigns:
      return kExitAmbiguous;
    case Errc::IoError:
    case Errc::ConvergenceFailure:
    case Errc::TooManyQubits:
    case Errc::ImpureReduction:
    case Errc::PostSelectionNull:
    case Errc::ImpossibleOutcome:
    case Errc::InconsistentBranch:
    case Errc::MissingPath:
    case Errc::SearchSpaceTooLarge:
      return kExitRuntime;
    default:
      return kExitValidation;
  }
}

enum class LogLevel { Quiet = 0, Error = 1, Warn = 2, Info = 3, Debug = 4 };

// HIPEA_LOG_LEVEL only changes what goes to stderr.
inline LogLevel log_level_from_env() {
  const char* v = std::getenv("HIPEA_LOG_LEVEL");
  if (!v) return LogLevel::Warn;
  const std::string s = v;
  if (s == "quiet") return LogLevel::Quiet;
  if (s == "error") return LogLevel::Error;
  if (s == "info") return LogLevel::Info;
  if (s == "debug") return LogLevel::Debug;
  return LogLevel::Warn;
}

namespace detail {

struct Logger {
  std::ostream& err;
  LogLevel level;
  void operator()(LogLevel at, const std::string& msg) const {
    if (at > level) return;
    static const char* names[] = {"", "error", "warn", "info", "debug"};
    err << "hipea: " << names[static_cast<int>(at)] << ": " << msg << "\n";
  }
};

inline std::string csv_path_for(const std::string& base, const std::string& algorithm, bool many) {
  if (!many) return base;
  std::filesystem::path p(base);
  const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
  p.replace_extension();
  return p.string() + "." + algorithm + ext;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const detail::Logger log{err, log_level_from_env()};

  CLI::App app{"Hybrid iterative phase estimation solver for small linear systems", "hipea"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string problem_path, algorithm, out_path, csv_path;
  bool exact = false;
  std::optional<std::uint64_t> shots, seed;
  std::optional<int> n_top;
  int workers = 1;
  auto* solve = app.add_subcommand("solve", "Solve a problem file and write a report");
  solve->add_option("problem", problem_path, "Problem JSON")->required();
  solve->add_option("--algorithm", algorithm, "hipea1|hipea2|hipea3|hhl|all")
      ->check(CLI::IsMember({"hipea1", "hipea2", "hipea3", "hhl", "all"}));
  auto* exact_flag = solve->add_flag("--exact", exact, "Exact probabilities");
  auto* shots_opt = solve->add_option("--shots", shots, "Shots per measurement (sampled mode)");
  exact_flag->excludes(shots_opt);
  solve->add_option("--seed", seed, "Root seed");
  solve->add_option("--n-top", n_top, "Top-register width for hipea3")->check(CLI::PositiveNumber);
  solve->add_option("--out", out_path, "Report JSON (default stdout)");
  solve->add_option("--csv", csv_path, "Measurement tables");
  solve->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1, 256));

  std::string fixture_name, fixture_out;
  auto* fixture = app.add_subcommand("fixture", "Write a built-in problem");
  fixture->add_option("name", fixture_name, "Fixture name")->required()->check(CLI::IsMember({"paper-sec4"}));
  fixture->add_option("--out", fixture_out, "Problem JSON (default stdout)");

  long long est_n = 0, est_m = 0, est_top = 0;
  auto* estimate = app.add_subcommand("estimate", "Experiment count bounds for the top-register scheme");
  estimate->add_option("--n", est_n, "Number of eigenvalues")->required();
  estimate->add_option("--m", est_m, "Bit width")->required();
  estimate->add_option("--n-top", est_top, "Top-register width")->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "hipea: " << e.what() << "\n";
    err << "run 'hipea --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (*fixture) {
      const std::string text = fixture_json(fixture_name).dump(2) + "\n";
      if (fixture_out.empty())
        out << text;
      else
        write_text(fixture_out, text);
      return kExitOk;
    }
    if (*estimate) {
      const auto b = experiment_count_bounds(est_n, est_m, est_top);
      ojson j;
      j["n"] = est_n;
      j["m"] = est_m;
      j["n_top"] = est_top;
      j["iterations"] = (est_m + est_top - 1) / est_top;
      j["min_experiments"] = b.min;
      j["max_experiments"] = b.max;
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    ProblemSpec spec = load_problem(problem_path);
    if (!algorithm.empty()) spec.algorithm = algorithm;
    if (n_top) spec.n_top = *n_top;
    const std::uint64_t s = seed.value_or(spec.mode.seed);
    if (exact) {
      spec.mode = Mode::exact();
      spec.mode.seed = s;
    } else if (shots) {
      spec.mode = Mode::sampling(*shots, s);
    } else {
      spec.mode.seed = s;
    }
    log(LogLevel::Info, "solving " + problem_path + " (" + spec.algorithm + ", " + spec.mode.name() + ")");

    const SolveReport rep = run_job(spec, workers);
    const std::string text = dump_report(rep);
    if (out_path.empty())
      out << text;
    else
      write_text(out_path, text);
    if (!csv_path.empty()) {
      std::size_t tables = 0;
      for (const auto& r : rep.results) tables += r.extraction ? 1 : 0;
      for (const auto& r : rep.results) {
        if (!r.extraction) continue;
        write_text(detail::csv_path_for(csv_path, r.algorithm, tables > 1), csv_table(*r.extraction));
      }
    }
    for (const auto& r : rep.results) {
      if (r.epsilon)
        log(LogLevel::Info, r.algorithm + ": epsilon " + std::to_string(*r.epsilon));
      for (const auto& w : r.warnings) log(LogLevel::Warn, r.algorithm + ": " + w);
    }
    return rep.ambiguous() ? kExitAmbiguous : kExitOk;
  } catch (const Error& e) {
    log(LogLevel::Error, e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    log(LogLevel::Error, e.what());
    return kExitRuntime;
  }
}

}  // namespace hipea

#endif  // HIPEA_CLI_HPP_
