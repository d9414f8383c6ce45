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

// Runs the built-in 4x4 problem through every solver and prints a summary.

#include <cstdio>
#include <string>

#include "hipea/hipea.hpp"

int main() {
  const auto problem = hipea::parse_problem(hipea::fixture_json("paper-sec4"));
  const auto report = hipea::run_job(problem);

  std::printf("reference x:");
  for (double v : report.reference_x) std::printf(" %+.6f", v);
  std::printf("\n\n");

  for (const auto& r : report.results) {
    std::printf("%s\n", r.algorithm.c_str());
    if (r.extraction) {
      const auto& c = r.extraction->counters;
      for (const auto& p : r.extraction->pairs)
        std::printf("  phi = 0.%s  |beta|^2 = %.6f\n", p.phi.str().c_str(), p.beta_abs * p.beta_abs);
      std::printf("  experiments %d, iterations %d, qubits %d\n", c.experiments, c.iterations, c.total_qubits());
      std::printf("  epsilon %.3e\n", *r.epsilon);
    } else {
      std::printf("  success probability %.4f, qubits %d\n", r.hhl->success_probability, r.hhl->qubits);
      std::printf("  distance to normalized reference %.3e\n", *r.normalized_distance);
    }
    std::printf("  x:");
    for (double v : r.x) std::printf(" %+.6f", v);
    std::printf("\n\n");
  }
  return report.ambiguous() ? 1 : 0;
}
