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

#ifndef HIPEA_RECONSTRUCTION_HPP_
#define HIPEA_RECONSTRUCTION_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hipea/binary.hpp"
#include "hipea/error.hpp"
#include "hipea/extraction.hpp"
#include "hipea/linalg.hpp"

namespace hipea {

using Table = std::vector<Vector>;  // rows indexed by eigen-pair

constexpr double kZeroMagnitude = 1e-12;
constexpr std::size_t kMaxSignTerms = 20;

// sqrt of the post-selected bottom probabilities, each row rescaled to unit
// length (a no-op in exact mode).
inline Table eigenvector_magnitudes(const std::vector<ExtractedPair>& pairs) {
  Table u;
  for (const auto& p : pairs) {
    if (p.bottom_probabilities.empty()) fail(Errc::MissingPath, "no post-selected distribution for " + p.phi.str());
    Vector row;
    for (double q : p.bottom_probabilities) row.push_back(std::sqrt(std::max(q, 0.0)));
    const double n = norm(row);
    if (n == 0.0) fail(Errc::MissingPath, "post-selected distribution for " + p.phi.str() + " is empty");
    u.push_back(scaled(row, 1.0 / n));
  }
  return u;
}

struct SignPattern {
  std::vector<std::vector<int>> n;  // 1 means negative
  std::vector<std::vector<bool>> indeterminate;
  double residual = 0.0;
  double runner_up = std::numeric_limits<double>::infinity();
  double margin = 0.0;
  bool ambiguous = false;
};

inline Table magnitudes(const Table& u_abs, const Vector& beta_abs) {
  if (u_abs.size() != beta_abs.size()) fail(Errc::DimensionMismatch, "one beta per eigenvector row");
  Table a = u_abs;
  for (std::size_t j = 0; j < a.size(); ++j)
    for (double& x : a[j]) x *= beta_abs[j];
  return a;
}

// Residual-based margin for shot data: three standard deviations of one
// component of sum_j +-|beta_j u_jp|, each term being the square root of a
// binomial frequency over `shots`.
inline double sampled_sign_margin(const Table& u_abs, const Vector& beta_abs, std::uint64_t shots) {
  const Table a = magnitudes(u_abs, beta_abs);
  double worst = 0.0;
  const std::size_t dim = a.empty() ? 0 : a.front().size();
  for (std::size_t p = 0; p < dim; ++p) {
    double var = 0.0;
    for (const auto& row : a) var += (1.0 - std::min(row[p] * row[p], 1.0)) / (4.0 * static_cast<double>(shots));
    worst = std::max(worst, std::sqrt(var));
  }
  return 3.0 * worst;
}

// Minimizes || sum_j (-1)^n_jp |beta_j u_jp| - b ||. The squared residual is
// a sum of independent per-component terms, so searching 2^N sign choices
// per component finds the same minimum as the full 2^(N dim) enumeration.
// Ties go to the lowest pattern index; zero entries keep n = 0.
inline SignPattern resolve_signs(const Table& u_abs, const Vector& beta_abs, const Vector& b, double margin = 1e-6) {
  const Table a = magnitudes(u_abs, beta_abs);
  const std::size_t nn = a.size();
  if (nn == 0) fail(Errc::InvalidArgument, "no eigen-pairs");
  if (nn > kMaxSignTerms) fail(Errc::SearchSpaceTooLarge, "sign search over " + std::to_string(nn) + " terms per component");
  const std::size_t dim = b.size();
  for (const auto& row : a)
    if (row.size() != dim) fail(Errc::DimensionMismatch, "eigenvector length differs from b");

  SignPattern sp;
  sp.margin = margin;
  sp.n.assign(nn, std::vector<int>(dim, 0));
  sp.indeterminate.assign(nn, std::vector<bool>(dim, false));
  double best_total = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();

  for (std::size_t p = 0; p < dim; ++p) {
    std::vector<std::size_t> live;
    for (std::size_t j = 0; j < nn; ++j) {
      if (a[j][p] < kZeroMagnitude)
        sp.indeterminate[j][p] = true;
      else
        live.push_back(j);
    }
    double best = std::numeric_limits<double>::infinity(), second = best;
    std::uint64_t best_mask = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << live.size()); ++mask) {
      double sum = 0.0;
      for (std::size_t i = 0; i < live.size(); ++i) sum += ((mask >> i) & 1u) ? -a[live[i]][p] : a[live[i]][p];
      const double r = (sum - b[p]) * (sum - b[p]);
      if (r < best) {
        second = best;
        best = r;
        best_mask = mask;
      } else if (r < second) {
        second = r;
      }
    }
    for (std::size_t i = 0; i < live.size(); ++i) sp.n[live[i]][p] = static_cast<int>((best_mask >> i) & 1u);
    best_total += best;
    min_gap = std::min(min_gap, second - best);
  }
  sp.residual = std::sqrt(best_total);
  if (std::isfinite(min_gap)) sp.runner_up = std::sqrt(best_total + min_gap);
  sp.ambiguous = sp.runner_up - sp.residual < margin;
  return sp;
}

inline SignPattern resolve_signs_strict(const Table& u_abs, const Vector& beta_abs, const Vector& b, double margin = 1e-6) {
  auto sp = resolve_signs(u_abs, beta_abs, b, margin);
  if (sp.ambiguous)
    fail(Errc::AmbiguousSigns, "runner-up residual " + std::to_string(sp.runner_up) + " within " + std::to_string(margin) +
                                   " of minimum " + std::to_string(sp.residual));
  return sp;
}

inline Table signed_products(const Table& u_abs, const Vector& beta_abs, const SignPattern& sp) {
  Table a = magnitudes(u_abs, beta_abs);
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t p = 0; p < a[j].size(); ++p)
      if (sp.n[j][p]) a[j][p] = -a[j][p];
  return a;
}

struct ReconstructedSolution {
  Table u_abs;
  Table signed_products;
  Vector x;
};

inline Vector assemble_solution(const Table& products, const std::vector<BinaryFraction>& phis) {
  if (products.size() != phis.size()) fail(Errc::DimensionMismatch, "one eigenvalue per product row");
  if (products.empty()) fail(Errc::InvalidArgument, "no eigen-pairs");
  Vector x(products.front().size(), 0.0);
  for (std::size_t j = 0; j < phis.size(); ++j) {
    const double phi = decode_bits(phis[j]);
    if (phi <= 0.0) fail(Errc::ZeroEigenvalue, "eigenvalue " + phis[j].str() + " is zero");
    for (std::size_t p = 0; p < x.size(); ++p) x[p] += products[j][p] / phi;
  }
  return x;
}

}  // namespace hipea

#endif  // HIPEA_RECONSTRUCTION_HPP_
