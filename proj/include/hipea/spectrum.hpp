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

#ifndef HIPEA_SPECTRUM_HPP_
#define HIPEA_SPECTRUM_HPP_

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "hipea/binary.hpp"
#include "hipea/error.hpp"
#include "hipea/linalg.hpp"

namespace hipea {

struct SpectralPair {
  BinaryFraction phi;
  Vector u;
  double beta = 0.0;
};

// Eigen-pairs of A together with the projections of b. Pairs may span a
// subspace; A acts as zero on its complement.
struct Spectrum {
  int m = 0;
  std::size_t dim = 0;
  std::vector<SpectralPair> pairs;

  std::size_t size() const { return pairs.size(); }
  int n_bottom() const { return log2_exact(dim); }

  std::vector<BinaryFraction> phis() const {
    std::vector<BinaryFraction> r;
    for (const auto& p : pairs) r.push_back(p.phi);
    return r;
  }
  Vector values() const {
    Vector r;
    for (const auto& p : pairs) r.push_back(p.phi.value());
    return r;
  }
  Vector betas() const {
    Vector r;
    for (const auto& p : pairs) r.push_back(p.beta);
    return r;
  }
  std::vector<Vector> vectors() const {
    std::vector<Vector> r;
    for (const auto& p : pairs) r.push_back(p.u);
    return r;
  }

  // Shape checks only; betas are checked by validate_betas.
  void validate_shape() const {
    if (pairs.empty()) fail(Errc::InvalidArgument, "spectrum has no eigen-pairs");
    if (!is_power_of_two(dim)) fail(Errc::BadDimension, "dimension " + std::to_string(dim) + " is not a power of two");
    if (pairs.size() > dim) fail(Errc::BadDimension, "more eigen-pairs than dimensions");
    for (const auto& p : pairs) {
      if (p.phi.width() != m) fail(Errc::InvalidArgument, "eigenvalue " + p.phi.str() + " does not have width m=" + std::to_string(m));
      if (p.u.size() != dim) fail(Errc::DimensionMismatch, "eigenvector length differs from dimension");
      if (p.phi.numerator() == 0) fail(Errc::ZeroEigenvalue, "eigenvalue 0 is not allowed");
    }
    for (std::size_t i = 0; i < pairs.size(); ++i)
      for (std::size_t j = i + 1; j < pairs.size(); ++j)
        if (pairs[i].phi == pairs[j].phi) fail(Errc::DegenerateSpectrum, "eigenvalue " + pairs[i].phi.str() + " repeated");
    if (gram_deviation(vectors()) > 1e-10) fail(Errc::NonOrthonormal, "eigenvectors are not orthonormal within 1e-10");
  }

  void validate_betas() const {
    double s = 0.0;
    for (const auto& p : pairs) s += p.beta * p.beta;
    if (std::abs(s - 1.0) > 1e-10) fail(Errc::NotNormalized, "sum of squared projections is " + std::to_string(s));
  }

  void validate() const {
    validate_shape();
    validate_betas();
  }
};

inline Matrix spectral_synthesize(const Spectrum& s) { return synthesize(s.values(), s.vectors()); }

inline Vector project_onto_eigenbasis(const Vector& b, const Spectrum& s) {
  if (b.size() != s.dim) fail(Errc::DimensionMismatch, "b length differs from dimension");
  if (std::abs(norm(b) - 1.0) > 1e-10) fail(Errc::NotNormalized, "b must have unit norm");
  Vector beta;
  for (const auto& p : s.pairs) beta.push_back(dot(p.u, b));
  return beta;
}

// Fills in betas and checks that b lies in the span of the eigenvectors.
inline Spectrum with_projections(Spectrum s, const Vector& b) {
  const Vector beta = project_onto_eigenbasis(b, s);
  for (std::size_t j = 0; j < beta.size(); ++j) s.pairs[j].beta = beta[j];
  double sum = 0.0;
  for (double x : beta) sum += x * x;
  if (std::abs(sum - 1.0) > 1e-10) fail(Errc::InvalidArgument, "b is not in the span of the supplied eigenvectors");
  return s;
}

inline Vector direct_solve(const Matrix& a, const Vector& b) {
  if (b.size() != a.dim()) fail(Errc::DimensionMismatch, "b length differs from dimension");
  const auto eig = hermitian_eigendecompose(a);
  Vector x(b.size(), 0.0);
  for (const auto& e : eig) {
    if (std::abs(e.value) < 1e-12) fail(Errc::Singular, "matrix has an eigenvalue of magnitude < 1e-12");
    const double c = dot(e.vector, b) / e.value;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += c * e.vector[i];
  }
  return x;
}

// Sum of (beta_j / phi_j) u_j straight from a spectrum.
inline Vector spectral_solution(const Spectrum& s) {
  Vector x(s.dim, 0.0);
  for (const auto& p : s.pairs) {
    const double c = p.beta / p.phi.value();
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += c * p.u[i];
  }
  return x;
}

// Eigendecomposes A and encodes each eigenvalue at width m.
inline Spectrum spectrum_from_matrix(const Matrix& a, int m) {
  if (!is_power_of_two(a.dim())) fail(Errc::BadDimension, "dimension " + std::to_string(a.dim()) + " is not a power of two");
  const auto eig = hermitian_eigendecompose(a);
  Spectrum s;
  s.m = m;
  s.dim = a.dim();
  for (const auto& e : eig) {
    if (!(e.value > 0.0 && e.value < 1.0))
      fail(Errc::NotRepresentable, "eigenvalue " + std::to_string(e.value) + " lies outside (0,1)");
    s.pairs.push_back({encode_value(e.value, m), e.vector, 0.0});
  }
  for (std::size_t i = 0; i + 1 < s.pairs.size(); ++i)
    if (s.pairs[i].phi == s.pairs[i + 1].phi)
      fail(Errc::DegenerateSpectrum, "eigenvalue " + s.pairs[i].phi.str() + " repeated");
  s.validate_shape();
  return s;
}

inline Vector normalized(const Vector& v) {
  const double n = norm(v);
  if (n == 0.0) fail(Errc::ZeroVector, "cannot normalize a zero vector");
  return scaled(v, 1.0 / n);
}

struct FixtureProblem {
  Spectrum spectrum;
  Vector b;
};

// The 4x4 worked example: printed eigenvectors are orthonormalized in
// order u1..u4 (they are only given to four places) and b is normalized.
inline FixtureProblem paper_fixture() {
  const std::vector<Vector> raw_u = {
      {-0.7444, 0.1296, -0.0496, 0.6531},
      {0.3976, 0.6253, 0.5593, 0.3716},
      {0.5356, -0.3225, -0.4458, 0.6406},
      {-0.0295, -0.6987, 0.6971, 0.1581},
  };
  const std::vector<std::string> bits = {"101110000", "000010110", "000111011", "011011011"};
  const Vector raw_b = {0.3538, -0.5054, 0.0396, 0.7860};

  const auto u = gram_schmidt(raw_u);
  FixtureProblem f;
  f.b = normalized(raw_b);
  f.spectrum.m = 9;
  f.spectrum.dim = 4;
  for (std::size_t j = 0; j < 4; ++j) f.spectrum.pairs.push_back({BinaryFraction::parse(bits[j]), u[j], 0.0});
  f.spectrum = with_projections(f.spectrum, f.b);
  return f;
}

}  // namespace hipea

#endif  // HIPEA_SPECTRUM_HPP_
