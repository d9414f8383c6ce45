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

#ifndef HIPEA_LINALG_HPP_
#define HIPEA_LINALG_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hipea/error.hpp"

namespace hipea {

using Vector = std::vector<double>;

// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows) {
    Matrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size())
        fail(Errc::BadDimension, "matrix must be square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t dim() const { return dim_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  Vector row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * dim_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim_));
  }
  Vector column(std::size_t j) const {
    Vector c(dim_);
    for (std::size_t i = 0; i < dim_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<Vector> rows() const {
    std::vector<Vector> r;
    for (std::size_t i = 0; i < dim_; ++i) r.push_back(row(i));
    return r;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

inline double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) fail(Errc::DimensionMismatch, "dot: length mismatch");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

inline Vector scaled(const Vector& a, double s) {
  Vector r(a);
  for (double& v : r) v *= s;
  return r;
}

inline Vector subtract(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) fail(Errc::DimensionMismatch, "subtract: length mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector matvec(const Matrix& m, const Vector& x) {
  if (m.dim() != x.size()) fail(Errc::DimensionMismatch, "matvec: length mismatch");
  Vector y(x.size(), 0.0);
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline bool is_symmetric(const Matrix& a, double tol = 1e-12) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline int log2_exact(std::size_t n) {
  if (!is_power_of_two(n)) fail(Errc::BadDimension, "dimension " + std::to_string(n) + " is not a power of two");
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

// First entry with magnitude above 1e-10 is made positive.
inline void canonicalize_sign(Vector& v) {
  for (double x : v) {
    if (std::abs(x) > 1e-10) {
      if (x < 0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

struct EigenPair {
  double value = 0.0;
  Vector vector;
};

constexpr std::size_t kMaxEigenDim = 64;

// Cyclic Jacobi. Eigenvalues ascending, vectors sign-canonical.
inline std::vector<EigenPair> hermitian_eigendecompose(const Matrix& input, int max_sweeps = 100) {
  const std::size_t n = input.dim();
  if (n == 0 || n > kMaxEigenDim) fail(Errc::BadDimension, "eigendecompose: dimension out of range");
  if (!is_symmetric(input)) fail(Errc::NonSymmetric, "matrix is not symmetric within 1e-12");

  Matrix a = input;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (input(i, j) + input(j, i));
  Matrix v = Matrix::identity(n);

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale += a(i, j) * a(i, j);
  scale = std::max(std::sqrt(scale), 1.0);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  bool converged = off_norm() < 1e-14 * scale;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = off_norm() < 1e-14 * scale;
  }
  if (!converged) fail(Errc::ConvergenceFailure, "Jacobi sweep budget exhausted");

  std::vector<EigenPair> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j].value = a(j, j);
    out[j].vector = v.column(j);
    canonicalize_sign(out[j].vector);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const EigenPair& x, const EigenPair& y) { return x.value < y.value; });
  return out;
}

// Largest |<u_i,u_j> - delta_ij|.
inline double gram_deviation(const std::vector<Vector>& vs) {
  double d = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i; j < vs.size(); ++j)
      d = std::max(d, std::abs(dot(vs[i], vs[j]) - (i == j ? 1.0 : 0.0)));
  return d;
}

// Sum of value * u u^T.
inline Matrix synthesize(const Vector& values, const std::vector<Vector>& vectors) {
  if (values.size() != vectors.size() || vectors.empty())
    fail(Errc::DimensionMismatch, "synthesize: values/vectors mismatch");
  const std::size_t n = vectors.front().size();
  for (const auto& u : vectors)
    if (u.size() != n) fail(Errc::DimensionMismatch, "synthesize: ragged vectors");
  if (gram_deviation(vectors) > 1e-8) fail(Errc::NonOrthonormal, "eigenvectors are not orthonormal within 1e-8");
  Matrix a(n);
  for (std::size_t k = 0; k < values.size(); ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) += values[k] * vectors[k][i] * vectors[k][j];
  return a;
}

inline double relative_error(const Vector& x_ref, const Vector& x) {
  const double r = norm(x_ref);
  if (r == 0.0) fail(Errc::ZeroReference, "reference vector has zero norm");
  return norm(subtract(x_ref, x)) / r;
}

// Modified Gram-Schmidt in the given order.
inline std::vector<Vector> gram_schmidt(std::vector<Vector> vs) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double c = dot(vs[j], vs[i]);
      for (std::size_t k = 0; k < vs[i].size(); ++k) vs[i][k] -= c * vs[j][k];
    }
    const double n = norm(vs[i]);
    if (n < 1e-12) fail(Errc::ZeroVector, "gram_schmidt: linearly dependent input");
    for (double& x : vs[i]) x /= n;
  }
  return vs;
}

}  // namespace hipea

#endif  // HIPEA_LINALG_HPP_
