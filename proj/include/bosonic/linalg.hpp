// Copyright 2026 The bosonic-degeneracy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOSONIC_LINALG_HPP_
#define BOSONIC_LINALG_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bosonic/errors.hpp"

namespace bosonic {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

namespace linalg {

inline double rank_threshold(double sigma_max, double rank_rel) {
  return rank_rel * std::max(sigma_max, 1.0);
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Index numerical_rank(const Matrix& m, double rank_rel) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double thresh = rank_threshold(s.size() ? s(0) : 0.0, rank_rel);
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++r;
  return r;
}

// Orthonormal basis (columns) of {x : m x = 0}.
inline Matrix null_space(const Matrix& m, double rank_rel) {
  const Index n = m.cols();
  if (m.rows() == 0 || n == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double thresh = rank_threshold(s.size() ? s(0) : 0.0, rank_rel);
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++r;
  return svd.matrixV().rightCols(n - r);
}

// Orthonormal basis (columns) of the column span of m.
inline Matrix column_space(const Matrix& m, double rank_rel) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double thresh = rank_threshold(s.size() ? s(0) : 0.0, rank_rel);
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++r;
  return svd.matrixU().leftCols(r);
}

// Deterministic orthonormal basis for span(q), q with orthonormal columns.
// Greedy column-pivoted Gram-Schmidt over the projector's columns, ties going
// to the lowest coordinate index, so coordinate-aligned subspaces come back
// as standard basis vectors with positive signs.
inline Matrix canonical_basis(const Matrix& q) {
  const Index n = q.rows();
  const Index r = q.cols();
  Matrix out(n, r);
  if (r == 0) return out;
  Matrix work = q * q.transpose();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Index t = 0; t < r; ++t) {
    double best = -1.0;
    for (Index j = 0; j < n; ++j)
      if (!used[j]) best = std::max(best, work.col(j).norm());
    Index pick = -1;
    for (Index j = 0; j < n; ++j) {
      if (!used[j] && work.col(j).norm() >= best * (1.0 - 1e-12)) {
        pick = j;
        break;
      }
    }
    used[pick] = true;
    Vector v = work.col(pick);
    // re-orthogonalize against accepted columns for stability
    for (Index k = 0; k < t; ++k) v -= out.col(k).dot(v) * out.col(k);
    v.normalize();
    out.col(t) = v;
    for (Index j = 0; j < n; ++j)
      if (!used[j]) work.col(j) -= v.dot(work.col(j)) * v;
  }
  return out;
}

// Minimum-Euclidean-norm solution of a x = b, or nullopt when the system is
// inconsistent beyond tol (relative to max(|b|, 1)).
inline std::optional<Vector> min_norm_solve(const Matrix& a, const Vector& b,
                                            double rank_rel, double tol) {
  if (a.rows() == 0) return Vector::Zero(a.cols());
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
  cod.setThreshold(rank_rel);
  cod.compute(a);
  Vector x = cod.solve(b);
  const double resid = (a * x - b).norm();
  if (!std::isfinite(resid) || resid > tol * std::max(b.norm(), 1.0)) return std::nullopt;
  return x;
}

// Pivoted Cholesky of a Hermitian PSD matrix: a ~ g g^dagger with g of
// minimal column count. Stops once every remaining pivot is <= stop.
struct PsdFactor {
  CMatrix g;
  double residual = 0.0;  // Frobenius norm of a - g g^dagger
  double min_pivot = 0.0; // smallest remaining diagonal entry at stop
};

inline PsdFactor psd_factor(const CMatrix& a, double stop) {
  const Index n = a.rows();
  Eigen::VectorXd d(n);
  for (Index i = 0; i < n; ++i) d(i) = a(i, i).real();
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  CMatrix g(n, 0);
  std::vector<CVector> cols;
  for (Index k = 0; k < n; ++k) {
    Index p = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
      if (!chosen[i] && d(i) > best) {
        best = d(i);
        p = i;
      }
    }
    if (p < 0 || best <= stop) break;
    CVector col = a.col(p);
    for (const auto& c : cols) col -= c * std::conj(c(p));
    col /= std::sqrt(best);
    chosen[p] = true;
    for (Index i = 0; i < n; ++i) d(i) -= std::norm(col(i));
    d(p) = 0.0;
    cols.push_back(std::move(col));
  }
  PsdFactor out;
  out.g.resize(n, static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.g.col(static_cast<Index>(j)) = cols[j];
  double mp = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i)
    if (!chosen[i]) mp = std::min(mp, d(i));
  out.min_pivot = std::isfinite(mp) ? mp : 0.0;
  out.residual = (a - out.g * out.g.adjoint()).norm();
  return out;
}

inline double min_eigenvalue(const CMatrix& hermitian) {
  if (hermitian.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline double hermitian_defect(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : (a - a.adjoint()).cwiseAbs().maxCoeff();
}

// Trace norm of a Hermitian matrix (sum of |eigenvalues|).
inline double trace_norm(const CMatrix& hermitian) {
  if (hermitian.rows() == 0) return 0.0;
  CMatrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace linalg
}  // namespace bosonic

#endif  // BOSONIC_LINALG_HPP_
