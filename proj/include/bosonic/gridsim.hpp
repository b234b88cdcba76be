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

#ifndef BOSONIC_GRIDSIM_HPP_
#define BOSONIC_GRIDSIM_HPP_

#include <cmath>
#include <numbers>
#include <span>
#include <sstream>
#include <utility>
#include <variant>
#include <vector>

#include "bosonic/channel.hpp"
#include "bosonic/errors.hpp"
#include "bosonic/linalg.hpp"
#include "bosonic/region.hpp"

namespace bosonic {

// Single-mode position grid: xi_j = -L/2 + j L/n, j = 0..n-1, periodic.
class Grid {
 public:
  Grid(Index n, double length) : n_(n), length_(length) {
    if (n < 8 || (n & (n - 1)) != 0)
      throw InvalidArgument("Grid: n must be a power of two >= 8, got " + std::to_string(n));
    if (!(length > 0.0) || !std::isfinite(length))
      throw InvalidArgument("Grid: length must be positive");
  }

  Index size() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / static_cast<double>(n_); }
  double point(Index j) const { return -0.5 * length_ + static_cast<double>(j) * spacing(); }
  Vector points() const {
    Vector x(n_);
    for (Index j = 0; j < n_; ++j) x(j) = point(j);
    return x;
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  Index n_;
  double length_;
};

// Density matrix on a grid: Hermitian, unit trace, positive semidefinite.
class GridState {
 public:
  GridState(const Grid& grid, CMatrix rho, const Tolerance& tol = {})
      : grid_(grid), rho_(std::move(rho)) {
    check_shape();
    if (linalg::hermitian_defect(rho_) > 1e-10)
      throw PreconditionViolated("GridState: matrix is not Hermitian");
    if (std::abs(rho_.trace() - Complex(1.0)) > 1e-10)
      throw PreconditionViolated("GridState: trace is not 1");
    const double me = certified_min_eigenvalue(rho_, tol);
    if (me < tol.eigen_floor) {
      std::ostringstream msg;
      msg << "GridState: negative eigenvalue " << me;
      throw PreconditionViolated(msg.str());
    }
  }

  static GridState pure(const Grid& grid, const CVector& psi) {
    const double nrm = psi.norm();
    if (psi.size() != grid.size() || !(nrm > 0.0))
      throw InvalidArgument("GridState::pure: vector is empty or has the wrong size");
    const CVector u = psi / nrm;
    return GridState(Trusted{}, grid, u * u.adjoint());
  }

  // sum_i p_i |psi_i><psi_i| with every psi_i normalized and p normalized.
  static GridState mixture(const Grid& grid, std::span<const CVector> psis,
                           std::span<const double> probs) {
    if (psis.empty() || psis.size() != probs.size())
      throw InvalidArgument("GridState::mixture: need one probability per vector");
    double total = 0.0;
    for (double p : probs) {
      if (!(p >= 0.0)) throw InvalidArgument("GridState::mixture: negative probability");
      total += p;
    }
    if (!(total > 0.0)) throw InvalidArgument("GridState::mixture: zero total weight");
    CMatrix rho = CMatrix::Zero(grid.size(), grid.size());
    for (std::size_t i = 0; i < psis.size(); ++i) {
      const double nrm = psis[i].norm();
      if (psis[i].size() != grid.size() || !(nrm > 0.0))
        throw InvalidArgument("GridState::mixture: bad component vector");
      const CVector u = psis[i] / nrm;
      rho.noalias() += (probs[i] / total) * (u * u.adjoint());
    }
    return GridState(Trusted{}, grid, std::move(rho));
  }

  // For matrices that are states by construction (outputs of CPTP maps,
  // convex combinations of states). Only Hermiticity and trace are checked.
  static GridState trusted(const Grid& grid, CMatrix rho) {
    GridState s(Trusted{}, grid, std::move(rho));
    s.check_shape();
    if (linalg::hermitian_defect(s.rho_) > 1e-10)
      throw InternalConsistency("GridState::trusted: matrix is not Hermitian");
    if (std::abs(s.rho_.trace() - Complex(1.0)) > 1e-10)
      throw InternalConsistency("GridState::trusted: trace is not 1");
    return s;
  }

  const Grid& grid() const { return grid_; }
  const CMatrix& matrix() const { return rho_; }
  Index dim() const { return rho_.rows(); }

  // Lower bound certificate: a pivoted Cholesky residual bounds how negative
  // the spectrum can be; falls back to a full eigensolve when inconclusive.
  static double certified_min_eigenvalue(const CMatrix& rho, const Tolerance& tol = {}) {
    const auto f = linalg::psd_factor(rho, 1e-14);
    if (f.residual <= -tol.eigen_floor) return -f.residual;
    return linalg::min_eigenvalue(0.5 * (rho + rho.adjoint()));
  }

 private:
  struct Trusted {};
  GridState(Trusted, const Grid& grid, CMatrix rho) : grid_(grid), rho_(std::move(rho)) {}

  void check_shape() const {
    if (rho_.rows() != grid_.size() || rho_.cols() != grid_.size())
      throw InvalidArgument("GridState: matrix size does not match the grid");
  }

  Grid grid_;
  CMatrix rho_;
};

// ---------------------------------------------------------------------------
// Weyl operators on the grid.

// Phase-space point of the lattice displacement (a, b): a phase steps of
// 2 pi / L in the e-direction, b grid shifts in the h-direction.
inline Vector lattice_displacement(const Grid& grid, Index a, Index b) {
  Vector z(2);
  z << 2.0 * std::numbers::pi * static_cast<double>(a) / grid.length(),
      static_cast<double>(b) * grid.spacing();
  return z;
}

// W(x e + b delta h) = exp(i x b delta / 2) * diag(exp(i x xi_j)) * S_b,
// (S_b psi)_j = psi_{(j + b) mod n}. With x on the lattice 2 pi a / L this is
// a finite Weyl system obeying W(z) W(z') = exp(-i z^T Delta z' / 2) W(z + z').
inline CMatrix weyl_shifted(const Grid& grid, double x, Index b) {
  const Index n = grid.size();
  CMatrix w = CMatrix::Zero(n, n);
  const double sym = 0.5 * x * static_cast<double>(b) * grid.spacing();
  for (Index j = 0; j < n; ++j) {
    const Index col = ((j + b) % n + n) % n;
    w(j, col) = std::exp(Complex(0.0, x * grid.point(j) + sym));
  }
  return w;
}

inline CMatrix weyl(const Grid& grid, Index a, Index b) {
  return weyl_shifted(grid, lattice_displacement(grid, a, b)(0), b);
}

// W(z) for a phase-space point whose h-component is a whole number of grid
// steps (any e-component is allowed).
inline CMatrix weyl_at(const Grid& grid, const Vector& z) {
  if (z.size() != 2) throw InvalidArgument("weyl_at: grid Weyl operators are single-mode");
  const double steps = z(1) / grid.spacing();
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9)
    throw InvalidArgument("weyl_at: h-component is not a multiple of the grid spacing");
  return weyl_shifted(grid, z(0), static_cast<Index>(rounded));
}

// ---------------------------------------------------------------------------
// Kraus maps.

struct DiagonalKraus {
  CVector diag;
};

// |ket><bra|; bra_index >= 0 means bra is the grid delta at that index.
struct OuterKraus {
  CVector ket;
  CVector bra;
  Index bra_index = -1;
};

struct DenseKraus {
  CMatrix m;
};

using KrausOp = std::variant<DiagonalKraus, OuterKraus, DenseKraus>;

inline CMatrix dense(const KrausOp& op, Index n) {
  return std::visit(
      [n](const auto& k) -> CMatrix {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, DiagonalKraus>) {
          return k.diag.asDiagonal();
        } else if constexpr (std::is_same_v<T, OuterKraus>) {
          const CVector bra = k.bra_index >= 0 ? CVector(CVector::Unit(n, k.bra_index)) : k.bra;
          return k.ket * bra.adjoint();
        } else {
          return k.m;
        }
      },
      op);
}

struct GridChannel {
  Grid grid;
  std::vector<KrausOp> kraus;
  GaussianChannelSpec spec;

  // max |sum M^dagger M - I|
  double completeness_defect() const {
    const Index n = grid.size();
    CMatrix acc = CMatrix::Zero(n, n);
    for (const auto& op : kraus) {
      std::visit(
          [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, DiagonalKraus>) {
              acc.diagonal() += k.diag.cwiseAbs2().template cast<Complex>();
            } else if constexpr (std::is_same_v<T, OuterKraus>) {
              const double kk = k.ket.squaredNorm();
              if (k.bra_index >= 0) acc(k.bra_index, k.bra_index) += kk;
              else acc.noalias() += kk * (k.bra * k.bra.adjoint());
            } else {
              acc.noalias() += k.m.adjoint() * k.m;
            }
          },
          op);
    }
    return (acc - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  }
};

// sum_j M_j rho M_j^dagger, accumulated in Kraus order. Works on arbitrary
// operators, not only states.
inline CMatrix apply_kraus(const GridChannel& ch, const CMatrix& rho) {
  const Index n = ch.grid.size();
  if (rho.rows() != n || rho.cols() != n) throw InvalidArgument("apply: grid mismatch");
  CMatrix out = CMatrix::Zero(n, n);
  for (const auto& op : ch.kraus) {
    std::visit(
        [&](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, DiagonalKraus>) {
            out.array() += (k.diag * k.diag.adjoint()).array() * rho.array();
          } else if constexpr (std::is_same_v<T, OuterKraus>) {
            const Complex w = k.bra_index >= 0 ? rho(k.bra_index, k.bra_index)
                                               : k.bra.dot(rho * k.bra);
            if (w != Complex(0.0)) out.noalias() += w * (k.ket * k.ket.adjoint());
          } else {
            out.noalias() += k.m * rho * k.m.adjoint();
          }
        },
        op);
  }
  return out;
}

inline GridState apply(const GridChannel& ch, const GridState& rho) {
  if (!(rho.grid() == ch.grid)) throw InvalidArgument("apply: state and channel grids differ");
  CMatrix out = apply_kraus(ch, rho.matrix());
  out = 0.5 * (out + out.adjoint());
  return GridState::trusted(ch.grid, std::move(out));
}

// Nodes and weights of the q-point Gauss-Hermite rule for the standard
// normal distribution (Golub-Welsch), weights summing to one.
inline std::pair<Vector, Vector> gauss_hermite_normal(Index q) {
  if (q < 1) throw InvalidArgument("gauss_hermite_normal: q must be >= 1");
  Matrix jac = Matrix::Zero(q, q);
  for (Index i = 1; i < q; ++i) {
    jac(i, i - 1) = std::sqrt(static_cast<double>(i));
    jac(i - 1, i) = jac(i, i - 1);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(jac);
  Vector nodes = es.eigenvalues();
  Vector weights = es.eigenvectors().row(0).transpose().cwiseAbs2();
  weights /= weights.sum();
  return {nodes, weights};
}

// Random momentum kicks k ~ N(0, c): M_j = sqrt(w_j) diag(exp(i k_j xi)).
inline GridChannel family_a_channel(const Grid& grid, double c, Index quadrature_nodes = 21) {
  if (!(c > 0.0)) throw InvalidArgument("family_a_channel: c must be positive");
  if (quadrature_nodes < 3) throw InvalidArgument("family_a_channel: need at least 3 nodes");
  auto [nodes, weights] = gauss_hermite_normal(quadrature_nodes);
  weights /= weights.sum();
  GridChannel ch{grid, {}, family_a_spec(c)};
  const Vector xi = grid.points();
  for (Index j = 0; j < quadrature_nodes; ++j) {
    const double kick = std::sqrt(c) * nodes(j);
    CVector d(grid.size());
    for (Index m = 0; m < grid.size(); ++m)
      d(m) = std::sqrt(weights(j)) * std::exp(Complex(0.0, kick * xi(m)));
    ch.kraus.push_back(DiagonalKraus{std::move(d)});
  }
  return ch;
}

// exp(-(xi - centre)^2 / (4 w^2) + i p xi + i chirp (xi - centre)^2),
// normalized on the grid. Position variance w^2, momentum variance
// 1/(4 w^2) + 4 chirp^2 w^2, covariance 2 chirp w^2.
inline CVector wavepacket(const Grid& grid, double centre, double width, double momentum = 0.0,
                          double chirp = 0.0) {
  if (!(width > 0.0)) throw InvalidArgument("wavepacket: width must be positive");
  CVector psi(grid.size());
  for (Index j = 0; j < grid.size(); ++j) {
    const double x = grid.point(j) - centre;
    psi(j) = std::exp(Complex(-x * x / (4.0 * width * width),
                              momentum * grid.point(j) + chirp * x * x));
  }
  const double nrm = psi.norm();
  if (!(nrm > 1e-150)) throw InvalidArgument("wavepacket: packet lies outside the grid");
  return psi / nrm;
}

// Measure position, prepare a wavepacket centred at u xi_m:
// Kraus set { |phi_m><xi_m| }.
inline GridChannel family_b_channel(const Grid& grid, double u, double prep_width) {
  if (!(prep_width > 0.0)) throw InvalidArgument("family_b_channel: prep_width must be positive");
  GridChannel ch{grid, {}, family_b_spec(u, prep_width)};
  for (Index m = 0; m < grid.size(); ++m)
    ch.kraus.push_back(OuterKraus{wavepacket(grid, u * grid.point(m), prep_width), CVector(), m});
  return ch;
}

// Tr(P_D rho) with P_D the diagonal indicator of D on the grid points.
inline double support_mass(const GridState& rho, const Region& d) {
  if (d.dim != 1) throw InvalidArgument("support_mass: grid regions are one-dimensional");
  double mass = 0.0;
  for (Index j = 0; j < rho.dim(); ++j)
    if (d.contains(rho.grid().point(j))) mass += rho.matrix()(j, j).real();
  return mass;
}

// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, evaluated through a
// low-rank factor rho = G G^dagger: the nonzero spectrum of
// sqrt(rho) sigma sqrt(rho) equals that of G^dagger sigma G.
inline double fidelity(const CMatrix& rho, const CMatrix& sigma, const Tolerance& tol = {}) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw InvalidArgument("fidelity: dimension mismatch");
  if (GridState::certified_min_eigenvalue(rho, tol) < tol.eigen_floor ||
      GridState::certified_min_eigenvalue(sigma, tol) < tol.eigen_floor)
    throw PreconditionViolated("fidelity: input is not positive semidefinite");
  const auto fr = linalg::psd_factor(rho, 1e-14);
  const auto fs = linalg::psd_factor(sigma, 1e-14);
  const bool use_rho = fr.g.cols() <= fs.g.cols();
  const CMatrix& g = use_rho ? fr.g : fs.g;
  const CMatrix& other = use_rho ? sigma : rho;
  if (g.cols() == 0) return 0.0;
  CMatrix m = g.adjoint() * other * g;
  m = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  double root = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) root += std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  return std::clamp(root * root, 0.0, 1.0);
}

inline double fidelity(const GridState& rho, const GridState& sigma) {
  if (!(rho.grid() == sigma.grid())) throw InvalidArgument("fidelity: grids differ");
  return fidelity(rho.matrix(), sigma.matrix());
}

// ||rho - sigma||_1 (no factor 1/2).
inline double trace_norm_distance(const CMatrix& rho, const CMatrix& sigma) {
  return linalg::trace_norm(rho - sigma);
}

// ---------------------------------------------------------------------------
// Moments.

// Matrix elements of p^power, p = -i d/dxi realized spectrally; the matrix
// is circulant, so only its first column (indexed by j - l mod n) is stored.
inline CVector momentum_kernel(const Grid& grid, int power) {
  const Index n = grid.size();
  CVector col = CVector::Zero(n);
  for (Index m = 0; m < n; ++m) {
    const Index mm = m < n / 2 ? m : m - n;
    const double k = 2.0 * std::numbers::pi * static_cast<double>(mm) / grid.length();
    const double kp = std::pow(k, power);
    for (Index d = 0; d < n; ++d) {
      const double ang = 2.0 * std::numbers::pi * static_cast<double>((m * d) % n) / static_cast<double>(n);
      col(d) += kp * std::exp(Complex(0.0, ang));
    }
  }
  return col / static_cast<double>(n);
}

// Means and symmetrized covariance of (q, p) on the grid.
inline GaussianState grid_moments(const GridState& rho) {
  const Grid& g = rho.grid();
  const Index n = g.size();
  const CMatrix& r = rho.matrix();
  const CVector p1 = momentum_kernel(g, 1);
  const CVector p2 = momentum_kernel(g, 2);
  const Vector xi = g.points();
  double q = 0.0, qq = 0.0;
  for (Index j = 0; j < n; ++j) {
    q += xi(j) * r(j, j).real();
    qq += xi(j) * xi(j) * r(j, j).real();
  }
  Complex p = 0.0, pp = 0.0, qp = 0.0;
  for (Index j = 0; j < n; ++j) {
    for (Index l = 0; l < n; ++l) {
      const Index d = ((j - l) % n + n) % n;
      p += r(l, j) * p1(d);
      pp += r(l, j) * p2(d);
      qp += r(l, j) * xi(j) * p1(d);
    }
  }
  GaussianState out;
  out.mean = Vector(2);
  out.mean << q, p.real();
  out.cov = Matrix(2, 2);
  out.cov(0, 0) = qq - q * q;
  out.cov(1, 1) = pp.real() - p.real() * p.real();
  out.cov(0, 1) = out.cov(1, 0) = qp.real() - q * p.real();
  return out;
}

}  // namespace bosonic

#endif  // BOSONIC_GRIDSIM_HPP_
