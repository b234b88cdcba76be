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

#ifndef BOSONIC_CHANNEL_HPP_
#define BOSONIC_CHANNEL_HPP_

#include <cmath>
#include <functional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "bosonic/errors.hpp"
#include "bosonic/linalg.hpp"
#include "bosonic/symplectic.hpp"

namespace bosonic {

// Gaussian channel Phi from system A (modes_in) to system B (modes_out),
// given through its dual on Weyl operators:
//   Phi^*(W_B(z)) = W_A(K z) exp(i l^T z - z^T alpha z / 2),  z in Z_B.
struct GaussianChannelSpec {
  Index modes_in = 1;
  Index modes_out = 1;
  Matrix k;      // 2 modes_in x 2 modes_out
  Vector l;      // 2 modes_out
  Matrix alpha;  // 2 modes_out x 2 modes_out, symmetric

  SymplecticSpace space_in() const { return SymplecticSpace(modes_in); }
  SymplecticSpace space_out() const { return SymplecticSpace(modes_out); }

  void check_shapes() const {
    if (modes_in < 1 || modes_out < 1)
      throw InvalidArgument("channel spec: modes_in and modes_out must be >= 1");
    const Index da = 2 * modes_in;
    const Index db = 2 * modes_out;
    auto shape = [](Index r, Index c) {
      return std::to_string(r) + "x" + std::to_string(c);
    };
    if (k.rows() != da || k.cols() != db)
      throw InvalidArgument("channel spec: K is " + shape(k.rows(), k.cols()) + ", expected " +
                            shape(da, db));
    if (l.size() != db)
      throw InvalidArgument("channel spec: l has length " + std::to_string(l.size()) +
                            ", expected " + std::to_string(db));
    if (alpha.rows() != db || alpha.cols() != db)
      throw InvalidArgument("channel spec: alpha is " + shape(alpha.rows(), alpha.cols()) +
                            ", expected " + shape(db, db));
    if (linalg::max_abs(alpha - alpha.transpose()) > 1e-10)
      throw InvalidArgument("channel spec: alpha is not symmetric");
  }
};

inline GaussianChannelSpec identity_channel(Index modes) {
  return {modes, modes, Matrix::Identity(2 * modes, 2 * modes), Vector::Zero(2 * modes),
          Matrix::Zero(2 * modes, 2 * modes)};
}

// Replaces every input by the Gaussian state with covariance `alpha`.
inline GaussianChannelSpec constant_channel(Index modes_in, Index modes_out, const Matrix& alpha) {
  return {modes_in, modes_out, Matrix::Zero(2 * modes_in, 2 * modes_out),
          Vector::Zero(2 * modes_out), alpha};
}

// Random momentum kicks with variance c: K = I, alpha = diag(0, c).
inline GaussianChannelSpec family_a_spec(double c) {
  GaussianChannelSpec spec = identity_channel(1);
  spec.alpha(1, 1) = c;
  return spec;
}

// Measure position xi, prepare a Gaussian wavepacket centred at u xi with
// position spread `width`: K = [[u, 0], [0, 0]], alpha = diag(w^2, 1/(4 w^2)).
inline GaussianChannelSpec family_b_spec(double u, double width) {
  GaussianChannelSpec spec = identity_channel(1);
  spec.k.setZero();
  spec.k(0, 0) = u;
  spec.alpha(0, 0) = width * width;
  spec.alpha(1, 1) = 1.0 / (4.0 * width * width);
  return spec;
}

// alpha + (i/2)(Delta_B - K^T Delta_A K)
inline CMatrix validity_matrix(const GaussianChannelSpec& spec) {
  const Matrix defect = spec.space_out().form() - spec.k.transpose() * spec.space_in().form() * spec.k;
  return spec.alpha.cast<Complex>() + Complex(0.0, 0.5) * defect.cast<Complex>();
}

struct ValidityReport {
  bool valid = false;
  double min_eigenvalue = 0.0;
};

inline ValidityReport validate_gaussian(const GaussianChannelSpec& spec, const Tolerance& tol = {}) {
  spec.check_shapes();
  ValidityReport rep;
  rep.min_eigenvalue = linalg::min_eigenvalue(validity_matrix(spec));
  rep.valid = rep.min_eigenvalue >= tol.eigen_floor;
  return rep;
}

inline void require_valid(const GaussianChannelSpec& spec, const Tolerance& tol, const char* op) {
  const auto v = validate_gaussian(spec, tol);
  if (!v.valid) {
    std::ostringstream msg;
    msg << op << ": channel violates the positivity condition (min eigenvalue "
        << v.min_eigenvalue << ")";
    throw PreconditionViolated(msg.str());
  }
}

// Noise-free subspace Z_f = ker alpha (the l-phase is reported separately).
inline Subspace compute_zf(const GaussianChannelSpec& spec, const Tolerance& tol = {}) {
  spec.check_shapes();
  return Subspace::span(linalg::null_space(spec.alpha, tol.rank_rel), tol);
}

struct DegeneracyReport {
  Subspace zf;
  Index dim_zf = 0;
  Subspace zf_isotropic_part;
  Subspace zf_symplectic_part;
  Index rank_k = 0;
  Index corank_k = 0;
  Subspace ran_k_perp;
  bool type1 = false;  // dim Z_f > 0
  bool type2 = false;  // rank K < 2 s_A
  // f = 1 on ker alpha only where l^T z is a multiple of 2 pi; we flag
  // whether l vanishes on ker alpha and how large it gets on a unit basis.
  bool l_vanishes_on_zf = true;
  double l_on_zf_max = 0.0;
};

inline DegeneracyReport classify(const GaussianChannelSpec& spec, const Tolerance& tol = {}) {
  spec.check_shapes();
  DegeneracyReport rep;
  const auto sa = spec.space_in();
  const auto sb = spec.space_out();
  rep.zf = compute_zf(spec, tol);
  rep.dim_zf = rep.zf.rank();
  auto split = radical_split(sb, rep.zf, tol);
  rep.zf_isotropic_part = std::move(split.isotropic_part);
  rep.zf_symplectic_part = std::move(split.symplectic_part);
  const Subspace ran_k = Subspace::span(spec.k, tol);
  rep.rank_k = ran_k.rank();
  rep.corank_k = sa.dim() - rep.rank_k;
  rep.ran_k_perp = skew_complement(sa, ran_k, tol);
  rep.type1 = rep.dim_zf > 0;
  rep.type2 = rep.corank_k > 0;
  if (rep.dim_zf > 0) {
    rep.l_on_zf_max = (rep.zf.basis().transpose() * spec.l).cwiseAbs().maxCoeff();
    rep.l_vanishes_on_zf = rep.l_on_zf_max <= tol.form;
  }
  return rep;
}

struct DualWeylValue {
  Vector kz;
  Complex f;
};

// Phi^*(W_B(z)) = W_A(K z) f(z): returns K z and f(z).
inline DualWeylValue dual_weyl(const GaussianChannelSpec& spec, const Vector& z) {
  if (z.size() != 2 * spec.modes_out) throw InvalidArgument("dual_weyl: z has wrong dimension");
  const double phase = spec.l.dot(z);
  const double damp = -0.5 * z.dot(spec.alpha * z);
  return {spec.k * z, std::exp(Complex(damp, phase))};
}

// Gaussian state with characteristic function
//   Tr rho W(z) = exp(i m^T z - z^T gamma z / 2).
struct GaussianState {
  Vector mean;
  Matrix cov;
};

inline double state_min_eigenvalue(const GaussianState& st) {
  const Index n = st.cov.rows();
  if (n % 2 != 0 || st.cov.cols() != n || st.mean.size() != n)
    throw InvalidArgument("GaussianState: inconsistent shapes");
  const Matrix delta = standard_form(n / 2);
  return linalg::min_eigenvalue(st.cov.cast<Complex>() + Complex(0.0, 0.5) * delta.cast<Complex>());
}

inline bool is_valid_state(const GaussianState& st, double floor = -1e-9) {
  if (linalg::max_abs(st.cov - st.cov.transpose()) > 1e-10) return false;
  return state_min_eigenvalue(st) >= floor;
}

inline GaussianState vacuum_state(Index modes) {
  return {Vector::Zero(2 * modes), 0.5 * Matrix::Identity(2 * modes, 2 * modes)};
}

// Output state: mean K^T m + l, covariance K^T gamma K + alpha.
inline GaussianState gaussian_state_push(const GaussianChannelSpec& spec, const GaussianState& st,
                                         const Tolerance& tol = {}) {
  require_valid(spec, tol, "gaussian_state_push");
  if (st.mean.size() != 2 * spec.modes_in || st.cov.rows() != 2 * spec.modes_in ||
      st.cov.cols() != 2 * spec.modes_in)
    throw InvalidArgument("gaussian_state_push: state does not live on the input space");
  if (!is_valid_state(st, tol.eigen_floor))
    throw PreconditionViolated("gaussian_state_push: input is not a valid Gaussian state");
  GaussianState out;
  out.mean = spec.k.transpose() * st.mean + spec.l;
  out.cov = spec.k.transpose() * st.cov * spec.k + spec.alpha;
  out.cov = 0.5 * (out.cov + out.cov.transpose());
  return out;
}

struct DualityReport {
  Index dim_ran_l_perp = 0;
  Index dim_zf = 0;
  Index dim_ran_k_perp = 0;
  Index dim_zg = 0;
  bool first_equality = false;   // dim [Ran L]^perp == dim Z_f
  bool second_equality = false;  // dim [Ran K]^perp == dim Z_g

  bool passed() const { return first_equality && second_equality; }
};

// Dimension duality between a channel Phi_{K,f} and a candidate weak
// complementary channel Phi_{L,g} on the same input system.
inline DualityReport duality_check(const GaussianChannelSpec& main,
                                   const GaussianChannelSpec& complementary,
                                   const Tolerance& tol = {}) {
  require_valid(main, tol, "duality_check");
  require_valid(complementary, tol, "duality_check");
  if (main.modes_in != complementary.modes_in)
    throw InvalidArgument("duality_check: channels must share the input system");
  const auto sa = main.space_in();
  DualityReport rep;
  rep.dim_zf = compute_zf(main, tol).rank();
  rep.dim_zg = compute_zf(complementary, tol).rank();
  rep.dim_ran_l_perp = skew_complement(sa, Subspace::span(complementary.k, tol), tol).rank();
  rep.dim_ran_k_perp = skew_complement(sa, Subspace::span(main.k, tol), tol).rank();
  rep.first_equality = rep.dim_ran_l_perp == rep.dim_zf;
  rep.second_equality = rep.dim_ran_k_perp == rep.dim_zg;
  return rep;
}

// ---------------------------------------------------------------------------
// General (non-Gaussian) linear channels, checked on finite samples only.

using CharacteristicFunction = std::function<Complex(const Vector&)>;

struct GeneralLinearChannelSpec {
  Index modes_in = 1;
  Index modes_out = 1;
  Matrix k;
  CharacteristicFunction f;
  Subspace declared_zf;
};

struct GeneralFReport {
  bool f_at_zero_is_one = false;
  bool bounded_by_one = false;
  bool one_on_declared_zf = false;
  bool positive = false;
  double min_eigenvalue = 0.0;

  bool passed() const {
    return f_at_zero_is_one && bounded_by_one && one_on_declared_zf && positive;
  }
};

// Positivity of [f(z_s - z_r) exp((i/2) z_s^T (Delta_B - K^T Delta_A K) z_r)]
// on the supplied points, plus f = 1 on sampled points of the declared Z_f.
inline GeneralFReport validate_general_f(const GeneralLinearChannelSpec& spec,
                                         std::span<const Vector> points,
                                         const Tolerance& tol = {}) {
  if (!spec.f) throw InvalidArgument("validate_general_f: f is not evaluatable");
  const SymplecticSpace sa(spec.modes_in);
  const SymplecticSpace sb(spec.modes_out);
  if (spec.k.rows() != sa.dim() || spec.k.cols() != sb.dim())
    throw InvalidArgument("validate_general_f: K must be 2s_A x 2s_B");
  auto eval = [&](const Vector& z) {
    const Complex v = spec.f(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidArgument("validate_general_f: f returned a non-finite value");
    return v;
  };
  for (const auto& z : points)
    if (z.size() != sb.dim()) throw InvalidArgument("validate_general_f: sample point has wrong dimension");

  GeneralFReport rep;
  rep.f_at_zero_is_one = std::abs(eval(Vector::Zero(sb.dim())) - 1.0) <= tol.form;
  rep.bounded_by_one = true;
  for (const auto& z : points)
    if (std::abs(eval(z)) > 1.0 + tol.form) rep.bounded_by_one = false;

  rep.one_on_declared_zf = true;
  if (spec.declared_zf.rank() > 0) {
    if (spec.declared_zf.ambient_dim() != sb.dim())
      throw InvalidArgument("validate_general_f: declared Z_f has wrong ambient dimension");
    const Matrix& b = spec.declared_zf.basis();
    std::vector<Vector> zf_samples;
    for (Index j = 0; j < b.cols(); ++j)
      for (double t : {-2.0, -0.5, 0.5, 1.0, 3.0}) zf_samples.push_back(t * b.col(j));
    zf_samples.push_back(b.rowwise().sum());
    for (const auto& z : zf_samples)
      if (std::abs(eval(z) - 1.0) > tol.form) rep.one_on_declared_zf = false;
  }

  const Matrix defect = sb.form() - spec.k.transpose() * sa.form() * spec.k;
  const Index n = static_cast<Index>(points.size());
  CMatrix m(n, n);
  for (Index s = 0; s < n; ++s) {
    for (Index r = 0; r < n; ++r) {
      const Vector& zs = points[s];
      const Vector& zr = points[r];
      m(s, r) = eval(zs - zr) * std::exp(Complex(0.0, 0.5 * zs.dot(defect * zr)));
    }
  }
  rep.min_eigenvalue = n == 0 ? 0.0 : linalg::min_eigenvalue(0.5 * (m + m.adjoint()));
  rep.positive = linalg::hermitian_defect(m) <= 1e-9 && rep.min_eigenvalue >= tol.eigen_floor;
  return rep;
}

// Characteristic function of a Gaussian spec, for use with the general checks.
inline CharacteristicFunction gaussian_f(const GaussianChannelSpec& spec) {
  return [l = spec.l, alpha = spec.alpha](const Vector& z) {
    return std::exp(Complex(-0.5 * z.dot(alpha * z), l.dot(z)));
  };
}

}  // namespace bosonic

#endif  // BOSONIC_CHANNEL_HPP_
