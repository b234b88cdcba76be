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


#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "bosonic/channel.hpp"
#include "bosonic/random.hpp"

namespace bosonic {
namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

TEST(Validate, IdentityChannelSitsOnTheBoundary) {
  const auto v = validate_gaussian(identity_channel(1));
  EXPECT_TRUE(v.valid);
  EXPECT_NEAR(v.min_eigenvalue, 0.0, 1e-15);
}

// alpha = I/2 and K = 0: I/2 + (i/2)Delta has eigenvalues 1/2 +- 1/2.
TEST(Validate, VacuumReplacementIsValid) {
  const auto v = validate_gaussian(constant_channel(1, 1, 0.5 * Matrix::Identity(2, 2)));
  EXPECT_TRUE(v.valid);
  EXPECT_NEAR(v.min_eigenvalue, 0.0, 1e-15);
}

// alpha = 0 and K = 0: (i/2)Delta has eigenvalues +-1/2.
TEST(Validate, ZeroNoiseReplacementIsInvalid) {
  const auto v = validate_gaussian(constant_channel(1, 1, Matrix::Zero(2, 2)));
  EXPECT_FALSE(v.valid);
  EXPECT_NEAR(v.min_eigenvalue, -0.5, 1e-15);
  EXPECT_THROW(require_valid(constant_channel(1, 1, Matrix::Zero(2, 2)), {}, "test"), PreconditionViolated);
}

TEST(Validate, ShapeErrors) {
  auto spec = identity_channel(1);
  spec.k = Matrix::Identity(3, 2);
  EXPECT_THROW(validate_gaussian(spec), InvalidArgument);
  spec = identity_channel(1);
  spec.alpha(0, 1) = 0.1;
  EXPECT_THROW(validate_gaussian(spec), InvalidArgument);
  spec = identity_channel(1);
  spec.l = Vector::Zero(3);
  EXPECT_THROW(validate_gaussian(spec), InvalidArgument);
}

TEST(ComputeZf, Examples) {
  EXPECT_TRUE(compute_zf(family_a_spec(2.0)).same_as(Subspace::span(Matrix(vec2(1, 0)))));
  EXPECT_TRUE(compute_zf(identity_channel(2)).same_as(Subspace::whole(4)));
  EXPECT_TRUE(compute_zf(constant_channel(1, 1, diag2(1.0, 2.0))).is_zero());
}

// Momentum kicks with covariance Sigma = c e e^T in the kick variable enter
// as alpha = Delta^T Sigma Delta = diag(0, c).
TEST(FamilyA, NoiseMatrixFromKickCovariance) {
  const double c = 1.7;
  const Matrix delta = standard_form(1);
  EXPECT_LE((delta.transpose() * diag2(c, 0.0) * delta - family_a_spec(c).alpha).norm(), 1e-15);
}

TEST(Classify, FamilyA) {
  const auto r = classify(family_a_spec(1.0));
  EXPECT_TRUE(r.type1);
  EXPECT_FALSE(r.type2);
  EXPECT_EQ(r.dim_zf, 1);
  EXPECT_EQ(r.rank_k, 2);
  EXPECT_EQ(r.corank_k, 0);
  EXPECT_EQ(r.zf_isotropic_part.rank(), 1);
  EXPECT_TRUE(r.zf_symplectic_part.is_zero());
  EXPECT_TRUE(r.ran_k_perp.is_zero());
  EXPECT_TRUE(r.l_vanishes_on_zf);
}

TEST(Classify, FamilyB) {
  const auto r = classify(family_b_spec(0.5, 1.0));
  EXPECT_FALSE(r.type1);
  EXPECT_TRUE(r.type2);
  EXPECT_EQ(r.dim_zf, 0);
  EXPECT_EQ(r.rank_k, 1);
  EXPECT_EQ(r.corank_k, 1);
  // Ran K = span{e1}, whose skew complement in one mode is span{e1}.
  EXPECT_TRUE(r.ran_k_perp.same_as(Subspace::span(Matrix(vec2(1, 0)))));
}

TEST(Classify, IdentityIsTypeOneWithSymplecticKernel) {
  const auto r = classify(identity_channel(1));
  EXPECT_TRUE(r.type1);
  EXPECT_EQ(r.dim_zf, 2);
  EXPECT_EQ(r.zf_isotropic_part.rank(), 0);
  EXPECT_FALSE(r.type2);
}

TEST(Classify, FlagsLOnKernel) {
  auto spec = family_a_spec(1.0);
  spec.l = vec2(0.3, -0.2);
  const auto r = classify(spec);
  EXPECT_FALSE(r.l_vanishes_on_zf);
  EXPECT_NEAR(r.l_on_zf_max, 0.3, 1e-15);
}

TEST(Classify, InvariantUnderSymplecticChangeOfOutputBasis) {
  random::Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const auto inst = random::random_valid_spec(rng, 3);
    const Matrix s = random::random_symplectic(rng, inst.spec.modes_out);
    GaussianChannelSpec moved = inst.spec;
    moved.k = inst.spec.k * s;
    moved.l = s.transpose() * inst.spec.l;
    moved.alpha = s.transpose() * inst.spec.alpha * s;
    moved.alpha = 0.5 * (moved.alpha + moved.alpha.transpose());
    const auto a = classify(inst.spec);
    const auto b = classify(moved);
    EXPECT_EQ(a.dim_zf, b.dim_zf);
    EXPECT_EQ(a.rank_k, b.rank_k);
    EXPECT_EQ(a.zf_isotropic_part.rank(), b.zf_isotropic_part.rank());
    EXPECT_EQ(a.ran_k_perp.rank(), b.ran_k_perp.rank());
  }
}

TEST(DualWeyl, Examples) {
  const auto spec = family_a_spec(1.0);
  const auto at0 = dual_weyl(spec, Vector::Zero(2));
  EXPECT_EQ(at0.kz, Vector::Zero(2));
  EXPECT_EQ(at0.f, Complex(1.0));

  const auto on_zf = dual_weyl(spec, vec2(2.5, 0.0));
  EXPECT_EQ(on_zf.kz, vec2(2.5, 0.0));
  EXPECT_NEAR(std::abs(on_zf.f - 1.0), 0.0, 1e-15);

  const auto id = dual_weyl(identity_channel(1), vec2(-1.0, 3.0));
  EXPECT_EQ(id.kz, vec2(-1.0, 3.0));
  EXPECT_EQ(id.f, Complex(1.0));

  // exp(i l.z - z.alpha.z / 2) with l = (1, 0), z = (0.5, 1), alpha = diag(0, 1)
  auto lspec = family_a_spec(1.0);
  lspec.l = vec2(1.0, 0.0);
  const auto v = dual_weyl(lspec, vec2(0.5, 1.0));
  EXPECT_NEAR(std::abs(v.f - std::exp(Complex(-0.5, 0.5))), 0.0, 1e-15);
}

TEST(DualWeyl, EqualsOneOnKernelWhenLVanishes) {
  random::Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    auto inst = random::random_valid_spec(rng, 3);
    const Subspace zf = compute_zf(inst.spec);
    if (zf.is_zero()) continue;
    inst.spec.l = (Matrix::Identity(zf.ambient_dim(), zf.ambient_dim()) - zf.projector()) * inst.spec.l;
    for (Index j = 0; j < zf.rank(); ++j)
      EXPECT_LE(std::abs(dual_weyl(inst.spec, 2.0 * zf.basis().col(j)).f - 1.0), 1e-9);
  }
}

TEST(Push, IdentityLeavesStateUnchanged) {
  random::Rng rng(2);
  const auto st = random::random_state(rng, 2);
  const auto out = gaussian_state_push(identity_channel(2), st);
  EXPECT_LE((out.mean - st.mean).norm(), 1e-15);
  EXPECT_LE((out.cov - st.cov).norm(), 1e-14);
}

TEST(Push, FamilyAAddsMomentumNoise) {
  random::Rng rng(12);
  const auto st = random::random_state(rng, 1);
  const auto out = gaussian_state_push(family_a_spec(0.8), st);
  EXPECT_LE((out.mean - st.mean).norm(), 1e-15);
  EXPECT_LE((out.cov - (st.cov + diag2(0.0, 0.8))).norm(), 1e-14);
}

TEST(Push, ConstantChannelForgetsInput) {
  random::Rng rng(13);
  const Matrix target = diag2(2.0, 0.25);
  for (int t = 0; t < 5; ++t) {
    const auto out = gaussian_state_push(constant_channel(1, 1, target), random::random_state(rng, 1));
    EXPECT_EQ(out.mean, Vector::Zero(2));
    EXPECT_EQ(out.cov, target);
  }
}

TEST(Push, RejectsInvalidState) {
  GaussianState bad{Vector::Zero(2), 0.1 * Matrix::Identity(2, 2)};
  EXPECT_THROW(gaussian_state_push(identity_channel(1), bad), PreconditionViolated);
}

TEST(Duality, IdentityAgainstVacuumReplacementPasses) {
  const auto rep = duality_check(identity_channel(1), constant_channel(1, 1, 0.5 * Matrix::Identity(2, 2)));
  EXPECT_EQ(rep.dim_zf, 2);
  EXPECT_EQ(rep.dim_ran_l_perp, 2);
  EXPECT_EQ(rep.dim_ran_k_perp, 0);
  EXPECT_EQ(rep.dim_zg, 0);
  EXPECT_TRUE(rep.passed());
}

TEST(Duality, MismatchedPairsFail) {
  EXPECT_FALSE(duality_check(family_a_spec(1.0), identity_channel(1)).passed());
  const auto both = duality_check(identity_channel(1), identity_channel(1));
  EXPECT_FALSE(both.first_equality);
  EXPECT_EQ(both.dim_ran_l_perp, 0);
  EXPECT_EQ(both.dim_zf, 2);
  EXPECT_THROW(duality_check(identity_channel(1), identity_channel(2)), InvalidArgument);
}

std::vector<Vector> sample_points(random::Rng& rng, Index dim, int count) {
  std::vector<Vector> pts;
  for (int i = 0; i < count; ++i) pts.push_back(random::gaussian_vector(rng, dim));
  return pts;
}

TEST(GeneralF, GaussianFOfValidSpecIsPositive) {
  random::Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    const auto inst = random::random_valid_spec(rng, 2);
    GeneralLinearChannelSpec g{inst.spec.modes_in, inst.spec.modes_out, inst.spec.k, gaussian_f(inst.spec),
                               Subspace::zero(2 * inst.spec.modes_out)};
    const auto pts = sample_points(rng, 2 * inst.spec.modes_out, 8);
    EXPECT_TRUE(validate_general_f(g, pts).passed());
  }
}

TEST(GeneralF, UnitaryCaseIsPositive) {
  random::Rng rng(32);
  const Matrix k = random::random_symplectic(rng, 2);
  GeneralLinearChannelSpec g{2, 2, k, [](const Vector&) { return Complex(1.0); }, Subspace::whole(4)};
  EXPECT_TRUE(validate_general_f(g, sample_points(rng, 4, 10)).passed());
}

// f = exp(|z|^2 / 2) on {0, z}: [[1, e^{1/2}], [e^{1/2}, 1]] has determinant 1 - e < 0.
TEST(GeneralF, GrowingFIsNotPositive) {
  GeneralLinearChannelSpec g{1, 1, Matrix::Identity(2, 2),
                             [](const Vector& z) { return Complex(std::exp(0.5 * z.squaredNorm())); },
                             Subspace::zero(2)};
  const std::vector<Vector> pts = {Vector::Zero(2), vec2(1.0, 0.0)};
  const auto rep = validate_general_f(g, pts);
  EXPECT_FALSE(rep.positive);
  EXPECT_NEAR(rep.min_eigenvalue, 1.0 - std::exp(0.5), 1e-12);
  EXPECT_FALSE(rep.bounded_by_one);
}

TEST(GeneralF, DeclaredKernelChecked) {
  const auto spec = family_a_spec(1.0);
  GeneralLinearChannelSpec good{1, 1, spec.k, gaussian_f(spec), compute_zf(spec)};
  EXPECT_TRUE(validate_general_f(good, {}).one_on_declared_zf);
  GeneralLinearChannelSpec bad{1, 1, spec.k, gaussian_f(spec), Subspace::whole(2)};
  EXPECT_FALSE(validate_general_f(bad, {}).one_on_declared_zf);
  GeneralLinearChannelSpec empty{1, 1, spec.k, nullptr, Subspace::zero(2)};
  EXPECT_THROW(validate_general_f(empty, {}), InvalidArgument);
}

}  // namespace
}  // namespace bosonic
