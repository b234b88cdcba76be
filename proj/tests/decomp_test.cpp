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


#include <vector>

#include <gtest/gtest.h>

#include "bosonic/channel.hpp"
#include "bosonic/decomp.hpp"
#include "bosonic/gridsim.hpp"
#include "bosonic/random.hpp"

namespace bosonic {
namespace {

Subspace axis(Index dim, Index i) { return Subspace::span(Matrix(Vector::Unit(dim, i))); }

CylinderDecomposition halves() {
  const std::vector<double> cuts = {0.0};
  return CylinderDecomposition::split_first_axis(1, cuts);
}

TEST(Prop1Plan, FamilyAIsAlignedWithIdentityMap) {
  const auto plan = build_prop1_plan(family_a_spec(1.0), halves());
  EXPECT_EQ(plan.d, 1);
  EXPECT_TRUE(plan.aligned);
  EXPECT_TRUE(plan.grid_realizable());
  EXPECT_TRUE(plan.zf_iso.same_as(axis(2, 0), 1e-12));
  EXPECT_LE((plan.t - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(plan.region_count(), 2);
}

TEST(Prop1Plan, TwoModeOneNoiseFreeDirection) {
  GaussianChannelSpec spec = identity_channel(2);
  spec.alpha = Vector{{0.0, 0.8, 1.0, 1.0}}.asDiagonal();
  const auto plan = build_prop1_plan(spec, halves());
  EXPECT_EQ(plan.d, 1);
  EXPECT_TRUE(plan.aligned);
  EXPECT_FALSE(plan.grid_realizable());
  EXPECT_LE((plan.t - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
  const SymplecticSpace s(2);
  EXPECT_LE(symplectic_residual(s, plan.t), 1e-12);
}

// T is symplectic and agrees with K on the chosen subspace for conjugated
// channels too.
TEST(Prop1Plan, ConjugatedChannelsStillMatchKOnSubspace) {
  random::Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto inst = random::forced_kernel_spec(rng, 2, 2, 1, 0);
    GaussianChannelSpec spec = inst.spec;
    spec.l.setZero();
    const auto cyl = CylinderDecomposition::split_first_axis(1, {});
    const auto plan = build_prop1_plan(spec, cyl);
    ASSERT_EQ(plan.d, 1);
    const SymplecticSpace s(2);
    EXPECT_LE(symplectic_residual(s, plan.t), 1e-8);
    EXPECT_LE((plan.t * plan.zf_iso.basis() - spec.k * plan.zf_iso.basis()).cwiseAbs().maxCoeff(),
              1e-8);
  }
}

TEST(Prop1Plan, Errors) {
  // identity: Z_f is the whole (symplectic) space, no isotropic default
  EXPECT_THROW(build_prop1_plan(identity_channel(1), halves()), NoDegeneracy);
  // explicit isotropic subspace of Z_f works
  EXPECT_NO_THROW(build_prop1_plan(identity_channel(1), halves(), axis(2, 1)));
  // not isotropic
  EXPECT_THROW(build_prop1_plan(identity_channel(1), halves(), Subspace::whole(2)), InvalidArgument);
  // not in Z_f
  EXPECT_THROW(build_prop1_plan(family_a_spec(1.0), halves(), axis(2, 1)), InvalidArgument);
  // no noise-free directions
  EXPECT_THROW(build_prop1_plan(family_b_spec(0.5, 1.0), halves()), NoDegeneracy);
  // wrong cylinder dimension
  EXPECT_THROW(build_prop1_plan(family_a_spec(1.0), CylinderDecomposition::split_first_axis(2, {})),
               InvalidArgument);
  // l does not vanish on Z_f
  GaussianChannelSpec shifted = family_a_spec(1.0);
  shifted.l << 0.3, 0.0;
  EXPECT_THROW(build_prop1_plan(shifted, halves()), NoDegeneracy);
  shifted.l << 0.0, 0.3;
  EXPECT_NO_THROW(build_prop1_plan(shifted, halves()));
  // invalid channel
  GaussianChannelSpec bad = family_a_spec(1.0);
  bad.alpha.setZero();
  bad.k.setZero();
  EXPECT_THROW(build_prop1_plan(bad, halves()), PreconditionViolated);
}

TEST(RefinePlan, SplitsOneRegion) {
  const auto plan = build_prop1_plan(family_a_spec(1.0), halves());
  const std::vector<Region> parts = {Region::interval(0, 1), Region::interval(1, kInf)};
  const auto fine = refine_plan(plan, 1, parts);
  ASSERT_EQ(fine.region_count(), 3);
  EXPECT_EQ(fine.cylinders.regions[0], plan.cylinders.regions[0]);
  EXPECT_EQ(fine.cylinders.regions[1], parts[0]);
  EXPECT_EQ(fine.cylinders.regions[2], parts[1]);
  EXPECT_NO_THROW(fine.cylinders.validate());
  EXPECT_EQ(fine.t, plan.t);
}

TEST(RefinePlan, TrivialRefinementAndErrors) {
  const auto plan = build_prop1_plan(family_a_spec(1.0), halves());
  const std::vector<Region> same = {plan.cylinders.regions[0]};
  EXPECT_EQ(refine_plan(plan, 0, same).cylinders.regions, plan.cylinders.regions);
  const std::vector<Region> overlap = {Region::interval(0, 2), Region::interval(1, kInf)};
  EXPECT_THROW(refine_plan(plan, 1, overlap), InvalidArgument);
  const std::vector<Region> outside = {Region::interval(-1, 1), Region::interval(1, kInf)};
  EXPECT_THROW(refine_plan(plan, 1, outside), InvalidArgument);
  EXPECT_THROW(refine_plan(plan, 2, same), InvalidArgument);
  EXPECT_THROW(refine_plan(plan, 0, {}), InvalidArgument);
}

TEST(ReversingChannel, RecoversRegionAnchors) {
  random::Rng rng(12);
  const Grid g(64, 12.0);
  const auto plan = build_prop1_plan(family_a_spec(1.0), halves());
  std::vector<GridState> anchors = {random::state_in_region(rng, g, Region::interval(-kInf, 0), 2),
                                    random::state_in_region(rng, g, Region::interval(0, kInf), 1)};
  const auto rev = build_reversing_channel(plan, anchors);
  const auto ch = family_a_channel(g, 1.0);
  for (int t = 0; t < 4; ++t) {
    const Index k = t % 2;
    const GridState rho = random::state_in_region(rng, g, plan.cylinders.regions[k], 3);
    const GridState back = rev.apply(apply(ch, rho));
    EXPECT_LE(trace_norm_distance(back.matrix(), anchors[k].matrix()), 1e-12);
  }
  // a state straddling both regions comes back as the weighted mixture
  const GridState mixed = random::full_rank_state(rng, g);
  double left = 0.0;
  for (Index j = 0; j < g.size() / 2; ++j) left += mixed.matrix()(j, j).real();
  const CMatrix expect = left * anchors[0].matrix() + (1.0 - left) * anchors[1].matrix();
  EXPECT_LE(trace_norm_distance(rev.apply(mixed).matrix(), expect), 1e-12);
}

TEST(ReversingChannel, Errors) {
  random::Rng rng(13);
  const Grid g(32, 8.0);
  const auto plan = build_prop1_plan(family_a_spec(1.0), halves());
  const GridState left = random::state_in_region(rng, g, Region::interval(-kInf, 0), 1);
  const GridState right = random::state_in_region(rng, g, Region::interval(0, kInf), 1);
  EXPECT_THROW(build_reversing_channel(plan, {left}), InvalidArgument);
  EXPECT_THROW(build_reversing_channel(plan, {right, left}), InvalidArgument);
  GaussianChannelSpec two = identity_channel(2);
  two.alpha = Vector{{0.0, 0.8, 1.0, 1.0}}.asDiagonal();
  EXPECT_THROW(build_reversing_channel(build_prop1_plan(two, halves()), {left, right}),
               InvalidArgument);
}

TEST(CqPlan, FamilyBDefaultsAndErrors) {
  const auto spec = family_b_spec(0.5, 1.0);
  const Subspace z0 = default_cq_subspace(spec);
  EXPECT_TRUE(z0.same_as(axis(2, 0), 1e-12));
  const auto plan = build_cq_plan(spec, z0, halves());
  EXPECT_EQ(plan.d, 1);
  EXPECT_EQ(plan.region_count(), 2);
  EXPECT_TRUE(plan.grid_realizable());
  EXPECT_EQ(build_cq_plan(spec, z0, CylinderDecomposition::split_first_axis(1, {})).region_count(), 1);

  EXPECT_THROW(default_cq_subspace(identity_channel(1)), NoDegeneracy);
  EXPECT_THROW(build_cq_plan(identity_channel(1), axis(2, 0), halves()), NoDegeneracy);
  EXPECT_THROW(build_cq_plan(spec, axis(2, 1), halves()), InvalidArgument);
  EXPECT_THROW(build_cq_plan(spec, Subspace::zero(2), halves()), InvalidArgument);
  EXPECT_THROW(build_cq_plan(spec, z0, halves(), BasisChoice::kIndicatorLocalized, {{0, 0}, {}}),
               InvalidArgument);
  EXPECT_THROW(build_cq_plan(spec, z0, halves(), BasisChoice::kIndicatorLocalized,
                             std::vector<FinitePermutation>(1)),
               InvalidArgument);
}

TEST(CqPlan, Bijections) {
  EXPECT_TRUE(is_bijection({}));
  EXPECT_TRUE(is_bijection({2, 0, 1}));
  EXPECT_FALSE(is_bijection({0, 0}));
  EXPECT_FALSE(is_bijection({1, 2}));
  EXPECT_FALSE(is_bijection({-1, 0}));
}

// Indicator blocks pair the k-th closest point to 0 on the left with the
// k-th closest on the right; a pinched matrix keeps (a, b) iff the ranks agree.
TEST(Pinch, IndicatorBlocksMatchRankOracle) {
  random::Rng rng(14);
  const Grid g(16, 8.0);
  const auto plan = build_cq_plan(family_b_spec(0.5, 1.0), axis(2, 0), halves());
  const auto real = realize(plan, g);
  ASSERT_TRUE(real.complete());
  EXPECT_EQ(real.block_count(), 8);
  auto rank = [](Index j) { return j < 8 ? 7 - j : j - 8; };
  const GridState rho = random::full_rank_state(rng, g);
  const CMatrix out = pinch(real, rho.matrix());
  CMatrix expect = CMatrix::Zero(16, 16);
  for (Index a = 0; a < 16; ++a)
    for (Index b = 0; b < 16; ++b)
      if (rank(a) == rank(b)) expect(a, b) = rho.matrix()(a, b);
  EXPECT_LE((out - expect).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Pinch, IdempotentAndTracePreserving) {
  random::Rng rng(15);
  const Grid g(32, 8.0);
  const std::vector<double> cuts = {-1.0, 1.5};
  const auto cyl = CylinderDecomposition::split_first_axis(1, cuts);
  for (auto basis : {BasisChoice::kIndicatorLocalized, BasisChoice::kWindowedHermite}) {
    const auto plan = build_cq_plan(family_b_spec(0.5, 1.0), axis(2, 0), cyl, basis,
                                    {{1, 0}, {}, {2, 0, 1}});
    for (std::optional<Index> cap : {std::optional<Index>{}, std::optional<Index>{3}}) {
      const auto real = realize(plan, g, cap);
      const GridState rho = random::full_rank_state(rng, g);
      const CMatrix once = pinch(real, rho.matrix());
      EXPECT_NEAR(once.trace().real(), 1.0, 1e-12);
      EXPECT_LE((pinch(real, once) - once).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_GE(GridState::certified_min_eigenvalue(once), -1e-12);
    }
  }
}

TEST(Realize, WindowedHermiteIsOrthonormalAndLocalized) {
  const Grid g(64, 12.0);
  const std::vector<double> cuts = {0.5};
  const auto plan = build_cq_plan(family_b_spec(0.5, 1.0), axis(2, 0),
                                  CylinderDecomposition::split_first_axis(1, cuts),
                                  BasisChoice::kWindowedHermite);
  const auto real = realize(plan, g, 12);
  for (std::size_t i = 0; i < real.bases.size(); ++i) {
    const CMatrix& b = real.bases[i];
    EXPECT_EQ(b.cols(), 12);
    EXPECT_LE((b.adjoint() * b - CMatrix::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff(), 1e-10);
    for (Index j = 0; j < g.size(); ++j)
      if (!plan.cylinders.regions[i].contains(g.point(j))) {
        EXPECT_EQ(b.row(j).cwiseAbs().maxCoeff(), 0.0);
      }
  }
  EXPECT_LE(max_cross_element(real, CMatrix::Identity(64, 64)), 0.0);
}

TEST(Realize, Errors) {
  const Grid g(16, 8.0);
  const auto spec = family_b_spec(0.5, 1.0);
  // region between two grid points
  const std::vector<double> tight = {0.1, 0.2};
  const auto plan = build_cq_plan(spec, axis(2, 0), CylinderDecomposition::split_first_axis(1, tight));
  EXPECT_THROW(realize(plan, g), InvalidArgument);
  // permutation longer than the truncated family
  const auto perm_plan =
      build_cq_plan(spec, axis(2, 0), halves(), BasisChoice::kIndicatorLocalized, {{3, 2, 1, 0}, {}});
  EXPECT_NO_THROW(realize(perm_plan, g));
  EXPECT_THROW(realize(perm_plan, g, 2), InvalidArgument);
}

TEST(CqEvaluator, LinearAndMatchesFamilyB) {
  random::Rng rng(16);
  const Grid g(32, 8.0);
  const auto plan = build_cq_plan(family_b_spec(0.5, 1.0), axis(2, 0), halves(),
                                  BasisChoice::kIndicatorLocalized, {{1, 0, 2}, {}});
  const auto real = realize(plan, g);
  const auto ch = family_b_channel(g, 0.5, 1.0);
  const auto eval = cq_channel_of(real, outputs_from_channel(ch, real));
  const GridState a = random::full_rank_state(rng, g);
  const GridState b = random::full_rank_state(rng, g);
  const CMatrix lin = eval(0.3 * a.matrix() + 0.7 * b.matrix());
  EXPECT_LE((lin - 0.3 * eval(a) - 0.7 * eval(b)).cwiseAbs().maxCoeff(), 1e-12);
  // Family B only sees the diagonal, which the indicator blocks resolve.
  EXPECT_LE(trace_norm_distance(eval(a), apply_kraus(ch, a.matrix())), 1e-12);
}

TEST(MaxCrossElement, DiagonalWeylDoesNotCoupleRegions) {
  const Grid g(32, 8.0);
  const auto real = realize(build_cq_plan(family_b_spec(0.5, 1.0), axis(2, 0), halves()), g);
  EXPECT_LE(max_cross_element(real, weyl(g, 3, 0)), 0.0);
  EXPECT_NEAR(max_cross_element(real, weyl(g, 0, 1)), 1.0, 1e-15);
}

}  // namespace
}  // namespace bosonic
