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


// Randomized invariants over seeded instances.

#include <gtest/gtest.h>

#include "bosonic/channel.hpp"
#include "bosonic/random.hpp"
#include "bosonic/symplectic.hpp"

namespace bosonic {
namespace {

constexpr int kInstances = 200;

Subspace random_subspace(random::Rng& rng, Index dim) {
  const Index k = random::uniform_index(rng, 0, dim);
  return k ? Subspace::span(random::gaussian_matrix(rng, dim, k)) : Subspace::zero(dim);
}

// Span of e-columns of a random symplectic matrix.
Subspace random_isotropic(random::Rng& rng, Index modes) {
  const Matrix s = random::random_symplectic(rng, modes);
  const Index k = random::uniform_index(rng, 1, modes);
  Matrix cols(2 * modes, k);
  for (Index i = 0; i < k; ++i) cols.col(i) = s.col(2 * i);
  return Subspace::span(cols);
}

TEST(SkewComplement, DimensionAndInvolution) {
  random::Rng rng(31);
  for (int t = 0; t < kInstances; ++t) {
    const Index modes = random::uniform_index(rng, 1, 4);
    const SymplecticSpace sp(modes);
    const Subspace s = random_subspace(rng, sp.dim());
    const Subspace c = skew_complement(sp, s);
    EXPECT_EQ(s.rank() + c.rank(), sp.dim());
    EXPECT_TRUE(skew_complement(sp, c).same_as(s, 1e-8));
    if (!s.is_zero() && !c.is_zero()) {
      EXPECT_LE(linalg::max_abs(Matrix(s.basis().transpose() * sp.form() * c.basis())), 1e-10);
    }
  }
}

TEST(SkewComplement, IsotropicSubspacesLieInTheirComplement) {
  random::Rng rng(32);
  for (int t = 0; t < kInstances; ++t) {
    const Index modes = random::uniform_index(rng, 1, 4);
    const SymplecticSpace sp(modes);
    const Subspace iso = random_isotropic(rng, modes);
    EXPECT_TRUE(is_isotropic(sp, iso));
    EXPECT_TRUE(skew_complement(sp, iso).contains(iso, 1e-8));
  }
}

TEST(RadicalSplit, DimensionsAndContainment) {
  random::Rng rng(33);
  for (int t = 0; t < kInstances; ++t) {
    const Index modes = random::uniform_index(rng, 1, 4);
    const SymplecticSpace sp(modes);
    // mix an isotropic piece with generic vectors so radicals are nontrivial
    const Subspace iso = random_isotropic(rng, modes);
    const Index extra = random::uniform_index(rng, 0, 2);
    Matrix cols(sp.dim(), iso.rank() + extra);
    cols << iso.basis(), random::gaussian_matrix(rng, sp.dim(), extra);
    const Subspace s = Subspace::span(cols);
    const auto split = radical_split(sp, s);
    EXPECT_EQ(split.isotropic_part.rank() + split.symplectic_part.rank(), s.rank());
    EXPECT_EQ(split.symplectic_part.rank() % 2, 0);
    EXPECT_TRUE(s.contains(split.isotropic_part, 1e-8));
    EXPECT_TRUE(s.contains(split.symplectic_part, 1e-8));
    EXPECT_TRUE(is_isotropic(sp, split.isotropic_part));
    EXPECT_TRUE(is_symplectic(sp, split.symplectic_part));
    // the radical is S intersected with its complement
    const Index gram_rank = linalg::numerical_rank(skew_gram(sp, s.basis()), 1e-10);
    EXPECT_EQ(split.isotropic_part.rank(), s.rank() - gram_rank);
  }
}

TEST(Enclosure, SmallestSymplecticSuperspace) {
  random::Rng rng(34);
  for (int t = 0; t < kInstances; ++t) {
    const Index modes = random::uniform_index(rng, 1, 4);
    const SymplecticSpace sp(modes);
    const Subspace iso = random_isotropic(rng, modes);
    const Index extra = random::uniform_index(rng, 0, 1);
    Matrix cols(sp.dim(), iso.rank() + extra);
    cols << iso.basis(), random::gaussian_matrix(rng, sp.dim(), extra);
    const Subspace s = Subspace::span(cols);
    const Subspace enc = minimal_symplectic_enclosure(sp, s);
    EXPECT_EQ(enc.rank(), s.rank() + radical_split(sp, s).isotropic_part.rank());
    EXPECT_TRUE(enc.contains(s, 1e-8));
    EXPECT_TRUE(is_symplectic(sp, enc));
  }
}

TEST(Extension, SymplecticAndAgreesOnDomain) {
  random::Rng rng(35);
  for (int t = 0; t < kInstances; ++t) {
    const Index modes = random::uniform_index(rng, 1, 4);
    const SymplecticSpace sp(modes);
    const Subspace dom = random_subspace(rng, sp.dim());
    const Matrix m = random::random_symplectic(rng, modes);
    const Matrix images = m * dom.basis();
    const Matrix ext = extend_partial_symplectic_map(sp, {dom, images});
    EXPECT_LE(symplectic_residual(sp, ext), 1e-9);
    if (!dom.is_zero()) {
      EXPECT_LE(linalg::max_abs(Matrix(ext * dom.basis() - images)), 1e-9);
    }
  }
}

TEST(CompleteBasis, FromRandomIsotropicFamilies) {
  random::Rng rng(36);
  for (int t = 0; t < kInstances; ++t) {
    const Index modes = random::uniform_index(rng, 1, 4);
    const SymplecticSpace sp(modes);
    const Subspace iso = random_isotropic(rng, modes);
    std::vector<CanonicalVector> given;
    for (Index i = 0; i < iso.rank(); ++i) given.push_back({iso.basis().col(i), CanonicalRole::kE, i});
    const Matrix b = complete_symplectic_basis(sp, given);
    EXPECT_LE(symplectic_residual(sp, b), 1e-9);
    for (Index i = 0; i < iso.rank(); ++i)
      EXPECT_LE((b.col(2 * i) - iso.basis().col(i)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Classify, ForcedKernelsAreRecovered) {
  random::Rng rng(37);
  for (int t = 0; t < kInstances; ++t) {
    const auto inst = random::random_valid_spec(rng, 3);
    const auto rep = classify(inst.spec);
    EXPECT_EQ(rep.dim_zf, inst.expected_zf.rank());
    EXPECT_TRUE(rep.zf.same_as(inst.expected_zf, 1e-6));
    EXPECT_EQ(rep.zf_isotropic_part.rank(), inst.isotropic_modes);
    EXPECT_EQ(rep.zf_symplectic_part.rank(), 2 * inst.free_modes);
    EXPECT_EQ(rep.type1, rep.dim_zf > 0);
    EXPECT_EQ(rep.rank_k + rep.corank_k, 2 * inst.spec.modes_in);
  }
}

TEST(GaussianPush, ValidChannelsMapStatesToStates) {
  random::Rng rng(38);
  for (int t = 0; t < kInstances; ++t) {
    const auto spec = random::random_valid_spec(rng, 3).spec;
    EXPECT_TRUE(validate_gaussian(spec).valid);
    const auto st = random::random_state(rng, spec.modes_in);
    ASSERT_TRUE(is_valid_state(st));
    EXPECT_TRUE(is_valid_state(gaussian_state_push(spec, st)));
  }
}

}  // namespace
}  // namespace bosonic
