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

#ifndef BOSONIC_RANDOM_HPP_
#define BOSONIC_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "bosonic/channel.hpp"
#include "bosonic/gridsim.hpp"
#include "bosonic/linalg.hpp"
#include "bosonic/region.hpp"
#include "bosonic/symplectic.hpp"

// Random instances for property checks. Everything is drawn from a caller
// owned std::mt19937_64 so runs are reproducible from a seed.
namespace bosonic::random {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Index uniform_index(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

inline Matrix gaussian_matrix(Rng& rng, Index rows, Index cols, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = nd(rng);
  return m;
}

inline Vector gaussian_vector(Rng& rng, Index n, double scale = 1.0) {
  return gaussian_matrix(rng, n, 1, scale).col(0);
}

inline CVector complex_gaussian_vector(Rng& rng, Index n) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = Complex(nd(rng), nd(rng));
  return v;
}

// Built in the block ordering (q_1..q_s, p_1..p_s), where
// [[I, B], [0, I]], [[I, 0], [A, I]] (A, B symmetric) and
// [[D, 0], [0, D^-1]] are symplectic, then permuted to the interleaved
// ordering used everywhere else.
inline Matrix random_symplectic(Rng& rng, Index modes, double spread = 0.5) {
  const Index s = modes;
  auto sym = [&] {
    Matrix a = gaussian_matrix(rng, s, s, spread);
    return Matrix(0.5 * (a + a.transpose()));
  };
  auto upper = [&] {
    Matrix m = Matrix::Identity(2 * s, 2 * s);
    m.topRightCorner(s, s) = sym();
    return m;
  };
  auto lower = [&] {
    Matrix m = Matrix::Identity(2 * s, 2 * s);
    m.bottomLeftCorner(s, s) = sym();
    return m;
  };
  Matrix scale = Matrix::Zero(2 * s, 2 * s);
  for (Index i = 0; i < s; ++i) {
    const double d = std::exp(uniform(rng, -spread, spread));
    scale(i, i) = d;
    scale(s + i, s + i) = 1.0 / d;
  }
  const Matrix block = upper() * lower() * scale * upper();
  Matrix perm = Matrix::Zero(2 * s, 2 * s);
  for (Index i = 0; i < s; ++i) {
    perm(2 * i, i) = 1.0;
    perm(2 * i + 1, s + i) = 1.0;
  }
  return perm * block * perm.transpose();
}

// gamma = S S^T / 2 + small PSD: a valid covariance matrix.
inline GaussianState random_state(Rng& rng, Index modes) {
  const Matrix s = random_symplectic(rng, modes);
  const Matrix x = gaussian_matrix(rng, 2 * modes, 2 * modes, 0.3);
  GaussianState st;
  st.mean = gaussian_vector(rng, 2 * modes);
  st.cov = 0.5 * s * s.transpose() + x * x.transpose();
  st.cov = 0.5 * (st.cov + st.cov.transpose());
  return st;
}

// A valid spec whose ker alpha is known by construction, together with it.
struct ForcedKernelInstance {
  GaussianChannelSpec spec;
  Subspace expected_zf;
  Index isotropic_modes = 0;  // noise-free position directions (alpha = diag(0, c))
  Index free_modes = 0;       // modes transmitted without any noise
};

// Block form before conjugation: the first `iso` output modes get
// K = I_2, alpha = diag(0, c); the next `sym` get K = I_2, alpha = 0; the
// rest get a random K_r with alpha_r = (I + K_r^T K_r)/2 + PSD, which is
// positive definite. Conjugating by symplectic S_A, S_B
// (K' = S_A K S_B, alpha' = S_B^T alpha S_B) keeps validity and maps
// ker alpha to S_B^{-1} ker alpha.
inline ForcedKernelInstance forced_kernel_spec(Rng& rng, Index modes_in, Index modes_out, Index iso,
                                               Index sym) {
  const Index f = iso + sym;
  if (f > modes_in || f > modes_out) throw InvalidArgument("forced_kernel_spec: too many free modes");
  const Index da = 2 * modes_in;
  const Index db = 2 * modes_out;
  Matrix k = Matrix::Zero(da, db);
  Matrix alpha = Matrix::Zero(db, db);
  Matrix ker(db, iso + 2 * sym);
  ker.setZero();
  for (Index i = 0; i < f; ++i) {
    k.block(2 * i, 2 * i, 2, 2).setIdentity();
    if (i < iso) {
      alpha(2 * i + 1, 2 * i + 1) = uniform(rng, 0.5, 2.0);
      ker(2 * i, i) = 1.0;
    } else {
      const Index c = iso + 2 * (i - iso);
      ker(2 * i, c) = 1.0;
      ker(2 * i + 1, c + 1) = 1.0;
    }
  }
  const Index ra = da - 2 * f;
  const Index rb = db - 2 * f;
  if (rb > 0) {
    const Matrix kr = gaussian_matrix(rng, ra, rb, 0.7);
    const Matrix x = gaussian_matrix(rng, rb, rb, 0.3);
    k.bottomRightCorner(ra, rb) = kr;
    alpha.bottomRightCorner(rb, rb) =
        0.5 * (Matrix::Identity(rb, rb) + kr.transpose() * kr) + x * x.transpose();
  }
  const Matrix sa = random_symplectic(rng, modes_in);
  const Matrix sb = random_symplectic(rng, modes_out);
  ForcedKernelInstance out;
  out.spec.modes_in = modes_in;
  out.spec.modes_out = modes_out;
  out.spec.k = sa * k * sb;
  out.spec.alpha = sb.transpose() * alpha * sb;
  out.spec.alpha = 0.5 * (out.spec.alpha + out.spec.alpha.transpose());
  out.spec.l = gaussian_vector(rng, db);
  const Matrix sb_inv = symplectic_inverse(SymplecticSpace(modes_out), sb);
  out.expected_zf = ker.cols() ? Subspace::span(Matrix(sb_inv * ker)) : Subspace::zero(db);
  out.isotropic_modes = iso;
  out.free_modes = sym;
  return out;
}

// Random valid spec with s_A, s_B <= max_modes and a random kernel size.
inline ForcedKernelInstance random_valid_spec(Rng& rng, Index max_modes) {
  const Index sa = uniform_index(rng, 1, max_modes);
  const Index sb = uniform_index(rng, 1, max_modes);
  const Index f = uniform_index(rng, 0, std::min(sa, sb));
  const Index iso = uniform_index(rng, 0, f);
  return forced_kernel_spec(rng, sa, sb, iso, f - iso);
}

// Pure or mixed grid state with all weight on the grid points of `r`.
inline GridState state_in_region(Rng& rng, const Grid& grid, const Region& r, Index rank) {
  std::vector<CVector> psis;
  std::vector<double> probs;
  for (Index k = 0; k < rank; ++k) {
    CVector v = complex_gaussian_vector(rng, grid.size());
    for (Index j = 0; j < grid.size(); ++j)
      if (!r.contains(grid.point(j))) v(j) = 0.0;
    psis.push_back(std::move(v));
    probs.push_back(uniform(rng, 0.2, 1.0));
  }
  return GridState::mixture(grid, psis, probs);
}

// rho = G G^dagger / Tr, with G square complex Gaussian: full rank almost surely.
inline GridState full_rank_state(Rng& rng, const Grid& grid) {
  const Index n = grid.size();
  CMatrix g(n, n);
  for (Index j = 0; j < n; ++j) g.col(j) = complex_gaussian_vector(rng, n);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return GridState::trusted(grid, std::move(rho));
}

}  // namespace bosonic::random

#endif  // BOSONIC_RANDOM_HPP_
