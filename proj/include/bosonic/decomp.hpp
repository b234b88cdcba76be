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

#ifndef BOSONIC_DECOMP_HPP_
#define BOSONIC_DECOMP_HPP_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bosonic/channel.hpp"
#include "bosonic/errors.hpp"
#include "bosonic/gridsim.hpp"
#include "bosonic/linalg.hpp"
#include "bosonic/region.hpp"
#include "bosonic/symplectic.hpp"

namespace bosonic {

// ---------------------------------------------------------------------------
// Direct-sum decompositions for channels with noise-free directions.
//
// An isotropic subspace Z of Z_f with canonical basis f_1..f_d generates a
// commutative algebra; in coordinates adapted to it (f_i as the first e's)
// its projectors are indicators of sets D_k in the first d position
// variables. Q_k = 1_{D_k} on the output side is carried by the dual channel
// to P_k = 1_{D_k} in the coordinates adapted to K(Z), and states supported
// on the cylinder D_k x R^{s_A - d} stay on the matching output cylinder.
struct DecompositionPlan {
  Index modes_in = 1;
  Index modes_out = 1;
  Subspace zf_iso;           // in Z_B
  Index d = 0;
  Matrix adapted_basis_b;    // e-columns 0, 2, .., 2d-2 span zf_iso
  Matrix adapted_basis_a;    // e-columns 0, 2, .., 2d-2 are K applied to those
  Matrix t;                  // 2 s_A x 2 s_B, t z = K z on zf_iso
  CylinderDecomposition cylinders;
  bool aligned = false;

  Index region_count() const { return cylinders.size(); }
  // Grid verification needs one mode on each side and standard coordinates.
  bool grid_realizable() const { return aligned && modes_in == 1 && modes_out == 1 && d == 1; }
};

namespace detail {

inline bool first_e_columns_standard(const Matrix& basis, Index d) {
  for (Index i = 0; i < d; ++i)
    if ((basis.col(2 * i) - Vector::Unit(basis.rows(), 2 * i)).cwiseAbs().maxCoeff() > 1e-9)
      return false;
  return true;
}

}  // namespace detail

inline DecompositionPlan build_prop1_plan(const GaussianChannelSpec& spec,
                                          const CylinderDecomposition& cylinders,
                                          const std::optional<Subspace>& use_subspace = std::nullopt,
                                          const Tolerance& tol = {}) {
  require_valid(spec, tol, "build_prop1_plan");
  const auto rep = classify(spec, tol);
  if (!rep.type1)
    throw NoDegeneracy("build_prop1_plan: Z_f = ker alpha is trivial, no noise-free directions");
  const auto sa = spec.space_in();
  const auto sb = spec.space_out();

  Subspace iso;
  if (use_subspace) {
    iso = *use_subspace;
    if (iso.ambient_dim() != sb.dim())
      throw InvalidArgument("build_prop1_plan: subspace does not live in Z_B");
    if (iso.is_zero()) throw InvalidArgument("build_prop1_plan: subspace is zero");
    if (!is_isotropic(sb, iso, tol))
      throw InvalidArgument("build_prop1_plan: subspace is not isotropic");
    if (!rep.zf.contains(iso, tol.subspace))
      throw InvalidArgument("build_prop1_plan: subspace is not contained in Z_f");
  } else {
    iso = rep.zf_isotropic_part;
    if (iso.is_zero())
      throw NoDegeneracy(
          "build_prop1_plan: Z_f is symplectic (its isotropic part is zero); supply an "
          "isotropic subspace of Z_f explicitly");
  }
  const Index d = iso.rank();
  if (cylinders.dim != d)
    throw InvalidArgument("build_prop1_plan: cylinders have dimension " +
                          std::to_string(cylinders.dim) + ", isotropic subspace has " +
                          std::to_string(d));
  cylinders.validate();

  // f(z) = exp(i l^T z) on ker alpha; the decomposition needs f = 1 there.
  const double l_on_iso = (iso.basis().transpose() * spec.l).cwiseAbs().maxCoeff();
  if (l_on_iso > tol.form)
    throw NoDegeneracy("build_prop1_plan: l does not vanish on the chosen subspace, so f != 1 there");

  const auto preserved = verify_form_preservation(sa, sb, spec.k, iso, tol);
  if (!preserved.passed())
    throw InternalConsistency("build_prop1_plan: K is not form-preserving on Z_f");

  DecompositionPlan plan;
  plan.modes_in = spec.modes_in;
  plan.modes_out = spec.modes_out;
  plan.zf_iso = iso;
  plan.d = d;
  plan.cylinders = cylinders;
  plan.adapted_basis_b = adapted_symplectic_basis(sb, iso, tol);

  std::vector<CanonicalVector> img;
  for (Index i = 0; i < d; ++i)
    img.push_back({spec.k * iso.basis().col(i), CanonicalRole::kE, i});
  plan.adapted_basis_a = complete_symplectic_basis(sa, img, tol);

  if (spec.modes_in == spec.modes_out) {
    plan.t = extend_partial_symplectic_map(sb, {iso, spec.k * iso.basis()}, tol);
  } else {
    // Different mode counts: map adapted B-coordinates onto the leading
    // adapted A-coordinates.
    Matrix embed = Matrix::Zero(sa.dim(), sb.dim());
    const Index common = std::min(sa.dim(), sb.dim());
    embed.topLeftCorner(common, common).setIdentity();
    plan.t = plan.adapted_basis_a * embed * symplectic_inverse(sb, plan.adapted_basis_b);
  }
  plan.aligned = detail::first_e_columns_standard(plan.adapted_basis_b, d) &&
                 detail::first_e_columns_standard(plan.adapted_basis_a, d);
  return plan;
}

// Replaces region `region_index` by `parts`, which must partition it.
inline DecompositionPlan refine_plan(const DecompositionPlan& plan, Index region_index,
                                     std::span<const Region> parts) {
  if (region_index < 0 || region_index >= plan.region_count())
    throw InvalidArgument("refine_plan: region index out of range");
  if (parts.empty()) throw InvalidArgument("refine_plan: no parts given");
  const Region& whole = plan.cylinders.regions[static_cast<std::size_t>(region_index)];
  for (const auto& p : parts)
    if (p.dim != whole.dim) throw InvalidArgument("refine_plan: part dimension mismatch");
  bool ok = false;
  try {
    ok = partitions(whole, parts);
  } catch (const InvalidArgument&) {
    ok = false;
  }
  if (!ok)
    throw InvalidArgument("refine_plan: parts do not partition region " +
                          std::to_string(region_index));
  DecompositionPlan out = plan;
  auto& regs = out.cylinders.regions;
  regs.erase(regs.begin() + region_index);
  regs.insert(regs.begin() + region_index, parts.begin(), parts.end());
  return out;
}

// Psi(sigma) = sum_k Tr(Q_k sigma) rho_k for a grid-realizable plan.
struct ReversingChannelPlan {
  DecompositionPlan plan;
  std::vector<GridState> anchors;

  GridState apply(const GridState& sigma) const {
    const Grid& g = anchors.front().grid();
    if (!(sigma.grid() == g)) throw InvalidArgument("ReversingChannelPlan: grid mismatch");
    CMatrix out = CMatrix::Zero(g.size(), g.size());
    double total = 0.0;
    for (std::size_t k = 0; k < anchors.size(); ++k) {
      const double w = support_mass(sigma, plan.cylinders.regions[k]);
      total += w;
      out.noalias() += w * anchors[k].matrix();
    }
    // the Q_k resolve the identity, so the weights sum to Tr sigma = 1
    if (std::abs(total - 1.0) > 1e-10)
      throw InternalConsistency("ReversingChannelPlan: region weights do not sum to one");
    out = 0.5 * (out + out.adjoint());
    return GridState::trusted(g, std::move(out));
  }
};

inline ReversingChannelPlan build_reversing_channel(const DecompositionPlan& plan,
                                                    std::vector<GridState> anchors) {
  if (!plan.grid_realizable())
    throw InvalidArgument(
        "build_reversing_channel: plan is not grid-realizable (needs one mode and adapted "
        "coordinates equal to the standard ones)");
  if (static_cast<Index>(anchors.size()) != plan.region_count())
    throw InvalidArgument("build_reversing_channel: need one anchor state per region");
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    if (!(anchors[k].grid() == anchors.front().grid()))
      throw InvalidArgument("build_reversing_channel: anchors live on different grids");
    const double mass = support_mass(anchors[k], plan.cylinders.regions[k]);
    if (mass < 1.0 - 1e-10)
      throw InvalidArgument("build_reversing_channel: anchor " + std::to_string(k) +
                            " is not supported in region " + std::to_string(k) +
                            " (mass " + std::to_string(mass) + ")");
  }
  return {plan, std::move(anchors)};
}

// ---------------------------------------------------------------------------
// Classical-quantum decompositions for rank-deficient K.

enum class BasisChoice { kIndicatorLocalized, kWindowedHermite };

// Permutations are finite: entry k is pi(k) for k < size(), indices beyond
// are fixed.
using FinitePermutation = std::vector<Index>;

struct CqPlan {
  Index modes_in = 1;
  Subspace z0;  // isotropic, inside the skew complement of Ran K
  Index d = 0;
  CylinderDecomposition cylinders;
  BasisChoice basis_choice = BasisChoice::kIndicatorLocalized;
  std::vector<FinitePermutation> permutations;  // one per region

  Index region_count() const { return cylinders.size(); }
  bool grid_realizable() const {
    return modes_in == 1 && d == 1 &&
           z0.same_as(Subspace::span(Matrix(Vector::Unit(2, 0))), 1e-9);
  }
};

inline bool is_bijection(const FinitePermutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (Index v : p) {
    if (v < 0 || v >= static_cast<Index>(p.size()) || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

// Default Z0: the radical of [Ran K]^perp, or its first canonical basis
// vector when that complement is symplectic.
inline Subspace default_cq_subspace(const GaussianChannelSpec& spec, const Tolerance& tol = {}) {
  const auto rep = classify(spec, tol);
  if (!rep.type2) throw NoDegeneracy("default_cq_subspace: K has full rank");
  const auto split = radical_split(spec.space_in(), rep.ran_k_perp, tol);
  if (!split.isotropic_part.is_zero()) return split.isotropic_part;
  return Subspace::span(Matrix(rep.ran_k_perp.basis().col(0)), tol);
}

inline CqPlan build_cq_plan(const GaussianChannelSpec& spec, const Subspace& z0,
                            const CylinderDecomposition& cylinders,
                            BasisChoice basis_choice = BasisChoice::kIndicatorLocalized,
                            std::vector<FinitePermutation> permutations = {},
                            const Tolerance& tol = {}) {
  require_valid(spec, tol, "build_cq_plan");
  const auto rep = classify(spec, tol);
  if (!rep.type2)
    throw NoDegeneracy("build_cq_plan: rank K = dim Z_A, so there are no discrete c-q subchannels");
  const auto sa = spec.space_in();
  if (z0.ambient_dim() != sa.dim()) throw InvalidArgument("build_cq_plan: Z0 does not live in Z_A");
  if (z0.is_zero()) throw InvalidArgument("build_cq_plan: Z0 must be nonzero");
  if (!is_isotropic(sa, z0, tol)) throw InvalidArgument("build_cq_plan: Z0 is not isotropic");
  if (!rep.ran_k_perp.contains(z0, tol.subspace))
    throw InvalidArgument("build_cq_plan: Z0 is not inside the skew complement of Ran K");
  if (cylinders.dim != z0.rank())
    throw InvalidArgument("build_cq_plan: cylinder dimension differs from dim Z0");
  cylinders.validate();
  if (permutations.empty()) permutations.resize(static_cast<std::size_t>(cylinders.size()));
  if (static_cast<Index>(permutations.size()) != cylinders.size())
    throw InvalidArgument("build_cq_plan: need one permutation per region");
  for (std::size_t i = 0; i < permutations.size(); ++i)
    if (!is_bijection(permutations[i]))
      throw InvalidArgument("build_cq_plan: permutation " + std::to_string(i) + " is not a bijection");
  return {spec.modes_in, z0, z0.rank(), cylinders, basis_choice, std::move(permutations)};
}

// Grid-level realization of a CqPlan: an orthonormal family per region and
// the blocks H_A^k = span{ e^i_{pi_i(k)} : i }.
struct CqRealization {
  Grid grid;
  std::vector<CMatrix> bases;                 // region i: n x N_i
  std::vector<FinitePermutation> perms;       // extended to length N_i

  Index block_count() const {
    Index m = 0;
    for (const auto& b : bases) m = std::max(m, b.cols());
    return m;
  }
  // (region, column) pairs spanning block k
  std::vector<std::pair<Index, Index>> block(Index k) const {
    std::vector<std::pair<Index, Index>> out;
    for (std::size_t i = 0; i < bases.size(); ++i)
      if (k < bases[i].cols()) out.emplace_back(static_cast<Index>(i), perms[i][static_cast<std::size_t>(k)]);
    return out;
  }
  CVector vector(Index region, Index column) const {
    return bases[static_cast<std::size_t>(region)].col(column);
  }
  Index total_vectors() const {
    Index t = 0;
    for (const auto& b : bases) t += b.cols();
    return t;
  }
  bool complete() const { return total_vectors() == grid.size(); }
};

namespace detail {

inline std::vector<Index> region_points(const Grid& grid, const Region& r) {
  std::vector<Index> pts;
  for (Index j = 0; j < grid.size(); ++j)
    if (r.contains(grid.point(j))) pts.push_back(j);
  return pts;
}

// Normalized Hermite functions h_0..h_{count-1} sampled on the grid
// (scaled by sqrt(spacing) so the samples are unit vectors).
inline Matrix hermite_functions(const Grid& grid, Index count) {
  const Index n = grid.size();
  Matrix h(n, count);
  const double scale = std::sqrt(grid.spacing());
  for (Index j = 0; j < n; ++j) {
    const double x = grid.point(j);
    double prev = 0.0;
    double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    for (Index k = 0; k < count; ++k) {
      h(j, k) = scale * cur;
      const double next = std::sqrt(2.0 / static_cast<double>(k + 1)) * x * cur -
                          std::sqrt(static_cast<double>(k) / static_cast<double>(k + 1)) * prev;
      prev = cur;
      cur = next;
    }
  }
  return h;
}

}  // namespace detail

// Realizes the plan's bases on a grid. Indicator-localized vectors are the
// grid deltas inside each region, nearest to the origin first; windowed
// Hermite vectors are Hermite functions masked to the region and
// re-orthonormalized. `max_per_region` truncates each family.
inline CqRealization realize(const CqPlan& plan, const Grid& grid,
                             std::optional<Index> max_per_region = std::nullopt) {
  if (!plan.grid_realizable())
    throw InvalidArgument("realize: plan is not grid-realizable (needs one mode and Z0 = span{e1})");
  CqRealization out{grid, {}, {}};
  for (Index i = 0; i < plan.region_count(); ++i) {
    const Region& reg = plan.cylinders.regions[static_cast<std::size_t>(i)];
    std::vector<Index> pts = detail::region_points(grid, reg);
    if (pts.empty())
      throw InvalidArgument("realize: region " + std::to_string(i) + " contains no grid points");
    Index cap = static_cast<Index>(pts.size());
    if (max_per_region) cap = std::min(cap, *max_per_region);
    CMatrix basis;
    if (plan.basis_choice == BasisChoice::kIndicatorLocalized) {
      std::stable_sort(pts.begin(), pts.end(), [&](Index a, Index b) {
        return std::abs(grid.point(a)) < std::abs(grid.point(b));
      });
      basis = CMatrix::Zero(grid.size(), cap);
      for (Index c = 0; c < cap; ++c) basis(pts[static_cast<std::size_t>(c)], c) = 1.0;
    } else {
      const Matrix herm = detail::hermite_functions(grid, static_cast<Index>(pts.size()));
      std::vector<Vector> kept;
      for (Index k = 0; k < herm.cols() && static_cast<Index>(kept.size()) < cap; ++k) {
        Vector v = Vector::Zero(grid.size());
        for (Index j : pts) v(j) = herm(j, k);
        const double orig = v.norm();
        if (!(orig > 1e-12)) continue;
        for (int pass = 0; pass < 2; ++pass)
          for (const auto& q : kept) v -= q.dot(v) * q;
        if (v.norm() <= 1e-8 * orig) continue;
        kept.push_back(v / v.norm());
      }
      basis = CMatrix::Zero(grid.size(), static_cast<Index>(kept.size()));
      for (std::size_t c = 0; c < kept.size(); ++c)
        basis.col(static_cast<Index>(c)) = kept[c].cast<Complex>();
    }
    FinitePermutation perm = plan.permutations[static_cast<std::size_t>(i)];
    if (static_cast<Index>(perm.size()) > basis.cols())
      throw InvalidArgument("realize: permutation " + std::to_string(i) +
                            " moves indices beyond the realized basis");
    for (Index k = static_cast<Index>(perm.size()); k < basis.cols(); ++k) perm.push_back(k);
    out.bases.push_back(std::move(basis));
    out.perms.push_back(std::move(perm));
  }
  return out;
}

// Pinching sum_k P_k rho P_k over the realized blocks; when the realized
// families do not span the grid, the leftover projector is kept as one more
// block so the map stays trace preserving.
inline CMatrix pinch(const CqRealization& real, const CMatrix& rho) {
  const Index n = real.grid.size();
  if (rho.rows() != n || rho.cols() != n) throw InvalidArgument("pinch: grid mismatch");
  CMatrix out = CMatrix::Zero(n, n);
  CMatrix all(n, real.total_vectors());
  Index filled = 0;
  for (Index k = 0; k < real.block_count(); ++k) {
    const auto blk = real.block(k);
    CMatrix v(n, static_cast<Index>(blk.size()));
    for (std::size_t c = 0; c < blk.size(); ++c) {
      v.col(static_cast<Index>(c)) = real.vector(blk[c].first, blk[c].second);
      all.col(filled++) = v.col(static_cast<Index>(c));
    }
    out.noalias() += v * (v.adjoint() * rho * v) * v.adjoint();
  }
  if (!real.complete()) {
    const CMatrix rest = CMatrix::Identity(n, n) - all * all.adjoint();
    out.noalias() += rest * rho * rest;
  }
  return 0.5 * (out + out.adjoint());
}

inline GridState pinch(const CqRealization& real, const GridState& rho) {
  if (!(rho.grid() == real.grid)) throw InvalidArgument("pinch: grid mismatch");
  return GridState::trusted(real.grid, pinch(real, rho.matrix()));
}

// sigma^i_k as a function of (region i, block k).
using CqOutputs = std::function<CMatrix(Index region, Index block)>;

// rho -> sum_k sum_i <e^i_{pi_i(k)}| rho |e^i_{pi_i(k)}> sigma^i_k.
class CqEvaluator {
 public:
  CqEvaluator(CqRealization real, CqOutputs outputs)
      : real_(std::move(real)), outputs_(std::move(outputs)) {}

  CMatrix operator()(const CMatrix& rho) const {
    const Index n = real_.grid.size();
    if (rho.rows() != n || rho.cols() != n) throw InvalidArgument("CqEvaluator: grid mismatch");
    CMatrix out = CMatrix::Zero(n, n);
    for (Index k = 0; k < real_.block_count(); ++k) {
      for (const auto& [i, col] : real_.block(k)) {
        const CVector e = real_.vector(i, col);
        const Complex w = e.dot(rho * e);
        if (w != Complex(0.0)) out.noalias() += w.real() * outputs_(i, k);
      }
    }
    return out;
  }
  CMatrix operator()(const GridState& rho) const { return (*this)(rho.matrix()); }

  const CqRealization& realization() const { return real_; }

 private:
  CqRealization real_;
  CqOutputs outputs_;
};

inline CqEvaluator cq_channel_of(CqRealization real, CqOutputs outputs) {
  return CqEvaluator(std::move(real), std::move(outputs));
}

// sigma^i_k = Phi(|e^i_{pi_i(k)}><e^i_{pi_i(k)}|), computed on demand.
inline CqOutputs outputs_from_channel(const GridChannel& ch, const CqRealization& real) {
  return [ch, real](Index i, Index k) {
    const auto blk = real.block(k);
    for (const auto& [reg, col] : blk) {
      if (reg == i) {
        const CVector e = real.vector(reg, col);
        return apply_kraus(ch, e * e.adjoint());
      }
    }
    throw InvalidArgument("outputs_from_channel: region has no vector in this block");
  };
}

// max |<e^i_a| W |e^j_b>| over realized vectors from different regions.
inline double max_cross_element(const CqRealization& real, const CMatrix& w) {
  double worst = 0.0;
  for (std::size_t i = 0; i < real.bases.size(); ++i) {
    for (std::size_t j = 0; j < real.bases.size(); ++j) {
      if (i == j) continue;
      const CMatrix m = real.bases[i].adjoint() * w * real.bases[j];
      if (m.size() > 0) worst = std::max(worst, m.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace bosonic

#endif  // BOSONIC_DECOMP_HPP_
