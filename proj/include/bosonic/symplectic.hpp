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

#ifndef BOSONIC_SYMPLECTIC_HPP_
#define BOSONIC_SYMPLECTIC_HPP_

#include <cmath>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bosonic/errors.hpp"
#include "bosonic/linalg.hpp"

namespace bosonic {

// Coordinates are interleaved (e_1, h_1, e_2, h_2, ...) and the form is
// block-diagonal with s copies of [[0, 1], [-1, 0]], so Delta(e_i, h_i) = 1.
inline Matrix standard_form(Index modes) {
  if (modes < 1) throw InvalidArgument("standard_form: modes must be >= 1");
  Matrix d = Matrix::Zero(2 * modes, 2 * modes);
  for (Index i = 0; i < modes; ++i) {
    d(2 * i, 2 * i + 1) = 1.0;
    d(2 * i + 1, 2 * i) = -1.0;
  }
  return d;
}

// Phase space R^{2s} with the standard symplectic form.
class SymplecticSpace {
 public:
  explicit SymplecticSpace(Index modes) : modes_(modes), form_(standard_form(modes)) {}

  Index modes() const { return modes_; }
  Index dim() const { return 2 * modes_; }
  const Matrix& form() const { return form_; }

  double pairing(const Vector& x, const Vector& y) const { return x.dot(form_ * y); }

  // Unit vectors: e(i) = coordinate 2i, h(i) = coordinate 2i+1.
  Vector e(Index i) const { return Vector::Unit(dim(), 2 * i); }
  Vector h(Index i) const { return Vector::Unit(dim(), 2 * i + 1); }

  friend bool operator==(const SymplecticSpace& a, const SymplecticSpace& b) {
    return a.modes_ == b.modes_;
  }

 private:
  Index modes_;
  Matrix form_;
};

// Linear subspace stored as an orthonormal basis. Bases are canonicalized
// (see linalg::canonical_basis) so equal subspaces built from different
// spanning sets get identical basis matrices up to rounding.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Index ambient_dim) { return Subspace(Matrix(ambient_dim, 0)); }
  static Subspace whole(Index ambient_dim) {
    return Subspace(Matrix::Identity(ambient_dim, ambient_dim));
  }
  // Span of the columns of `vectors`, rank decided by SVD thresholding.
  static Subspace span(const Matrix& vectors, const Tolerance& tol = {}) {
    return Subspace(linalg::canonical_basis(linalg::column_space(vectors, tol.rank_rel)));
  }
  static Subspace span(std::span<const Vector> vectors, Index ambient_dim,
                       const Tolerance& tol = {}) {
    Matrix m(ambient_dim, static_cast<Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != ambient_dim)
        throw InvalidArgument("Subspace::span: vector dimension mismatch");
      m.col(static_cast<Index>(i)) = vectors[i];
    }
    return span(m, tol);
  }
  // Adopt a basis that is already orthonormal (checked to 1e-10).
  static Subspace from_orthonormal(const Matrix& basis) {
    if (basis.cols() > 0) {
      const double dev = linalg::max_abs(basis.transpose() * basis -
                                         Matrix::Identity(basis.cols(), basis.cols()));
      if (dev > 1e-10) throw InvalidArgument("Subspace: basis columns are not orthonormal");
    }
    return Subspace(basis);
  }

  Index ambient_dim() const { return basis_.rows(); }
  Index rank() const { return basis_.cols(); }
  bool is_zero() const { return rank() == 0; }
  const Matrix& basis() const { return basis_; }

  Matrix projector() const { return basis_ * basis_.transpose(); }

  bool contains(const Vector& v, double tol = 1e-8) const {
    return (v - basis_ * (basis_.transpose() * v)).norm() <= tol * std::max(v.norm(), 1.0);
  }
  bool contains(const Subspace& other, double tol = 1e-8) const {
    if (other.ambient_dim() != ambient_dim()) return false;
    const Matrix resid = other.basis_ - basis_ * (basis_.transpose() * other.basis_);
    return linalg::max_abs(resid) <= tol;
  }
  bool same_as(const Subspace& other, double tol = 1e-8) const {
    return other.ambient_dim() == ambient_dim() && other.rank() == rank() &&
           linalg::max_abs(projector() - other.projector()) <= tol;
  }

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

inline void check_dims(const SymplecticSpace& space, const Subspace& s, const char* op) {
  if (s.ambient_dim() != space.dim())
    throw InvalidArgument(std::string(op) + ": subspace ambient dimension " +
                          std::to_string(s.ambient_dim()) + " does not match space dimension " +
                          std::to_string(space.dim()));
}

// Skew Gram matrix B^T Delta B of a basis.
inline Matrix skew_gram(const SymplecticSpace& space, const Matrix& b) {
  return b.transpose() * space.form() * b;
}

inline Subspace skew_complement(const SymplecticSpace& space, const Subspace& s,
                                const Tolerance& tol = {}) {
  check_dims(space, s, "skew_complement");
  if (s.is_zero()) return Subspace::whole(space.dim());
  const Matrix constraints = s.basis().transpose() * space.form();
  return Subspace::span(linalg::null_space(constraints, tol.rank_rel), tol);
}

inline bool is_isotropic(const SymplecticSpace& space, const Subspace& s,
                         const Tolerance& tol = {}) {
  check_dims(space, s, "is_isotropic");
  return linalg::max_abs(skew_gram(space, s.basis())) <= tol.isotropy;
}

inline bool is_symplectic(const SymplecticSpace& space, const Subspace& s,
                          const Tolerance& tol = {}) {
  check_dims(space, s, "is_symplectic");
  if (s.is_zero()) return true;
  return linalg::numerical_rank(skew_gram(space, s.basis()), tol.rank_rel) == s.rank();
}

struct RadicalSplit {
  Subspace isotropic_part;   // radical: kernel of the restricted form
  Subspace symplectic_part;  // Euclidean complement of the radical inside S
};

inline RadicalSplit radical_split(const SymplecticSpace& space, const Subspace& s,
                                  const Tolerance& tol = {}) {
  check_dims(space, s, "radical_split");
  if (s.is_zero()) return {Subspace::zero(space.dim()), Subspace::zero(space.dim())};
  const Matrix g = skew_gram(space, s.basis());
  const Matrix ker = linalg::null_space(g, tol.rank_rel);
  const Matrix range = linalg::column_space(g, tol.rank_rel);
  return {Subspace::span(Matrix(s.basis() * ker), tol),
          Subspace::span(Matrix(s.basis() * range), tol)};
}

// ---------------------------------------------------------------------------
// Symplectic bases.

enum class CanonicalRole { kE, kH };

// A vector declared to sit in slot `slot` of a symplectic basis, either as
// e_slot or h_slot.
struct CanonicalVector {
  Vector v;
  CanonicalRole role = CanonicalRole::kE;
  Index slot = 0;
};

namespace detail {

inline std::string slot_name(const CanonicalVector& c) {
  return std::string(c.role == CanonicalRole::kE ? "e" : "h") + std::to_string(c.slot + 1);
}

// Minimum-norm x with Delta(rows[k], x) = targets[k] for all k.
inline std::optional<Vector> solve_pairings(const SymplecticSpace& space,
                                            const std::vector<Vector>& rows,
                                            const std::vector<double>& targets,
                                            const Tolerance& tol) {
  Matrix a(static_cast<Index>(rows.size()), space.dim());
  Vector b(static_cast<Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    a.row(static_cast<Index>(k)) = rows[k].transpose() * space.form();
    b(static_cast<Index>(k)) = targets[k];
  }
  return linalg::min_norm_solve(a, b, tol.rank_rel, tol.form);
}

// Removes from v its component in span{e, h} along the skew complement of
// that span (Delta(e, h) = 1 assumed).
inline void project_out_pair(const SymplecticSpace& space, Vector& v, const Vector& e,
                             const Vector& h) {
  const double ve = space.pairing(v, e);
  const double vh = space.pairing(v, h);
  v += -vh * e + ve * h;
}

inline Index pick_largest(const std::vector<Vector>& cands, const std::vector<bool>& used) {
  double best = -1.0;
  for (std::size_t j = 0; j < cands.size(); ++j)
    if (!used[j]) best = std::max(best, cands[j].norm());
  for (std::size_t j = 0; j < cands.size(); ++j)
    if (!used[j] && cands[j].norm() >= best * (1.0 - 1e-12)) return static_cast<Index>(j);
  return -1;
}

// Symplectic Gram-Schmidt: produces `pairs` canonical pairs from the
// candidate vectors, each pair skew-orthogonal to everything in `existing`
// and to the pairs before it.
inline std::vector<std::pair<Vector, Vector>> symplectic_gram_schmidt(
    const SymplecticSpace& space, std::vector<Vector> cands, Index pairs,
    const std::vector<std::pair<Vector, Vector>>& existing, const Tolerance& tol) {
  for (auto& c : cands)
    for (const auto& [e, h] : existing) project_out_pair(space, c, e, h);
  std::vector<bool> used(cands.size(), false);
  std::vector<std::pair<Vector, Vector>> out;
  for (Index t = 0; t < pairs; ++t) {
    const Index ie = pick_largest(cands, used);
    if (ie < 0 || cands[ie].norm() <= tol.rank_rel)
      throw InternalConsistency("symplectic_gram_schmidt: ran out of candidate vectors");
    used[ie] = true;
    Vector e = cands[ie] / cands[ie].norm();
    double best = 0.0;
    for (std::size_t j = 0; j < cands.size(); ++j)
      if (!used[j]) best = std::max(best, std::abs(space.pairing(e, cands[j])));
    if (best <= tol.rank_rel)
      throw InternalConsistency("symplectic_gram_schmidt: no skew partner among candidates");
    Index ih = -1;
    for (std::size_t j = 0; j < cands.size(); ++j) {
      if (!used[j] && std::abs(space.pairing(e, cands[j])) >= best * (1.0 - 1e-12)) {
        ih = static_cast<Index>(j);
        break;
      }
    }
    used[ih] = true;
    Vector h = cands[ih] / space.pairing(e, cands[ih]);
    for (std::size_t j = 0; j < cands.size(); ++j)
      if (!used[j]) project_out_pair(space, cands[j], e, h);
    out.emplace_back(std::move(e), std::move(h));
  }
  return out;
}

}  // namespace detail

// Extends a partial set of canonical vectors to a full symplectic basis.
// Columns of the result are ordered (e_1, h_1, ..., e_s, h_s) and every
// declared vector keeps its slot, so B^T Delta B equals the standard form.
//
// Missing partners of half-filled slots are the minimum-norm solutions of
// their pairing constraints against everything already placed; empty slots
// are filled by symplectic Gram-Schmidt over the standard basis vectors.
inline Matrix complete_symplectic_basis(const SymplecticSpace& space,
                                        std::span<const CanonicalVector> partial,
                                        const Tolerance& tol = {}) {
  const Index s = space.modes();
  std::vector<std::optional<Vector>> es(static_cast<std::size_t>(s));
  std::vector<std::optional<Vector>> hs(static_cast<std::size_t>(s));
  for (const auto& c : partial) {
    if (c.v.size() != space.dim())
      throw InvalidArgument("complete_symplectic_basis: vector " + detail::slot_name(c) +
                            " has wrong dimension");
    if (c.slot < 0 || c.slot >= s)
      throw InvalidArgument("complete_symplectic_basis: slot out of range for " +
                            detail::slot_name(c));
    auto& dest = c.role == CanonicalRole::kE ? es[c.slot] : hs[c.slot];
    if (dest) throw PreconditionViolated("complete_symplectic_basis: slot " +
                                         detail::slot_name(c) + " declared twice");
    dest = c.v;
  }
  // declared canonical relations
  for (std::size_t a = 0; a < partial.size(); ++a) {
    for (std::size_t b = a + 1; b < partial.size(); ++b) {
      const auto& x = partial[a];
      const auto& y = partial[b];
      double expected = 0.0;
      if (x.slot == y.slot && x.role != y.role) expected = x.role == CanonicalRole::kE ? 1.0 : -1.0;
      const double got = space.pairing(x.v, y.v);
      if (std::abs(got - expected) > tol.form) {
        std::ostringstream msg;
        msg << "complete_symplectic_basis: Delta(" << detail::slot_name(x) << ", "
            << detail::slot_name(y) << ") = " << got << ", expected " << expected;
        throw PreconditionViolated(msg.str());
      }
    }
  }
  if (!partial.empty()) {
    Matrix m(space.dim(), static_cast<Index>(partial.size()));
    for (std::size_t i = 0; i < partial.size(); ++i) m.col(static_cast<Index>(i)) = partial[i].v;
    if (linalg::numerical_rank(m, tol.rank_rel) != m.cols())
      throw PreconditionViolated("complete_symplectic_basis: declared vectors are linearly dependent");
  }

  // half-filled slots
  for (Index i = 0; i < s; ++i) {
    if (static_cast<bool>(es[i]) == static_cast<bool>(hs[i])) continue;
    const bool need_h = static_cast<bool>(es[i]);
    std::vector<Vector> rows;
    std::vector<double> targets;
    for (Index j = 0; j < s; ++j) {
      if (es[j]) {
        rows.push_back(*es[j]);
        targets.push_back(need_h && j == i ? 1.0 : 0.0);
      }
      if (hs[j]) {
        rows.push_back(*hs[j]);
        targets.push_back(!need_h && j == i ? -1.0 : 0.0);
      }
    }
    auto x = detail::solve_pairings(space, rows, targets, tol);
    if (!x) throw InternalConsistency("complete_symplectic_basis: partner system unsolvable");
    (need_h ? hs[i] : es[i]) = std::move(*x);
  }

  // empty slots
  std::vector<std::pair<Vector, Vector>> filled;
  std::vector<Index> empty;
  for (Index i = 0; i < s; ++i) {
    if (es[i]) filled.emplace_back(*es[i], *hs[i]);
    else empty.push_back(i);
  }
  if (!empty.empty()) {
    std::vector<Vector> cands;
    for (Index k = 0; k < space.dim(); ++k) cands.push_back(Vector::Unit(space.dim(), k));
    auto fresh = detail::symplectic_gram_schmidt(space, std::move(cands),
                                                 static_cast<Index>(empty.size()), filled, tol);
    for (std::size_t k = 0; k < empty.size(); ++k) {
      es[empty[k]] = std::move(fresh[k].first);
      hs[empty[k]] = std::move(fresh[k].second);
    }
  }

  Matrix out(space.dim(), space.dim());
  for (Index i = 0; i < s; ++i) {
    out.col(2 * i) = *es[i];
    out.col(2 * i + 1) = *hs[i];
  }
  return out;
}

// ||B^T Delta B - Delta||_inf.
inline double symplectic_residual(const SymplecticSpace& space, const Matrix& b) {
  return linalg::max_abs(skew_gram(space, b) - space.form());
}

// Inverse of a symplectic matrix: -Delta S^T Delta.
inline Matrix symplectic_inverse(const SymplecticSpace& space, const Matrix& s) {
  return -space.form() * s.transpose() * space.form();
}

// Canonical vectors describing a subspace S: a symplectic basis of its
// symplectic part in slots 0..k-1 followed by its radical as lone e-vectors.
struct SubspaceFrame {
  std::vector<std::pair<Vector, Vector>> pairs;
  std::vector<Vector> radical;

  std::vector<CanonicalVector> canonical() const {
    std::vector<CanonicalVector> out;
    Index slot = 0;
    for (const auto& [e, h] : pairs) {
      out.push_back({e, CanonicalRole::kE, slot});
      out.push_back({h, CanonicalRole::kH, slot});
      ++slot;
    }
    for (const auto& r : radical) out.push_back({r, CanonicalRole::kE, slot++});
    return out;
  }
};

namespace detail {

// Darboux pairs for a symplectic subspace with orthonormal basis W, from the
// skew Gram G = W^T Delta W. For a top unit eigenvector v of G^T G (eigenvalue
// lambda^2), u = G v / lambda satisfies v^T G u = -lambda and span{v, u} is
// G-invariant, so its orthogonal complement is deflated next. Both vectors of
// a pair have norm lambda^{-1/2}, which keeps the frame as well conditioned
// as the subspace allows.
inline std::vector<std::pair<Vector, Vector>> darboux_frame(const SymplecticSpace& space,
                                                            const Matrix& w, const Tolerance& tol) {
  const Matrix g = skew_gram(space, w);
  Matrix rest = Matrix::Identity(w.cols(), w.cols());
  std::vector<std::pair<Vector, Vector>> pairs;
  while (rest.cols() > 0) {
    const Matrix gr = rest.transpose() * g * rest;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gr.transpose() * gr);
    const Index top = gr.cols() - 1;
    const double lambda = std::sqrt(std::max(es.eigenvalues()(top), 0.0));
    if (rest.cols() < 2 || lambda <= tol.rank_rel)
      throw InternalConsistency("darboux_frame: subspace is not symplectic");
    const Vector v = es.eigenvectors().col(top);
    const Vector u = gr * v / lambda;
    const double scale = 1.0 / std::sqrt(lambda);
    pairs.emplace_back(scale * (w * (rest * v)), -scale * (w * (rest * u)));
    Matrix vu(gr.cols(), 2);
    vu << v, u;
    rest = rest * linalg::null_space(vu.transpose(), tol.rank_rel);
  }
  return pairs;
}

}  // namespace detail

inline SubspaceFrame subspace_frame(const SymplecticSpace& space, const Subspace& s,
                                    const Tolerance& tol = {}) {
  const auto split = radical_split(space, s, tol);
  SubspaceFrame frame;
  const Matrix& w = split.symplectic_part.basis();
  if (w.cols() % 2 != 0)
    throw InternalConsistency("subspace_frame: symplectic part has odd dimension");
  frame.pairs = detail::darboux_frame(space, w, tol);
  for (Index j = 0; j < split.isotropic_part.rank(); ++j)
    frame.radical.push_back(split.isotropic_part.basis().col(j));
  return frame;
}

inline Subspace minimal_symplectic_enclosure(const SymplecticSpace& space, const Subspace& s,
                                             const Tolerance& tol = {}) {
  check_dims(space, s, "minimal_symplectic_enclosure");
  if (s.is_zero()) return s;
  const auto frame = subspace_frame(space, s, tol);
  const auto canon = frame.canonical();
  const Matrix full = complete_symplectic_basis(space, canon, tol);
  const Index used_slots = static_cast<Index>(frame.pairs.size() + frame.radical.size());
  return Subspace::span(Matrix(full.leftCols(2 * used_slots)), tol);
}

// Symplectic basis whose e-vectors in slots 0..d-1 are the canonical basis
// of the isotropic subspace `iso`.
inline Matrix adapted_symplectic_basis(const SymplecticSpace& space, const Subspace& iso,
                                       const Tolerance& tol = {}) {
  check_dims(space, iso, "adapted_symplectic_basis");
  if (!is_isotropic(space, iso, tol))
    throw InvalidArgument("adapted_symplectic_basis: subspace is not isotropic");
  std::vector<CanonicalVector> canon;
  for (Index j = 0; j < iso.rank(); ++j) canon.push_back({iso.basis().col(j), CanonicalRole::kE, j});
  return complete_symplectic_basis(space, canon, tol);
}

// ---------------------------------------------------------------------------
// Partial maps.

// Linear map defined on `domain`: column i of `images` is the image of
// column i of domain.basis().
struct PartialSymplecticMap {
  Subspace domain;
  Matrix images;

  Vector apply(const Vector& z) const { return images * (domain.basis().transpose() * z); }
};

struct FormPreservationReport {
  bool injective = false;
  bool preserves_form = false;
  Index rank = 0;
  double max_deviation = 0.0;

  bool passed() const { return injective && preserves_form; }
};

// Checks that K restricted to S is injective and carries Delta_B to Delta_A.
inline FormPreservationReport verify_form_preservation(const SymplecticSpace& space_a,
                                                       const SymplecticSpace& space_b,
                                                       const Matrix& k, const Subspace& s,
                                                       const Tolerance& tol = {}) {
  if (k.rows() != space_a.dim() || k.cols() != space_b.dim())
    throw InvalidArgument("verify_form_preservation: K must be 2s_A x 2s_B");
  check_dims(space_b, s, "verify_form_preservation");
  FormPreservationReport rep;
  const Matrix images = k * s.basis();
  rep.rank = linalg::numerical_rank(images, tol.rank_rel);
  rep.injective = rep.rank == s.rank();
  rep.max_deviation =
      linalg::max_abs(skew_gram(space_a, images) - skew_gram(space_b, s.basis()));
  rep.preserves_form = rep.max_deviation <= tol.form;
  return rep;
}

// Symplectic T on the whole space agreeing with the partial map on its
// domain. With Q = [domain basis | orthonormal complement], image columns
// u_j are added one at a time subject to Delta(u_i, u_j) = Delta(q_i, q_j)
// for all earlier i (Witt extension). Among the solutions, u_j is the one
// closest to q_j. Then U^T Delta U = Q^T Delta Q and T = U Q^T. Q is
// orthogonal, so no inverse is formed and T stays as well conditioned as the
// images allow, even when the domain is nearly degenerate.
inline Matrix extend_partial_symplectic_map(const SymplecticSpace& space,
                                            const PartialSymplecticMap& pmap,
                                            const Tolerance& tol = {}) {
  check_dims(space, pmap.domain, "extend_partial_symplectic_map");
  if (pmap.images.rows() != space.dim() || pmap.images.cols() != pmap.domain.rank())
    throw InvalidArgument("extend_partial_symplectic_map: images must be 2s x rank(domain)");
  const auto check = verify_form_preservation(space, space, pmap.images * pmap.domain.basis().transpose(),
                                              pmap.domain, tol);
  if (!check.injective)
    throw FormNotPreserved("extend_partial_symplectic_map: map is not injective on its domain");
  if (!check.preserves_form) {
    std::ostringstream msg;
    msg << "extend_partial_symplectic_map: form not preserved, max deviation "
        << check.max_deviation;
    throw FormNotPreserved(msg.str());
  }

  const Index n = space.dim();
  const Index r = pmap.domain.rank();
  Matrix q(n, n);
  q.leftCols(r) = pmap.domain.basis();
  q.rightCols(n - r) = linalg::null_space(pmap.domain.basis().transpose(), tol.rank_rel);
  Matrix u(n, n);
  u.leftCols(r) = pmap.images;
  const Matrix& delta = space.form();
  for (Index j = r; j < n; ++j) {
    const Matrix a = u.leftCols(j).transpose() * delta;
    const Vector b = q.leftCols(j).transpose() * (delta * q.col(j));
    const auto x0 = linalg::min_norm_solve(a, b, tol.rank_rel, tol.form);
    if (!x0) throw InternalConsistency("extend_partial_symplectic_map: pairing system unsolvable");
    const Matrix free = linalg::null_space(a, tol.rank_rel);
    u.col(j) = *x0 + free * (free.transpose() * (q.col(j) - *x0));
  }
  if (linalg::numerical_rank(u, tol.rank_rel) < n)
    throw InternalConsistency("extend_partial_symplectic_map: image basis is singular");
  return u * q.transpose();
}

}  // namespace bosonic

#endif  // BOSONIC_SYMPLECTIC_HPP_
