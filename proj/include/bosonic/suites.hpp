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

#ifndef BOSONIC_SUITES_HPP_
#define BOSONIC_SUITES_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "bosonic/channel.hpp"
#include "bosonic/decomp.hpp"
#include "bosonic/errors.hpp"
#include "bosonic/gridsim.hpp"
#include "bosonic/random.hpp"
#include "bosonic/region.hpp"
#include "bosonic/symplectic.hpp"

// Seeded verification suites. Reports contain no timings so that reruns
// with the same seed are byte-identical.
namespace bosonic::suites {

struct Options {
  Index grid_n = 0;  // 0: the suite's own default
  double grid_length = 20.0;
  std::optional<double> tol;  // replaces every tolerance-type bound
  std::uint64_t seed = 1;
};

// value <= bound passes. Count metrics have bound 0 and ignore --tol.
struct Metric {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool is_tolerance = true;

  bool passed() const { return value <= bound; }
};

struct Report {
  std::string suite;
  Options options;
  Index grid_n = 0;
  std::vector<Metric> metrics;

  bool passed() const {
    return std::all_of(metrics.begin(), metrics.end(), [](const Metric& m) { return m.passed(); });
  }
  const Metric& at(const std::string& name) const {
    for (const auto& m : metrics)
      if (m.name == name) return m;
    throw InvalidArgument("no metric named '" + name + "'");
  }

  std::string render() const {
    std::string out;
    char buf[256];
    out += "suite " + suite + "\n";
    std::snprintf(buf, sizeof buf, "seed %llu\n", static_cast<unsigned long long>(options.seed));
    out += buf;
    if (grid_n > 0) {
      std::snprintf(buf, sizeof buf, "grid %lld points, length %.6g\n", static_cast<long long>(grid_n),
                    options.grid_length);
      out += buf;
    }
    for (const auto& m : metrics) {
      std::snprintf(buf, sizeof buf, "%-36s %.6e <= %.6e  %s\n", m.name.c_str(), m.value, m.bound,
                    m.passed() ? "pass" : "FAIL");
      out += buf;
    }
    out += passed() ? "result pass\n" : "result FAIL\n";
    return out;
  }
};

namespace detail {

class Builder {
 public:
  Builder(std::string suite, const Options& opt, Index grid_n) : opt_(opt) {
    rep_.suite = std::move(suite);
    rep_.options = opt;
    rep_.grid_n = grid_n;
  }
  void tolerance(const std::string& name, double value, double bound) {
    rep_.metrics.push_back({name, value, opt_.tol ? *opt_.tol : bound, true});
  }
  void count(const std::string& name, Index failures) {
    rep_.metrics.push_back({name, static_cast<double>(failures), 0.0, false});
  }
  Report done() { return std::move(rep_); }

 private:
  Options opt_;
  Report rep_;
};

}  // namespace detail

// Partial symplectic maps restricted from a random symplectic T_true to a
// random subspace; the extension must be symplectic and agree on the domain.
inline Report symplectic_suite(const Options& opt) {
  random::Rng rng(opt.seed);
  detail::Builder b("symplectic", opt, 0);
  double residual = 0.0;
  double domain_err = 0.0;
  Index errors = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index s = random::uniform_index(rng, 1, 3);
    const SymplecticSpace space(s);
    const Matrix t_true = random::random_symplectic(rng, s);
    const Index r = random::uniform_index(rng, 1, 2 * s);
    const Subspace dom = Subspace::span(random::gaussian_matrix(rng, 2 * s, r));
    try {
      const Matrix t = extend_partial_symplectic_map(space, {dom, t_true * dom.basis()});
      residual = std::max(residual, symplectic_residual(space, t));
      for (Index c = 0; c < dom.rank(); ++c)
        domain_err = std::max(domain_err, ((t - t_true) * dom.basis().col(c)).norm());
    } catch (const std::exception&) {
      ++errors;
    }
  }
  b.tolerance("extension_symplectic_residual", residual, 1e-9);
  b.tolerance("extension_domain_error", domain_err, 1e-9);
  b.count("extension_exceptions", errors);

  // Completion from a random consistent subset of a symplectic basis.
  double completion = 0.0;
  Index kept_mismatch = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index s = random::uniform_index(rng, 1, 4);
    const SymplecticSpace space(s);
    const Matrix full = random::random_symplectic(rng, s);
    std::vector<CanonicalVector> given;
    for (Index i = 0; i < s; ++i) {
      if (random::uniform(rng, 0, 1) < 0.5) given.push_back({full.col(2 * i), CanonicalRole::kE, i});
      if (random::uniform(rng, 0, 1) < 0.5) given.push_back({full.col(2 * i + 1), CanonicalRole::kH, i});
    }
    const Matrix out = complete_symplectic_basis(space, given);
    completion = std::max(completion, symplectic_residual(space, out));
    for (const auto& g : given) {
      const Index col = 2 * g.slot + (g.role == CanonicalRole::kH ? 1 : 0);
      if ((out.col(col) - g.v).norm() > 1e-12) ++kept_mismatch;
    }
  }
  b.tolerance("completion_symplectic_residual", completion, 1e-9);
  b.count("completion_moved_given_vectors", kept_mismatch);

  Index involution = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index s = random::uniform_index(rng, 1, 3);
    const SymplecticSpace space(s);
    const Index r = random::uniform_index(rng, 0, 2 * s);
    const Subspace sub = r ? Subspace::span(random::gaussian_matrix(rng, 2 * s, r)) : Subspace::zero(2 * s);
    const Subspace perp = skew_complement(space, sub);
    if (perp.rank() != 2 * s - sub.rank() || !skew_complement(space, perp).same_as(sub)) ++involution;
  }
  b.count("skew_complement_involution_failures", involution);
  return b.done();
}

inline Report gaussian_suite(const Options& opt) {
  random::Rng rng(opt.seed);
  detail::Builder b("gaussian", opt, 0);

  Index dim_mismatch = 0;
  Index space_mismatch = 0;
  Index form_failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index kind = random::uniform_index(rng, 0, 2);
    const Index iso = kind == 0 ? 1 : kind == 1 ? 2 : 0;
    const Index sym = kind == 2 ? 1 : 0;
    const Index lo = iso + sym;
    const Index sa = random::uniform_index(rng, lo, 3);
    const Index sb = random::uniform_index(rng, lo, 3);
    const auto inst = random::forced_kernel_spec(rng, sa, sb, iso, sym);
    const Subspace zf = compute_zf(inst.spec);
    if (zf.rank() != inst.expected_zf.rank()) ++dim_mismatch;
    if (!zf.same_as(inst.expected_zf, 1e-7)) ++space_mismatch;
    if (!verify_form_preservation(inst.spec.space_in(), inst.spec.space_out(), inst.spec.k, zf).passed())
      ++form_failures;
  }
  b.count("forced_kernel_dim_mismatches", dim_mismatch);
  b.count("forced_kernel_subspace_mismatches", space_mismatch);
  b.count("restriction_form_failures", form_failures);

  double deficit = 0.0;
  Index invalid_specs = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random::random_valid_spec(rng, 3);
    if (!validate_gaussian(inst.spec).valid) {
      ++invalid_specs;
      continue;
    }
    const auto st = random::random_state(rng, inst.spec.modes_in);
    const auto out = gaussian_state_push(inst.spec, st);
    deficit = std::max(deficit, -state_min_eigenvalue(out));
  }
  b.count("random_specs_rejected", invalid_specs);
  b.tolerance("push_eigenvalue_deficit", std::max(0.0, deficit), 1e-8);

  Index matched_fail = 0;
  Index mismatched_pass = 0;
  for (Index s = 1; s <= 3; ++s) {
    const auto id = identity_channel(s);
    const auto vac = constant_channel(s, s, 0.5 * Matrix::Identity(2 * s, 2 * s));
    if (!duality_check(id, vac).passed()) ++matched_fail;
    if (duality_check(id, id).passed()) ++mismatched_pass;
  }
  b.count("duality_matched_pair_failures", matched_fail);
  b.count("duality_mismatched_pair_passes", mismatched_pass);
  return b.done();
}

namespace detail {

struct DirectSumMetrics {
  double mass_deficit = 0.0;
  double infidelity = 0.0;
};

// Invariance and reversibility over `per_region` random states per region,
// alternating pure and rank-3.
inline DirectSumMetrics direct_sum_checks(random::Rng& rng, const Grid& grid, const GridChannel& ch,
                                          const DecompositionPlan& plan, int per_region) {
  const auto& regions = plan.cylinders.regions;
  std::vector<std::vector<GridState>> states(regions.size());
  for (std::size_t k = 0; k < regions.size(); ++k)
    for (int j = 0; j < per_region; ++j)
      states[k].push_back(random::state_in_region(rng, grid, regions[k], j % 2 == 0 ? 1 : 3));
  DirectSumMetrics m;
  for (int j = 0; j < per_region; ++j) {
    std::vector<GridState> anchors;
    for (auto& per : states) anchors.push_back(per[static_cast<std::size_t>(j)]);
    const auto psi = build_reversing_channel(plan, anchors);
    for (std::size_t k = 0; k < regions.size(); ++k) {
      const GridState& rho = states[k][static_cast<std::size_t>(j)];
      const GridState out = apply(ch, rho);
      m.mass_deficit = std::max(m.mass_deficit, 1.0 - support_mass(out, regions[k]));
      m.infidelity = std::max(m.infidelity, 1.0 - fidelity(psi.apply(out), rho));
    }
  }
  m.mass_deficit = std::max(0.0, m.mass_deficit);
  m.infidelity = std::max(0.0, m.infidelity);
  return m;
}

}  // namespace detail

// Random momentum kicks, c = 1, regions split at 0 and then refined.
inline Report family_a_suite(const Options& opt) {
  const Index n = opt.grid_n > 0 ? opt.grid_n : 512;
  const double c = 1.0;
  random::Rng rng(opt.seed);
  detail::Builder b("familyA", opt, n);
  const Grid grid(n, opt.grid_length);
  const auto spec = family_a_spec(c);
  const auto ch = family_a_channel(grid, c);
  b.tolerance("kraus_completeness_defect", ch.completeness_defect(), 1e-10);

  const double cut = 0.0;
  const auto plan = build_prop1_plan(spec, CylinderDecomposition::split_first_axis(1, {&cut, 1}));
  b.count("plan_not_grid_realizable", plan.grid_realizable() ? 0 : 1);
  const auto two = detail::direct_sum_checks(rng, grid, ch, plan, 20);
  b.tolerance("invariance_mass_deficit", two.mass_deficit, 1e-10);
  b.tolerance("reversibility_infidelity", two.infidelity, 1e-8);

  const std::vector<Region> parts = {Region::interval(0.0, 1.0), Region::interval(1.0, kInf)};
  const auto refined = refine_plan(plan, 1, parts);
  const auto three = detail::direct_sum_checks(rng, grid, ch, refined, 20);
  b.tolerance("refined_invariance_mass_deficit", three.mass_deficit, 1e-10);
  b.tolerance("refined_reversibility_infidelity", three.infidelity, 1e-8);

  // Output moments against the Gaussian push of the measured input moments.
  double moment_err = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const CVector psi = wavepacket(grid, random::uniform(rng, -2.0, 2.0), random::uniform(rng, 0.7, 1.3),
                                   random::uniform(rng, -1.0, 1.0), random::uniform(rng, -0.2, 0.2));
    const GridState rho = GridState::pure(grid, psi);
    const auto expected = gaussian_state_push(spec, grid_moments(rho));
    const auto got = grid_moments(apply(ch, rho));
    moment_err = std::max({moment_err, (got.mean - expected.mean).cwiseAbs().maxCoeff(),
                           (got.cov - expected.cov).cwiseAbs().maxCoeff()});
  }
  b.tolerance("moment_error", moment_err, 1e-3);
  return b.done();
}

// Position measurement followed by a re-prepared wavepacket; K has rank 1.
inline Report family_b_suite(const Options& opt) {
  const Index n = opt.grid_n > 0 ? opt.grid_n : 256;
  const double u = 0.5;
  const double width = 1.0;
  random::Rng rng(opt.seed);
  detail::Builder b("familyB", opt, n);
  const Grid grid(n, opt.grid_length);
  const auto spec = family_b_spec(u, width);
  const auto ch = family_b_channel(grid, u, width);
  b.tolerance("kraus_completeness_defect", ch.completeness_defect(), 1e-10);

  const double cut = 0.0;
  const auto cyl = CylinderDecomposition::split_first_axis(1, {&cut, 1});
  const Index trunc = 16;
  std::vector<FinitePermutation> perms;
  for (int i = 0; i < 2; ++i) {
    FinitePermutation p(static_cast<std::size_t>(trunc));
    for (Index k = 0; k < trunc; ++k) p[static_cast<std::size_t>(k)] = k;
    std::shuffle(p.begin(), p.end(), rng);
    perms.push_back(std::move(p));
  }
  const auto plan = build_cq_plan(spec, default_cq_subspace(spec), cyl, BasisChoice::kIndicatorLocalized, perms);
  const auto real = realize(plan, grid, trunc);

  // States inside one block; the expected output uses sigma^i_k = Phi(|e><e|).
  double cq_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Index k = random::uniform_index(rng, 0, trunc - 1);
    const auto blk = real.block(k);
    CMatrix v(n, static_cast<Index>(blk.size()));
    for (std::size_t c = 0; c < blk.size(); ++c) v.col(static_cast<Index>(c)) = real.vector(blk[c].first, blk[c].second);
    const Index rank = trial % 2 == 0 ? 1 : 2;
    std::vector<CVector> psis;
    std::vector<double> probs;
    for (Index r = 0; r < rank; ++r) {
      psis.push_back(v * random::complex_gaussian_vector(rng, v.cols()));
      probs.push_back(random::uniform(rng, 0.2, 1.0));
    }
    const GridState rho = GridState::mixture(grid, psis, probs);
    CMatrix expected = CMatrix::Zero(n, n);
    for (Index c = 0; c < v.cols(); ++c) {
      const CVector e = v.col(c);
      const double w = e.dot(rho.matrix() * e).real();
      expected += w * apply_kraus(ch, e * e.adjoint());
    }
    cq_err = std::max(cq_err, trace_norm_distance(apply(ch, rho).matrix(), expected));
  }
  b.tolerance("cq_trace_distance", cq_err, 1e-8);

  double cross = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Index a = random::uniform_index(rng, -8, 8);
    const Index bb = random::uniform_index(rng, -8, 8);
    const Vector z = lattice_displacement(grid, a, bb);
    cross = std::max(cross, max_cross_element(real, weyl_at(grid, spec.k * z)));
  }
  b.tolerance("cross_orthogonality", cross, 1e-8);

  // Full-support inputs through the pinching of the complete plan.
  const auto full_plan = build_cq_plan(spec, default_cq_subspace(spec), cyl);
  const auto full = realize(full_plan, grid);
  const auto eval = cq_channel_of(full, outputs_from_channel(ch, full));
  double pinched = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const GridState rho = random::full_rank_state(rng, grid);
    const GridState p = pinch(full, rho);
    pinched = std::max(pinched, trace_norm_distance(apply(ch, p).matrix(), eval(p)));
  }
  b.tolerance("pinched_cq_trace_distance", pinched, 1e-8);
  return b.done();
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"symplectic", "gaussian", "familyA", "familyB"};
  return names;
}

inline Report run(const std::string& name, const Options& opt) {
  if (name == "symplectic") return symplectic_suite(opt);
  if (name == "gaussian") return gaussian_suite(opt);
  if (name == "familyA") return family_a_suite(opt);
  if (name == "familyB") return family_b_suite(opt);
  throw InvalidArgument("unknown suite '" + name + "' (expected symplectic, gaussian, familyA or familyB)");
}

}  // namespace bosonic::suites

#endif  // BOSONIC_SUITES_HPP_
