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

#ifndef BOSONIC_SERIALIZE_HPP_
#define BOSONIC_SERIALIZE_HPP_

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bosonic/channel.hpp"
#include "bosonic/decomp.hpp"
#include "bosonic/errors.hpp"
#include "bosonic/region.hpp"
#include "bosonic/symplectic.hpp"

namespace bosonic {

using Json = nlohmann::json;

// Malformed input document; the message names the line/column or field.
class ParseError : public InvalidArgument {
 public:
  explicit ParseError(const std::string& what) : InvalidArgument(what) {}
};

namespace io {

// Rounds to 12 significant digits.
inline double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline Json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline double read_number(const Json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ParseError("field '" + field + "': expected a number");
}

inline Json matrix(const Matrix& m, bool rounded = false) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(rounded ? round12(m(i, j)) : m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json vector(const Vector& v, bool rounded = false) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(rounded ? round12(v(i)) : v(i));
  return out;
}

// Column-less matrices have no row content to infer width from, so the
// expected shape is passed in.
inline Matrix read_matrix(const Json& j, const std::string& field, Index rows, Index cols) {
  if (!j.is_array()) throw ParseError("field '" + field + "': expected an array of rows");
  if (static_cast<Index>(j.size()) != rows)
    throw ParseError("field '" + field + "': expected " + std::to_string(rows) + " rows, got " +
                     std::to_string(j.size()));
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw ParseError("field '" + field + "': row " + std::to_string(i) + " must have " +
                       std::to_string(cols) + " entries");
    for (Index c = 0; c < cols; ++c)
      m(i, c) = read_number(row[static_cast<std::size_t>(c)],
                            field + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
  }
  return m;
}

inline Vector read_vector(const Json& j, const std::string& field, Index len) {
  if (!j.is_array() || static_cast<Index>(j.size()) != len)
    throw ParseError("field '" + field + "': expected an array of length " + std::to_string(len));
  Vector v(len);
  for (Index i = 0; i < len; ++i)
    v(i) = read_number(j[static_cast<std::size_t>(i)], field + "[" + std::to_string(i) + "]");
  return v;
}

inline const Json& require(const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains(field)) throw ParseError("missing field '" + field + "'");
  return j.at(field);
}

inline Index read_positive(const Json& j, const std::string& field) {
  const Json& v = require(j, field);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw ParseError("field '" + field + "': expected a positive integer");
  return static_cast<Index>(v.get<long long>());
}

inline Index read_count(const Json& j, const std::string& field) {
  const Json& v = require(j, field);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError("field '" + field + "': expected a non-negative integer");
  return static_cast<Index>(v.get<long long>());
}

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace io

// ---------------------------------------------------------------------------
// Channel-spec files:
//   {"modes_in": 1, "modes_out": 1, "K": [[1,0],[0,1]], "l": [0,0],
//    "alpha": [[0,0],[0,1]]}

inline Json to_json(const GaussianChannelSpec& spec) {
  return Json{{"modes_in", spec.modes_in},
              {"modes_out", spec.modes_out},
              {"K", io::matrix(spec.k)},
              {"l", io::vector(spec.l)},
              {"alpha", io::matrix(spec.alpha)}};
}

inline GaussianChannelSpec channel_spec_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("channel spec: top level must be an object");
  GaussianChannelSpec spec;
  spec.modes_in = io::read_positive(j, "modes_in");
  spec.modes_out = io::read_positive(j, "modes_out");
  spec.k = io::read_matrix(io::require(j, "K"), "K", 2 * spec.modes_in, 2 * spec.modes_out);
  spec.l = io::read_vector(io::require(j, "l"), "l", 2 * spec.modes_out);
  spec.alpha = io::read_matrix(io::require(j, "alpha"), "alpha", 2 * spec.modes_out,
                               2 * spec.modes_out);
  try {
    spec.check_shapes();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  return spec;
}

inline GaussianChannelSpec parse_channel_spec(const std::string& text) {
  return channel_spec_from_json(io::parse_text(text));
}

inline GaussianChannelSpec load_channel_spec(const std::string& path) {
  return parse_channel_spec(io::read_file(path));
}

// ---------------------------------------------------------------------------
// Regions and plans.

inline Json to_json(const Region& r) {
  Json boxes = Json::array();
  for (const auto& b : r.boxes) {
    Json axes = Json::array();
    for (const auto& iv : b.axes) axes.push_back(Json::array({io::number(iv.lo), io::number(iv.hi)}));
    boxes.push_back(std::move(axes));
  }
  return Json{{"dim", r.dim}, {"boxes", std::move(boxes)}};
}

inline Region region_from_json(const Json& j) {
  Region r;
  r.dim = io::read_positive(j, "dim");
  const Json& boxes = io::require(j, "boxes");
  if (!boxes.is_array()) throw ParseError("field 'boxes': expected an array");
  for (const auto& bj : boxes) {
    if (!bj.is_array() || static_cast<Index>(bj.size()) != r.dim)
      throw ParseError("field 'boxes': each box needs one interval per axis");
    Box b;
    for (const auto& iv : bj) {
      if (!iv.is_array() || iv.size() != 2) throw ParseError("field 'boxes': interval must be [lo, hi]");
      b.axes.push_back({io::read_number(iv[0], "lo"), io::read_number(iv[1], "hi")});
    }
    r.boxes.push_back(std::move(b));
  }
  return r;
}

inline Json to_json(const CylinderDecomposition& c) {
  Json regs = Json::array();
  for (const auto& r : c.regions) regs.push_back(to_json(r));
  return Json{{"dim", c.dim}, {"regions", std::move(regs)}};
}

inline CylinderDecomposition cylinders_from_json(const Json& j) {
  CylinderDecomposition c;
  c.dim = io::read_positive(j, "dim");
  const Json& regs = io::require(j, "regions");
  if (!regs.is_array()) throw ParseError("field 'regions': expected an array");
  for (const auto& rj : regs) c.regions.push_back(region_from_json(rj));
  try {
    c.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  return c;
}

inline Subspace subspace_from_json(const Json& j, const std::string& field, Index ambient, Index rank) {
  const Matrix b = io::read_matrix(j, field, ambient, rank);
  try {
    return Subspace::from_orthonormal(b);
  } catch (const InvalidArgument& e) {
    throw ParseError("field '" + field + "': " + e.what());
  }
}

inline Json to_json(const DecompositionPlan& p) {
  return Json{{"kind", "direct_sum"},
              {"modes_in", p.modes_in},
              {"modes_out", p.modes_out},
              {"d", p.d},
              {"zf_iso", io::matrix(p.zf_iso.basis())},
              {"adapted_basis_b", io::matrix(p.adapted_basis_b)},
              {"adapted_basis_a", io::matrix(p.adapted_basis_a)},
              {"t", io::matrix(p.t)},
              {"cylinders", to_json(p.cylinders)},
              {"aligned", p.aligned}};
}

inline DecompositionPlan decomposition_plan_from_json(const Json& j) {
  if (!j.is_object() || j.value("kind", "") != "direct_sum")
    throw ParseError("plan: expected kind 'direct_sum'");
  DecompositionPlan p;
  p.modes_in = io::read_positive(j, "modes_in");
  p.modes_out = io::read_positive(j, "modes_out");
  p.d = io::read_count(j, "d");
  const Index da = 2 * p.modes_in;
  const Index db = 2 * p.modes_out;
  p.zf_iso = subspace_from_json(io::require(j, "zf_iso"), "zf_iso", db, p.d);
  p.adapted_basis_b = io::read_matrix(io::require(j, "adapted_basis_b"), "adapted_basis_b", db, db);
  p.adapted_basis_a = io::read_matrix(io::require(j, "adapted_basis_a"), "adapted_basis_a", da, da);
  p.t = io::read_matrix(io::require(j, "t"), "t", da, db);
  p.cylinders = cylinders_from_json(io::require(j, "cylinders"));
  const Json& al = io::require(j, "aligned");
  if (!al.is_boolean()) throw ParseError("field 'aligned': expected a boolean");
  p.aligned = al.get<bool>();
  return p;
}

inline std::string to_string(BasisChoice b) {
  return b == BasisChoice::kIndicatorLocalized ? "indicator-localized" : "windowed-Hermite";
}

inline BasisChoice basis_choice_from_string(const std::string& s) {
  if (s == "indicator-localized") return BasisChoice::kIndicatorLocalized;
  if (s == "windowed-Hermite") return BasisChoice::kWindowedHermite;
  throw ParseError("unknown basis choice '" + s + "'");
}

inline Json to_json(const CqPlan& p) {
  Json perms = Json::array();
  for (const auto& perm : p.permutations) perms.push_back(perm);
  return Json{{"kind", "cq"},
              {"modes_in", p.modes_in},
              {"d", p.d},
              {"z0", io::matrix(p.z0.basis())},
              {"cylinders", to_json(p.cylinders)},
              {"basis_choice", to_string(p.basis_choice)},
              {"permutations", std::move(perms)}};
}

inline CqPlan cq_plan_from_json(const Json& j) {
  if (!j.is_object() || j.value("kind", "") != "cq") throw ParseError("plan: expected kind 'cq'");
  CqPlan p;
  p.modes_in = io::read_positive(j, "modes_in");
  p.d = io::read_positive(j, "d");
  p.z0 = subspace_from_json(io::require(j, "z0"), "z0", 2 * p.modes_in, p.d);
  p.cylinders = cylinders_from_json(io::require(j, "cylinders"));
  const Json& bc = io::require(j, "basis_choice");
  if (!bc.is_string()) throw ParseError("field 'basis_choice': expected a string");
  p.basis_choice = basis_choice_from_string(bc.get<std::string>());
  const Json& perms = io::require(j, "permutations");
  if (!perms.is_array() || static_cast<Index>(perms.size()) != p.cylinders.size())
    throw ParseError("field 'permutations': need one array per region");
  for (const auto& pj : perms) {
    if (!pj.is_array()) throw ParseError("field 'permutations': expected index arrays");
    FinitePermutation perm;
    for (const auto& v : pj) {
      if (!v.is_number_integer()) throw ParseError("field 'permutations': indices must be integers");
      perm.push_back(static_cast<Index>(v.get<long long>()));
    }
    if (!is_bijection(perm)) throw ParseError("field 'permutations': not a bijection");
    p.permutations.push_back(std::move(perm));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Analysis reports.

struct AnalysisReport {
  GaussianChannelSpec spec;
  ValidityReport validity;
  DegeneracyReport degeneracy;
  std::string summary;
};

inline std::string classification_summary(const DegeneracyReport& d) {
  std::ostringstream s;
  const bool iso = d.zf_isotropic_part.rank() > 0;
  if (!d.type1 && !d.type2) return "no degeneracy";
  if (d.type1 && d.type2) s << "type-1 and type-2 degeneracy";
  else if (d.type1) s << "type-1 degeneracy";
  else s << "type-2 degeneracy";
  if (d.type1) {
    if (iso)
      s << "; direct-sum decomposition and reversing channel apply";
    else
      s << "; Z_f is symplectic, so the direct-sum decomposition needs an explicit isotropic "
           "subspace of Z_f";
  }
  if (d.type2) s << "; discrete c-q decomposition and pinching apply";
  s << "; dim Z_f = " << d.dim_zf << "; rank K = " << d.rank_k;
  return s.str();
}

inline AnalysisReport analyze(const GaussianChannelSpec& spec, const Tolerance& tol = {}) {
  AnalysisReport r;
  r.spec = spec;
  r.validity = validate_gaussian(spec, tol);
  r.degeneracy = classify(spec, tol);
  r.summary = classification_summary(r.degeneracy);
  return r;
}

inline Json to_json(const AnalysisReport& r) {
  auto rounded_spec = to_json(r.spec);
  rounded_spec["K"] = io::matrix(r.spec.k, true);
  rounded_spec["l"] = io::vector(r.spec.l, true);
  rounded_spec["alpha"] = io::matrix(r.spec.alpha, true);
  const auto& d = r.degeneracy;
  return Json{
      {"spec", std::move(rounded_spec)},
      {"valid", r.validity.valid},
      {"min_eigenvalue", io::round12(r.validity.min_eigenvalue)},
      {"dim_zf", d.dim_zf},
      {"zf_basis", io::matrix(d.zf.basis(), true)},
      {"zf_isotropic_dim", d.zf_isotropic_part.rank()},
      {"zf_isotropic_basis", io::matrix(d.zf_isotropic_part.basis(), true)},
      {"zf_symplectic_dim", d.zf_symplectic_part.rank()},
      {"zf_symplectic_basis", io::matrix(d.zf_symplectic_part.basis(), true)},
      {"rank_k", d.rank_k},
      {"corank_k", d.corank_k},
      {"ran_k_perp_dim", d.ran_k_perp.rank()},
      {"ran_k_perp_basis", io::matrix(d.ran_k_perp.basis(), true)},
      {"type1", d.type1},
      {"type2", d.type2},
      {"l_vanishes_on_zf", d.l_vanishes_on_zf},
      {"l_on_zf_max", io::round12(d.l_on_zf_max)},
      {"summary", r.summary}};
}

inline AnalysisReport analysis_report_from_json(const Json& j) {
  AnalysisReport r;
  r.spec = channel_spec_from_json(io::require(j, "spec"));
  const Index da = 2 * r.spec.modes_in;
  const Index db = 2 * r.spec.modes_out;
  auto boolean = [&](const std::string& f) {
    const Json& v = io::require(j, f);
    if (!v.is_boolean()) throw ParseError("field '" + f + "': expected a boolean");
    return v.get<bool>();
  };
  r.validity.valid = boolean("valid");
  r.validity.min_eigenvalue = io::read_number(io::require(j, "min_eigenvalue"), "min_eigenvalue");
  auto& d = r.degeneracy;
  d.dim_zf = io::read_count(j, "dim_zf");
  d.zf = subspace_from_json(io::require(j, "zf_basis"), "zf_basis", db, d.dim_zf);
  d.zf_isotropic_part = subspace_from_json(io::require(j, "zf_isotropic_basis"), "zf_isotropic_basis",
                                           db, io::read_count(j, "zf_isotropic_dim"));
  d.zf_symplectic_part = subspace_from_json(io::require(j, "zf_symplectic_basis"),
                                            "zf_symplectic_basis", db,
                                            io::read_count(j, "zf_symplectic_dim"));
  d.rank_k = io::read_count(j, "rank_k");
  d.corank_k = io::read_count(j, "corank_k");
  d.ran_k_perp = subspace_from_json(io::require(j, "ran_k_perp_basis"), "ran_k_perp_basis", da,
                                    io::read_count(j, "ran_k_perp_dim"));
  d.type1 = boolean("type1");
  d.type2 = boolean("type2");
  d.l_vanishes_on_zf = boolean("l_vanishes_on_zf");
  d.l_on_zf_max = io::read_number(io::require(j, "l_on_zf_max"), "l_on_zf_max");
  const Json& s = io::require(j, "summary");
  if (!s.is_string()) throw ParseError("field 'summary': expected a string");
  r.summary = s.get<std::string>();
  return r;
}

namespace io {

inline std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

inline std::string basis_lines(const Matrix& b) {
  std::ostringstream s;
  for (Index j = 0; j < b.cols(); ++j) {
    s << "  [";
    for (Index i = 0; i < b.rows(); ++i) s << (i ? ", " : "") << fmt12(b(i, j));
    s << "]\n";
  }
  return s.str();
}

}  // namespace io

inline std::string render_text(const AnalysisReport& r) {
  const auto& d = r.degeneracy;
  std::ostringstream s;
  s << "modes: in " << r.spec.modes_in << ", out " << r.spec.modes_out << "\n";
  s << "valid: " << (r.validity.valid ? "yes" : "no") << " (min eigenvalue "
    << io::fmt12(r.validity.min_eigenvalue) << ")\n";
  s << "dim Z_f = " << d.dim_zf << " (isotropic part " << d.zf_isotropic_part.rank()
    << ", symplectic part " << d.zf_symplectic_part.rank() << ")\n";
  if (d.dim_zf > 0) {
    s << "Z_f basis:\n" << io::basis_lines(d.zf.basis());
    s << "l vanishes on Z_f: " << (d.l_vanishes_on_zf ? "yes" : "no") << " (max |l.z| "
      << io::fmt12(d.l_on_zf_max) << ")\n";
  }
  s << "rank K = " << d.rank_k << " (corank " << d.corank_k << ")\n";
  if (d.ran_k_perp.rank() > 0) s << "[Ran K]^perp basis:\n" << io::basis_lines(d.ran_k_perp.basis());
  s << "classification: " << r.summary << "\n";
  return s.str();
}

}  // namespace bosonic

#endif  // BOSONIC_SERIALIZE_HPP_
