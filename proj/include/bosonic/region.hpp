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

#ifndef BOSONIC_REGION_HPP_
#define BOSONIC_REGION_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "bosonic/errors.hpp"
#include "bosonic/linalg.hpp"

namespace bosonic {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Half-open interval [lo, hi); lo = -inf makes it open on the left.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double x) const { return lo <= x && x < hi; }
  bool empty() const { return !(lo < hi); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Box {
  std::vector<Interval> axes;

  Index dim() const { return static_cast<Index>(axes.size()); }
  bool contains(std::span<const double> x) const {
    for (std::size_t a = 0; a < axes.size(); ++a)
      if (!axes[a].contains(x[a])) return false;
    return true;
  }
  bool empty() const {
    return std::any_of(axes.begin(), axes.end(), [](const Interval& i) { return i.empty(); });
  }
  bool intersects(const Box& o) const {
    for (std::size_t a = 0; a < axes.size(); ++a)
      if (!(std::max(axes[a].lo, o.axes[a].lo) < std::min(axes[a].hi, o.axes[a].hi))) return false;
    return true;
  }
  friend bool operator==(const Box&, const Box&) = default;
};

// Finite union of pairwise disjoint boxes in R^d.
struct Region {
  Index dim = 1;
  std::vector<Box> boxes;

  static Region interval(double lo, double hi) { return {1, {Box{{Interval{lo, hi}}}}}; }
  static Region everything(Index d) { return {d, {Box{std::vector<Interval>(d)}}}; }

  bool contains(std::span<const double> x) const {
    return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(x); });
  }
  bool contains(double x) const { return contains(std::span<const double>(&x, 1)); }
  bool intersects(const Region& o) const {
    for (const auto& a : boxes)
      for (const auto& b : o.boxes)
        if (a.intersects(b)) return true;
    return false;
  }

  void validate() const {
    if (dim < 1) throw InvalidArgument("Region: dimension must be >= 1");
    if (boxes.empty()) throw InvalidArgument("Region: no boxes (zero measure)");
    for (const auto& b : boxes) {
      if (b.dim() != dim) throw InvalidArgument("Region: box dimension mismatch");
      if (b.empty()) throw InvalidArgument("Region: box with empty axis interval");
    }
    for (std::size_t i = 0; i < boxes.size(); ++i)
      for (std::size_t j = i + 1; j < boxes.size(); ++j)
        if (boxes[i].intersects(boxes[j])) throw InvalidArgument("Region: overlapping boxes");
  }
  friend bool operator==(const Region&, const Region&) = default;
};

namespace detail {

// Points at which membership in any of the regions can change, per axis:
// every finite box bound, midpoints between consecutive bounds, and one
// point beyond each end. Membership in a union of half-open boxes is
// constant on each cell of this grid, so testing the probes is exact.
inline std::vector<std::vector<double>> probe_axes(std::span<const Region> regions, Index dim) {
  std::vector<std::vector<double>> axes(static_cast<std::size_t>(dim));
  for (Index a = 0; a < dim; ++a) {
    std::vector<double> br;
    for (const auto& r : regions)
      for (const auto& b : r.boxes)
        for (double v : {b.axes[a].lo, b.axes[a].hi})
          if (std::isfinite(v)) br.push_back(v);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    auto& pr = axes[a];
    if (br.empty()) {
      pr.push_back(0.0);
      continue;
    }
    pr.push_back(br.front() - 1.0);
    for (std::size_t i = 0; i < br.size(); ++i) {
      pr.push_back(br[i]);
      if (i + 1 < br.size()) pr.push_back(0.5 * (br[i] + br[i + 1]));
    }
    pr.push_back(br.back() + 1.0);
  }
  return axes;
}

inline void for_each_probe(const std::vector<std::vector<double>>& axes,
                           const std::function<void(std::span<const double>)>& fn) {
  std::vector<std::size_t> idx(axes.size(), 0);
  std::vector<double> pt(axes.size());
  while (true) {
    for (std::size_t a = 0; a < axes.size(); ++a) pt[a] = axes[a][idx[a]];
    fn(pt);
    std::size_t a = 0;
    while (a < axes.size() && ++idx[a] == axes[a].size()) idx[a++] = 0;
    if (a == axes.size()) break;
  }
}

}  // namespace detail

// True iff `parts` are pairwise disjoint and their union is exactly `whole`.
inline bool partitions(const Region& whole, std::span<const Region> parts) {
  for (const auto& p : parts) {
    if (p.dim != whole.dim) return false;
    p.validate();
  }
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (parts[i].intersects(parts[j])) return false;
  std::vector<Region> all(parts.begin(), parts.end());
  all.push_back(whole);
  bool ok = true;
  detail::for_each_probe(detail::probe_axes(all, whole.dim), [&](std::span<const double> x) {
    const bool in_whole = whole.contains(x);
    const bool in_part =
        std::any_of(parts.begin(), parts.end(), [&](const Region& r) { return r.contains(x); });
    if (in_whole != in_part) ok = false;
  });
  return ok;
}

// Decomposition of R^d into disjoint regions of positive measure.
struct CylinderDecomposition {
  Index dim = 1;
  std::vector<Region> regions;

  Index size() const { return static_cast<Index>(regions.size()); }

  void validate() const {
    if (regions.empty()) throw InvalidArgument("CylinderDecomposition: no regions");
    for (const auto& r : regions) {
      if (r.dim != dim) throw InvalidArgument("CylinderDecomposition: region dimension mismatch");
      r.validate();
    }
    if (!partitions(Region::everything(dim), regions))
      throw InvalidArgument("CylinderDecomposition: regions overlap or do not cover R^d");
  }

  // (-inf, x_1), [x_1, x_2), ..., [x_k, inf) along the first axis, the other
  // axes unrestricted.
  static CylinderDecomposition split_first_axis(Index dim, std::span<const double> cuts) {
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      if (!std::isfinite(cuts[i])) throw InvalidArgument("split points must be finite");
      if (i > 0 && !(cuts[i - 1] < cuts[i]))
        throw InvalidArgument("split points must be strictly increasing");
    }
    CylinderDecomposition out{dim, {}};
    double lo = -kInf;
    for (std::size_t i = 0; i <= cuts.size(); ++i) {
      const double hi = i < cuts.size() ? cuts[i] : kInf;
      Box b{std::vector<Interval>(static_cast<std::size_t>(dim))};
      b.axes[0] = Interval{lo, hi};
      out.regions.push_back(Region{dim, {b}});
      lo = hi;
    }
    return out;
  }
};

}  // namespace bosonic

#endif  // BOSONIC_REGION_HPP_
