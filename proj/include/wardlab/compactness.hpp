#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wardlab/classifiers.hpp"
#include "wardlab/real_set.hpp"
#include "wardlab/sequence.hpp"

namespace wardlab {

inline bool bounded_below(const RealSet& set) {
  switch (set.kind()) {
    case RealSet::Kind::intervals:
      return !std::isinf(set.interval_list().front().lower);
    case RealSet::Kind::points:
      return true;
    default:
      switch (set.declared_inf().kind) {
        case RealSet::Bound::Kind::finite: return true;
        case RealSet::Bound::Kind::unbounded: return false;
        default:
          throw UndecidableError("generator set without declared lower bound");
      }
  }
}

inline bool bounded_above(const RealSet& set) {
  switch (set.kind()) {
    case RealSet::Kind::intervals:
      return !std::isinf(set.interval_list().back().upper);
    case RealSet::Kind::points:
      return true;
    default:
      switch (set.declared_sup().kind) {
        case RealSet::Bound::Kind::finite: return true;
        case RealSet::Bound::Kind::unbounded: return false;
        default:
          throw UndecidableError("generator set without declared upper bound");
      }
  }
}

// The boundedness equivalences, taken as the probe's definitions.
inline bool stat_upward_compact(const RealSet& set) { return bounded_below(set); }
inline bool stat_downward_compact(const RealSet& set) { return bounded_above(set); }
inline bool bounded(const RealSet& set) {
  return bounded_below(set) && bounded_above(set);
}

namespace detail {

// A member of an open-ended interval near its open endpoint b: step inside by
// min(1, width/2); deterministic and always in the interval.
inline double inside_upper(const Interval& iv) {
  if (iv.upper_closed) return iv.upper;
  if (std::isinf(iv.lower)) return iv.upper - 1.0;
  return iv.upper - std::min(1.0, (iv.upper - iv.lower) / 2.0);
}

inline double inside_lower(const Interval& iv) {
  if (iv.lower_closed) return iv.lower;
  if (std::isinf(iv.upper)) return iv.lower + 1.0;
  return iv.lower + std::min(1.0, (iv.upper - iv.lower) / 2.0);
}

inline double nearest_to_zero(const RealSet& set) {
  switch (set.kind()) {
    case RealSet::Kind::intervals: {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& iv : set.interval_list()) {
        double cand;
        if (iv.contains(0.0)) {
          cand = 0.0;
        } else if (!std::isinf(iv.lower) && iv.lower > 0.0) {
          cand = inside_lower(iv);
        } else {
          cand = inside_upper(iv);
        }
        if (std::fabs(cand) < std::fabs(best)) best = cand;
      }
      return best;
    }
    case RealSet::Kind::points: {
      double best = set.point_list().front();
      for (double p : set.point_list())
        if (std::fabs(p) < std::fabs(best)) best = p;
      return best;
    }
    default: {
      constexpr std::uint64_t kScan = 100000;
      double best = set.enumerate(1);
      for (std::uint64_t i = 2; i <= kScan; ++i) {
        const double v = set.enumerate(i);
        if (std::fabs(v) < std::fabs(best)) best = v;
      }
      return best;
    }
  }
}

// Largest representable member <= target (intervals/points) or the largest
// enumerated member <= target (generator).
inline std::optional<double> member_at_most(const RealSet& set, double target) {
  switch (set.kind()) {
    case RealSet::Kind::intervals: {
      for (auto it = set.interval_list().rbegin();
           it != set.interval_list().rend(); ++it) {
        if (it->contains(target)) return target;
        const double top = inside_upper(*it);
        if (top <= target) return top;
      }
      return std::nullopt;
    }
    case RealSet::Kind::points: {
      const auto& pts = set.point_list();
      auto it = std::upper_bound(pts.begin(), pts.end(), target);
      if (it == pts.begin()) return std::nullopt;
      return *std::prev(it);
    }
    default: {
      constexpr std::uint64_t kScan = 100000;
      std::optional<double> best;
      for (std::uint64_t i = 1; i <= kScan; ++i) {
        const double v = set.enumerate(i);
        if (v <= target && (!best || v > *best)) best = v;
      }
      return best;
    }
  }
}

inline std::optional<double> member_at_least(const RealSet& set, double target) {
  switch (set.kind()) {
    case RealSet::Kind::intervals: {
      for (const auto& iv : set.interval_list()) {
        if (iv.contains(target)) return target;
        const double bottom = inside_lower(iv);
        if (bottom >= target) return bottom;
      }
      return std::nullopt;
    }
    case RealSet::Kind::points: {
      const auto& pts = set.point_list();
      auto it = std::lower_bound(pts.begin(), pts.end(), target);
      if (it == pts.end()) return std::nullopt;
      return *it;
    }
    default: {
      constexpr std::uint64_t kScan = 100000;
      std::optional<double> best;
      for (std::uint64_t i = 1; i <= kScan; ++i) {
        const double v = set.enumerate(i);
        if (v >= target && (!best || v < *best)) best = v;
      }
      return best;
    }
  }
}

}  // namespace detail

// x_1, ..., x_n in the set with x_{j+1} < x_j - 1; the canonical step is 2
// from the representable point nearest 0, snapping down when a gap of the
// set intervenes.
inline Prefix descending_witness(const RealSet& set, std::uint64_t n) {
  if (n == 0) throw ContractError("descending_witness: n must be >= 1");
  if (bounded_below(set))
    throw NoWitnessError("set is bounded below; no descending witness exists");
  Prefix p;
  p.source_name = "descending-witness(" + set.to_string() + ")";
  double cur = detail::nearest_to_zero(set);
  p.values.push_back(cur);
  for (std::uint64_t j = 2; j <= n; ++j) {
    const auto next = detail::member_at_most(set, cur - 2.0);
    if (!next)
      throw NoWitnessError("witness search exhausted below " + std::to_string(cur));
    cur = *next;
    p.values.push_back(cur);
  }
  return p;
}

inline Prefix ascending_witness(const RealSet& set, std::uint64_t n) {
  if (n == 0) throw ContractError("ascending_witness: n must be >= 1");
  if (bounded_above(set))
    throw NoWitnessError("set is bounded above; no ascending witness exists");
  Prefix p;
  p.source_name = "ascending-witness(" + set.to_string() + ")";
  double cur = detail::nearest_to_zero(set);
  p.values.push_back(cur);
  for (std::uint64_t j = 2; j <= n; ++j) {
    const auto next = detail::member_at_least(set, cur + 2.0);
    if (!next)
      throw NoWitnessError("witness search exhausted above " + std::to_string(cur));
    cur = *next;
    p.values.push_back(cur);
  }
  return p;
}

// Strictly increasing index map whose induced subsequence passes the upward
// classifier. Bounded prefixes go through value-range bisection down to a
// width below the finest grid epsilon (ties keep the upper half); prefixes
// that climb away pick the greedy nondecreasing subsequence, which has no
// drops at all.
inline IndexMap extract_stat_upward_hqc_subsequence(const Sequence& seq,
                                                    const AnalysisConfig& config) {
  config.validate();
  const Prefix prefix = materialize(seq, config.horizon);
  const auto& x = prefix.values;

  double lo = x[0], hi = x[0];
  for (double v : x) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double floor_allowed =
      -config.fail_threshold * static_cast<double>(config.horizon);
  if (lo < floor_allowed)
    throw RefusalError("prefix reaches " + std::to_string(lo) +
                       ", below the bounded-below proxy " +
                       std::to_string(floor_allowed));

  // trend test: does the prefix climb past its own early range?
  const std::uint64_t quarter = std::max<std::uint64_t>(1, config.horizon / 4);
  double early_max = x[0];
  for (std::uint64_t i = 0; i < quarter; ++i) early_max = std::max(early_max, x[i]);
  double late_min = x[config.horizon / 2];
  for (std::uint64_t i = config.horizon / 2; i < config.horizon; ++i)
    late_min = std::min(late_min, x[i]);

  if (late_min > early_max) {
    std::vector<std::uint64_t> picked;
    double last = -std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < x.size(); ++i) {
      if (x[i] >= last) {
        picked.push_back(i + 1);
        last = x[i];
      }
    }
    return IndexMap::from_indices(std::move(picked));
  }

  // Bolzano-Weierstrass style bisection over the value range.
  std::vector<std::uint64_t> indices(x.size());
  for (std::uint64_t i = 0; i < x.size(); ++i) indices[i] = i + 1;
  const double target_width = 0.9 * config.epsilon_grid.back();
  constexpr std::size_t kMinKeep = 16;
  while (hi - lo > target_width && indices.size() >= 2 * kMinKeep) {
    const double mid = lo + (hi - lo) / 2.0;
    std::vector<std::uint64_t> lower_half, upper_half;
    for (std::uint64_t idx : indices) {
      (x[idx - 1] <= mid ? lower_half : upper_half).push_back(idx);
    }
    if (upper_half.size() >= lower_half.size()) {
      indices = std::move(upper_half);
    } else {
      indices = std::move(lower_half);
    }
    lo = hi = x[indices.front() - 1];
    for (std::uint64_t idx : indices) {
      lo = std::min(lo, x[idx - 1]);
      hi = std::max(hi, x[idx - 1]);
    }
  }
  return IndexMap::from_indices(std::move(indices));
}

}  // namespace wardlab
