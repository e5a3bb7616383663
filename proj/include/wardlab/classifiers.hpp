#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wardlab/convergence.hpp"
#include "wardlab/density.hpp"
#include "wardlab/sequence.hpp"

namespace wardlab {

enum class SequenceClass {
  convergent,
  cauchy,
  quasiCauchy,
  statConvergent,
  statQuasiCauchy,
  upHalfQuasiCauchy,
  downHalfQuasiCauchy,
  statUpHalfQuasiCauchy,
  statDownHalfQuasiCauchy,
  halfStatQuasiCauchy,
  upHalfCauchy,
  downHalfCauchy,
  slowlyOscillating
};

inline const std::vector<SequenceClass>& all_sequence_classes() {
  static const std::vector<SequenceClass> all{
      SequenceClass::convergent,
      SequenceClass::cauchy,
      SequenceClass::quasiCauchy,
      SequenceClass::statConvergent,
      SequenceClass::statQuasiCauchy,
      SequenceClass::upHalfQuasiCauchy,
      SequenceClass::downHalfQuasiCauchy,
      SequenceClass::statUpHalfQuasiCauchy,
      SequenceClass::statDownHalfQuasiCauchy,
      SequenceClass::halfStatQuasiCauchy,
      SequenceClass::upHalfCauchy,
      SequenceClass::downHalfCauchy,
      SequenceClass::slowlyOscillating};
  return all;
}

inline const char* to_string(SequenceClass c) {
  switch (c) {
    case SequenceClass::convergent: return "convergent";
    case SequenceClass::cauchy: return "cauchy";
    case SequenceClass::quasiCauchy: return "quasiCauchy";
    case SequenceClass::statConvergent: return "statConvergent";
    case SequenceClass::statQuasiCauchy: return "statQuasiCauchy";
    case SequenceClass::upHalfQuasiCauchy: return "upHalfQuasiCauchy";
    case SequenceClass::downHalfQuasiCauchy: return "downHalfQuasiCauchy";
    case SequenceClass::statUpHalfQuasiCauchy: return "statUpHalfQuasiCauchy";
    case SequenceClass::statDownHalfQuasiCauchy: return "statDownHalfQuasiCauchy";
    case SequenceClass::halfStatQuasiCauchy: return "halfStatQuasiCauchy";
    case SequenceClass::upHalfCauchy: return "upHalfCauchy";
    case SequenceClass::downHalfCauchy: return "downHalfCauchy";
    default: return "slowlyOscillating";
  }
}

inline SequenceClass parse_sequence_class(const std::string& s) {
  for (SequenceClass c : all_sequence_classes())
    if (s == to_string(c)) return c;
  throw ContractError("unknown sequence class: " + s);
}

// One-sided drop Delta x_k = x_k - x_{k+1}; thresholds compare with ">= eps",
// so ties at eps count.
inline std::vector<EpsilonVerdict> stat_upward_hqc_profile(
    const Sequence& seq, const AnalysisConfig& config) {
  return margin_profile(
      [seq](std::uint64_t k) { return seq(k) - seq(k + 1); }, config,
      "drops x_k - x_{k+1}");
}

inline std::vector<EpsilonVerdict> stat_downward_hqc_profile(
    const Sequence& seq, const AnalysisConfig& config) {
  return margin_profile(
      [seq](std::uint64_t k) { return seq(k + 1) - seq(k); }, config,
      "rises x_{k+1} - x_k");
}

inline std::vector<EpsilonVerdict> stat_qc_profile(const Sequence& seq,
                                                   const AnalysisConfig& config) {
  return margin_profile(
      [seq](std::uint64_t k) { return std::fabs(seq(k) - seq(k + 1)); }, config,
      "|x_k - x_{k+1}|");
}

inline Verdict stat_upward_hqc_verdict(const Sequence& seq,
                                       const AnalysisConfig& config) {
  return combine_epsilon_verdicts(stat_upward_hqc_profile(seq, config), config);
}

inline Verdict stat_downward_hqc_verdict(const Sequence& seq,
                                         const AnalysisConfig& config) {
  return combine_epsilon_verdicts(stat_downward_hqc_profile(seq, config), config);
}

inline Verdict stat_qc_verdict(const Sequence& seq, const AnalysisConfig& config) {
  return combine_epsilon_verdicts(stat_qc_profile(seq, config), config);
}

// Either side suffices; violated only when both sides are violated.
inline Verdict half_stat_qc_verdict(const Sequence& seq,
                                    const AnalysisConfig& config) {
  const Verdict up = stat_upward_hqc_verdict(seq, config);
  if (up.status == Status::satisfied) {
    Verdict v = up;
    v.note = "upward branch satisfied; " + v.note;
    return v;
  }
  const Verdict down = stat_downward_hqc_verdict(seq, config);
  if (down.status == Status::satisfied) {
    Verdict v = down;
    v.note = "downward branch satisfied; " + v.note;
    return v;
  }
  if (up.status == Status::violated && down.status == Status::violated) {
    Verdict v = up;
    v.note = "both one-sided branches violated; upward: " + up.note +
             " | downward: " + down.note;
    return v;
  }
  Verdict v;
  v.status = Status::inconclusive;
  v.horizon = config.horizon;
  v.note = "neither branch decisive; upward " +
           std::string(to_string(up.status)) + ", downward " +
           std::string(to_string(down.status));
  return v;
}

namespace detail {

struct TailExtremes {
  double max_value = 0.0;
  std::uint64_t argmax = 0;
  std::vector<std::uint64_t> offenders;  // tail indices with value >= fail
};

template <typename Fn>
TailExtremes tail_max(Fn&& value_at, std::uint64_t from, std::uint64_t to,
                      double fail) {
  TailExtremes t;
  t.max_value = -std::numeric_limits<double>::infinity();
  for (std::uint64_t k = from; k <= to; ++k) {
    const double v = value_at(k);
    if (v > t.max_value) {
      t.max_value = v;
      t.argmax = k;
    }
    if (v >= fail && t.offenders.size() < kMaxWitnesses) t.offenders.push_back(k);
  }
  return t;
}

inline Verdict tail_rule_verdict(const TailExtremes& t, const AnalysisConfig& config,
                                 const std::string& what) {
  Verdict v;
  v.horizon = config.horizon;
  v.note = what + " over tail [" + std::to_string(config.tail_start()) + "," +
           std::to_string(config.horizon) + "]: max " +
           std::to_string(t.max_value);
  if (t.max_value <= config.pass_tolerance) {
    v.status = Status::satisfied;
  } else if (t.max_value >= config.fail_threshold) {
    v.status = Status::violated;
    v.witness_indices = t.offenders;
    if (v.witness_indices.empty()) v.witness_indices.push_back(t.argmax);
  } else {
    v.status = Status::inconclusive;
  }
  return v;
}

}  // namespace detail

// Null consecutive differences: tail max of |x_k - x_{k+1}|.
inline Verdict quasi_cauchy_verdict(const Sequence& seq,
                                    const AnalysisConfig& config) {
  config.validate();
  const auto t = detail::tail_max(
      [&seq](std::uint64_t k) { return std::fabs(seq(k) - seq(k + 1)); },
      config.tail_start(), config.horizon, config.fail_threshold);
  return detail::tail_rule_verdict(t, config, "|x_k - x_{k+1}|");
}

// Eventually x_n - x_{n+1} < eps: tail max of the signed drop.
inline Verdict up_half_quasi_cauchy_verdict(const Sequence& seq,
                                            const AnalysisConfig& config) {
  config.validate();
  const auto t = detail::tail_max(
      [&seq](std::uint64_t k) { return seq(k) - seq(k + 1); },
      config.tail_start(), config.horizon, config.fail_threshold);
  return detail::tail_rule_verdict(t, config, "x_k - x_{k+1}");
}

inline Verdict down_half_quasi_cauchy_verdict(const Sequence& seq,
                                              const AnalysisConfig& config) {
  config.validate();
  const auto t = detail::tail_max(
      [&seq](std::uint64_t k) { return seq(k + 1) - seq(k); },
      config.tail_start(), config.horizon, config.fail_threshold);
  return detail::tail_rule_verdict(t, config, "x_{k+1} - x_k");
}

// Tail oscillation max - min; the two-sided pairwise condition.
inline Verdict cauchy_verdict(const Sequence& seq, const AnalysisConfig& config) {
  config.validate();
  const std::uint64_t n0 = config.tail_start();
  double lo = seq(n0), hi = lo;
  std::uint64_t arglo = n0, arghi = n0;
  for (std::uint64_t k = n0; k <= config.horizon; ++k) {
    const double x = seq(k);
    if (x < lo) { lo = x; arglo = k; }
    if (x > hi) { hi = x; arghi = k; }
  }
  Verdict v;
  v.horizon = config.horizon;
  const double osc = hi - lo;
  v.note = "tail oscillation " + std::to_string(osc);
  if (osc <= config.pass_tolerance) {
    v.status = Status::satisfied;
  } else if (osc >= config.fail_threshold) {
    v.status = Status::violated;
    v.witness_indices = {std::min(arglo, arghi), std::max(arglo, arghi)};
  } else {
    v.status = Status::inconclusive;
  }
  return v;
}

// x_n - x_m < eps for m >= n >= n0, checked on the tail window with a
// backward running future-minimum (cost O(window)).
inline Verdict up_half_cauchy_verdict(const Sequence& seq,
                                      const AnalysisConfig& config) {
  config.validate();
  const std::uint64_t n0 = config.tail_start();
  const std::uint64_t n1 = config.horizon;
  std::vector<double> x;
  x.reserve(n1 - n0 + 1);
  for (std::uint64_t k = n0; k <= n1; ++k) x.push_back(seq(k));

  double future_min = x.back();
  double worst = 0.0;
  std::uint64_t argworst = n1;
  std::vector<std::uint64_t> offenders;
  for (std::size_t i = x.size(); i-- > 0;) {
    future_min = std::min(future_min, x[i]);
    const double drop = x[i] - future_min;
    if (drop > worst) {
      worst = drop;
      argworst = n0 + i;
    }
    if (drop >= config.fail_threshold && offenders.size() < detail::kMaxWitnesses)
      offenders.push_back(n0 + i);
  }
  std::reverse(offenders.begin(), offenders.end());

  Verdict v;
  v.horizon = n1;
  v.note = "max future drop x_n - min_{m>=n} x_m over tail: " + std::to_string(worst) +
           " (n0=" + std::to_string(n0) + ")";
  if (worst <= config.pass_tolerance) {
    v.status = Status::satisfied;
  } else if (worst >= config.fail_threshold) {
    v.status = Status::violated;
    v.witness_indices = offenders.empty()
                            ? std::vector<std::uint64_t>{argworst}
                            : offenders;
  } else {
    v.status = Status::inconclusive;
  }
  return v;
}

inline Verdict down_half_cauchy_verdict(const Sequence& seq,
                                        const AnalysisConfig& config) {
  Verdict v = up_half_cauchy_verdict(reflect(seq), config);
  v.note = "mirrored: max future rise max_{m>=n} x_m - x_n over tail" +
           v.note.substr(v.note.find(':'));
  return v;
}

// Trust thresholds for the vanishing-trend path of the slowly oscillating
// rule: the lambda->1 extrapolation must land within kSlowOscInterceptFactor
// times the pass tolerance, and the smallest-lambda value must stay below
// kSlowOscTrendCap — sequences whose window sup scales with the horizon
// (identity-like growth) blow through the cap even though their lambda trace
// extrapolates to zero.
inline constexpr double kSlowOscInterceptFactor = 2.5;
inline constexpr double kSlowOscTrendCap = 1.0;

// v(lambda) = sup over tail n of max_{n+1 <= k <= [lambda n]} |x_k - x_n|,
// windows clipped at the horizon. Satisfied when v at the smallest lambda is
// already within tolerance, or when the trace decreases along the grid and
// extrapolates to ~0 at lambda = 1.
inline Verdict slowly_oscillating_verdict(const Sequence& seq,
                                          const std::vector<double>& lambda_grid,
                                          const AnalysisConfig& config) {
  config.validate();
  {
    AnalysisConfig probe = config;
    probe.lambda_grid = lambda_grid;
    probe.validate();
  }
  const std::uint64_t n0 = config.tail_start();
  const std::uint64_t n1 = config.horizon;
  std::vector<double> x(n1 + 1);
  for (std::uint64_t k = 1; k <= n1; ++k) x[k] = seq(k);

  bool clipped = false;
  std::vector<double> sup(lambda_grid.size(), 0.0);
  std::vector<std::uint64_t> arg(lambda_grid.size(), n0);
  for (std::size_t li = 0; li < lambda_grid.size(); ++li) {
    const double lambda = lambda_grid[li];
    // sliding max/min of x over (n, min([lambda n], N)]
    std::deque<std::uint64_t> maxq, minq;
    std::uint64_t right = n0;  // next index to admit
    for (std::uint64_t n = n0; n <= n1; ++n) {
      std::uint64_t upper =
          static_cast<std::uint64_t>(std::floor(lambda * static_cast<double>(n)));
      if (upper > n1) {
        upper = n1;
        clipped = true;
      }
      if (right < n + 1) right = n + 1;
      while (right <= upper) {
        while (!maxq.empty() && x[maxq.back()] <= x[right]) maxq.pop_back();
        maxq.push_back(right);
        while (!minq.empty() && x[minq.back()] >= x[right]) minq.pop_back();
        minq.push_back(right);
        ++right;
      }
      while (!maxq.empty() && maxq.front() <= n) maxq.pop_front();
      while (!minq.empty() && minq.front() <= n) minq.pop_front();
      if (upper <= n || maxq.empty()) continue;  // empty window
      const double spread =
          std::max(x[maxq.front()] - x[n], x[n] - x[minq.front()]);
      if (spread > sup[li]) {
        sup[li] = spread;
        arg[li] = n;
      }
    }
  }

  const double v_min = sup.back();
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < sup.size(); ++i)
    if (sup[i + 1] >= sup[i]) decreasing = false;

  double intercept = v_min;
  if (lambda_grid.size() >= 2) {
    const double l1 = lambda_grid[lambda_grid.size() - 1];
    const double l2 = lambda_grid[lambda_grid.size() - 2];
    const double v1 = sup[sup.size() - 1];
    const double v2 = sup[sup.size() - 2];
    intercept = std::max(0.0, v1 - (v2 - v1) / (l2 - l1) * (l1 - 1.0));
  }

  Verdict v;
  v.horizon = n1;
  std::string values;
  for (std::size_t i = 0; i < sup.size(); ++i) {
    values += (i ? ", " : "") + std::to_string(lambda_grid[i]) + "->" +
              std::to_string(sup[i]);
  }
  v.note = "window sup per lambda: " + values +
           "; lambda->1 intercept " + std::to_string(intercept) +
           (clipped ? "; windows clipped at horizon" : "");

  if (v_min <= config.pass_tolerance) {
    v.status = Status::satisfied;
    v.note = "sup at smallest lambda within tolerance; " + v.note;
  } else if (decreasing && lambda_grid.size() >= 2 &&
             intercept <= kSlowOscInterceptFactor * config.pass_tolerance &&
             v_min <= kSlowOscTrendCap) {
    v.status = Status::satisfied;
    v.note = "vanishing trend across the lambda grid; " + v.note;
  } else if (v_min >= config.fail_threshold) {
    v.status = Status::violated;
    v.witness_indices.push_back(arg.back());
  } else {
    v.status = Status::inconclusive;
  }
  return v;
}

inline Verdict slowly_oscillating_verdict(const Sequence& seq,
                                          const AnalysisConfig& config) {
  return slowly_oscillating_verdict(seq, config.lambda_grid, config);
}

struct ClassReport {
  std::string sequence_name;
  std::vector<std::pair<SequenceClass, Verdict>> entries;
  AnalysisConfig config;

  const Verdict& verdict_for(SequenceClass c) const {
    for (const auto& [cls, v] : entries)
      if (cls == c) return v;
    throw ContractError(std::string("class not in report: ") + to_string(c));
  }
};

inline Verdict classify_one(const Sequence& seq, SequenceClass label,
                            const AnalysisConfig& config) {
  switch (label) {
    case SequenceClass::convergent: {
      MethodVerdict mv = ordinary_limit(seq, config);
      mv.verdict.note = "limit estimate " + std::to_string(*mv.limit_estimate) +
                        "; " + mv.verdict.note;
      return mv.verdict;
    }
    case SequenceClass::cauchy:
      return cauchy_verdict(seq, config);
    case SequenceClass::quasiCauchy:
      return quasi_cauchy_verdict(seq, config);
    case SequenceClass::statConvergent:
      return statistical_limit_estimate(seq, config).verdict;
    case SequenceClass::statQuasiCauchy:
      return stat_qc_verdict(seq, config);
    case SequenceClass::upHalfQuasiCauchy:
      return up_half_quasi_cauchy_verdict(seq, config);
    case SequenceClass::downHalfQuasiCauchy:
      return down_half_quasi_cauchy_verdict(seq, config);
    case SequenceClass::statUpHalfQuasiCauchy:
      return stat_upward_hqc_verdict(seq, config);
    case SequenceClass::statDownHalfQuasiCauchy:
      return stat_downward_hqc_verdict(seq, config);
    case SequenceClass::halfStatQuasiCauchy:
      return half_stat_qc_verdict(seq, config);
    case SequenceClass::upHalfCauchy:
      return up_half_cauchy_verdict(seq, config);
    case SequenceClass::downHalfCauchy:
      return down_half_cauchy_verdict(seq, config);
    default:
      return slowly_oscillating_verdict(seq, config.lambda_grid, config);
  }
}

inline ClassReport classify(const Sequence& seq,
                            const std::vector<SequenceClass>& labels,
                            const AnalysisConfig& config) {
  if (labels.empty()) throw ContractError("classify: label list must be nonempty");
  config.validate();
  ClassReport report;
  report.sequence_name = seq.name();
  report.config = config;
  for (SequenceClass label : labels)
    report.entries.emplace_back(label, classify_one(seq, label, config));
  return report;
}

}  // namespace wardlab
