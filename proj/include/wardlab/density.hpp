#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wardlab/errors.hpp"
#include "wardlab/rational.hpp"

namespace wardlab {

enum class Status { satisfied, violated, inconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::satisfied: return "satisfied";
    case Status::violated: return "violated";
    default: return "inconclusive";
  }
}

struct IndexPredicate {
  std::function<bool(std::uint64_t)> test;
  std::string description;
};

// Exact counts of a predicate over nested prefixes, sampled at checkpoints.
struct DensityTrace {
  struct Checkpoint {
    std::uint64_t n = 0;
    std::uint64_t count = 0;
    Rational density;
  };
  std::vector<Checkpoint> checkpoints;

  bool empty() const { return checkpoints.empty(); }
  const Checkpoint& final() const { return checkpoints.back(); }
};

// Three-valued, horizon-bounded answer to a limit-style predicate. A finite
// horizon cannot decide a limit, so inconclusive is a first-class outcome.
struct Verdict {
  Status status = Status::inconclusive;
  std::uint64_t horizon = 0;
  std::optional<double> epsilon;
  std::vector<std::uint64_t> witness_indices;
  DensityTrace trace;
  std::string note;
};

struct AnalysisConfig {
  std::uint64_t horizon = 100000;
  std::size_t checkpoint_count = 14;
  std::vector<double> epsilon_grid{1.0, 0.5, 0.1, 0.01};
  double pass_tolerance = 0.03;
  double fail_threshold = 0.2;
  std::vector<double> lambda_grid{2.0, 1.5, 1.2, 1.1, 1.05};

  void validate() const {
    if (horizon == 0) throw ConfigError("config: horizon must be >= 1");
    if (checkpoint_count == 0)
      throw ConfigError("config: checkpointCount must be >= 1");
    if (epsilon_grid.empty())
      throw ConfigError("config: epsilon grid must be nonempty");
    for (std::size_t i = 0; i < epsilon_grid.size(); ++i) {
      if (epsilon_grid[i] <= 0.0)
        throw ConfigError("config: epsilon grid values must be positive");
      if (i > 0 && epsilon_grid[i] >= epsilon_grid[i - 1])
        throw ConfigError("config: epsilon grid must be strictly descending");
    }
    if (pass_tolerance <= 0.0 || fail_threshold <= 0.0 ||
        pass_tolerance >= fail_threshold)
      throw ConfigError("config: require 0 < passTolerance < failThreshold");
    if (lambda_grid.empty())
      throw ConfigError("config: lambda grid must be nonempty");
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
      if (lambda_grid[i] <= 1.0 || lambda_grid[i] > 2.0)
        throw ConfigError("config: lambda grid values must lie in (1, 2]");
      if (i > 0 && lambda_grid[i] >= lambda_grid[i - 1])
        throw ConfigError("config: lambda grid must be strictly descending");
    }
  }

  // [N/2, N], the window behind every tail-based rule.
  std::uint64_t tail_start() const { return std::max<std::uint64_t>(1, horizon / 2); }
};

// Doubling chain 16, 32, ... capped at the horizon (appended); if longer than
// max_points, the earliest entries are dropped — the trend rule reads the
// late half.
inline std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t horizon,
                                                      std::size_t max_points) {
  std::vector<std::uint64_t> pts;
  for (std::uint64_t c = 16; c < horizon; c *= 2) pts.push_back(c);
  pts.push_back(horizon);
  if (pts.size() > max_points)
    pts.erase(pts.begin(), pts.end() - static_cast<std::ptrdiff_t>(max_points));
  return pts;
}

// |{k <= n : test(k)}| / n as an exact rational.
inline Rational counting_density(const IndexPredicate& pred, std::uint64_t n) {
  if (n == 0) throw ContractError("counting_density: n must be >= 1");
  std::uint64_t count = 0;
  for (std::uint64_t k = 1; k <= n; ++k)
    if (pred.test(k)) ++count;
  return Rational(static_cast<std::int64_t>(count),
                  static_cast<std::int64_t>(n));
}

namespace detail {

constexpr std::size_t kMaxWitnesses = 10;

// Shared satisfied/violated/inconclusive rule for a density trace:
// satisfied needs final density <= pass AND a non-increasing late half;
// violated needs final density >= fail.
inline Verdict verdict_from_trace(DensityTrace trace,
                                  std::vector<std::uint64_t> witnesses,
                                  const AnalysisConfig& config,
                                  std::optional<double> epsilon) {
  Verdict v;
  v.horizon = config.horizon;
  v.epsilon = epsilon;
  v.trace = std::move(trace);

  const auto& cps = v.trace.checkpoints;
  const Rational final_density = cps.back().density;
  const double fd = final_density.to_double();

  bool tail_monotone = true;
  const std::size_t half = (cps.size() - 1) / 2;
  for (std::size_t i = half; i + 1 < cps.size(); ++i) {
    if (cps[i + 1].density > cps[i].density) {
      tail_monotone = false;
      break;
    }
  }

  const std::string fd_text =
      final_density.to_fraction_string() + " = " + final_density.to_decimal_string();
  if (fd >= config.fail_threshold) {
    v.status = Status::violated;
    v.witness_indices = std::move(witnesses);
    v.note = "final density " + fd_text + " >= fail threshold";
  } else if (fd <= config.pass_tolerance && tail_monotone) {
    v.status = Status::satisfied;
    v.note = "final density " + fd_text + " <= pass tolerance; trace non-increasing over last half";
  } else {
    v.status = Status::inconclusive;
    v.note = "final density " + fd_text +
             (tail_monotone ? " between tolerances" : "; trace not non-increasing over last half");
  }
  return v;
}

}  // namespace detail

struct EpsilonVerdict {
  double epsilon = 0.0;
  Verdict verdict;
};

// One density verdict per grid epsilon for the sets {k <= N : margin(k) >= eps},
// all counted in a single pass over the prefix.
inline std::vector<EpsilonVerdict> margin_profile(
    const std::function<double(std::uint64_t)>& margin,
    const AnalysisConfig& config, const std::string& what = {}) {
  config.validate();
  const auto schedule = checkpoint_schedule(config.horizon, config.checkpoint_count);
  const std::size_t ne = config.epsilon_grid.size();

  std::vector<DensityTrace> traces(ne);
  std::vector<std::deque<std::uint64_t>> latest(ne);
  std::vector<std::uint64_t> counts(ne, 0);
  std::size_t next_cp = 0;
  for (std::uint64_t k = 1; k <= config.horizon; ++k) {
    const double m = margin(k);
    for (std::size_t e = 0; e < ne; ++e) {
      if (m >= config.epsilon_grid[e]) {
        ++counts[e];
        latest[e].push_back(k);
        if (latest[e].size() > detail::kMaxWitnesses) latest[e].pop_front();
      }
    }
    if (next_cp < schedule.size() && k == schedule[next_cp]) {
      for (std::size_t e = 0; e < ne; ++e) {
        traces[e].checkpoints.push_back(
            {k, counts[e],
             Rational(static_cast<std::int64_t>(counts[e]),
                      static_cast<std::int64_t>(k))});
      }
      ++next_cp;
    }
  }

  std::vector<EpsilonVerdict> out(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    out[e].epsilon = config.epsilon_grid[e];
    out[e].verdict = detail::verdict_from_trace(
        std::move(traces[e]),
        std::vector<std::uint64_t>(latest[e].begin(), latest[e].end()), config,
        config.epsilon_grid[e]);
    if (!what.empty()) out[e].verdict.note += " [" + what + "]";
  }
  return out;
}

// Satisfied iff every epsilon is satisfied; violated as soon as one is (the
// largest violating epsilon is reported); otherwise inconclusive.
inline Verdict combine_epsilon_verdicts(const std::vector<EpsilonVerdict>& per_eps,
                                        const AnalysisConfig& config) {
  if (per_eps.empty()) throw ContractError("combine: empty epsilon profile");
  for (const auto& ev : per_eps) {
    if (ev.verdict.status == Status::violated) {
      Verdict v = ev.verdict;
      v.note = "violated at eps=" + std::to_string(ev.epsilon) + "; " + v.note;
      return v;
    }
  }
  for (const auto& ev : per_eps) {
    if (ev.verdict.status == Status::inconclusive) {
      Verdict v = ev.verdict;
      v.note = "inconclusive at eps=" + std::to_string(ev.epsilon) + "; " + v.note;
      return v;
    }
  }
  Verdict v = per_eps.back().verdict;  // smallest epsilon is the binding one
  v.note = "satisfied at every eps in the grid; binding eps=" +
           std::to_string(per_eps.back().epsilon) + "; " + v.note;
  (void)config;
  return v;
}

// Finite-horizon reading of lim (1/n)|{k <= n : pred}| = 0. One pass over
// 1..N records exact counts at the checkpoint schedule; the last up-to-10
// satisfying indices become witnesses on violation.
inline Verdict density_limit_verdict(const IndexPredicate& pred,
                                     const AnalysisConfig& config) {
  config.validate();
  const auto schedule = checkpoint_schedule(config.horizon, config.checkpoint_count);

  DensityTrace trace;
  std::deque<std::uint64_t> latest;
  std::uint64_t count = 0;
  std::size_t next_cp = 0;
  for (std::uint64_t k = 1; k <= config.horizon; ++k) {
    if (pred.test(k)) {
      ++count;
      latest.push_back(k);
      if (latest.size() > detail::kMaxWitnesses) latest.pop_front();
    }
    if (next_cp < schedule.size() && k == schedule[next_cp]) {
      trace.checkpoints.push_back(
          {k, count,
           Rational(static_cast<std::int64_t>(count), static_cast<std::int64_t>(k))});
      ++next_cp;
    }
  }
  std::vector<std::uint64_t> witnesses(latest.begin(), latest.end());
  Verdict v = detail::verdict_from_trace(std::move(trace), std::move(witnesses),
                                         config, std::nullopt);
  if (!pred.description.empty()) v.note += " [" + pred.description + "]";
  return v;
}

}  // namespace wardlab
