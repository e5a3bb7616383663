#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wardlab/density.hpp"
#include "wardlab/lacunary.hpp"
#include "wardlab/sequence.hpp"

namespace wardlab {

struct MethodVerdict {
  std::string method;
  std::optional<double> limit_estimate;
  Verdict verdict;
};

enum class MethodKind { ordinary, statistical, lacunary_statistical, ntheta };

inline const char* to_string(MethodKind m) {
  switch (m) {
    case MethodKind::ordinary: return "ordinary";
    case MethodKind::statistical: return "statistical";
    case MethodKind::lacunary_statistical: return "lacunary-statistical";
    default: return "ntheta";
  }
}

// Estimate l = x_N; satisfied if the tail window [N/2, N] stays within the
// pass tolerance of l, violated if its oscillation reaches the fail threshold.
inline MethodVerdict ordinary_limit(const Sequence& seq,
                                    const AnalysisConfig& config) {
  config.validate();
  const std::uint64_t n0 = config.tail_start();
  const std::uint64_t n1 = config.horizon;
  const double ell = seq(n1);

  double max_dev = 0.0, tail_min = ell, tail_max = ell;
  std::uint64_t worst = n1;
  for (std::uint64_t k = n0; k <= n1; ++k) {
    const double x = seq(k);
    const double dev = std::fabs(x - ell);
    if (dev > max_dev) {
      max_dev = dev;
      worst = k;
    }
    tail_min = std::min(tail_min, x);
    tail_max = std::max(tail_max, x);
  }
  const double oscillation = tail_max - tail_min;

  MethodVerdict mv;
  mv.method = to_string(MethodKind::ordinary);
  mv.limit_estimate = ell;
  mv.verdict.horizon = n1;
  mv.verdict.note = "tail window [" + std::to_string(n0) + "," +
                    std::to_string(n1) + "]: max deviation " +
                    std::to_string(max_dev) + ", oscillation " +
                    std::to_string(oscillation);
  if (max_dev <= config.pass_tolerance) {
    mv.verdict.status = Status::satisfied;
  } else if (oscillation >= config.fail_threshold) {
    mv.verdict.status = Status::violated;
    mv.verdict.witness_indices.push_back(worst);
  } else {
    mv.verdict.status = Status::inconclusive;
  }
  return mv;
}

inline std::vector<EpsilonVerdict> statistical_limit_profile(
    const Sequence& seq, double ell, const AnalysisConfig& config) {
  return margin_profile(
      [seq, ell](std::uint64_t k) { return std::fabs(seq(k) - ell); }, config,
      "|x_k - l| with l=" + std::to_string(ell));
}

inline MethodVerdict statistical_limit_verdict(const Sequence& seq, double ell,
                                               const AnalysisConfig& config) {
  MethodVerdict mv;
  mv.method = to_string(MethodKind::statistical);
  mv.limit_estimate = ell;
  mv.verdict =
      combine_epsilon_verdicts(statistical_limit_profile(seq, ell, config), config);
  return mv;
}

// Candidate l = lower median of the tail window, robust to density-zero
// exceptional index sets; then the verdict at that candidate.
inline MethodVerdict statistical_limit_estimate(const Sequence& seq,
                                                const AnalysisConfig& config) {
  config.validate();
  std::vector<double> tail;
  tail.reserve(config.horizon - config.tail_start() + 1);
  for (std::uint64_t k = config.tail_start(); k <= config.horizon; ++k)
    tail.push_back(seq(k));
  const std::size_t mid = (tail.size() - 1) / 2;
  std::nth_element(tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(mid),
                   tail.end());
  const double candidate = tail[mid];

  MethodVerdict mv = statistical_limit_verdict(seq, candidate, config);
  mv.verdict.note = "candidate l = tail median " + std::to_string(candidate) +
                    "; " + mv.verdict.note;
  return mv;
}

namespace detail {

// Blocks fully inside the horizon; the trailing partial block is ignored.
inline std::size_t usable_blocks(const LacunaryScheme& scheme,
                                 const AnalysisConfig& config) {
  if (scheme.last_boundary() < config.horizon)
    throw ConfigError("lacunary scheme shorter than horizon " +
                      std::to_string(config.horizon));
  std::size_t r = 0;
  while (r + 1 <= scheme.block_count() &&
         scheme.boundary(r + 1) <= config.horizon)
    ++r;
  if (r < 2)
    throw ConfigError("lacunary scheme: fewer than 2 full blocks inside horizon");
  return r;
}

inline std::vector<std::uint64_t> block_deviants(const Sequence& seq,
                                                 const LacunaryScheme& scheme,
                                                 std::size_t r, double ell,
                                                 double threshold) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = scheme.boundary(r - 1) + 1;
       k <= scheme.boundary(r) && out.size() < kMaxWitnesses; ++k) {
    if (std::fabs(seq(k) - ell) >= threshold) out.push_back(k);
  }
  return out;
}

}  // namespace detail

// Block means (1/h_r) sum_{k in I_r} |x_k - l|; satisfied iff every mean in
// the final half of the blocks is within the pass tolerance, violated if the
// final block mean reaches the fail threshold.
inline MethodVerdict ntheta_verdict(const Sequence& seq,
                                    const LacunaryScheme& scheme, double ell,
                                    const AnalysisConfig& config) {
  config.validate();
  const std::size_t blocks = detail::usable_blocks(scheme, config);

  std::vector<double> means(blocks + 1, 0.0);
  for (std::size_t r = 1; r <= blocks; ++r) {
    double sum = 0.0;
    for (std::uint64_t k = scheme.boundary(r - 1) + 1; k <= scheme.boundary(r); ++k)
      sum += std::fabs(seq(k) - ell);
    means[r] = sum / static_cast<double>(scheme.block_length(r));
  }

  const std::size_t half_start = (blocks + 1) / 2;
  bool all_small = true;
  double worst = 0.0;
  for (std::size_t r = half_start; r <= blocks; ++r) {
    worst = std::max(worst, means[r]);
    if (means[r] > config.pass_tolerance) all_small = false;
  }

  MethodVerdict mv;
  mv.method = to_string(MethodKind::ntheta);
  mv.limit_estimate = ell;
  mv.verdict.horizon = config.horizon;
  mv.verdict.note = "blocks used " + std::to_string(blocks) +
                    "; final block mean " + std::to_string(means[blocks]) +
                    "; worst late-half mean " + std::to_string(worst);
  if (all_small) {
    mv.verdict.status = Status::satisfied;
  } else if (means[blocks] >= config.fail_threshold) {
    mv.verdict.status = Status::violated;
    // indices at or above the block mean; at least one exists
    mv.verdict.witness_indices =
        detail::block_deviants(seq, scheme, blocks, ell, means[blocks]);
  } else {
    mv.verdict.status = Status::inconclusive;
  }
  return mv;
}

// Per-epsilon block fractions (1/h_r)|{k in I_r : |x_k - l| >= eps}| with the
// same late-half rule, combined across the grid like the statistical method.
inline MethodVerdict lacunary_statistical_verdict(const Sequence& seq,
                                                  const LacunaryScheme& scheme,
                                                  double ell,
                                                  const AnalysisConfig& config) {
  config.validate();
  const std::size_t blocks = detail::usable_blocks(scheme, config);
  const std::size_t ne = config.epsilon_grid.size();
  const std::size_t half_start = (blocks + 1) / 2;

  std::vector<std::vector<double>> fractions(ne, std::vector<double>(blocks + 1, 0.0));
  for (std::size_t r = 1; r <= blocks; ++r) {
    std::vector<std::uint64_t> counts(ne, 0);
    for (std::uint64_t k = scheme.boundary(r - 1) + 1; k <= scheme.boundary(r); ++k) {
      const double dev = std::fabs(seq(k) - ell);
      for (std::size_t e = 0; e < ne; ++e)
        if (dev >= config.epsilon_grid[e]) ++counts[e];
    }
    for (std::size_t e = 0; e < ne; ++e)
      fractions[e][r] = static_cast<double>(counts[e]) /
                        static_cast<double>(scheme.block_length(r));
  }

  Status combined = Status::satisfied;
  double deciding_eps = config.epsilon_grid.back();
  std::string note;
  for (std::size_t e = 0; e < ne && combined != Status::violated; ++e) {
    bool all_small = true;
    for (std::size_t r = half_start; r <= blocks; ++r)
      if (fractions[e][r] > config.pass_tolerance) all_small = false;
    Status s;
    if (all_small) {
      s = Status::satisfied;
    } else if (fractions[e][blocks] >= config.fail_threshold) {
      s = Status::violated;
    } else {
      s = Status::inconclusive;
    }
    if (s != Status::satisfied) {
      combined = s;
      deciding_eps = config.epsilon_grid[e];
      note = std::string(to_string(s)) + " at eps=" +
             std::to_string(config.epsilon_grid[e]) + "; final block fraction " +
             std::to_string(fractions[e][blocks]);
    }
  }
  if (combined == Status::satisfied)
    note = "all block fractions within tolerance over the late half";

  MethodVerdict mv;
  mv.method = to_string(MethodKind::lacunary_statistical);
  mv.limit_estimate = ell;
  mv.verdict.horizon = config.horizon;
  mv.verdict.status = combined;
  mv.verdict.epsilon = deciding_eps;
  mv.verdict.note = "blocks used " + std::to_string(blocks) + "; " + note;
  if (combined == Status::violated)
    mv.verdict.witness_indices =
        detail::block_deviants(seq, scheme, blocks, ell, deciding_eps);
  return mv;
}

struct RegularityEntry {
  std::string name;
  double limit = 0.0;
  MethodVerdict verdict;
  bool pass = false;
};

struct RegularityReport {
  MethodKind method = MethodKind::statistical;
  std::vector<RegularityEntry> entries;

  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& e : entries)
      if (!e.pass) out.push_back(e.name);
    return out;
  }
};

struct ConvergentMember {
  Sequence seq;
  double limit = 0.0;
};

// Every convergent corpus member must be recognized by the method at its
// ordinary limit — the finite form of regularity.
inline RegularityReport regularity_spotcheck(MethodKind method,
                                             const std::vector<ConvergentMember>& corpus,
                                             const AnalysisConfig& config,
                                             const LacunaryScheme* scheme = nullptr) {
  config.validate();
  LacunaryScheme fallback = fibonacci_scheme_covering(config.horizon);
  const LacunaryScheme& theta = scheme ? *scheme : fallback;

  RegularityReport report;
  report.method = method;
  for (const auto& member : corpus) {
    MethodVerdict mv;
    switch (method) {
      case MethodKind::ordinary:
        mv = ordinary_limit(member.seq, config);
        break;
      case MethodKind::statistical:
        mv = statistical_limit_verdict(member.seq, member.limit, config);
        break;
      case MethodKind::lacunary_statistical:
        mv = lacunary_statistical_verdict(member.seq, theta, member.limit, config);
        break;
      case MethodKind::ntheta:
        mv = ntheta_verdict(member.seq, theta, member.limit, config);
        break;
    }
    const bool pass = mv.verdict.status == Status::satisfied;
    report.entries.push_back({member.seq.name(), member.limit, std::move(mv), pass});
  }
  return report;
}

}  // namespace wardlab
