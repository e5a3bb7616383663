#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wardlab/classifiers.hpp"
#include "wardlab/real_set.hpp"
#include "wardlab/sequence.hpp"

namespace wardlab {

struct FunctionUnderTest {
  std::function<double(double)> eval;
  RealSet domain = RealSet::reals();
  std::string name;
};

enum class PreservationProperty {
  upward_preserving,        // dS+ : upward half qC -> upward half qC
  upward_to_convergent,     // dS+c: upward half qC -> convergent
  convergent_preserving,    // c   : convergent -> convergent
  convergent_to_upward,     // cdS+: convergent -> upward half qC
  statistical_preserving,   // st  : stat convergent -> stat convergent
  downward_preserving,      // dS-
  downward_to_convergent,   // dS-c
  convergent_to_downward    // cdS-
};

inline const std::vector<PreservationProperty>& all_preservation_properties() {
  static const std::vector<PreservationProperty> all{
      PreservationProperty::upward_preserving,
      PreservationProperty::upward_to_convergent,
      PreservationProperty::convergent_preserving,
      PreservationProperty::convergent_to_upward,
      PreservationProperty::statistical_preserving,
      PreservationProperty::downward_preserving,
      PreservationProperty::downward_to_convergent,
      PreservationProperty::convergent_to_downward};
  return all;
}

inline const char* label(PreservationProperty p) {
  switch (p) {
    case PreservationProperty::upward_preserving: return "dS+";
    case PreservationProperty::upward_to_convergent: return "dS+c";
    case PreservationProperty::convergent_preserving: return "c";
    case PreservationProperty::convergent_to_upward: return "cdS+";
    case PreservationProperty::statistical_preserving: return "st";
    case PreservationProperty::downward_preserving: return "dS-";
    case PreservationProperty::downward_to_convergent: return "dS-c";
    default: return "cdS-";
  }
}

inline PreservationProperty parse_preservation_property(const std::string& s) {
  for (PreservationProperty p : all_preservation_properties())
    if (s == label(p)) return p;
  throw ContractError("unknown preservation property: " + s);
}

inline SequenceClass antecedent_class(PreservationProperty p) {
  switch (p) {
    case PreservationProperty::upward_preserving:
    case PreservationProperty::upward_to_convergent:
      return SequenceClass::statUpHalfQuasiCauchy;
    case PreservationProperty::downward_preserving:
    case PreservationProperty::downward_to_convergent:
      return SequenceClass::statDownHalfQuasiCauchy;
    case PreservationProperty::statistical_preserving:
      return SequenceClass::statConvergent;
    default:
      return SequenceClass::convergent;
  }
}

inline SequenceClass consequent_class(PreservationProperty p) {
  switch (p) {
    case PreservationProperty::upward_preserving:
    case PreservationProperty::convergent_to_upward:
      return SequenceClass::statUpHalfQuasiCauchy;
    case PreservationProperty::downward_preserving:
    case PreservationProperty::convergent_to_downward:
      return SequenceClass::statDownHalfQuasiCauchy;
    case PreservationProperty::statistical_preserving:
      return SequenceClass::statConvergent;
    default:
      return SequenceClass::convergent;
  }
}

// f applied pointwise, memoized; values outside an interval/point domain
// raise DomainError with the index (generator domains skip the check).
inline Sequence apply_function(const FunctionUnderTest& f, const Sequence& seq) {
  const bool checkable = f.domain.kind() != RealSet::Kind::generator;
  return Sequence::cached(
      f.name + "(" + seq.name() + ")", [f, seq, checkable](std::uint64_t n) {
        const double v = seq(n);
        if (checkable && !f.domain.contains(v))
          throw DomainError(n, "value " + std::to_string(v) + " at index " +
                                   std::to_string(n) + " outside domain of " +
                                   f.name);
        return f.eval(v);
      });
}

struct PropertyOutcome {
  PreservationProperty property = PreservationProperty::upward_preserving;
  Verdict verdict;
  std::vector<std::string> skipped;  // antecedent violated or inconclusive
  std::vector<std::pair<std::string, Status>> evaluated;
  std::optional<std::string> witness;  // first member whose image is violated
};

namespace detail {

// Verdict cache shared across the lattice: antecedents do not depend on f,
// image verdicts are keyed per member and class.
struct LabCache {
  std::map<std::pair<std::size_t, SequenceClass>, Verdict> antecedent;
  std::map<std::pair<std::size_t, SequenceClass>, Verdict> image;
  std::vector<Sequence> images;
};

inline PropertyOutcome run_property(const FunctionUnderTest& f,
                                    PreservationProperty prop,
                                    const std::vector<Sequence>& corpus,
                                    const AnalysisConfig& config,
                                    LabCache& cache) {
  if (cache.images.empty()) {
    for (const auto& member : corpus)
      cache.images.push_back(apply_function(f, member));
  }
  const SequenceClass ante = antecedent_class(prop);
  const SequenceClass cons = consequent_class(prop);

  PropertyOutcome out;
  out.property = prop;
  bool any_inconclusive = false;
  std::optional<Verdict> violated_verdict;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto akey = std::make_pair(i, ante);
    auto ait = cache.antecedent.find(akey);
    if (ait == cache.antecedent.end())
      ait = cache.antecedent
                .emplace(akey, classify_one(corpus[i], ante, config))
                .first;
    if (ait->second.status != Status::satisfied) {
      out.skipped.push_back(corpus[i].name());
      continue;
    }

    auto ikey = std::make_pair(i, cons);
    auto iit = cache.image.find(ikey);
    if (iit == cache.image.end())
      iit = cache.image
                .emplace(ikey, classify_one(cache.images[i], cons, config))
                .first;
    out.evaluated.emplace_back(corpus[i].name(), iit->second.status);
    if (iit->second.status == Status::violated && !violated_verdict) {
      violated_verdict = iit->second;
      out.witness = corpus[i].name();
    } else if (iit->second.status == Status::inconclusive) {
      any_inconclusive = true;
    }
  }

  out.verdict.horizon = config.horizon;
  if (violated_verdict) {
    out.verdict = *violated_verdict;
    out.verdict.note = "witness " + *out.witness + ": " + out.verdict.note;
    out.verdict.status = Status::violated;
  } else if (any_inconclusive) {
    out.verdict.status = Status::inconclusive;
    out.verdict.note = "some image verdict inconclusive";
  } else if (out.evaluated.empty()) {
    out.verdict.status = Status::inconclusive;
    out.verdict.note = "no corpus member satisfies the antecedent class";
  } else {
    out.verdict.status = Status::satisfied;
    out.verdict.note = "every qualifying image verdict satisfied (" +
                       std::to_string(out.evaluated.size()) + " members)";
  }
  return out;
}

}  // namespace detail

inline PropertyOutcome preservation_verdict(const FunctionUnderTest& f,
                                            PreservationProperty prop,
                                            const std::vector<Sequence>& corpus,
                                            const AnalysisConfig& config) {
  config.validate();
  detail::LabCache cache;
  return detail::run_property(f, prop, corpus, config, cache);
}

struct ImplicationCheck {
  PreservationProperty from = PreservationProperty::upward_preserving;
  PreservationProperty to = PreservationProperty::upward_preserving;
  bool consistent = true;
};

struct LatticeReport {
  std::string function_name;
  std::vector<PropertyOutcome> properties;
  std::vector<ImplicationCheck> implications;

  const PropertyOutcome& outcome_for(PreservationProperty p) const {
    for (const auto& o : properties)
      if (o.property == p) return o;
    throw ContractError("property missing from lattice report");
  }
  bool all_consistent() const {
    for (const auto& c : implications)
      if (!c.consistent) return false;
    return true;
  }
};

// The asserted implications; the two equivalences appear as directed pairs.
inline const std::vector<std::pair<PreservationProperty, PreservationProperty>>&
asserted_implications() {
  using P = PreservationProperty;
  static const std::vector<std::pair<P, P>> all{
      {P::upward_to_convergent, P::upward_preserving},
      {P::upward_preserving, P::convergent_to_upward},
      {P::upward_to_convergent, P::convergent_preserving},
      {P::convergent_preserving, P::convergent_to_upward},
      {P::convergent_to_upward, P::convergent_preserving},
      {P::upward_preserving, P::statistical_preserving},
      {P::downward_to_convergent, P::downward_preserving},
      {P::downward_preserving, P::convergent_to_downward},
      {P::downward_to_convergent, P::convergent_preserving},
      {P::convergent_preserving, P::convergent_to_downward},
      {P::convergent_to_downward, P::convergent_preserving},
      {P::downward_preserving, P::statistical_preserving}};
  return all;
}

// All eight property verdicts plus a consistency flag per asserted
// implication: inconsistent only when the antecedent property is satisfied
// and the implied one is violated on the same corpus and config.
inline LatticeReport implication_lattice_report(const FunctionUnderTest& f,
                                                const std::vector<Sequence>& corpus,
                                                const AnalysisConfig& config) {
  config.validate();
  detail::LabCache cache;
  LatticeReport report;
  report.function_name = f.name;
  for (PreservationProperty p : all_preservation_properties())
    report.properties.push_back(detail::run_property(f, p, corpus, config, cache));
  for (const auto& [from, to] : asserted_implications()) {
    const Status sf = report.outcome_for(from).verdict.status;
    const Status st = report.outcome_for(to).verdict.status;
    report.implications.push_back(
        {from, to, !(sf == Status::satisfied && st == Status::violated)});
  }
  return report;
}

// The constant-interleave construction: requires the input statistically
// convergent to l, then checks that the image of (x_1, l, x_1, l, x_2, ...)
// is upward half quasi-Cauchy and that f(x_k) clusters at f(l) in density.
inline Verdict interleave_continuity_check(const FunctionUnderTest& f,
                                           const Sequence& seq, double ell,
                                           const AnalysisConfig& config) {
  config.validate();
  const MethodVerdict pre = statistical_limit_verdict(seq, ell, config);
  if (pre.verdict.status != Status::satisfied)
    throw PreconditionError("input not statistically convergent to " +
                            std::to_string(ell) + " (verdict " +
                            to_string(pre.verdict.status) + ")");

  const Sequence image = apply_function(f, interleave_with_constant(seq, ell));
  const Verdict upward = stat_upward_hqc_verdict(image, config);

  const double fl = f.eval(ell);
  const Sequence source_image = apply_function(f, seq);
  const Verdict cluster = combine_epsilon_verdicts(
      margin_profile(
          [source_image, fl](std::uint64_t k) {
            return std::fabs(source_image(k) - fl);
          },
          config, "|f(x_k) - f(l)|"),
      config);

  Verdict v;
  v.horizon = config.horizon;
  v.note = "interleaved image upward verdict: " +
           std::string(to_string(upward.status)) +
           "; density of |f(x_k) - f(l)|: " +
           std::string(to_string(cluster.status));
  if (upward.status == Status::satisfied && cluster.status == Status::satisfied) {
    v.status = Status::satisfied;
    v.trace = cluster.trace;
    v.epsilon = cluster.epsilon;
  } else if (upward.status == Status::violated) {
    v = upward;
    v.note = "interleaved image not upward half quasi-Cauchy; " + v.note;
  } else if (cluster.status == Status::violated) {
    v = cluster;
    v.note = "image values do not cluster at f(l); " + v.note;
  } else {
    v.status = Status::inconclusive;
  }
  return v;
}

struct UcPair {
  std::uint64_t n = 0;
  double x = 0.0;
  double y = 0.0;
  double fx = 0.0;
  double fy = 0.0;

  double gap() const { return std::fabs(x - y); }
  double spread() const { return std::fabs(fx - fy); }
};

struct UcSearchResult {
  std::uint64_t n_max = 0;
  double eps0 = 0.0;
  std::vector<std::optional<UcPair>> per_n;  // index n-1

  bool complete() const {
    for (const auto& p : per_n)
      if (!p) return false;
    return true;
  }
  bool none_found() const {
    for (const auto& p : per_n)
      if (p) return false;
    return true;
  }
  std::vector<UcPair> found() const {
    std::vector<UcPair> out;
    for (const auto& p : per_n)
      if (p) out.push_back(*p);
    return out;
  }
};

namespace detail {

inline std::pair<double, double> search_window(const RealSet& domain,
                                               std::uint64_t n) {
  if (domain.kind() != RealSet::Kind::intervals)
    throw DomainError(0, "witness search needs an interval domain");
  const Interval& iv = domain.interval_list().front();
  const double span = std::max(8.0, 2.0 * static_cast<double>(n));
  double lo, hi;
  if (std::isinf(iv.lower) && std::isinf(iv.upper)) {
    lo = -span / 2.0;
    hi = span / 2.0;
  } else if (std::isinf(iv.upper)) {
    lo = iv.lower;
    hi = iv.lower + span;
  } else if (std::isinf(iv.lower)) {
    lo = iv.upper - span;
    hi = iv.upper;
  } else {
    lo = iv.lower;
    hi = iv.upper;
  }
  return {lo, hi};
}

inline double golden_refine(const std::function<double(double)>& g, double a,
                            double b) {
  constexpr double phi = 0.6180339887498949;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double g1 = g(x1), g2 = g(x2);
  for (int it = 0; it < 60; ++it) {
    if (g1 < g2) {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + phi * (b - a);
      g2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - phi * (b - a);
      g1 = g(x1);
    }
  }
  return g1 > g2 ? x1 : x2;
}

}  // namespace detail

// For each n <= n_max, search a deterministic grid (1024 points per unit,
// capped) plus golden-section refinement for x, y in the domain with
// |x - y| < 1/n and |f(x) - f(y)| >= eps0. Pairs for every n certify
// non-uniform continuity at scale n_max.
inline UcSearchResult uniform_continuity_witness_search(
    const FunctionUnderTest& f, std::uint64_t n_max, double eps0,
    const AnalysisConfig& config) {
  config.validate();
  if (n_max == 0) throw ContractError("witness search: nMax must be >= 1");
  if (eps0 <= 0.0) throw ContractError("witness search: eps0 must be positive");

  UcSearchResult result;
  result.n_max = n_max;
  result.eps0 = eps0;
  result.per_n.resize(n_max);

  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const auto [wlo, whi] = detail::search_window(f.domain, n);
    const double inv_n = 1.0 / static_cast<double>(n);
    std::optional<UcPair> found;
    for (double scale : {0.999, 0.99, 0.9, 0.5}) {
      const double delta = scale * inv_n;
      const double xhi = whi - delta;
      if (xhi <= wlo) continue;
      const double span = xhi - wlo;
      const std::size_t points = static_cast<std::size_t>(
          std::min(262144.0, std::max(64.0, span * 1024.0)));
      const double stride = span / static_cast<double>(points);

      auto spread_at = [&](double x) {
        return std::fabs(f.eval(x) - f.eval(x + delta));
      };
      double best_x = wlo, best_g = -1.0;
      for (std::size_t i = 0; i <= points; ++i) {
        const double x = wlo + stride * static_cast<double>(i);
        const double g = spread_at(x);
        if (g > best_g) {
          best_g = g;
          best_x = x;
        }
      }
      const double rx = detail::golden_refine(
          spread_at, std::max(wlo, best_x - stride), std::min(xhi, best_x + stride));
      double cand_x = spread_at(rx) >= best_g ? rx : best_x;
      const double cand_y = cand_x + delta;
      const double fx = f.eval(cand_x), fy = f.eval(cand_y);
      if (std::fabs(fx - fy) >= eps0 && std::fabs(cand_x - cand_y) < inv_n &&
          f.domain.contains(cand_x) && f.domain.contains(cand_y)) {
        found = UcPair{n, cand_x, cand_y, fx, fy};
        break;
      }
    }
    result.per_n[n - 1] = found;
  }
  return result;
}

namespace detail {

// Error-free float transforms (Shewchuk). two_diff splits a - b into a
// rounded sum s + e held exactly; grow_expansion keeps expansions
// nonoverlapping, so an expansion sums to zero iff every component is zero.
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bv = s - a;
  const double av = s - bv;
  e = (a - av) + (b - bv);
}

inline void two_diff(double a, double b, double& s, double& e) {
  s = a - b;
  const double bv = a - s;
  const double av = s + bv;
  e = (a - av) + (bv - b);
}

inline std::vector<double> grow_expansion(const std::vector<double>& exp,
                                          double b) {
  std::vector<double> out;
  double q = b;
  for (double component : exp) {
    double s, e;
    two_sum(q, component, s, e);
    out.push_back(e);
    q = s;
  }
  out.push_back(q);
  return out;
}

inline bool expansion_is_zero(const std::vector<double>& exp) {
  for (double c : exp)
    if (c != 0.0) return false;
  return true;
}

}  // namespace detail

// Exact check of y_{n_k} - y_{n_{k+1}} =
//   (y_{n_k} - x_{n_k}) + (x_{n_k} - x_{n_{k+1}}) + (x_{n_{k+1}} - y_{n_{k+1}})
// summed left to right in error-free arithmetic; catches nondeterministic or
// misindexed evaluators, and holds for every pure input.
inline bool three_sum_decomposition_check(const Sequence& x, const Sequence& y,
                                          const IndexMap& map,
                                          std::uint64_t horizon) {
  if (horizon == 0) throw ContractError("three_sum check: horizon must be >= 1");
  for (std::uint64_t k = 1; k <= horizon; ++k) {
    const std::uint64_t nk = map(k);
    const std::uint64_t nk1 = map(k + 1);

    double s1, e1, s2, e2, s3, e3, l, el;
    detail::two_diff(y(nk), x(nk), s1, e1);
    detail::two_diff(x(nk), x(nk1), s2, e2);
    detail::two_diff(x(nk1), y(nk1), s3, e3);
    detail::two_diff(y(nk), y(nk1), l, el);

    std::vector<double> diff;
    for (double c : {s1, e1, s2, e2, s3, e3, -l, -el})
      diff = detail::grow_expansion(diff, c);
    if (!detail::expansion_is_zero(diff)) return false;
  }
  return true;
}

struct FunctionSequence {
  std::function<FunctionUnderTest(std::uint64_t)> member;
  FunctionUnderTest limit;
  std::uint64_t uniform_index = 1;  // N with sup |f_n - f| small beyond it
  double uniform_gap = 0.0;         // declared sup distance at n >= N
};

// Uniform-limit check: with the gap below eps/3, the deviant set of the
// limit image is covered by three eps/3 sets; the exact counting inequality
// must hold at every checkpoint, and the verdict reported is the upward
// verdict of the limit image.
inline Verdict uniform_limit_preservation(const FunctionSequence& fseq,
                                          const Sequence& seq, double eps,
                                          const AnalysisConfig& config) {
  config.validate();
  if (eps <= 0.0) throw ContractError("uniform_limit_preservation: eps > 0");
  if (fseq.uniform_gap >= eps / 3.0)
    throw PreconditionError("declared uniform gap " +
                            std::to_string(fseq.uniform_gap) +
                            " not below eps/3 = " + std::to_string(eps / 3.0));
  const Verdict input = stat_upward_hqc_verdict(seq, config);
  if (input.status != Status::satisfied)
    throw PreconditionError("input sequence upward verdict is " +
                            std::string(to_string(input.status)));

  const FunctionUnderTest fN = fseq.member(fseq.uniform_index);
  const auto& f = fseq.limit;
  const std::uint64_t N = config.horizon;
  const auto schedule = checkpoint_schedule(N, config.checkpoint_count);

  // measured gap on the sequence's own points must also obey the bound
  double measured_gap = 0.0;
  for (std::uint64_t k = 1; k <= N + 1; ++k) {
    measured_gap =
        std::max(measured_gap, std::fabs(fN.eval(seq(k)) - f.eval(seq(k))));
  }
  if (measured_gap >= eps / 3.0)
    throw PreconditionError("measured gap " + std::to_string(measured_gap) +
                            " on the sampled points not below eps/3");

  std::uint64_t c_limit = 0, c_left = 0, c_mid = 0, c_right = 0;
  std::vector<std::uint64_t> failures;
  std::size_t next_cp = 0;
  for (std::uint64_t k = 1; k <= N; ++k) {
    const double xk = seq(k), xk1 = seq(k + 1);
    const double third = eps / 3.0;
    if (f.eval(xk) - f.eval(xk1) >= eps) ++c_limit;
    if (std::fabs(f.eval(xk) - fN.eval(xk)) >= third) ++c_left;
    if (fN.eval(xk) - fN.eval(xk1) >= third) ++c_mid;
    if (std::fabs(fN.eval(xk1) - f.eval(xk1)) >= third) ++c_right;
    if (next_cp < schedule.size() && k == schedule[next_cp]) {
      if (c_limit > c_left + c_mid + c_right) failures.push_back(k);
      ++next_cp;
    }
  }

  const Sequence limit_image = apply_function(f, seq);
  Verdict v = stat_upward_hqc_verdict(limit_image, config);
  if (!failures.empty()) {
    v.status = Status::violated;
    v.witness_indices = failures;
    v.note = "counting inclusion failed at " + std::to_string(failures.size()) +
             " checkpoint(s); " + v.note;
  } else {
    v.note = "counting inclusion held at every checkpoint; limit-image upward "
             "verdict: " + std::string(to_string(v.status)) + "; " + v.note;
  }
  return v;
}

}  // namespace wardlab
