#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wardlab/errors.hpp"

namespace wardlab {

// One interval; infinite endpoints use +-infinity and are always open.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool lower_closed = true;
  bool upper_closed = true;

  static Interval closed(double a, double b) { return {a, b, true, true}; }
  static Interval open(double a, double b) { return {a, b, false, false}; }
  static Interval make(double a, double b, bool lc, bool uc) {
    Interval iv{a, b, lc, uc};
    if (std::isinf(iv.lower)) iv.lower_closed = false;
    if (std::isinf(iv.upper)) iv.upper_closed = false;
    return iv;
  }

  bool empty() const {
    if (lower > upper) return true;
    if (lower == upper) return !(lower_closed && upper_closed) || std::isinf(lower);
    return false;
  }

  bool contains(double x) const {
    if (x < lower || (x == lower && !lower_closed)) return false;
    if (x > upper || (x == upper && !upper_closed)) return false;
    return true;
  }
};

// Finite union of intervals, an explicit finite point list, or a
// generator-backed set carrying declared bound metadata.
class RealSet {
 public:
  enum class Kind { intervals, points, generator };

  struct Bound {
    enum class Kind { finite, unbounded, undeclared } kind = Kind::undeclared;
    double value = 0.0;

    static Bound finite(double v) { return {Kind::finite, v}; }
    static Bound unbounded() { return {Kind::unbounded, 0.0}; }
    static Bound undeclared() { return {Kind::undeclared, 0.0}; }
  };

  static RealSet intervals(std::vector<Interval> ivs) {
    std::vector<Interval> kept;
    for (const auto& iv : ivs) {
      if (iv.lower > iv.upper)
        throw ContractError("real set: interval with lower > upper");
      if (!iv.empty()) kept.push_back(iv);
    }
    if (kept.empty()) throw ContractError("real set: empty interval union");
    std::sort(kept.begin(), kept.end(), [](const Interval& a, const Interval& b) {
      if (a.lower != b.lower) return a.lower < b.lower;
      return a.lower_closed && !b.lower_closed;
    });
    std::vector<Interval> merged{kept.front()};
    for (std::size_t i = 1; i < kept.size(); ++i) {
      Interval& last = merged.back();
      const Interval& cur = kept[i];
      const bool overlaps =
          cur.lower < last.upper ||
          (cur.lower == last.upper && (cur.lower_closed || last.upper_closed));
      if (overlaps) {
        if (cur.upper > last.upper ||
            (cur.upper == last.upper && cur.upper_closed)) {
          last.upper = cur.upper;
          last.upper_closed = cur.upper_closed;
        }
      } else {
        merged.push_back(cur);
      }
    }
    RealSet s;
    s.repr_ = std::move(merged);
    return s;
  }

  static RealSet points(std::vector<double> pts) {
    if (pts.empty()) throw ContractError("real set: empty point list");
    for (double p : pts)
      if (!std::isfinite(p)) throw ContractError("real set: non-finite point");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    RealSet s;
    s.repr_ = std::move(pts);
    return s;
  }

  static RealSet reals() {
    return intervals({Interval::make(-std::numeric_limits<double>::infinity(),
                                     std::numeric_limits<double>::infinity(),
                                     false, false)});
  }

  static RealSet generator(std::function<double(std::uint64_t)> enumerate,
                           Bound declared_inf, Bound declared_sup,
                           std::string label = "generator") {
    RealSet s;
    s.repr_ = Generator{std::move(enumerate), declared_inf, declared_sup,
                        std::move(label)};
    return s;
  }

  Kind kind() const {
    if (std::holds_alternative<std::vector<Interval>>(repr_)) return Kind::intervals;
    if (std::holds_alternative<std::vector<double>>(repr_)) return Kind::points;
    return Kind::generator;
  }

  const std::vector<Interval>& interval_list() const {
    return std::get<std::vector<Interval>>(repr_);
  }
  const std::vector<double>& point_list() const {
    return std::get<std::vector<double>>(repr_);
  }

  Bound declared_inf() const { return std::get<Generator>(repr_).inf; }
  Bound declared_sup() const { return std::get<Generator>(repr_).sup; }
  double enumerate(std::uint64_t i) const {
    return std::get<Generator>(repr_).enumerate(i);
  }

  bool contains(double x) const {
    switch (kind()) {
      case Kind::intervals:
        for (const auto& iv : interval_list())
          if (iv.contains(x)) return true;
        return false;
      case Kind::points:
        return std::binary_search(point_list().begin(), point_list().end(), x);
      default:
        throw UndecidableError("membership undecidable for generator-backed set");
    }
  }

  std::string to_string() const {
    std::ostringstream os;
    switch (kind()) {
      case Kind::intervals: {
        bool first = true;
        for (const auto& iv : interval_list()) {
          if (!first) os << " U ";
          first = false;
          os << (iv.lower_closed ? '[' : '(');
          if (std::isinf(iv.lower)) os << "-inf"; else os << iv.lower;
          os << ',';
          if (std::isinf(iv.upper)) os << "inf"; else os << iv.upper;
          os << (iv.upper_closed ? ']' : ')');
        }
        return os.str();
      }
      case Kind::points: {
        os << '{';
        for (std::size_t i = 0; i < point_list().size(); ++i)
          os << (i ? "," : "") << point_list()[i];
        os << '}';
        return os.str();
      }
      default:
        return std::get<Generator>(repr_).label;
    }
  }

 private:
  struct Generator {
    std::function<double(std::uint64_t)> enumerate;
    Bound inf;
    Bound sup;
    std::string label;
  };

  std::variant<std::vector<Interval>, std::vector<double>, Generator> repr_;
};

namespace detail {

inline std::vector<Interval> as_intervals(const RealSet& s) {
  switch (s.kind()) {
    case RealSet::Kind::intervals:
      return s.interval_list();
    case RealSet::Kind::points: {
      std::vector<Interval> ivs;
      for (double p : s.point_list()) ivs.push_back(Interval::closed(p, p));
      return ivs;
    }
    default:
      throw UndecidableError("set algebra needs interval or point representation");
  }
}

}  // namespace detail

inline RealSet set_union(const RealSet& a, const RealSet& b) {
  auto ivs = detail::as_intervals(a);
  const auto more = detail::as_intervals(b);
  ivs.insert(ivs.end(), more.begin(), more.end());
  return RealSet::intervals(std::move(ivs));
}

inline std::optional<RealSet> set_intersection(const RealSet& a, const RealSet& b) {
  std::vector<Interval> out;
  for (const auto& p : detail::as_intervals(a)) {
    for (const auto& q : detail::as_intervals(b)) {
      Interval iv;
      if (p.lower > q.lower || (p.lower == q.lower && !p.lower_closed)) {
        iv.lower = p.lower;
        iv.lower_closed = p.lower_closed;
      } else {
        iv.lower = q.lower;
        iv.lower_closed = q.lower_closed;
      }
      if (p.upper < q.upper || (p.upper == q.upper && !p.upper_closed)) {
        iv.upper = p.upper;
        iv.upper_closed = p.upper_closed;
      } else {
        iv.upper = q.upper;
        iv.upper_closed = q.upper_closed;
      }
      if (iv.lower <= iv.upper && !iv.empty()) out.push_back(iv);
    }
  }
  if (out.empty()) return std::nullopt;  // empty sets are not representable
  return RealSet::intervals(std::move(out));
}

// Accepts "[a,b]", "(a,inf)", "{v1,v2,...}", "R", and unions joined by "U".
inline RealSet parse_real_set(const std::string& text) {
  auto strip = [](std::string s) {
    const auto a = s.find_first_not_of(" \t");
    const auto b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return std::string();
    return s.substr(a, b - a + 1);
  };
  auto parse_endpoint = [](std::string tok) {
    std::string low;
    for (char ch : tok) low += static_cast<char>(std::tolower(ch));
    if (low == "inf" || low == "+inf" || low == "infinity")
      return std::numeric_limits<double>::infinity();
    if (low == "-inf" || low == "-infinity")
      return -std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw ContractError("set literal: bad endpoint '" + tok + "'");
    }
    if (used != tok.size())
      throw ContractError("set literal: bad endpoint '" + tok + "'");
    return v;
  };

  const std::string whole = strip(text);
  if (whole.empty()) throw ContractError("set literal: empty");

  // split on top-level 'U' (union)
  std::vector<std::string> parts;
  {
    int depth = 0;
    std::string cur;
    for (char ch : whole) {
      if (ch == '[' || ch == '(' || ch == '{') ++depth;
      if (ch == ']' || ch == ')' || ch == '}') --depth;
      if (depth == 0 && (ch == 'U' || ch == 'u')) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    parts.push_back(cur);
  }

  std::vector<Interval> ivs;
  std::vector<double> pts;
  for (std::string raw : parts) {
    const std::string part = strip(raw);
    if (part.empty()) throw ContractError("set literal: empty union member");
    if (part == "R" || part == "r") {
      ivs.push_back(Interval::make(-std::numeric_limits<double>::infinity(),
                                   std::numeric_limits<double>::infinity(), false,
                                   false));
      continue;
    }
    const char open = part.front();
    const char close = part.back();
    if (open == '{') {
      if (close != '}') throw ContractError("set literal: unbalanced braces");
      std::stringstream ss(part.substr(1, part.size() - 2));
      std::string tok;
      while (std::getline(ss, tok, ',')) pts.push_back(parse_endpoint(strip(tok)));
      continue;
    }
    if ((open != '[' && open != '(') || (close != ']' && close != ')'))
      throw ContractError("set literal: expected brackets in '" + part + "'");
    const std::string inner = part.substr(1, part.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string::npos)
      throw ContractError("set literal: expected 'lo,hi' in '" + part + "'");
    const double lo = parse_endpoint(strip(inner.substr(0, comma)));
    const double hi = parse_endpoint(strip(inner.substr(comma + 1)));
    ivs.push_back(Interval::make(lo, hi, open == '[', close == ']'));
  }

  if (!pts.empty() && ivs.empty()) return RealSet::points(std::move(pts));
  for (double p : pts) ivs.push_back(Interval::closed(p, p));
  return RealSet::intervals(std::move(ivs));
}

}  // namespace wardlab
