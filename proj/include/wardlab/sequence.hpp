#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wardlab/errors.hpp"

namespace wardlab {

// A lazy real sequence over 1-based indices. Evaluation is deterministic and
// every value must be finite; a shared memo (when present) fills contiguously
// under a lock, so concurrent callers observe the same values in any order.
class Sequence {
 public:
  Sequence() = default;

  static Sequence pointwise(std::string name,
                            std::function<double(std::uint64_t)> fn) {
    Sequence s;
    s.name_ = std::move(name);
    s.fn_ = std::move(fn);
    return s;
  }

  // Same as pointwise but memoizes values 1..n contiguously.
  static Sequence cached(std::string name,
                         std::function<double(std::uint64_t)> fn) {
    Sequence s = pointwise(std::move(name), std::move(fn));
    s.memo_ = std::make_shared<Memo>();
    return s;
  }

  // step(n, prefix) sees the first n-1 values and returns the n-th; suits
  // recurrences and running sums. Always memoized.
  static Sequence incremental(
      std::string name,
      std::function<double(std::uint64_t, const std::vector<double>&)> step) {
    Sequence s;
    s.name_ = std::move(name);
    s.step_ = std::move(step);
    s.memo_ = std::make_shared<Memo>();
    return s;
  }

  double operator()(std::uint64_t n) const {
    if (n == 0) throw ContractError("sequence index must be >= 1");
    if (!memo_) {
      return checked(n, fn_(n));
    }
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto& v = memo_->values;
    while (v.size() < n) {
      const std::uint64_t next = v.size() + 1;
      v.push_back(checked(next, step_ ? step_(next, v) : fn_(next)));
    }
    return v[n - 1];
  }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::vector<std::string>& known_claims() const {
    return known_claims_;
  }
  void add_claim(std::string claim) {
    known_claims_.push_back(std::move(claim));
  }

  bool valid() const { return static_cast<bool>(fn_) || static_cast<bool>(step_); }

 private:
  struct Memo {
    std::mutex mutex;
    std::vector<double> values;
  };

  static double checked(std::uint64_t n, double v) {
    if (!std::isfinite(v)) {
      throw EvaluationError(n, "non-finite value at index " + std::to_string(n));
    }
    return v;
  }

  std::string name_;
  std::function<double(std::uint64_t)> fn_;
  std::function<double(std::uint64_t, const std::vector<double>&)> step_;
  std::shared_ptr<Memo> memo_;
  std::vector<std::string> known_claims_;
};

// Finite materialization of a sequence prefix; values[i-1] holds x_i.
struct Prefix {
  std::vector<double> values;
  std::string source_name;

  std::uint64_t size() const { return values.size(); }
  double value(std::uint64_t i) const { return values.at(i - 1); }
};

inline Prefix materialize(const Sequence& seq, std::uint64_t n) {
  if (n == 0) throw ContractError("materialize: horizon must be >= 1");
  Prefix p;
  p.source_name = seq.name();
  p.values.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) p.values.push_back(seq(i));
  return p;
}

// Strictly increasing index selector. Function-backed maps are validated at
// access time (selector(k) against selector(k-1)); vector-backed maps are
// validated up front and are finite.
class IndexMap {
 public:
  static IndexMap from_function(std::function<std::uint64_t(std::uint64_t)> f) {
    IndexMap m;
    m.fn_ = std::move(f);
    return m;
  }

  static IndexMap from_indices(std::vector<std::uint64_t> indices) {
    if (indices.empty()) throw ContractError("index map: empty index list");
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (indices[i] == 0)
        throw ContractError("index map: indices must be >= 1");
      if (i > 0 && indices[i] <= indices[i - 1])
        throw ContractError("index map: indices must be strictly increasing");
    }
    IndexMap m;
    m.indices_ = std::make_shared<std::vector<std::uint64_t>>(std::move(indices));
    return m;
  }

  std::uint64_t operator()(std::uint64_t k) const {
    if (k == 0) throw ContractError("index map argument must be >= 1");
    if (indices_) {
      if (k > indices_->size())
        throw ContractError("index map exhausted at position " +
                            std::to_string(k));
      return (*indices_)[k - 1];
    }
    const std::uint64_t s = fn_(k);
    if (s == 0) throw ContractError("index map produced index 0");
    if (k > 1 && s <= fn_(k - 1))
      throw ContractError("index map not strictly increasing at position " +
                          std::to_string(k));
    return s;
  }

  std::optional<std::uint64_t> length() const {
    if (indices_) return indices_->size();
    return std::nullopt;
  }

 private:
  std::function<std::uint64_t(std::uint64_t)> fn_;
  std::shared_ptr<std::vector<std::uint64_t>> indices_;
};

// compose(outer, inner)(k) = outer(inner(k))
inline IndexMap compose(const IndexMap& outer, const IndexMap& inner) {
  return IndexMap::from_function(
      [outer, inner](std::uint64_t k) { return outer(inner(k)); });
}

// Delta x_n = x_n - x_{n+1}
inline Sequence forward_difference(const Sequence& seq) {
  return Sequence::pointwise("delta(" + seq.name() + ")",
                             [seq](std::uint64_t n) {
                               return seq(n) - seq(n + 1);
                             });
}

inline Sequence subsequence(const Sequence& seq, const IndexMap& map) {
  return Sequence::pointwise("subsequence(" + seq.name() + ")",
                             [seq, map](std::uint64_t k) {
                               return seq(map(k));
                             });
}

// (x_1, l, x_1, l, x_2, l, x_2, l, ...): index 4n-3 and 4n-1 give x_n,
// 4n-2 and 4n give l. A length-4N prefix touches exactly x_1..x_N.
inline Sequence interleave_with_constant(const Sequence& seq, double ell) {
  return Sequence::pointwise(
      "interleave(" + seq.name() + "," + std::to_string(ell) + ")",
      [seq, ell](std::uint64_t n) {
        const std::uint64_t group = (n + 3) / 4;
        const std::uint64_t pos = (n - 1) % 4;
        return (pos % 2 == 0) ? seq(group) : ell;
      });
}

// (a_1, b_1, a_2, b_2, ...)
inline Sequence interleave_pairs(const Sequence& a, const Sequence& b) {
  return Sequence::pointwise(
      "interleave(" + a.name() + "," + b.name() + ")",
      [a, b](std::uint64_t n) {
        return (n % 2 == 1) ? a((n + 1) / 2) : b(n / 2);
      });
}

inline Sequence reflect(const Sequence& seq) {
  return Sequence::pointwise("reflect(" + seq.name() + ")",
                             [seq](std::uint64_t n) { return -seq(n); });
}

}  // namespace wardlab
