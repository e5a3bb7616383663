#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wardlab/catalogue.hpp"
#include "wardlab/compactness.hpp"
#include "wardlab/rng.hpp"

using namespace wardlab;

namespace {

Sequence seq(const char* name) { return Catalogue::instance().get(name); }

// seeded finite unions of intervals, some unbounded on either side
RealSet random_interval_set(std::uint64_t seed) {
  const std::size_t pieces = 1 + splitmix64(seed) % 3;
  std::vector<Interval> ivs;
  for (std::size_t i = 0; i < pieces; ++i) {
    const std::uint64_t h = splitmix64(seed * 31 + i);
    double lo = -50.0 + 100.0 * unit_double(splitmix64(h));
    double hi = lo + 40.0 * unit_double(splitmix64(h ^ 7));
    if (h % 5 == 0) lo = -std::numeric_limits<double>::infinity();
    if (h % 7 == 0) hi = std::numeric_limits<double>::infinity();
    ivs.push_back(Interval::make(lo, hi, h % 2 == 0, h % 3 == 0));
  }
  return RealSet::intervals(std::move(ivs));
}

}  // namespace

TEST_CASE("set literal parsing") {
  CHECK(parse_real_set("[0,inf)").to_string() == "[0,inf)");
  CHECK(parse_real_set("(-inf,3]").to_string() == "(-inf,3]");
  CHECK(parse_real_set("{1,2,7}").kind() == RealSet::Kind::points);
  CHECK(parse_real_set("R").to_string() == "(-inf,inf)");
  const RealSet u = parse_real_set("[0,1] U [5,6]");
  CHECK(u.interval_list().size() == 2);
  const RealSet merged = parse_real_set("[0,2] U [1,6]");
  CHECK(merged.interval_list().size() == 1);

  CHECK_THROWS_AS(parse_real_set(""), ContractError);
  CHECK_THROWS_AS(parse_real_set("[a,b]"), ContractError);
  CHECK_THROWS_AS(parse_real_set("[1;2]"), ContractError);
  CHECK_THROWS_AS(parse_real_set("(3,1)"), ContractError);  // empty
}

TEST_CASE("interval membership respects openness") {
  const RealSet half_open = parse_real_set("(0,1]");
  CHECK_FALSE(half_open.contains(0.0));
  CHECK(half_open.contains(1.0));
  CHECK(half_open.contains(0.5));
  CHECK_FALSE(half_open.contains(1.5));
}

TEST_CASE("boundedness probes") {
  const RealSet ray = parse_real_set("[0,inf)");
  CHECK(bounded_below(ray));
  CHECK_FALSE(bounded_above(ray));

  const RealSet left = parse_real_set("(-inf,3]");
  CHECK_FALSE(bounded_below(left));
  CHECK(bounded_above(left));

  const RealSet pts = parse_real_set("{1,2,7}");
  CHECK(bounded_below(pts));
  CHECK(bounded_above(pts));
}

TEST_CASE("compactness probes are the boundedness equivalences") {
  const RealSet ray = parse_real_set("[0,inf)");
  CHECK(stat_upward_compact(ray));
  CHECK_FALSE(stat_downward_compact(ray));

  const RealSet whole = RealSet::reals();
  CHECK_FALSE(stat_upward_compact(whole));
  CHECK_FALSE(stat_downward_compact(whole));

  const RealSet box = parse_real_set("[-1,1]");
  CHECK(stat_upward_compact(box));
  CHECK(stat_downward_compact(box));
  CHECK(bounded(box));

  for (std::uint64_t s = 1; s <= 50; ++s) {
    const RealSet set = random_interval_set(s);
    CHECK(stat_upward_compact(set) == bounded_below(set));
    CHECK(stat_downward_compact(set) == bounded_above(set));
    CHECK(bounded(set) == (stat_upward_compact(set) && stat_downward_compact(set)));
  }
}

TEST_CASE("generator sets need declared bounds") {
  auto gen = [](std::uint64_t i) { return static_cast<double>(i); };
  const RealSet declared = RealSet::generator(gen, RealSet::Bound::finite(1.0),
                                              RealSet::Bound::unbounded());
  CHECK(bounded_below(declared));
  CHECK_FALSE(bounded_above(declared));

  const RealSet mystery = RealSet::generator(gen, RealSet::Bound::undeclared(),
                                             RealSet::Bound::unbounded());
  CHECK_THROWS_AS(bounded_below(mystery), UndecidableError);
}

TEST_CASE("set algebra preserves the compactness probes") {
  const RealSet a = parse_real_set("[0,5]");
  const RealSet b = parse_real_set("[10,12] U [20,inf)");
  // union of two bounded-below sets stays bounded below (upward compact)
  const RealSet u = set_union(a, b);
  CHECK(stat_upward_compact(u));
  CHECK_FALSE(stat_downward_compact(u));  // b is unbounded above

  // any intersection with a bounded set is bounded (subset behavior)
  const auto inter = set_intersection(u, parse_real_set("[1,25]"));
  REQUIRE(inter.has_value());
  CHECK(bounded(*inter));

  const auto empty = set_intersection(a, parse_real_set("[100,101]"));
  CHECK_FALSE(empty.has_value());
}

TEST_CASE("descending witness examples") {
  const Prefix w = descending_witness(RealSet::reals(), 4);
  CHECK(w.values == std::vector<double>{0, -2, -4, -6});

  CHECK_THROWS_AS(ascending_witness(parse_real_set("(-inf,0)"), 3),
                  NoWitnessError);
  CHECK_THROWS_AS(descending_witness(parse_real_set("[0,inf)"), 3),
                  NoWitnessError);

  auto naturals = RealSet::generator(
      [](std::uint64_t i) { return static_cast<double>(i); },
      RealSet::Bound::finite(1.0), RealSet::Bound::unbounded(), "naturals");
  const Prefix a = ascending_witness(naturals, 3);
  CHECK(a.values == std::vector<double>{1, 3, 5});
}

TEST_CASE("witness soundness: every step clears the unit gap") {
  const RealSet gappy = parse_real_set("(-inf,-10] U [5,6]");
  const Prefix w = descending_witness(gappy, 50);
  REQUIRE(w.values.size() == 50);
  CHECK(w.values.front() == 5.0);  // representable point nearest 0
  for (std::size_t j = 0; j + 1 < w.values.size(); ++j) {
    CHECK(w.values[j + 1] < w.values[j] - 1.0);
    CHECK(gappy.contains(w.values[j + 1]));
  }

  const Prefix r = descending_witness(RealSet::reals(), 100);
  for (std::size_t j = 0; j + 1 < r.values.size(); ++j)
    CHECK(r.values[j] - r.values[j + 1] == 2.0);
}

TEST_CASE("extraction: alternating picks the even constant subsequence") {
  AnalysisConfig cfg;
  cfg.horizon = 16384;
  const IndexMap m = extract_stat_upward_hqc_subsequence(seq("alternating"), cfg);
  REQUIRE(m.length().has_value());
  CHECK(*m.length() == cfg.horizon / 2);
  for (std::uint64_t k = 1; k <= 10; ++k) CHECK(m(k) == 2 * k);

  AnalysisConfig sub_cfg = cfg;
  sub_cfg.horizon = *m.length() - 1;
  CHECK(stat_upward_hqc_verdict(subsequence(seq("alternating"), m), sub_cfg)
            .status == Status::satisfied);
}

TEST_CASE("extraction: climbing prefixes keep the greedy nondecreasing chain") {
  AnalysisConfig cfg;
  cfg.horizon = 8192;
  const IndexMap m = extract_stat_upward_hqc_subsequence(seq("identity"), cfg);
  REQUIRE(m.length().has_value());
  CHECK(*m.length() == cfg.horizon);  // identity is already nondecreasing
  CHECK(m(1) == 1);
  CHECK(m(cfg.horizon) == cfg.horizon);
}

TEST_CASE("extraction: seeded bounded samples pass the self-oracle") {
  AnalysisConfig cfg;
  cfg.horizon = 8192;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    Sequence noisy = Sequence::pointwise("noise", [s](std::uint64_t n) {
      return 2.0 * seeded_symmetric(s, n);
    });
    const IndexMap m = extract_stat_upward_hqc_subsequence(noisy, cfg);
    REQUIRE(m.length().has_value());
    REQUIRE(*m.length() >= 16);
    std::uint64_t prev = 0;
    for (std::uint64_t k = 1; k <= *m.length(); ++k) {
      CHECK(m(k) > prev);
      prev = m(k);
    }
    AnalysisConfig sub_cfg = cfg;
    sub_cfg.horizon = *m.length() - 1;
    CHECK(stat_upward_hqc_verdict(subsequence(noisy, m), sub_cfg).status ==
          Status::satisfied);
  }
}

TEST_CASE("extraction refuses prefixes that plunge past the bounded-below proxy") {
  AnalysisConfig cfg;
  cfg.horizon = 4096;
  CHECK_THROWS_AS(
      extract_stat_upward_hqc_subsequence(reflect(seq("identity")), cfg),
      RefusalError);
}
