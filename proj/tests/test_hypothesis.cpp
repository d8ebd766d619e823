#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "rcl/distribution.hpp"
#include "rcl/hypothesis.hpp"
#include "rcl/rng.hpp"

using namespace rcl;

namespace {

/// Test-side consistency oracle: plain scan over an explicit member list.
/// Kept independent of HypothesisClass::consistent so the two can be compared.
std::optional<std::size_t> brute_force_consistent(
    const std::vector<Hypothesis>& members,
    const std::vector<LabeledExample>& examples) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    bool ok = true;
    for (const auto& ex : examples) {
      if (members[i].evaluate(ex.point) != ex.label) {
        ok = false;
        break;
      }
    }
    if (ok) return i;
  }
  return std::nullopt;
}

std::vector<Hypothesis> expand_powerset(std::uint32_t d) {
  std::vector<Hypothesis> members;
  for (std::uint32_t bits = 0; bits < (1u << d); ++bits) {
    std::vector<std::uint8_t> labels(d + 1, 0);
    for (std::uint32_t i = 0; i < d; ++i) labels[i] = (bits >> i) & 1u;
    members.push_back(Hypothesis::explicit_labels(std::move(labels)));
  }
  return members;
}

}  // namespace

TEST_CASE("threshold evaluation") {
  const auto f = Hypothesis::threshold(3, 10);
  CHECK(f.evaluate(Point{5}) == true);
  CHECK(f.evaluate(Point{2}) == false);
  CHECK(f.evaluate(Point{3}) == true);
  CHECK_THROWS_AS(f.evaluate(Point{10}), DomainError);
}

TEST_CASE("powerset members map the null point to zero") {
  const auto cls = HypothesisClass::powerset(4);
  const Point bottom = *cls.bottom();
  CHECK(bottom.index == 4);
  const auto member =
      cls.consistent(std::vector<LabeledExample>{{Point{1}, true}});
  REQUIRE(member.has_value());
  CHECK(member->evaluate(bottom) == false);
  // repeated evaluation is deterministic
  CHECK(member->evaluate(Point{1}) == member->evaluate(Point{1}));
}

TEST_CASE("error_rate basics") {
  const auto cls = HypothesisClass::threshold(4);
  const auto target = Hypothesis::threshold(2, 4);
  const auto dist = Distribution::uniform(4);
  SUBCASE("identical hypotheses have zero error") {
    CHECK(error_rate(target, target, dist) == 0.0);
  }
  SUBCASE("one disagreement on a uniform four-point domain") {
    const auto f = Hypothesis::threshold(3, 4);  // differs only at index 2
    CHECK(error_rate(f, target, dist) == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("domain mismatch is rejected") {
    const auto other = Hypothesis::threshold(1, 5);
    CHECK_THROWS_AS(error_rate(other, target, dist), DomainError);
  }
}

TEST_CASE("error_rate on the worst-case instance distribution") {
  // d = 4 informative points at mass 2*eps/d each, eps = 0.25.
  const std::uint32_t d = 4;
  const double eps = 0.25;
  std::vector<std::pair<Point, double>> support;
  for (std::uint32_t i = 0; i < d; ++i) {
    support.push_back({Point{i}, 2.0 * eps / d});
  }
  support.push_back({Point{d}, 1.0 - 2.0 * eps});
  const Distribution dist(support, d + 1);
  const auto target = Hypothesis::explicit_labels({0, 0, 0, 0, 0});
  const auto flipped = Hypothesis::explicit_labels({1, 1, 1, 1, 0});
  CHECK(error_rate(flipped, target, dist) ==
        doctest::Approx(2.0 * eps).epsilon(1e-12));
}

TEST_CASE("error_rate is additive over a support partition") {
  Rng rng(2024);
  const std::uint32_t domain = 12;
  const auto cls = HypothesisClass::powerset(domain - 1);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<std::uint8_t> la(domain), lb(domain);
    for (std::uint32_t i = 0; i + 1 < domain; ++i) {
      la[i] = static_cast<std::uint8_t>(rng.next_below(2));
      lb[i] = static_cast<std::uint8_t>(rng.next_below(2));
    }
    const auto f = Hypothesis::explicit_labels(la);
    const auto g = Hypothesis::explicit_labels(lb);
    const auto dist = Distribution::uniform(domain);
    double part_a = 0.0, part_b = 0.0;
    for (const auto& [point, mass] : dist.support()) {
      const bool disagree = f.evaluate(point) != g.evaluate(point);
      if (point.index < domain / 2) {
        part_a += disagree ? mass : 0.0;
      } else {
        part_b += disagree ? mass : 0.0;
      }
    }
    CHECK(error_rate(f, g, dist) ==
          doctest::Approx(part_a + part_b).epsilon(1e-12));
  }
}

TEST_CASE("consistency oracle: powerset") {
  const auto cls = HypothesisClass::powerset(2);
  SUBCASE("contradictory labels yield no member") {
    const std::vector<LabeledExample> s{{Point{1}, true}, {Point{1}, false}};
    CHECK_FALSE(cls.consistent(s).has_value());
  }
  SUBCASE("tie-break labels unconstrained points zero") {
    const std::vector<LabeledExample> s{{Point{1}, true}};
    const auto h = cls.consistent(s);
    REQUIRE(h.has_value());
    CHECK(h->label_vector() == std::vector<std::uint8_t>{0, 1, 0});
  }
  SUBCASE("the null point cannot be labeled one") {
    const std::vector<LabeledExample> s{{*cls.bottom(), true}};
    CHECK_FALSE(cls.consistent(s).has_value());
  }
}

TEST_CASE("consistency oracle: threshold with brute-force cross-check") {
  const auto cls = HypothesisClass::threshold(10);
  const std::vector<LabeledExample> s{{Point{2}, false}, {Point{7}, true}};
  const auto h = cls.consistent(s);
  REQUIRE(h.has_value());
  REQUIRE(h->repr() == Hypothesis::Repr::Threshold);

  // scan all 11 thresholds independently
  std::vector<std::uint32_t> consistent_ts;
  for (std::uint32_t t = 0; t <= 10; ++t) {
    const auto cand = Hypothesis::threshold(t, 10);
    bool ok = true;
    for (const auto& ex : s) {
      if (cand.evaluate(ex.point) != ex.label) ok = false;
    }
    if (ok) consistent_ts.push_back(t);
  }
  CHECK(consistent_ts == std::vector<std::uint32_t>{3, 4, 5, 6, 7});
  CHECK(h->threshold_value() == 3);  // smallest consistent t wins
}

TEST_CASE("consistency oracle: finite explicit declaration order") {
  auto members = expand_powerset(3);
  const auto cls = HypothesisClass::finite_explicit(members, 3);
  const std::vector<LabeledExample> s{{Point{1}, true}};
  const auto h = cls.consistent(s);
  REQUIRE(h.has_value());
  const auto expected = brute_force_consistent(members, s);
  REQUIRE(expected.has_value());
  CHECK(*h == members[*expected]);
}

TEST_CASE("consistency oracle agrees with brute force on random queries") {
  auto members = expand_powerset(6);
  const auto cls = HypothesisClass::finite_explicit(members, 6);
  Rng rng(99);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<LabeledExample> s;
    const std::size_t len = rng.next_below(6);
    for (std::size_t i = 0; i < len; ++i) {
      s.push_back({Point{static_cast<std::uint32_t>(
                       rng.next_below(cls.domain_size()))},
                   rng.next_below(2) == 1});
    }
    const auto mine = cls.consistent(s);
    const auto reference = brute_force_consistent(members, s);
    CHECK(mine.has_value() == reference.has_value());
    if (mine && reference) CHECK(*mine == members[*reference]);
  }
}

TEST_CASE("oracle post-condition: returned member agrees with every example") {
  Rng rng(512);
  const auto threshold_cls = HypothesisClass::threshold(20);
  const auto powerset_cls = HypothesisClass::powerset(8);
  for (int iter = 0; iter < 200; ++iter) {
    for (const auto* cls : {&threshold_cls, &powerset_cls}) {
      std::vector<LabeledExample> s;
      const std::size_t len = rng.next_below(8);
      for (std::size_t i = 0; i < len; ++i) {
        s.push_back({Point{static_cast<std::uint32_t>(
                         rng.next_below(cls->domain_size()))},
                     rng.next_below(2) == 1});
      }
      const auto h = cls->consistent(s);
      if (h) {
        for (const auto& ex : s) CHECK(h->evaluate(ex.point) == ex.label);
        CHECK(cls->contains(*h));
      }
    }
  }
}

TEST_CASE("powerset realizes every labeling of the informative points") {
  for (std::uint32_t d : {1u, 4u, 12u}) {
    const auto cls = HypothesisClass::powerset(d);
    for (std::uint32_t bits = 0; bits < (1u << d); ++bits) {
      std::vector<LabeledExample> s;
      s.reserve(d);
      for (std::uint32_t i = 0; i < d; ++i) {
        s.push_back({Point{i}, ((bits >> i) & 1u) == 1u});
      }
      const auto h = cls.consistent(s);
      REQUIRE(h.has_value());
      for (const auto& ex : s) CHECK(h->evaluate(ex.point) == ex.label);
      CHECK(h->evaluate(*cls.bottom()) == false);
    }
  }
}

TEST_CASE("class construction validates VC metadata") {
  CHECK(HypothesisClass::powerset(7).vc_dimension() == 7);
  CHECK(HypothesisClass::threshold(64).vc_dimension() == 1);
  auto members = expand_powerset(3);  // 8 members
  CHECK(HypothesisClass::finite_explicit(members, 3).vc_dimension() == 3);
  CHECK_THROWS_AS(HypothesisClass::finite_explicit(members, 4),
                  ParameterError);
}

TEST_CASE("membership checks are semantic") {
  const auto threshold_cls = HypothesisClass::threshold(5);
  CHECK(threshold_cls.contains(Hypothesis::threshold(2, 5)));
  CHECK(threshold_cls.contains(Hypothesis::explicit_labels({0, 0, 1, 1, 1})));
  CHECK_FALSE(
      threshold_cls.contains(Hypothesis::explicit_labels({0, 1, 0, 1, 1})));

  const auto powerset_cls = HypothesisClass::powerset(2);
  CHECK(powerset_cls.contains(Hypothesis::explicit_labels({1, 0, 0})));
  CHECK_FALSE(powerset_cls.contains(Hypothesis::explicit_labels({1, 0, 1})));
}

TEST_CASE("default hypotheses follow the tie-break rule") {
  CHECK(HypothesisClass::powerset(3).default_hypothesis().label_vector() ==
        std::vector<std::uint8_t>{0, 0, 0, 0});
  CHECK(HypothesisClass::threshold(4).default_hypothesis().threshold_value() ==
        0);
  auto members = expand_powerset(2);
  CHECK(HypothesisClass::finite_explicit(members, 2).default_hypothesis() ==
        members.front());
}

TEST_CASE("pac_sample_size matches the closed form") {
  CHECK(pac_sample_size(10, 0.1, 0.1, 1.0) == 254);
  CHECK(pac_sample_size(1, 1.0, 1.0, 1.0) == 1);  // clamped at one sample
  const double ratio = static_cast<double>(pac_sample_size(20, 0.1, 0.1, 1.0)) /
                       static_cast<double>(pac_sample_size(10, 0.1, 0.1, 1.0));
  CHECK(ratio >= 1.8);
  CHECK(ratio <= 2.0);
}

TEST_CASE("pac_sample_size rejects bad parameters and is monotone") {
  CHECK_THROWS_AS(pac_sample_size(1, 0.0, 0.1, 1.0), ParameterError);
  CHECK_THROWS_AS(pac_sample_size(1, 0.1, 0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(pac_sample_size(0, 0.1, 0.1, 1.0), ParameterError);
  CHECK_THROWS_AS(pac_sample_size(1, 0.1, 0.1, 0.0), ParameterError);
  CHECK_THROWS_AS(pac_sample_size(1, 1.5, 0.1, 1.0), ParameterError);

  std::uint64_t prev = 0;
  for (std::uint32_t d = 1; d <= 30; ++d) {
    const std::uint64_t m = pac_sample_size(d, 0.1, 0.1, 1.0);
    CHECK(m >= prev);
    prev = m;
  }
  CHECK(pac_sample_size(5, 0.05, 0.1, 1.0) >= pac_sample_size(5, 0.1, 0.1, 1.0));
  CHECK(pac_sample_size(5, 0.1, 0.05, 1.0) >= pac_sample_size(5, 0.1, 0.1, 1.0));
}

TEST_CASE("pac sample sizes deliver the promised accuracy empirically") {
  // Draw m samples, fit any consistent member, measure the exact error; the
  // failure fraction over seeded trials must stay within delta.
  const double eps = 0.1;
  const double delta = 0.1;
  const std::size_t trials = 500;

  SUBCASE("threshold class, uniform distribution") {
    const auto cls = HypothesisClass::threshold(16);
    const auto dist = Distribution::uniform(16);
    const std::uint64_t m = pac_sample_size(1, eps, delta, 1.0);
    std::size_t good = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(derive_seed(31337, 1, t));
      const auto target = Hypothesis::threshold(
          static_cast<std::uint32_t>(rng.next_below(17)), 16);
      std::vector<LabeledExample> s;
      for (std::uint64_t i = 0; i < m; ++i) {
        const Point x = dist.sample(rng);
        s.push_back({x, target.evaluate(x)});
      }
      const auto h = cls.consistent(s);
      REQUIRE(h.has_value());
      if (error_rate(*h, target, dist) < eps) ++good;
    }
    const double rate = static_cast<double>(good) / trials;
    CHECK(rate >= 1.0 - delta - 3.0 * std::sqrt(delta * (1 - delta) / trials));
  }

  SUBCASE("powerset class, worst-case style distribution") {
    const std::uint32_t d = 8;
    const auto cls = HypothesisClass::powerset(d);
    std::vector<std::pair<Point, double>> support;
    for (std::uint32_t i = 0; i < d; ++i) {
      support.push_back({Point{i}, 2.0 * eps / d});
    }
    support.push_back({Point{d}, 1.0 - 2.0 * eps});
    const Distribution dist(support, d + 1);
    const std::uint64_t m = pac_sample_size(d, eps, delta, 1.0);
    std::size_t good = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(derive_seed(31337, 2, t));
      std::vector<std::uint8_t> labels(d + 1, 0);
      for (std::uint32_t i = 0; i < d; ++i) {
        labels[i] = static_cast<std::uint8_t>(rng.next_below(2));
      }
      const auto target = Hypothesis::explicit_labels(labels);
      std::vector<LabeledExample> s;
      for (std::uint64_t i = 0; i < m; ++i) {
        const Point x = dist.sample(rng);
        s.push_back({x, target.evaluate(x)});
      }
      const auto h = cls.consistent(s);
      REQUIRE(h.has_value());
      if (error_rate(*h, target, dist) < eps) ++good;
    }
    const double rate = static_cast<double>(good) / trials;
    CHECK(rate >= 1.0 - delta - 3.0 * std::sqrt(delta * (1 - delta) / trials));
  }
}
