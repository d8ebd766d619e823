#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <set>
#include <vector>

#include "rcl/generators.hpp"
#include "rcl/learner.hpp"
#include "rcl/serialize.hpp"
#include "rcl/verify.hpp"

using namespace rcl;

namespace {

/// Emits contradictory labels on a fixed point; no classifier can be
/// consistent with two of its answers.
struct ContradictingStrategy final : AdversaryStrategy {
  bool flip = false;
  Kind kind() const override { return Kind::Custom; }
  LabeledExample next(AdversaryContext&) override {
    flip = !flip;
    return {Point{0}, flip};
  }
};

std::vector<std::size_t> iota_group(std::size_t n) {
  std::vector<std::size_t> g(n);
  std::iota(g.begin(), g.end(), 0);
  return g;
}

bool is_subset(const std::vector<std::size_t>& inner,
               const std::vector<std::size_t>& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace

TEST_CASE("delta schedule") {
  CHECK(delta_schedule(1, 0.1) == doctest::Approx(0.02));
  CHECK(delta_schedule(3, 0.1) == doctest::Approx(0.1 / 45.0));
  CHECK_THROWS_AS(delta_schedule(0, 0.1), ParameterError);

  // 2 * sum_r delta_r plus the final-phase third stays within delta
  const double delta = 0.37;
  double sum = 0.0;
  for (int r = 1; r <= 200000; ++r) sum += 2.0 * delta_schedule(r, delta);
  sum += delta / 3.0;
  CHECK(sum <= delta);
  // and the series bound is not vacuous: it lands near (2 pi^2/30 + 1/3) delta
  CHECK(sum >= 0.98 * delta);
}

TEST_CASE("candidate budgets match the closed form") {
  // frozen spot value, d=1, |G|=10, eps=0.1, delta=0.02, c_cand=1:
  //   (ln 10 + ln(2^10/0.02)) / 0.1 + 10 ln 500 = 193.60688...
  CHECK(candidate_search_budget(10, 1, 0.1, 0.02, 1.0) == 194);
  CHECK(candidate_per_user_budget(10, 194) == 78);  // ceil(4*194/10)

  // recomputation across parameters, independently of the implementation
  for (std::size_t g : {1u, 5u, 16u}) {
    for (std::uint32_t d : {1u, 8u}) {
      for (double eps : {0.25, 0.1}) {
        for (double delta : {0.1, 0.004}) {
          const double expected = std::ceil(
              (d * std::log(1.0 / eps) + g * std::log(2.0) +
               std::log(1.0 / delta)) /
                  eps +
              g * std::log(g / delta));
          CHECK(candidate_search_budget(g, d, eps, delta, 1.0) ==
                static_cast<std::uint64_t>(expected));
        }
      }
    }
  }
  CHECK(test_per_user_budget(10, 0.1, 0.1, 10.0) == 461);
  CHECK(final_phase_per_user_budget(10, 8, 0.1, 0.1, 2.0) == 461);
}

TEST_CASE("minimum candidate subgroup sizes") {
  CHECK(min_candidate_subgroup(10) == 9);
  CHECK(min_candidate_subgroup(25) == 23);
  CHECK(min_candidate_subgroup(1) == 1);
  CHECK(min_candidate_subgroup(5) == 5);
  CHECK(min_candidate_subgroup(20) == 18);
}

TEST_CASE("collaboration guard arithmetic") {
  // n=10, eta=0.2: two possible adversaries, guard fails immediately
  CHECK_FALSE(collaboration_guard(max_adversaries(0.2, 10), 10));
  // n=100, eta=0.05: guard holds down to |G| = 50
  const std::size_t bound = max_adversaries(0.05, 100);
  CHECK(bound == 5);
  CHECK(collaboration_guard(bound, 100));
  CHECK(collaboration_guard(bound, 50));
  CHECK_FALSE(collaboration_guard(bound, 49));
  // eta = 0 keeps the guard open for any nonempty set
  CHECK(collaboration_guard(0, 1));
}

TEST_CASE("retention rule boundary") {
  CHECK(retains_user(0.08, 0.1));
  CHECK_FALSE(retains_user(0.075, 0.1));  // strictly-greater convention
  CHECK_FALSE(retains_user(0.0, 0.1));
}

TEST_CASE("candidate search excludes a provably conflicting pretender") {
  // nine truthful users on a point mass labeled 1; the tenth oracle always
  // answers 0 on the same point, so any subset containing it is inconsistent
  auto cls = HypothesisClass::threshold(4);
  const auto target = Hypothesis::threshold(0, 4);  // labels everything 1
  std::vector<OracleSpec> specs;
  for (int i = 0; i < 9; ++i) {
    specs.push_back(OracleSpec::truthful(Distribution::point_mass(Point{0}, 4)));
  }
  specs.push_back(OracleSpec::adversarial(
      std::make_unique<FixedExampleStrategy>(LabeledExample{Point{0}, false})));
  Instance instance(std::move(cls), target, std::move(specs), 0.1, 17);

  const auto result =
      candidate_classifier(instance, iota_group(10), 0.1, 0.1, {});
  CHECK(result.group == iota_group(9));  // everyone but the pretender
  CHECK(result.classifier.evaluate(Point{0}) == true);

  // budget accounting is exact
  const std::uint64_t m = candidate_search_budget(10, 1, 0.1, 0.1, 1.0);
  CHECK(result.samples_drawn == 10 * candidate_per_user_budget(10, m));
  CHECK(instance.ledger().total == result.samples_drawn);
}

TEST_CASE("all-truthful groups are accepted whole") {
  // with no adversaries the full group is the first subset scanned and its
  // joint data is realizable by the target, so H = G every time
  for (std::uint64_t seed : {3ull, 5ull, 8ull}) {
    auto instance = make_uniform_threshold_instance(10, 16, 0.0, seed);
    const auto result =
        candidate_classifier(instance, iota_group(10), 0.1, 0.1, {});
    CHECK(result.group == iota_group(10));
    CHECK(instance.hypothesis_class().contains(result.classifier));
  }
}

TEST_CASE("candidate search keeps a harmless pretender") {
  // the adversary's answers are consistent with the truth, so the full group
  // is accepted first (largest subset, lexicographic order)
  auto cls = HypothesisClass::threshold(4);
  const auto target = Hypothesis::threshold(0, 4);
  std::vector<OracleSpec> specs;
  for (int i = 0; i < 4; ++i) {
    specs.push_back(OracleSpec::truthful(Distribution::point_mass(Point{1}, 4)));
  }
  specs.push_back(OracleSpec::adversarial(
      std::make_unique<FixedExampleStrategy>(LabeledExample{Point{2}, true})));
  Instance instance(std::move(cls), target, std::move(specs), 0.2, 19);
  const auto result = candidate_classifier(instance, iota_group(5), 0.1, 0.1, {});
  CHECK(result.group == iota_group(5));
}

TEST_CASE("candidate enumeration is lexicographic within a size") {
  // users 0 and 9 conflict only with each other, so both nine-user subsets
  // dropping one of them are consistent; the lexicographically first
  // combination drops the higher index
  auto cls = HypothesisClass::threshold(4);
  const auto target = Hypothesis::threshold(0, 4);  // labels everything 1
  std::vector<OracleSpec> specs;
  specs.push_back(OracleSpec::truthful(Distribution::point_mass(Point{0}, 4)));
  for (int i = 0; i < 8; ++i) {
    specs.push_back(OracleSpec::truthful(Distribution::point_mass(Point{1}, 4)));
  }
  specs.push_back(OracleSpec::adversarial(
      std::make_unique<FixedExampleStrategy>(LabeledExample{Point{0}, false})));
  Instance instance(std::move(cls), target, std::move(specs), 0.1, 83);

  const auto result =
      candidate_classifier(instance, iota_group(10), 0.1, 0.1, {});
  CHECK(result.group == iota_group(9));
}

TEST_CASE("candidate search failure modes") {
  SUBCASE("self-contradictory lone adversary") {
    std::vector<OracleSpec> specs;
    specs.push_back(
        OracleSpec::adversarial(std::make_unique<ContradictingStrategy>()));
    Instance instance(HypothesisClass::threshold(4),
                      Hypothesis::threshold(2, 4), std::move(specs), 1.0, 23);
    CHECK_THROWS_AS(candidate_classifier(instance, iota_group(1), 0.1, 0.1, {}),
                    NoConsistentGroupError);
  }
  SUBCASE("groups above the cap abort instead of degrading") {
    auto instance = make_uniform_threshold_instance(30, 8, 0.0, 29);
    LearnerConstants constants;
    CHECK(constants.max_candidate_group == 25);
    CHECK_THROWS_AS(
        candidate_classifier(instance, iota_group(30), 0.1, 0.1, constants),
        SearchCapError);
  }
  SUBCASE("empty group is a parameter error") {
    auto instance = make_uniform_threshold_instance(3, 8, 0.0, 31);
    CHECK_THROWS_AS(candidate_classifier(instance, {}, 0.1, 0.1, {}),
                    ParameterError);
  }
}

TEST_CASE("validation pass separates clean and broken users") {
  // user 0: truthful, classifier matches the target exactly -> theta = 0
  // user 1: fixed example the classifier always contradicts -> theta = 1
  auto cls = HypothesisClass::threshold(4);
  const auto target = Hypothesis::threshold(2, 4);
  std::vector<OracleSpec> specs;
  specs.push_back(OracleSpec::truthful(Distribution::uniform(4)));
  specs.push_back(OracleSpec::adversarial(
      std::make_unique<FixedExampleStrategy>(LabeledExample{Point{3}, false})));
  Instance instance(std::move(cls), target, std::move(specs), 0.5, 37);

  const auto result =
      test_classifier(instance, iota_group(2), target, 0.1, 0.1, {});
  CHECK(result.thetas[0] == 0.0);
  CHECK(result.thetas[1] == 1.0);
  CHECK(result.retained == std::vector<std::size_t>{1});
  const std::uint64_t budget = test_per_user_budget(2, 0.1, 0.1, 10.0);
  CHECK(result.samples_drawn == 2 * budget);
}

TEST_CASE("guard skips straight to the final phase when adversaries are dense") {
  // n=10, eta=0.2: floor(eta n) = 2 > |G|/10, so no collaborative rounds
  auto instance = make_uniform_threshold_instance(10, 16, 0.2, 41);
  const auto result = run_robust_collaborative(instance, 0.1, 0.1, 0.2);
  CHECK(result.rounds_used == 0);
  CHECK(result.trace.empty());
  CHECK(result.final_phase_users == iota_group(10));
  CHECK(result.outputs.size() == 10);
  const std::uint64_t per_user = final_phase_per_user_budget(10, 1, 0.1, 0.1, 2.0);
  CHECK(result.ledger.total == 10 * per_user);
}

TEST_CASE("collaborative run traces obey the structural invariants") {
  auto instance = make_uniform_threshold_instance(16, 16, 0.0, 43);
  const double eps = 0.1, delta = 0.1;
  LearnerConstants constants;
  const auto result = run_robust_collaborative(instance, eps, delta, 0.0,
                                               constants);

  CHECK(result.outputs.size() == 16);
  CHECK(result.rounds_used == static_cast<int>(result.trace.size()));

  std::uint64_t traced = 0;
  for (std::size_t r = 0; r < result.trace.size(); ++r) {
    const auto& round = result.trace[r];
    CHECK(round.round == static_cast<int>(r) + 1);
    CHECK(round.delta_r == doctest::Approx(delta_schedule(round.round, delta)));
    // monotone shrinkage
    CHECK(is_subset(round.retained, round.active));
    if (r > 0) CHECK(round.active == result.trace[r - 1].retained);
    // the guard held when the round ran
    CHECK(collaboration_guard(0, round.active.size()));
    // per-round sample count equals the closed-form budgets exactly
    const std::size_t g = round.active.size();
    const double m_raw =
        (1 * std::log(1.0 / eps) + g * std::log(2.0) +
         std::log(1.0 / round.delta_r)) /
            eps +
        g * std::log(g / round.delta_r);
    const auto m = static_cast<std::uint64_t>(std::ceil(m_raw));
    const auto cand_per_user =
        static_cast<std::uint64_t>(std::ceil(4.0 * m / g));
    const auto test_per_user = static_cast<std::uint64_t>(
        std::ceil(constants.c_test * std::log(g / round.delta_r) / eps));
    CHECK(round.samples_drawn == g * (cand_per_user + test_per_user));
    traced += round.samples_drawn;
  }
  const std::uint64_t final_cost =
      result.final_phase_users.size() *
      final_phase_per_user_budget(16, 1, eps, delta, constants.c_final);
  CHECK(result.ledger.total == traced + final_cost);

  // users assigned a classifier never re-enter
  std::set<std::size_t> seen_exit;
  for (const auto& round : result.trace) {
    for (std::size_t u : round.active) CHECK(seen_exit.count(u) == 0);
    std::vector<std::size_t> exited;
    std::set_difference(round.active.begin(), round.active.end(),
                        round.retained.begin(), round.retained.end(),
                        std::back_inserter(exited));
    seen_exit.insert(exited.begin(), exited.end());
  }
}

TEST_CASE("benign collaborative runs satisfy everyone quickly") {
  std::size_t successes = 0;
  std::vector<int> rounds;
  const std::size_t trials = 60;
  for (std::size_t t = 0; t < trials; ++t) {
    auto instance =
        make_uniform_threshold_instance(16, 16, 0.0, derive_seed(1000, 7, t));
    const auto result = run_robust_collaborative(instance, 0.1, 0.1, 0.0);
    if (all_truthful_learned(instance, result, 0.1)) ++successes;
    rounds.push_back(result.rounds_used);
  }
  CHECK(successes >= trials * 9 / 10);
  std::nth_element(rounds.begin(), rounds.begin() + trials / 2, rounds.end());
  CHECK(rounds[trials / 2] <= 5);
}

TEST_CASE("a single pretender does not break the collaborative run") {
  std::size_t successes = 0;
  const std::size_t trials = 40;
  for (std::size_t t = 0; t < trials; ++t) {
    auto instance =
        make_uniform_threshold_instance(20, 16, 0.05, derive_seed(1001, 7, t));
    const auto result = run_robust_collaborative(instance, 0.1, 0.1, 0.05);
    if (all_truthful_learned(instance, result, 0.1)) ++successes;
  }
  CHECK(successes >= trials * 9 / 10);
}

TEST_CASE("naive baseline accounting") {
  SUBCASE("single user reduces to classic PAC learning") {
    auto instance = make_uniform_threshold_instance(1, 16, 0.0, 47);
    const auto result = run_naive_baseline(instance, 0.1, 0.1);
    CHECK(result.ledger.total == pac_sample_size(1, 0.1, 0.1, 1.0));
    CHECK(result.rounds_used == 0);
  }
  SUBCASE("n users cost exactly n times the per-user budget") {
    const std::size_t n = 7;
    auto instance = make_uniform_threshold_instance(n, 16, 0.0, 53);
    const auto result = run_naive_baseline(instance, 0.1, 0.1);
    CHECK(result.ledger.total ==
          n * pac_sample_size(1, 0.1, 0.1 / n, 1.0));
    for (auto c : result.ledger.per_oracle) {
      CHECK(c == pac_sample_size(1, 0.1, 0.1 / n, 1.0));
    }
  }
  SUBCASE("baseline succeeds for truthful users") {
    std::size_t successes = 0;
    const std::size_t trials = 60;
    for (std::size_t t = 0; t < trials; ++t) {
      auto instance =
          make_uniform_threshold_instance(8, 16, 0.0, derive_seed(1002, 7, t));
      const auto result = run_naive_baseline(instance, 0.1, 0.1);
      if (all_truthful_learned(instance, result, 0.1)) ++successes;
    }
    CHECK(successes >= trials * 9 / 10);
  }
}

TEST_CASE("a run propagates candidate-search failures") {
  SUBCASE("contract violation surfaces as NoConsistentGroup") {
    // the instance holds one self-contradicting adversary, but the run is
    // told eta = 0, so the guard opens the collaborative phase anyway
    std::vector<OracleSpec> specs;
    specs.push_back(
        OracleSpec::adversarial(std::make_unique<ContradictingStrategy>()));
    Instance instance(HypothesisClass::threshold(4),
                      Hypothesis::threshold(2, 4), std::move(specs), 1.0, 71);
    CHECK_THROWS_AS(run_robust_collaborative(instance, 0.1, 0.1, 0.0),
                    NoConsistentGroupError);
  }
  SUBCASE("oversized active sets abort at the search cap") {
    auto instance = make_uniform_threshold_instance(30, 8, 0.0, 73);
    CHECK_THROWS_AS(run_robust_collaborative(instance, 0.1, 0.1, 0.0),
                    SearchCapError);
  }
}

TEST_CASE("final-phase consistency miss falls back to the default member") {
  // the lone active user contradicts itself, so the final phase cannot find a
  // consistent member and must still output something
  std::vector<OracleSpec> specs;
  specs.push_back(
      OracleSpec::adversarial(std::make_unique<ContradictingStrategy>()));
  Instance instance(HypothesisClass::threshold(4), Hypothesis::threshold(2, 4),
                    std::move(specs), 1.0, 59);
  const auto result = run_robust_collaborative(instance, 0.1, 0.1, 1.0);
  CHECK(result.rounds_used == 0);
  CHECK(result.outputs[0] ==
        HypothesisClass::threshold(4).default_hypothesis());
}

TEST_CASE("runs are reproducible from the instance seed") {
  auto run_once = [] {
    auto instance = make_uniform_powerset_instance(8, 8, 0.125, 61);
    const auto result = run_robust_collaborative(instance, 0.1, 0.1, 0.125);
    RunMeta meta{"run", instance.generator(), 0.1, 0.1, 0.125, 61, {}};
    return run_result_to_json(result, instance, meta).dump();
  };
  CHECK(run_once() == run_once());
}

TEST_CASE("learner constants are validated") {
  LearnerConstants constants;
  constants.c_test = 0.0;
  CHECK_THROWS_AS(constants.validate(), ParameterError);
  constants = {};
  constants.max_candidate_group = 0;
  CHECK_THROWS_AS(constants.validate(), ParameterError);
  auto instance = make_uniform_threshold_instance(2, 8, 0.0, 67);
  CHECK_THROWS_AS(run_robust_collaborative(instance, 0.0, 0.1, 0.0),
                  ParameterError);
  CHECK_THROWS_AS(run_robust_collaborative(instance, 0.1, 1.5, 0.0),
                  ParameterError);
}
