#include "rcl/learner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

namespace rcl {

namespace {

void check_rates(double eps, double delta) {
  if (!(eps > 0.0) || eps > 1.0) throw ParameterError("eps must be in (0, 1]");
  if (!(delta > 0.0) || delta > 1.0) {
    throw ParameterError("delta must be in (0, 1]");
  }
}

std::uint64_t ceil_at_least_one(double x) {
  const double c = std::ceil(x);
  return c < 1.0 ? 1 : static_cast<std::uint64_t>(c);
}

/// Visits every k-subset of {0..n-1} in lexicographic order until the visitor
/// returns true. Returns whether a visitor accepted.
template <typename Visit>
bool for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return false;
  std::vector<std::size_t> picks(k);
  std::iota(picks.begin(), picks.end(), 0);
  while (true) {
    if (visit(picks)) return true;
    // advance to the next combination
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (picks[i] != i + n - k) {
        ++picks[i];
        for (std::size_t j = i + 1; j < k; ++j) picks[j] = picks[j - 1] + 1;
        break;
      }
      if (i == 0) return false;
    }
    if (k == 0) return false;
  }
}

}  // namespace

void LearnerConstants::validate() const {
  if (!(c_pac > 0.0) || !(c_cand > 0.0) || !(c_test > 0.0) ||
      !(c_bins > 0.0) || !(c_final > 0.0)) {
    throw ParameterError("learner constants must be positive");
  }
  if (max_candidate_group < 1) {
    throw ParameterError("max_candidate_group must be >= 1");
  }
}

double delta_schedule(int round, double delta) {
  if (round < 1) throw ParameterError("delta_schedule: round must be >= 1");
  check_rates(0.5, delta);
  return delta / (5.0 * round * round);
}

std::uint64_t candidate_search_budget(std::size_t group_size, std::uint32_t d,
                                      double eps, double delta,
                                      double c_cand) {
  if (group_size < 1) throw ParameterError("group must be nonempty");
  check_rates(eps, delta);
  const double g = static_cast<double>(group_size);
  // ln(2^g / delta) = g ln 2 + ln(1/delta)
  const double uniform_term =
      (d * std::log(1.0 / eps) + g * std::log(2.0) + std::log(1.0 / delta)) /
      eps;
  const double bins_term = g * std::log(g / delta);
  return ceil_at_least_one(c_cand * (uniform_term + bins_term));
}

std::uint64_t candidate_per_user_budget(std::size_t group_size,
                                        std::uint64_t search_budget) {
  return ceil_at_least_one(4.0 * static_cast<double>(search_budget) /
                           static_cast<double>(group_size));
}

std::uint64_t test_per_user_budget(std::size_t group_size, double eps,
                                   double delta, double c_test) {
  if (group_size < 1) throw ParameterError("group must be nonempty");
  check_rates(eps, delta);
  return ceil_at_least_one(
      c_test * std::log(static_cast<double>(group_size) / delta) / eps);
}

std::uint64_t final_phase_per_user_budget(std::size_t n, std::uint32_t d,
                                          double eps, double delta,
                                          double c_final) {
  check_rates(eps, delta);
  return ceil_at_least_one(
      c_final *
      (d * std::log(1.0 / eps) + std::log(static_cast<double>(n) / delta)) /
      eps);
}

std::size_t min_candidate_subgroup(std::size_t group_size) {
  return (9 * group_size + 9) / 10;  // ceil(9g/10)
}

CandidateResult candidate_classifier(Instance& instance,
                                     const std::vector<std::size_t>& group,
                                     double eps, double delta,
                                     const LearnerConstants& constants) {
  constants.validate();
  if (group.empty()) throw ParameterError("candidate: group must be nonempty");
  if (group.size() > constants.max_candidate_group) {
    throw SearchCapError(
        "group of " + std::to_string(group.size()) +
        " users exceeds the exponential search cap of " +
        std::to_string(constants.max_candidate_group) +
        "; subset enumeration would be intractable");
  }
  const HypothesisClass& cls = instance.hypothesis_class();
  const std::uint64_t budget = candidate_search_budget(
      group.size(), cls.vc_dimension(), eps, delta, constants.c_cand);
  const std::uint64_t per_user = candidate_per_user_budget(group.size(), budget);

  std::vector<std::vector<LabeledExample>> datasets(group.size());
  for (std::size_t gi = 0; gi < group.size(); ++gi) {
    datasets[gi].reserve(per_user);
    for (std::uint64_t s = 0; s < per_user; ++s) {
      datasets[gi].push_back(instance.query(group[gi]));
    }
  }

  // Scan subsets covering at least 9/10 of the group, largest first,
  // lexicographic within a size; the first one the oracle accepts wins.
  const std::size_t k_min = min_candidate_subgroup(group.size());
  std::optional<Hypothesis> found;
  std::vector<std::size_t> found_group;
  for (std::size_t k = group.size(); k >= k_min && !found; --k) {
    std::vector<LabeledExample> pool;
    for_each_combination(group.size(), k, [&](const std::vector<std::size_t>&
                                                  picks) {
      pool.clear();
      for (std::size_t p : picks) {
        pool.insert(pool.end(), datasets[p].begin(), datasets[p].end());
      }
      auto h = cls.consistent(pool);
      if (!h) return false;
      found = std::move(h);
      found_group.reserve(picks.size());
      for (std::size_t p : picks) found_group.push_back(group[p]);
      return true;
    });
  }
  if (!found) {
    throw NoConsistentGroupError(
        "no subset covering 9/10 of the group has jointly consistent data; "
        "the adversary fraction exceeded the caller's contract");
  }
  return CandidateResult{std::move(*found), std::move(found_group),
                         per_user * group.size()};
}

TestResult test_classifier(Instance& instance,
                           const std::vector<std::size_t>& group,
                           const Hypothesis& f, double eps, double delta,
                           const LearnerConstants& constants) {
  constants.validate();
  if (group.empty()) throw ParameterError("test: group must be nonempty");
  const std::uint64_t per_user =
      test_per_user_budget(group.size(), eps, delta, constants.c_test);
  TestResult result;
  result.thetas.reserve(group.size());
  for (std::size_t user : group) {
    std::uint64_t disagreements = 0;
    for (std::uint64_t s = 0; s < per_user; ++s) {
      const LabeledExample ex = instance.query(user);
      if (f.evaluate(ex.point) != ex.label) ++disagreements;
    }
    const double theta =
        static_cast<double>(disagreements) / static_cast<double>(per_user);
    result.thetas.push_back(theta);
    if (retains_user(theta, eps)) result.retained.push_back(user);
  }
  result.samples_drawn = per_user * group.size();
  return result;
}

namespace {

SampleLedger ledger_delta(const SampleLedger& before,
                          const SampleLedger& after) {
  SampleLedger out;
  out.per_oracle.resize(after.per_oracle.size());
  for (std::size_t i = 0; i < after.per_oracle.size(); ++i) {
    const std::uint64_t base = i < before.per_oracle.size()
                                   ? before.per_oracle[i]
                                   : 0;
    out.per_oracle[i] = after.per_oracle[i] - base;
    out.total += out.per_oracle[i];
  }
  return out;
}

std::vector<Hypothesis> finalize_outputs(
    std::vector<std::optional<Hypothesis>>&& partial) {
  std::vector<Hypothesis> outputs;
  outputs.reserve(partial.size());
  for (auto& h : partial) outputs.push_back(std::move(*h));
  return outputs;
}

}  // namespace

RunResult run_robust_collaborative(Instance& instance, double eps,
                                   double delta, double eta,
                                   const LearnerConstants& constants) {
  constants.validate();
  check_rates(eps, delta);
  const std::size_t n = instance.num_users();
  const std::size_t adversary_bound = max_adversaries(eta, n);
  const SampleLedger before = instance.ledger();

  std::vector<std::optional<Hypothesis>> outputs(n);
  std::vector<RoundTrace> trace;
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), 0);

  int round = 1;
  while (!active.empty() && collaboration_guard(adversary_bound, active.size())) {
    const double delta_r = delta_schedule(round, delta);
    CandidateResult cand =
        candidate_classifier(instance, active, eps, delta_r, constants);
    TestResult tested =
        test_classifier(instance, active, cand.classifier, eps, delta_r,
                        constants);
    for (std::size_t user : active) {
      const bool retained = std::binary_search(tested.retained.begin(),
                                               tested.retained.end(), user);
      if (!retained) outputs[user] = cand.classifier;
    }
    trace.push_back(RoundTrace{round, active, delta_r, cand.classifier,
                               tested.retained,
                               cand.samples_drawn + tested.samples_drawn});
    active = std::move(tested.retained);
    ++round;
  }

  // Remaining users are learned independently.
  const std::vector<std::size_t> final_users = active;
  const std::uint64_t final_budget = final_phase_per_user_budget(
      n, instance.hypothesis_class().vc_dimension(), eps, delta,
      constants.c_final);
  for (std::size_t user : final_users) {
    std::vector<LabeledExample> samples;
    samples.reserve(final_budget);
    for (std::uint64_t s = 0; s < final_budget; ++s) {
      samples.push_back(instance.query(user));
    }
    auto h = instance.hypothesis_class().consistent(samples);
    // A miss is possible only for adversarial users with self-contradictory
    // samples; the output map must still be total.
    outputs[user] = h ? std::move(*h)
                      : instance.hypothesis_class().default_hypothesis();
  }

  RunResult result{finalize_outputs(std::move(outputs)),
                   ledger_delta(before, instance.ledger()), std::move(trace),
                   round - 1, final_users};
  return result;
}

RunResult run_naive_baseline(Instance& instance, double eps, double delta,
                             const LearnerConstants& constants) {
  constants.validate();
  check_rates(eps, delta);
  const std::size_t n = instance.num_users();
  const SampleLedger before = instance.ledger();
  const std::uint64_t per_user =
      pac_sample_size(instance.hypothesis_class().vc_dimension(), eps,
                      delta / static_cast<double>(n), constants.c_pac);

  std::vector<std::optional<Hypothesis>> outputs(n);
  std::vector<std::size_t> all_users(n);
  std::iota(all_users.begin(), all_users.end(), 0);
  for (std::size_t user : all_users) {
    std::vector<LabeledExample> samples;
    samples.reserve(per_user);
    for (std::uint64_t s = 0; s < per_user; ++s) {
      samples.push_back(instance.query(user));
    }
    auto h = instance.hypothesis_class().consistent(samples);
    outputs[user] = h ? std::move(*h)
                      : instance.hypothesis_class().default_hypothesis();
  }

  RunResult result{finalize_outputs(std::move(outputs)),
                   ledger_delta(before, instance.ledger()),
                   {},
                   0,
                   all_users};
  return result;
}

}  // namespace rcl
