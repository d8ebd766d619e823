#include "rcl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

#include "rcl/generators.hpp"
#include "rcl/parallel.hpp"

namespace rcl {

namespace {

constexpr std::uint64_t kBallsTag = 0x62696e73;
constexpr std::uint64_t kCandidateTag = 0x63616e64;
constexpr std::uint64_t kTestTag = 0x74657374;
constexpr std::uint64_t kCostTag = 0x636f7374;
constexpr std::uint64_t kSweepCollabTag = 0x73776331;
constexpr std::uint64_t kSweepSingleTag = 0x73776332;

std::string fmt(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

struct MeanStdErr {
  double mean = 0.0;
  double std_error = 0.0;
};

MeanStdErr mean_std_error(const std::vector<std::uint64_t>& values) {
  if (values.empty()) return {};
  double mean = 0.0;
  for (auto v : values) mean += static_cast<double>(v);
  mean /= static_cast<double>(values.size());
  if (values.size() < 2) return {mean, 0.0};
  double var = 0.0;
  for (auto v : values) {
    const double diff = static_cast<double>(v) - mean;
    var += diff * diff;
  }
  var /= static_cast<double>(values.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(values.size()))};
}

/// Fills in rate/SE and applies the rate-threshold verdict with a 3*SE margin.
void finish_rate_report(TrialReport& report, double threshold) {
  report.rate = report.trials == 0
                    ? 0.0
                    : static_cast<double>(report.successes) /
                          static_cast<double>(report.trials);
  report.std_error = success_rate_std_error(report.rate, report.trials);
  report.threshold = threshold;
  report.pass = report.rate >= threshold - 3.0 * report.std_error;
}

}  // namespace

double success_rate_std_error(double rate, std::size_t trials) {
  if (trials == 0) return 0.0;
  return std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
}

TrialReport check_balls_in_bins(const BallsInBinsConfig& config,
                                std::size_t trials, std::uint64_t seed,
                                int jobs) {
  if (config.bins < 1) throw ParameterError("balls-in-bins needs n >= 1");
  if (trials < 100) throw ParameterError("balls-in-bins needs trials >= 100");
  if (!(config.delta > 0.0) || config.delta > 1.0) {
    throw ParameterError("delta must be in (0, 1]");
  }
  const double n = static_cast<double>(config.bins);
  const double raw =
      config.budget_scale * config.c_bins * n * std::log(n / config.delta);
  const std::uint64_t balls =
      std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(raw)));

  std::vector<std::uint8_t> ok(trials, 0);
  parallel_trials(trials, jobs, [&](std::size_t t) {
    Rng rng(derive_seed(seed, kBallsTag, t));
    std::vector<std::uint64_t> load(config.bins, 0);
    for (std::uint64_t b = 0; b < balls; ++b) {
      ++load[rng.next_below(config.bins)];
    }
    const std::uint64_t max_load = *std::max_element(load.begin(), load.end());
    // max_load <= 2m/n, compared exactly in integers
    ok[t] = max_load * config.bins <= 2 * balls ? 1 : 0;
  });

  TrialReport report;
  report.check = "balls-in-bins";
  report.config = {{"bins", std::to_string(config.bins)},
                   {"c_bins", fmt(config.c_bins)},
                   {"delta", fmt(config.delta)},
                   {"budget_scale", fmt(config.budget_scale)},
                   {"balls", std::to_string(balls)},
                   {"seed", std::to_string(seed)}};
  report.trials = trials;
  report.successes = std::accumulate(ok.begin(), ok.end(), std::size_t{0});
  report.per_trial_totals.assign(trials, balls);
  report.mean_total = static_cast<double>(balls);
  finish_rate_report(report, 1.0 - config.delta);
  return report;
}

namespace {

Instance make_candidate_lemma_instance(const CandidateLemmaConfig& config,
                                       std::uint64_t seed) {
  const std::uint32_t m = config.domain;
  Rng gen(derive_seed(seed, kCandidateTag + 1));
  const std::uint32_t target_t =
      static_cast<std::uint32_t>(gen.next_below(m + 1));
  const Distribution uniform = Distribution::uniform(m);

  std::vector<OracleSpec> specs;
  specs.reserve(config.group_size);
  for (std::size_t i = 0; i + config.adversaries < config.group_size; ++i) {
    specs.push_back(OracleSpec::truthful(uniform));
  }
  for (std::size_t i = 0; i < config.adversaries; ++i) {
    std::uint32_t fake_t;
    if (config.close_fakes) {
      // one step off the truth: the hardest pretender to tell apart
      fake_t = target_t == m ? m - 1
                             : (target_t == 0 ? 1
                                              : (gen.next_below(2) == 0
                                                     ? target_t - 1
                                                     : target_t + 1));
    } else {
      fake_t = static_cast<std::uint32_t>(gen.next_below(m + 1));
    }
    specs.push_back(OracleSpec::adversarial(std::make_unique<PretenderStrategy>(
        Hypothesis::threshold(fake_t, m), uniform)));
  }
  const double eta =
      static_cast<double>(config.adversaries) /
      static_cast<double>(config.group_size);
  return Instance(HypothesisClass::threshold(m),
                  Hypothesis::threshold(target_t, m), std::move(specs), eta,
                  seed, "candidate-lemma");
}

}  // namespace

TrialReport check_candidate_lemma(const CandidateLemmaConfig& config,
                                  std::size_t trials, std::uint64_t seed,
                                  int jobs) {
  if (config.group_size < 1) throw ParameterError("group_size must be >= 1");
  if (10 * config.adversaries > config.group_size) {
    throw ParameterError(
        "candidate-lemma requires adversaries <= group_size/10");
  }
  LearnerConstants constants = config.constants;
  constants.c_cand *= config.budget_scale;
  constants.validate();

  std::vector<std::uint8_t> ok(trials, 0);
  std::vector<std::uint64_t> totals(trials, 0);
  parallel_trials(trials, jobs, [&](std::size_t t) {
    Instance instance =
        make_candidate_lemma_instance(config, derive_seed(seed, kCandidateTag, t));
    std::vector<std::size_t> group(config.group_size);
    std::iota(group.begin(), group.end(), 0);
    std::size_t good = 0;
    try {
      const CandidateResult cand = candidate_classifier(
          instance, group, config.eps, config.delta, constants);
      for (std::size_t i = 0; i < config.group_size; ++i) {
        if (!instance.truthful_mask()[i]) continue;
        const double err =
            error_rate(cand.classifier, instance.target(),
                       *instance.oracle(i).distribution());
        if (err <= config.eps / 2.0) ++good;
      }
    } catch (const NoConsistentGroupError&) {
      good = 0;  // contract breach counts as a failed trial
    }
    totals[t] = instance.ledger().total;
    ok[t] = 2 * good >= config.group_size ? 1 : 0;
  });

  TrialReport report;
  report.check = "candidate-lemma";
  report.config = {{"group_size", std::to_string(config.group_size)},
                   {"adversaries", std::to_string(config.adversaries)},
                   {"domain", std::to_string(config.domain)},
                   {"eps", fmt(config.eps)},
                   {"delta", fmt(config.delta)},
                   {"close_fakes", config.close_fakes ? "true" : "false"},
                   {"c_cand", fmt(constants.c_cand)},
                   {"budget_scale", fmt(config.budget_scale)},
                   {"seed", std::to_string(seed)}};
  report.trials = trials;
  report.successes = std::accumulate(ok.begin(), ok.end(), std::size_t{0});
  report.per_trial_totals = std::move(totals);
  report.mean_total = mean_std_error(report.per_trial_totals).mean;
  finish_rate_report(report, 1.0 - config.delta);
  return report;
}

TrialReport check_test_lemma(const TestLemmaConfig& config, std::size_t trials,
                             std::uint64_t seed, int jobs) {
  if (config.planted_errors.empty()) {
    throw ParameterError("test-lemma needs at least one planted error");
  }
  for (double e : config.planted_errors) {
    if (e < 0.0 || e > 1.0) throw ParameterError("planted errors lie in [0,1]");
  }
  LearnerConstants constants = config.constants;
  constants.c_test *= config.budget_scale;
  constants.validate();

  // Domain {informative point, null point}; the candidate under test differs
  // from the target exactly on the informative point, so each user's error is
  // exactly the mass they put there.
  const auto target = Hypothesis::explicit_labels({0, 0});
  const auto candidate = Hypothesis::explicit_labels({1, 0});
  const Point informative{0};
  const Point null_point{1};

  std::vector<std::uint8_t> ok(trials, 0);
  std::vector<std::uint64_t> totals(trials, 0);
  parallel_trials(trials, jobs, [&](std::size_t t) {
    std::vector<OracleSpec> specs;
    specs.reserve(config.planted_errors.size());
    for (double e : config.planted_errors) {
      std::vector<std::pair<Point, double>> support;
      if (e > 0.0) support.push_back({informative, e});
      if (e < 1.0) support.push_back({null_point, 1.0 - e});
      specs.push_back(OracleSpec::truthful(
          Distribution(std::move(support), 2)));
    }
    Instance instance(HypothesisClass::powerset(1), target, std::move(specs),
                      0.0, derive_seed(seed, kTestTag, t), "test-lemma");
    std::vector<std::size_t> group(config.planted_errors.size());
    std::iota(group.begin(), group.end(), 0);
    const TestResult tested = test_classifier(instance, group, candidate,
                                              config.eps, config.delta,
                                              constants);
    bool good = true;
    for (std::size_t i = 0; i < config.planted_errors.size(); ++i) {
      const double err = config.planted_errors[i];
      const bool retained = std::binary_search(tested.retained.begin(),
                                               tested.retained.end(), i);
      if (err > config.eps && !retained) good = false;
      if (err <= config.eps / 2.0 && retained) good = false;
      // errors strictly between eps/2 and eps are unconstrained
    }
    totals[t] = tested.samples_drawn;
    ok[t] = good ? 1 : 0;
  });

  TrialReport report;
  report.check = "test-lemma";
  std::ostringstream errs;
  for (std::size_t i = 0; i < config.planted_errors.size(); ++i) {
    errs << (i ? " " : "") << config.planted_errors[i];
  }
  report.config = {{"planted_errors", errs.str()},
                   {"eps", fmt(config.eps)},
                   {"delta", fmt(config.delta)},
                   {"c_test", fmt(constants.c_test)},
                   {"budget_scale", fmt(config.budget_scale)},
                   {"seed", std::to_string(seed)}};
  report.trials = trials;
  report.successes = std::accumulate(ok.begin(), ok.end(), std::size_t{0});
  report.per_trial_totals = std::move(totals);
  report.mean_total = mean_std_error(report.per_trial_totals).mean;
  finish_rate_report(report, 1.0 - config.delta);
  return report;
}

ImpossibilityReport check_centralized_impossibility() {
  ImpossibilityReport report;
  report.pass = true;
  // The truthful owner of x1 swaps between the two cases; its distribution is
  // the point mass on x1 either way.
  const Distribution on_x1 = Distribution::point_mass(Point{1}, 2);
  std::vector<Hypothesis> targets;
  for (int c : {0, 1}) {
    const Instance instance = make_centralized_impossibility_instance(2, c);
    targets.push_back(instance.target());
  }
  for (std::uint8_t l0 : {0, 1}) {
    for (std::uint8_t l1 : {0, 1}) {
      const auto f = Hypothesis::explicit_labels({l0, l1});
      ImpossibilityFunctionReport fn;
      fn.label_x0 = l0;
      fn.label_x1 = l1;
      for (int c : {0, 1}) {
        const double err = error_rate(f, targets[c], on_x1);
        if (err > fn.worst_case_error) {
          fn.worst_case_error = err;
          fn.failing_case = c;
        }
      }
      if (fn.worst_case_error < 1.0) report.pass = false;
      report.functions.push_back(fn);
    }
  }
  return report;
}

TrialReport check_lower_bound_cost(const LowerBoundCostConfig& config,
                                   std::size_t trials, std::uint64_t seed,
                                   int jobs) {
  config.constants.validate();
  const std::uint64_t pac = pac_sample_size(config.d, config.eps, config.delta,
                                            config.constants.c_pac);
  const double required =
      static_cast<double>(max_adversaries(config.eta, config.n) + 1) *
      config.gamma * static_cast<double>(pac);

  std::vector<std::uint64_t> totals(trials, 0);
  parallel_trials(trials, jobs, [&](std::size_t t) {
    Instance instance = make_lower_bound_instance(
        config.n, config.d, config.eps, config.eta,
        derive_seed(seed, kCostTag, t));
    const RunResult result = run_robust_collaborative(
        instance, config.eps, config.delta, config.eta, config.constants);
    totals[t] = result.ledger.total;
  });

  TrialReport report;
  report.check = "lower-bound-cost";
  report.config = {{"n", std::to_string(config.n)},
                   {"d", std::to_string(config.d)},
                   {"eps", fmt(config.eps)},
                   {"eta", fmt(config.eta)},
                   {"delta", fmt(config.delta)},
                   {"gamma", fmt(config.gamma)},
                   {"pac_sample_size", std::to_string(pac)},
                   {"seed", std::to_string(seed)}};
  report.trials = trials;
  for (auto v : totals) {
    if (static_cast<double>(v) >= required) ++report.successes;
  }
  report.per_trial_totals = std::move(totals);
  const auto stats = mean_std_error(report.per_trial_totals);
  report.mean_total = stats.mean;
  report.required_mean_total = required;
  report.rate = trials == 0 ? 0.0
                            : static_cast<double>(report.successes) /
                                  static_cast<double>(trials);
  report.std_error = stats.std_error;
  report.threshold = 0.0;  // this check gates on the mean, not a rate
  report.pass = stats.mean >= required;
  return report;
}

std::vector<OverheadEstimate> measure_overhead(
    std::span<const OverheadPoint> sweep, std::size_t trials,
    std::uint64_t seed, const LearnerConstants& constants, int jobs) {
  constants.validate();
  constexpr double kEps = 0.1;   // fixed by the overhead definition
  constexpr double kDelta = 0.1;
  std::vector<OverheadEstimate> estimates;
  estimates.reserve(sweep.size());
  for (std::size_t p = 0; p < sweep.size(); ++p) {
    const OverheadPoint& point = sweep[p];
    if (point.n < 1 || point.d < 1) {
      throw ParameterError("sweep points need n, d >= 1");
    }
    std::vector<std::uint64_t> collab(trials, 0);
    std::vector<std::uint64_t> single(trials, 0);
    parallel_trials(trials, jobs, [&](std::size_t t) {
      const std::uint64_t collab_seed =
          derive_seed(seed, kSweepCollabTag + p, t);
      if (point.n == 1) {
        // With one user the task is classic PAC learning; the baseline is the
        // measurement and the estimate self-normalizes.
        Instance instance =
            make_uniform_powerset_instance(1, point.d, 0.0, collab_seed);
        collab[t] =
            run_naive_baseline(instance, kEps, kDelta, constants).ledger.total;
      } else {
        Instance instance = make_uniform_powerset_instance(
            point.n, point.d, point.eta, collab_seed);
        collab[t] = run_robust_collaborative(instance, kEps, kDelta, point.eta,
                                             constants)
                        .ledger.total;
      }
      Instance baseline = make_uniform_powerset_instance(
          1, point.d, 0.0, derive_seed(seed, kSweepSingleTag + p, t));
      single[t] =
          run_naive_baseline(baseline, kEps, kDelta, constants).ledger.total;
    });

    const auto c = mean_std_error(collab);
    const auto s = mean_std_error(single);
    OverheadEstimate est;
    est.n = point.n;
    est.d = point.d;
    est.eta = point.eta;
    est.trials = trials;
    est.mean_collaborative = c.mean;
    est.mean_single = s.mean;
    est.se_collaborative = c.std_error;
    est.se_single = s.std_error;
    est.ratio = s.mean > 0.0 ? c.mean / s.mean : 0.0;
    if (c.mean > 0.0 && s.mean > 0.0) {
      const double rc = c.std_error / c.mean;
      const double rs = s.std_error / s.mean;
      est.se_ratio = est.ratio * std::sqrt(rc * rc + rs * rs);
    }
    const double adv = static_cast<double>(max_adversaries(point.eta, point.n));
    est.predicted_budget =
        (point.d * std::log(1.0 / kEps) / kEps) *
            (adv + std::log(static_cast<double>(point.n))) +
        static_cast<double>(point.n) *
            std::log(static_cast<double>(point.n) / kDelta) / kEps;
    estimates.push_back(est);
  }
  return estimates;
}

bool user_learned(const Instance& instance, const RunResult& result,
                  std::size_t i, double eps) {
  if (!instance.truthful_mask()[i]) return true;  // no promise to adversaries
  const Distribution* dist = instance.oracle(i).distribution();
  return error_rate(result.outputs[i], instance.target(), *dist) < eps;
}

bool all_truthful_learned(const Instance& instance, const RunResult& result,
                          double eps) {
  for (std::size_t i = 0; i < instance.num_users(); ++i) {
    if (!user_learned(instance, result, i, eps)) return false;
  }
  return true;
}

}  // namespace rcl
