#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rcl/learner.hpp"

namespace rcl {

/// Outcome of a Monte Carlo check. The verdict compares the empirical success
/// rate against `threshold` with a 3-standard-error margin; checks that gate
/// on a mean sample count instead fill `mean_total`/`required_mean_total` and
/// gate on those.
struct TrialReport {
  std::string check;
  std::vector<std::pair<std::string, std::string>> config;  // echoed settings
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0.0;
  double std_error = 0.0;
  double threshold = 0.0;  // required success rate before the 3*SE margin
  double mean_total = 0.0;           // mean per-trial sample count
  double required_mean_total = 0.0;  // only for cost checks
  bool pass = false;

  std::string verdict() const { return pass ? "PASS" : "FAIL"; }
  std::vector<std::uint64_t> per_trial_totals;
};

/// Throw ceil(budget_scale * c_bins * n * ln(n/delta)) balls into n bins
/// uniformly; a trial succeeds when no bin exceeds twice the average load.
/// Passes when the success rate reaches 1-delta minus three standard errors.
struct BallsInBinsConfig {
  std::size_t bins = 50;
  double c_bins = 2.5;
  double delta = 0.1;
  double budget_scale = 1.0;  // < 1 under-budgets (negative control)
};
TrialReport check_balls_in_bins(const BallsInBinsConfig& config,
                                std::size_t trials, std::uint64_t seed,
                                int jobs = 1);

/// Candidate-quality check: on a threshold-class instance with `group_size`
/// users (of which `adversaries` are pretenders), a trial succeeds when the
/// candidate classifier's exact error is at most eps/2 for at least half of
/// the group's truthful users. Passes at rate 1-delta minus 3 SE.
struct CandidateLemmaConfig {
  std::size_t group_size = 10;
  std::size_t adversaries = 1;
  std::uint32_t domain = 16;  // threshold-class domain size
  double eps = 0.1;
  double delta = 0.1;
  bool close_fakes = false;  // pretender targets one step from the truth
  LearnerConstants constants;
  double budget_scale = 1.0;
};
TrialReport check_candidate_lemma(const CandidateLemmaConfig& config,
                                  std::size_t trials, std::uint64_t seed,
                                  int jobs = 1);

/// Validation-pass check: users with planted exact errors straddling eps and
/// eps/2 must land on the correct side of the retention rule (errors strictly
/// between eps/2 and eps are unconstrained). Passes at rate 1-delta minus
/// 3 SE.
struct TestLemmaConfig {
  std::vector<double> planted_errors = {0.04, 0.15, 0.04, 0.15, 0.04,
                                        0.15, 0.04, 0.15, 0.04, 0.15};
  double eps = 0.1;
  double delta = 0.1;
  LearnerConstants constants;
  double budget_scale = 1.0;
};
TrialReport check_test_lemma(const TestLemmaConfig& config, std::size_t trials,
                             std::uint64_t seed, int jobs = 1);

/// Exhaustive, exact impossibility check for the shared-classifier setting:
/// every binary function on the two-point domain must have error 1 for the
/// truthful owner of x1 in at least one of the two indistinguishable cases.
struct ImpossibilityFunctionReport {
  std::uint8_t label_x0 = 0;
  std::uint8_t label_x1 = 0;
  double worst_case_error = 0.0;  // max over the two cases
  int failing_case = -1;
};
struct ImpossibilityReport {
  bool pass = false;
  std::vector<ImpossibilityFunctionReport> functions;
};
ImpossibilityReport check_centralized_impossibility();

/// Cost floor on the worst-case instance: the collaborative learner's mean
/// realized sample total must be at least (floor(eta*n)+1) * gamma *
/// pac_sample_size(d, eps, delta, c_pac).
struct LowerBoundCostConfig {
  std::size_t n = 10;
  std::uint32_t d = 8;
  double eps = 0.1;
  double eta = 0.2;
  double delta = 0.1;
  double gamma = 1.0;
  LearnerConstants constants;
};
TrialReport check_lower_bound_cost(const LowerBoundCostConfig& config,
                                   std::size_t trials, std::uint64_t seed,
                                   int jobs = 1);

/// One sweep point; by convention d doubles as both the class size parameter
/// and the VC dimension (powerset family).
struct OverheadPoint {
  std::size_t n = 1;
  std::uint32_t d = 1;
  double eta = 0.0;
};

/// Overhead ratio at eps = delta = 0.1: mean collaborative sample total over
/// the single-user PAC baseline for the same class.
struct OverheadEstimate {
  std::size_t n = 0;
  std::uint32_t d = 0;
  double eta = 0.0;
  std::size_t trials = 0;
  double mean_collaborative = 0.0;
  double mean_single = 0.0;
  double ratio = 0.0;
  double se_collaborative = 0.0;
  double se_single = 0.0;
  double se_ratio = 0.0;
  double predicted_budget = 0.0;  // closed-form reference, unit constants
};

/// Runs the collaborative learner and the single-user baseline on the uniform
/// powerset family at eps = delta = 0.1 and reports the overhead per point.
/// At n = 1 the task degenerates to classic PAC learning, so the baseline
/// itself supplies the numerator (the estimate self-normalizes to 1).
std::vector<OverheadEstimate> measure_overhead(
    std::span<const OverheadPoint> sweep, std::size_t trials,
    std::uint64_t seed, const LearnerConstants& constants = {}, int jobs = 1);

/// Success predicate used across reports: truthful user i ends up with a
/// classifier whose exact error is below eps.
bool user_learned(const Instance& instance, const RunResult& result,
                  std::size_t i, double eps);

/// True when every truthful user was learned.
bool all_truthful_learned(const Instance& instance, const RunResult& result,
                          double eps);

double success_rate_std_error(double rate, std::size_t trials);

}  // namespace rcl
