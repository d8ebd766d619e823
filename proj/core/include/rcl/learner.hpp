#pragma once

#include <cstdint>
#include <vector>

#include "rcl/oracle.hpp"

namespace rcl {

/// Explicit values for every hidden constant in the sample-size expressions,
/// plus the cap on exhaustive candidate-group enumeration. Defaults are the
/// calibrated values recorded in constants_ledger.md.
struct LearnerConstants {
  double c_pac = 1.0;    // classic PAC sample size
  double c_cand = 1.0;   // candidate-search budget M
  double c_test = 10.0;  // per-user validation samples
  double c_bins = 2.5;   // balls-into-bins load check
  double c_final = 2.0;  // per-user final-phase samples
  std::size_t max_candidate_group = 25;

  void validate() const;
};

/// Failure-budget schedule delta / (5 r^2) for round r >= 1; the series
/// 2*sum_r delta_r stays below 2*delta/3.
double delta_schedule(int round, double delta);

/// Loop guard of the iterative learner: the candidate/test phase runs while
/// the worst-case adversary count is at most a tenth of the active set.
inline bool collaboration_guard(std::size_t adversary_bound,
                                std::size_t active_users) {
  return 10 * adversary_bound <= active_users;
}

// Closed-form sample budgets. Fractional budgets are always rounded up.
std::uint64_t candidate_search_budget(std::size_t group_size, std::uint32_t d,
                                      double eps, double delta, double c_cand);
std::uint64_t candidate_per_user_budget(std::size_t group_size,
                                        std::uint64_t search_budget);
std::uint64_t test_per_user_budget(std::size_t group_size, double eps,
                                   double delta, double c_test);
std::uint64_t final_phase_per_user_budget(std::size_t n, std::uint32_t d,
                                          double eps, double delta,
                                          double c_final);

/// Smallest admissible candidate subgroup size: ceil(9|G|/10).
std::size_t min_candidate_subgroup(std::size_t group_size);

struct CandidateResult {
  Hypothesis classifier;
  std::vector<std::size_t> group;  // the consistent subset the oracle accepted
  std::uint64_t samples_drawn = 0;
};

/// Finds a classifier consistent with the joint data of some subset covering
/// at least 9/10 of `group`: draws ceil(4M/|G|) samples per user, then scans
/// subsets in decreasing-size order (lexicographic within a size) and returns
/// the first one the consistency oracle accepts.
///
/// Throws SearchCapError when |group| exceeds constants.max_candidate_group
/// and NoConsistentGroupError when no admissible subset is consistent (only
/// possible when adversaries exceed a tenth of the group).
CandidateResult candidate_classifier(Instance& instance,
                                     const std::vector<std::size_t>& group,
                                     double eps, double delta,
                                     const LearnerConstants& constants);

struct TestResult {
  std::vector<std::size_t> retained;  // users whose disagreement stayed high
  std::vector<double> thetas;         // empirical disagreement per group user
  std::uint64_t samples_drawn = 0;
};

/// Validation pass: estimates each group user's disagreement with `f` from
/// fresh samples and retains exactly those with theta > (3/4) eps.
TestResult test_classifier(Instance& instance,
                           const std::vector<std::size_t>& group,
                           const Hypothesis& f, double eps, double delta,
                           const LearnerConstants& constants);

/// Retention rule applied to one empirical disagreement value.
inline bool retains_user(double theta, double eps) {
  return theta > 0.75 * eps;
}

struct RoundTrace {
  int round = 0;
  std::vector<std::size_t> active;    // G_r
  double delta_r = 0.0;
  Hypothesis candidate;               // f-hat for this round
  std::vector<std::size_t> retained;  // G_{r+1}
  std::uint64_t samples_drawn = 0;
};

struct RunResult {
  std::vector<Hypothesis> outputs;  // one classifier per user
  SampleLedger ledger;              // realized counts for this run only
  std::vector<RoundTrace> trace;
  int rounds_used = 0;
  std::vector<std::size_t> final_phase_users;
};

/// The iterative robust collaborative learner. Rounds of candidate/test with
/// the delta_schedule failure budget assign the round classifier to every
/// user whose disagreement dropped; once the active set is within 10x of the
/// adversary bound, each remaining user is learned independently from
/// final-phase samples. A final-phase consistency miss (possible only for
/// self-contradictory adversarial data) yields the class default hypothesis.
RunResult run_robust_collaborative(Instance& instance, double eps,
                                   double delta, double eta,
                                   const LearnerConstants& constants = {});

/// Baseline that ignores collaboration: every user is learned independently
/// from pac_sample_size(d, eps, delta/n, c_pac) samples.
RunResult run_naive_baseline(Instance& instance, double eps, double delta,
                             const LearnerConstants& constants = {});

}  // namespace rcl
