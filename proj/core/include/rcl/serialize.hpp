#pragma once

#include <string>

#include <json.hpp>

#include "rcl/conflict.hpp"
#include "rcl/learner.hpp"
#include "rcl/oracle.hpp"
#include "rcl/verify.hpp"

namespace rcl {

using Json = nlohmann::json;

// Hypotheses, classes, distributions. Schemas are documented in README.md.
Json hypothesis_to_json(const Hypothesis& h);
Hypothesis hypothesis_from_json(const Json& j);

Json class_to_json(const HypothesisClass& cls);
HypothesisClass class_from_json(const Json& j);

Json distribution_to_json(const Distribution& dist);
Distribution distribution_from_json(const Json& j, std::uint32_t domain_size);

// Instances round-trip losslessly, including adversary strategies and the
// `evaluation` block (truthful mask) that learners must not read.
Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& j);

Json constants_to_json(const LearnerConstants& constants);
LearnerConstants constants_from_json(const Json& j);

Json ledger_to_json(const SampleLedger& ledger);

/// Provenance echoed into every run artifact.
struct RunMeta {
  std::string command;
  std::string generator;
  double eps = 0.1;
  double delta = 0.1;
  double eta = 0.0;
  std::uint64_t seed = 0;
  LearnerConstants constants;
};

Json run_result_to_json(const RunResult& result, const Instance& instance,
                        const RunMeta& meta);

Json trial_report_to_json(const TrialReport& report);
Json impossibility_report_to_json(const ImpossibilityReport& report);
Json overhead_estimates_to_json(const std::vector<OverheadEstimate>& estimates);

// CSV emission. Every document begins with "# schema=1"; `,` delimits and
// `.` is the decimal point.
std::string run_result_csv(const RunResult& result, const Instance& instance,
                           const RunMeta& meta);
std::string trial_report_csv(const TrialReport& report);
std::string overhead_csv(const std::vector<OverheadEstimate>& estimates);

}  // namespace rcl
