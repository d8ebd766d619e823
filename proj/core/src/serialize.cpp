#include "rcl/serialize.hpp"

#include <memory>
#include <sstream>

namespace rcl {

namespace {

std::string csv_num(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

Json hypothesis_to_json(const Hypothesis& h) {
  Json j;
  if (h.repr() == Hypothesis::Repr::Threshold) {
    j["kind"] = "threshold";
    j["domain_size"] = h.domain_size();
    j["t"] = h.threshold_value();
  } else {
    j["kind"] = "explicit";
    j["labels"] = h.labels();
  }
  return j;
}

Hypothesis hypothesis_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "threshold") {
    return Hypothesis::threshold(j.at("t").get<std::uint32_t>(),
                                 j.at("domain_size").get<std::uint32_t>());
  }
  if (kind == "explicit") {
    return Hypothesis::explicit_labels(
        j.at("labels").get<std::vector<std::uint8_t>>());
  }
  throw ParameterError("unknown hypothesis kind: " + kind);
}

Json class_to_json(const HypothesisClass& cls) {
  Json j;
  switch (cls.kind()) {
    case HypothesisClass::Kind::Powerset:
      j["kind"] = "powerset";
      j["d"] = cls.powerset_d();
      break;
    case HypothesisClass::Kind::Threshold:
      j["kind"] = "threshold";
      j["m"] = cls.domain_size();
      break;
    case HypothesisClass::Kind::FiniteExplicit: {
      j["kind"] = "finite_explicit";
      j["vc_dimension"] = cls.vc_dimension();
      Json members = Json::array();
      for (const auto& m : cls.members()) {
        members.push_back(hypothesis_to_json(m));
      }
      j["members"] = std::move(members);
      break;
    }
  }
  return j;
}

HypothesisClass class_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "powerset") {
    return HypothesisClass::powerset(j.at("d").get<std::uint32_t>());
  }
  if (kind == "threshold") {
    return HypothesisClass::threshold(j.at("m").get<std::uint32_t>());
  }
  if (kind == "finite_explicit") {
    std::vector<Hypothesis> members;
    for (const auto& m : j.at("members")) {
      members.push_back(hypothesis_from_json(m));
    }
    return HypothesisClass::finite_explicit(std::move(members),
                                            j.at("vc_dimension").get<std::uint32_t>());
  }
  throw ParameterError("unknown class kind: " + kind);
}

Json distribution_to_json(const Distribution& dist) {
  Json support = Json::array();
  for (const auto& [point, mass] : dist.support()) {
    support.push_back(Json{{"point", point.index}, {"mass", mass}});
  }
  return Json{{"support", std::move(support)}};
}

Distribution distribution_from_json(const Json& j, std::uint32_t domain_size) {
  std::vector<std::pair<Point, double>> support;
  for (const auto& entry : j.at("support")) {
    support.push_back({Point{entry.at("point").get<std::uint32_t>()},
                       entry.at("mass").get<double>()});
  }
  return Distribution(std::move(support), domain_size);
}

namespace {

Json strategy_to_json(const AdversaryStrategy& strategy) {
  switch (strategy.kind()) {
    case AdversaryStrategy::Kind::Pretender: {
      const auto& s = static_cast<const PretenderStrategy&>(strategy);
      return Json{{"variant", "pretender"},
                  {"fake_target", hypothesis_to_json(s.fake_target())},
                  {"dist", distribution_to_json(s.dist())}};
    }
    case AdversaryStrategy::Kind::FixedExample: {
      const auto& s = static_cast<const FixedExampleStrategy&>(strategy);
      return Json{{"variant", "fixed_example"},
                  {"point", s.example().point.index},
                  {"label", s.example().label ? 1 : 0}};
    }
    case AdversaryStrategy::Kind::RandomNoise: {
      const auto& s = static_cast<const RandomNoiseStrategy&>(strategy);
      return Json{{"variant", "random_noise"},
                  {"dist", distribution_to_json(s.dist())},
                  {"flip_prob", s.flip_prob()}};
    }
    case AdversaryStrategy::Kind::Silent:
      return Json{{"variant", "silent"}};
    case AdversaryStrategy::Kind::Custom:
      break;
  }
  throw ParameterError("custom strategies are not serializable");
}

std::unique_ptr<AdversaryStrategy> strategy_from_json(const Json& j,
                                                      std::uint32_t domain) {
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "pretender") {
    return std::make_unique<PretenderStrategy>(
        hypothesis_from_json(j.at("fake_target")),
        distribution_from_json(j.at("dist"), domain));
  }
  if (variant == "fixed_example") {
    return std::make_unique<FixedExampleStrategy>(
        LabeledExample{Point{j.at("point").get<std::uint32_t>()},
                       j.at("label").get<int>() != 0});
  }
  if (variant == "random_noise") {
    return std::make_unique<RandomNoiseStrategy>(
        distribution_from_json(j.at("dist"), domain),
        j.at("flip_prob").get<double>());
  }
  if (variant == "silent") {
    return std::make_unique<SilentStrategy>();
  }
  throw ParameterError("unknown strategy variant: " + variant);
}

}  // namespace

Json instance_to_json(const Instance& instance) {
  Json oracles = Json::array();
  for (std::size_t i = 0; i < instance.num_users(); ++i) {
    const UserOracle& oracle = instance.oracle(i);
    Json entry{{"id", i}};
    if (oracle.is_truthful()) {
      entry["mode"] = "truthful";
      entry["dist"] = distribution_to_json(*oracle.distribution());
    } else {
      entry["mode"] = "adversarial";
      entry["strategy"] = strategy_to_json(*oracle.strategy());
    }
    oracles.push_back(std::move(entry));
  }
  return Json{{"class", class_to_json(instance.hypothesis_class())},
              {"target", hypothesis_to_json(instance.target())},
              {"n", instance.num_users()},
              {"eta", instance.eta()},
              {"seed", instance.seed()},
              {"generator", instance.generator()},
              {"oracles", std::move(oracles)},
              // evaluator-only block; learning code must not read it
              {"evaluation",
               Json{{"truthful_mask", instance.truthful_mask()}}}};
}

Instance instance_from_json(const Json& j) {
  HypothesisClass cls = class_from_json(j.at("class"));
  Hypothesis target = hypothesis_from_json(j.at("target"));
  const std::uint32_t domain = cls.domain_size();
  std::vector<OracleSpec> specs;
  for (const auto& entry : j.at("oracles")) {
    const std::string mode = entry.at("mode").get<std::string>();
    if (mode == "truthful") {
      specs.push_back(OracleSpec::truthful(
          distribution_from_json(entry.at("dist"), domain)));
    } else if (mode == "adversarial") {
      specs.push_back(
          OracleSpec::adversarial(strategy_from_json(entry.at("strategy"),
                                                     domain)));
    } else {
      throw ParameterError("unknown oracle mode: " + mode);
    }
  }
  return Instance(std::move(cls), std::move(target), std::move(specs),
                  j.at("eta").get<double>(), j.at("seed").get<std::uint64_t>(),
                  j.value("generator", std::string("custom")));
}

Json constants_to_json(const LearnerConstants& constants) {
  return Json{{"c_pac", constants.c_pac},
              {"c_cand", constants.c_cand},
              {"c_test", constants.c_test},
              {"c_bins", constants.c_bins},
              {"c_final", constants.c_final},
              {"max_candidate_group", constants.max_candidate_group}};
}

LearnerConstants constants_from_json(const Json& j) {
  LearnerConstants constants;
  constants.c_pac = j.value("c_pac", constants.c_pac);
  constants.c_cand = j.value("c_cand", constants.c_cand);
  constants.c_test = j.value("c_test", constants.c_test);
  constants.c_bins = j.value("c_bins", constants.c_bins);
  constants.c_final = j.value("c_final", constants.c_final);
  constants.max_candidate_group =
      j.value("max_candidate_group", constants.max_candidate_group);
  constants.validate();
  return constants;
}

Json ledger_to_json(const SampleLedger& ledger) {
  return Json{{"per_oracle", ledger.per_oracle}, {"total", ledger.total}};
}

namespace {

Json meta_to_json(const RunMeta& meta) {
  return Json{{"command", meta.command},
              {"generator", meta.generator},
              {"eps", meta.eps},
              {"delta", meta.delta},
              {"eta", meta.eta},
              {"seed", meta.seed},
              {"constants", constants_to_json(meta.constants)}};
}

Json evaluation_to_json(const RunResult& result, const Instance& instance,
                        double eps) {
  Json per_user_error = Json::array();
  Json success = Json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < instance.num_users(); ++i) {
    if (!instance.truthful_mask()[i]) {
      per_user_error.push_back(nullptr);
      success.push_back(nullptr);
      continue;
    }
    const double err = error_rate(result.outputs[i], instance.target(),
                                  *instance.oracle(i).distribution());
    per_user_error.push_back(err);
    const bool ok = err < eps;
    success.push_back(ok);
    all_ok = all_ok && ok;
  }
  return Json{{"per_user_error", std::move(per_user_error)},
              {"success", std::move(success)},
              {"all_truthful_ok", all_ok}};
}

}  // namespace

Json run_result_to_json(const RunResult& result, const Instance& instance,
                        const RunMeta& meta) {
  Json trace = Json::array();
  for (const auto& round : result.trace) {
    trace.push_back(Json{{"round", round.round},
                         {"active", round.active},
                         {"delta_r", round.delta_r},
                         {"candidate", hypothesis_to_json(round.candidate)},
                         {"retained", round.retained},
                         {"samples_drawn", round.samples_drawn}});
  }
  Json outputs = Json::array();
  for (const auto& h : result.outputs) outputs.push_back(hypothesis_to_json(h));
  return Json{{"config", meta_to_json(meta)},
              {"outputs", std::move(outputs)},
              {"ledger", ledger_to_json(result.ledger)},
              {"trace", std::move(trace)},
              {"rounds_used", result.rounds_used},
              {"final_phase_users", result.final_phase_users},
              {"evaluation", evaluation_to_json(result, instance, meta.eps)}};
}

Json trial_report_to_json(const TrialReport& report) {
  Json config = Json::object();
  for (const auto& [key, value] : report.config) config[key] = value;
  return Json{{"check", report.check},
              {"config", std::move(config)},
              {"trials", report.trials},
              {"successes", report.successes},
              {"rate", report.rate},
              {"std_error", report.std_error},
              {"threshold", report.threshold},
              {"mean_total", report.mean_total},
              {"required_mean_total", report.required_mean_total},
              {"verdict", report.verdict()},
              {"per_trial_totals", report.per_trial_totals}};
}

Json impossibility_report_to_json(const ImpossibilityReport& report) {
  Json functions = Json::array();
  for (const auto& fn : report.functions) {
    functions.push_back(Json{{"label_x0", fn.label_x0},
                             {"label_x1", fn.label_x1},
                             {"worst_case_error", fn.worst_case_error},
                             {"failing_case", fn.failing_case}});
  }
  return Json{{"check", "impossibility"},
              {"verdict", report.pass ? "PASS" : "FAIL"},
              {"functions", std::move(functions)}};
}

Json overhead_estimates_to_json(
    const std::vector<OverheadEstimate>& estimates) {
  Json rows = Json::array();
  for (const auto& est : estimates) {
    rows.push_back(Json{{"n", est.n},
                        {"d", est.d},
                        {"eta", est.eta},
                        {"trials", est.trials},
                        {"mean_collaborative", est.mean_collaborative},
                        {"mean_single", est.mean_single},
                        {"overhead", est.ratio},
                        {"se_collaborative", est.se_collaborative},
                        {"se_single", est.se_single},
                        {"se_overhead", est.se_ratio},
                        {"predicted_budget", est.predicted_budget}});
  }
  return Json{{"check", "overhead"}, {"estimates", std::move(rows)}};
}

std::string run_result_csv(const RunResult& result, const Instance& instance,
                           const RunMeta& meta) {
  std::ostringstream out;
  out << "# schema=1\n";
  out << "n,d,eps,delta,eta,total_samples,rounds,success_flags\n";
  std::string flags;
  for (std::size_t i = 0; i < instance.num_users(); ++i) {
    if (!instance.truthful_mask()[i]) {
      flags.push_back('a');
    } else {
      flags.push_back(user_learned(instance, result, i, meta.eps) ? '1' : '0');
    }
  }
  out << instance.num_users() << ','
      << instance.hypothesis_class().vc_dimension() << ','
      << csv_num(meta.eps) << ',' << csv_num(meta.delta) << ','
      << csv_num(meta.eta) << ',' << result.ledger.total << ','
      << result.rounds_used << ',' << flags << '\n';
  return out.str();
}

std::string trial_report_csv(const TrialReport& report) {
  std::ostringstream out;
  out << "# schema=1\n";
  out << "check,trials,successes,rate,std_error,threshold,mean_total,"
         "required_mean_total,verdict\n";
  out << report.check << ',' << report.trials << ',' << report.successes << ','
      << csv_num(report.rate) << ',' << csv_num(report.std_error) << ','
      << csv_num(report.threshold) << ',' << csv_num(report.mean_total) << ','
      << csv_num(report.required_mean_total) << ',' << report.verdict()
      << '\n';
  return out.str();
}

std::string overhead_csv(const std::vector<OverheadEstimate>& estimates) {
  std::ostringstream out;
  out << "# schema=1\n";
  out << "n,d,eta,trials,mean_collaborative,mean_single,overhead,"
         "se_collaborative,se_single,se_overhead,predicted_budget\n";
  for (const auto& est : estimates) {
    out << est.n << ',' << est.d << ',' << csv_num(est.eta) << ','
        << est.trials << ',' << csv_num(est.mean_collaborative) << ','
        << csv_num(est.mean_single) << ',' << csv_num(est.ratio) << ','
        << csv_num(est.se_collaborative) << ',' << csv_num(est.se_single)
        << ',' << csv_num(est.se_ratio) << ','
        << csv_num(est.predicted_budget) << '\n';
  }
  return out.str();
}

}  // namespace rcl
