#include "cli_app.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rcl/generators.hpp"
#include "rcl/serialize.hpp"

namespace rcl::cli {

namespace {

struct Options {
  std::string config_path;
  std::string generator = "uniform-threshold";
  std::string instance_path;  // --in
  std::size_t n = 10;
  std::uint32_t d = 16;
  double eps = 0.1;
  double delta = 0.1;
  double eta = 0.0;
  bool eta_given = false;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int which_case = 0;
  std::string check;
  std::size_t trials = 0;  // 0 = per-check default
  int jobs = 1;
  double budget_scale = 1.0;
  std::size_t adversaries = 1;
  bool close_fakes = false;
  std::vector<double> planted_errors;
  double gamma = 1.0;
  std::string grid;
  std::string json_path;
  std::string csv_path;
  LearnerConstants constants;
};

void validate_common(const Options& opt) {
  if (!(opt.eps > 0.0) || opt.eps > 1.0) {
    throw ParameterError("--eps must be in (0, 1]");
  }
  if (!(opt.delta > 0.0) || opt.delta > 1.0) {
    throw ParameterError("--delta must be in (0, 1]");
  }
  if (opt.eta < 0.0 || opt.eta > 1.0) {
    throw ParameterError("--eta must be in [0, 1]");
  }
  if (opt.n < 1) throw ParameterError("--n must be >= 1");
  if (opt.d < 1) throw ParameterError("--d must be >= 1");
  if (opt.jobs < 1) throw ParameterError("--jobs must be >= 1");
  opt.constants.validate();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open " + path + " for writing");
  file << content;
}

/// Applies config-file values to options the command line left untouched.
/// Precedence: flags > config file > defaults.
void overlay_config(const Json& cfg, CLI::App* sub, Options& opt) {
  const auto absent = [&](const std::string& flag) {
    const CLI::Option* o = sub->get_option_no_throw(flag);
    return o == nullptr || o->count() == 0;
  };
  const auto load = [&](const char* key, const char* flag, auto& slot) {
    if (cfg.contains(key) && absent(flag)) {
      slot = cfg.at(key).get<std::decay_t<decltype(slot)>>();
    }
  };
  load("generator", "--generator", opt.generator);
  load("n", "--n", opt.n);
  load("d", "--d", opt.d);
  load("eps", "--eps", opt.eps);
  load("delta", "--delta", opt.delta);
  load("trials", "--trials", opt.trials);
  load("jobs", "--jobs", opt.jobs);
  load("budget_scale", "--budget-scale", opt.budget_scale);
  load("adversaries", "--adversaries", opt.adversaries);
  load("gamma", "--gamma", opt.gamma);
  load("check", "--check", opt.check);
  load("grid", "--grid", opt.grid);
  if (cfg.contains("eta") && absent("--eta")) {
    opt.eta = cfg.at("eta").get<double>();
    opt.eta_given = true;
  }
  if (cfg.contains("seed") && absent("--seed")) {
    opt.seed = cfg.at("seed").get<std::uint64_t>();
    opt.seed_given = true;
  }
  if (cfg.contains("constants")) {
    const Json& c = cfg.at("constants");
    LearnerConstants defaults;
    const auto load_const = [&](const char* key, const char* flag,
                                auto& slot) {
      if (c.contains(key) && absent(flag)) {
        slot = c.at(key).get<std::decay_t<decltype(slot)>>();
      }
    };
    load_const("c_pac", "--c-pac", opt.constants.c_pac);
    load_const("c_cand", "--c-cand", opt.constants.c_cand);
    load_const("c_test", "--c-test", opt.constants.c_test);
    load_const("c_bins", "--c-bins", opt.constants.c_bins);
    load_const("c_final", "--c-final", opt.constants.c_final);
    load_const("max_candidate_group", "--max-candidate-group",
               opt.constants.max_candidate_group);
  }
}

void resolve_seed(Options& opt, bool required) {
  if (opt.seed_given) return;
  if (const char* env = std::getenv("ROBUST_COLLAB_SEED")) {
    try {
      opt.seed = std::stoull(env);
      opt.seed_given = true;
      return;
    } catch (const std::exception&) {
      throw ParameterError("ROBUST_COLLAB_SEED is not a valid integer");
    }
  }
  if (required) {
    throw ParameterError(
        "--seed is required for this subcommand (or set ROBUST_COLLAB_SEED)");
  }
}

Instance build_instance(const Options& opt) {
  if (!opt.instance_path.empty()) {
    std::ifstream file(opt.instance_path);
    if (!file) throw Error("cannot read " + opt.instance_path);
    Json j = Json::parse(file);
    return instance_from_json(j);
  }
  return make_instance(opt.generator, opt.n, opt.d, opt.eps, opt.eta, opt.seed,
                       opt.which_case);
}

std::vector<OverheadPoint> parse_grid(const std::string& grid, double eta) {
  // Expected form: n=4,8,16 (d tracks n point by point).
  const auto eq = grid.find('=');
  if (eq == std::string::npos || grid.substr(0, eq) != "n") {
    throw ParameterError("--grid must look like n=4,8,16");
  }
  std::vector<OverheadPoint> points;
  std::stringstream values(grid.substr(eq + 1));
  std::string token;
  while (std::getline(values, token, ',')) {
    const long v = std::stol(token);
    if (v < 1) throw ParameterError("--grid entries must be >= 1");
    points.push_back(OverheadPoint{static_cast<std::size_t>(v),
                                   static_cast<std::uint32_t>(v), eta});
  }
  if (points.empty()) throw ParameterError("--grid lists no points");
  return points;
}

int cmd_run(Options& opt, bool baseline, std::ostream& out) {
  validate_common(opt);
  resolve_seed(opt, false);
  Instance instance = build_instance(opt);
  const double eta = opt.eta_given ? opt.eta : instance.eta();
  RunResult result =
      baseline ? run_naive_baseline(instance, opt.eps, opt.delta, opt.constants)
               : run_robust_collaborative(instance, opt.eps, opt.delta, eta,
                                          opt.constants);
  RunMeta meta{baseline ? "baseline" : "run", instance.generator(), opt.eps,
               opt.delta,  eta,       instance.seed(),   opt.constants};
  const Json doc = run_result_to_json(result, instance, meta);
  const std::string text = doc.dump(2) + "\n";
  out << text;
  if (!opt.json_path.empty()) write_file(opt.json_path, text);
  if (!opt.csv_path.empty()) {
    write_file(opt.csv_path, run_result_csv(result, instance, meta));
  }
  return 0;
}

int cmd_verify(Options& opt, std::ostream& out) {
  validate_common(opt);
  if (opt.check.empty()) {
    throw ParameterError("--check is required (balls-in-bins, candidate-lemma, "
                         "test-lemma, impossibility, lower-bound-cost)");
  }
  if (opt.check == "impossibility") {
    const ImpossibilityReport report = check_centralized_impossibility();
    const Json doc = impossibility_report_to_json(report);
    const std::string text = doc.dump(2) + "\n";
    out << text;
    if (!opt.json_path.empty()) write_file(opt.json_path, text);
    if (!opt.csv_path.empty()) {
      write_file(opt.csv_path, std::string("# schema=1\ncheck,verdict\n") +
                                   "impossibility," +
                                   (report.pass ? "PASS" : "FAIL") + "\n");
    }
    return report.pass ? 0 : 1;
  }

  resolve_seed(opt, true);
  TrialReport report;
  if (opt.check == "balls-in-bins") {
    BallsInBinsConfig config{opt.n, opt.constants.c_bins, opt.delta,
                             opt.budget_scale};
    report = check_balls_in_bins(config, opt.trials ? opt.trials : 1000,
                                 opt.seed, opt.jobs);
  } else if (opt.check == "candidate-lemma") {
    CandidateLemmaConfig config;
    config.group_size = opt.n;
    config.adversaries = opt.adversaries;
    config.domain = opt.d;
    config.eps = opt.eps;
    config.delta = opt.delta;
    config.close_fakes = opt.close_fakes;
    config.constants = opt.constants;
    config.budget_scale = opt.budget_scale;
    report = check_candidate_lemma(config, opt.trials ? opt.trials : 500,
                                   opt.seed, opt.jobs);
  } else if (opt.check == "test-lemma") {
    TestLemmaConfig config;
    if (!opt.planted_errors.empty()) config.planted_errors = opt.planted_errors;
    config.eps = opt.eps;
    config.delta = opt.delta;
    config.constants = opt.constants;
    config.budget_scale = opt.budget_scale;
    report = check_test_lemma(config, opt.trials ? opt.trials : 500, opt.seed,
                              opt.jobs);
  } else if (opt.check == "lower-bound-cost") {
    LowerBoundCostConfig config;
    config.n = opt.n;
    config.d = opt.d;
    config.eps = opt.eps;
    config.eta = opt.eta_given ? opt.eta : 0.2;
    config.delta = opt.delta;
    config.gamma = opt.gamma;
    config.constants = opt.constants;
    report = check_lower_bound_cost(config, opt.trials ? opt.trials : 100,
                                    opt.seed, opt.jobs);
  } else {
    throw ParameterError("unknown --check: " + opt.check);
  }
  const Json doc = trial_report_to_json(report);
  const std::string text = doc.dump(2) + "\n";
  out << text;
  if (!opt.json_path.empty()) write_file(opt.json_path, text);
  if (!opt.csv_path.empty()) write_file(opt.csv_path, trial_report_csv(report));
  return report.pass ? 0 : 1;
}

int cmd_sweep(Options& opt, std::ostream& out) {
  validate_common(opt);
  resolve_seed(opt, true);
  if (opt.grid.empty()) throw ParameterError("--grid is required for sweep");
  const std::vector<OverheadPoint> points = parse_grid(opt.grid, opt.eta);
  const std::vector<OverheadEstimate> estimates =
      measure_overhead(points, opt.trials ? opt.trials : 200, opt.seed,
                       opt.constants, opt.jobs);
  Json doc = overhead_estimates_to_json(estimates);
  doc["config"] = Json{{"grid", opt.grid},
                       {"eta", opt.eta},
                       {"trials", opt.trials ? opt.trials : 200},
                       {"seed", opt.seed},
                       {"jobs", opt.jobs},
                       {"constants", constants_to_json(opt.constants)}};
  const std::string text = doc.dump(2) + "\n";
  out << text;
  if (!opt.json_path.empty()) write_file(opt.json_path, text);
  if (!opt.csv_path.empty()) write_file(opt.csv_path, overhead_csv(estimates));
  return 0;
}

int cmd_instance(Options& opt, std::ostream& out) {
  validate_common(opt);
  resolve_seed(opt, false);
  Instance instance = build_instance(opt);
  const std::string text = instance_to_json(instance).dump(2) + "\n";
  out << text;
  if (!opt.json_path.empty()) write_file(opt.json_path, text);
  return 0;
}

void add_common_flags(CLI::App* sub, Options& opt) {
  sub->add_option("--config", opt.config_path,
                  "JSON config file; flags override its values");
  sub->add_option("--n", opt.n, "Number of users (or bins)");
  sub->add_option("--d", opt.d,
                  "Class size parameter: free points for powerset kinds, "
                  "domain size for threshold");
  sub->add_option("--eps", opt.eps, "Accuracy target in (0, 1]");
  sub->add_option("--delta", opt.delta, "Failure budget in (0, 1]");
  sub->add_option("--eta", opt.eta, "Adversarial fraction in [0, 1]")
      ->each([&opt](const std::string&) { opt.eta_given = true; });
  sub->add_option("--seed", opt.seed,
                  "Root RNG seed (fallback: ROBUST_COLLAB_SEED)")
      ->each([&opt](const std::string&) { opt.seed_given = true; });
  sub->add_option("--jobs", opt.jobs, "Max concurrent trials");
  sub->add_option("--json", opt.json_path, "Write the JSON document here too");
  sub->add_option("--csv", opt.csv_path, "Write a CSV summary here");
  sub->add_option("--c-pac", opt.constants.c_pac, "PAC sample-size constant");
  sub->add_option("--c-cand", opt.constants.c_cand,
                  "Candidate search budget constant");
  sub->add_option("--c-test", opt.constants.c_test,
                  "Validation budget constant");
  sub->add_option("--c-bins", opt.constants.c_bins,
                  "Balls-in-bins budget constant");
  sub->add_option("--c-final", opt.constants.c_final,
                  "Final-phase budget constant");
  sub->add_option("--max-candidate-group", opt.constants.max_candidate_group,
                  "Exponential search cap on |G|");
}

void add_instance_flags(CLI::App* sub, Options& opt) {
  sub->add_option("--generator", opt.generator,
                  "lower-bound | impossibility | uniform-powerset | "
                  "uniform-threshold");
  sub->add_option("--in", opt.instance_path, "Load an instance JSON file");
  sub->add_option("--case", opt.which_case,
                  "Impossibility case (0 or 1)")
      ->check(CLI::Range(0, 1));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Options opt;
  CLI::App app{"Robust collaborative learning simulator"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand(
      "run", "Run the iterative collaborative learner on an instance");
  CLI::App* baseline = app.add_subcommand(
      "baseline", "Run the independent-learning baseline on an instance");
  CLI::App* verify = app.add_subcommand(
      "verify", "Run a statistical or exhaustive verification check");
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Measure sample-complexity overhead over a grid of n = d");
  CLI::App* instance =
      app.add_subcommand("instance", "Generate or reload an instance JSON");

  for (CLI::App* sub : {run, baseline, verify, sweep, instance}) {
    add_common_flags(sub, opt);
  }
  for (CLI::App* sub : {run, baseline, instance}) {
    add_instance_flags(sub, opt);
  }
  verify->add_option("--check", opt.check,
                     "balls-in-bins | candidate-lemma | test-lemma | "
                     "impossibility | lower-bound-cost");
  verify->add_option("--trials", opt.trials, "Monte Carlo trial count");
  verify->add_option("--budget-scale", opt.budget_scale,
                     "Scales the check budget; 0.1 is the negative control");
  verify->add_option("--adversaries", opt.adversaries,
                     "Pretender count for candidate-lemma");
  verify->add_flag("--close-fakes", opt.close_fakes,
                   "Pretender targets one step from the truth");
  verify->add_option("--planted-errors", opt.planted_errors,
                     "Comma-separated exact errors for test-lemma")
      ->delimiter(',');
  verify->add_option("--gamma", opt.gamma,
                     "Cost-floor fraction for lower-bound-cost");
  sweep->add_option("--grid", opt.grid, "Sweep grid, e.g. n=4,8,16");
  sweep->add_option("--trials", opt.trials, "Trials per grid point");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("rcl");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!opt.config_path.empty()) {
      std::ifstream file(opt.config_path);
      if (!file) throw Error("cannot read config " + opt.config_path);
      const Json cfg = Json::parse(file);
      overlay_config(cfg, app.get_subcommands().front(), opt);
    }
    if (run->parsed()) return cmd_run(opt, false, out);
    if (baseline->parsed()) return cmd_run(opt, true, out);
    if (verify->parsed()) return cmd_verify(opt, out);
    if (sweep->parsed()) return cmd_sweep(opt, out);
    if (instance->parsed()) return cmd_instance(opt, out);
    err << "usage error: no subcommand\n";
    return 2;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace rcl::cli
