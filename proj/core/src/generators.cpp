#include "rcl/generators.hpp"

#include <algorithm>
#include <memory>
#include <utility>

namespace rcl {

namespace {

constexpr std::uint64_t kGeneratorStream = 0x67656eULL;

Hypothesis random_powerset_member(std::uint32_t d, Rng& rng) {
  std::vector<std::uint8_t> labels(d + 1, 0);
  for (std::uint32_t i = 0; i < d; ++i) {
    labels[i] = static_cast<std::uint8_t>(rng.next_below(2));
  }
  return Hypothesis::explicit_labels(std::move(labels));
}

// Deterministic Fisher-Yates; used to hide role positions behind the seed.
void shuffle_specs(std::vector<OracleSpec>& specs, Rng& rng) {
  for (std::size_t i = specs.size(); i > 1; --i) {
    const std::size_t j = rng.next_below(i);
    std::swap(specs[i - 1], specs[j]);
  }
}

}  // namespace

Instance make_lower_bound_instance(std::size_t n, std::uint32_t d, double eps,
                                   double eta, std::uint64_t seed) {
  if (!(eps > 0.0) || eps > 0.5) {
    throw ParameterError("lower-bound instance needs 0 < eps <= 1/2");
  }
  const std::size_t adversaries = max_adversaries(eta, n);
  if (adversaries == 0 || adversaries >= n) {
    throw ParameterError(
        "lower-bound instance needs 1 <= floor(eta*n) <= n-1");
  }
  auto cls = HypothesisClass::powerset(d);
  const Point bottom = *cls.bottom();
  Rng gen(derive_seed(seed, kGeneratorStream));
  Hypothesis target = random_powerset_member(d, gen);

  std::vector<std::pair<Point, double>> informative;
  informative.reserve(d + 1);
  for (std::uint32_t i = 0; i < d; ++i) {
    informative.push_back({Point{i}, 2.0 * eps / d});
  }
  informative.push_back({bottom, 1.0 - 2.0 * eps});
  const Distribution informative_dist(std::move(informative),
                                      cls.domain_size());

  std::vector<OracleSpec> specs;
  specs.reserve(n);
  specs.push_back(OracleSpec::truthful(informative_dist));
  for (std::size_t i = 0; i + 1 < n - adversaries; ++i) {
    specs.push_back(
        OracleSpec::truthful(Distribution::point_mass(bottom, cls.domain_size())));
  }
  for (std::size_t i = 0; i < adversaries; ++i) {
    specs.push_back(OracleSpec::adversarial(std::make_unique<PretenderStrategy>(
        random_powerset_member(d, gen), informative_dist)));
  }
  shuffle_specs(specs, gen);
  return Instance(std::move(cls), std::move(target), std::move(specs), eta,
                  seed, "lower-bound");
}

Instance make_centralized_impossibility_instance(std::size_t n,
                                                 int which_case) {
  if (n < 2) throw ParameterError("impossibility instance needs n >= 2");
  if (which_case != 0 && which_case != 1) {
    throw ParameterError("which_case must be 0 or 1");
  }
  // All four binary functions on {x0, x1}, in label order 00, 01, 10, 11.
  std::vector<Hypothesis> members;
  for (std::uint8_t l0 : {0, 1}) {
    for (std::uint8_t l1 : {0, 1}) {
      members.push_back(Hypothesis::explicit_labels({l0, l1}));
    }
  }
  // Declaration order above puts 00 first and 01 second.
  Hypothesis target = which_case == 0 ? members[0] : members[1];
  auto cls = HypothesisClass::finite_explicit(std::move(members), 2);

  const Point x0{0};
  const Point x1{1};
  std::vector<OracleSpec> specs;
  specs.reserve(n);
  // The first two oracles both sit on x1; in each case one of them lies and
  // the other tells the truth, producing identical observable behavior.
  if (which_case == 0) {
    specs.push_back(OracleSpec::adversarial(
        std::make_unique<FixedExampleStrategy>(LabeledExample{x1, true})));
    specs.push_back(OracleSpec::truthful(Distribution::point_mass(x1, 2)));
  } else {
    specs.push_back(OracleSpec::truthful(Distribution::point_mass(x1, 2)));
    specs.push_back(OracleSpec::adversarial(
        std::make_unique<FixedExampleStrategy>(LabeledExample{x1, false})));
  }
  for (std::size_t i = 2; i < n; ++i) {
    specs.push_back(OracleSpec::truthful(Distribution::point_mass(x0, 2)));
  }
  return Instance(std::move(cls), std::move(target), std::move(specs),
                  1.0 / static_cast<double>(n), 0, "impossibility");
}

Instance make_uniform_powerset_instance(std::size_t n, std::uint32_t d,
                                        double eta, std::uint64_t seed) {
  if (n == 0) throw ParameterError("instance needs n >= 1");
  auto cls = HypothesisClass::powerset(d);
  Rng gen(derive_seed(seed, kGeneratorStream));
  Hypothesis target = random_powerset_member(d, gen);

  std::vector<Point> informative_points;
  informative_points.reserve(d);
  for (std::uint32_t i = 0; i < d; ++i) informative_points.push_back(Point{i});
  const Distribution uniform =
      Distribution::uniform_over(informative_points, cls.domain_size());

  const std::size_t adversaries = max_adversaries(eta, n);
  std::vector<OracleSpec> specs;
  specs.reserve(n);
  for (std::size_t i = 0; i < n - adversaries; ++i) {
    specs.push_back(OracleSpec::truthful(uniform));
  }
  for (std::size_t i = 0; i < adversaries; ++i) {
    specs.push_back(OracleSpec::adversarial(std::make_unique<PretenderStrategy>(
        random_powerset_member(d, gen), uniform)));
  }
  shuffle_specs(specs, gen);
  return Instance(std::move(cls), std::move(target), std::move(specs), eta,
                  seed, "uniform-powerset");
}

Instance make_uniform_threshold_instance(std::size_t n, std::uint32_t m,
                                         double eta, std::uint64_t seed) {
  if (n == 0) throw ParameterError("instance needs n >= 1");
  auto cls = HypothesisClass::threshold(m);
  Rng gen(derive_seed(seed, kGeneratorStream));
  Hypothesis target = Hypothesis::threshold(
      static_cast<std::uint32_t>(gen.next_below(m + 1)), m);
  const Distribution uniform = Distribution::uniform(m);

  const std::size_t adversaries = max_adversaries(eta, n);
  std::vector<OracleSpec> specs;
  specs.reserve(n);
  for (std::size_t i = 0; i < n - adversaries; ++i) {
    specs.push_back(OracleSpec::truthful(uniform));
  }
  for (std::size_t i = 0; i < adversaries; ++i) {
    specs.push_back(OracleSpec::adversarial(std::make_unique<PretenderStrategy>(
        Hypothesis::threshold(static_cast<std::uint32_t>(gen.next_below(m + 1)),
                              m),
        uniform)));
  }
  shuffle_specs(specs, gen);
  return Instance(std::move(cls), std::move(target), std::move(specs), eta,
                  seed, "uniform-threshold");
}

Instance make_instance(const std::string& generator, std::size_t n,
                       std::uint32_t d, double eps, double eta,
                       std::uint64_t seed, int which_case) {
  if (generator == "lower-bound") {
    return make_lower_bound_instance(n, d, eps, eta, seed);
  }
  if (generator == "impossibility") {
    return make_centralized_impossibility_instance(n, which_case);
  }
  if (generator == "uniform-powerset") {
    return make_uniform_powerset_instance(n, d, eta, seed);
  }
  if (generator == "uniform-threshold") {
    return make_uniform_threshold_instance(n, d, eta, seed);
  }
  throw ParameterError("unknown generator: " + generator);
}

}  // namespace rcl
