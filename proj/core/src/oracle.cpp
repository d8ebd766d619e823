#include "rcl/oracle.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace rcl {

namespace {
constexpr std::uint64_t kOracleStream = 0x6f7261636c65ULL;  // stream tag
}

LabeledExample PretenderStrategy::next(AdversaryContext& ctx) {
  const Point x = dist_.sample(ctx.rng);
  return {x, fake_target_.evaluate(x)};
}

RandomNoiseStrategy::RandomNoiseStrategy(Distribution dist, double flip_prob)
    : dist_(std::move(dist)), flip_prob_(flip_prob) {
  if (flip_prob < 0.0 || flip_prob > 1.0) {
    throw ParameterError("flip_prob must be in [0, 1]");
  }
}

LabeledExample RandomNoiseStrategy::next(AdversaryContext& ctx) {
  const Point x = dist_.sample(ctx.rng);
  bool label = ctx.target.evaluate(x);
  if (ctx.rng.bernoulli(flip_prob_)) label = !label;
  return {x, label};
}

LabeledExample SilentStrategy::next(AdversaryContext& ctx) {
  const auto bottom = ctx.hypothesis_class.bottom();
  if (!bottom) {
    throw DomainError("silent strategy requires a class with a null point");
  }
  return {*bottom, false};
}

OracleSpec OracleSpec::truthful(Distribution dist) {
  OracleSpec spec;
  spec.dist = std::move(dist);
  return spec;
}

OracleSpec OracleSpec::adversarial(std::unique_ptr<AdversaryStrategy> strategy) {
  if (!strategy) throw ParameterError("adversarial oracle needs a strategy");
  OracleSpec spec;
  spec.strategy = std::move(strategy);
  return spec;
}

UserOracle::UserOracle(std::size_t id, std::optional<Distribution> dist,
                       std::unique_ptr<AdversaryStrategy> strategy,
                       std::uint64_t seed)
    : id_(id),
      dist_(std::move(dist)),
      strategy_(std::move(strategy)),
      rng_(seed) {}

LabeledExample UserOracle::query(const HypothesisClass& cls,
                                 const Hypothesis& target,
                                 const Transcript* transcript) {
  ++query_count_;
  if (dist_) {
    const Point x = dist_->sample(rng_);
    return {x, target.evaluate(x)};
  }
  AdversaryContext ctx{cls, target,
                       strategy_->wants_transcript() ? transcript : nullptr,
                       rng_};
  return strategy_->next(ctx);
}

std::size_t max_adversaries(double eta, std::size_t n) {
  if (eta < 0.0 || eta > 1.0) throw ParameterError("eta must be in [0, 1]");
  // 1e-9 absorbs representation error in products like 0.3 * 10
  return static_cast<std::size_t>(
      std::floor(eta * static_cast<double>(n) + 1e-9));
}

Instance::Instance(HypothesisClass cls, Hypothesis target,
                   std::vector<OracleSpec> oracle_specs, double eta,
                   std::uint64_t seed, std::string generator)
    : class_(std::move(cls)),
      target_(std::move(target)),
      eta_(eta),
      seed_(seed),
      generator_(std::move(generator)) {
  if (oracle_specs.empty()) throw ParameterError("instance needs oracles");
  if (!class_.contains(target_)) {
    throw DomainError("target hypothesis is not a member of the class");
  }
  const std::size_t n = oracle_specs.size();
  std::size_t adversaries = 0;
  oracles_.reserve(n);
  truthful_mask_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& spec = oracle_specs[i];
    const bool truthful = spec.dist.has_value();
    if (!truthful) ++adversaries;
    if (truthful && spec.dist->domain_size() != class_.domain_size()) {
      throw DomainError("oracle distribution domain mismatch");
    }
    truthful_mask_.push_back(truthful ? 1 : 0);
    if (spec.strategy && spec.strategy->wants_transcript()) {
      record_transcript_ = true;
    }
    oracles_.emplace_back(i, std::move(spec.dist), std::move(spec.strategy),
                          derive_seed(seed, kOracleStream, i));
  }
  if (adversaries > max_adversaries(eta_, n)) {
    throw ParameterError(
        "instance declares " + std::to_string(adversaries) +
        " adversaries, above the bound floor(eta*n) = " +
        std::to_string(max_adversaries(eta_, n)));
  }
}

LabeledExample Instance::query(std::size_t i) {
  if (i >= oracles_.size()) throw ParameterError("oracle index out of range");
  const LabeledExample ex = oracles_[i].query(
      class_, target_, record_transcript_ ? &transcript_ : nullptr);
  if (record_transcript_) transcript_.push_back({i, ex});
  return ex;
}

SampleLedger Instance::ledger() const {
  SampleLedger ledger;
  ledger.per_oracle.reserve(oracles_.size());
  for (const auto& oracle : oracles_) {
    ledger.per_oracle.push_back(oracle.query_count());
    ledger.total += oracle.query_count();
  }
  return ledger;
}

}  // namespace rcl
