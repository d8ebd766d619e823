#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rcl/distribution.hpp"
#include "rcl/hypothesis.hpp"
#include "rcl/rng.hpp"
#include "rcl/types.hpp"

namespace rcl {

/// One recorded oracle response.
struct TranscriptEntry {
  std::size_t oracle_id = 0;
  LabeledExample example;
};

using Transcript = std::vector<TranscriptEntry>;

/// Everything an adversarial strategy may see when producing a response.
/// Adversaries know the class and the true target; strategies that request
/// the capability also see the full query transcript of all oracles.
struct AdversaryContext {
  const HypothesisClass& hypothesis_class;
  const Hypothesis& target;
  const Transcript* transcript;  // null unless the strategy requested it
  Rng& rng;
};

/// Pluggable adversarial behavior. Outputs must always be well-formed
/// (in-domain point, binary label); beyond that they are arbitrary.
class AdversaryStrategy {
 public:
  enum class Kind { Pretender, FixedExample, RandomNoise, Silent, Custom };

  virtual ~AdversaryStrategy() = default;
  virtual Kind kind() const = 0;
  virtual LabeledExample next(AdversaryContext& ctx) = 0;
  /// Strategies that collude via the shared transcript opt in here.
  virtual bool wants_transcript() const { return false; }
};

/// Imitates a truthful user: draws from `dist` and labels with a fake target.
class PretenderStrategy final : public AdversaryStrategy {
 public:
  PretenderStrategy(Hypothesis fake_target, Distribution dist)
      : fake_target_(std::move(fake_target)), dist_(std::move(dist)) {}

  Kind kind() const override { return Kind::Pretender; }
  LabeledExample next(AdversaryContext& ctx) override;

  const Hypothesis& fake_target() const { return fake_target_; }
  const Distribution& dist() const { return dist_; }

 private:
  Hypothesis fake_target_;
  Distribution dist_;
};

/// Returns the same labeled pair on every query.
class FixedExampleStrategy final : public AdversaryStrategy {
 public:
  explicit FixedExampleStrategy(LabeledExample example) : example_(example) {}

  Kind kind() const override { return Kind::FixedExample; }
  LabeledExample next(AdversaryContext&) override { return example_; }

  LabeledExample example() const { return example_; }

 private:
  LabeledExample example_;
};

/// Draws from `dist` and reports the true label flipped with probability
/// `flip_prob`.
class RandomNoiseStrategy final : public AdversaryStrategy {
 public:
  RandomNoiseStrategy(Distribution dist, double flip_prob);

  Kind kind() const override { return Kind::RandomNoise; }
  LabeledExample next(AdversaryContext& ctx) override;

  const Distribution& dist() const { return dist_; }
  double flip_prob() const { return flip_prob_; }

 private:
  Distribution dist_;
  double flip_prob_ = 0.0;
};

/// Always answers with the class's null point labeled 0, revealing nothing.
/// Only valid for classes that have a null point.
class SilentStrategy final : public AdversaryStrategy {
 public:
  Kind kind() const override { return Kind::Silent; }
  LabeledExample next(AdversaryContext& ctx) override;
};

/// Construction-time description of one oracle.
struct OracleSpec {
  static OracleSpec truthful(Distribution dist);
  static OracleSpec adversarial(std::unique_ptr<AdversaryStrategy> strategy);

  std::optional<Distribution> dist;             // truthful mode
  std::unique_ptr<AdversaryStrategy> strategy;  // adversarial mode
};

/// Per-oracle realized query counts.
struct SampleLedger {
  std::vector<std::uint64_t> per_oracle;
  std::uint64_t total = 0;
};

/// A user oracle: truthful (distribution + true labels) or adversarial
/// (strategy). Every query is metered.
class UserOracle {
 public:
  UserOracle(std::size_t id, std::optional<Distribution> dist,
             std::unique_ptr<AdversaryStrategy> strategy, std::uint64_t seed);

  std::size_t id() const { return id_; }
  bool is_truthful() const { return dist_.has_value(); }
  std::uint64_t query_count() const { return query_count_; }
  const Distribution* distribution() const {
    return dist_ ? &*dist_ : nullptr;
  }
  const AdversaryStrategy* strategy() const { return strategy_.get(); }
  bool wants_transcript() const {
    return strategy_ && strategy_->wants_transcript();
  }

  LabeledExample query(const HypothesisClass& cls, const Hypothesis& target,
                       const Transcript* transcript);

 private:
  std::size_t id_;
  std::optional<Distribution> dist_;
  std::unique_ptr<AdversaryStrategy> strategy_;
  std::uint64_t query_count_ = 0;
  Rng rng_;
};

/// floor(eta * n) with a small tolerance against representation error in eta.
std::size_t max_adversaries(double eta, std::size_t n);

/// A complete simulation instance: class, hidden target, n metered oracles of
/// which at most floor(eta*n) are adversarial. The target and the truthful
/// mask exist for evaluation; learning algorithms must not read them.
class Instance {
 public:
  Instance(HypothesisClass cls, Hypothesis target,
           std::vector<OracleSpec> oracle_specs, double eta,
           std::uint64_t seed, std::string generator = "custom");

  Instance(Instance&&) = default;
  Instance& operator=(Instance&&) = default;

  const HypothesisClass& hypothesis_class() const { return class_; }
  std::size_t num_users() const { return oracles_.size(); }
  double eta() const { return eta_; }
  std::uint64_t seed() const { return seed_; }
  const std::string& generator() const { return generator_; }
  std::size_t adversary_bound() const {
    return max_adversaries(eta_, num_users());
  }

  /// Draw one labeled example from oracle i, metering the call.
  LabeledExample query(std::size_t i);

  SampleLedger ledger() const;

  const UserOracle& oracle(std::size_t i) const { return oracles_[i]; }

  // Evaluation-only surface (hidden from learners by convention).
  const Hypothesis& target() const { return target_; }
  const std::vector<std::uint8_t>& truthful_mask() const {
    return truthful_mask_;
  }
  const Transcript& transcript() const { return transcript_; }
  bool records_transcript() const { return record_transcript_; }

 private:
  HypothesisClass class_;
  Hypothesis target_;
  std::vector<UserOracle> oracles_;
  std::vector<std::uint8_t> truthful_mask_;
  double eta_ = 0.0;
  std::uint64_t seed_ = 0;
  std::string generator_;
  bool record_transcript_ = false;
  Transcript transcript_;
};

}  // namespace rcl
