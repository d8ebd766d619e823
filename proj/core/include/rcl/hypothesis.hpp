#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rcl/types.hpp"

namespace rcl {

/// A total binary function on a finite domain. Either a parametric threshold
/// rule (label 1 iff index >= t) or an explicit label vector.
class Hypothesis {
 public:
  enum class Repr { Threshold, Explicit };

  /// Threshold rule over a domain of `domain_size` points; t may equal
  /// domain_size (the all-zero function).
  static Hypothesis threshold(std::uint32_t t, std::uint32_t domain_size);

  /// Explicit label vector; one entry (0/1) per domain point.
  static Hypothesis explicit_labels(std::vector<std::uint8_t> labels);

  Repr repr() const { return repr_; }
  std::uint32_t domain_size() const { return domain_size_; }

  /// Threshold parameter; only valid for Repr::Threshold.
  std::uint32_t threshold_value() const { return t_; }

  /// Label vector; only valid for Repr::Explicit.
  const std::vector<std::uint8_t>& labels() const { return labels_; }

  /// Deterministic evaluation. Throws DomainError for out-of-domain points.
  bool evaluate(Point x) const;

  /// Labels of every domain point in index order, regardless of representation.
  std::vector<std::uint8_t> label_vector() const;

  /// Structural equality (same representation and parameters).
  friend bool operator==(const Hypothesis& a, const Hypothesis& b) {
    return a.repr_ == b.repr_ && a.domain_size_ == b.domain_size_ &&
           a.t_ == b.t_ && a.labels_ == b.labels_;
  }

  /// Semantic equality: same labels on every domain point.
  bool same_function(const Hypothesis& other) const;

 private:
  Hypothesis() = default;

  Repr repr_ = Repr::Explicit;
  std::uint32_t domain_size_ = 0;
  std::uint32_t t_ = 0;                 // threshold only
  std::vector<std::uint8_t> labels_;    // explicit only
};

/// A hypothesis class together with a consistency oracle. The oracle, given
/// labeled examples, returns a member agreeing with all of them or nothing if
/// no member does. Tie-breaking is deterministic:
///   - powerset: unconstrained points get label 0;
///   - threshold: smallest consistent t;
///   - finite explicit: first consistent member in declaration order.
class HypothesisClass {
 public:
  enum class Kind { Powerset, Threshold, FiniteExplicit };

  /// All 2^d binary functions on a domain of d+1 points whose last point (the
  /// reserved null point) is always labeled 0. VC dimension d.
  static HypothesisClass powerset(std::uint32_t d);

  /// Threshold functions on m points: t in [0, m], label 1 iff index >= t.
  /// VC dimension 1.
  static HypothesisClass threshold(std::uint32_t m);

  /// An explicit finite list of hypotheses over a shared domain. The declared
  /// VC dimension must satisfy vc <= log2(|members|).
  static HypothesisClass finite_explicit(std::vector<Hypothesis> members,
                                         std::uint32_t vc_dimension);

  Kind kind() const { return kind_; }
  std::uint32_t domain_size() const { return domain_size_; }
  std::uint32_t vc_dimension() const { return vc_dimension_; }

  /// The reserved always-zero point, present only for powerset classes.
  std::optional<Point> bottom() const;

  /// Powerset parameter d (number of free points); only valid for powerset.
  std::uint32_t powerset_d() const { return powerset_d_; }

  /// Members list; only valid for finite explicit classes.
  const std::vector<Hypothesis>& members() const { return members_; }

  /// Semantic membership test (evaluates over the whole domain).
  bool contains(const Hypothesis& h) const;

  /// The consistency oracle. Returns a member consistent with every example
  /// in S, or nullopt if none exists. Deterministic tie-breaking as above.
  std::optional<Hypothesis> consistent(
      std::span<const LabeledExample> examples) const;

  /// Tie-break minimal member: consistent({}) which always exists.
  Hypothesis default_hypothesis() const;

 private:
  HypothesisClass() = default;

  Kind kind_ = Kind::Powerset;
  std::uint32_t domain_size_ = 0;
  std::uint32_t vc_dimension_ = 0;
  std::uint32_t powerset_d_ = 0;
  std::vector<Hypothesis> members_;  // finite explicit only
};

/// Classic PAC sample size ceil(c_pac * (d ln(1/eps) + ln(1/delta)) / eps),
/// clamped to at least one sample.
std::uint64_t pac_sample_size(std::uint32_t d, double eps, double delta,
                              double c_pac);

}  // namespace rcl
