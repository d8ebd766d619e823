#include "rcl/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rcl {

Hypothesis Hypothesis::threshold(std::uint32_t t, std::uint32_t domain_size) {
  if (t > domain_size) {
    throw ParameterError("threshold t must lie in [0, domain_size]");
  }
  Hypothesis h;
  h.repr_ = Repr::Threshold;
  h.domain_size_ = domain_size;
  h.t_ = t;
  return h;
}

Hypothesis Hypothesis::explicit_labels(std::vector<std::uint8_t> labels) {
  if (labels.empty()) throw ParameterError("explicit hypothesis needs a nonempty domain");
  for (auto v : labels) {
    if (v > 1) throw ParameterError("labels must be 0 or 1");
  }
  Hypothesis h;
  h.repr_ = Repr::Explicit;
  h.domain_size_ = static_cast<std::uint32_t>(labels.size());
  h.labels_ = std::move(labels);
  return h;
}

bool Hypothesis::evaluate(Point x) const {
  if (x.index >= domain_size_) {
    throw DomainError("point " + std::to_string(x.index) +
                      " outside domain of size " + std::to_string(domain_size_));
  }
  if (repr_ == Repr::Threshold) return x.index >= t_;
  return labels_[x.index] != 0;
}

std::vector<std::uint8_t> Hypothesis::label_vector() const {
  if (repr_ == Repr::Explicit) return labels_;
  std::vector<std::uint8_t> out(domain_size_, 0);
  for (std::uint32_t i = t_; i < domain_size_; ++i) out[i] = 1;
  return out;
}

bool Hypothesis::same_function(const Hypothesis& other) const {
  return domain_size_ == other.domain_size_ &&
         label_vector() == other.label_vector();
}

HypothesisClass HypothesisClass::powerset(std::uint32_t d) {
  if (d == 0) throw ParameterError("powerset class needs d >= 1");
  HypothesisClass cls;
  cls.kind_ = Kind::Powerset;
  cls.domain_size_ = d + 1;  // last index is the reserved null point
  cls.vc_dimension_ = d;
  cls.powerset_d_ = d;
  return cls;
}

HypothesisClass HypothesisClass::threshold(std::uint32_t m) {
  if (m == 0) throw ParameterError("threshold class needs m >= 1");
  HypothesisClass cls;
  cls.kind_ = Kind::Threshold;
  cls.domain_size_ = m;
  cls.vc_dimension_ = 1;
  return cls;
}

HypothesisClass HypothesisClass::finite_explicit(
    std::vector<Hypothesis> members, std::uint32_t vc_dimension) {
  if (members.empty()) throw ParameterError("finite class needs members");
  const std::uint32_t domain = members.front().domain_size();
  for (const auto& m : members) {
    if (m.domain_size() != domain) {
      throw DomainError("finite class members disagree on domain size");
    }
  }
  // vc <= log2(|members|): a class of k functions shatters at most log2(k)
  // points.
  const double cap = std::log2(static_cast<double>(members.size()));
  if (static_cast<double>(vc_dimension) > cap + 1e-12) {
    throw ParameterError("declared VC dimension exceeds log2(|members|)");
  }
  HypothesisClass cls;
  cls.kind_ = Kind::FiniteExplicit;
  cls.domain_size_ = domain;
  cls.vc_dimension_ = vc_dimension;
  cls.members_ = std::move(members);
  return cls;
}

std::optional<Point> HypothesisClass::bottom() const {
  if (kind_ == Kind::Powerset) return Point{domain_size_ - 1};
  return std::nullopt;
}

bool HypothesisClass::contains(const Hypothesis& h) const {
  if (h.domain_size() != domain_size_) return false;
  const auto labels = h.label_vector();
  switch (kind_) {
    case Kind::Powerset:
      return labels.back() == 0;
    case Kind::Threshold: {
      // must be a step 0...0 1...1
      for (std::size_t i = 1; i < labels.size(); ++i) {
        if (labels[i - 1] == 1 && labels[i] == 0) return false;
      }
      return true;
    }
    case Kind::FiniteExplicit:
      return std::any_of(members_.begin(), members_.end(),
                         [&](const Hypothesis& m) {
                           return m.label_vector() == labels;
                         });
  }
  return false;
}

std::optional<Hypothesis> HypothesisClass::consistent(
    std::span<const LabeledExample> examples) const {
  for (const auto& ex : examples) {
    if (ex.point.index >= domain_size_) {
      throw DomainError("example point outside class domain");
    }
  }
  switch (kind_) {
    case Kind::Powerset: {
      // Constrained points take their forced label, everything else 0. The
      // null point cannot be labeled 1 by any member.
      std::vector<std::int8_t> forced(domain_size_, -1);
      for (const auto& ex : examples) {
        const std::int8_t want = ex.label ? 1 : 0;
        auto& slot = forced[ex.point.index];
        if (slot == -1) {
          slot = want;
        } else if (slot != want) {
          return std::nullopt;
        }
      }
      if (forced[domain_size_ - 1] == 1) return std::nullopt;
      std::vector<std::uint8_t> labels(domain_size_, 0);
      for (std::uint32_t i = 0; i < domain_size_; ++i) {
        labels[i] = forced[i] == 1 ? 1 : 0;
      }
      return Hypothesis::explicit_labels(std::move(labels));
    }
    case Kind::Threshold: {
      // label 1 at x forces t <= x; label 0 at x forces t >= x+1.
      std::uint32_t lo = 0;
      std::uint32_t hi = domain_size_;
      for (const auto& ex : examples) {
        if (ex.label) {
          hi = std::min(hi, ex.point.index);
        } else {
          lo = std::max(lo, ex.point.index + 1);
        }
      }
      if (lo > hi) return std::nullopt;
      return Hypothesis::threshold(lo, domain_size_);
    }
    case Kind::FiniteExplicit: {
      for (const auto& member : members_) {
        bool ok = true;
        for (const auto& ex : examples) {
          if (member.evaluate(ex.point) != ex.label) {
            ok = false;
            break;
          }
        }
        if (ok) return member;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Hypothesis HypothesisClass::default_hypothesis() const {
  auto h = consistent({});
  return *h;  // consistent({}) always succeeds: classes are nonempty
}

std::uint64_t pac_sample_size(std::uint32_t d, double eps, double delta,
                              double c_pac) {
  if (d < 1) throw ParameterError("pac_sample_size: d must be >= 1");
  if (!(eps > 0.0) || eps > 1.0) {
    throw ParameterError("pac_sample_size: eps must be in (0, 1]");
  }
  if (!(delta > 0.0) || delta > 1.0) {
    throw ParameterError("pac_sample_size: delta must be in (0, 1]");
  }
  if (!(c_pac > 0.0)) throw ParameterError("pac_sample_size: c_pac must be > 0");
  const double raw =
      c_pac * (d * std::log(1.0 / eps) + std::log(1.0 / delta)) / eps;
  const double m = std::ceil(raw);
  if (m < 1.0) return 1;  // degenerate parameters still draw one sample
  return static_cast<std::uint64_t>(m);
}

}  // namespace rcl
