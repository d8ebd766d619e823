#include "rcl/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rcl {

Distribution::Distribution(std::vector<std::pair<Point, double>> support,
                           std::uint32_t domain_size)
    : domain_size_(domain_size) {
  std::sort(support.begin(), support.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double total = 0.0;
  for (const auto& [point, mass] : support) {
    if (point.index >= domain_size) {
      throw DomainError("support point outside domain");
    }
    if (mass < 0.0) throw ParameterError("distribution mass must be >= 0");
    total += mass;
    if (mass > 0.0) {
      if (!support_.empty() && support_.back().first == point) {
        throw ParameterError("duplicate support point");
      }
      support_.push_back({point, mass});
    }
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw ParameterError("distribution masses sum to " + std::to_string(total) +
                         ", expected 1");
  }
  if (support_.empty()) throw ParameterError("distribution has empty support");
  cumulative_.reserve(support_.size());
  double acc = 0.0;
  for (const auto& [point, mass] : support_) {
    acc += mass;
    cumulative_.push_back(acc);
  }
  cumulative_.back() = 1.0;  // absorb rounding so sampling is total
}

Distribution Distribution::point_mass(Point p, std::uint32_t domain_size) {
  return Distribution({{p, 1.0}}, domain_size);
}

Distribution Distribution::uniform(std::uint32_t domain_size) {
  std::vector<std::pair<Point, double>> support;
  support.reserve(domain_size);
  for (std::uint32_t i = 0; i < domain_size; ++i) {
    support.push_back({Point{i}, 1.0 / domain_size});
  }
  return Distribution(std::move(support), domain_size);
}

Distribution Distribution::uniform_over(const std::vector<Point>& points,
                                        std::uint32_t domain_size) {
  if (points.empty()) throw ParameterError("uniform_over needs points");
  std::vector<std::pair<Point, double>> support;
  support.reserve(points.size());
  for (Point p : points) {
    support.push_back({p, 1.0 / points.size()});
  }
  return Distribution(std::move(support), domain_size);
}

double Distribution::mass(Point p) const {
  auto it = std::lower_bound(
      support_.begin(), support_.end(), p,
      [](const auto& entry, Point q) { return entry.first < q; });
  if (it == support_.end() || !(it->first == p)) return 0.0;
  return it->second;
}

Point Distribution::sample(Rng& rng) const {
  const double u = rng.next_unit();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return support_[static_cast<std::size_t>(it - cumulative_.begin())].first;
}

double error_rate(const Hypothesis& f, const Hypothesis& target,
                  const Distribution& dist) {
  if (f.domain_size() != target.domain_size() ||
      f.domain_size() != dist.domain_size()) {
    throw DomainError("error_rate arguments disagree on domain size");
  }
  double err = 0.0;
  for (const auto& [point, mass] : dist.support()) {
    if (f.evaluate(point) != target.evaluate(point)) err += mass;
  }
  return err;
}

}  // namespace rcl
