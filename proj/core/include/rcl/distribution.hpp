#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rcl/hypothesis.hpp"
#include "rcl/rng.hpp"
#include "rcl/types.hpp"

namespace rcl {

/// Finite-support probability distribution over domain points. Masses must be
/// nonnegative and sum to 1 within 1e-9; zero-mass entries are dropped.
class Distribution {
 public:
  static constexpr double kMassTolerance = 1e-9;

  Distribution(std::vector<std::pair<Point, double>> support,
               std::uint32_t domain_size);

  static Distribution point_mass(Point p, std::uint32_t domain_size);
  static Distribution uniform(std::uint32_t domain_size);
  static Distribution uniform_over(const std::vector<Point>& points,
                                   std::uint32_t domain_size);

  std::uint32_t domain_size() const { return domain_size_; }

  /// Support entries sorted by point index.
  const std::vector<std::pair<Point, double>>& support() const {
    return support_;
  }

  double mass(Point p) const;

  Point sample(Rng& rng) const;

 private:
  std::vector<std::pair<Point, double>> support_;
  std::vector<double> cumulative_;
  std::uint32_t domain_size_ = 0;
};

/// Exact disagreement mass Pr_{x~dist}[f(x) != target(x)]. All three
/// arguments must share the domain.
double error_rate(const Hypothesis& f, const Hypothesis& target,
                  const Distribution& dist);

}  // namespace rcl
