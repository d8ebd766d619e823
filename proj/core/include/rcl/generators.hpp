#pragma once

#include <cstdint>
#include <string>

#include "rcl/oracle.hpp"

namespace rcl {

/// Worst-case instance: powerset class over [d] plus a null point, target
/// drawn uniformly at random; one informative truthful user with mass 2*eps/d
/// on each of the d points and 1-2*eps on the null point; every other
/// truthful user sits on the null point; floor(eta*n) pretenders imitate the
/// informative user with independent uniform-random fake targets. Oracle
/// positions are shuffled deterministically from the seed.
/// Requires 1 <= floor(eta*n) <= n-1 and 0 < eps <= 1/2.
Instance make_lower_bound_instance(std::size_t n, std::uint32_t d, double eps,
                                   double eta, std::uint64_t seed);

/// Two indistinguishable single-adversary instances over a two-point domain
/// {x0, x1} that defeat any algorithm forced to hand every user the same
/// classifier. `which_case` 0: target is all-zero and the first oracle lies
/// with (x1,1); case 1: target labels x1 positive and the second oracle lies
/// with (x1,0). Every other oracle sits on x0. Requires n >= 2.
Instance make_centralized_impossibility_instance(std::size_t n,
                                                 int which_case);

/// Benign benchmark family: powerset class over [d], uniform truthful
/// distributions over the d informative points, floor(eta*n) pretenders with
/// uniform-random fake targets.
Instance make_uniform_powerset_instance(std::size_t n, std::uint32_t d,
                                        double eta, std::uint64_t seed);

/// Benign benchmark family: threshold class on m points, uniform truthful
/// distributions, random target threshold, floor(eta*n) pretenders with
/// independent random fake thresholds.
Instance make_uniform_threshold_instance(std::size_t n, std::uint32_t m,
                                         double eta, std::uint64_t seed);

/// Generator registry used by the CLI. Names: "lower-bound", "impossibility",
/// "uniform-powerset", "uniform-threshold". `d` is the class size parameter
/// (free-point count for powerset kinds, domain size for threshold);
/// `which_case` only applies to "impossibility".
Instance make_instance(const std::string& generator, std::size_t n,
                       std::uint32_t d, double eps, double eta,
                       std::uint64_t seed, int which_case = 0);

}  // namespace rcl
