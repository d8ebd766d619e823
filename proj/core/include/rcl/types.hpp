#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rcl {

/// Index of a domain element. Domains are finite and explicitly enumerated;
/// classes that have a distinguished null point ("bottom") reserve the last
/// index for it.
struct Point {
  std::uint32_t index = 0;

  friend bool operator==(Point a, Point b) { return a.index == b.index; }
  friend bool operator!=(Point a, Point b) { return a.index != b.index; }
  friend bool operator<(Point a, Point b) { return a.index < b.index; }
};

/// A domain point together with its binary label.
struct LabeledExample {
  Point point;
  bool label = false;

  friend bool operator==(const LabeledExample& a, const LabeledExample& b) {
    return a.point == b.point && a.label == b.label;
  }
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A point or a hypothesis fell outside the expected domain.
struct DomainError : Error {
  using Error::Error;
};

/// A numeric or structural parameter violated its precondition.
struct ParameterError : Error {
  using Error::Error;
};

/// Candidate search exhausted every admissible user subset without finding a
/// jointly consistent one. Happens only when the adversary fraction exceeds
/// the caller's contract.
struct NoConsistentGroupError : Error {
  using Error::Error;
};

/// A group was too large for exhaustive subset enumeration.
struct SearchCapError : Error {
  using Error::Error;
};

}  // namespace rcl
