// The separation condition on distance values: no t_{l3} may sit in the
// near-additive window [(1 - delta)(t_{l1} + t_{l2}), t_{l1} + t_{l2} + 2 alpha]
// for l1 <= l2 < l3.
#pragma once

#include <cstddef>
#include <vector>

#include "neareq/geometry.hpp"

namespace neareq {

struct HypothesisViolation {
  std::size_t l1;  // 1-based
  std::size_t l2;
  std::size_t l3;
  double forbidden_low;
  double forbidden_high;

  friend bool operator==(const HypothesisViolation&, const HypothesisViolation&) = default;
};

struct HypothesisReport {
  double delta = 0.0;
  double alpha = 0.0;
  bool holds = true;
  std::vector<HypothesisViolation> violations;  // lexicographic in (l1, l2, l3)
};

/// Checks every triple l1 <= l2 < l3 with closed window endpoints.
/// Throws InputError unless 0 < delta < 1.
HypothesisReport check_hypothesis(const IntervalFamily& iv, double delta);

}  // namespace neareq
