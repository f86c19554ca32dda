// One-shot report combining separation, the distance-value hypothesis, the
// pair count and the quadratic bound n^2/4 + C n for a caller-supplied C.
#pragma once

#include "neareq/counting.hpp"
#include "neareq/geometry.hpp"
#include "neareq/hypothesis.hpp"

namespace neareq {

struct VerifierReport {
  bool separated = false;
  double min_distance = 0.0;
  HypothesisReport hypothesis;
  PairCountReport count;
  double bound_constant = 0.0;
  double bound_value = 0.0;
  bool within_bound = false;
  double diameter = 0.0;
};

/// Reports only; never throws on a failed bound. Throws InputError for
/// delta outside (0, 1) or a negative/non-finite C.
VerifierReport verify_theorem(const PointSet& ps, const IntervalFamily& iv, double delta,
                              double bound_constant,
                              CountMethod method = CountMethod::pruned);

}  // namespace neareq
