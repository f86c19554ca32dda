#include "neareq/verifier.hpp"

#include <cmath>

namespace neareq {

VerifierReport verify_theorem(const PointSet& ps, const IntervalFamily& iv, double delta,
                              double bound_constant, CountMethod method) {
  if (!std::isfinite(bound_constant) || bound_constant < 0.0) {
    throw InputError("bound constant C must be finite and non-negative");
  }
  VerifierReport r;
  r.hypothesis = check_hypothesis(iv, delta);
  const auto sep = min_pairwise_distance(ps);
  r.separated = sep.separated;
  r.min_distance = sep.min_distance;
  r.count = count_pairs(ps, iv, method);
  r.bound_constant = bound_constant;
  const auto n = static_cast<double>(ps.size());
  r.bound_value = n * n / 4.0 + bound_constant * n;
  r.within_bound = static_cast<double>(r.count.total) <= r.bound_value;
  r.diameter = diameter(ps);
  return r;
}

}  // namespace neareq
