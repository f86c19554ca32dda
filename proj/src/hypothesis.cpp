#include "neareq/hypothesis.hpp"

#include <cmath>

namespace neareq {

HypothesisReport check_hypothesis(const IntervalFamily& iv, double delta) {
  if (!std::isfinite(delta) || !(delta > 0.0) || !(delta < 1.0)) {
    throw InputError("delta must lie in the open interval (0, 1)");
  }
  HypothesisReport report;
  report.delta = delta;
  report.alpha = iv.alpha();

  const auto t = iv.t();
  const std::size_t k = t.size();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      const double sum = t[a] + t[b];
      const double low = (1.0 - delta) * sum;
      const double high = sum + 2.0 * iv.alpha();
      for (std::size_t c = b + 1; c < k; ++c) {
        if (low <= t[c] && t[c] <= high) {
          report.violations.push_back({a + 1, b + 1, c + 1, low, high});
        }
      }
    }
  }
  report.holds = report.violations.empty();
  return report;
}

}  // namespace neareq
