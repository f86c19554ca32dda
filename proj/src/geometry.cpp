#include "neareq/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace neareq {

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw InputError("point set must contain at least one point");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y)) {
      throw InputError("point " + std::to_string(i) + " has a non-finite coordinate");
    }
  }
}

IntervalFamily::IntervalFamily(std::vector<double> t, double alpha)
    : t_(std::move(t)), alpha_(alpha) {
  if (t_.empty()) {
    throw InputError("interval family needs at least one distance value");
  }
  if (!std::isfinite(alpha_) || !(alpha_ > 0.0)) {
    throw InputError("interval width alpha must be finite and positive");
  }
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!std::isfinite(t_[i])) {
      throw InputError("distance values must be finite");
    }
    if (i > 0 && !(t_[i] > t_[i - 1])) {
      throw InputError("distance values must be strictly increasing");
    }
  }
  if (t_.front() < 1.0) {
    throw InputError("smallest distance value must be at least 1");
  }
}

std::size_t IntervalFamily::label_of(double d) const noexcept {
  // The upper ends t_l + alpha increase with l, so the first interval whose
  // upper end reaches d is the only candidate for the smallest label.
  const auto it = std::lower_bound(t_.begin(), t_.end(), d,
                                   [this](double tl, double v) { return tl + alpha_ < v; });
  if (it == t_.end() || *it > d) {
    return 0;
  }
  return static_cast<std::size_t>(it - t_.begin()) + 1;
}

SeparationInfo min_pairwise_distance(const PointSet& ps) {
  double best = std::numeric_limits<double>::infinity();
  const auto pts = ps.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::min(best, distance(pts[i], pts[j]));
    }
  }
  return {best, best >= 1.0};
}

double diameter(const PointSet& ps) {
  double best = 0.0;
  const auto pts = ps.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::max(best, distance(pts[i], pts[j]));
    }
  }
  return best;
}

}  // namespace neareq
