// Planar point sets, interval families and the basic metric queries on them.
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace neareq {

/// Raised for malformed or out-of-range inputs.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for well-formed inputs outside what the library supports (e.g. d != 2).
class UnsupportedInput : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Euclidean distance. Every count in the library goes through this one
/// function so that brute-force and pruned paths see identical values.
inline double distance(const Point& a, const Point& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// Ordered, non-empty list of finite planar points, addressed by 0-based id.
class PointSet {
public:
  explicit PointSet(std::vector<Point> points);

  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const noexcept { return points_[i]; }
  std::span<const Point> points() const noexcept { return points_; }

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  friend bool operator==(const PointSet&, const PointSet&) = default;

private:
  std::vector<Point> points_;
};

/// Distance values t_1 < ... < t_k (t_1 >= 1) sharing a common width alpha.
/// Interval l (1-based) is the closed range [t_l, t_l + alpha].
class IntervalFamily {
public:
  IntervalFamily(std::vector<double> t, double alpha);

  std::size_t k() const noexcept { return t_.size(); }
  double alpha() const noexcept { return alpha_; }
  std::span<const double> t() const noexcept { return t_; }

  /// 0-based accessors for the closed interval bounds.
  double low(std::size_t i) const noexcept { return t_[i]; }
  double high(std::size_t i) const noexcept { return t_[i] + alpha_; }

  /// Smallest 1-based interval index whose closed range contains d, or 0.
  std::size_t label_of(double d) const noexcept;

  friend bool operator==(const IntervalFamily&, const IntervalFamily&) = default;

private:
  std::vector<double> t_;
  double alpha_;
};

struct SeparationInfo {
  double min_distance;  // +infinity for a single point
  bool separated;
};

SeparationInfo min_pairwise_distance(const PointSet& ps);

/// Largest pairwise distance; 0 for a single point.
double diameter(const PointSet& ps);

}  // namespace neareq
