#include "neareq/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "neareq/counting.hpp"
#include "neareq/random.hpp"

namespace neareq {

namespace {

double square(double v) { return v * v; }

PointSet stack_columns(const std::vector<double>& xs, const std::vector<std::size_t>& sizes) {
  std::vector<Point> pts;
  for (std::size_t c = 0; c < xs.size(); ++c) {
    for (std::size_t nu = 1; nu <= sizes[c]; ++nu) {
      pts.push_back({xs[c], static_cast<double>(nu)});
    }
  }
  return PointSet(std::move(pts));
}

std::uint64_t cross_pairs(const std::vector<std::size_t>& sizes) {
  std::uint64_t total = 0;
  for (std::size_t a = 0; a < sizes.size(); ++a) {
    for (std::size_t b = a + 1; b < sizes.size(); ++b) total += sizes[a] * sizes[b];
  }
  return total;
}

// Pairs inside a column of `size` points at vertical distance exactly `gap`.
std::uint64_t column_pairs_at(std::size_t size, std::uint64_t gap) {
  return size > gap ? size - gap : 0;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

void require_finite(double v, const char* name) {
  require(std::isfinite(v), std::string(name) + " must be finite");
}

// The predicted count rests on the thresholds above; a recount guards the
// remaining corner cases (tiny n, coincident interval values).
ConstructionOutput finish(ConstructionOutput out) {
  require(min_pairwise_distance(out.ps).separated, out.name + ": output is not separated");
  const auto counted = count_pairs(out.ps, out.iv).total;
  require(counted == out.predicted_count,
          out.name + ": parameters let extra pairs into the intervals (counted " +
              std::to_string(counted) + ", predicted " + std::to_string(out.predicted_count) +
              ")");
  return out;
}

}  // namespace

std::vector<std::size_t> balanced_split(std::size_t n, std::size_t m) {
  require(m > 0, "column count must be positive");
  std::vector<std::size_t> sizes(m, n / m);
  for (std::size_t i = 0; i < n % m; ++i) ++sizes[i];
  return sizes;
}

ConstructionOutput two_column(std::size_t n, std::size_t k, double t, double eps) {
  require(n >= 2, "two-column: n must be at least 2");
  require(k >= 1, "two-column: k must be at least 1");
  require_finite(t, "t");
  require(eps > 0.0 && eps < 1.0, "two-column: eps must lie in (0, 1)");

  const auto sizes = balanced_split(n, 2);
  const double top = std::pow(3.0, static_cast<double>(k - 1));
  const double reach = square(static_cast<double>(sizes[0] - 1)) / (2.0 * eps);
  require(t >= top, "two-column: t must be at least 3^(k-1) = " + std::to_string(top));
  require(t >= reach, "two-column: t must be at least (ceil(n/2)-1)^2/(2 eps) = " +
                          std::to_string(reach) + " so that cross-column distances stay in [t, t+eps]");

  std::vector<double> values;
  std::uint64_t predicted = cross_pairs(sizes);
  std::uint64_t power = 1;
  for (std::size_t l = 1; l < k; ++l) {
    values.push_back(static_cast<double>(power));
    predicted += column_pairs_at(sizes[0], power) + column_pairs_at(sizes[1], power);
    power *= 3;
  }
  values.push_back(t);

  return finish({"two-column",
                 stack_columns({0.0, t}, sizes),
                 IntervalFamily(std::move(values), eps),
                 predicted,
                 {{"n", double(n)}, {"k", double(k)}, {"t", t}, {"eps", eps}},
                 sizes});
}

ConstructionOutput remark2_three_column(std::size_t n, double t1, double t2) {
  require(n >= 3, "remark2: n must be at least 3");
  require_finite(t1, "t1");
  require_finite(t2, "t2");
  const auto sizes = balanced_split(n, 3);
  const double reach = square(static_cast<double>(sizes[0] - 1)) / 2.0 + 1.0;
  require(t1 >= reach && t2 >= reach,
          "remark2: t1 and t2 must be at least (ceil(n/3)-1)^2/2 + 1 = " + std::to_string(reach));

  std::vector<double> values{t1, t2, t1 + t2};
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  return finish({"remark2",
                 stack_columns({0.0, t1, t1 + t2}, sizes),
                 IntervalFamily(std::move(values), 1.0),
                 cross_pairs(sizes),
                 {{"n", double(n)}, {"t1", t1}, {"t2", t2}},
                 sizes});
}

ConstructionOutput emp1_chain(std::size_t n, std::size_t k, double t) {
  require(k >= 1, "emp1: k must be at least 1");
  require(n >= k + 1, "emp1: n must be at least k + 1");
  require_finite(t, "t");
  const auto sizes = balanced_split(n, k + 1);
  const double reach = square(static_cast<double>(sizes[0] - 1)) / 2.0 + 1.0;
  require(t >= reach, "emp1: t must be at least (ceil(n/(k+1))-1)^2/2 + 1 = " + std::to_string(reach));

  std::vector<double> xs, values;
  for (std::size_t mu = 0; mu <= k; ++mu) xs.push_back(static_cast<double>(mu) * t);
  for (std::size_t l = 1; l <= k; ++l) values.push_back(static_cast<double>(l) * t);

  return finish({"emp1",
                 stack_columns(xs, sizes),
                 IntervalFamily(std::move(values), 1.0),
                 cross_pairs(sizes),
                 {{"n", double(n)}, {"k", double(k)}, {"t", t}},
                 sizes});
}

ConstructionOutput problem3_chain(std::size_t n, std::size_t k, double t) {
  require(k >= 2, "problem3: k must be at least 2");
  require(n >= k, "problem3: n must be at least k");
  require_finite(t, "t");
  const auto sizes = balanced_split(n, k);
  const double reach = square(static_cast<double>(sizes[0] - 1)) / 2.0 + 1.0;
  require(t >= reach, "problem3: t must be at least (ceil(n/k)-1)^2/2 + 1 = " + std::to_string(reach));
  require(t > 2.0, "problem3: t must exceed 2 so that [1, 2] is the first interval");

  std::vector<double> xs, values{1.0};
  for (std::size_t mu = 1; mu <= k; ++mu) xs.push_back(static_cast<double>(mu) * t);
  for (std::size_t l = 1; l < k; ++l) values.push_back(static_cast<double>(l) * t);

  std::uint64_t predicted = cross_pairs(sizes);
  for (auto s : sizes) predicted += column_pairs_at(s, 1) + column_pairs_at(s, 2);

  return finish({"problem3",
                 stack_columns(xs, sizes),
                 IntervalFamily(std::move(values), 1.0),
                 predicted,
                 {{"n", double(n)}, {"k", double(k)}, {"t", t}},
                 sizes});
}

PointSet random_separated(std::size_t n, double box_side, std::uint64_t seed) {
  require(n >= 1, "random: n must be at least 1");
  require(std::isfinite(box_side) && box_side >= 2.0 * std::sqrt(static_cast<double>(n)),
          "random: box side must be at least 2 sqrt(n)");

  const auto grid = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const double pitch = std::max(2.0, box_side / static_cast<double>(grid));
  // Shrink the jitter radius by a hair so rounding in the polar sampling
  // can never push two neighbours below unit distance.
  const double radius = 0.5 * (pitch - 1.0) * (1.0 - 1e-12);

  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double cx = (static_cast<double>(i % grid) + 0.5) * pitch;
    const double cy = (static_cast<double>(i / grid) + 0.5) * pitch;
    double dx = 0.0, dy = 0.0;
    rng.in_disk(radius, dx, dy);
    pts.push_back({cx + dx, cy + dy});
  }
  return PointSet(std::move(pts));
}

}  // namespace neareq
