// Column constructions with exactly predicted pair counts, and a seeded
// generator of random separated sets.
//
// All column constructions stack points at unit vertical spacing,
// (x_mu, nu) for nu = 1..n_mu, with balanced column sizes listed larger
// first. Point ids run column by column, bottom to top.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "neareq/geometry.hpp"

namespace neareq {

struct ConstructionOutput {
  std::string name;
  PointSet ps;
  IntervalFamily iv;
  std::uint64_t predicted_count;
  std::map<std::string, double> params;
  std::vector<std::size_t> column_sizes;
};

/// Sizes of m columns holding n points: each is floor(n/m) or ceil(n/m),
/// larger first.
std::vector<std::size_t> balanced_split(std::size_t n, std::size_t m);

/// Two columns at x = 0 and x = t. Intervals t_l = 3^(l-1) for l < k and
/// t_k = t, all of width eps. Requires t >= max(3^(k-1), (ceil(n/2)-1)^2 / (2 eps)).
ConstructionOutput two_column(std::size_t n, std::size_t k, double t, double eps);

/// Three columns at x = 0, t1, t1 + t2 with unit-width intervals at t1, t2
/// and t1 + t2. The distance values are listed sorted with duplicates merged,
/// so t1 == t2 yields a two-interval family.
ConstructionOutput remark2_three_column(std::size_t n, double t1, double t2);

/// k + 1 columns at x = 0, t, ..., k t with intervals [l t, l t + 1].
ConstructionOutput emp1_chain(std::size_t n, std::size_t k, double t);

/// k columns at x = t, 2t, ..., k t with intervals [1, 2], [t, t + 1], ...,
/// [(k-1) t, (k-1) t + 1].
ConstructionOutput problem3_chain(std::size_t n, std::size_t k, double t);

/// Jittered grid: ceil(sqrt(n)) columns of pitch max(2, box_side / ceil(sqrt(n))),
/// each point displaced uniformly within radius (pitch - 1) / 2 of its cell centre.
/// Requires box_side >= 2 sqrt(n).
PointSet random_separated(std::size_t n, double box_side, std::uint64_t seed);

}  // namespace neareq
