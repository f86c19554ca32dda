// Simulated annealing over point positions, maximising the number of pairs
// with distance in the interval family while keeping the set separated.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "neareq/geometry.hpp"

namespace neareq {

struct SearchConfig {
  std::size_t n;
  IntervalFamily iv;
  std::uint64_t iterations;
  std::uint64_t seed;
  double initial_temperature;
  double cooling_factor;
  double jitter_sigma;
  double teleport_probability;
  std::size_t restarts;

  /// temperature n/4, cooling 1 - 10/iterations (0.5 when iterations <= 20),
  /// sigma 0.5, teleport 0.1, one restart.
  static SearchConfig defaults(std::size_t n, IntervalFamily iv, std::uint64_t iterations,
                               std::uint64_t seed);

  /// Throws InputError on any out-of-range field.
  void validate() const;
};

struct TrajectorySample {
  std::uint64_t iteration;  // counted across restarts
  std::uint64_t count;

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

struct SearchResult {
  PointSet best_ps;
  std::uint64_t best_count;
  std::size_t best_restart;
  std::vector<TrajectorySample> trajectory;
  std::uint64_t accepted_moves;
  std::uint64_t rejected_moves;
};

/// Deterministic for a fixed config. Restart r uses seed + r, and starts from
/// `initial` when given, otherwise from random_separated(n, max(2 sqrt(n), t_k), seed + r).
/// Ties between restarts go to the lower index.
SearchResult anneal(const SearchConfig& config, const std::optional<PointSet>& initial = std::nullopt);

struct ImprovingMove {
  std::size_t point;
  double dx;
  double dy;
  std::int64_t gain;
};

struct LocalOptReport {
  std::uint64_t base_count = 0;
  std::vector<ImprovingMove> moves;
  bool locally_maximal() const { return moves.empty(); }
};

/// Samples `probes_per_point` displacements uniformly in a disk of radius
/// `probe_radius` around every point and lists those that keep the set
/// separated and strictly raise the count.
LocalOptReport local_opt_check(const PointSet& ps, const IntervalFamily& iv, double probe_radius,
                               std::size_t probes_per_point, std::uint64_t seed);

}  // namespace neareq
