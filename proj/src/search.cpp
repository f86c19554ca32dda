#include "neareq/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "neareq/constructions.hpp"
#include "neareq/counting.hpp"
#include "neareq/random.hpp"

namespace neareq {

namespace {

constexpr std::uint64_t kRecountPeriod = std::uint64_t{1} << 14;
constexpr std::size_t kTrajectorySamples = 256;

struct MoveEval {
  bool separated;
  std::int64_t delta;
};

// Change in the pair count when point i moves to `to`. Only the n - 1 pairs
// incident to i can change.
MoveEval evaluate_move(const std::vector<Point>& pts, std::size_t i, const Point& to,
                       const IntervalFamily& iv) {
  std::int64_t delta = 0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j == i) continue;
    const double d_new = distance(to, pts[j]);
    if (d_new < 1.0) return {false, 0};
    delta += (iv.label_of(d_new) != 0) - (iv.label_of(distance(pts[i], pts[j])) != 0);
  }
  return {true, delta};
}

struct RestartOutcome {
  std::vector<Point> best;
  std::uint64_t best_count;
};

}  // namespace

SearchConfig SearchConfig::defaults(std::size_t n, IntervalFamily iv, std::uint64_t iterations,
                                    std::uint64_t seed) {
  const double cooling = iterations > 20 ? 1.0 - 10.0 / static_cast<double>(iterations) : 0.5;
  return {n, std::move(iv), iterations, seed, static_cast<double>(n) / 4.0, cooling, 0.5, 0.1, 1};
}

void SearchConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InputError(std::string("search config: ") + what);
  };
  require(n >= 1, "n must be positive");
  require(restarts >= 1, "restarts must be positive");
  require(std::isfinite(initial_temperature) && initial_temperature > 0.0,
          "initial_temperature must be positive");
  require(cooling_factor > 0.0 && cooling_factor < 1.0, "cooling_factor must lie in (0, 1)");
  require(std::isfinite(jitter_sigma) && jitter_sigma > 0.0, "jitter_sigma must be positive");
  require(teleport_probability >= 0.0 && teleport_probability <= 1.0,
          "teleport_probability must lie in [0, 1]");
}

SearchResult anneal(const SearchConfig& config, const std::optional<PointSet>& initial) {
  config.validate();
  if (initial) {
    if (initial->size() != config.n) {
      throw InputError("initial point set has " + std::to_string(initial->size()) +
                       " points, config expects " + std::to_string(config.n));
    }
    if (!min_pairwise_distance(*initial).separated) {
      throw InputError("initial point set is not separated");
    }
  }

  const IntervalFamily& iv = config.iv;
  const double reach = 2.0 * iv.t().back();
  const double start_box =
      std::max(2.0 * std::sqrt(static_cast<double>(config.n)), iv.t().back());
  const std::uint64_t stride = std::max<std::uint64_t>(1, config.iterations / kTrajectorySamples);

  std::optional<SearchResult> result;
  std::uint64_t accepted = 0, rejected = 0;
  std::vector<TrajectorySample> trajectory;

  for (std::size_t r = 0; r < config.restarts; ++r) {
    const std::uint64_t seed = config.seed + r;
    Rng rng(seed);
    const PointSet start = initial ? *initial : random_separated(config.n, start_box, seed);
    std::vector<Point> pts(start.begin(), start.end());
    std::uint64_t count = count_pairs(start, iv).total;
    RestartOutcome best{pts, count};

    const std::uint64_t offset = r * config.iterations;
    trajectory.push_back({offset, count});

    double temperature = config.initial_temperature;
    for (std::uint64_t it = 1; it <= config.iterations; ++it) {
      const std::size_t i = rng.index(pts.size());
      Point to;
      if (rng.uniform() < config.teleport_probability) {
        double min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
        for (const auto& p : pts) {
          min_x = std::min(min_x, p.x);
          max_x = std::max(max_x, p.x);
          min_y = std::min(min_y, p.y);
          max_y = std::max(max_y, p.y);
        }
        to = {rng.uniform(min_x - reach, max_x + reach), rng.uniform(min_y - reach, max_y + reach)};
      } else {
        const double dx = config.jitter_sigma * rng.normal();
        const double dy = config.jitter_sigma * rng.normal();
        to = {pts[i].x + dx, pts[i].y + dy};
      }

      const MoveEval eval = evaluate_move(pts, i, to, iv);
      bool accept = false;
      if (eval.separated) {
        accept = eval.delta >= 0 ||
                 rng.uniform() < std::exp(static_cast<double>(eval.delta) / temperature);
      }
      if (accept) {
        pts[i] = to;
        count = static_cast<std::uint64_t>(static_cast<std::int64_t>(count) + eval.delta);
        ++accepted;
        if (count > best.best_count) {
          best.best = pts;
          best.best_count = count;
        }
      } else {
        ++rejected;
      }
      temperature *= config.cooling_factor;

      if (it % kRecountPeriod == 0) {
        const auto recount = count_pairs(PointSet(pts), iv).total;
        if (recount != count) {
          throw std::logic_error("incremental count drifted from full recount at iteration " +
                                 std::to_string(offset + it));
        }
      }
      if (it % stride == 0 || it == config.iterations) {
        if (trajectory.back().iteration != offset + it) trajectory.push_back({offset + it, count});
      }
    }

    if (!result || best.best_count > result->best_count) {
      result = SearchResult{PointSet(std::move(best.best)), best.best_count, r, {}, 0, 0};
    }
  }

  result->trajectory = std::move(trajectory);
  result->accepted_moves = accepted;
  result->rejected_moves = rejected;
  return std::move(*result);
}

LocalOptReport local_opt_check(const PointSet& ps, const IntervalFamily& iv, double probe_radius,
                               std::size_t probes_per_point, std::uint64_t seed) {
  if (!std::isfinite(probe_radius) || !(probe_radius > 0.0)) {
    throw InputError("probe radius must be positive");
  }
  if (!min_pairwise_distance(ps).separated) {
    throw InputError("local optimality check needs a separated point set");
  }
  LocalOptReport report;
  report.base_count = count_pairs(ps, iv).total;

  const std::vector<Point> pts(ps.begin(), ps.end());
  Rng rng(seed);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t probe = 0; probe < probes_per_point; ++probe) {
      double dx = 0.0, dy = 0.0;
      rng.in_disk(probe_radius, dx, dy);
      const MoveEval eval = evaluate_move(pts, i, {pts[i].x + dx, pts[i].y + dy}, iv);
      if (eval.separated && eval.delta > 0) {
        report.moves.push_back({i, dx, dy, eval.delta});
      }
    }
  }
  return report;
}

}  // namespace neareq
