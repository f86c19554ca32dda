// Counting point pairs whose distance falls in a union of closed intervals.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "neareq/geometry.hpp"

namespace neareq {

enum class CountMethod { brute, pruned };

std::string_view to_string(CountMethod m) noexcept;
CountMethod parse_count_method(std::string_view s);

struct PairCountReport {
  std::uint64_t total = 0;
  /// per_interval[l-1] counts pairs whose smallest containing interval is l.
  std::vector<std::uint64_t> per_interval;
  CountMethod method = CountMethod::pruned;
};

/// A qualifying pair with i < j and its smallest interval label (1-based).
struct LabeledPair {
  std::size_t i;
  std::size_t j;
  std::size_t label;

  friend bool operator==(const LabeledPair&, const LabeledPair&) = default;
};

/// Both methods return identical totals and per-interval counts.
PairCountReport count_pairs(const PointSet& ps, const IntervalFamily& iv,
                            CountMethod method = CountMethod::pruned);

/// Every qualifying pair, sorted by (i, j).
std::vector<LabeledPair> label_pairs(const PointSet& ps, const IntervalFamily& iv);

}  // namespace neareq
