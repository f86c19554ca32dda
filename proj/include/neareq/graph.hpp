// The nearly-equal-distance graph and the structures extracted from it:
// K(1, s, s) subgraphs, their label-homogeneous refinements, the case split
// on triangle labels, and the angle bounds for case-I triangles.
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "neareq/counting.hpp"
#include "neareq/geometry.hpp"

namespace neareq {

/// Undirected graph on ids 0..n-1; every edge carries its smallest interval label.
class NearEqualGraph {
public:
  NearEqualGraph(std::size_t n, std::vector<LabeledPair> edges);

  std::size_t n() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<LabeledPair>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }

  /// Label of edge {u, v}, or 0 when absent.
  std::size_t label(std::size_t u, std::size_t v) const;
  bool has_edge(std::size_t u, std::size_t v) const { return label(u, v) != 0; }

private:
  std::vector<LabeledPair> edges_;                 // sorted by (i, j), i < j
  std::vector<std::vector<std::size_t>> adjacency_;  // sorted
  std::vector<std::vector<std::size_t>> labels_;     // parallel to adjacency_
};

NearEqualGraph build_graph(const PointSet& ps, const IntervalFamily& iv);

/// x joined to every vertex of B and D, and B completely joined to D.
struct TripartiteWitness {
  std::size_t x;
  std::vector<std::size_t> B;  // sorted
  std::vector<std::size_t> D;  // sorted
  std::size_t s;

  friend bool operator==(const TripartiteWitness&, const TripartiteWitness&) = default;
};

/// Lexicographically least witness by (x, B, D), or nullopt when G contains
/// no K(1, s, s). Exhaustive; exponential in s. Throws InputError for s == 0.
std::optional<TripartiteWitness> find_tripartite(const NearEqualGraph& g, std::size_t s);

struct HomogeneousWitness {
  TripartiteWitness base;
  std::vector<std::size_t> B2;
  std::vector<std::size_t> D2;
  std::size_t m;
  std::size_t l_xy;
  std::size_t l_xz;
  std::size_t l_yz;
};

/// Keeps the largest class of B under l(x, .) and of D under l(x, .) (ties to
/// the smaller label), then returns the lexicographically least m-subsets
/// B2, D2 of those classes on which l(y, z) is constant.
/// Throws InputError unless 1 <= m <= w.s.
std::optional<HomogeneousWitness> homogenize(const NearEqualGraph& g, const TripartiteWitness& w,
                                             std::size_t m);

enum class TriangleCase { I, II };

/// Sorts the labels to l(1) <= l(2) <= l(3); case I iff l(2) < l(3).
TriangleCase classify_case(std::size_t l_xy, std::size_t l_yz, std::size_t l_zx) noexcept;

struct ProofConstants {
  double delta;
  double delta1;  // 2 asin(delta / (4 - 2 delta))
  double delta2;  // 2 delta1
  double small_delta_residual;  // delta1 / delta - 1/2
};

ProofConstants proof_constants(double delta);

struct AngleDiagnostic {
  std::array<std::size_t, 3> ids;
  std::array<std::size_t, 3> labels;  // of sides (ids[0],ids[1]), (ids[1],ids[2]), (ids[2],ids[0])
  std::array<double, 3> angles;       // interior angle at ids[0], ids[1], ids[2]
  bool degenerate;
  double delta1;
  double delta2;
  bool min_angle_ok;  // min angle >= delta1
  bool max_angle_ok;  // max angle <= pi - delta2
};

/// Angles of a case-I triangle of the graph, compared with delta1 and
/// pi - delta2. Throws InputError when a side is not an edge or the labels
/// fall in case II. Collinear triples come back flagged degenerate.
AngleDiagnostic case1_angle_diagnostic(const PointSet& ps, std::array<std::size_t, 3> triangle,
                                       const IntervalFamily& iv, double delta);

}  // namespace neareq
