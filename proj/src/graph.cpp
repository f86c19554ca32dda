#include "neareq/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <tuple>
#include <utility>

namespace neareq {

NearEqualGraph::NearEqualGraph(std::size_t n, std::vector<LabeledPair> edges)
    : edges_(std::move(edges)), adjacency_(n), labels_(n) {
  for (auto& e : edges_) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.j >= n || e.i == e.j || e.label == 0) {
      throw InputError("invalid edge {" + std::to_string(e.i) + ", " + std::to_string(e.j) + "}");
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const LabeledPair& a, const LabeledPair& b) {
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
  for (std::size_t e = 1; e < edges_.size(); ++e) {
    if (edges_[e].i == edges_[e - 1].i && edges_[e].j == edges_[e - 1].j) {
      throw InputError("duplicate edge {" + std::to_string(edges_[e].i) + ", " +
                       std::to_string(edges_[e].j) + "}");
    }
  }

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> lists(n);
  for (const auto& e : edges_) {
    lists[e.i].push_back({e.j, e.label});
    lists[e.j].push_back({e.i, e.label});
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(lists[v].begin(), lists[v].end());
    for (const auto& [u, l] : lists[v]) {
      adjacency_[v].push_back(u);
      labels_[v].push_back(l);
    }
  }
}

std::size_t NearEqualGraph::label(std::size_t u, std::size_t v) const {
  if (u >= n() || v >= n()) return 0;
  const auto& adj = adjacency_[u];
  const auto it = std::lower_bound(adj.begin(), adj.end(), v);
  if (it == adj.end() || *it != v) return 0;
  return labels_[u][static_cast<std::size_t>(it - adj.begin())];
}

NearEqualGraph build_graph(const PointSet& ps, const IntervalFamily& iv) {
  return NearEqualGraph(ps.size(), label_pairs(ps, iv));
}

namespace {

class Bitset {
public:
  explicit Bitset(std::size_t n) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  Bitset operator&(const Bitset& o) const {
    Bitset r = *this;
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= o.words_[w];
    return r;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// The `limit` smallest members, ascending.
  std::vector<std::size_t> first(std::size_t limit) const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size() && out.size() < limit; ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0 && out.size() < limit) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

private:
  std::vector<std::uint64_t> words_;
};

// Depth-first search for the lexicographically least s-set B inside N(x)
// whose common neighbourhood (within N(x)) still holds s vertices.
class BicliqueSearch {
public:
  BicliqueSearch(const std::vector<Bitset>& rows, const std::vector<std::size_t>& nx,
                 std::size_t s)
      : rows_(rows), nx_(nx), s_(s) {}

  bool run(const Bitset& nx_set) { return extend(0, nx_set); }

  std::vector<std::size_t> B;
  std::vector<std::size_t> D;

private:
  bool extend(std::size_t from, const Bitset& common) {
    if (B.size() == s_) {
      D = common.first(s_);
      return true;
    }
    const std::size_t needed = s_ - B.size();
    for (std::size_t idx = from; idx + needed <= nx_.size(); ++idx) {
      const std::size_t b = nx_[idx];
      Bitset next = common & rows_[b];
      if (next.count() < s_) continue;
      B.push_back(b);
      if (extend(idx + 1, next)) return true;
      B.pop_back();
    }
    return false;
  }

  const std::vector<Bitset>& rows_;
  const std::vector<std::size_t>& nx_;
  std::size_t s_;
};

template <class F>
bool for_each_combination(const std::vector<std::size_t>& items, std::size_t m,
                          std::vector<std::size_t>& chosen, std::size_t from, F&& f) {
  if (chosen.size() == m) return f(chosen);
  for (std::size_t i = from; i + (m - chosen.size()) <= items.size(); ++i) {
    chosen.push_back(items[i]);
    if (for_each_combination(items, m, chosen, i + 1, f)) return true;
    chosen.pop_back();
  }
  return false;
}

// Members of `part` in the largest class of l(x, .), ties to the smaller label.
std::pair<std::vector<std::size_t>, std::size_t> largest_class(const NearEqualGraph& g,
                                                               std::size_t x,
                                                               const std::vector<std::size_t>& part) {
  std::vector<std::size_t> counts;
  for (auto v : part) {
    const std::size_t l = g.label(x, v);
    if (l >= counts.size()) counts.resize(l + 1, 0);
    ++counts[l];
  }
  std::size_t best = 1;
  for (std::size_t l = 1; l < counts.size(); ++l) {
    if (counts[l] > counts[best]) best = l;
  }
  std::vector<std::size_t> members;
  for (auto v : part) {
    if (g.label(x, v) == best) members.push_back(v);
  }
  return {members, best};
}

}  // namespace

std::optional<TripartiteWitness> find_tripartite(const NearEqualGraph& g, std::size_t s) {
  if (s == 0) throw InputError("witness size s must be at least 1");
  const std::size_t n = g.n();
  if (n < 2 * s + 1) return std::nullopt;

  std::vector<Bitset> rows(n, Bitset(n));
  for (std::size_t v = 0; v < n; ++v) {
    for (auto u : g.neighbors(v)) rows[v].set(u);
  }

  for (std::size_t x = 0; x < n; ++x) {
    const auto& nx = g.neighbors(x);
    if (nx.size() < 2 * s) continue;
    BicliqueSearch search(rows, nx, s);
    if (search.run(rows[x])) {
      return TripartiteWitness{x, search.B, search.D, s};
    }
  }
  return std::nullopt;
}

std::optional<HomogeneousWitness> homogenize(const NearEqualGraph& g, const TripartiteWitness& w,
                                             std::size_t m) {
  if (m == 0 || m > w.s) {
    throw InputError("homogeneous size m must lie in [1, s]");
  }
  const auto [b1, l_xy] = largest_class(g, w.x, w.B);
  const auto [d1, l_xz] = largest_class(g, w.x, w.D);
  if (b1.size() < m || d1.size() < m) return std::nullopt;

  std::optional<HomogeneousWitness> found;
  std::vector<std::size_t> chosen;
  for_each_combination(b1, m, chosen, 0, [&](const std::vector<std::size_t>& b2) {
    std::optional<std::vector<std::size_t>> best_d2;
    std::size_t best_label = 0;
    // Each z in D1 is eligible for at most one label: the common value of l(y, z) over B2.
    std::vector<std::vector<std::size_t>> eligible;
    for (auto z : d1) {
      const std::size_t l = g.label(b2.front(), z);
      const bool constant = std::all_of(b2.begin(), b2.end(),
                                        [&](std::size_t y) { return g.label(y, z) == l; });
      if (!constant || l == 0) continue;
      if (l >= eligible.size()) eligible.resize(l + 1);
      eligible[l].push_back(z);
    }
    for (std::size_t l = 1; l < eligible.size(); ++l) {
      if (eligible[l].size() < m) continue;
      std::vector<std::size_t> d2(eligible[l].begin(),
                                  eligible[l].begin() + static_cast<std::ptrdiff_t>(m));
      if (!best_d2 || d2 < *best_d2) {
        best_d2 = std::move(d2);
        best_label = l;
      }
    }
    if (!best_d2) return false;
    found = HomogeneousWitness{w, b2, *best_d2, m, l_xy, l_xz, best_label};
    return true;
  });
  return found;
}

TriangleCase classify_case(std::size_t l_xy, std::size_t l_yz, std::size_t l_zx) noexcept {
  std::array<std::size_t, 3> l{l_xy, l_yz, l_zx};
  std::sort(l.begin(), l.end());
  return l[1] < l[2] ? TriangleCase::I : TriangleCase::II;
}

ProofConstants proof_constants(double delta) {
  if (!std::isfinite(delta) || !(delta > 0.0) || !(delta < 1.0)) {
    throw InputError("delta must lie in the open interval (0, 1)");
  }
  const double delta1 = 2.0 * std::asin(delta / (4.0 - 2.0 * delta));
  return {delta, delta1, 2.0 * delta1, delta1 / delta - 0.5};
}

AngleDiagnostic case1_angle_diagnostic(const PointSet& ps, std::array<std::size_t, 3> triangle,
                                       const IntervalFamily& iv, double delta) {
  const auto constants = proof_constants(delta);
  for (auto id : triangle) {
    if (id >= ps.size()) throw InputError("triangle id " + std::to_string(id) + " out of range");
  }
  if (triangle[0] == triangle[1] || triangle[1] == triangle[2] || triangle[0] == triangle[2]) {
    throw InputError("triangle ids must be distinct");
  }

  const Point& p0 = ps[triangle[0]];
  const Point& p1 = ps[triangle[1]];
  const Point& p2 = ps[triangle[2]];
  // side[i] is opposite vertex i
  const std::array<double, 3> side{distance(p1, p2), distance(p2, p0), distance(p0, p1)};

  AngleDiagnostic out{};
  out.ids = triangle;
  out.labels = {iv.label_of(side[2]), iv.label_of(side[0]), iv.label_of(side[1])};
  if (out.labels[0] == 0 || out.labels[1] == 0 || out.labels[2] == 0) {
    throw InputError("every side of the triangle must be an edge of the graph");
  }
  if (classify_case(out.labels[0], out.labels[1], out.labels[2]) != TriangleCase::I) {
    throw InputError("triangle labels fall in case II; the angle bounds apply to case I only");
  }
  out.delta1 = constants.delta1;
  out.delta2 = constants.delta2;

  const double longest = std::max({side[0], side[1], side[2]});
  const double cross = (p1.x - p0.x) * (p2.y - p0.y) - (p1.y - p0.y) * (p2.x - p0.x);
  out.degenerate = 0.5 * std::abs(cross) < 1e-9 * longest * longest;

  for (std::size_t v = 0; v < 3; ++v) {
    const double a = side[v], b = side[(v + 1) % 3], c = side[(v + 2) % 3];
    const double cosine = std::clamp((b * b + c * c - a * a) / (2.0 * b * c), -1.0, 1.0);
    out.angles[v] = std::acos(cosine);
  }
  if (out.degenerate) {
    out.min_angle_ok = false;
    out.max_angle_ok = false;
  } else {
    const auto [lo, hi] = std::minmax({out.angles[0], out.angles[1], out.angles[2]});
    out.min_angle_ok = lo >= out.delta1;
    out.max_angle_ok = hi <= std::numbers::pi - out.delta2;
  }
  return out;
}

}  // namespace neareq
