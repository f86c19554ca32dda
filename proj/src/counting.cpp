#include "neareq/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>

namespace neareq {

std::string_view to_string(CountMethod m) noexcept {
  return m == CountMethod::brute ? "brute" : "pruned";
}

CountMethod parse_count_method(std::string_view s) {
  if (s == "brute") return CountMethod::brute;
  if (s == "pruned") return CountMethod::pruned;
  throw InputError("unknown counting method '" + std::string(s) + "' (expected brute or pruned)");
}

namespace {

struct Box {
  double min_x, min_y, max_x, max_y;

  void extend(const Point& p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  void extend(const Box& b) {
    min_x = std::min(min_x, b.min_x);
    min_y = std::min(min_y, b.min_y);
    max_x = std::max(max_x, b.max_x);
    max_y = std::max(max_y, b.max_y);
  }
  double diagonal() const { return std::sqrt(sq(max_x - min_x) + sq(max_y - min_y)); }

  static double sq(double v) { return v * v; }
  static Box of(const Point& p) { return {p.x, p.y, p.x, p.y}; }
};

// Bounds on the distance between any point of a and any point of b.
std::pair<double, double> distance_range(const Box& a, const Box& b) {
  const double gx = std::max({0.0, b.min_x - a.max_x, a.min_x - b.max_x});
  const double gy = std::max({0.0, b.min_y - a.max_y, a.min_y - b.max_y});
  const double sx = std::max(a.max_x - b.min_x, b.max_x - a.min_x);
  const double sy = std::max(a.max_y - b.min_y, b.max_y - a.min_y);
  return {std::sqrt(gx * gx + gy * gy), std::sqrt(sx * sx + sy * sy)};
}

enum class RangeClass { skip, uniform, partial };

struct Classification {
  RangeClass kind;
  std::size_t label;  // 1-based, valid for uniform
};

// Box bounds and point distances are rounded independently; decisions that
// skip or bulk-accept a block keep this relative margin from every endpoint.
constexpr double kBoundMargin = 1e-9;

Classification classify(const IntervalFamily& iv, double dmin, double dmax) {
  const auto t = iv.t();
  const double alpha = iv.alpha();
  auto margin = [](double v) { return kBoundMargin * (1.0 + std::abs(v)); };
  const auto it = std::lower_bound(t.begin(), t.end(), dmin, [&](double tl, double v) {
    const double hi = tl + alpha;
    return hi + margin(hi) < v;
  });
  if (it == t.end()) {
    return {RangeClass::skip, 0};
  }
  const double lo = *it;
  const double hi = lo + alpha;
  if (lo - margin(lo) > dmax) {
    return {RangeClass::skip, 0};
  }
  if (dmin >= lo + margin(lo) && dmax <= hi - margin(hi)) {
    return {RangeClass::uniform, static_cast<std::size_t>(it - t.begin()) + 1};
  }
  return {RangeClass::partial, 0};
}

// Points bucketed into uniform square cells, with a kd-tree built over the
// non-empty cells. Every node covers a contiguous range of the reordered
// point array; leaves are single cells or small runs of adjacent cells.
class CellTree {
public:
  struct Node {
    Box box;
    std::uint32_t begin;  // into the reordered point array
    std::uint32_t end;
    std::int32_t left = -1;
    std::int32_t right = -1;
    bool leaf() const { return left < 0; }
    std::uint64_t size() const { return end - begin; }
  };

  CellTree(const PointSet& ps, double cell_side) {
    const auto pts = ps.points();
    Box all = Box::of(pts[0]);
    for (const auto& p : pts) all.extend(p);

    // Coarsen cells when the extent would overflow the integer cell grid;
    // cell size affects speed only.
    const double extent = std::max(all.max_x - all.min_x, all.max_y - all.min_y);
    const double side = std::max(cell_side, extent / 0x1p40);

    struct Keyed {
      std::int64_t cx, cy;
      std::uint32_t id;
    };
    std::vector<Keyed> keyed(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      keyed[i] = {static_cast<std::int64_t>(std::floor((pts[i].x - all.min_x) / side)),
                  static_cast<std::int64_t>(std::floor((pts[i].y - all.min_y) / side)),
                  static_cast<std::uint32_t>(i)};
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
      return std::tie(a.cx, a.cy, a.id) < std::tie(b.cx, b.cy, b.id);
    });

    std::vector<Cell> cells;
    sorted_ids_.resize(keyed.size());
    for (std::size_t i = 0; i < keyed.size();) {
      std::size_t j = i;
      while (j < keyed.size() && keyed[j].cx == keyed[i].cx && keyed[j].cy == keyed[i].cy) ++j;
      for (std::size_t m = i; m < j; ++m) sorted_ids_[m] = keyed[m].id;
      cells.push_back({keyed[i].cx, keyed[i].cy, static_cast<std::uint32_t>(i),
                       static_cast<std::uint32_t>(j - i)});
      i = j;
    }

    points_.reserve(pts.size());
    ids_.reserve(pts.size());
    nodes_.reserve(2 * cells.size());
    build(cells, 0, cells.size(), pts);
  }

  const Node& node(std::size_t i) const { return nodes_[i]; }
  const Point& point(std::size_t i) const { return points_[i]; }
  std::uint32_t id(std::size_t i) const { return ids_[i]; }

private:
  // A run of neighbouring cells this small is tested pair by pair.
  static constexpr std::size_t kLeafPoints = 8;

  struct Cell {
    std::int64_t cx, cy;
    std::uint32_t first;  // into sorted_ids_
    std::uint32_t count;
  };

  std::int32_t build(std::vector<Cell>& cells, std::size_t lo, std::size_t hi,
                     std::span<const Point> pts) {
    const auto index = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back({});
    std::size_t population = 0;
    for (std::size_t i = lo; i < hi; ++i) population += cells[i].count;
    if (hi - lo == 1 || population <= kLeafPoints) {
      Node leaf{};
      leaf.begin = static_cast<std::uint32_t>(points_.size());
      leaf.box = Box::of(pts[sorted_ids_[cells[lo].first]]);
      for (std::size_t c = lo; c < hi; ++c) {
        for (std::uint32_t m = cells[c].first; m < cells[c].first + cells[c].count; ++m) {
          const std::uint32_t id = sorted_ids_[m];
          points_.push_back(pts[id]);
          ids_.push_back(id);
          leaf.box.extend(pts[id]);
        }
      }
      leaf.end = static_cast<std::uint32_t>(points_.size());
      nodes_[index] = leaf;
      return index;
    }

    std::int64_t min_cx = cells[lo].cx, max_cx = cells[lo].cx;
    std::int64_t min_cy = cells[lo].cy, max_cy = cells[lo].cy;
    for (std::size_t i = lo; i < hi; ++i) {
      min_cx = std::min(min_cx, cells[i].cx);
      max_cx = std::max(max_cx, cells[i].cx);
      min_cy = std::min(min_cy, cells[i].cy);
      max_cy = std::max(max_cy, cells[i].cy);
    }
    const bool split_x = (max_cx - min_cx) >= (max_cy - min_cy);
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(cells.begin() + static_cast<std::ptrdiff_t>(lo),
                     cells.begin() + static_cast<std::ptrdiff_t>(mid),
                     cells.begin() + static_cast<std::ptrdiff_t>(hi),
                     [split_x](const Cell& a, const Cell& b) {
                       return split_x ? std::tie(a.cx, a.cy) < std::tie(b.cx, b.cy)
                                      : std::tie(a.cy, a.cx) < std::tie(b.cy, b.cx);
                     });

    const auto begin = static_cast<std::uint32_t>(points_.size());
    const std::int32_t left = build(cells, lo, mid, pts);
    const std::int32_t right = build(cells, mid, hi, pts);
    Node inner{};
    inner.begin = begin;
    inner.end = static_cast<std::uint32_t>(points_.size());
    inner.left = left;
    inner.right = right;
    inner.box = nodes_[left].box;
    inner.box.extend(nodes_[right].box);
    nodes_[index] = inner;
    return index;
  }

  std::vector<std::uint32_t> sorted_ids_;
  std::vector<Node> nodes_;
  std::vector<Point> points_;
  std::vector<std::uint32_t> ids_;
};

// Dual traversal of the cell tree. The sink receives either whole blocks of
// pairs known to share one label, or individual qualifying pairs.
template <class Sink>
class PairTraversal {
public:
  PairTraversal(const CellTree& tree, const IntervalFamily& iv, Sink& sink)
      : tree_(tree), iv_(iv), sink_(sink) {
    const double lo = iv.low(0) * (1.0 - 1e-6);
    const double hi = iv.high(iv.k() - 1) * (1.0 + 1e-6);
    envelope_lo2_ = lo * lo;
    envelope_hi2_ = hi * hi;
  }

  void run() { visit_self(0); }

private:
  using Node = CellTree::Node;

  void visit_self(std::size_t ni) {
    const Node& a = tree_.node(ni);
    if (a.size() < 2) return;
    const auto cls = classify(iv_, 0.0, a.box.diagonal());
    if (cls.kind == RangeClass::skip) return;
    if (cls.kind == RangeClass::uniform) {
      sink_.block_self(tree_, a, cls.label);
      return;
    }
    if (a.leaf()) {
      for (std::uint32_t i = a.begin; i < a.end; ++i) {
        test_row(i, i + 1, a.end);
      }
      return;
    }
    visit_self(static_cast<std::size_t>(a.left));
    visit_self(static_cast<std::size_t>(a.right));
    visit_pair(static_cast<std::size_t>(a.left), static_cast<std::size_t>(a.right));
  }

  void visit_pair(std::size_t ni, std::size_t nj) {
    const Node& a = tree_.node(ni);
    const Node& b = tree_.node(nj);
    const auto [dmin, dmax] = distance_range(a.box, b.box);
    const auto cls = classify(iv_, dmin, dmax);
    if (cls.kind == RangeClass::skip) return;
    if (cls.kind == RangeClass::uniform) {
      sink_.block_pair(tree_, a, b, cls.label);
      return;
    }
    if (a.leaf() && b.leaf()) {
      for (std::uint32_t i = a.begin; i < a.end; ++i) {
        if (!reaches(tree_.point(i), b.box)) continue;
        test_row(i, b.begin, b.end);
      }
      return;
    }
    const bool split_a = !a.leaf() && (b.leaf() || a.box.diagonal() >= b.box.diagonal());
    if (split_a) {
      visit_pair(static_cast<std::size_t>(a.left), nj);
      visit_pair(static_cast<std::size_t>(a.right), nj);
    } else {
      visit_pair(ni, static_cast<std::size_t>(b.left));
      visit_pair(ni, static_cast<std::size_t>(b.right));
    }
  }

  // Whether some point of `box` could lie at a distance inside the envelope.
  bool reaches(const Point& p, const Box& box) const {
    const double gx = std::max({0.0, box.min_x - p.x, p.x - box.max_x});
    const double gy = std::max({0.0, box.min_y - p.y, p.y - box.max_y});
    const double sx = std::max(p.x - box.min_x, box.max_x - p.x);
    const double sy = std::max(p.y - box.min_y, box.max_y - p.y);
    return gx * gx + gy * gy <= envelope_hi2_ && sx * sx + sy * sy >= envelope_lo2_;
  }

  // Tests point i against points [first, last). Candidates inside the
  // squared-distance envelope (with slack) are gathered without branching;
  // their labels always come from the same distance() value the brute-force
  // path uses.
  void test_row(std::uint32_t i, std::uint32_t first, std::uint32_t last) {
    const Point& p = tree_.point(i);
    std::uint32_t buffer[kMaxRow];
    while (first < last) {
      const std::uint32_t stop = std::min(last, first + kMaxRow);
      std::uint32_t found = 0;
      for (std::uint32_t j = first; j < stop; ++j) {
        const Point& q = tree_.point(j);
        const double dx = p.x - q.x;
        const double dy = p.y - q.y;
        const double d2 = dx * dx + dy * dy;
        buffer[found] = j;
        found += static_cast<std::uint32_t>((d2 >= envelope_lo2_) & (d2 <= envelope_hi2_));
      }
      for (std::uint32_t c = 0; c < found; ++c) {
        const std::uint32_t j = buffer[c];
        const std::size_t label = iv_.label_of(distance(p, tree_.point(j)));
        if (label != 0) sink_.pair(tree_, i, j, label);
      }
      first = stop;
    }
  }

  static constexpr std::uint32_t kMaxRow = 64;

  const CellTree& tree_;
  const IntervalFamily& iv_;
  Sink& sink_;
  double envelope_lo2_;
  double envelope_hi2_;
};

struct CountingSink {
  std::vector<std::uint64_t>& per_interval;

  void block_self(const CellTree&, const CellTree::Node& a, std::size_t label) {
    per_interval[label - 1] += a.size() * (a.size() - 1) / 2;
  }
  void block_pair(const CellTree&, const CellTree::Node& a, const CellTree::Node& b,
                  std::size_t label) {
    per_interval[label - 1] += a.size() * b.size();
  }
  void pair(const CellTree&, std::uint32_t, std::uint32_t, std::size_t label) {
    ++per_interval[label - 1];
  }
};

struct ListingSink {
  std::vector<LabeledPair>& out;

  void emit(const CellTree& tree, std::uint32_t i, std::uint32_t j, std::size_t label) {
    std::size_t a = tree.id(i), b = tree.id(j);
    if (a > b) std::swap(a, b);
    out.push_back({a, b, label});
  }
  void block_self(const CellTree& tree, const CellTree::Node& n, std::size_t label) {
    for (std::uint32_t i = n.begin; i < n.end; ++i) {
      for (std::uint32_t j = i + 1; j < n.end; ++j) emit(tree, i, j, label);
    }
  }
  void block_pair(const CellTree& tree, const CellTree::Node& a, const CellTree::Node& b,
                  std::size_t label) {
    for (std::uint32_t i = a.begin; i < a.end; ++i) {
      for (std::uint32_t j = b.begin; j < b.end; ++j) emit(tree, i, j, label);
    }
  }
  void pair(const CellTree& tree, std::uint32_t i, std::uint32_t j, std::size_t label) {
    emit(tree, i, j, label);
  }
};

double cell_side(const IntervalFamily& iv) { return std::max(1.0, iv.alpha()); }

}  // namespace

PairCountReport count_pairs(const PointSet& ps, const IntervalFamily& iv, CountMethod method) {
  PairCountReport report;
  report.method = method;
  report.per_interval.assign(iv.k(), 0);

  if (method == CountMethod::brute) {
    const auto pts = ps.points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const std::size_t label = iv.label_of(distance(pts[i], pts[j]));
        if (label != 0) ++report.per_interval[label - 1];
      }
    }
  } else if (ps.size() > 1) {
    const CellTree tree(ps, cell_side(iv));
    CountingSink sink{report.per_interval};
    PairTraversal<CountingSink>(tree, iv, sink).run();
  }

  for (auto c : report.per_interval) report.total += c;
  return report;
}

std::vector<LabeledPair> label_pairs(const PointSet& ps, const IntervalFamily& iv) {
  std::vector<LabeledPair> out;
  if (ps.size() < 2) return out;
  const CellTree tree(ps, cell_side(iv));
  ListingSink sink{out};
  PairTraversal<ListingSink>(tree, iv, sink).run();
  std::sort(out.begin(), out.end(), [](const LabeledPair& a, const LabeledPair& b) {
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
  return out;
}

}  // namespace neareq
