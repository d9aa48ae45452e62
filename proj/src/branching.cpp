#include "sensornet/branching.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "sensornet/error.hpp"

namespace sensornet {

namespace {

// Stored in lexicographic order of the original arcs; the position doubles as
// the tie-breaking id.
struct WeightedArc {
  std::uint32_t from;
  std::uint32_t to;
  double cost;
};

struct HeapNode {
  double key;
  double lazy;
  std::uint32_t id;  // arc position
  int left;
  int right;
  int rank;
};

// Per-thread buffers reused across calls.
struct Workspace {
  std::vector<WeightedArc> arcs;
  std::vector<HeapNode> nodes;
  std::vector<double> keys;
  std::vector<std::uint32_t> ids;
};

Workspace& workspace() {
  thread_local Workspace w;
  return w;
}

// Leftist min-heaps of arcs keyed by (reduced cost, id), with a lazy additive
// offset per subtree. Nodes live in one arena and are addressed by index.
class ArcHeaps {
 public:
  static constexpr int kNil = -1;

  // One heap per head node. Each head's arcs occupy a contiguous block of the
  // arena and are heapified in place, so construction is linear.
  ArcHeaps(Index n, const std::vector<WeightedArc>& arcs, std::vector<HeapNode>& arena)
      : nodes_(arena), roots_(n, kNil) {
    std::vector<Index> start(n + 1, 0);
    for (const auto& a : arcs) ++start[a.to + 1];
    for (Index v = 0; v < n; ++v) start[v + 1] += start[v];
    std::vector<Index> fill(start.begin(), start.end() - 1);
    nodes_.resize(arcs.size());
    for (std::uint32_t k = 0; k < arcs.size(); ++k) {
      nodes_[fill[arcs[k].to]++] = {arcs[k].cost, 0.0, k, kNil, kNil, 1};
    }
    for (Index v = 0; v < n; ++v) roots_[v] = heapify(start[v], start[v + 1] - start[v]);
  }

  const std::vector<int>& roots() const noexcept { return roots_; }

  int merge(int a, int b) {
    if (a == kNil) return b;
    if (b == kNil) return a;
    push(a);
    push(b);
    if (less(b, a)) std::swap(a, b);
    nodes_[a].right = merge(nodes_[a].right, b);
    if (rank(nodes_[a].left) < rank(nodes_[a].right)) std::swap(nodes_[a].left, nodes_[a].right);
    nodes_[a].rank = rank(nodes_[a].right) + 1;
    return a;
  }

  // Root arc position and its current reduced cost.
  std::pair<Index, double> top(int heap) {
    push(heap);
    return {nodes_[heap].id, nodes_[heap].key};
  }

  int pop(int heap) {
    push(heap);
    return merge(nodes_[heap].left, nodes_[heap].right);
  }

  void add(int heap, double offset) {
    if (heap != kNil) nodes_[heap].lazy += offset;
  }

 private:
  int rank(int node) const { return node == kNil ? 0 : nodes_[node].rank; }

  // Floyd's bottom-up heapify over nodes [first, first + count), then links
  // the implicit complete binary tree, which already satisfies the leftist rule.
  int heapify(Index first, Index count) {
    if (count == 0) return kNil;
    const auto slot = [first](Index i) { return static_cast<int>(first + i); };
    for (Index i = count / 2; i-- > 0;) {
      Index hole = i;
      for (Index child = 2 * hole + 1; child < count; child = 2 * hole + 1) {
        if (child + 1 < count && less(slot(child + 1), slot(child))) ++child;
        if (!less(slot(child), slot(hole))) break;
        std::swap(nodes_[slot(hole)], nodes_[slot(child)]);
        hole = child;
      }
    }
    for (Index i = count; i-- > 0;) {
      HeapNode& nd = nodes_[slot(i)];
      nd.left = 2 * i + 1 < count ? slot(2 * i + 1) : kNil;
      nd.right = 2 * i + 2 < count ? slot(2 * i + 2) : kNil;
      nd.rank = rank(nd.right) + 1;
    }
    return slot(0);
  }

  void push(int node) {
    HeapNode& nd = nodes_[node];
    if (nd.lazy == 0.0) return;
    nd.key += nd.lazy;
    if (nd.left != kNil) nodes_[nd.left].lazy += nd.lazy;
    if (nd.right != kNil) nodes_[nd.right].lazy += nd.lazy;
    nd.lazy = 0.0;
  }

  bool less(int a, int b) const {
    const HeapNode& x = nodes_[a];
    const HeapNode& y = nodes_[b];
    return x.key != y.key ? x.key < y.key : x.id < y.id;
  }

  std::vector<HeapNode>& nodes_;
  std::vector<int> roots_;
};

// Union-find with union by size and rollback, no path compression.
class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(Index n) : parent_(n, -1) {}

  Index find(Index x) const {
    while (parent_[x] >= 0) x = static_cast<Index>(parent_[x]);
    return x;
  }

  std::size_t time() const { return history_.size(); }

  void rollback(std::size_t t) {
    while (history_.size() > t) {
      auto [slot, value] = history_.back();
      history_.pop_back();
      parent_[slot] = value;
    }
  }

  bool join(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (parent_[a] > parent_[b]) std::swap(a, b);
    history_.emplace_back(a, parent_[a]);
    history_.emplace_back(b, parent_[b]);
    parent_[a] += parent_[b];
    parent_[b] = static_cast<long>(a);
    return true;
  }

 private:
  std::vector<long> parent_;
  std::vector<std::pair<Index, long>> history_;
};

// Index of the first node not reachable from root along `arcs`, if any.
std::optional<Index> first_unreachable(Index n, Index root, const std::vector<WeightedArc>& arcs) {
  std::vector<std::vector<Index>> out(n);
  for (const auto& a : arcs) out[a.from].push_back(a.to);
  std::vector<bool> seen(n, false);
  std::vector<Index> stack{root};
  seen[root] = true;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    for (Index w : out[v]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  for (Index v = 0; v < n; ++v) {
    if (!seen[v]) return v;
  }
  return std::nullopt;
}

// Per-supernode candidate arcs backed by leftist heaps, O(E log V) overall.
class HeapCandidates {
 public:
  HeapCandidates(Index n, const std::vector<WeightedArc>& arcs)
      : arcs_(arcs), heaps_(n, arcs, workspace().nodes), heap_(heaps_.roots()) {}

  // Cheapest arc entering u from outside its supernode and its reduced cost;
  // the remaining arcs into u are reduced by that cost.
  std::optional<std::pair<Index, double>> take_cheapest(Index u, const RollbackUnionFind& uf) {
    while (heap_[u] != ArcHeaps::kNil && uf.find(arcs_[heaps_.top(heap_[u]).first].from) == u) {
      heap_[u] = heaps_.pop(heap_[u]);
    }
    if (heap_[u] == ArcHeaps::kNil) return std::nullopt;
    const auto top = heaps_.top(heap_[u]);
    heap_[u] = heaps_.pop(heap_[u]);
    heaps_.add(heap_[u], -top.second);
    return top;
  }

  void contract(const std::vector<Index>& members, Index rep) {
    int merged = ArcHeaps::kNil;
    for (Index w : members) merged = heaps_.merge(merged, heap_[w]);
    heap_[rep] = merged;
  }

 private:
  const std::vector<WeightedArc>& arcs_;
  ArcHeaps heaps_;
  std::vector<int> heap_;
};

// Per-supernode candidate arcs as dense rows indexed by tail node, O(V^2)
// overall. Row r keeps, per tail x, the cheapest (reduced cost, id) arc from x
// into supernode r; costs in a row are relative to offset_[r].
class DenseCandidates {
 public:
  DenseCandidates(Index n, const std::vector<WeightedArc>& arcs)
      : n_(n), key_(workspace().keys), id_(workspace().ids), offset_(n, 0.0), rep_(n),
        mark_(n, false) {
    key_.assign(n * n, kInf);
    id_.resize(n * n);
    for (std::uint32_t k = 0; k < arcs.size(); ++k) {
      const Index cell = arcs[k].to * n + arcs[k].from;
      key_[cell] = arcs[k].cost;
      id_[cell] = k;
    }
    for (Index v = 0; v < n; ++v) rep_[v] = v;
  }

  std::optional<std::pair<Index, double>> take_cheapest(Index u, const RollbackUnionFind&) {
    const double* key = key_.data() + u * n_;
    const std::uint32_t* id = id_.data() + u * n_;
    double best = kInf;
    std::uint32_t best_id = 0;
    for (Index x = 0; x < n_; ++x) {
      if (key[x] == kInf || rep_[x] == u) continue;
      if (key[x] < best || (key[x] == best && id[x] < best_id)) {
        best = key[x];
        best_id = id[x];
      }
    }
    if (best == kInf) return std::nullopt;
    const double reduced = best + offset_[u];
    offset_[u] -= reduced;
    return std::pair<Index, double>{best_id, reduced};
  }

  void contract(const std::vector<Index>& members, Index rep) {
    double* key = key_.data() + rep * n_;
    std::uint32_t* id = id_.data() + rep * n_;
    if (offset_[rep] != 0.0) {
      for (Index x = 0; x < n_; ++x) key[x] += offset_[rep];
      offset_[rep] = 0.0;
    }
    for (Index w : members) {
      mark_[w] = true;
      if (w == rep) continue;
      const double* other_key = key_.data() + w * n_;
      const std::uint32_t* other_id = id_.data() + w * n_;
      for (Index x = 0; x < n_; ++x) {
        if (other_key[x] == kInf) continue;
        const double candidate = other_key[x] + offset_[w];
        if (candidate < key[x] || (candidate == key[x] && other_id[x] < id[x])) {
          key[x] = candidate;
          id[x] = other_id[x];
        }
      }
    }
    for (Index x = 0; x < n_; ++x) {
      if (mark_[rep_[x]]) rep_[x] = rep;
    }
    for (Index w : members) mark_[w] = false;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  Index n_;
  std::vector<double>& key_;
  std::vector<std::uint32_t>& id_;
  std::vector<double> offset_;
  std::vector<Index> rep_;
  std::vector<bool> mark_;
};

// Minimum spanning out-arborescence: for each non-root node, the position in
// `arcs` of its chosen incoming arc. Empty if some node is unreachable from root.
// Both candidate structures select the cheapest (reduced cost, id) entering
// arc, so they agree exactly whenever the arithmetic is exact.
template <class Candidates>
std::optional<std::vector<Index>> min_out_arborescence(Index n, Index root,
                                                       const std::vector<WeightedArc>& arcs) {
  constexpr Index kNone = static_cast<Index>(-1);
  Candidates candidates(n, arcs);
  RollbackUnionFind uf(n);
  std::vector<long> seen(n, -1);
  seen[root] = static_cast<long>(root);
  std::vector<Index> path(n), queue_arc(n), in(n, kNone), members;

  struct Contraction {
    Index node;
    std::size_t time;
    std::vector<Index> cycle_arcs;
  };
  std::deque<Contraction> contractions;

  for (Index s = 0; s < n; ++s) {
    Index u = s;
    Index depth = 0;
    while (seen[u] < 0) {
      const auto chosen = candidates.take_cheapest(u, uf);
      if (!chosen) return std::nullopt;
      const Index arc = chosen->first;
      queue_arc[depth] = arc;
      path[depth++] = u;
      seen[u] = static_cast<long>(s);
      u = uf.find(arcs[arc].from);
      if (seen[u] == static_cast<long>(s)) {
        const Index end = depth;
        const std::size_t time = uf.time();
        members.clear();
        Index w;
        do {
          w = path[--depth];
          members.push_back(w);
        } while (uf.join(u, w));
        u = uf.find(u);
        candidates.contract(members, u);
        seen[u] = -1;
        contractions.push_front(
            {u, time, std::vector<Index>(queue_arc.begin() + depth, queue_arc.begin() + end)});
      }
    }
    for (Index k = 0; k < depth; ++k) in[uf.find(arcs[queue_arc[k]].to)] = queue_arc[k];
  }

  // Expand cycles innermost-last: the arc entering a contracted node replaces
  // the cycle arc into the same head.
  for (const auto& c : contractions) {
    uf.rollback(c.time);
    const Index entering = in[c.node];
    for (Index arc : c.cycle_arcs) in[uf.find(arcs[arc].to)] = arc;
    in[uf.find(arcs[entering].to)] = entering;
  }
  return in;
}

}  // namespace

Branching min_branching(const WeightedDigraph& net, Index root, BranchingDirection direction,
                        BranchingStrategy strategy) {
  const Index n = net.node_count();
  if (root >= n) {
    throw Error(ErrorKind::validation, "root " + std::to_string(root + 1) + " outside " +
                                           std::to_string(n) + " sensors");
  }
  const bool in = direction == BranchingDirection::in;

  // An in-branching is an out-branching of the reversed network.
  auto& arcs = workspace().arcs;
  arcs.clear();
  arcs.reserve(net.arc_count());
  for (const auto& [arc, cost] : net.arcs()) {
    const auto from = static_cast<std::uint32_t>(in ? arc.second : arc.first);
    const auto to = static_cast<std::uint32_t>(in ? arc.first : arc.second);
    arcs.push_back({from, to, cost});
  }

  Branching out;
  if (n == 1) return out;
  if (strategy == BranchingStrategy::automatic) {
    strategy = 4 * arcs.size() >= n * n ? BranchingStrategy::dense : BranchingStrategy::heap;
  }
  const auto chosen = strategy == BranchingStrategy::dense
                          ? min_out_arborescence<DenseCandidates>(n, root, arcs)
                          : min_out_arborescence<HeapCandidates>(n, root, arcs);
  if (!chosen) {
    const Index missing = first_unreachable(n, root, arcs).value_or(root);
    throw Error(ErrorKind::infeasible,
                in ? "sensor " + std::to_string(missing + 1) + " has no path to root " +
                         std::to_string(root + 1)
                   : "sensor " + std::to_string(missing + 1) + " is not reachable from root " +
                         std::to_string(root + 1));
  }
  for (Index v = 0; v < n; ++v) {
    if (v == root) continue;
    const auto& a = arcs[(*chosen)[v]];
    out.arcs.push_back(in ? Arc{a.to, a.from} : Arc{a.from, a.to});
    out.cost += a.cost;
  }
  std::ranges::sort(out.arcs);
  return out;
}

}  // namespace sensornet
