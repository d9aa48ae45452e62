#include "sensornet/matching.hpp"

#include <limits>
#include <queue>
#include <string>

#include "sensornet/error.hpp"

namespace sensornet {

namespace {

constexpr Index kUnreached = std::numeric_limits<Index>::max();

// Hopcroft-Karp with an explicit-stack DFS along the BFS layering.
class HopcroftKarp {
 public:
  HopcroftKarp(const std::vector<std::vector<Index>>& adjacency, Index right_count)
      : adj_(adjacency),
        match_left_(adjacency.size(), kUnreached),
        match_right_(right_count, kUnreached),
        layer_(adjacency.size()) {}

  BipartiteMatching run() {
    std::size_t size = 0;
    while (bfs()) {
      for (Index u = 0; u < adj_.size(); ++u) {
        if (match_left_[u] == kUnreached && augment(u)) ++size;
      }
    }
    BipartiteMatching out;
    out.size = size;
    out.right_of_left.resize(adj_.size());
    out.left_of_right.resize(match_right_.size());
    for (Index u = 0; u < adj_.size(); ++u) {
      if (match_left_[u] != kUnreached) out.right_of_left[u] = match_left_[u];
    }
    for (Index v = 0; v < match_right_.size(); ++v) {
      if (match_right_[v] != kUnreached) out.left_of_right[v] = match_right_[v];
    }
    return out;
  }

 private:
  bool bfs() {
    std::queue<Index> queue;
    bool found_free = false;
    for (Index u = 0; u < adj_.size(); ++u) {
      if (match_left_[u] == kUnreached) {
        layer_[u] = 0;
        queue.push(u);
      } else {
        layer_[u] = kUnreached;
      }
    }
    while (!queue.empty()) {
      const Index u = queue.front();
      queue.pop();
      for (Index v : adj_[u]) {
        const Index w = match_right_[v];
        if (w == kUnreached) {
          found_free = true;
        } else if (layer_[w] == kUnreached) {
          layer_[w] = layer_[u] + 1;
          queue.push(w);
        }
      }
    }
    return found_free;
  }

  bool augment(Index root) {
    // Frames of (left vertex, next adjacency position).
    std::vector<std::pair<Index, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [u, pos] = stack.back();
      if (pos == adj_[u].size()) {
        layer_[u] = kUnreached;
        stack.pop_back();
        continue;
      }
      const Index v = adj_[u][pos++];
      const Index w = match_right_[v];
      if (w == kUnreached) {
        // Flip the path recorded on the stack, deepest frame first.
        Index right = v;
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
          const Index left = it->first;
          const Index previous = match_left_[left];
          match_left_[left] = right;
          match_right_[right] = left;
          right = previous;
        }
        return true;
      }
      if (layer_[w] == layer_[u] + 1) stack.emplace_back(w, 0);
    }
    return false;
  }

  const std::vector<std::vector<Index>>& adj_;
  std::vector<Index> match_left_;
  std::vector<Index> match_right_;
  std::vector<Index> layer_;
};

}  // namespace

BipartiteMatching maximum_matching(const std::vector<std::vector<Index>>& adjacency,
                                   Index right_count) {
  return HopcroftKarp(adjacency, right_count).run();
}

std::optional<std::vector<Index>> hall_violator(const std::vector<std::vector<Index>>& adjacency,
                                                Index right_count) {
  const auto matching = maximum_matching(adjacency, right_count);
  if (matching.size == adjacency.size()) return std::nullopt;

  // Left vertices reachable from the lowest unmatched one by alternating
  // paths; their neighbourhood is exactly the matched partners minus the root.
  Index root = 0;
  while (matching.right_of_left[root]) ++root;
  std::vector<bool> seen_left(adjacency.size(), false);
  std::vector<bool> seen_right(right_count, false);
  std::queue<Index> queue;
  queue.push(root);
  seen_left[root] = true;
  while (!queue.empty()) {
    const Index u = queue.front();
    queue.pop();
    for (Index v : adjacency[u]) {
      if (seen_right[v]) continue;
      seen_right[v] = true;
      // Maximum matching: every reachable right vertex is matched.
      const Index w = *matching.left_of_right[v];
      if (!seen_left[w]) {
        seen_left[w] = true;
        queue.push(w);
      }
    }
  }
  std::vector<Index> violator;
  for (Index u = 0; u < adjacency.size(); ++u) {
    if (seen_left[u]) violator.push_back(u);
  }
  return violator;
}

bool is_structurally_full_rank(const StructuredMatrix& pattern) {
  if (!pattern.square()) {
    throw Error(ErrorKind::shape, "structural rank test needs a square pattern, got " +
                                      std::to_string(pattern.rows()) + "x" +
                                      std::to_string(pattern.cols()));
  }
  std::vector<std::vector<Index>> adjacency(pattern.rows());
  for (const auto& [r, c] : pattern.nonzeros()) adjacency[r].push_back(c);
  return maximum_matching(adjacency, pattern.cols()).size == pattern.rows();
}

}  // namespace sensornet
