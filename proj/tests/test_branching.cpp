#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sensornet/branching.hpp"
#include "sensornet/error.hpp"

using namespace sensornet;

namespace {

WeightedDigraph unit_cycle3() { return WeightedDigraph(3, {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 0}, 1}}); }

bool spans(Index n, Index root, const std::vector<Arc>& arcs, bool in) {
  const auto reach = oracle::closure(n, arcs);
  for (Index v = 0; v < n; ++v)
    if (!(in ? reach[v][root] : reach[root][v])) return false;
  return true;
}

}  // namespace

TEST_CASE("branchings of the 3-cycle") {
  const auto net = unit_cycle3();
  const auto out = min_branching(net, 0, BranchingDirection::out);
  CHECK(out.arcs == std::vector<Arc>{{0, 1}, {1, 2}});
  CHECK(out.cost == 2.0);
  const auto in = min_branching(net, 0, BranchingDirection::in);
  CHECK(in.arcs == std::vector<Arc>{{1, 2}, {2, 0}});
  CHECK(in.cost == 2.0);
}

TEST_CASE("single node branching is empty") {
  const auto b = min_branching(WeightedDigraph(1), 0, BranchingDirection::out);
  CHECK(b.arcs.empty());
  CHECK(b.cost == 0.0);
}

TEST_CASE("branching picks cheap arcs through a contraction") {
  // Cheap 2-cycle between 1 and 2 must be broken; entering it from 0 via the cheaper door.
  WeightedDigraph net(3, {{{0, 1}, 10}, {{0, 2}, 4}, {{1, 2}, 1}, {{2, 1}, 1}});
  const auto b = min_branching(net, 0, BranchingDirection::out);
  CHECK(b.arcs == std::vector<Arc>{{0, 2}, {2, 1}});
  CHECK(b.cost == 5.0);
}

TEST_CASE("branching errors") {
  WeightedDigraph star(3, {{{0, 1}, 1}, {{0, 2}, 1}});
  SUBCASE("node unreachable from root") {
    try {
      min_branching(star, 1, BranchingDirection::out);
      FAIL("expected infeasible");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::infeasible);
      CHECK(std::string(e.what()).find("not reachable from root 2") != std::string::npos);
    }
  }
  SUBCASE("node without a path to root") {
    try {
      min_branching(star, 0, BranchingDirection::in);
      FAIL("expected infeasible");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::infeasible);
      CHECK(std::string(e.what()).find("has no path to root 1") != std::string::npos);
    }
  }
  SUBCASE("root out of range") {
    CHECK_THROWS_AS(min_branching(star, 3, BranchingDirection::out), Error);
  }
}

TEST_CASE("branching optimum matches exhaustive search") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const Index m = 2 + trial % 5;
    const auto net = oracle::random_sc_digraph(rng, m, 3 * m, trial % 2 ? 20 : 3);
    const Index root = rng() % m;
    for (bool in : {false, true}) {
      const auto b = min_branching(net, root, in ? BranchingDirection::in : BranchingDirection::out);
      const auto reference = oracle::min_branching_cost(net, root, in);
      REQUIRE(reference);
      CHECK(b.cost == *reference);
      CHECK(b.arcs.size() == m - 1);
      CHECK(spans(m, root, b.arcs, in));
      for (const auto& [a, c] : b.arcs) CHECK(net.has_arc(a, c));
    }
  }
}

TEST_CASE("in-branching equals out-branching of the reversed network") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = 2 + trial % 8;
    const auto net = oracle::random_sc_digraph(rng, m, 4 * m);
    const Index root = rng() % m;
    const auto in = min_branching(net, root, BranchingDirection::in);
    const auto out_rev = min_branching(net.reversed(), root, BranchingDirection::out);
    CHECK(in.cost == out_rev.cost);
  }
}

TEST_CASE("branching on a large random network is a valid arborescence") {
  std::mt19937_64 rng(99);
  const Index m = 400;
  const auto net = oracle::random_sc_digraph(rng, m, 8 * m, 1000);
  const auto b = min_branching(net, 17, BranchingDirection::out);
  CHECK(b.arcs.size() == m - 1);
  std::vector<int> indegree(m, 0);
  for (const auto& [a, c] : b.arcs) ++indegree[c];
  CHECK(indegree[17] == 0);
  for (Index v = 0; v < m; ++v)
    if (v != 17) CHECK(indegree[v] == 1);
  CHECK(b.cost == doctest::Approx(arc_set_cost(net, b.arcs)));
}

TEST_CASE("heap and dense strategies agree arc for arc") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Index m = 2 + trial % 30;
    const auto net = oracle::random_sc_digraph(rng, m, (trial % 3 + 1) * m, trial % 2 ? 5 : 100);
    const Index root = rng() % m;
    for (auto dir : {BranchingDirection::out, BranchingDirection::in}) {
      const auto heap = min_branching(net, root, dir, BranchingStrategy::heap);
      const auto dense = min_branching(net, root, dir, BranchingStrategy::dense);
      CHECK(heap.cost == dense.cost);
      CHECK(heap.arcs == dense.arcs);
    }
  }
}

TEST_CASE("dense strategy reports unreachable nodes like the heap one") {
  WeightedDigraph net(3, {{{0, 1}, 1.0}, {{1, 0}, 1.0}});
  for (auto strategy : {BranchingStrategy::heap, BranchingStrategy::dense}) {
    try {
      min_branching(net, 0, BranchingDirection::out, strategy);
      FAIL("expected infeasible");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("not reachable from root 1") != std::string::npos);
    }
  }
}
