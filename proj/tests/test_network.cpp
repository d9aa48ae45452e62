#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sensornet/error.hpp"
#include "sensornet/network.hpp"

using namespace sensornet;

namespace {

WeightedDigraph undirected(Index m, const std::vector<std::tuple<Index, Index, double>>& edges) {
  WeightedDigraph net(m);
  for (const auto& [a, b, c] : edges) {
    net.set_arc(a, b, c);
    net.set_arc(b, a, c);
  }
  return net;
}

}  // namespace

TEST_CASE("mst_solve") {
  SUBCASE("triangle") {
    const auto d = mst_solve(undirected(3, {{0, 1, 1}, {1, 2, 2}, {0, 2, 3}}));
    CHECK(d.selected_arcs == std::vector<Arc>{{0, 1}, {1, 0}, {1, 2}, {2, 1}});
    CHECK(*d.tree_cost == 3.0);
    CHECK(d.total_cost == 6.0);
    CHECK(d.method == NetworkMethod::mst);
    CHECK(d.gap_bound == 0.0);
  }
  SUBCASE("two nodes") {
    const auto d = mst_solve(undirected(2, {{0, 1, 5}}));
    CHECK(d.total_cost == 10.0);
    CHECK(*d.tree_cost == 5.0);
  }
  SUBCASE("single node") {
    const auto d = mst_solve(WeightedDigraph(1));
    CHECK(d.selected_arcs.empty());
    CHECK(d.total_cost == 0.0);
  }
  SUBCASE("disconnected names a cut") {
    try {
      mst_solve(undirected(4, {{0, 1, 1}, {2, 3, 1}}));
      FAIL("expected infeasible");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::infeasible);
      CHECK(std::string(e.what()).find("{1,2} | {3,4}") != std::string::npos);
    }
  }
  SUBCASE("asymmetric network") {
    CHECK_THROWS_AS(mst_solve(WeightedDigraph(2, {{{0, 1}, 1}})), Error);
  }
}

TEST_CASE("mst matches Kruskal and the exhaustive tree") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Index m = 1 + trial % 7;
    const auto net = oracle::random_symmetric(rng, m, 0.5, trial % 2 ? 20 : 2);
    const auto d = mst_solve(net);
    CHECK(*d.tree_cost == *oracle::kruskal_tree_cost(net));
    if (net.arc_count() / 2 <= kBruteForceArcLimit) {
      CHECK(*d.tree_cost == *brute_force_spanning_tree(net).tree_cost);
    }
    CHECK(d.total_cost == 2 * *d.tree_cost);
    CHECK(oracle::strongly_connected(m, d.selected_arcs));
  }
}

TEST_CASE("msss_2approx") {
  SUBCASE("directed 3-cycle is kept whole") {
    const WeightedDigraph net(3, {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 0}, 1}});
    const auto d = msss_2approx(net, 0);
    CHECK(d.selected_arcs == std::vector<Arc>{{0, 1}, {1, 2}, {2, 0}});
    CHECK(d.total_cost == 3.0);
    CHECK(d.gap_bound == 1.0);
    CHECK(d.method == NetworkMethod::branching_union);
  }
  SUBCASE("two nodes need both links") {
    const WeightedDigraph net(2, {{{0, 1}, 1}, {{1, 0}, 5}});
    CHECK(msss_2approx(net, 0).total_cost == 6.0);
    CHECK(msss_2approx(net, 1).total_cost == 6.0);
    CHECK(brute_force_msss(net).total_cost == 6.0);
  }
  SUBCASE("single sensor") {
    const auto d = msss_2approx(WeightedDigraph(1), 0);
    CHECK(d.selected_arcs.empty());
    CHECK(d.total_cost == 0.0);
  }
  SUBCASE("not strongly connected") {
    try {
      msss_2approx(WeightedDigraph(2, {{{0, 1}, 1}}), 0);
      FAIL("expected precondition");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::precondition);
    }
  }
}

TEST_CASE("msss_best_root keeps the cheapest root") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Index m = 2 + trial % 6;
    const auto net = oracle::random_sc_digraph(rng, m, 3 * m);
    const auto best = msss_best_root(net);
    for (Index r = 0; r < m; ++r) {
      const auto d = msss_2approx(net, r);
      CHECK(best.total_cost <= d.total_cost);
      if (r < *best.root) CHECK(d.total_cost > best.total_cost);
    }
  }
}

TEST_CASE("brute_force_msss") {
  SUBCASE("cheaper cycle beats the expensive one") {
    WeightedDigraph net(3, {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 0}, 1}, {{1, 0}, 10}, {{2, 1}, 10}, {{0, 2}, 10}});
    const auto d = brute_force_msss(net);
    CHECK(d.selected_arcs == std::vector<Arc>{{0, 1}, {1, 2}, {2, 0}});
    CHECK(d.total_cost == 3.0);
    CHECK(d.gap_bound == 0.0);
  }
  SUBCASE("guard") {
    WeightedDigraph net(6);
    for (Index a = 0; a < 6; ++a)
      for (Index b = 0; b < 6; ++b)
        if (a != b) net.set_arc(a, b, 1);
    try {
      brute_force_msss(net);
      FAIL("expected guard");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::guard);
    }
  }
  SUBCASE("not strongly connected") {
    CHECK_THROWS_AS(brute_force_msss(WeightedDigraph(2, {{{0, 1}, 1}})), Error);
  }
}

TEST_CASE("brute-force MSSS matches subset enumeration and bounds the heuristic") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const Index m = 2 + trial % 4;
    const auto net = oracle::random_sc_digraph(rng, m, std::min<std::size_t>(14, m * (m - 1)),
                                               trial % 3 ? 20 : 2);
    const auto exact = brute_force_msss(net);
    CHECK(exact.total_cost == *oracle::min_sc_subset_cost(net));
    CHECK(oracle::strongly_connected(m, exact.selected_arcs));
    const auto heuristic = msss_best_root(net);
    CHECK(oracle::strongly_connected(m, heuristic.selected_arcs));
    CHECK(heuristic.total_cost >= exact.total_cost);
    CHECK(heuristic.total_cost <= 2 * exact.total_cost);
  }
}

TEST_CASE("approximation_gap") {
  CHECK(approximation_gap(0, 0) == 0.0);
  CHECK(approximation_gap(6, 4) == 0.5);
  CHECK(approximation_gap(3, 3) == 0.0);
}
