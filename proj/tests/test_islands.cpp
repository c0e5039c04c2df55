#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wtw/errors.hpp"
#include "wtw/islands.hpp"
#include "wtw/synthetic.hpp"

using namespace wtw;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// a-b:0.9, b-c:0.2, c-d:0.8
oracle::SmallGraph path_graph() { return {4, {{0, 1, 0.9}, {1, 2, 0.2}, {2, 3, 0.8}}}; }

std::vector<oracle::Mask> masks(const std::vector<Island>& islands) {
  std::vector<oracle::Mask> out;
  for (const auto& i : islands) out.push_back(oracle::to_mask(i.nodes));
  return out;
}

ShareNetwork share(std::size_t n, std::vector<Arc> arcs) {
  std::vector<CountryId> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(synthetic_code(i));
  return ShareNetwork(0, std::move(nodes), std::move(arcs));
}

}  // namespace

TEST_SUITE_BEGIN("islands");

TEST_CASE("dendrogram of the path example") {
  auto small = path_graph();
  auto d = build_dendrogram(oracle::to_graph(small));
  REQUIRE(d.node_count() == 7);
  CHECK(d.node(4).merge_weight == 0.9);
  CHECK(d.members(4) == std::vector<NodeIndex>{0, 1});
  CHECK(d.node(5).merge_weight == 0.8);
  CHECK(d.members(5) == std::vector<NodeIndex>{2, 3});
  CHECK(d.node(6).merge_weight == 0.2);
  CHECK(d.node(6).size == 4);
  CHECK(d.roots() == std::vector<std::size_t>{6});

  double total = 0.0;
  for (std::size_t id = d.leaf_count(); id < d.node_count(); ++id) total += d.node(id).merge_weight;
  CHECK(total == doctest::Approx(oracle::max_spanning_forest_weight(small)));
}

TEST_CASE("dendrogram merges form a maximum spanning forest") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    auto small = oracle::random_graph(rng, 7, 10);
    auto d = build_dendrogram(oracle::to_graph(small));
    double total = 0.0;
    for (std::size_t id = d.leaf_count(); id < d.node_count(); ++id) total += d.node(id).merge_weight;
    CHECK(total == doctest::Approx(oracle::max_spanning_forest_weight(small)));
    CHECK(d.roots().size() == oracle::components(small).size());
  }
}

TEST_CASE("dendrogram invariants") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    auto small = oracle::random_graph(rng, 10, 20);
    auto d = build_dendrogram(oracle::to_graph(small));
    CHECK(d.leaf_count() == small.n);
    for (std::size_t id = d.leaf_count(); id < d.node_count(); ++id) {
      const auto& node = d.node(id);
      CHECK(node.size == d.node(node.left).size + d.node(node.right).size);
      CHECK(d.node(node.left).merge_weight >= node.merge_weight);
      CHECK(d.node(node.right).merge_weight >= node.merge_weight);
    }
  }
}

TEST_CASE("edgeless graph: leaves only") {
  UndirectedWeighted g(0, {CountryId{"AA"}, CountryId{"BB"}, CountryId{"CC"}}, {});
  auto d = build_dendrogram(g);
  CHECK(d.node_count() == 3);
  CHECK(d.roots().size() == 3);
  CHECK(extract_islands(d, g).empty());
}

TEST_CASE("dendrogram ignores input edge order") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    auto small = oracle::random_graph(rng, 9, 15);
    auto a = build_dendrogram(oracle::to_graph(small));
    std::shuffle(small.edges.begin(), small.edges.end(), rng);
    for (auto& e : small.edges)
      if (rng() % 2) std::swap(e.u, e.v);
    CHECK(build_dendrogram(oracle::to_graph(small)) == a);
  }
}

TEST_CASE("extract islands from the path example") {
  auto small = path_graph();
  auto g = oracle::to_graph(small);
  auto d = build_dendrogram(g);

  auto pairs = extract_islands(d, g, 2, 2);
  CHECK(masks(pairs) == oracle::islands(small, 2, 2));
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].nodes == std::vector<NodeIndex>{0, 1});
  CHECK(pairs[0].support_weight == 0.9);
  CHECK(pairs[0].boundary_weight == 0.2);
  CHECK(pairs[1].nodes == std::vector<NodeIndex>{2, 3});
  CHECK(pairs[1].support_weight == 0.8);
  CHECK(pairs[1].boundary_weight == 0.2);

  auto whole = extract_islands(d, g, 2, 4);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].nodes.size() == 4);
  CHECK(whole[0].support_weight == 0.2);
  CHECK(whole[0].boundary_weight == kNegInf);
  CHECK(masks(whole) == oracle::islands(small, 2, 4));
}

TEST_CASE("equal-weight triangle has no pair islands") {
  oracle::SmallGraph tri{3, {{0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.5}}};
  auto g = oracle::to_graph(tri);
  auto d = build_dendrogram(g);
  CHECK(extract_islands(d, g, 2, 2).empty());
  CHECK(oracle::islands(tri, 2, 2).empty());
  CHECK(extract_islands(d, g, 2, 3).size() == 1);
}

TEST_CASE("size bounds are validated") {
  auto g = oracle::to_graph(path_graph());
  auto d = build_dendrogram(g);
  CHECK_THROWS_AS(extract_islands(d, g, 1, 4), ParameterError);
  CHECK_THROWS_AS(extract_islands(d, g, 3, 2), ParameterError);
}

TEST_CASE("is_island on the path example") {
  auto small = path_graph();
  auto g = oracle::to_graph(small);
  std::vector<NodeIndex> ab{0, 1}, bc{1, 2}, ad{0, 3}, all{0, 1, 2, 3};
  CHECK(is_island(g, ab));
  CHECK(oracle::is_island(small, oracle::to_mask(ab)));
  CHECK_FALSE(is_island(g, bc));
  CHECK_FALSE(oracle::is_island(small, oracle::to_mask(bc)));
  CHECK_FALSE(is_island(g, ad));
  CHECK(is_island(g, all));

  std::vector<NodeIndex> unknown{0, 9};
  CHECK_THROWS_AS(is_island(g, unknown), LookupError);
  std::vector<NodeIndex> single{0};
  CHECK_THROWS_AS(is_island(g, single), ParameterError);
}

TEST_CASE("is_island agrees with the oracle on every subset") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    auto small = oracle::random_graph(rng, 8, 14);
    auto g = oracle::to_graph(small);
    for (oracle::Mask m = 1; m < (oracle::Mask{1} << small.n); ++m) {
      if (oracle::popcount(m) < 2) continue;
      std::vector<NodeIndex> nodes;
      for (std::size_t v = 0; v < small.n; ++v)
        if ((m >> v) & 1u) nodes.push_back(v);
      CHECK(is_island(g, nodes) == oracle::is_island(small, m));
    }
  }
}

TEST_CASE("extracted islands satisfy the island properties") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    auto small = oracle::random_graph(rng, 10, 20);
    auto g = oracle::to_graph(small);
    std::size_t lo = 2 + rng() % 3;
    std::size_t hi = lo + rng() % 6;
    auto islands = extract_islands(build_dendrogram(g), g, lo, hi);
    oracle::Mask seen = 0;
    for (const auto& island : islands) {
      oracle::Mask m = oracle::to_mask(island.nodes);
      CHECK((m & seen) == 0);
      seen |= m;
      CHECK(is_island(g, island.nodes));
      CHECK(island.support_weight > island.boundary_weight);
      CHECK(island.support_weight == oracle::bottleneck(small, m));
      CHECK(island.boundary_weight == oracle::boundary(small, m));
      CHECK(island.nodes.size() >= lo);
      CHECK(island.nodes.size() <= hi);
    }
    CHECK(masks(islands) == oracle::islands(small, lo, hi));
  }
}

TEST_CASE("strictly increasing weight transforms keep island member sets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto small = oracle::random_graph(rng, 10, 20);
    auto g = oracle::to_graph(small);
    auto transformed = small;
    for (auto& e : transformed.edges) e.weight = std::exp(3.0 * e.weight) + 1.0;
    auto g2 = oracle::to_graph(transformed);
    CHECK(masks(extract_islands(build_dendrogram(g), g)) ==
          masks(extract_islands(build_dendrogram(g2), g2)));
  }
}

TEST_CASE("relabeling nodes and mapping back gives the same islands") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    auto small = oracle::random_graph(rng, 9, 16);
    std::vector<NodeIndex> perm(small.n);
    for (std::size_t i = 0; i < small.n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    auto relabeled = small;
    for (auto& e : relabeled.edges) {
      e.u = perm[e.u];
      e.v = perm[e.v];
    }
    auto g = oracle::to_graph(small);
    auto g2 = oracle::to_graph(relabeled);
    auto base = extract_islands(build_dendrogram(g), g, 2, 5);
    auto moved = extract_islands(build_dendrogram(g2), g2, 2, 5);
    std::vector<oracle::Mask> back;
    for (const auto& island : moved) {
      oracle::Mask m = 0;
      for (NodeIndex v : island.nodes) {
        auto original = static_cast<std::size_t>(std::find(perm.begin(), perm.end(), v) - perm.begin());
        m |= oracle::Mask{1} << original;
      }
      back.push_back(m);
    }
    auto expected = masks(base);
    std::sort(back.begin(), back.end());
    std::sort(expected.begin(), expected.end());
    CHECK(back == expected);
  }
}

TEST_CASE("island_hubs") {
  // Members 1..4 all point at member 0.
  std::vector<Arc> arcs;
  for (NodeIndex s = 1; s <= 4; ++s) arcs.push_back({s, 0, 0.9});
  arcs.push_back({0, 5, 1.0});  // to a non-member
  auto g = share(6, arcs);
  std::vector<NodeIndex> members{0, 1, 2, 3, 4};
  auto hubs = island_hubs(members, g, 3);
  REQUIRE(hubs.size() == 3);
  CHECK(hubs[0].node == 0);
  CHECK(hubs[0].in_degree == 4);
  CHECK(hubs[1].node == 1);
  CHECK(hubs[1].in_degree == 0);

  auto pair_net = share(2, {{0, 1, 0.5}});
  std::vector<NodeIndex> pair{0, 1};
  auto pair_hubs = island_hubs(pair, pair_net, 5);
  REQUIRE(pair_hubs.size() == 2);
  CHECK(pair_hubs[0] == Hub{1, pair_net.nodes()[1], 1});
  CHECK(pair_hubs[1] == Hub{0, pair_net.nodes()[0], 0});

  CHECK_THROWS_AS(island_hubs(pair, pair_net, 0), ParameterError);
}

TEST_CASE("island_hubs matches a naive recount") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 8;
    std::vector<Arc> arcs;
    for (NodeIndex s = 0; s < n; ++s)
      for (NodeIndex t = 0; t < n; ++t)
        if (s != t && rng() % 4 == 0) arcs.push_back({s, t, 0.1});
    auto g = share(n, arcs);
    std::vector<NodeIndex> members;
    for (NodeIndex v = 0; v < n; ++v)
      if (rng() % 2) members.push_back(v);
    if (members.empty()) members.push_back(0);
    auto hubs = island_hubs(members, g, n);
    REQUIRE(hubs.size() == members.size());
    for (std::size_t r = 0; r < hubs.size(); ++r) {
      std::size_t naive = 0;
      for (const auto& a : arcs) {
        bool src_in = std::find(members.begin(), members.end(), a.source) != members.end();
        naive += (src_in && a.target == hubs[r].node) ? 1 : 0;
      }
      CHECK(hubs[r].in_degree == naive);
      if (r > 0) {
        bool ordered = hubs[r - 1].in_degree > hubs[r].in_degree ||
                       (hubs[r - 1].in_degree == hubs[r].in_degree && hubs[r - 1].node < hubs[r].node);
        CHECK(ordered);
      }
    }
  }
}

TEST_CASE("decompose reports residual nodes") {
  // Two disjoint pairs plus an isolated node.
  auto g = share(5, {{0, 1, 0.9}, {2, 3, 0.6}});
  auto d = decompose(g, SymmetrizeRule::max);
  REQUIRE(d.islands.size() == 2);
  CHECK(d.residual == std::vector<NodeIndex>{4});
  CHECK(d.islands[0].hubs.front().node == 1);
  CHECK(d.islands[0].hubs.size() == 2);
}

TEST_SUITE_END();
