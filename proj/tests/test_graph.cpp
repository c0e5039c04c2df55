#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <random>

#include "oracles.hpp"
#include "wtw/errors.hpp"
#include "wtw/flowtable.hpp"
#include "wtw/graph.hpp"
#include "wtw/synthetic.hpp"

using namespace wtw;

namespace {

std::vector<CountryId> names(std::size_t n) {
  std::vector<CountryId> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(synthetic_code(i));
  return out;
}

ShareNetwork net(std::size_t n, std::vector<Arc> arcs) { return ShareNetwork(0, names(n), std::move(arcs)); }

const Arc* find_arc(const ShareNetwork& g, NodeIndex s, NodeIndex t) {
  for (const auto& a : g.arcs())
    if (a.source == s && a.target == t) return &a;
  return nullptr;
}

FlowTable random_table(std::mt19937_64& rng, std::size_t countries, std::size_t rows) {
  FlowTable::Builder b(1999);
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t r = rng() % countries, p = rng() % countries;
    if (r == p) continue;
    b.add(synthetic_code(r), synthetic_code(p), 1.0 + static_cast<double>(rng() % 1000000) / 3.0);
  }
  return b.build();
}

ShareNetwork random_share(std::mt19937_64& rng, std::size_t n) {
  std::vector<Arc> arcs;
  for (NodeIndex s = 0; s < n; ++s) {
    std::vector<double> raw;
    std::vector<NodeIndex> targets;
    for (NodeIndex t = 0; t < n; ++t) {
      if (t != s && rng() % 3 == 0) {
        targets.push_back(t);
        raw.push_back(static_cast<double>(1 + rng() % 100));
      }
    }
    double total = 0.0;
    for (double r : raw) total += r;
    for (std::size_t i = 0; i < raw.size(); ++i) arcs.push_back({s, targets[i], raw[i] / total});
  }
  return net(n, std::move(arcs));
}

}  // namespace

TEST_SUITE_BEGIN("graph");

TEST_CASE("normalize: shares by reporter exports") {
  FlowTable::Builder b(1);
  b.add(CountryId{"AA"}, CountryId{"BB"}, 30);
  b.add(CountryId{"AA"}, CountryId{"CC"}, 70);
  auto g = normalize(b.build());
  REQUIRE(g.arcs().size() == 2);
  CHECK(g.arcs()[0].weight == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(g.arcs()[1].weight == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(g.node_count() == 3);
  CHECK(g.out_arcs(2).empty());
}

TEST_CASE("normalize: single partner gets weight 1") {
  FlowTable::Builder b(1);
  b.add(CountryId{"AA"}, CountryId{"BB"}, 50);
  auto g = normalize(b.build());
  REQUIRE(g.arcs().size() == 1);
  CHECK(g.arcs()[0].weight == 1.0);
}

TEST_CASE("normalize: exports plus imports denominator") {
  FlowTable::Builder b(1);
  b.add(CountryId{"AA"}, CountryId{"BB"}, 30);
  b.add(CountryId{"BB"}, CountryId{"AA"}, 10);
  auto g = normalize(b.build(), DenominatorRule::exports_plus_imports);
  CHECK(find_arc(g, 0, 1)->weight == doctest::Approx(0.75));
  CHECK(find_arc(g, 1, 0)->weight == doctest::Approx(0.25));
}

TEST_CASE("normalize: out-weights sum to one, checked against raw flows") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    auto t = random_table(rng, 10, 40);
    auto g = normalize(t);
    std::map<std::size_t, double> raw;
    for (const auto& f : t.flows()) raw[f.reporter] += f.value;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      double sum = 0.0;
      for (const auto& a : g.out_arcs(v)) {
        sum += a.weight;
        CHECK(a.weight == doctest::Approx(t.flow(g.nodes()[v], g.nodes()[a.target]) / raw[v]).epsilon(1e-12));
      }
      if (g.out_arcs(v).empty()) {
        CHECK(raw.count(v) == 0);
      } else {
        CHECK(std::abs(sum - 1.0) <= 1e-9);
      }
    }
  }
}

TEST_CASE("normalize is scale invariant per reporter") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    auto t = random_table(rng, 8, 30);
    FlowTable::Builder scaled(t.year());
    std::vector<double> factor(t.countries().size());
    for (auto& f : factor) f = std::ldexp(1.0 + static_cast<double>(rng() % 1000) / 7.0, static_cast<int>(rng() % 40) - 20);
    for (const auto& f : t.flows()) {
      scaled.add(t.countries()[f.reporter], t.countries()[f.partner], f.value * factor[f.reporter]);
    }
    auto g1 = normalize(t);
    auto g2 = normalize(scaled.build());
    REQUIRE(g1.arcs().size() == g2.arcs().size());
    for (std::size_t i = 0; i < g1.arcs().size(); ++i) {
      CHECK(std::abs(g1.arcs()[i].weight - g2.arcs()[i].weight) <= 1e-12);
    }
  }
}

TEST_CASE("threshold_filter") {
  auto g = net(3, {{0, 1, 0.3}, {0, 2, 0.04}});
  auto f = threshold_filter(g, 0.05);
  REQUIRE(f.arcs().size() == 1);
  CHECK(f.arcs()[0] == Arc{0, 1, 0.3});
  CHECK(f.node_count() == 3);

  CHECK(threshold_filter(g, 0.0) == g);

  auto edge = net(2, {{0, 1, 0.05}});
  CHECK(threshold_filter(edge, 0.05).arcs().size() == 1);
  auto below = net(2, {{0, 1, 0.049999}});
  CHECK(threshold_filter(below, 0.05).arcs().empty());

  CHECK_THROWS_AS(threshold_filter(g, -0.1), ParameterError);
  CHECK_THROWS_AS(threshold_filter(g, 1.5), ParameterError);
  CHECK_THROWS_AS(threshold_filter(g, std::nan("")), ParameterError);
}

TEST_CASE("threshold monotonicity and idempotence") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = random_share(rng, 8);
    double t1 = static_cast<double>(rng() % 100) / 200.0;
    double t2 = t1 + static_cast<double>(rng() % 100) / 200.0;
    auto f1 = threshold_filter(g, t1);
    auto f2 = threshold_filter(g, t2);
    for (const auto& a : f2.arcs()) CHECK(find_arc(f1, a.source, a.target) != nullptr);
    CHECK(threshold_filter(f1, t1) == f1);
  }
}

TEST_CASE("symmetrize rules") {
  auto g = net(2, {{0, 1, 0.3}, {1, 0, 0.1}});
  auto mx = symmetrize(g, SymmetrizeRule::max);
  REQUIRE(mx.edges().size() == 1);
  CHECK(mx.edges()[0].weight == 0.3);
  auto sm = symmetrize(g, SymmetrizeRule::sum);
  CHECK(sm.edges()[0].weight == doctest::Approx(0.4));
  auto mn = symmetrize(g, SymmetrizeRule::min);
  CHECK(mn.edges()[0].weight == 0.1);

  auto one_way = net(2, {{0, 1, 0.3}});
  CHECK(symmetrize(one_way, SymmetrizeRule::min).edges().empty());
  CHECK(symmetrize(one_way, SymmetrizeRule::max).edges()[0] == Edge{0, 1, 0.3});
  auto reverse = net(2, {{1, 0, 0.2}});
  CHECK(symmetrize(reverse, SymmetrizeRule::sum).edges()[0] == Edge{0, 1, 0.2});
}

TEST_CASE("symmetrize bounds hold on random graphs") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = random_share(rng, 7);
    auto mx = symmetrize(g, SymmetrizeRule::max);
    auto mn = symmetrize(g, SymmetrizeRule::min);
    for (const auto& e : mx.edges()) {
      for (auto* a : {find_arc(g, e.u, e.v), find_arc(g, e.v, e.u)}) {
        if (a) CHECK(e.weight >= a->weight);
      }
    }
    for (const auto& e : mn.edges()) {
      REQUIRE(find_arc(g, e.u, e.v));
      REQUIRE(find_arc(g, e.v, e.u));
      CHECK(e.weight <= find_arc(g, e.u, e.v)->weight);
      CHECK(e.weight <= find_arc(g, e.v, e.u)->weight);
    }
  }
}

TEST_CASE("in_degree") {
  std::vector<Arc> star;
  for (NodeIndex s = 1; s <= 5; ++s) star.push_back({s, 0, 1.0});
  auto g = net(7, star);
  CHECK(in_degree(g, 0) == 5);
  CHECK(in_degree(g, 6) == 0);
  CHECK_THROWS_AS(in_degree(g, 7), LookupError);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    auto r = random_share(rng, 9);
    std::size_t total = 0;
    auto all = in_degrees(r);
    for (NodeIndex v = 0; v < r.node_count(); ++v) {
      std::size_t naive = 0;
      for (const auto& a : r.arcs()) naive += a.target == v ? 1 : 0;
      CHECK(in_degree(r, v) == naive);
      CHECK(all[v] == naive);
      total += naive;
    }
    CHECK(total == r.arcs().size());
  }
}

TEST_CASE("weak components") {
  UndirectedWeighted tri(0, names(6), {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}});
  auto parts = weak_components(tri);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == std::vector<NodeIndex>{0, 1, 2});
  CHECK(parts[1] == std::vector<NodeIndex>{3, 4, 5});

  UndirectedWeighted empty(0, names(4), {});
  CHECK(weak_components(empty).size() == 4);

  auto directed = net(3, {{2, 0, 0.5}});
  auto dp = weak_components(directed);
  REQUIRE(dp.size() == 2);
  CHECK(dp[0] == std::vector<NodeIndex>{0, 2});
  CHECK(dp[1] == std::vector<NodeIndex>{1});
}

TEST_CASE("weak components agree with transitive closure") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    auto small = oracle::random_graph(rng, 10, 12);
    CHECK(weak_components(oracle::to_graph(small)) == oracle::components(small));
  }
}

TEST_CASE("graph invariants are enforced") {
  CHECK_THROWS_AS(net(2, {{0, 0, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(net(2, {{0, 1, 0.5}, {0, 1, 0.2}}), std::invalid_argument);
  CHECK_THROWS_AS(net(2, {{0, 1, 1.5}}), std::invalid_argument);
  CHECK_THROWS_AS(net(2, {{0, 1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(net(3, {{0, 1, 0.7}, {0, 2, 0.7}}), std::invalid_argument);
  CHECK_THROWS_AS(net(2, {{0, 2, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(UndirectedWeighted(0, names(2), {{0, 1, 1}, {1, 0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(UndirectedWeighted(0, names(2), {{0, 1, -1}}), std::invalid_argument);
}

TEST_SUITE_END();
