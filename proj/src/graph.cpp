#include "wtw/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "wtw/errors.hpp"

namespace wtw {

ShareNetwork::ShareNetwork(int year, std::vector<CountryId> nodes,
                           std::vector<Arc> arcs)
    : year_(year), nodes_(std::move(nodes)), arcs_(std::move(arcs)) {
  const std::size_t n = nodes_.size();
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  std::vector<double> out_sum(n, 0.0);
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    if (a.source >= n || a.target >= n) {
      throw std::invalid_argument("arc endpoint out of range");
    }
    if (a.source == a.target) throw std::invalid_argument("self-arc");
    if (!(a.weight > 0.0 && a.weight <= 1.0)) {
      throw std::invalid_argument("arc weight outside (0, 1]");
    }
    if (i > 0 && arcs_[i - 1].source == a.source && arcs_[i - 1].target == a.target) {
      throw std::invalid_argument("duplicate arc");
    }
    out_sum[a.source] += a.weight;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (out_sum[v] > 1.0 + 1e-9) {
      throw std::invalid_argument("outgoing weights of node " + std::to_string(v + 1) +
                                  " sum above 1");
    }
  }
}

std::span<const Arc> ShareNetwork::out_arcs(NodeIndex v) const {
  auto lo = std::lower_bound(arcs_.begin(), arcs_.end(), v,
                             [](const Arc& a, NodeIndex s) { return a.source < s; });
  auto hi = std::upper_bound(lo, arcs_.end(), v,
                             [](NodeIndex s, const Arc& a) { return s < a.source; });
  return {lo, hi};
}

UndirectedWeighted::UndirectedWeighted(int year, std::vector<CountryId> nodes,
                                       std::vector<Edge> edges)
    : year_(year), nodes_(std::move(nodes)), edges_(std::move(edges)) {
  const std::size_t n = nodes_.size();
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("edge weight must be positive and finite");
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v) {
      throw std::invalid_argument("duplicate edge");
    }
  }
}

ShareNetwork normalize(const FlowTable& table, DenominatorRule rule) {
  std::vector<Arc> arcs;
  arcs.reserve(table.flows().size());
  for (const auto& f : table.flows()) {
    double denom = table.total_outflow(f.reporter);
    if (rule == DenominatorRule::exports_plus_imports) {
      denom += table.total_inflow(f.reporter);
    }
    if (denom <= 0.0) continue;
    // Rounding can push a lone share a hair past 1.
    double w = std::min(f.value / denom, 1.0);
    if (w > 0.0) arcs.push_back({f.reporter, f.partner, w});
  }
  auto countries = table.countries();
  return ShareNetwork(table.year(), {countries.begin(), countries.end()},
                      std::move(arcs));
}

ShareNetwork threshold_filter(const ShareNetwork& g, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw ParameterError("threshold must lie in [0, 1], got " + std::to_string(tau));
  }
  std::vector<Arc> kept;
  kept.reserve(g.arcs().size());
  for (const auto& a : g.arcs()) {
    if (!(a.weight < tau)) kept.push_back(a);
  }
  auto nodes = g.nodes();
  return ShareNetwork(g.year(), {nodes.begin(), nodes.end()}, std::move(kept));
}

UndirectedWeighted symmetrize(const ShareNetwork& g, SymmetrizeRule rule) {
  struct Half {
    NodeIndex u, v;
    double weight;
  };
  std::vector<Half> halves;
  halves.reserve(g.arcs().size());
  for (const auto& a : g.arcs()) {
    halves.push_back({std::min(a.source, a.target), std::max(a.source, a.target), a.weight});
  }
  std::sort(halves.begin(), halves.end(), [](const Half& a, const Half& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < halves.size();) {
    std::size_t j = i + 1;
    while (j < halves.size() && halves[j].u == halves[i].u && halves[j].v == halves[i].v) ++j;
    const bool both = (j - i) == 2;
    double w1 = halves[i].weight;
    double w2 = both ? halves[i + 1].weight : 0.0;
    double w = 0.0;
    switch (rule) {
      case SymmetrizeRule::max: w = std::max(w1, w2); break;
      case SymmetrizeRule::sum: w = w1 + w2; break;
      case SymmetrizeRule::min: w = both ? std::min(w1, w2) : 0.0; break;
    }
    if (w > 0.0) edges.push_back({halves[i].u, halves[i].v, w});
    i = j;
  }
  auto nodes = g.nodes();
  return UndirectedWeighted(g.year(), {nodes.begin(), nodes.end()}, std::move(edges));
}

std::size_t in_degree(const ShareNetwork& g, NodeIndex v) {
  if (v >= g.node_count()) {
    throw LookupError("node " + std::to_string(v) + " not in network");
  }
  return static_cast<std::size_t>(std::count_if(
      g.arcs().begin(), g.arcs().end(), [v](const Arc& a) { return a.target == v; }));
}

std::vector<std::size_t> in_degrees(const ShareNetwork& g) {
  std::vector<std::size_t> deg(g.node_count(), 0);
  for (const auto& a : g.arcs()) ++deg[a.target];
  return deg;
}

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

namespace {

template <typename Links>
Partition components_from(std::size_t n, const Links& links) {
  UnionFind uf(n);
  for (const auto& [a, b] : links) uf.unite(a, b);
  std::vector<std::size_t> slot(n, n);
  Partition parts;
  for (NodeIndex v = 0; v < n; ++v) {
    std::size_t root = uf.find(v);
    if (slot[root] == n) {
      slot[root] = parts.size();
      parts.emplace_back();
    }
    parts[slot[root]].push_back(v);
  }
  return parts;
}

}  // namespace

Partition weak_components(const ShareNetwork& g) {
  std::vector<std::pair<NodeIndex, NodeIndex>> links;
  links.reserve(g.arcs().size());
  for (const auto& a : g.arcs()) links.emplace_back(a.source, a.target);
  return components_from(g.node_count(), links);
}

Partition weak_components(const UndirectedWeighted& g) {
  std::vector<std::pair<NodeIndex, NodeIndex>> links;
  links.reserve(g.edges().size());
  for (const auto& e : g.edges()) links.emplace_back(e.u, e.v);
  return components_from(g.node_count(), links);
}

}  // namespace wtw
