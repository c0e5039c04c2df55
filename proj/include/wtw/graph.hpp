#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wtw/country.hpp"
#include "wtw/flowtable.hpp"

namespace wtw {

using NodeIndex = std::size_t;

struct Arc {
  NodeIndex source;
  NodeIndex target;
  double weight;

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct Edge {
  NodeIndex u;  // u < v
  NodeIndex v;
  double weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed network of trade shares for one year.
///
/// Arcs are kept sorted by (source, target). The constructor rejects
/// self-arcs, duplicate arcs, weights outside (0, 1] and nodes whose outgoing
/// weights sum above 1 + 1e-9 (std::invalid_argument).
class ShareNetwork {
 public:
  ShareNetwork() = default;
  ShareNetwork(int year, std::vector<CountryId> nodes, std::vector<Arc> arcs);

  int year() const noexcept { return year_; }
  std::span<const CountryId> nodes() const noexcept { return nodes_; }
  std::span<const Arc> arcs() const noexcept { return arcs_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  /// Arcs leaving `v`, contiguous thanks to the sort order.
  std::span<const Arc> out_arcs(NodeIndex v) const;

  friend bool operator==(const ShareNetwork&, const ShareNetwork&) = default;

 private:
  int year_ = 0;
  std::vector<CountryId> nodes_;
  std::vector<Arc> arcs_;
};

/// Undirected weighted graph, edges sorted by (u, v) with u < v, weights
/// positive and finite, at most one edge per pair.
class UndirectedWeighted {
 public:
  UndirectedWeighted() = default;
  UndirectedWeighted(int year, std::vector<CountryId> nodes, std::vector<Edge> edges);

  int year() const noexcept { return year_; }
  std::span<const CountryId> nodes() const noexcept { return nodes_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  friend bool operator==(const UndirectedWeighted&, const UndirectedWeighted&) = default;

 private:
  int year_ = 0;
  std::vector<CountryId> nodes_;
  std::vector<Edge> edges_;
};

enum class DenominatorRule { exports, exports_plus_imports };
enum class SymmetrizeRule { max, sum, min };

/// Trade-share network: weight(i -> j) = flow(i, j) / denominator(i).
/// Nodes follow the table's country registry.
ShareNetwork normalize(const FlowTable& table,
                       DenominatorRule rule = DenominatorRule::exports);

/// Drops arcs with weight strictly below `tau`; nodes are kept.
/// Throws ParameterError when tau is outside [0, 1].
ShareNetwork threshold_filter(const ShareNetwork& g, double tau);

UndirectedWeighted symmetrize(const ShareNetwork& g,
                              SymmetrizeRule rule = SymmetrizeRule::max);

/// Throws LookupError for an unknown node.
std::size_t in_degree(const ShareNetwork& g, NodeIndex v);
std::vector<std::size_t> in_degrees(const ShareNetwork& g);

/// Weakly connected components; members ascending, components ordered by
/// their smallest member.
using Partition = std::vector<std::vector<NodeIndex>>;
Partition weak_components(const ShareNetwork& g);
Partition weak_components(const UndirectedWeighted& g);

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);

  std::size_t find(std::size_t x);
  /// Returns false when already joined.
  bool unite(std::size_t a, std::size_t b);
  std::size_t size_of(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace wtw
