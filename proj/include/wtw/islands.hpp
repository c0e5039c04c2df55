#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "wtw/country.hpp"
#include "wtw/graph.hpp"

namespace wtw {

/// Forest recording the order in which components coalesce when edges are
/// added in decreasing weight order.
///
/// Ids `0 .. leaf_count()-1` are leaves (one per graph node); internal nodes
/// follow in creation order. Each internal node is a binary merge; equal-weight
/// multi-way joins appear as a chain of binary merges sharing one weight.
class MergeDendrogram {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  struct Node {
    std::size_t left = npos;
    std::size_t right = npos;
    std::size_t parent = npos;
    /// Weight of the edge that created this node; +inf for leaves.
    double merge_weight = std::numeric_limits<double>::infinity();
    std::size_t size = 1;
  };

  MergeDendrogram() = default;
  MergeDendrogram(std::size_t leaves, std::vector<Node> nodes)
      : leaf_count_(leaves), nodes_(std::move(nodes)) {}

  std::size_t leaf_count() const noexcept { return leaf_count_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  bool is_leaf(std::size_t id) const noexcept { return id < leaf_count_; }
  const Node& node(std::size_t id) const { return nodes_.at(id); }
  std::span<const Node> nodes() const noexcept { return nodes_; }

  /// Roots in increasing id order, one per weak component.
  std::vector<std::size_t> roots() const;

  /// Leaf ids under `id`, ascending.
  std::vector<NodeIndex> members(std::size_t id) const;

  friend bool operator==(const MergeDendrogram& a, const MergeDendrogram& b);

 private:
  std::size_t leaf_count_ = 0;
  std::vector<Node> nodes_;
};

struct Hub {
  NodeIndex node;
  CountryId country;
  std::size_t in_degree;

  friend bool operator==(const Hub&, const Hub&) = default;
};

struct Island {
  std::vector<NodeIndex> nodes;      // ascending
  std::vector<CountryId> members;    // same order as `nodes`
  /// Weakest link of the island's maximum spanning tree.
  double support_weight = 0.0;
  /// Heaviest edge leaving the island; -inf when none does.
  double boundary_weight = -std::numeric_limits<double>::infinity();
  std::vector<Hub> hubs;
};

/// Kruskal in decreasing weight order, ties broken by (u, v).
MergeDendrogram build_dendrogram(const UndirectedWeighted& g);

/// Maximal dendrogram nodes whose size lies in [min_size, max_size] and whose
/// smallest internal merge weight strictly exceeds the weight at which they
/// are absorbed into their parent. Sorted by descending size, then smallest
/// member. Throws ParameterError when min_size < 2 or min_size > max_size.
std::vector<Island> extract_islands(const MergeDendrogram& d, const UndirectedWeighted& g,
                                    std::size_t min_size = 2,
                                    std::size_t max_size = std::numeric_limits<std::size_t>::max());

/// Declarative island test: members induce a connected subgraph whose
/// maximum-spanning-tree bottleneck exceeds every boundary edge.
/// Throws LookupError for unknown nodes, ParameterError for fewer than 2.
bool is_island(const UndirectedWeighted& g, std::span<const NodeIndex> members);

/// Members ranked by in-degree in the subnetwork they induce; ties go to the
/// lower node index. At most `k` entries.
std::vector<Hub> island_hubs(std::span<const NodeIndex> members, const ShareNetwork& g,
                             std::size_t k);

/// Islands plus every node that belongs to none.
struct IslandDecomposition {
  std::vector<Island> islands;
  std::vector<NodeIndex> residual;
};

/// Full per-year decomposition: symmetrize, dendrogram, extraction and a
/// complete hub ranking for each island. `directed` is the thresholded
/// network.
IslandDecomposition decompose(const ShareNetwork& directed, SymmetrizeRule rule,
                              std::size_t min_size = 2,
                              std::size_t max_size = std::numeric_limits<std::size_t>::max());

}  // namespace wtw
