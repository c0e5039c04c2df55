#include "wtw/islands.hpp"

#include <algorithm>
#include <string>

#include "wtw/errors.hpp"

namespace wtw {

std::vector<std::size_t> MergeDendrogram::roots() const {
  std::vector<std::size_t> out;
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].parent == npos) out.push_back(id);
  }
  return out;
}

std::vector<NodeIndex> MergeDendrogram::members(std::size_t id) const {
  std::vector<NodeIndex> out;
  std::vector<std::size_t> stack{id};
  while (!stack.empty()) {
    std::size_t cur = stack.back();
    stack.pop_back();
    if (is_leaf(cur)) {
      out.push_back(cur);
    } else {
      stack.push_back(nodes_[cur].left);
      stack.push_back(nodes_[cur].right);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const MergeDendrogram& a, const MergeDendrogram& b) {
  if (a.leaf_count_ != b.leaf_count_ || a.nodes_.size() != b.nodes_.size()) return false;
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const auto& x = a.nodes_[i];
    const auto& y = b.nodes_[i];
    if (x.left != y.left || x.right != y.right || x.parent != y.parent ||
        x.merge_weight != y.merge_weight || x.size != y.size) {
      return false;
    }
  }
  return true;
}

MergeDendrogram build_dendrogram(const UndirectedWeighted& g) {
  const std::size_t n = g.node_count();
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  std::vector<MergeDendrogram::Node> nodes(n);
  nodes.reserve(2 * n);
  UnionFind uf(n);
  // Dendrogram node currently representing each union-find root.
  std::vector<std::size_t> top(n);
  for (std::size_t i = 0; i < n; ++i) top[i] = i;

  for (const auto& e : edges) {
    std::size_t ru = uf.find(e.u);
    std::size_t rv = uf.find(e.v);
    if (ru == rv) continue;
    std::size_t left = top[ru];
    std::size_t right = top[rv];
    if (left > right) std::swap(left, right);
    std::size_t id = nodes.size();
    MergeDendrogram::Node merged;
    merged.left = left;
    merged.right = right;
    merged.merge_weight = e.weight;
    merged.size = nodes[left].size + nodes[right].size;
    nodes.push_back(merged);
    nodes[left].parent = id;
    nodes[right].parent = id;
    uf.unite(ru, rv);
    top[uf.find(ru)] = id;
  }
  return MergeDendrogram(n, std::move(nodes));
}

namespace {

double boundary_of(const UndirectedWeighted& g, const std::vector<char>& inside) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& e : g.edges()) {
    if (inside[e.u] != inside[e.v]) best = std::max(best, e.weight);
  }
  return best;
}

}  // namespace

std::vector<Island> extract_islands(const MergeDendrogram& d, const UndirectedWeighted& g,
                                    std::size_t min_size, std::size_t max_size) {
  if (min_size < 2) throw ParameterError("minimum island size must be at least 2");
  if (min_size > max_size) {
    throw ParameterError("minimum island size exceeds maximum island size");
  }
  if (d.leaf_count() != g.node_count()) {
    throw ParameterError("dendrogram does not match graph");
  }

  std::vector<std::size_t> chosen;
  std::vector<std::size_t> stack = d.roots();
  std::reverse(stack.begin(), stack.end());
  while (!stack.empty()) {
    std::size_t id = stack.back();
    stack.pop_back();
    if (d.is_leaf(id)) continue;
    const auto& node = d.node(id);
    double absorbed_at = node.parent == MergeDendrogram::npos
                             ? -std::numeric_limits<double>::infinity()
                             : d.node(node.parent).merge_weight;
    // A node's own merge weight is the smallest inside its subtree.
    bool dominant = absorbed_at < node.merge_weight;
    if (dominant && node.size >= min_size && node.size <= max_size) {
      chosen.push_back(id);
      continue;
    }
    if (node.size > min_size) {
      stack.push_back(node.right);
      stack.push_back(node.left);
    }
  }

  std::vector<Island> islands;
  islands.reserve(chosen.size());
  std::vector<char> inside(g.node_count(), 0);
  for (std::size_t id : chosen) {
    Island island;
    island.nodes = d.members(id);
    for (NodeIndex v : island.nodes) {
      island.members.push_back(g.nodes()[v]);
      inside[v] = 1;
    }
    island.support_weight = d.node(id).merge_weight;
    island.boundary_weight = boundary_of(g, inside);
    for (NodeIndex v : island.nodes) inside[v] = 0;
    islands.push_back(std::move(island));
  }
  std::sort(islands.begin(), islands.end(), [](const Island& a, const Island& b) {
    if (a.nodes.size() != b.nodes.size()) return a.nodes.size() > b.nodes.size();
    return a.nodes.front() < b.nodes.front();
  });
  return islands;
}

bool is_island(const UndirectedWeighted& g, std::span<const NodeIndex> members) {
  const std::size_t n = g.node_count();
  std::vector<char> inside(n, 0);
  std::size_t count = 0;
  for (NodeIndex v : members) {
    if (v >= n) throw LookupError("node " + std::to_string(v) + " not in graph");
    if (!inside[v]) ++count;
    inside[v] = 1;
  }
  if (count < 2) throw ParameterError("an island needs at least 2 members");

  std::vector<Edge> internal;
  double boundary = -std::numeric_limits<double>::infinity();
  for (const auto& e : g.edges()) {
    if (inside[e.u] && inside[e.v]) {
      internal.push_back(e);
    } else if (inside[e.u] != inside[e.v]) {
      boundary = std::max(boundary, e.weight);
    }
  }
  std::sort(internal.begin(), internal.end(),
            [](const Edge& a, const Edge& b) { return a.weight > b.weight; });

  UnionFind uf(n);
  std::size_t joins = 0;
  double bottleneck = 0.0;
  for (const auto& e : internal) {
    if (uf.unite(e.u, e.v)) {
      bottleneck = e.weight;
      if (++joins == count - 1) break;
    }
  }
  if (joins != count - 1) return false;
  return bottleneck > boundary;
}

std::vector<Hub> island_hubs(std::span<const NodeIndex> members, const ShareNetwork& g,
                             std::size_t k) {
  if (k == 0) throw ParameterError("hub count must be at least 1");
  const std::size_t n = g.node_count();
  std::vector<char> inside(n, 0);
  for (NodeIndex v : members) {
    if (v >= n) throw LookupError("node " + std::to_string(v) + " not in network");
    inside[v] = 1;
  }
  std::vector<std::size_t> deg(n, 0);
  for (const auto& a : g.arcs()) {
    if (inside[a.source] && inside[a.target]) ++deg[a.target];
  }

  std::vector<Hub> ranked;
  for (NodeIndex v = 0; v < n; ++v) {
    if (inside[v]) ranked.push_back({v, g.nodes()[v], deg[v]});
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const Hub& a, const Hub& b) {
    return a.in_degree > b.in_degree;
  });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

IslandDecomposition decompose(const ShareNetwork& directed, SymmetrizeRule rule,
                              std::size_t min_size, std::size_t max_size) {
  UndirectedWeighted undirected = symmetrize(directed, rule);
  MergeDendrogram d = build_dendrogram(undirected);
  IslandDecomposition out;
  out.islands = extract_islands(d, undirected, min_size, max_size);

  std::vector<char> covered(directed.node_count(), 0);
  for (auto& island : out.islands) {
    island.hubs = island_hubs(island.nodes, directed, island.nodes.size());
    for (NodeIndex v : island.nodes) covered[v] = 1;
  }
  for (NodeIndex v = 0; v < directed.node_count(); ++v) {
    if (!covered[v]) out.residual.push_back(v);
  }
  return out;
}

}  // namespace wtw
