#pragma once

#include <ostream>
#include <span>
#include <string>

#include "wtw/chronology.hpp"
#include "wtw/graph.hpp"

namespace wtw {

/// Graphviz digraph: one `cluster_<i>` subgraph per island, residual nodes at
/// top level, every arc of `g` labelled with its weight to 3 decimals. Each
/// island's rank-1 hub gets `hub=true` and a double outline.
/// Throws ParameterError when the years differ, IoError on sink failure.
void write_dot(const Snapshot& snapshot, const ShareNetwork& g, std::ostream& out);

struct ReportParameters {
  DenominatorRule denominator = DenominatorRule::exports;
  double tau = 0.05;
  SymmetrizeRule symmetrize = SymmetrizeRule::max;
  std::size_t min_size = 2;
  std::size_t max_size = 0;  // 0 = unbounded
  double jaccard_min = 0.3;
};

std::string_view to_string(DenominatorRule rule);
std::string_view to_string(SymmetrizeRule rule);

/// JSON report with a fixed key order:
///
///     {"parameters": {...},
///      "years": [{"year", "islands": [{"members", "support_weight",
///                 "boundary_weight", "hubs"}], "residual", "timeline"}],
///      "chains": [[{"year", "island"}]]}
///
/// `timeline` under a year lists the events leading into it. A boundary of
/// -inf (whole component) is written as null.
std::string report_json(const ReportParameters& params, std::span<const Snapshot> snapshots,
                        const IslandTimeline& timeline);

/// `year,country,island_id,in_degree,hub_rank`, one row per island member.
void write_hub_csv(std::span<const Snapshot> snapshots, std::ostream& out);

}  // namespace wtw
