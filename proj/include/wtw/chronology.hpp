#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wtw/country.hpp"
#include "wtw/islands.hpp"

namespace wtw {

/// Island decomposition of one year's thresholded network.
struct Snapshot {
  int year = 0;
  std::vector<Island> islands;
  std::vector<CountryId> residual;  // sorted
};

Snapshot make_snapshot(const ShareNetwork& filtered, SymmetrizeRule rule,
                       std::size_t min_size = 2,
                       std::size_t max_size = std::numeric_limits<std::size_t>::max());

/// |a ∩ b| / |a ∪ b| over sorted member lists. 0 when both are empty.
double jaccard(std::span<const CountryId> a, std::span<const CountryId> b);

struct IslandMatch {
  std::size_t from;  // island index in the earlier snapshot
  std::size_t to;    // island index in the later snapshot
  double jaccard;

  friend bool operator==(const IslandMatch&, const IslandMatch&) = default;
};

/// Greedy best-first one-to-one matching over pairs with Jaccard >= jaccard_min.
/// Pairs are taken by descending Jaccard, ties by the smaller smallest member
/// of the earlier island, then of the later island.
/// Throws ParameterError unless 0 < jaccard_min <= 1.
std::vector<IslandMatch> match_islands(const Snapshot& a, const Snapshot& b,
                                       double jaccard_min);

enum class EventKind { formed, continued, merged_into, split_from, dissolved };

std::string_view to_string(EventKind kind);

/// One transition between consecutive analysed snapshots.
///
/// `continued` names both islands. `dissolved` and `merged_into` are about an
/// earlier island (`from`); `formed` and `split_from` about a later one (`to`).
/// `merged_into` / `split_from` also carry the counterpart that holds a strict
/// majority of the unmatched island's members and continues itself.
struct IslandEvent {
  EventKind kind;
  int from_year;
  int to_year;
  std::optional<std::size_t> from;
  std::optional<std::size_t> to;
  double jaccard = 0.0;

  friend bool operator==(const IslandEvent&, const IslandEvent&) = default;
};

/// Matches plus one event per island of either snapshot.
std::vector<IslandEvent> transition_events(const Snapshot& a, const Snapshot& b,
                                           double jaccard_min);

struct ChainLink {
  int year;
  std::size_t island;

  friend bool operator==(const ChainLink&, const ChainLink&) = default;
};

/// Chains of matched islands plus every transition event, over snapshots
/// treated as consecutive in the order given.
struct IslandTimeline {
  std::vector<std::vector<ChainLink>> chains;
  std::vector<IslandEvent> events;
};

/// Throws ParameterError when snapshots are not strictly year-increasing.
IslandTimeline build_timeline(std::span<const Snapshot> snapshots, double jaccard_min);

struct HubRecord {
  int year;
  bool in_island;
  std::optional<std::size_t> hub_rank;  // 1-based
  std::size_t in_degree;

  friend bool operator==(const HubRecord&, const HubRecord&) = default;
};

std::vector<HubRecord> hub_trajectory(std::span<const Snapshot> snapshots,
                                      const CountryId& country);

}  // namespace wtw
