#include "wtw/chronology.hpp"

#include <algorithm>
#include <string>

#include "wtw/errors.hpp"

namespace wtw {

Snapshot make_snapshot(const ShareNetwork& filtered, SymmetrizeRule rule,
                       std::size_t min_size, std::size_t max_size) {
  IslandDecomposition d = decompose(filtered, rule, min_size, max_size);
  Snapshot s;
  s.year = filtered.year();
  s.islands = std::move(d.islands);
  for (NodeIndex v : d.residual) s.residual.push_back(filtered.nodes()[v]);
  std::sort(s.residual.begin(), s.residual.end());
  return s;
}

namespace {

std::vector<CountryId> sorted_members(const Island& island) {
  std::vector<CountryId> m = island.members;
  std::sort(m.begin(), m.end());
  return m;
}

std::size_t overlap(std::span<const CountryId> a, std::span<const CountryId> b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

struct Scored {
  std::vector<std::vector<CountryId>> from;
  std::vector<std::vector<CountryId>> to;
};

Scored members_of(const Snapshot& a, const Snapshot& b) {
  Scored s;
  for (const auto& i : a.islands) s.from.push_back(sorted_members(i));
  for (const auto& i : b.islands) s.to.push_back(sorted_members(i));
  return s;
}

std::vector<IslandMatch> greedy_match(const Scored& m, double jaccard_min) {
  if (!(jaccard_min > 0.0 && jaccard_min <= 1.0)) {
    throw ParameterError("jaccard_min must lie in (0, 1], got " +
                         std::to_string(jaccard_min));
  }
  std::vector<IslandMatch> candidates;
  for (std::size_t i = 0; i < m.from.size(); ++i) {
    for (std::size_t j = 0; j < m.to.size(); ++j) {
      double score = jaccard(m.from[i], m.to[j]);
      if (score >= jaccard_min) candidates.push_back({i, j, score});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](const IslandMatch& x, const IslandMatch& y) {
              if (x.jaccard != y.jaccard) return x.jaccard > y.jaccard;
              if (x.from != y.from) return m.from[x.from].front() < m.from[y.from].front();
              return m.to[x.to].front() < m.to[y.to].front();
            });

  std::vector<char> used_from(m.from.size(), 0);
  std::vector<char> used_to(m.to.size(), 0);
  std::vector<IslandMatch> out;
  for (const auto& c : candidates) {
    if (used_from[c.from] || used_to[c.to]) continue;
    used_from[c.from] = used_to[c.to] = 1;
    out.push_back(c);
  }
  return out;
}

// Counterpart among `others` holding a strict majority of `mine`, restricted
// to islands flagged in `eligible`.
std::optional<std::size_t> majority_holder(const std::vector<CountryId>& mine,
                                           const std::vector<std::vector<CountryId>>& others,
                                           const std::vector<char>& eligible) {
  for (std::size_t j = 0; j < others.size(); ++j) {
    if (eligible[j] && 2 * overlap(mine, others[j]) > mine.size()) return j;
  }
  return std::nullopt;
}

}  // namespace

double jaccard(std::span<const CountryId> a, std::span<const CountryId> b) {
  std::size_t both = overlap(a, b);
  std::size_t either = a.size() + b.size() - both;
  return either == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(either);
}

std::vector<IslandMatch> match_islands(const Snapshot& a, const Snapshot& b,
                                       double jaccard_min) {
  if (!(a.year < b.year)) throw ParameterError("snapshots must be in increasing year order");
  return greedy_match(members_of(a, b), jaccard_min);
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::formed: return "formed";
    case EventKind::continued: return "continued";
    case EventKind::merged_into: return "merged_into";
    case EventKind::split_from: return "split_from";
    case EventKind::dissolved: return "dissolved";
  }
  return "unknown";
}

std::vector<IslandEvent> transition_events(const Snapshot& a, const Snapshot& b,
                                           double jaccard_min) {
  if (!(a.year < b.year)) throw ParameterError("snapshots must be in increasing year order");
  Scored m = members_of(a, b);
  auto matches = greedy_match(m, jaccard_min);

  std::vector<char> from_matched(m.from.size(), 0);
  std::vector<char> to_matched(m.to.size(), 0);
  std::vector<IslandEvent> events;
  for (const auto& match : matches) {
    from_matched[match.from] = to_matched[match.to] = 1;
    events.push_back({EventKind::continued, a.year, b.year, match.from, match.to, match.jaccard});
  }
  for (std::size_t i = 0; i < m.from.size(); ++i) {
    if (from_matched[i]) continue;
    if (auto j = majority_holder(m.from[i], m.to, to_matched)) {
      events.push_back({EventKind::merged_into, a.year, b.year, i, *j,
                        jaccard(m.from[i], m.to[*j])});
    } else {
      events.push_back({EventKind::dissolved, a.year, b.year, i, std::nullopt, 0.0});
    }
  }
  for (std::size_t j = 0; j < m.to.size(); ++j) {
    if (to_matched[j]) continue;
    if (auto i = majority_holder(m.to[j], m.from, from_matched)) {
      events.push_back({EventKind::split_from, a.year, b.year, *i, j,
                        jaccard(m.from[*i], m.to[j])});
    } else {
      events.push_back({EventKind::formed, a.year, b.year, std::nullopt, j, 0.0});
    }
  }
  return events;
}

IslandTimeline build_timeline(std::span<const Snapshot> snapshots, double jaccard_min) {
  IslandTimeline t;
  if (snapshots.empty()) return t;
  for (std::size_t s = 1; s < snapshots.size(); ++s) {
    if (!(snapshots[s - 1].year < snapshots[s].year)) {
      throw ParameterError("snapshots must be in strictly increasing year order");
    }
  }

  // Chain currently ending at each island of the previous snapshot.
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < snapshots[0].islands.size(); ++i) {
    open.push_back(t.chains.size());
    t.chains.push_back({{snapshots[0].year, i}});
  }

  for (std::size_t s = 1; s < snapshots.size(); ++s) {
    const Snapshot& prev = snapshots[s - 1];
    const Snapshot& cur = snapshots[s];
    auto events = transition_events(prev, cur, jaccard_min);

    std::vector<std::size_t> next(cur.islands.size(), MergeDendrogram::npos);
    for (const auto& e : events) {
      if (e.kind == EventKind::continued) {
        std::size_t chain = open[*e.from];
        t.chains[chain].push_back({cur.year, *e.to});
        next[*e.to] = chain;
      }
    }
    for (std::size_t j = 0; j < next.size(); ++j) {
      if (next[j] == MergeDendrogram::npos) {
        next[j] = t.chains.size();
        t.chains.push_back({{cur.year, j}});
      }
    }
    open = std::move(next);
    t.events.insert(t.events.end(), events.begin(), events.end());
  }
  return t;
}

std::vector<HubRecord> hub_trajectory(std::span<const Snapshot> snapshots,
                                      const CountryId& country) {
  std::vector<HubRecord> out;
  out.reserve(snapshots.size());
  for (const auto& s : snapshots) {
    HubRecord rec{s.year, false, std::nullopt, 0};
    for (const auto& island : s.islands) {
      if (std::find(island.members.begin(), island.members.end(), country) ==
          island.members.end()) {
        continue;
      }
      rec.in_island = true;
      for (std::size_t r = 0; r < island.hubs.size(); ++r) {
        if (island.hubs[r].country == country) {
          rec.hub_rank = r + 1;
          rec.in_degree = island.hubs[r].in_degree;
        }
      }
    }
    out.push_back(rec);
  }
  return out;
}

}  // namespace wtw
