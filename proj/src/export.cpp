#include "wtw/export.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "wtw/errors.hpp"

namespace wtw {

namespace {

std::string dot_id(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void write_dot(const Snapshot& snapshot, const ShareNetwork& g, std::ostream& out) {
  if (snapshot.year != g.year()) {
    throw ParameterError("snapshot and network years differ");
  }
  auto nodes = g.nodes();
  std::string buf = "digraph " + dot_id("wtw_" + std::to_string(g.year())) + " {\n";
  buf += "  node [shape=ellipse];\n";

  std::vector<char> placed(nodes.size(), 0);
  for (std::size_t i = 0; i < snapshot.islands.size(); ++i) {
    const Island& island = snapshot.islands[i];
    buf += "  subgraph " + dot_id("cluster_" + std::to_string(i)) + " {\n";
    buf += "    label=" + dot_id("island " + std::to_string(i)) + ";\n";
    for (std::size_t m = 0; m < island.nodes.size(); ++m) {
      NodeIndex v = island.nodes[m];
      if (v < placed.size()) placed[v] = 1;
      buf += "    " + dot_id(island.members[m].code);
      if (!island.hubs.empty() && island.hubs.front().node == v) {
        buf += " [hub=true, peripheries=2, style=bold]";
      }
      buf += ";\n";
    }
    buf += "  }\n";
  }
  for (NodeIndex v = 0; v < nodes.size(); ++v) {
    if (!placed[v]) buf += "  " + dot_id(nodes[v].code) + ";\n";
  }

  char weight[32];
  for (const auto& a : g.arcs()) {
    std::snprintf(weight, sizeof weight, "%.3f", a.weight);
    buf += "  " + dot_id(nodes[a.source].code) + " -> " + dot_id(nodes[a.target].code) +
           " [label=" + dot_id(weight) + "];\n";
  }
  buf += "}\n";

  out << buf;
  out.flush();
  if (!out) throw IoError("failed writing DOT output");
}

std::string_view to_string(DenominatorRule rule) {
  return rule == DenominatorRule::exports ? "exports" : "both";
}

std::string_view to_string(SymmetrizeRule rule) {
  switch (rule) {
    case SymmetrizeRule::max: return "max";
    case SymmetrizeRule::sum: return "sum";
    case SymmetrizeRule::min: return "min";
  }
  return "max";
}

std::string report_json(const ReportParameters& params, std::span<const Snapshot> snapshots,
                        const IslandTimeline& timeline) {
  using json = nlohmann::ordered_json;

  json root;
  root["parameters"] = {
      {"denominator", to_string(params.denominator)},
      {"tau", params.tau},
      {"symmetrize", to_string(params.symmetrize)},
      {"min_size", params.min_size},
      {"max_size", params.max_size == 0 ? json(nullptr) : json(params.max_size)},
      {"jaccard_min", params.jaccard_min},
  };

  auto event_json = [](const IslandEvent& e) {
    json j;
    j["kind"] = to_string(e.kind);
    j["from_year"] = e.from_year;
    j["from"] = e.from ? json(*e.from) : json(nullptr);
    j["to_year"] = e.to_year;
    j["to"] = e.to ? json(*e.to) : json(nullptr);
    j["jaccard"] = e.jaccard;
    return j;
  };

  json years = json::array();
  for (const auto& s : snapshots) {
    json y;
    y["year"] = s.year;
    json islands = json::array();
    for (const auto& island : s.islands) {
      json j;
      json members = json::array();
      for (const auto& m : island.members) members.push_back(m.code);
      j["members"] = std::move(members);
      j["support_weight"] = island.support_weight;
      j["boundary_weight"] =
          std::isinf(island.boundary_weight) ? json(nullptr) : json(island.boundary_weight);
      json hubs = json::array();
      for (std::size_t r = 0; r < island.hubs.size(); ++r) {
        hubs.push_back({{"country", island.hubs[r].country.code},
                        {"in_degree", island.hubs[r].in_degree},
                        {"rank", r + 1}});
      }
      j["hubs"] = std::move(hubs);
      islands.push_back(std::move(j));
    }
    y["islands"] = std::move(islands);
    json residual = json::array();
    for (const auto& c : s.residual) residual.push_back(c.code);
    y["residual"] = std::move(residual);
    json events = json::array();
    for (const auto& e : timeline.events) {
      if (e.to_year == s.year) events.push_back(event_json(e));
    }
    y["timeline"] = std::move(events);
    years.push_back(std::move(y));
  }
  root["years"] = std::move(years);

  json chains = json::array();
  for (const auto& chain : timeline.chains) {
    json c = json::array();
    for (const auto& link : chain) c.push_back({{"year", link.year}, {"island", link.island}});
    chains.push_back(std::move(c));
  }
  root["chains"] = std::move(chains);
  return root.dump(2) + "\n";
}

void write_hub_csv(std::span<const Snapshot> snapshots, std::ostream& out) {
  std::string buf = "year,country,island_id,in_degree,hub_rank\n";
  for (const auto& s : snapshots) {
    for (std::size_t i = 0; i < s.islands.size(); ++i) {
      const auto& hubs = s.islands[i].hubs;
      for (std::size_t r = 0; r < hubs.size(); ++r) {
        buf += std::to_string(s.year) + "," + hubs[r].country.code + "," + std::to_string(i) +
               "," + std::to_string(hubs[r].in_degree) + "," + std::to_string(r + 1) + "\n";
      }
    }
  }
  out << buf;
  out.flush();
  if (!out) throw IoError("failed writing hub table");
}

}  // namespace wtw
