#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "wtw/chronology.hpp"
#include "wtw/flowtable.hpp"
#include "wtw/graph.hpp"

namespace wtw {

enum class OutputFormat { net, dot, json, csv };

std::optional<OutputFormat> parse_output_format(std::string_view name);

struct PipelineConfig {
  std::filesystem::path input;
  DenominatorRule denominator = DenominatorRule::exports;
  double tau = 0.05;
  SymmetrizeRule symmetrize = SymmetrizeRule::max;
  std::size_t min_size = 2;
  std::optional<std::size_t> max_size;  // unbounded when empty
  double jaccard_min = 0.3;
  std::vector<int> years;  // empty = every year in the input
  std::filesystem::path output_dir;
  std::set<OutputFormat> formats{OutputFormat::json};
  bool timeline = true;
  /// Year stamped on a Pajek input, which carries none.
  int pajek_year = 0;
};

/// Throws ParameterError on tau outside [0, 1], min_size < 2,
/// max_size < min_size or jaccard_min outside (0, 1].
void validate(const PipelineConfig& cfg);

/// Normalized (unfiltered) networks, one per selected year, ascending.
/// CSV input goes through parse_flow_csv + normalize; a `.net` input must be
/// a directed share network. Throws IoError if unreadable, ParseError on bad
/// content and ParameterError for requested years absent from the input.
std::vector<ShareNetwork> load_networks(const PipelineConfig& cfg);

std::vector<ShareNetwork> select_years(const FlowPanel& panel, const PipelineConfig& cfg);

struct YearResult {
  ShareNetwork normalized;
  ShareNetwork filtered;
  Snapshot snapshot;
};

struct PipelineResult {
  std::vector<YearResult> years;
  std::vector<Snapshot> snapshots;
  IslandTimeline timeline;
  std::string report;  // JSON
  std::vector<std::filesystem::path> written;
};

/// Filter, decompose and (when cfg.timeline) chain the given networks.
/// Years are processed concurrently; the timeline runs after all of them.
PipelineResult analyze(std::vector<ShareNetwork> normalized, const PipelineConfig& cfg);

/// load_networks + analyze + write every requested artifact into
/// cfg.output_dir:
///
///   net   <year>.normalized.net, <year>.filtered.net
///   dot   <year>.dot
///   json  report.json
///   csv   hubs.csv
///
/// Throws IoError naming the file on any write failure.
PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace wtw
