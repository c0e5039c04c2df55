#include "wtw/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "wtw/errors.hpp"
#include "wtw/export.hpp"
#include "wtw/pajek.hpp"

namespace wtw {

std::optional<OutputFormat> parse_output_format(std::string_view name) {
  if (name == "net") return OutputFormat::net;
  if (name == "dot") return OutputFormat::dot;
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  return std::nullopt;
}

void validate(const PipelineConfig& cfg) {
  if (!(cfg.tau >= 0.0 && cfg.tau <= 1.0)) {
    throw ParameterError("--tau must lie in [0, 1]");
  }
  if (cfg.min_size < 2) throw ParameterError("--min-size must be at least 2");
  if (cfg.max_size && *cfg.max_size < cfg.min_size) {
    throw ParameterError("--max-size must not be below --min-size");
  }
  if (!(cfg.jaccard_min > 0.0 && cfg.jaccard_min <= 1.0)) {
    throw ParameterError("--jaccard-min must lie in (0, 1]");
  }
}

std::vector<ShareNetwork> select_years(const FlowPanel& panel, const PipelineConfig& cfg) {
  std::vector<ShareNetwork> out;
  if (cfg.years.empty()) {
    for (const auto& [year, table] : panel) out.push_back(normalize(table, cfg.denominator));
    return out;
  }
  std::set<int> wanted(cfg.years.begin(), cfg.years.end());
  for (int year : wanted) {
    auto it = panel.find(year);
    if (it == panel.end()) {
      throw ParameterError("year " + std::to_string(year) + " not present in input");
    }
    out.push_back(normalize(it->second, cfg.denominator));
  }
  return out;
}

std::vector<ShareNetwork> load_networks(const PipelineConfig& cfg) {
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) throw IoError("cannot open input file " + cfg.input.string());

  if (cfg.input.extension() == ".net") {
    PajekGraph g;
    try {
      g = read_pajek(in, cfg.pajek_year);
    } catch (const ParseError& e) {
      throw ParseError(e.line(), cfg.input.string() + ": " + e.what());
    }
    if (!std::holds_alternative<ShareNetwork>(g)) {
      throw ParseError(0, cfg.input.string() +
                              ": undirected *Edges network; a directed *Arcs share network "
                              "is required");
    }
    if (!cfg.years.empty() &&
        std::find(cfg.years.begin(), cfg.years.end(), cfg.pajek_year) == cfg.years.end()) {
      throw ParameterError("Pajek input carries only year " + std::to_string(cfg.pajek_year));
    }
    return {std::get<ShareNetwork>(std::move(g))};
  }

  FlowPanel panel;
  try {
    panel = parse_flow_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), cfg.input.string() + ": " + e.what());
  } catch (const EmptyInputError& e) {
    throw EmptyInputError(cfg.input.string() + ": " + e.what());
  }
  return select_years(panel, cfg);
}

PipelineResult analyze(std::vector<ShareNetwork> normalized, const PipelineConfig& cfg) {
  validate(cfg);
  std::sort(normalized.begin(), normalized.end(),
            [](const ShareNetwork& a, const ShareNetwork& b) { return a.year() < b.year(); });
  const std::size_t max_size = cfg.max_size.value_or(std::numeric_limits<std::size_t>::max());

  PipelineResult result;
  result.years.resize(normalized.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < normalized.size(); i = next++) {
      try {
        YearResult& r = result.years[i];
        r.filtered = threshold_filter(normalized[i], cfg.tau);
        r.snapshot = make_snapshot(r.filtered, cfg.symmetrize, cfg.min_size, max_size);
        r.normalized = std::move(normalized[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1,
                                                 std::max<std::size_t>(normalized.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& r : result.years) result.snapshots.push_back(r.snapshot);
  if (cfg.timeline) result.timeline = build_timeline(result.snapshots, cfg.jaccard_min);

  ReportParameters params;
  params.denominator = cfg.denominator;
  params.tau = cfg.tau;
  params.symmetrize = cfg.symmetrize;
  params.min_size = cfg.min_size;
  params.max_size = cfg.max_size.value_or(0);
  params.jaccard_min = cfg.jaccard_min;
  result.report = report_json(params, result.snapshots, result.timeline);
  return result;
}

namespace {

template <typename Write>
void write_file(const std::filesystem::path& path, Write&& write,
                std::vector<std::filesystem::path>& written) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  try {
    write(out);
  } catch (const IoError&) {
    throw IoError("failed writing " + path.string());
  }
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
  written.push_back(path);
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  validate(cfg);
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec || !std::filesystem::is_directory(cfg.output_dir)) {
    throw IoError("cannot create output directory " + cfg.output_dir.string());
  }

  PipelineResult result = analyze(load_networks(cfg), cfg);
  const auto& dir = cfg.output_dir;
  auto& written = result.written;

  for (const auto& r : result.years) {
    std::string y = std::to_string(r.normalized.year());
    if (cfg.formats.contains(OutputFormat::net)) {
      write_file(dir / (y + ".normalized.net"),
                 [&](std::ostream& o) { write_pajek(r.normalized, o); }, written);
      write_file(dir / (y + ".filtered.net"),
                 [&](std::ostream& o) { write_pajek(r.filtered, o); }, written);
    }
    if (cfg.formats.contains(OutputFormat::dot)) {
      write_file(dir / (y + ".dot"),
                 [&](std::ostream& o) { write_dot(r.snapshot, r.filtered, o); }, written);
    }
  }
  if (cfg.formats.contains(OutputFormat::json)) {
    write_file(dir / "report.json", [&](std::ostream& o) { o << result.report; }, written);
  }
  if (cfg.formats.contains(OutputFormat::csv)) {
    write_file(dir / "hubs.csv",
               [&](std::ostream& o) { write_hub_csv(result.snapshots, o); }, written);
  }
  return result;
}

}  // namespace wtw
