// wtwcli: trade-share networks, line islands and their evolution across years.

#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wtw/chronology.hpp"
#include "wtw/errors.hpp"
#include "wtw/export.hpp"
#include "wtw/flowtable.hpp"
#include "wtw/pajek.hpp"
#include "wtw/pipeline.hpp"
#include "wtw/synthetic.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 1, kIo = 2, kParse = 3 };

struct Options {
  std::string input;
  std::string output;
  std::string output_dir = ".";
  std::string denominator = "exports";
  double tau = 0.05;
  std::string symmetrize = "max";
  std::size_t min_size = 2;
  std::size_t max_size = 0;
  double jaccard_min = 0.3;
  std::string years;
  std::vector<std::string> formats;
  int year = 0;
  std::vector<std::string> track;
  std::string scenario;
  std::uint64_t seed = 1;
  std::string stage = "filtered";
  std::string format = "net";
};

std::vector<int> parse_years(const std::string& text) {
  std::vector<int> years;
  std::stringstream ss(text);
  std::string item;
  auto number = [](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
      throw wtw::ParameterError("bad year '" + std::string(s) + "' in --years");
    }
    return v;
  };
  while (std::getline(ss, item, ',')) {
    auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      years.push_back(number(item));
    } else {
      int lo = number(std::string_view(item).substr(0, dash));
      int hi = number(std::string_view(item).substr(dash + 1));
      if (lo > hi) throw wtw::ParameterError("empty year range '" + item + "' in --years");
      for (int y = lo; y <= hi; ++y) years.push_back(y);
    }
  }
  return years;
}

wtw::PipelineConfig to_config(const Options& o) {
  wtw::PipelineConfig cfg;
  cfg.input = o.input;
  cfg.output_dir = o.output_dir;
  cfg.denominator = o.denominator == "both" ? wtw::DenominatorRule::exports_plus_imports
                                            : wtw::DenominatorRule::exports;
  cfg.tau = o.tau;
  cfg.symmetrize = o.symmetrize == "sum"   ? wtw::SymmetrizeRule::sum
                   : o.symmetrize == "min" ? wtw::SymmetrizeRule::min
                                           : wtw::SymmetrizeRule::max;
  cfg.min_size = o.min_size;
  if (o.max_size != 0) cfg.max_size = o.max_size;
  cfg.jaccard_min = o.jaccard_min;
  if (!o.years.empty()) cfg.years = parse_years(o.years);
  if (!o.formats.empty()) {
    cfg.formats.clear();
    for (const auto& f : o.formats) {
      auto parsed = wtw::parse_output_format(f);
      if (!parsed) throw wtw::ParameterError("unknown output format '" + f + "'");
      cfg.formats.insert(*parsed);
    }
  }
  cfg.pajek_year = o.year;
  wtw::validate(cfg);
  return cfg;
}

void add_pipeline_options(CLI::App* cmd, Options& o) {
  cmd->add_option("-i,--input", o.input, "Flow CSV or directed Pajek .net")->required();
  cmd->add_option("--denominator", o.denominator, "Share denominator")
      ->check(CLI::IsMember({"exports", "both"}));
  cmd->add_option("--tau", o.tau, "Drop arcs with share below this value");
  cmd->add_option("--symmetrize", o.symmetrize, "Undirected weight rule")
      ->check(CLI::IsMember({"max", "sum", "min"}));
  cmd->add_option("--min-size", o.min_size, "Smallest island size");
  cmd->add_option("--max-size", o.max_size, "Largest island size (0 = unbounded)");
  cmd->add_option("--years", o.years, "Years to analyse, e.g. 1950,1960,1990-1999");
  cmd->add_option("--year", o.year, "Year stamped on a Pajek input");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw wtw::IoError("cannot open " + path + " for writing");
  return out;
}

void close_output(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw wtw::IoError("failed writing " + path);
}

int cmd_synth(const Options& o) {
  std::ifstream in(o.scenario, std::ios::binary);
  if (!in) throw wtw::IoError("cannot open scenario " + o.scenario);
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  wtw::ScenarioSpec spec;
  try {
    spec = wtw::parse_scenario(text);
  } catch (const wtw::ParseError& e) {
    throw wtw::ParseError(e.line(), o.scenario + ": " + e.what());
  }
  auto panel = wtw::generate_synthetic(spec, o.seed);
  if (o.output.empty() || o.output == "-") {
    wtw::write_flow_csv(panel, std::cout);
  } else {
    auto out = open_output(o.output);
    wtw::write_flow_csv(panel, out);
    close_output(out, o.output);
  }
  return kOk;
}

int cmd_ingest(const Options& o) {
  wtw::PipelineConfig cfg = to_config(o);
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) throw wtw::IoError("cannot open input file " + o.input);
  wtw::FlowPanel panel = wtw::parse_flow_csv(in);
  auto networks = wtw::select_years(panel, cfg);

  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw wtw::IoError("cannot create output directory " + o.output_dir);

  std::string canonical = (cfg.output_dir / "flows.csv").string();
  auto flows = open_output(canonical);
  wtw::write_flow_csv(panel, flows);
  close_output(flows, canonical);

  std::string totals_path = (cfg.output_dir / "totals.csv").string();
  auto totals = open_output(totals_path);
  totals << "year,country,outflow,inflow\n";
  for (const auto& g : networks) {
    const auto& table = panel.at(g.year());
    for (std::size_t c = 0; c < table.countries().size(); ++c) {
      totals << table.year() << ',' << table.countries()[c].code << ','
             << wtw::format_real(table.total_outflow(c)) << ','
             << wtw::format_real(table.total_inflow(c)) << '\n';
    }
    std::string net = (cfg.output_dir / (std::to_string(g.year()) + ".normalized.net")).string();
    auto out = open_output(net);
    wtw::write_pajek(g, out);
    close_output(out, net);
    std::cout << g.year() << ": " << g.node_count() << " countries, " << table.flows().size()
              << " flows, " << g.arcs().size() << " arcs\n";
  }
  close_output(totals, totals_path);
  return kOk;
}

void print_trajectory(const wtw::PipelineResult& result, const std::string& code) {
  std::cout << "trajectory " << code << "\n";
  for (const auto& rec : wtw::hub_trajectory(result.snapshots, wtw::CountryId{code})) {
    std::cout << "  " << rec.year << "  "
              << (rec.in_island ? "island" : "residual") << "  rank "
              << (rec.hub_rank ? std::to_string(*rec.hub_rank) : "-") << "  in-degree "
              << rec.in_degree << "\n";
  }
}

int cmd_islands(Options o, bool timeline) {
  if (o.formats.empty()) o.formats = {"json", "csv"};
  wtw::PipelineConfig cfg = to_config(o);
  cfg.timeline = timeline;
  auto result = wtw::run_pipeline(cfg);
  for (const auto& s : result.snapshots) {
    std::cout << s.year << ": " << s.islands.size() << " islands, " << s.residual.size()
              << " residual\n";
  }
  if (timeline) {
    std::map<std::string, std::size_t> counts;
    for (const auto& e : result.timeline.events) ++counts[std::string(wtw::to_string(e.kind))];
    std::cout << "events:";
    for (const auto& [kind, n] : counts) std::cout << ' ' << kind << '=' << n;
    std::cout << "\nchains: " << result.timeline.chains.size() << "\n";
  }
  for (const auto& code : o.track) print_trajectory(result, code);
  for (const auto& p : result.written) std::cout << "wrote " << p.string() << "\n";
  return kOk;
}

int cmd_export(const Options& o) {
  wtw::PipelineConfig cfg = to_config(o);
  if (cfg.input.extension() != ".net" && o.years.empty()) {
    throw wtw::ParameterError("export needs --years naming exactly one year");
  }
  auto networks = wtw::load_networks(cfg);
  if (networks.size() != 1) {
    throw wtw::ParameterError("export needs exactly one selected year");
  }
  cfg.timeline = false;
  auto result = wtw::analyze(std::move(networks), cfg);
  const auto& year = result.years.front();

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!o.output.empty() && o.output != "-") {
    file = open_output(o.output);
    out = &file;
  }
  if (o.format == "dot") {
    wtw::write_dot(year.snapshot, year.filtered, *out);
  } else if (o.stage == "normalized") {
    wtw::write_pajek(year.normalized, *out);
  } else if (o.stage == "undirected") {
    wtw::write_pajek(wtw::symmetrize(year.filtered, cfg.symmetrize), *out);
  } else {
    wtw::write_pajek(year.filtered, *out);
  }
  if (file.is_open()) close_output(file, o.output);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"World trade web islands toolkit"};
  app.require_subcommand(1);
  Options o;

  auto* synth = app.add_subcommand("synth", "Generate a synthetic flow panel as CSV");
  synth->add_option("--scenario", o.scenario, "Scenario description file")->required();
  synth->add_option("--seed", o.seed, "Random seed");
  synth->add_option("-o,--output", o.output, "Output CSV (default stdout)");

  auto* ingest = app.add_subcommand("ingest", "Validate flows and write normalized networks");
  add_pipeline_options(ingest, o);
  ingest->add_option("-O,--output-dir", o.output_dir, "Output directory");

  auto* islands = app.add_subcommand("islands", "Per-year island decomposition and hubs");
  add_pipeline_options(islands, o);
  islands->add_option("-O,--output-dir", o.output_dir, "Output directory");
  islands->add_option("--formats", o.formats, "Any of net,dot,json,csv")->delimiter(',');

  auto* evolve = app.add_subcommand("evolve", "Islands plus their evolution across years");
  add_pipeline_options(evolve, o);
  evolve->add_option("-O,--output-dir", o.output_dir, "Output directory");
  evolve->add_option("--formats", o.formats, "Any of net,dot,json,csv")->delimiter(',');
  evolve->add_option("--jaccard-min", o.jaccard_min, "Minimum overlap to match islands");
  evolve->add_option("--track", o.track, "Print the hub trajectory of a country");

  auto* exp = app.add_subcommand("export", "Write one year's network as Pajek or DOT");
  add_pipeline_options(exp, o);
  exp->add_option("--format", o.format, "net or dot")->check(CLI::IsMember({"net", "dot"}));
  exp->add_option("--stage", o.stage, "normalized, filtered or undirected (net only)")
      ->check(CLI::IsMember({"normalized", "filtered", "undirected"}));
  exp->add_option("-o,--output", o.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*synth) return cmd_synth(o);
    if (*ingest) return cmd_ingest(o);
    if (*islands) return cmd_islands(o, false);
    if (*evolve) return cmd_islands(o, true);
    if (*exp) return cmd_export(o);
  } catch (const wtw::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const wtw::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const wtw::EmptyInputError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const wtw::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  }
  return kConfig;
}
