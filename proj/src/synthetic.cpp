#include "wtw/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "wtw/errors.hpp"

namespace wtw {

void validate(const ScenarioSpec& spec) {
  if (spec.first_year > spec.last_year) {
    throw ScenarioError("first year after last year");
  }
  if (spec.year_step < 1) throw ScenarioError("year step must be >= 1");
  if (spec.blocs.empty()) throw ScenarioError("scenario has no blocs");

  std::set<CountryId> seen;
  for (const auto& bloc : spec.blocs) {
    if (bloc.members.empty()) {
      throw ScenarioError("bloc around " + bloc.hub.code + " has no members");
    }
    if (!(bloc.intra_scale > 0.0) || !std::isfinite(bloc.intra_scale)) {
      throw ScenarioError("bloc around " + bloc.hub.code +
                          ": intra scale must be positive");
    }
    if (!(bloc.leakage_scale >= 0.0) || !std::isfinite(bloc.leakage_scale)) {
      throw ScenarioError("bloc around " + bloc.hub.code +
                          ": leakage scale must be non-negative");
    }
    auto claim = [&](const CountryId& c) {
      if (!CountryId::is_valid_code(c.code)) {
        throw ScenarioError("invalid country code '" + c.code + "'");
      }
      if (!seen.insert(c).second) {
        throw ScenarioError("country " + c.code + " belongs to more than one bloc");
      }
    };
    claim(bloc.hub);
    for (const auto& m : bloc.members) claim(m);
  }
}

namespace {

// Uniform in [0, 1) from the top 53 bits; avoids the implementation-defined
// std::uniform_real_distribution so output is identical across toolchains.
double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double jitter(std::mt19937_64& rng, double scale) {
  return scale * (0.75 + 0.5 * unit(rng));
}

}  // namespace

FlowPanel generate_synthetic(const ScenarioSpec& spec, std::uint64_t seed) {
  validate(spec);

  struct Country {
    CountryId id;
    std::size_t bloc;
  };
  std::vector<Country> all;
  for (std::size_t b = 0; b < spec.blocs.size(); ++b) {
    all.push_back({spec.blocs[b].hub, b});
    for (const auto& m : spec.blocs[b].members) all.push_back({m, b});
  }

  std::mt19937_64 rng(seed);
  FlowPanel panel;
  std::vector<std::size_t> outside;

  for (int year = spec.first_year; year <= spec.last_year; year += spec.year_step) {
    FlowTable::Builder builder(year);
    for (const auto& c : all) builder.add_country(c.id);

    for (const auto& bloc : spec.blocs) {
      double share = bloc.intra_scale / static_cast<double>(bloc.members.size());
      for (const auto& m : bloc.members) {
        builder.add(m, bloc.hub, jitter(rng, bloc.intra_scale));
        builder.add(bloc.hub, m, jitter(rng, share));
      }
    }

    for (const auto& c : all) {
      const auto& bloc = spec.blocs[c.bloc];
      if (bloc.leakage_scale == 0.0 || spec.leakage_partners == 0) continue;
      outside.clear();
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i].bloc != c.bloc) outside.push_back(i);
      }
      std::size_t k = std::min(spec.leakage_partners, outside.size());
      // Partial Fisher-Yates with explicit index draws.
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng() % (outside.size() - i));
        std::swap(outside[i], outside[j]);
        builder.add(c.id, all[outside[i]].id, jitter(rng, bloc.leakage_scale));
      }
    }
    panel.emplace(year, builder.build());
  }
  return panel;
}

namespace {

std::string_view strip(std::string_view s) {
  auto hash = s.find('#');
  if (hash != std::string_view::npos) s = s.substr(0, hash);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T number(std::string_view s, std::size_t line) {
  T out{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, "expected a number, got '" + std::string(s) + "'");
  }
  return out;
}

}  // namespace

ScenarioSpec parse_scenario(std::string_view text) {
  ScenarioSpec spec;
  Bloc* current = nullptr;
  bool hub_set = false;
  std::size_t line_no = 0;

  auto close_bloc = [&](std::size_t line) {
    if (current && !hub_set) throw ParseError(line, "bloc without hub");
  };

  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = strip(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (line.empty()) continue;

    if (line == "[bloc]") {
      close_bloc(line_no);
      spec.blocs.emplace_back();
      current = &spec.blocs.back();
      hub_set = false;
      continue;
    }
    if (line.front() == '[') {
      throw ParseError(line_no, "unknown section '" + std::string(line) + "'");
    }

    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    std::string_view key = strip(line.substr(0, eq));
    std::string_view value = strip(line.substr(eq + 1));

    if (!current) {
      if (key == "years") {
        auto dash = value.find('-');
        if (dash == std::string_view::npos) {
          spec.first_year = spec.last_year = number<int>(value, line_no);
        } else {
          spec.first_year = number<int>(strip(value.substr(0, dash)), line_no);
          spec.last_year = number<int>(strip(value.substr(dash + 1)), line_no);
        }
      } else if (key == "step") {
        spec.year_step = number<int>(value, line_no);
      } else if (key == "leakage_partners") {
        spec.leakage_partners = number<std::size_t>(value, line_no);
      } else {
        throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
      }
      continue;
    }

    if (key == "hub") {
      current->hub = CountryId{std::string(value)};
      hub_set = true;
    } else if (key == "members") {
      while (!value.empty()) {
        auto comma = value.find(',');
        auto code = strip(value.substr(0, comma));
        if (code.empty()) throw ParseError(line_no, "empty member code");
        current->members.emplace_back(std::string(code));
        value.remove_prefix(comma == std::string_view::npos ? value.size() : comma + 1);
      }
    } else if (key == "intra") {
      current->intra_scale = number<double>(value, line_no);
    } else if (key == "leakage") {
      current->leakage_scale = number<double>(value, line_no);
    } else {
      throw ParseError(line_no, "unknown bloc key '" + std::string(key) + "'");
    }
  }
  close_bloc(line_no);
  validate(spec);
  return spec;
}

CountryId synthetic_code(std::size_t index) {
  std::string code(3, 'A');
  for (int pos = 2; pos >= 0; --pos) {
    code[static_cast<std::size_t>(pos)] = static_cast<char>('A' + index % 26);
    index /= 26;
  }
  return CountryId{code};
}

}  // namespace wtw
