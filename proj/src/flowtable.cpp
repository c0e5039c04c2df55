#include "wtw/flowtable.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iterator>
#include <ostream>
#include <stdexcept>

#include "wtw/errors.hpp"

namespace wtw {

std::optional<std::size_t> FlowTable::index_of(const CountryId& c) const {
  auto it = std::lower_bound(countries_.begin(), countries_.end(), c);
  if (it == countries_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - countries_.begin());
}

std::size_t FlowTable::require_index(const CountryId& c) const {
  auto idx = index_of(c);
  if (!idx) {
    throw LookupError("country " + c.code + " not registered for year " +
                      std::to_string(year_));
  }
  return *idx;
}

double FlowTable::flow(const CountryId& reporter,
                       const CountryId& partner) const {
  auto r = index_of(reporter);
  auto p = index_of(partner);
  if (!r || !p) return 0.0;
  auto it = std::lower_bound(
      flows_.begin(), flows_.end(), std::pair{*r, *p},
      [](const Flow& f, const std::pair<std::size_t, std::size_t>& key) {
        return std::pair{f.reporter, f.partner} < key;
      });
  if (it == flows_.end() || it->reporter != *r || it->partner != *p) return 0.0;
  return it->value;
}

double FlowTable::total_outflow(const CountryId& c) const {
  return outflow_[require_index(c)];
}

double FlowTable::total_inflow(const CountryId& c) const {
  return inflow_[require_index(c)];
}

std::size_t FlowTable::Builder::intern(const CountryId& c) {
  auto [it, inserted] = ids_.try_emplace(c, codes_.size());
  if (inserted) codes_.push_back(c);
  return it->second;
}

void FlowTable::Builder::add_country(const CountryId& c) { intern(c); }

void FlowTable::Builder::add(const CountryId& reporter,
                             const CountryId& partner, double value) {
  if (reporter == partner) {
    throw std::invalid_argument("self-flow " + reporter.code + " -> " +
                                partner.code);
  }
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite flow value");
  }
  if (value < 0.0) {
    throw std::invalid_argument("negative flow value");
  }
  std::size_t r = intern(reporter);
  std::size_t p = intern(partner);
  if (value > 0.0) rows_.push_back({r, p, value});
}

FlowTable FlowTable::Builder::build() const {
  FlowTable t;
  t.year_ = year_;

  std::vector<std::size_t> order(codes_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return codes_[a] < codes_[b]; });
  std::vector<std::size_t> remap(codes_.size());
  t.countries_.reserve(codes_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    remap[order[i]] = i;
    t.countries_.push_back(codes_[order[i]]);
  }

  std::vector<RawRow> rows;
  rows.reserve(rows_.size());
  for (const auto& r : rows_) rows.push_back({remap[r.reporter], remap[r.partner], r.value});
  std::sort(rows.begin(), rows.end(), [](const RawRow& a, const RawRow& b) {
    if (a.reporter != b.reporter) return a.reporter < b.reporter;
    if (a.partner != b.partner) return a.partner < b.partner;
    return a.value < b.value;
  });

  t.flows_.reserve(rows.size());
  for (const auto& r : rows) {
    if (!t.flows_.empty() && t.flows_.back().reporter == r.reporter &&
        t.flows_.back().partner == r.partner) {
      t.flows_.back().value += r.value;
    } else {
      t.flows_.push_back({r.reporter, r.partner, r.value});
    }
  }

  t.outflow_.assign(t.countries_.size(), 0.0);
  t.inflow_.assign(t.countries_.size(), 0.0);
  for (const auto& f : t.flows_) {
    t.outflow_[f.reporter] += f.value;
    t.inflow_[f.partner] += f.value;
  }
  return t;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

FlowPanel parse_flow_csv(std::string_view text) {
  std::map<int, FlowTable::Builder> builders;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t data_rows = 0;

  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    if (!header_seen) {
      if (line != "year,reporter,partner,value") {
        throw ParseError(line_no,
                         "expected header 'year,reporter,partner,value'");
      }
      header_seen = true;
      continue;
    }

    if (std::count(line.begin(), line.end(), ',') != 3) {
      throw ParseError(line_no, "expected 4 columns");
    }
    std::string_view fields[4];
    std::string_view rest = line;
    for (auto& field : fields) {
      auto comma = rest.find(',');
      field = trim(rest.substr(0, comma));
      rest.remove_prefix(comma == std::string_view::npos ? rest.size() : comma + 1);
    }

    int year = 0;
    if (!parse_number(fields[0], year)) {
      throw ParseError(line_no, "non-integer year '" + std::string(fields[0]) + "'");
    }
    for (int i = 1; i <= 2; ++i) {
      if (!CountryId::is_valid_code(fields[i])) {
        throw ParseError(line_no,
                         "invalid country code '" + std::string(fields[i]) + "'");
      }
    }
    double value = 0.0;
    if (!parse_number(fields[3], value) || !std::isfinite(value)) {
      throw ParseError(line_no, "non-numeric value '" + std::string(fields[3]) + "'");
    }
    if (value < 0.0) throw ParseError(line_no, "negative flow value");
    if (fields[1] == fields[2]) {
      throw ParseError(line_no, "self-flow " + std::string(fields[1]));
    }

    ++data_rows;
    if (value == 0.0) continue;
    auto it = builders.try_emplace(year, year).first;
    try {
      it->second.add(CountryId{std::string(fields[1])},
                     CountryId{std::string(fields[2])}, value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }

  if (data_rows == 0) throw EmptyInputError("flow CSV contains no data rows");

  FlowPanel panel;
  for (const auto& [year, b] : builders) panel.emplace(year, b.build());
  return panel;
}

FlowPanel parse_flow_csv(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("failed reading flow CSV");
  return parse_flow_csv(std::string_view{text});
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_flow_csv(const FlowPanel& panel, std::ostream& out) {
  std::string buf = "year,reporter,partner,value\n";
  for (const auto& [year, table] : panel) {
    auto codes = table.countries();
    std::string y = std::to_string(year);
    for (const auto& f : table.flows()) {
      buf += y;
      buf += ',';
      buf += codes[f.reporter].code;
      buf += ',';
      buf += codes[f.partner].code;
      buf += ',';
      buf += format_real(f.value);
      buf += '\n';
    }
  }
  out << buf;
  if (!out) throw IoError("failed writing flow CSV");
}

}  // namespace wtw
