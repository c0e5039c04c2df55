#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wtw/country.hpp"

namespace wtw {

/// One stored bilateral flow. Indices refer to FlowTable::countries().
struct Flow {
  std::size_t reporter;
  std::size_t partner;
  double value;

  friend bool operator==(const Flow&, const Flow&) = default;
};

/// Reporter-side merchandise flows for a single year.
///
/// The country registry is sorted by code and flows are sorted by
/// (reporter, partner), so two tables built from the same rows in any order
/// compare equal and serialize identically. Immutable once built.
class FlowTable {
 public:
  class Builder;

  int year() const noexcept { return year_; }
  std::span<const CountryId> countries() const noexcept { return countries_; }
  std::span<const Flow> flows() const noexcept { return flows_; }

  std::optional<std::size_t> index_of(const CountryId& c) const;

  /// Throws LookupError when `c` is not registered.
  std::size_t require_index(const CountryId& c) const;

  /// 0.0 when either country is unregistered or no flow is stored.
  double flow(const CountryId& reporter, const CountryId& partner) const;

  /// Sum of the country's reported outgoing flows.
  double total_outflow(const CountryId& c) const;
  double total_outflow(std::size_t index) const { return outflow_.at(index); }

  /// Sum of flows reported by others with `c` as partner.
  double total_inflow(const CountryId& c) const;
  double total_inflow(std::size_t index) const { return inflow_.at(index); }

  friend bool operator==(const FlowTable& a, const FlowTable& b) {
    return a.year_ == b.year_ && a.countries_ == b.countries_ &&
           a.flows_ == b.flows_;
  }

 private:
  FlowTable() = default;

  int year_ = 0;
  std::vector<CountryId> countries_;
  std::vector<Flow> flows_;
  std::vector<double> outflow_;
  std::vector<double> inflow_;
};

/// Accumulates raw rows for one year. Repeated (reporter, partner) rows are
/// summed in ascending value order so the result does not depend on row order.
class FlowTable::Builder {
 public:
  explicit Builder(int year) : year_(year) {}

  /// Registers a country that may have no stored flows.
  void add_country(const CountryId& c);

  /// Throws std::invalid_argument on self-flow, negative or non-finite value.
  /// Zero values register both countries but store nothing.
  void add(const CountryId& reporter, const CountryId& partner, double value);

  FlowTable build() const;

 private:
  struct RawRow {
    std::size_t reporter;
    std::size_t partner;
    double value;
  };

  std::size_t intern(const CountryId& c);

  int year_;
  std::vector<CountryId> codes_;
  std::unordered_map<CountryId, std::size_t> ids_;
  std::vector<RawRow> rows_;
};

using FlowPanel = std::map<int, FlowTable>;

/// Reads the `year,reporter,partner,value` CSV format. Throws EmptyInputError
/// when no data rows are present and ParseError (with line number) on any
/// malformed row.
FlowPanel parse_flow_csv(std::string_view text);
FlowPanel parse_flow_csv(std::istream& in);

/// Emits the same CSV format, rows sorted by (year, reporter, partner).
/// Values use shortest round-trip decimal form.
void write_flow_csv(const FlowPanel& panel, std::ostream& out);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_real(double v);

}  // namespace wtw
