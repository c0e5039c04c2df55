#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "wtw/country.hpp"
#include "wtw/flowtable.hpp"

namespace wtw {

/// A trading bloc: every member ships most of its trade to `hub`.
struct Bloc {
  CountryId hub;
  std::vector<CountryId> members;
  /// Typical size of a member's flow to the hub (and of the hub's total
  /// shipment back to its members).
  double intra_scale = 100.0;
  /// Typical size of each flow to an out-of-bloc partner. 0 disables leakage.
  double leakage_scale = 0.0;
};

struct ScenarioSpec {
  int first_year = 1950;
  int last_year = 1950;
  int year_step = 1;
  /// Number of out-of-bloc partners each country leaks to per year (capped
  /// at the number of available partners).
  std::size_t leakage_partners = 3;
  std::vector<Bloc> blocs;
};

/// Throws ScenarioError on empty blocs, overlapping membership, bad scales or
/// an empty year range.
void validate(const ScenarioSpec& spec);

/// Deterministic in (spec, seed). Members send one flow of roughly
/// `intra_scale` to their hub, hubs split roughly `intra_scale` across their
/// members, and every country sends `leakage_partners` flows of roughly
/// `leakage_scale` to randomly chosen countries outside its bloc.
FlowPanel generate_synthetic(const ScenarioSpec& spec, std::uint64_t seed);

/// Parses the plain-text scenario format:
///
///     years = 1950-2005      # or a single year
///     step = 5
///     leakage_partners = 3
///
///     [bloc]
///     hub = USA
///     members = CAN, MEX, BRA
///     intra = 100
///     leakage = 0.5
///
/// Keys before the first `[bloc]` are global. `#` starts a comment.
/// Throws ParseError on syntax problems and ScenarioError on invalid content.
ScenarioSpec parse_scenario(std::string_view text);

/// Three-letter code for a synthetic country index (0 -> "AAA", 1 -> "AAB").
CountryId synthetic_code(std::size_t index);

}  // namespace wtw
