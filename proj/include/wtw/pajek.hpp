#pragma once

#include <istream>
#include <ostream>
#include <variant>

#include "wtw/graph.hpp"

namespace wtw {

/// `*Vertices n`, one `i "LABEL"` line per node (1-based, quotes doubled),
/// then `*Arcs` or `*Edges` with `i j w` lines. Weights are written in
/// shortest round-trip form. Throws IoError if the sink fails.
void write_pajek(const ShareNetwork& g, std::ostream& out);
void write_pajek(const UndirectedWeighted& g, std::ostream& out);

using PajekGraph = std::variant<ShareNetwork, UndirectedWeighted>;

/// Reads the subset emitted by write_pajek. Section names are
/// case-insensitive, `%` lines are comments, unlabeled vertices are named by
/// their 1-based index and a missing weight defaults to 1. A file with only
/// `*Vertices` yields a directed network. Pajek carries no year; `year` is
/// stamped on the result.
///
/// Throws ParseError (with line) on unknown sections, out-of-range indices,
/// non-numeric weights or graph invariant violations, and MixedGraphError
/// when both `*Arcs` and `*Edges` are present.
PajekGraph read_pajek(std::istream& in, int year = 0);

}  // namespace wtw
