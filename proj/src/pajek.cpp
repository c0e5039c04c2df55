#include "wtw/pajek.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wtw/errors.hpp"
#include "wtw/flowtable.hpp"

namespace wtw {

namespace {

void append_vertices(std::string& buf, std::span<const CountryId> nodes) {
  buf += "*Vertices ";
  buf += std::to_string(nodes.size());
  buf += '\n';
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    buf += std::to_string(i + 1);
    buf += " \"";
    for (char c : nodes[i].code) {
      if (c == '"') buf += '"';
      buf += c;
    }
    buf += "\"\n";
  }
}

void append_link(std::string& buf, std::size_t a, std::size_t b, double w) {
  buf += std::to_string(a + 1);
  buf += ' ';
  buf += std::to_string(b + 1);
  buf += ' ';
  buf += format_real(w);
  buf += '\n';
}

void flush(const std::string& buf, std::ostream& out) {
  out << buf;
  out.flush();
  if (!out) throw IoError("failed writing Pajek network");
}

}  // namespace

void write_pajek(const ShareNetwork& g, std::ostream& out) {
  std::string buf;
  append_vertices(buf, g.nodes());
  buf += "*Arcs\n";
  for (const auto& a : g.arcs()) append_link(buf, a.source, a.target, a.weight);
  flush(buf, out);
}

void write_pajek(const UndirectedWeighted& g, std::ostream& out) {
  std::string buf;
  append_vertices(buf, g.nodes());
  buf += "*Edges\n";
  for (const auto& e : g.edges()) append_link(buf, e.u, e.v, e.weight);
  flush(buf, out);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view next_token(std::string_view& s) {
  s = trim(s);
  auto end = std::find_if(s.begin(), s.end(),
                          [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  std::string_view tok = s.substr(0, static_cast<std::size_t>(end - s.begin()));
  s.remove_prefix(tok.size());
  return tok;
}

template <typename T>
std::optional<T> to_number(std::string_view s) {
  T out{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Quoted label with "" as an escaped quote, or a bare token.
std::string read_label(std::string_view& rest, std::size_t line) {
  rest = trim(rest);
  if (rest.empty()) return {};
  if (rest.front() != '"') return std::string(next_token(rest));
  std::string label;
  std::size_t i = 1;
  while (true) {
    if (i >= rest.size()) throw ParseError(line, "unterminated vertex label");
    if (rest[i] == '"') {
      if (i + 1 < rest.size() && rest[i + 1] == '"') {
        label += '"';
        i += 2;
        continue;
      }
      ++i;
      break;
    }
    label += rest[i++];
  }
  rest.remove_prefix(i);
  return label;
}

enum class Section { none, vertices, arcs, edges };

}  // namespace

PajekGraph read_pajek(std::istream& in, int year) {
  std::vector<CountryId> nodes;
  std::vector<Arc> arcs;
  std::vector<Edge> edges;
  Section section = Section::none;
  bool has_vertices = false;
  bool saw_arcs = false;
  bool saw_edges = false;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '%') continue;

    if (line.front() == '*') {
      std::string_view rest = line;
      std::string name = lower(next_token(rest));
      if (name == "*vertices") {
        if (has_vertices) throw ParseError(line_no, "duplicate *Vertices section");
        auto count = to_number<std::size_t>(next_token(rest));
        if (!count || !trim(rest).empty()) {
          throw ParseError(line_no, "expected '*Vertices n'");
        }
        nodes.resize(*count);
        for (std::size_t i = 0; i < *count; ++i) nodes[i].code = std::to_string(i + 1);
        has_vertices = true;
        section = Section::vertices;
      } else if (name == "*arcs" || name == "*edges") {
        if (!has_vertices) throw ParseError(line_no, "link section before *Vertices");
        bool directed = name == "*arcs";
        (directed ? saw_arcs : saw_edges) = true;
        if (saw_arcs && saw_edges) {
          throw MixedGraphError(line_no, "both *Arcs and *Edges present; mixed graphs unsupported");
        }
        section = directed ? Section::arcs : Section::edges;
      } else {
        throw ParseError(line_no, "unknown section '" + std::string(line) + "'");
      }
      continue;
    }

    std::string_view rest = line;
    switch (section) {
      case Section::none:
        throw ParseError(line_no, "data before *Vertices");
      case Section::vertices: {
        auto idx = to_number<std::size_t>(next_token(rest));
        if (!idx || *idx < 1 || *idx > nodes.size()) {
          throw ParseError(line_no, "vertex index out of range");
        }
        std::string label = read_label(rest, line_no);
        if (!label.empty()) nodes[*idx - 1].code = std::move(label);
        break;
      }
      case Section::arcs:
      case Section::edges: {
        auto a = to_number<std::size_t>(next_token(rest));
        auto b = to_number<std::size_t>(next_token(rest));
        if (!a || !b) throw ParseError(line_no, "expected 'i j [w]'");
        if (*a < 1 || *a > nodes.size() || *b < 1 || *b > nodes.size()) {
          throw ParseError(line_no, "vertex index out of range");
        }
        double w = 1.0;
        std::string_view wtok = next_token(rest);
        if (!wtok.empty()) {
          auto parsed = to_number<double>(wtok);
          if (!parsed || !std::isfinite(*parsed)) {
            throw ParseError(line_no, "non-numeric weight '" + std::string(wtok) + "'");
          }
          w = *parsed;
        }
        if (!trim(rest).empty()) throw ParseError(line_no, "trailing tokens after weight");
        if (section == Section::arcs) {
          arcs.push_back({*a - 1, *b - 1, w});
        } else {
          edges.push_back({*a - 1, *b - 1, w});
        }
        break;
      }
    }
  }
  if (in.bad()) throw IoError("failed reading Pajek network");
  if (!has_vertices) throw ParseError(0, "missing *Vertices section");

  try {
    if (saw_edges) return UndirectedWeighted(year, std::move(nodes), std::move(edges));
    return ShareNetwork(year, std::move(nodes), std::move(arcs));
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace wtw
