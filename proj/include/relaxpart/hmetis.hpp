#ifndef RELAXPART_HMETIS_HPP
#define RELAXPART_HMETIS_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "relaxpart/hypergraph.hpp"

namespace relaxpart {

struct HmetisReport {
  std::size_t dropped_hyperedges = 0;  // fewer than 2 distinct pins
  std::size_t duplicate_pins = 0;
};

namespace detail {

// Splits into lines, skipping '%' comments and blank lines; keeps 1-based numbers.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    while (pos_ < text_.size()) {
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view raw = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++number_;
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      const std::size_t first = raw.find_first_not_of(" \t");
      if (first == std::string_view::npos || raw[first] == '%') continue;
      line = raw.substr(first);
      return true;
    }
    return false;
  }
  std::size_t number() const { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

inline std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_count(std::string_view tok, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(tok) + "'");
  return value;
}

inline Weight parse_weight(std::string_view tok, std::size_t line) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(value))
    throw ParseError(line, "malformed weight '" + std::string(tok) + "'");
  if (value < 0) throw ParseError(line, "negative weight '" + std::string(tok) + "'");
  return value;
}

inline void append_weight(std::string& out, Weight w) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
  out.append(buf, ptr);
}

}  // namespace detail

/// Reads the hMetis ASCII hypergraph format.
///
/// Header `num_hyperedges num_vertices [fmt]`, fmt 1 adds a leading weight to
/// each hyperedge line, 10 appends one vertex-weight line per vertex, 11 both.
/// Vertex ids in the file are 1-based.
inline Hypergraph parse_hmetis(std::string_view text, HmetisReport* report = nullptr) {
  detail::LineReader reader(text);
  std::string_view line;
  if (!reader.next(line)) throw ParseError(0, "missing header");
  const std::size_t header_line = reader.number();
  auto header = detail::tokens(line);
  if (header.size() < 2 || header.size() > 3)
    throw ParseError(header_line, "header must be 'num_hyperedges num_vertices [fmt]'");
  const auto num_edges = detail::parse_count(header[0], header_line, "hyperedge count");
  const auto num_vertices = detail::parse_count(header[1], header_line, "vertex count");
  if (num_vertices > std::numeric_limits<Index>::max() - 1)
    throw ParseError(header_line, "vertex count too large");
  std::uint64_t fmt = 0;
  if (header.size() == 3) fmt = detail::parse_count(header[2], header_line, "format code");
  if (fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11)
    throw ParseError(header_line, "unsupported format code " + std::to_string(fmt));
  const bool edge_weights = fmt == 1 || fmt == 11;
  const bool vertex_weights = fmt == 10 || fmt == 11;

  std::vector<std::vector<Index>> edges;
  std::vector<Weight> weights;
  edges.reserve(num_edges);
  weights.reserve(num_edges);
  HmetisReport stats;
  for (std::uint64_t e = 0; e < num_edges; ++e) {
    if (!reader.next(line))
      throw ParseError(reader.number(), "expected " + std::to_string(num_edges) +
                                            " hyperedge lines, found " + std::to_string(e));
    const std::size_t ln = reader.number();
    auto toks = detail::tokens(line);
    std::size_t first = 0;
    Weight w = 1.0;
    if (edge_weights) {
      if (toks.empty()) throw ParseError(ln, "missing hyperedge weight");
      w = detail::parse_weight(toks[0], ln);
      first = 1;
    }
    std::vector<Index> pins;
    pins.reserve(toks.size() - first);
    for (std::size_t t = first; t < toks.size(); ++t) {
      const auto id = detail::parse_count(toks[t], ln, "pin");
      if (id < 1 || id > num_vertices)
        throw ParseError(ln, "pin " + std::to_string(id) + " out of range 1.." +
                                 std::to_string(num_vertices));
      const auto v = static_cast<Index>(id - 1);
      if (std::find(pins.begin(), pins.end(), v) != pins.end()) {
        ++stats.duplicate_pins;
        continue;
      }
      pins.push_back(v);
    }
    edges.push_back(std::move(pins));
    weights.push_back(w);
  }
  std::vector<Weight> vweights;
  if (vertex_weights) {
    vweights.reserve(num_vertices);
    for (std::uint64_t v = 0; v < num_vertices; ++v) {
      if (!reader.next(line)) throw ParseError(reader.number(), "missing vertex weight lines");
      auto toks = detail::tokens(line);
      if (toks.size() != 1) throw ParseError(reader.number(), "expected one vertex weight");
      vweights.push_back(detail::parse_weight(toks[0], reader.number()));
    }
  }
  if (reader.next(line)) throw ParseError(reader.number(), "unexpected trailing content");

  Hypergraph h = Hypergraph::from_edges(static_cast<Index>(num_vertices), edges,
                                        std::move(weights), std::move(vweights),
                                        &stats.dropped_hyperedges);
  if (report) *report = stats;
  return h;
}

inline Hypergraph read_hmetis_file(const std::string& path, HmetisReport* report = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_hmetis(buf.str(), report);
}

/// Canonical hMetis text. The format code is emitted only when some weight
/// differs from 1.
inline std::string write_hmetis(const Hypergraph& h) {
  const auto& ew = h.hyperedge_weights();
  const auto& vw = h.vertex_weights();
  const bool edge_weights = std::any_of(ew.begin(), ew.end(), [](Weight w) { return w != 1.0; });
  const bool vertex_weights = std::any_of(vw.begin(), vw.end(), [](Weight w) { return w != 1.0; });
  std::string out = std::to_string(h.num_hyperedges()) + " " + std::to_string(h.num_vertices());
  if (edge_weights && vertex_weights)
    out += " 11";
  else if (edge_weights)
    out += " 1";
  else if (vertex_weights)
    out += " 10";
  out += '\n';
  for (std::size_t e = 0; e < h.num_hyperedges(); ++e) {
    bool first = true;
    if (edge_weights) {
      detail::append_weight(out, ew[e]);
      first = false;
    }
    for (Index v : h.pins(e)) {
      if (!first) out += ' ';
      out += std::to_string(v + 1);
      first = false;
    }
    out += '\n';
  }
  if (vertex_weights) {
    for (Weight w : vw) {
      detail::append_weight(out, w);
      out += '\n';
    }
  }
  return out;
}

/// Partition file: one 0-based block id per line.
inline std::string write_partition(const Partition& p) {
  std::string out;
  out.reserve(p.assignment.size() * 2);
  for (BlockId b : p.assignment) {
    out += std::to_string(b);
    out += '\n';
  }
  return out;
}

inline Partition parse_partition(std::string_view text, BlockId k) {
  detail::LineReader reader(text);
  std::string_view line;
  Partition p;
  p.k = k;
  while (reader.next(line)) {
    auto toks = detail::tokens(line);
    if (toks.size() != 1) throw ParseError(reader.number(), "expected one block id");
    const auto b = detail::parse_count(toks[0], reader.number(), "block id");
    if (b >= k) throw ParseError(reader.number(), "block id " + std::to_string(b) + " >= k");
    p.assignment.push_back(static_cast<BlockId>(b));
  }
  return p;
}

}  // namespace relaxpart

#endif  // RELAXPART_HMETIS_HPP
