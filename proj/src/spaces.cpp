#include "treerep/spaces.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "treerep/error.hpp"

namespace treerep {

VertexVector delta_vertex(const Tree& tree, Vertex x) {
  if (!tree.contains(x)) throw Error("vertex " + std::to_string(x) + " out of range");
  return VertexVector::basis(x);
}

EdgeVector delta_edge(const Tree& tree, Vertex x, Vertex y) {
  const auto id = tree.edge_id(x, y);
  if (!id || x == y) {
    throw Error("(" + std::to_string(x) + "," + std::to_string(y) + ") is not an edge");
  }
  return EdgeVector::basis(*id, x < y ? 1.0 : -1.0);
}

namespace {

double parse_double_prefix(std::string_view text, std::size_t& consumed) {
  const std::string buffer(text);
  char* end = nullptr;
  const double value = std::strtod(buffer.c_str(), &end);
  consumed = static_cast<std::size_t>(end - buffer.c_str());
  return value;
}

std::vector<std::string> split_ws(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  return tokens;
}

Vertex parse_id(std::string_view tok) {
  Vertex id = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error("malformed id `" + std::string(tok) + "`");
  }
  return id;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  if (text.empty()) throw Error("empty number");
  std::size_t used = 0;
  const double first = parse_double_prefix(text, used);
  if (used == 0) {
    if (text == "i") return {0.0, 1.0};
    if (text == "-i") return {0.0, -1.0};
    throw Error("malformed number `" + std::string(text) + "`");
  }
  std::string_view rest = text.substr(used);
  if (rest.empty()) return {first, 0.0};
  if (rest == "i") return {0.0, first};
  std::size_t used_imag = 0;
  const double second = parse_double_prefix(rest, used_imag);
  if (used_imag == 0 || (rest[0] != '+' && rest[0] != '-') || rest.substr(used_imag) != "i") {
    throw Error("malformed number `" + std::string(text) + "`");
  }
  return {first, second};
}

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // folds -0 into 0
  // shortest text that reads back to the same double
  char buffer[32];
  const auto end = std::to_chars(buffer, buffer + sizeof buffer, value).ptr;
  return std::string(buffer, end);
}

std::string format_complex(Complex value) {
  std::string out = format_real(value.real());
  if (value.imag() != 0.0) {
    const std::string imag = format_real(value.imag());
    out += (imag.front() == '-' ? "" : "+") + imag + "i";
  }
  return out;
}

VertexVector parse_vertex_vector(const Tree& tree, std::string_view text) {
  VertexVector v;
  for (const auto& tok : split_ws(text)) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) throw Error("expected `x:value`, got `" + tok + "`");
    const Vertex x = parse_id(std::string_view(tok).substr(0, colon));
    if (!tree.contains(x)) throw Error("vertex " + std::to_string(x) + " out of range");
    v.add_to(x, parse_complex(std::string_view(tok).substr(colon + 1)));
  }
  return v;
}

EdgeVector parse_edge_vector(const Tree& tree, std::string_view text) {
  EdgeVector v;
  for (const auto& tok : split_ws(text)) {
    const auto colon = tok.find(':');
    const auto dash = tok.find('-');
    if (colon == std::string::npos || dash == std::string::npos || dash > colon) {
      throw Error("expected `u-v:value`, got `" + tok + "`");
    }
    const std::string_view view(tok);
    const Vertex u = parse_id(view.substr(0, dash));
    const Vertex w = parse_id(view.substr(dash + 1, colon - dash - 1));
    // Keys name the edge in either orientation; the sign follows delta_edge.
    const EdgeVector unit = delta_edge(tree, u, w);
    const auto [id, sign] = *unit.begin();
    v.add_to(id, sign * parse_complex(view.substr(colon + 1)));
  }
  return v;
}

std::string format_vertex_vector(const VertexVector& v) {
  std::string out;
  for (const auto& [x, c] : v) {
    if (!out.empty()) out += ' ';
    out += std::to_string(x) + ":" + format_complex(c);
  }
  return out;
}

std::string format_edge_vector(const Tree& tree, const EdgeVector& v) {
  std::string out;
  for (const auto& [id, c] : v) {
    const Edge& e = tree.edge(static_cast<EdgeId>(id));
    if (!out.empty()) out += ' ';
    out += std::to_string(e.low) + "-" + std::to_string(e.high) + ":" + format_complex(c);
  }
  return out;
}

}  // namespace treerep
