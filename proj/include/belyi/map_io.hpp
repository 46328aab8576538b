#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "belyi/config_model.hpp"
#include "belyi/rotation_map.hpp"

// Text formats.
//
// Pairing:  "n d" on the first line, then all n*d/2 pairs "a-b" (a < b,
//           sorted by a) separated by spaces on the second line.
// Map:      a pairing block followed by n lines; line v lists the darts of
//           vertex v in cyclic order.

namespace belyi {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void write_pairing(std::ostream& os, const DartPairing& pairing) {
  os << pairing.vertex_count() << ' ' << pairing.degree() << '\n';
  bool first = true;
  for (auto [a, b] : pairing.pairs()) {
    if (!first) os << ' ';
    first = false;
    os << a << '-' << b;
  }
  os << '\n';
}

namespace detail {

inline bool next_content_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace detail

inline DartPairing read_pairing(std::istream& is) {
  std::string line;
  if (!detail::next_content_line(is, line)) throw FormatError("missing 'n d' header line");
  std::istringstream header(line);
  int n = 0, d = 0;
  if (!(header >> n >> d)) throw FormatError("malformed 'n d' header: " + line);

  if (!detail::next_content_line(is, line)) throw FormatError("missing pair line");
  std::istringstream body(line);
  std::vector<std::pair<Dart, Dart>> pairs;
  std::string token;
  while (body >> token) {
    const auto dash = token.find('-');
    if (dash == std::string::npos) throw FormatError("malformed pair token: " + token);
    try {
      std::size_t used_a = 0, used_b = 0;
      const std::string sa = token.substr(0, dash), sb = token.substr(dash + 1);
      const int a = std::stoi(sa, &used_a);
      const int b = std::stoi(sb, &used_b);
      if (used_a != sa.size() || used_b != sb.size()) throw FormatError("malformed pair token: " + token);
      pairs.emplace_back(a, b);
    } catch (const std::logic_error&) {
      throw FormatError("malformed pair token: " + token);
    }
  }
  try {
    return DartPairing::from_pairs(n, d, pairs);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid pairing: ") + e.what());
  }
}

inline void write_map(std::ostream& os, const CombinatorialMap& map) {
  write_pairing(os, map.pairing());
  for (Vertex v = 0; v < map.vertex_count(); ++v) {
    const auto cyc = map.rotation().cycle_at(v);
    for (std::size_t i = 0; i < cyc.size(); ++i) os << (i ? " " : "") << cyc[i];
    os << '\n';
  }
}

inline CombinatorialMap read_map(std::istream& is) {
  auto pairing = read_pairing(is);
  const int n = pairing.vertex_count();
  const int d = pairing.degree();
  std::vector<std::vector<Dart>> cycles;
  cycles.reserve(n);
  std::string line;
  for (Vertex v = 0; v < n; ++v) {
    if (!detail::next_content_line(is, line))
      throw FormatError("rotation block has " + std::to_string(v) + " lines, expected " + std::to_string(n));
    std::istringstream row(line);
    std::vector<Dart> cyc;
    Dart x = 0;
    while (row >> x) cyc.push_back(x);
    if (!row.eof()) throw FormatError("malformed rotation line: " + line);
    cycles.push_back(std::move(cyc));
  }
  try {
    return CombinatorialMap(std::move(pairing), RotationSystem::from_cycles(n, d, cycles));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid rotation: ") + e.what());
  }
}

inline CombinatorialMap load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map file: " + path);
  try {
    return read_map(in);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

/// Graphviz description of the projected multigraph; one line per edge.
inline void write_dot(std::ostream& os, const Multigraph& g) {
  os << "graph G {\n";
  for (Vertex v = 0; v < g.n; ++v) os << "  " << v << ";\n";
  for (auto [u, v] : g.edges) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
}

}  // namespace belyi
