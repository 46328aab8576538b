#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "belyi/random.hpp"

namespace belyi {

/// Index of a half-edge. Dart x belongs to vertex (cell) x / d.
using Dart = int;
using Vertex = int;

/// Largest configuration count the exhaustive enumerator will walk.
inline constexpr std::uint64_t kEnumerationLimit = 10'000'000;

inline void check_degree_and_size(int n, int d) {
  if (n < 1) throw std::invalid_argument("vertex count must be positive");
  if (d < 3) throw std::invalid_argument("degree must be at least 3");
  if ((static_cast<long long>(n) * d) % 2 != 0)
    throw std::invalid_argument("odd dart count: n*d must be even for a perfect matching");
}

/// A configuration: a fixed-point-free involution on the n*d darts.
class DartPairing {
 public:
  DartPairing(int n, int d, std::vector<Dart> alpha) : n_(n), d_(d), alpha_(std::move(alpha)) {
    check_degree_and_size(n_, d_);
    const auto darts = static_cast<std::size_t>(n_) * static_cast<std::size_t>(d_);
    if (alpha_.size() != darts) throw std::invalid_argument("pairing must cover exactly n*d darts");
    for (std::size_t x = 0; x < darts; ++x) {
      const Dart y = alpha_[x];
      if (y < 0 || static_cast<std::size_t>(y) >= darts)
        throw std::invalid_argument("pairing references a dart out of range");
      if (static_cast<std::size_t>(y) == x) throw std::invalid_argument("pairing has a fixed point");
      if (static_cast<std::size_t>(alpha_[y]) != x) throw std::invalid_argument("pairing is not an involution");
    }
  }

  /// Builds a pairing from its list of unordered dart pairs.
  static DartPairing from_pairs(int n, int d, std::span<const std::pair<Dart, Dart>> pairs) {
    check_degree_and_size(n, d);
    std::vector<Dart> alpha(static_cast<std::size_t>(n) * d, -1);
    for (auto [a, b] : pairs) {
      if (a < 0 || b < 0 || a >= n * d || b >= n * d)
        throw std::invalid_argument("pair references a dart out of range");
      if (alpha[a] != -1 || alpha[b] != -1 || a == b)
        throw std::invalid_argument("dart appears in more than one pair");
      alpha[a] = b;
      alpha[b] = a;
    }
    if (std::find(alpha.begin(), alpha.end(), -1) != alpha.end())
      throw std::invalid_argument("pairs do not cover every dart");
    return DartPairing(n, d, std::move(alpha));
  }

  int vertex_count() const { return n_; }
  int degree() const { return d_; }
  int dart_count() const { return n_ * d_; }
  int pair_count() const { return n_ * d_ / 2; }

  Dart partner(Dart x) const { return alpha_[x]; }
  Vertex cell(Dart x) const { return x / d_; }
  std::span<const Dart> alpha() const { return alpha_; }

  /// Pairs (a, b) with a < b, sorted by a.
  std::vector<std::pair<Dart, Dart>> pairs() const {
    std::vector<std::pair<Dart, Dart>> out;
    out.reserve(pair_count());
    for (Dart x = 0; x < dart_count(); ++x)
      if (x < alpha_[x]) out.emplace_back(x, alpha_[x]);
    return out;
  }

  friend bool operator==(const DartPairing&, const DartPairing&) = default;

 private:
  int n_;
  int d_;
  std::vector<Dart> alpha_;
};

/// Uniform random configuration: shuffle the darts and pair neighbours.
inline DartPairing sample_configuration(int n, int d, Rng& rng) {
  check_degree_and_size(n, d);
  std::vector<Dart> order(static_cast<std::size_t>(n) * d);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Dart> alpha(order.size());
  for (std::size_t i = 0; i < order.size(); i += 2) {
    alpha[order[i]] = order[i + 1];
    alpha[order[i + 1]] = order[i];
  }
  return DartPairing(n, d, std::move(alpha));
}

/// (2m - 1)!! as an integer, or 0 if it exceeds `cap`.
inline std::uint64_t capped_configuration_count(int m, std::uint64_t cap) {
  std::uint64_t count = 1;
  for (int j = 1; j <= m; ++j) {
    count *= static_cast<std::uint64_t>(2 * j - 1);
    if (count > cap) return 0;
  }
  return count;
}

/// Calls `visit(const DartPairing&)` once for every configuration on n*d
/// darts, in lexicographic order of the sorted pair list.
template <class Visitor>
void for_each_configuration(int n, int d, Visitor&& visit) {
  check_degree_and_size(n, d);
  const int darts = n * d;
  if (capped_configuration_count(darts / 2, kEnumerationLimit) == 0)
    throw std::length_error("configuration space too large to enumerate");

  std::vector<Dart> alpha(darts, -1);
  auto recurse = [&](auto& self) -> void {
    auto first = std::find(alpha.begin(), alpha.end(), -1);
    if (first == alpha.end()) {
      visit(DartPairing(n, d, alpha));
      return;
    }
    const Dart a = static_cast<Dart>(first - alpha.begin());
    for (Dart b = a + 1; b < darts; ++b) {
      if (alpha[b] != -1) continue;
      alpha[a] = b;
      alpha[b] = a;
      self(self);
      alpha[a] = -1;
      alpha[b] = -1;
    }
  };
  recurse(recurse);
}

inline std::vector<DartPairing> enumerate_configurations(int n, int d) {
  std::vector<DartPairing> out;
  for_each_configuration(n, d, [&](const DartPairing& p) { out.push_back(p); });
  return out;
}

/// X_k for k = 1..max_length. A k-cycle is a set of k pairs joining k
/// distinct cells cyclically; parallel pairs give distinct cycles.
class CycleCensus {
 public:
  explicit CycleCensus(int max_length) : counts_(static_cast<std::size_t>(max_length), 0) {}

  int max_length() const { return static_cast<int>(counts_.size()); }
  std::uint64_t operator[](int k) const { return counts_.at(static_cast<std::size_t>(k - 1)); }
  std::uint64_t& operator[](int k) { return counts_.at(static_cast<std::size_t>(k - 1)); }

 private:
  std::vector<std::uint64_t> counts_;
};

inline CycleCensus count_k_cycles(const DartPairing& pairing, int max_length) {
  if (max_length < 1) throw std::invalid_argument("cycle census needs max length >= 1");
  CycleCensus census(max_length);
  const int n = pairing.vertex_count();
  const int d = pairing.degree();

  for (Dart x = 0; x < pairing.dart_count(); ++x) {
    const Dart y = pairing.partner(x);
    if (x < y && pairing.cell(x) == pairing.cell(y)) ++census[1];
  }
  if (max_length == 1) return census;

  // Closed walks from their smallest vertex through strictly larger, distinct
  // vertices. Each cycle of length >= 2 is met once per direction.
  std::vector<std::uint64_t> walks(static_cast<std::size_t>(max_length) + 1, 0);
  std::vector<char> on_path(n, 0);
  Vertex start = 0;
  auto dfs = [&](auto& self, Vertex u, int depth, Dart arrival) -> void {
    for (Dart x = u * d; x < (u + 1) * d; ++x) {
      if (x == arrival) continue;
      const Dart y = pairing.partner(x);
      const Vertex v = pairing.cell(y);
      if (v == u) continue;
      if (v == start) {
        ++walks[depth + 1];
      } else if (v > start && !on_path[v] && depth + 1 < max_length) {
        on_path[v] = 1;
        self(self, v, depth + 1, y);
        on_path[v] = 0;
      }
    }
  };
  for (start = 0; start < n; ++start) {
    on_path[start] = 1;
    dfs(dfs, start, 0, -1);
    on_path[start] = 0;
  }
  for (int k = 2; k <= max_length; ++k) census[k] = walks[k] / 2;
  return census;
}

/// True iff the configuration has no loops and no couplings.
inline bool is_simple(const DartPairing& pairing) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(pairing.pair_count());
  for (auto [a, b] : pairing.pairs()) {
    Vertex u = pairing.cell(a);
    Vertex v = pairing.cell(b);
    if (u == v) return false;
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges.begin(), edges.end());
  return std::adjacent_find(edges.begin(), edges.end()) == edges.end();
}

/// The multigraph phi(F): one edge {cell(a), cell(b)} per pair; loops allowed.
struct Multigraph {
  int n = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;  // u <= v

  std::vector<int> degrees() const {
    std::vector<int> deg(n, 0);
    for (auto [u, v] : edges) {
      ++deg[u];
      ++deg[v];
    }
    return deg;
  }
};

inline Multigraph project_to_multigraph(const DartPairing& pairing) {
  Multigraph g;
  g.n = pairing.vertex_count();
  g.edges.reserve(pairing.pair_count());
  for (auto [a, b] : pairing.pairs()) {
    Vertex u = pairing.cell(a);
    Vertex v = pairing.cell(b);
    g.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  return g;
}

}  // namespace belyi
