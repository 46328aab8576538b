#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "belyi/expectations.hpp"
#include "belyi/rotation_map.hpp"

namespace belyi {

/// A simple closed path whose every step but at most one is a left turn.
///
/// darts[i] leaves vertices[i] and its partner arrives at vertices[i + 1]
/// (indices mod length). The step into darts[i] is a left turn when
/// darts[i] == sigma(alpha(darts[i - 1])); `defect` names the one vertex
/// where it is not, if any.
struct RootPath {
  std::vector<Vertex> vertices;
  std::vector<Dart> darts;
  std::optional<Vertex> defect;

  int length() const { return static_cast<int>(darts.size()); }
  friend bool operator==(const RootPath&, const RootPath&) = default;
};

/// Maximum number of search states enumerate_roots may expand.
inline constexpr std::uint64_t kRootSearchLimit = 10'000'000;

/// Checks every root invariant by re-walking the path. Returns an empty
/// string when valid, otherwise the first violation found.
inline std::string root_violation(const CombinatorialMap& map, const RootPath& root) {
  const auto& alpha = map.pairing();
  const auto& sigma = map.rotation();
  const std::size_t k = root.darts.size();
  if (k == 0) return "empty path";
  if (root.vertices.size() != k) return "vertex and dart sequences differ in length";

  auto sorted = root.vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return "path repeats a vertex";

  int defects = 0;
  std::optional<Vertex> where;
  for (std::size_t i = 0; i < k; ++i) {
    const Dart out = root.darts[i];
    if (out < 0 || out >= map.dart_count()) return "dart out of range";
    if (map.cell(out) != root.vertices[i]) return "dart does not leave its listed vertex";
    if (map.cell(alpha.partner(out)) != root.vertices[(i + 1) % k]) return "edge does not reach the next vertex";
    const Dart in = alpha.partner(root.darts[(i + k - 1) % k]);
    if (k > 1 && in == out) return "path reuses the edge it arrived on";
    if (sigma.next(in) != out) {
      ++defects;
      where = root.vertices[i];
    }
  }
  if (defects > 1) return "orientation disagrees at more than one vertex";
  if (where != root.defect) return "defect vertex mislabelled";
  return {};
}

inline bool is_valid_root(const CombinatorialMap& map, const RootPath& root) {
  return root_violation(map, root).empty();
}

/// Walks the face from its first dart until a vertex repeats; the loop
/// closed at the first repetition is a root lying on the face.
inline RootPath find_root_in_face(const CombinatorialMap& map, std::span<const Dart> face) {
  if (face.empty()) throw std::invalid_argument("face is empty");
  for (std::size_t i = 0; i < face.size(); ++i)
    if (map.face_next(face[i]) != face[(i + 1) % face.size()])
      throw std::invalid_argument("dart sequence is not a face of the map");

  std::unordered_map<Vertex, std::size_t> first_seen;
  std::vector<Dart> walk;
  Dart x = face.front();
  for (;;) {
    const Vertex v = map.cell(x);
    if (auto it = first_seen.find(v); it != first_seen.end()) {
      RootPath root;
      for (std::size_t j = it->second; j < walk.size(); ++j) {
        root.darts.push_back(walk[j]);
        root.vertices.push_back(map.cell(walk[j]));
      }
      if (x != walk[it->second]) root.defect = v;
      return root;
    }
    first_seen.emplace(v, walk.size());
    walk.push_back(x);
    x = map.face_next(x);
  }
}

/// Every root of length <= max_len, each once. A root is reported starting
/// at its smallest vertex in its own direction of travel; output is sorted
/// by (vertices, darts).
inline std::vector<RootPath> enumerate_roots(const CombinatorialMap& map, int max_len) {
  if (max_len < 1) throw std::invalid_argument("max_len must be at least 1");
  const auto& alpha = map.pairing();
  const auto& sigma = map.rotation();
  const int d = map.degree();

  std::vector<RootPath> out;
  std::vector<char> on_path(map.vertex_count(), 0);
  std::vector<Vertex> vertices;
  std::vector<Dart> darts;
  std::optional<Vertex> defect;
  std::uint64_t states = 0;
  Vertex start = 0;

  auto emit = [&](std::optional<Vertex> where) {
    out.push_back({vertices, darts, where});
  };

  auto extend = [&](auto& self, Vertex u, Dart in) -> void {
    if (++states > kRootSearchLimit) throw std::length_error("root search exceeded state limit");
    const Dart left = sigma.next(in);
    for (Dart x = u * d; x < (u + 1) * d; ++x) {
      if (x == in) continue;
      const bool turn_defect = x != left;
      if (turn_defect && defect) continue;
      const Dart arrive = alpha.partner(x);
      const Vertex w = map.cell(arrive);
      if (w == u) continue;

      darts.push_back(x);
      if (turn_defect) defect = u;
      if (w == start) {
        const Dart first = darts.front();
        const bool close_defect = sigma.next(arrive) != first;
        if (arrive != first && !(close_defect && defect)) emit(close_defect ? std::optional<Vertex>(start) : defect);
      } else if (w > start && !on_path[w] && static_cast<int>(vertices.size()) < max_len) {
        on_path[w] = 1;
        vertices.push_back(w);
        self(self, w, arrive);
        vertices.pop_back();
        on_path[w] = 0;
      }
      if (turn_defect) defect.reset();
      darts.pop_back();
    }
  };

  for (start = 0; start < map.vertex_count(); ++start) {
    on_path[start] = 1;
    vertices.assign(1, start);
    for (Dart first = start * d; first < (start + 1) * d; ++first) {
      const Dart arrive = alpha.partner(first);
      const Vertex v = map.cell(arrive);
      darts.assign(1, first);
      if (v == start) {
        emit(sigma.next(arrive) != first ? std::optional<Vertex>(start) : std::nullopt);
      } else if (v > start && max_len >= 2) {
        on_path[v] = 1;
        vertices.push_back(v);
        extend(extend, v, arrive);
        vertices.pop_back();
        on_path[v] = 0;
      }
    }
    on_path[start] = 0;
  }

  std::sort(out.begin(), out.end(), [](const RootPath& a, const RootPath& b) {
    return std::tie(a.vertices, a.darts) < std::tie(b.vertices, b.darts);
  });
  return out;
}

/// Sum_{k=3}^{max_len} (k+1) E(X_k) / 2^k: a cycle of length k is a root for
/// k+1 of the 2^k orientations of its vertices (fixed direction), so this
/// bounds the expected number of short faces. Cubic maps only.
inline double expected_root_count_bound(long n, int d, long max_len) {
  if (d != 3) throw std::invalid_argument("root count bound is defined for cubic maps only");
  if (max_len > n) throw std::invalid_argument("max_len must not exceed n");
  double sum = 0.0;
  for (long k = 3; k <= max_len; ++k)
    sum += static_cast<double>(k + 1) * expected_k_cycles_exact(n, d, k) / std::ldexp(1.0, static_cast<int>(k));
  return sum;
}

}  // namespace belyi
