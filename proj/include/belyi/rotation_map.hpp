#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "belyi/config_model.hpp"
#include "belyi/random.hpp"

namespace belyi {

/// An orientation: sigma permutes the darts of each cell in a single d-cycle.
class RotationSystem {
 public:
  RotationSystem(int n, int d, std::vector<Dart> sigma) : n_(n), d_(d), sigma_(std::move(sigma)) {
    if (n_ < 1) throw std::invalid_argument("vertex count must be positive");
    if (d_ < 3) throw std::invalid_argument("degree must be at least 3");
    if (sigma_.size() != static_cast<std::size_t>(n_) * d_)
      throw std::invalid_argument("rotation must cover exactly n*d darts");
    for (Vertex v = 0; v < n_; ++v) {
      Dart x = v * d_;
      for (int step = 0; step < d_; ++step) {
        const Dart y = sigma_[x];
        if (y < v * d_ || y >= (v + 1) * d_)
          throw std::invalid_argument("rotation moves a dart to another vertex");
        x = y;
        if (x == v * d_ && step + 1 < d_)
          throw std::invalid_argument("rotation at a vertex is not a single d-cycle");
      }
      if (x != v * d_) throw std::invalid_argument("rotation at a vertex is not a single d-cycle");
    }
  }

  /// Builds a rotation from the cyclic dart order listed for each vertex.
  static RotationSystem from_cycles(int n, int d, std::span<const std::vector<Dart>> cycles) {
    if (cycles.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("need one cyclic order per vertex");
    std::vector<Dart> sigma(static_cast<std::size_t>(n) * d, -1);
    for (Vertex v = 0; v < n; ++v) {
      const auto& cyc = cycles[v];
      if (cyc.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("cyclic order must list exactly d darts");
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        if (cyc[i] < v * d || cyc[i] >= (v + 1) * d || sigma[cyc[i]] != -1)
          throw std::invalid_argument("cyclic order must list each dart of its vertex once");
        sigma[cyc[i]] = cyc[(i + 1) % cyc.size()];
      }
    }
    return RotationSystem(n, d, std::move(sigma));
  }

  int vertex_count() const { return n_; }
  int degree() const { return d_; }
  Dart next(Dart x) const { return sigma_[x]; }
  std::span<const Dart> sigma() const { return sigma_; }

  /// Darts of v in cyclic order, starting from v's smallest dart.
  std::vector<Dart> cycle_at(Vertex v) const {
    std::vector<Dart> out;
    out.reserve(d_);
    Dart x = v * d_;
    do {
      out.push_back(x);
      x = sigma_[x];
    } while (x != v * d_);
    return out;
  }

  /// Same rotation with the cyclic order at v reversed.
  RotationSystem flipped_at(Vertex v) const {
    auto sigma = sigma_;
    for (Dart x = v * d_; x < (v + 1) * d_; ++x) sigma[sigma_[x]] = x;
    return RotationSystem(n_, d_, std::move(sigma));
  }

  friend bool operator==(const RotationSystem&, const RotationSystem&) = default;

 private:
  int n_;
  int d_;
  std::vector<Dart> sigma_;
};

/// Independent uniform cyclic order at each vertex, one of (d - 1)! each.
inline RotationSystem sample_orientation(int n, int d, Rng& rng) {
  if (n < 1) throw std::invalid_argument("vertex count must be positive");
  if (d < 3) throw std::invalid_argument("degree must be at least 3");
  std::vector<Dart> sigma(static_cast<std::size_t>(n) * d);
  std::vector<Dart> order(d);
  for (Vertex v = 0; v < n; ++v) {
    std::iota(order.begin(), order.end(), v * d);
    std::shuffle(order.begin() + 1, order.end(), rng);
    for (int i = 0; i < d; ++i) sigma[order[i]] = order[(i + 1) % d];
  }
  return RotationSystem(n, d, std::move(sigma));
}

/// An oriented configuration (Gamma, O). The face permutation is
/// phi = sigma o alpha: cross the edge, then turn to the next dart in the
/// cyclic order at the far end.
class CombinatorialMap {
 public:
  CombinatorialMap(DartPairing pairing, RotationSystem rotation)
      : pairing_(std::move(pairing)), rotation_(std::move(rotation)) {
    if (pairing_.vertex_count() != rotation_.vertex_count() || pairing_.degree() != rotation_.degree())
      throw std::invalid_argument("pairing and rotation disagree on n or d");
  }

  const DartPairing& pairing() const { return pairing_; }
  const RotationSystem& rotation() const { return rotation_; }
  int vertex_count() const { return pairing_.vertex_count(); }
  int degree() const { return pairing_.degree(); }
  int dart_count() const { return pairing_.dart_count(); }
  Vertex cell(Dart x) const { return pairing_.cell(x); }

  Dart face_next(Dart x) const { return rotation_.next(pairing_.partner(x)); }

 private:
  DartPairing pairing_;
  RotationSystem rotation_;
};

inline CombinatorialMap sample_map(int n, int d, Rng& rng) {
  auto pairing = sample_configuration(n, d, rng);
  auto rotation = sample_orientation(n, d, rng);
  return CombinatorialMap(std::move(pairing), std::move(rotation));
}

/// Orbits of phi, i.e. the left-hand-turn paths.
struct FaceDecomposition {
  std::vector<std::vector<Dart>> faces;  // each starts at its smallest dart
  std::vector<int> face_of;              // dart -> face index

  int count() const { return static_cast<int>(faces.size()); }
  std::vector<int> lengths() const {
    std::vector<int> out;
    out.reserve(faces.size());
    for (const auto& f : faces) out.push_back(static_cast<int>(f.size()));
    return out;
  }
};

inline FaceDecomposition trace_faces(const CombinatorialMap& map) {
  FaceDecomposition out;
  out.face_of.assign(map.dart_count(), -1);
  for (Dart start = 0; start < map.dart_count(); ++start) {
    if (out.face_of[start] != -1) continue;
    const int id = out.count();
    auto& face = out.faces.emplace_back();
    Dart x = start;
    do {
      out.face_of[x] = id;
      face.push_back(x);
      x = map.face_next(x);
    } while (x != start);
  }
  return out;
}

struct Components {
  int count = 0;
  std::vector<int> labels;  // numbered by smallest member vertex
};

inline Components connected_components(const Multigraph& g) {
  std::vector<std::vector<Vertex>> adj(g.n);
  for (auto [u, v] : g.edges) {
    adj[u].push_back(v);
    if (u != v) adj[v].push_back(u);
  }
  Components c;
  c.labels.assign(g.n, -1);
  std::queue<Vertex> q;
  for (Vertex s = 0; s < g.n; ++s) {
    if (c.labels[s] != -1) continue;
    c.labels[s] = c.count;
    q.push(s);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex v : adj[u])
        if (c.labels[v] == -1) {
          c.labels[v] = c.count;
          q.push(v);
        }
    }
    ++c.count;
  }
  return c;
}

struct SurfaceStats {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int euler_characteristic = 0;
  bool connected = false;
  int components = 0;
  std::optional<int> genus;          // set when connected
  std::vector<int> component_genera; // indexed by component label

  int total_genus() const {
    int g = 0;
    for (int x : component_genera) g += x;
    return g;
  }
};

/// genus = 1 + (n (d - 2) - 2F) / 4, the Euler formula for a connected
/// d-regular map with F faces. For d = 3 this reads 1 + (n - 2F) / 4.
inline double genus_from_face_count(int n, int d, int faces) {
  return 1.0 + (static_cast<double>(n) * (d - 2) - 2.0 * faces) / 4.0;
}

inline SurfaceStats surface_stats(const CombinatorialMap& map, const FaceDecomposition& faces) {
  const auto& pairing = map.pairing();
  SurfaceStats s;
  s.vertices = map.vertex_count();
  s.edges = pairing.pair_count();
  s.faces = faces.count();
  s.euler_characteristic = s.vertices - s.edges + s.faces;

  const auto comp = connected_components(project_to_multigraph(pairing));
  s.components = comp.count;
  s.connected = comp.count == 1;

  std::vector<int> chi(comp.count, 0);
  for (Vertex v = 0; v < s.vertices; ++v) ++chi[comp.labels[v]];
  for (auto [a, b] : pairing.pairs()) --chi[comp.labels[pairing.cell(a)]];
  for (const auto& f : faces.faces) ++chi[comp.labels[pairing.cell(f.front())]];

  s.component_genera.reserve(comp.count);
  for (int c : chi) {
    if ((2 - c) % 2 != 0 || c > 2) throw std::logic_error("component Euler characteristic is inconsistent");
    s.component_genera.push_back((2 - c) / 2);
  }
  if (s.connected) s.genus = s.component_genera.front();
  return s;
}

inline SurfaceStats surface_stats(const CombinatorialMap& map) { return surface_stats(map, trace_faces(map)); }

}  // namespace belyi
