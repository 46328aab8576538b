#include <gtest/gtest.h>

#include <map>
#include <set>

#include "belyi/map_io.hpp"
#include "belyi/roots.hpp"

namespace belyi {
namespace {

CombinatorialMap fixture(const std::string& name) { return load_map(std::string(BELYI_DATA_DIR) + "/" + name); }

int defect_count(const CombinatorialMap& map, const std::vector<Dart>& darts) {
  int defects = 0;
  const std::size_t k = darts.size();
  for (std::size_t i = 0; i < k; ++i)
    defects += map.rotation().next(map.pairing().partner(darts[(i + k - 1) % k])) != darts[i];
  return defects;
}

// Every closed dart walk with distinct vertices that starts at its smallest
// vertex, kept if the verifier accepts it.
std::vector<RootPath> brute_force_roots(const CombinatorialMap& map, int max_len) {
  std::vector<RootPath> out;
  std::vector<Dart> darts;
  std::vector<Vertex> vertices;
  const int d = map.degree();

  auto consider = [&]() {
    RootPath r{vertices, darts, std::nullopt};
    const std::size_t k = darts.size();
    for (std::size_t i = 0; i < k; ++i)
      if (map.rotation().next(map.pairing().partner(darts[(i + k - 1) % k])) != darts[i]) r.defect = vertices[i];
    if (root_violation(map, r).empty()) out.push_back(r);
  };

  auto walk = [&](auto& self, Vertex start, Vertex u) -> void {
    for (Dart x = u * d; x < (u + 1) * d; ++x) {
      const Vertex w = map.cell(map.pairing().partner(x));
      darts.push_back(x);
      if (w == start) {
        consider();
      } else if (w > start && std::find(vertices.begin(), vertices.end(), w) == vertices.end() &&
                 static_cast<int>(vertices.size()) < max_len) {
        vertices.push_back(w);
        self(self, start, w);
        vertices.pop_back();
      }
      darts.pop_back();
    }
  };

  for (Vertex s = 0; s < map.vertex_count(); ++s) {
    vertices.assign(1, s);
    walk(walk, s, s);
  }
  std::sort(out.begin(), out.end(), [](const RootPath& a, const RootPath& b) {
    return std::tie(a.vertices, a.darts) < std::tie(b.vertices, b.darts);
  });
  return out;
}

// Rotates a root so that it starts at its smallest vertex.
RootPath canonical(RootPath r) {
  const auto it = std::min_element(r.vertices.begin(), r.vertices.end());
  const auto shift = it - r.vertices.begin();
  std::rotate(r.vertices.begin(), r.vertices.begin() + shift, r.vertices.end());
  std::rotate(r.darts.begin(), r.darts.begin() + shift, r.darts.end());
  return r;
}

TEST(Roots, StandardCubeRootsAreItsFaces) {
  const auto cube = fixture("cube_standard.map");
  const auto roots = enumerate_roots(cube, 8);
  ASSERT_EQ(roots.size(), 6u);
  std::set<std::vector<Dart>> face_darts;
  for (const auto& f : trace_faces(cube).faces) face_darts.insert({f.begin(), f.end()});
  for (const auto& r : roots) {
    EXPECT_EQ(r.length(), 4);
    EXPECT_FALSE(r.defect.has_value());
    EXPECT_TRUE(is_valid_root(cube, r));
    std::vector<Dart> sorted = r.darts;
    std::sort(sorted.begin(), sorted.end());
    bool on_face = false;
    for (const auto& f : face_darts) {
      std::vector<Dart> fs = f;
      std::sort(fs.begin(), fs.end());
      on_face = on_face || fs == sorted;
    }
    EXPECT_TRUE(on_face);
  }
}

TEST(Roots, FlippedCubeHasThreeRootsWithDefectAtTheFlip) {
  const auto flipped = fixture("cube_flipped.map");
  const auto roots = enumerate_roots(flipped, 4);
  ASSERT_EQ(roots.size(), 6u);
  int defective = 0;
  for (const auto& r : roots) {
    EXPECT_EQ(r.length(), 4);
    if (r.defect) {
      ++defective;
      EXPECT_EQ(*r.defect, 2);
    }
  }
  EXPECT_EQ(defective, 3);

  // the flip also turns three hexagons through vertex 2 into roots
  const auto longer = enumerate_roots(flipped, 8);
  EXPECT_EQ(longer, brute_force_roots(flipped, 8));
  ASSERT_EQ(longer.size(), 9u);
  for (const auto& r : longer) {
    if (r.length() == 4) continue;
    EXPECT_EQ(r.length(), 6);
    EXPECT_NE(std::find(r.vertices.begin(), r.vertices.end(), 2), r.vertices.end());
    EXPECT_TRUE(r.defect.has_value());
  }
}

TEST(Roots, ThetaFixtures) {
  const auto opposite = enumerate_roots(fixture("theta_opposite.map"), 2);
  EXPECT_EQ(opposite.size(), 3u);
  for (const auto& r : opposite) EXPECT_FALSE(r.defect.has_value());
  const auto same = fixture("theta_same.map");
  EXPECT_EQ(enumerate_roots(same, 2), brute_force_roots(same, 2));
}

TEST(Roots, EnumerationMatchesBruteForce) {
  Rng rng = make_stream(404);
  for (int i = 0; i < 150; ++i) {
    const int n = 2 * (1 + i % 6);
    const int d = 3 + (i % 4 == 3);
    const auto map = sample_map(n, d, rng);
    const int max_len = 1 + i % n;
    const auto fast = enumerate_roots(map, max_len);
    EXPECT_EQ(fast, brute_force_roots(map, max_len)) << "n=" << n << " d=" << d << " L=" << max_len;
    for (const auto& r : fast) EXPECT_LE(defect_count(map, r.darts), 1);
  }
}

TEST(Roots, EachRootReportedOnce) {
  Rng rng = make_stream(77);
  for (int i = 0; i < 20; ++i) {
    const auto map = sample_map(60, 3, rng);
    const auto roots = enumerate_roots(map, 8);
    std::set<std::vector<Dart>> keys;
    for (const auto& r : roots) EXPECT_TRUE(keys.insert(r.darts).second);
  }
}

TEST(Roots, CubicCycleIsARootInAtMostOneDirection) {
  // Reversing a cubic cycle swaps left and right turns at every vertex.
  Rng rng = make_stream(78);
  for (int i = 0; i < 50; ++i) {
    const auto map = sample_map(40, 3, rng);
    std::map<std::set<Dart>, int> per_cycle;
    for (const auto& r : enumerate_roots(map, 10)) {
      if (r.length() < 3) continue;
      std::set<Dart> edges;
      for (Dart x : r.darts) edges.insert(std::min(x, map.pairing().partner(x)));
      ++per_cycle[edges];
    }
    for (const auto& [edges, count] : per_cycle) EXPECT_EQ(count, 1);
  }
}

TEST(Roots, FaceRootsAreValidAndEnumerated) {
  Rng rng = make_stream(91);
  for (int i = 0; i < 30; ++i) {
    const auto map = sample_map(24, 3, rng);
    const auto all = enumerate_roots(map, 24);
    for (const auto& f : trace_faces(map).faces) {
      const auto r = find_root_in_face(map, f);
      ASSERT_EQ(root_violation(map, r), "");
      EXPECT_LE(r.length(), static_cast<int>(f.size()));
      EXPECT_NE(std::find(all.begin(), all.end(), canonical(r)), all.end());
    }
  }
}

TEST(Roots, EveryFaceYieldsARootOnHundredMaps) {
  Rng rng = make_stream(100);
  int failures = 0, faces = 0;
  for (int i = 0; i < 100; ++i) {
    const auto map = sample_map(100, 3, rng);
    for (const auto& f : trace_faces(map).faces) {
      ++faces;
      failures += !is_valid_root(map, find_root_in_face(map, f));
    }
  }
  EXPECT_EQ(failures, 0);
  EXPECT_GT(faces, 100);
}

TEST(Roots, FaceRootRejectsNonFaces) {
  const auto cube = fixture("cube_standard.map");
  const std::vector<Dart> not_a_face = {0, 1, 2};
  EXPECT_THROW(find_root_in_face(cube, not_a_face), std::invalid_argument);
  EXPECT_THROW(find_root_in_face(cube, std::vector<Dart>{}), std::invalid_argument);
}

TEST(RootVerifier, FlagsEachViolation) {
  const auto cube = fixture("cube_standard.map");
  auto r = enumerate_roots(cube, 4).front();
  ASSERT_EQ(root_violation(cube, r), "");
  EXPECT_NE(root_violation(cube, RootPath{}), "");
  auto mislabeled = r;
  mislabeled.defect = r.vertices[1];
  EXPECT_NE(root_violation(cube, mislabeled), "");
  auto broken = r;
  std::swap(broken.darts[0], broken.darts[1]);
  EXPECT_NE(root_violation(cube, broken), "");
  auto short_vertices = r;
  short_vertices.vertices.pop_back();
  EXPECT_NE(root_violation(cube, short_vertices), "");
  // reverse direction: four right turns
  RootPath reversed;
  for (std::size_t i = r.darts.size(); i-- > 0;) {
    reversed.darts.push_back(cube.pairing().partner(r.darts[i]));
    reversed.vertices.push_back(cube.cell(reversed.darts.back()));
  }
  EXPECT_NE(root_violation(cube, reversed), "");
}

TEST(RootBound, MatchesDefinitionAndScalesLikeSqrtN) {
  double direct = 0.0;
  for (long k = 3; k <= 10; ++k) direct += (k + 1) * expected_k_cycles_exact(100, 3, k) / std::pow(2.0, k);
  EXPECT_NEAR(expected_root_count_bound(100, 3, 10), direct, 1e-12 * direct);
  EXPECT_EQ(expected_root_count_bound(100, 3, 2), 0.0);
  const long n = 10000;
  EXPECT_LE(expected_root_count_bound(n, 3, ceil_sqrt(n * 3 / 2)), 1.3 * std::sqrt(3.0 * n));
  EXPECT_THROW(expected_root_count_bound(100, 4, 10), std::invalid_argument);
  EXPECT_THROW(expected_root_count_bound(10, 3, 11), std::invalid_argument);
}

TEST(RootBound, EmpiricalRootCountsAtHundredVertices) {
  const int n = 100, maps = 200;
  const int max_len = static_cast<int>(ceil_sqrt(n));
  Rng rng = make_stream(2025);
  double sum = 0.0, sum_sq = 0.0, short_faces = 0.0;
  for (int i = 0; i < maps; ++i) {
    const auto map = sample_map(n, 3, rng);
    int count = 0;
    for (const auto& r : enumerate_roots(map, max_len)) count += r.length() >= 3;
    sum += count;
    sum_sq += static_cast<double>(count) * count;
    for (int len : trace_faces(map).lengths()) short_faces += len >= 3 && len <= max_len;
  }
  const double mean = sum / maps;
  const double se = std::sqrt((sum_sq / maps - mean * mean) / (maps - 1));
  const double bound = expected_root_count_bound(n, 3, max_len);
  // Both traversal directions are roots of their own, so the directed count
  // averages twice the one-direction sum.
  EXPECT_NEAR(mean, 2.0 * bound, 4.0 * se);
  EXPECT_LE(short_faces / maps, bound);
}

}  // namespace
}  // namespace belyi
