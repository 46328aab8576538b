#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <map>
#include <set>
#include <sstream>

#include "belyi/config_model.hpp"
#include "belyi/map_io.hpp"

namespace belyi {
namespace {

DartPairing theta_pairing() {
  const std::vector<std::pair<Dart, Dart>> pairs = {{0, 3}, {1, 4}, {2, 5}};
  return DartPairing::from_pairs(2, 3, pairs);
}

DartPairing cube_pairing() { return load_map(std::string(BELYI_DATA_DIR) + "/cube_standard.map").pairing(); }

// Brute-force census: every set of k pairs is tested for being a single
// cycle through k distinct cells.
std::vector<std::uint64_t> brute_force_census(const DartPairing& p, int max_length) {
  const auto pairs = p.pairs();
  const int m = static_cast<int>(pairs.size());
  std::vector<std::uint64_t> counts(max_length + 1, 0);
  for (int k = 1; k <= max_length && k <= m; ++k) {
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      std::map<Vertex, std::vector<Vertex>> nbrs;
      bool loop = false;
      for (int i : pick) {
        const Vertex u = p.cell(pairs[i].first), v = p.cell(pairs[i].second);
        loop = loop || u == v;
        nbrs[u].push_back(v);
        nbrs[v].push_back(u);
      }
      bool cycle = false;
      if (k == 1) {
        cycle = loop;
      } else if (!loop && static_cast<int>(nbrs.size()) == k) {
        cycle = std::all_of(nbrs.begin(), nbrs.end(), [](const auto& e) { return e.second.size() == 2; });
        if (cycle) {
          // degree 2 everywhere; the set is one cycle iff it is connected
          std::set<Vertex> seen;
          std::vector<Vertex> stack = {nbrs.begin()->first};
          while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            if (!seen.insert(u).second) continue;
            for (Vertex w : nbrs[u]) stack.push_back(w);
          }
          cycle = static_cast<int>(seen.size()) == k;
        }
      }
      if (cycle) ++counts[k];

      int i = k - 1;
      while (i >= 0 && pick[i] == m - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return counts;
}

TEST(SampleConfiguration, SatisfiesInvolutionInvariants) {
  Rng rng = make_stream(11);
  const auto p = sample_configuration(2, 3, rng);
  ASSERT_EQ(p.dart_count(), 6);
  EXPECT_EQ(p.pair_count(), 3);
  for (Dart x = 0; x < 6; ++x) {
    EXPECT_NE(p.partner(x), x);
    EXPECT_EQ(p.partner(p.partner(x)), x);
  }
}

TEST(SampleConfiguration, RejectsOddDartCountAndEmptyGraph) {
  Rng rng = make_stream(1);
  EXPECT_THROW(sample_configuration(3, 3, rng), std::invalid_argument);
  EXPECT_THROW(sample_configuration(0, 4, rng), std::invalid_argument);
  EXPECT_THROW(sample_configuration(4, 2, rng), std::invalid_argument);
}

TEST(SampleConfiguration, UniformOverAllFifteenConfigurations) {
  const auto all = enumerate_configurations(2, 3);
  ASSERT_EQ(all.size(), 15u);
  std::map<std::vector<Dart>, int> index;
  for (std::size_t i = 0; i < all.size(); ++i)
    index[std::vector<Dart>(all[i].alpha().begin(), all[i].alpha().end())] = static_cast<int>(i);

  constexpr int samples = 15000;
  std::vector<int> observed(15, 0);
  Rng rng = make_stream(2024);
  for (int s = 0; s < samples; ++s) {
    const auto p = sample_configuration(2, 3, rng);
    ++observed.at(index.at(std::vector<Dart>(p.alpha().begin(), p.alpha().end())));
  }
  const double expected = samples / 15.0;
  const double sd = std::sqrt(samples * (1.0 / 15) * (14.0 / 15));
  double chi2 = 0.0;
  for (int o : observed) {
    chi2 += (o - expected) * (o - expected) / expected;
    EXPECT_LT(std::abs(o - expected), 4 * sd);
  }
  const double critical = boost::math::quantile(boost::math::chi_squared(14), 0.99);
  EXPECT_LT(chi2, critical);
}

TEST(SampleConfiguration, PropertyInvariantsUpToTenThousandVertices) {
  Rng rng = make_stream(99);
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 * (1 + static_cast<int>(rng() % 5000));
    const int d = 3 + static_cast<int>(rng() % 3);
    const auto p = sample_configuration(n, d, rng);
    for (Dart x = 0; x < p.dart_count(); ++x) {
      ASSERT_NE(p.partner(x), x);
      ASSERT_EQ(p.partner(p.partner(x)), x);
    }
    const auto g = project_to_multigraph(p);
    ASSERT_EQ(static_cast<int>(g.edges.size()), n * d / 2);
    for (int deg : g.degrees()) ASSERT_EQ(deg, d);
  }
}

TEST(EnumerateConfigurations, CountsMatchDoubleFactorial) {
  EXPECT_EQ(enumerate_configurations(2, 3).size(), 15u);
  std::size_t count = 0;
  std::set<std::vector<std::pair<Dart, Dart>>> distinct;
  std::vector<std::pair<Dart, Dart>> previous;
  for_each_configuration(4, 3, [&](const DartPairing& p) {
    auto pairs = p.pairs();
    if (count > 0) EXPECT_LT(previous, pairs);  // lexicographic order
    previous = pairs;
    distinct.insert(std::move(pairs));
    ++count;
  });
  EXPECT_EQ(count, 10395u);
  EXPECT_EQ(distinct.size(), 10395u);
}

TEST(EnumerateConfigurations, GuardsAgainstHugeSpaces) {
  EXPECT_THROW(enumerate_configurations(10, 3), std::length_error);  // 29!! > 10^7
  EXPECT_THROW(enumerate_configurations(2, 2), std::invalid_argument);
}

TEST(CountKCycles, LoopIsAOneCycle) {
  const std::vector<std::pair<Dart, Dart>> pairs = {{0, 1}, {2, 3}, {4, 5}};  // loops at 0 and 1, edge 0-1
  const auto census = count_k_cycles(DartPairing::from_pairs(2, 3, pairs), 2);
  EXPECT_EQ(census[1], 2u);
  EXPECT_EQ(census[2], 0u);
}

TEST(CountKCycles, ExhaustiveMeansOverFifteenConfigurations) {
  std::uint64_t x1 = 0, x2 = 0;
  for_each_configuration(2, 3, [&](const DartPairing& p) {
    const auto c = count_k_cycles(p, 2);
    x1 += c[1];
    x2 += c[2];
  });
  // mean 6/5 over 15 configurations
  EXPECT_EQ(x1, 18u);
  EXPECT_EQ(x2, 18u);
}

TEST(CountKCycles, AgreesWithSubsetOracle) {
  Rng rng = make_stream(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 * (2 + trial % 3);  // 4, 6, 8
    const auto p = sample_configuration(n, 3, rng);
    const int k_max = std::min(n, 6);
    const auto census = count_k_cycles(p, k_max);
    const auto oracle = brute_force_census(p, k_max);
    for (int k = 1; k <= k_max; ++k) EXPECT_EQ(census[k], oracle[k]) << "n=" << n << " k=" << k;
  }
}

TEST(CountKCycles, ThetaAndCube) {
  const auto theta = count_k_cycles(theta_pairing(), 2);
  EXPECT_EQ(theta[1], 0u);
  EXPECT_EQ(theta[2], 3u);
  const auto cube = count_k_cycles(cube_pairing(), 6);
  EXPECT_EQ(cube[3], 0u);
  EXPECT_EQ(cube[4], 6u);
  EXPECT_EQ(cube[6], 16u);
  EXPECT_THROW(count_k_cycles(cube_pairing(), 0), std::invalid_argument);
}

TEST(IsSimple, MatchesCensus) {
  EXPECT_FALSE(is_simple(theta_pairing()));
  EXPECT_TRUE(is_simple(cube_pairing()));
  const std::vector<std::pair<Dart, Dart>> with_loop = {{0, 1}, {2, 3}, {4, 5}};
  EXPECT_FALSE(is_simple(DartPairing::from_pairs(2, 3, with_loop)));

  Rng rng = make_stream(8);
  for (int i = 0; i < 300; ++i) {
    const auto p = sample_configuration(20, 3, rng);
    const auto c = count_k_cycles(p, 2);
    EXPECT_EQ(is_simple(p), c[1] == 0 && c[2] == 0);
  }
}

TEST(ProjectToMultigraph, ThetaAndLoops) {
  const auto g = project_to_multigraph(theta_pairing());
  ASSERT_EQ(g.edges.size(), 3u);
  for (auto e : g.edges) EXPECT_EQ(e, std::make_pair(0, 1));

  const std::vector<std::pair<Dart, Dart>> with_loop = {{0, 1}, {2, 3}, {4, 5}};
  const auto h = project_to_multigraph(DartPairing::from_pairs(2, 3, with_loop));
  EXPECT_EQ(std::count(h.edges.begin(), h.edges.end(), std::make_pair(0, 0)), 1);
  EXPECT_EQ(h.degrees(), (std::vector<int>{3, 3}));
}

TEST(DartPairing, RejectsMalformedInvolutions) {
  EXPECT_THROW(DartPairing(2, 3, {1, 0, 3, 2, 5}), std::invalid_argument);
  EXPECT_THROW(DartPairing(2, 3, {0, 2, 1, 4, 3, 5}), std::invalid_argument);  // fixed points
  EXPECT_THROW(DartPairing(2, 3, {1, 2, 0, 4, 5, 3}), std::invalid_argument);  // not an involution
  const std::vector<std::pair<Dart, Dart>> overlapping = {{0, 1}, {1, 2}, {4, 5}};
  EXPECT_THROW(DartPairing::from_pairs(2, 3, overlapping), std::invalid_argument);
}

TEST(PairingText, RoundTripsRandomPairings) {
  Rng rng = make_stream(3);
  for (int i = 0; i < 50; ++i) {
    const auto p = sample_configuration(2 + 2 * i, 3, rng);
    std::stringstream ss;
    write_pairing(ss, p);
    EXPECT_EQ(read_pairing(ss), p);
  }
  std::stringstream theta;
  write_pairing(theta, theta_pairing());
  EXPECT_EQ(theta.str(), "2 3\n0-3 1-4 2-5\n");
}

TEST(PairingText, ReportsMalformedInput) {
  for (const char* text : {"", "2\n0-3\n", "2 3\n0-3 1-4\n", "2 3\n0-3 1+4 2-5\n", "2 3\n0-3 1-4 2-x\n",
                           "2 3\n0-3 1-4 2-9\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_pairing(in), FormatError) << text;
  }
}

}  // namespace
}  // namespace belyi
