#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <map>
#include <random>
#include <set>

#include "salab/measure.h"
#include "salab/wellbehaved.h"

namespace salab {
namespace {

BlockGraph complete_graph(int k, int n) {
  BlockGraph g(k, n);
  for (Vertex u = 0; u < k * n; ++u)
    for (Vertex v = u + 1; v < k * n; ++v)
      if (u / n != v / n) g.add_edge(u, v);
  return g;
}

BlockGraph without_edge(const BlockGraph& g, Vertex a, Vertex b) {
  BlockGraph out(g.k(), g.n(), g.p());
  for (auto [u, v] : g.edges())
    if (!((u == a && v == b) || (u == b && v == a))) out.add_edge(u, v);
  return out;
}

long direct_common(const BlockGraph& g, const Tuple& t, const std::vector<Vertex>& target) {
  long c = 0;
  for (Vertex x : target) {
    bool all = true;
    for (Vertex v : t) all = all && g.adjacent(v, x);
    c += all;
  }
  return c;
}

bool in_window(long count, double expected, double slack) {
  return std::fabs(count - expected) <= slack * expected * (1 + 1e-12) + 1e-9;
}

// Every tuple of 1..max_size vertices in distinct source blocks, every
// target block outside the tuple: worst relative deviation and verdict.
std::pair<double, bool> direct_scan(const BlockGraph& g, const std::vector<std::vector<Vertex>>& source,
                                    const std::vector<std::vector<Vertex>>& target, int max_size,
                                    double beta, double p) {
  double worst = 0;
  bool pass = true;
  std::function<void(int, Tuple&)> walk = [&](int start, Tuple& t) {
    if (!t.empty()) {
      for (int j = 0; j < g.k(); ++j) {
        if (target[j].empty()) continue;
        bool inside = false;
        for (Vertex v : t) inside |= g.block_of(v) == j;
        if (inside) continue;
        double expected = std::pow(p, t.size()) * target[j].size();
        long c = direct_common(g, t, target[j]);
        worst = std::max(worst, std::fabs(c - expected) / expected);
        pass = pass && in_window(c, expected, beta);
      }
    }
    if (static_cast<int>(t.size()) == max_size) return;
    for (int b = start; b < g.k(); ++b)
      for (Vertex v : source[b]) {
        t.push_back(v);
        walk(b + 1, t);
        t.pop_back();
      }
  };
  Tuple t;
  walk(0, t);
  return {worst, pass};
}

std::vector<std::vector<Vertex>> blocks_of(const BlockGraph& g) {
  std::vector<std::vector<Vertex>> out(g.k());
  for (Vertex v = 0; v < g.vertex_count(); ++v) out[g.block_of(v)].push_back(v);
  return out;
}

TEST(Neighborhoods, Extremes) {
  auto full = check_common_neighborhoods(complete_graph(3, 5), 0.01, 1.0, 2);
  EXPECT_TRUE(full.pass);
  EXPECT_EQ(full.worst_deviation, 0);
  auto empty = check_common_neighborhoods(BlockGraph(3, 5), 0.9, 0.5, 1);
  EXPECT_FALSE(empty.pass);
  EXPECT_DOUBLE_EQ(empty.worst_deviation, 1.0);
}

TEST(Neighborhoods, MatchDirectScan) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    int k = 2 + trial % 3, n = 4 + static_cast<int>(rng() % 5);
    double beta = 0.3 + 0.1 * (trial % 5);
    auto g = sample_block_model(n, k, Rational(1, 2), rng());
    auto rep = check_common_neighborhoods(g, beta, 0.5, 2);
    auto [worst, pass] = direct_scan(g, blocks_of(g), blocks_of(g), 2, beta, 0.5);
    EXPECT_NEAR(rep.worst_deviation, worst, 1e-12);
    EXPECT_EQ(rep.pass, pass);
  }
}

// The union bound over 2400 single-vertex checks with mean 100 puts the
// failure probability under 1/20 at beta = 0.6.
TEST(Neighborhoods, SeedSweepWithinChernoffBudget) {
  int passed = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto g = sample_block_model(200, 4, Rational(1, 2), 100 + seed);
    passed += check_common_neighborhoods(g, 0.6, 0.5, 1).pass;
  }
  EXPECT_GE(passed, 18);
}

// Pairs at beta = 1/k sit about two standard deviations from the mean, so
// a scan over ~480K checks is expected to find violations. Logged only.
TEST(Neighborhoods, SeedSweepAtQuarterSlackIsLogged) {
  int passed = 0;
  double worst = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto g = sample_block_model(200, 4, Rational(1, 2), 100 + seed);
    auto rep = check_common_neighborhoods(g, 0.25, 0.5, 2);
    passed += rep.pass;
    worst = std::max(worst, rep.worst_deviation);
    EXPECT_EQ(rep.tuples_checked, 4 * 200 + 6 * 200 * 200);
  }
  RecordProperty("pass_rate", std::to_string(passed) + "/20");
  RecordProperty("worst_deviation", std::to_string(worst));
  std::cout << "d_cap=2 beta=1/4 n=200 pass rate " << passed << "/20, worst deviation " << worst << "\n";
}

TEST(ErrorSet, Extremes) {
  auto full = complete_graph(3, 6);
  std::vector<Vertex> side = {0, 1, 2, 3};
  EXPECT_TRUE(build_error_set(full, side, 2, 0.1, 1.0).vertices.empty());
  BlockGraph empty(3, 6);
  auto w = build_error_set(empty, side, 1, 0.1, 0.5);
  std::vector<Vertex> expected;
  for (Vertex v = 6; v < 18; ++v) expected.push_back(v);
  EXPECT_EQ(w.vertices, expected);
  EXPECT_EQ(w.packed_per_size[0], 12);
}

TEST(ErrorSet, SurvivorsAreWithinWindow) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    int k = 3, n = 12 + static_cast<int>(rng() % 10), ell = 1 + trial % 2;
    double gamma = 0.2 + 0.1 * (trial % 3);
    auto g = sample_block_model(n, k, Rational(1, 2), rng());
    int home = static_cast<int>(rng() % k);
    std::vector<Vertex> side;
    for (int i = 0; i < n; ++i)
      if (rng() % 3) side.push_back(home * n + i);
    if (side.empty()) side.push_back(home * n);
    auto w = build_error_set(g, side, ell, gamma, 0.5);
    EXPECT_NEAR(w.size_bound, 12.0 * ell * std::log(n) / (std::pow(0.5, ell) * gamma * gamma), 1e-9);
    std::set<Vertex> removed(w.vertices.begin(), w.vertices.end());
    std::vector<std::vector<Vertex>> source(k), target(k);
    for (int b = 0; b < k; ++b)
      if (b != home)
        for (int i = 0; i < n; ++i)
          if (!removed.count(b * n + i)) source[b].push_back(b * n + i);
    target[home] = side;
    EXPECT_TRUE(direct_scan(g, source, target, ell, gamma, 0.5).second);
    // Packings are disjoint within one tuple size and may overlap across sizes.
    long packed = 0;
    for (int a = 1; a <= ell; ++a) packed += a * w.packed_per_size[a - 1];
    EXPECT_GE(packed, static_cast<long>(w.vertices.size()));
    if (ell == 1) EXPECT_EQ(packed, static_cast<long>(w.vertices.size()));
  }
}

TEST(ErrorSetCheck, CompleteGraphAndRejection) {
  auto g = complete_graph(3, 8);
  WellBehavedSpec spec;
  spec.s = 2;
  spec.ell = 2;
  auto full = Rectangle::full(8, 3);
  Rectangle thin = full;
  thin.mutable_side(1).resize(3);
  auto checks = check_error_sets(g, spec, 1.0, {full, thin});
  ASSERT_EQ(checks.size(), 2u);
  EXPECT_TRUE(checks[0].admissible);
  EXPECT_TRUE(checks[0].pass);
  EXPECT_EQ(checks[0].error_set_size, 0);
  EXPECT_FALSE(checks[1].admissible);
  EXPECT_NE(checks[1].reason.find("block 1"), std::string::npos);
}

TEST(ErrorSetCheck, RemovalHypothesisImpliesBoundedNeighborhoods) {
  std::mt19937_64 rng(3);
  int with_hypothesis = 0, total = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 3, n = 60;
    auto g = sample_block_model(n, k, Rational(1, 2), rng());
    WellBehavedSpec spec;
    spec.s = 8;
    spec.ell = 1;
    std::vector<Rectangle> rects;
    for (int r = 0; r < 3; ++r) {
      std::vector<int> blocks = {0, 1, 2};
      std::vector<std::vector<Vertex>> sides(k);
      for (int b = 0; b < k; ++b) {
        if (r == 2 && b == 2) continue;  // an empty block is admissible
        for (int i = 0; i < n; ++i)
          if (rng() % 5) sides[b].push_back(b * n + i);
      }
      rects.emplace_back(n, blocks, sides);
    }
    for (const auto& c : check_error_sets(g, spec, 0.5, rects)) {
      ASSERT_TRUE(c.admissible) << c.reason;
      ++total;
      if (!c.removal_hypothesis) continue;
      ++with_hypothesis;
      EXPECT_LE(c.worst_deviation, 1.0 / k + 1e-12);
    }
  }
  EXPECT_EQ(total, 60);
  RecordProperty("removal_hypothesis_rate", std::to_string(with_hypothesis) + "/" + std::to_string(total));
}

TEST(SetRemoval, RandomInstances) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0, 1);
  int hypothesis = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    long u = 50 + static_cast<long>(rng() % 5000);
    Rational b(1 + static_cast<long>(rng() % 99), 100);
    b.canonicalize();
    Rational gamma(1 + static_cast<long>(rng() % 33), 100);
    gamma.canonicalize();
    double bd = b.get_d(), gd = gamma.get_d();
    long s = std::lround(u * bd * (1 + gd * (2 * unit(rng) - 1)));
    s = std::clamp(s, 0L, u);
    long tmax = static_cast<long>(std::floor(u * std::min(gd / 2, bd * gd)));
    long t = tmax > 0 ? static_cast<long>(rng() % (tmax + 1)) : 0;
    if (trial % 10 == 0) t = tmax + 1 + static_cast<long>(rng() % 5);  // outside the hypothesis
    t = std::min(t, u - 1);
    long lo = std::max(0L, t - (u - s)), hi = std::min(t, s);
    long ts = lo + static_cast<long>(rng() % (hi - lo + 1));
    auto r = set_removal(u, s, t, ts, b, gamma);

    Rational ratio = Rational(s) / u, cap = std::min(Rational(gamma / 2), Rational(b * gamma));
    bool hyp = ratio >= (1 - gamma) * b && ratio <= (1 + gamma) * b && Rational(t) / u <= cap;
    Rational after = Rational(s - ts) / (u - t);
    bool concl = after >= (1 - 3 * gamma) * b && after <= (1 + 3 * gamma) * b;
    EXPECT_EQ(r.hypothesis, hyp);
    EXPECT_EQ(r.conclusion, concl);
    if (r.hypothesis) {
      ++hypothesis;
      EXPECT_TRUE(r.conclusion) << u << " " << s << " " << t << " " << ts;
    }
  }
  EXPECT_GT(hypothesis, 5000);
}

TEST(CharBounds, EmptyCoreIsTrivial) {
  auto g = sample_block_model(10, 3, Rational(1, 2), 5);
  WellBehavedSpec spec;
  auto r = check_char_bounds(g, PatternGraph(3), Rectangle::full(10, 3), 0.5, CharBoundMode::kGeneral, spec);
  EXPECT_TRUE(r.trivial);
  EXPECT_TRUE(r.pass);
  EXPECT_DOUBLE_EQ(r.value, 1000);
}

TEST(CharBounds, SingleEdgeAgainstDirectSum) {
  std::mt19937_64 rng(6);
  WellBehavedSpec spec;
  spec.lambda = 0.3;
  for (int trial = 0; trial < 10; ++trial) {
    auto g = sample_block_model(12, 2, Rational(1, 2), rng());
    std::vector<std::vector<Vertex>> sides(2);
    for (int b = 0; b < 2; ++b)
      for (int i = 0; i < 12; ++i)
        if (i < 7 || rng() % 2) sides[b].push_back(b * 12 + i);
    Rectangle q(12, {0, 1}, sides);
    auto r = check_char_bounds(g, PatternGraph(2, {{0, 1}}), q, 0.5, CharBoundMode::kGeneral, spec);
    ASSERT_TRUE(r.precondition) << r.reason;
    double direct = 0;
    for (Vertex u : sides[0])
      for (Vertex v : sides[1]) direct += g.adjacent(u, v) ? 1 : -1;
    EXPECT_DOUBLE_EQ(r.value, direct);
    double threshold = 6 * 2 * std::pow(12.0, 2 - 0.3 / 4);
    EXPECT_NEAR(r.threshold, threshold, 1e-9 * threshold);
    EXPECT_EQ(r.pass, std::fabs(direct) <= threshold);
  }
}

TEST(CharBounds, PreconditionsNamed) {
  auto g = sample_block_model(10, 2, Rational(1, 2), 7);
  WellBehavedSpec spec;
  Rectangle q = Rectangle::full(10, 2);
  q.mutable_side(0).resize(4);
  auto r = check_char_bounds(g, PatternGraph(2, {{0, 1}}), q, 0.5, CharBoundMode::kGeneral, spec);
  EXPECT_FALSE(r.precondition);
  EXPECT_NE(r.reason.find("n/2"), std::string::npos);
  auto star = check_char_bounds(g, PatternGraph(2), q, 0.5, CharBoundMode::kGeneral, spec);
  EXPECT_TRUE(star.precondition);
  spec.Lambda = 2;
  auto tight = check_char_bounds(g, PatternGraph(2, {{0, 1}}), Rectangle::full(10, 2), 0.5,
                                 CharBoundMode::kTight, spec, 0b11);
  EXPECT_FALSE(tight.precondition);
  EXPECT_NE(tight.reason.find("4*Lambda"), std::string::npos);
}

TEST(CharBounds, SeedSweepGeneralMode) {
  WellBehavedSpec spec;
  spec.lambda = 0.5;
  int passed = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto g = sample_block_model(40, 3, Rational(1, 2), 500 + seed);
    PatternGraph path(3, {{0, 1}, {1, 2}});
    auto r = check_char_bounds(g, path, Rectangle::full(40, 3), 0.5, CharBoundMode::kGeneral, spec);
    ASSERT_TRUE(r.precondition) << r.reason;
    passed += r.pass;
  }
  EXPECT_GE(passed, 18);
}

TEST(CharBounds, TightModeRestrictsToBlocks) {
  auto g = sample_block_model(12, 3, Rational(1, 2), 8);
  WellBehavedSpec spec;
  spec.Lambda = 3;
  std::vector<std::vector<Vertex>> sides = {{0, 1, 2, 3, 4, 5, 6, 7}, {12, 13, 14, 15, 16, 17, 18}, {24, 25}};
  Rectangle q(12, {0, 1, 2}, sides);
  PatternGraph edge(3, {{0, 1}});
  auto r = check_char_bounds(g, edge, q, 0.5, CharBoundMode::kTight, spec, 0b011);
  if (!r.precondition) GTEST_SKIP() << r.reason;
  double direct = 0;
  for (Vertex u : sides[0])
    for (Vertex v : sides[1]) direct += g.adjacent(u, v) ? 1 : -1;
  EXPECT_DOUBLE_EQ(r.value, direct);
  double threshold = 60 * 2 * std::pow(3 / (10.0 * 3 * std::log2(12.0)), -0.25) * 56;
  EXPECT_NEAR(r.threshold, threshold, 1e-9 * threshold);
}

TEST(GoodRectangle, Examples) {
  auto g = complete_graph(3, 6);
  GoodRectSpec spec{{}, 3, 0.1, 1.0, 2};
  EXPECT_TRUE(is_good_rectangle(g, Rectangle::full(6, 3), spec).good);

  Rectangle q = Rectangle::full(6, 3);
  q.mutable_side(0).assign(1, 0);
  auto broken = without_edge(g, 0, 7);
  GoodRectSpec with_r{{0}, 3, 0.1, 1.0, 2};
  EXPECT_TRUE(is_good_rectangle(g, q, with_r).good);
  auto w = is_good_rectangle(broken, q, with_r);
  EXPECT_FALSE(w.good);
  EXPECT_EQ(w.item, 2);
  Rectangle thin = Rectangle::full(6, 3);
  thin.mutable_side(2).resize(2);
  EXPECT_EQ(is_good_rectangle(g, thin, spec).item, 1);
}

TEST(GoodRectangle, AcceptedAreReverified) {
  std::mt19937_64 rng(9);
  int accepted = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 3, n = 16;
    auto g = sample_block_model(n, k, Rational(1, 2), rng());
    std::vector<std::vector<Vertex>> sides(k);
    std::vector<int> singles;
    if (trial % 2) {
      Vertex v = static_cast<int>(rng() % n);
      sides[0] = {v};
      singles = {0};
    }
    for (int b = singles.size(); b < k; ++b)
      for (int i = 0; i < n; ++i)
        if (singles.empty() || g.adjacent(sides[0][0], b * n + i))
          if (rng() % 4) sides[b].push_back(b * n + i);
    Rectangle q(n, {0, 1, 2}, sides);
    GoodRectSpec spec{singles, 4, 0.75, 0.5, 2};
    auto w = is_good_rectangle(g, q, spec);
    if (!w.good) continue;
    ++accepted;
    for (int b = 0; b < k; ++b) {
      bool single = !singles.empty() && b == 0;
      EXPECT_TRUE(single ? sides[b].size() == 1 : sides[b].size() >= 4);
    }
    std::vector<std::vector<Vertex>> rest(k);
    for (int b = singles.size(); b < k; ++b) rest[b] = sides[b];
    EXPECT_TRUE(direct_scan(g, rest, rest, 2, 0.75, 0.5).second);
  }
  EXPECT_GT(accepted, 10);
}

TEST(Decompose, GoodInputIsKept) {
  auto g = complete_graph(3, 6);
  DecomposeSpec spec{2, 1.0, 1, 0.1, 324};
  auto dec = decompose_rectangle(g, Rectangle::full(6, 3), spec);
  ASSERT_EQ(dec.parts.size(), 1u);
  EXPECT_EQ(dec.parts[0].label, PartLabel::kGood);
  EXPECT_EQ(dec.parts[0].rect, Rectangle::full(6, 3));
}

TEST(Decompose, SingletonWithOneNonNeighbor) {
  auto g = without_edge(complete_graph(3, 6), 0, 7);
  Rectangle q = Rectangle::full(6, 3);
  q.mutable_side(0).assign(1, 0);
  DecomposeSpec spec{2, 1.0, 2, 0.1, 324};
  auto dec = decompose_rectangle(g, q, spec);
  ASSERT_EQ(dec.parts.size(), 2u);
  EXPECT_EQ(dec.parts[0].label, PartLabel::kAxiomSub);
  EXPECT_EQ(dec.parts[0].non_edge, (std::pair<Vertex, Vertex>{0, 7}));
  EXPECT_EQ(dec.parts[1].label, PartLabel::kGood);
  EXPECT_EQ(dec.parts[1].rect.side(1).size(), 5u);
  EXPECT_THROW(decompose_rectangle(g, q, DecomposeSpec{2, 0.1, 2, 0.1, 324}), std::invalid_argument);
}

// Which part owns a tuple; −1 when none, −2 when several.
int owner(const Decomposition& dec, const Tuple& t) {
  int found = -1;
  for (std::size_t i = 0; i < dec.parts.size(); ++i)
    if (dec.parts[i].rect.contains(t)) found = found == -1 ? static_cast<int>(i) : -2;
  return found;
}

TEST(Decompose, RandomInstancesPartitionAndLabels) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 3 + trial % 2, n = 8 + static_cast<int>(rng() % 5);
    const int d = 1 + trial % 2;
    const Rational p(1, 2);
    if (n * std::pow(0.5, d) < 1) continue;
    auto g = sample_block_model(n, k, p, rng());
    std::vector<int> blocks(k);
    std::vector<std::vector<Vertex>> sides(k);
    for (int b = 0; b < k; ++b) {
      blocks[b] = b;
      for (int i = 0; i < n; ++i)
        if (rng() % 4) sides[b].push_back(b * n + i);
      if (sides[b].empty()) sides[b].push_back(b * n);
    }
    Rectangle q(n, blocks, sides);
    DecomposeSpec spec{2, 0.5, d, 0, 324};
    auto dec = decompose_rectangle(g, q, spec);
    EXPECT_FALSE(dec.regime);

    BigInt total = 0;
    for (const auto& part : dec.parts) {
      total += part.rect.cardinality();
      EXPECT_EQ(verify_part(g, part, spec, dec.small_threshold), "") << to_string(part.label);
      if (part.label == PartLabel::kAxiomSub) {
        for_each_tuple(part.rect, [&](const Tuple& t) {
          EXPECT_FALSE(is_clique(g, t));
        });
      }
    }
    EXPECT_EQ(total, q.cardinality());
    EXPECT_LE(static_cast<double>(dec.parts.size()), dec.part_bound);

    for (int sample = 0; sample < 200; ++sample) {
      Tuple t(k);
      for (int b = 0; b < k; ++b) t[b] = sides[b][rng() % sides[b].size()];
      EXPECT_GE(owner(dec, t), 0);
    }

    MeasureParams<Rational> mp{d, p, 0, 0};
    Rational sum = 0;
    for (const auto& part : dec.parts) sum += mu_d<Rational>(g, part.rect, mp, Strategy::kGrouped);
    EXPECT_EQ(sum, mu_d<Rational>(g, q, mp, Strategy::kGrouped));
  }
}

TEST(BalancedPartition, Examples) {
  std::vector<int> universe(100);
  std::iota(universe.begin(), universe.end(), 0);
  auto single = balanced_partition(universe, {}, 1, 0.5, 1);
  ASSERT_EQ(single.parts.size(), 1u);
  EXPECT_EQ(single.parts[0], universe);

  auto sizes_only = balanced_partition(universe, {}, 2, 0.5, 1);
  EXPECT_TRUE(partition_is_balanced(sizes_only, {}, 0.5));
  EXPECT_THROW(balanced_partition(universe, {}, 8, 0.5, 1), std::invalid_argument);
}

TEST(BalancedPartition, HalfSetsVerify) {
  std::mt19937_64 rng(11);
  std::vector<int> universe(4096);
  std::iota(universe.begin(), universe.end(), 0);
  std::vector<std::vector<int>> family;
  for (int f = 0; f < 50; ++f) {
    auto shuffled = universe;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    shuffled.resize(2048);
    family.push_back(shuffled);
  }
  auto part = balanced_partition(universe, family, 4, 0.25, 12);
  ASSERT_EQ(part.parts.size(), 4u);
  EXPECT_LT(part.retries, 4);
  std::map<int, int> color;
  std::size_t covered = 0;
  for (int i = 0; i < 4; ++i) {
    EXPECT_GE(part.parts[i].size(), 512u);
    EXPECT_LE(part.parts[i].size(), 1536u);
    for (int x : part.parts[i]) color[x] = i;
    covered += part.parts[i].size();
  }
  EXPECT_EQ(covered, 4096u);
  EXPECT_EQ(color.size(), 4096u);
  for (const auto& f : family) {
    std::vector<int> hits(4);
    for (int x : f) ++hits[color[x]];
    for (int h : hits) {
      EXPECT_GE(h, 0.75 * 512);
      EXPECT_LE(h, 1.25 * 512);
    }
  }
  EXPECT_THROW(balanced_partition(universe, family, 4, 0.01, 12), std::invalid_argument);
}

TailProbe edge_probe(std::function<double(const Tuple&)> xi) {
  TailProbe probe;
  probe.f = PatternGraph(2, {{0, 1}});
  probe.matching = {{0, 1}};
  probe.q = Rectangle::full(20, 2);
  probe.kappa = 400;
  probe.m = 2;
  probe.r = 1;
  probe.xi = std::move(xi);
  return probe;
}

TEST(TailProbe, SingleEdgeAcrossGrid) {
  auto probe = edge_probe([](const Tuple&) { return 1.0; });
  std::vector<double> grid = {10, 20, 40, 60, 80, 120, 200, 401};
  auto rep = tail_probe(probe, Rational(1, 2), grid, 10000, 1);
  ASSERT_EQ(rep.rows.size(), grid.size());
  for (const auto& row : rep.rows) {
    EXPECT_NEAR(row.bound, 3200.0 / (row.s * row.s), 1e-9 * row.bound);
    EXPECT_TRUE(row.pass) << row.s << ": " << row.empirical << " vs " << row.bound;
  }
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.rows.back().empirical, 0);
}

TEST(TailProbe, ZeroWeightAndShape) {
  auto probe = edge_probe([](const Tuple&) { return 0.0; });
  auto rep = tail_probe(probe, Rational(1, 2), {0.5, 1, 10}, 200, 2);
  for (const auto& row : rep.rows) EXPECT_EQ(row.empirical, 0);
  auto odd = probe;
  odd.m = 3;
  EXPECT_THROW(tail_probe(odd, Rational(1, 2), {1}, 10, 1), std::invalid_argument);
  auto big = probe;
  big.m = 402;
  EXPECT_THROW(tail_probe(big, Rational(1, 2), {1}, 10, 1), std::invalid_argument);
}

}  // namespace
}  // namespace salab
