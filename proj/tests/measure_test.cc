#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "salab/formula.h"
#include "salab/measure.h"
#include "salab/patterns.h"

namespace salab {
namespace {

const Rational kHalf(1, 2);

BlockGraph random_graph(int k, int n, const Rational& p, std::mt19937_64& rng) {
  return sample_block_model(n, k, p, rng());
}

BlockGraph complete_graph(int k, int n) {
  BlockGraph g(k, n);
  for (Vertex u = 0; u < k * n; ++u)
    for (Vertex v = u + 1; v < k * n; ++v)
      if (u / n != v / n) g.add_edge(u, v);
  return g;
}

Rectangle random_rectangle(int k, int n, std::mt19937_64& rng) {
  std::vector<int> blocks(k);
  std::vector<std::vector<Vertex>> sides(k);
  for (int i = 0; i < k; ++i) {
    blocks[i] = i;
    for (int v = 0; v < n; ++v)
      if (rng() % 3) sides[i].push_back(i * n + v);
    if (sides[i].empty()) sides[i].push_back(i * n + static_cast<int>(rng() % n));
  }
  return Rectangle(n, blocks, sides);
}

// Direct definition: per tuple, per pattern graph, per edge.
Rational direct_char(const BlockGraph& g, const Tuple& t, const PatternGraph& h, const Rational& p) {
  Rational odds = (1 - p) / p, out = 1;
  for (auto [i, j] : h.edges()) out *= g.adjacent(t[i], t[j]) ? odds : Rational(-1);
  return out;
}

int brute_vc(const PatternGraph& h) {
  int best = h.k();
  for (LabelSet s = 0; s < (1u << h.k()); ++s) {
    bool ok = true;
    for (auto [i, j] : h.edges())
      if (!((s >> i) & 1) && !((s >> j) & 1)) ok = false;
    if (ok) best = std::min(best, label_count(s));
  }
  return best;
}

std::vector<PatternGraph> family_hd(int k, int d) {
  std::vector<PatternGraph> out;
  for (uint64_t code = 0; code < (uint64_t{1} << (k * (k - 1) / 2)); ++code) {
    auto h = PatternGraph::from_code(k, code);
    if (brute_vc(h) <= d) out.push_back(h);
  }
  return out;
}

Rational direct_total(const BlockGraph& g, const Rectangle& q, int d, const Rational& p) {
  auto hs = family_hd(g.k(), d);
  Rational s = 0;
  for_each_tuple(q, [&](const Tuple& t) {
    for (const auto& h : hs) s += direct_char(g, t, h, p);
  });
  return s;
}

Rational direct_mu(const BlockGraph& g, const Rectangle& q, int d, const Rational& p) {
  return direct_total(g, q, d, p) / pow(Rational(g.n()), g.k());
}

MeasureParams<Rational> params(int d, const Rational& p) { return {d, p, 0, 0}; }

TEST(Chi, Examples) {
  BlockGraph g(2, 1);
  g.add_edge(0, 1);
  std::vector<VertexPair> none;
  EXPECT_EQ(chi<Rational>(g, none, Rational(1, 4)), 1);
  std::vector<VertexPair> one = {{0, 1}};
  EXPECT_EQ(chi<Rational>(g, one, Rational(1, 4)), 3);
  EXPECT_EQ(chi<Rational>(BlockGraph(2, 1), one, Rational(1, 4)), -1);
  BlockGraph h(2, 2);
  std::vector<VertexPair> inside = {{0, 1}};
  EXPECT_THROW(chi<Rational>(h, inside, kHalf), std::invalid_argument);
}

TEST(Chi, SubsetSumDetectsCliques) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 60; ++trial) {
    int size = 1 + trial % 4;
    Rational p(1 + static_cast<long>(rng() % 3), 4);
    p.canonicalize();
    auto g = random_graph(size, 1, kHalf, rng);
    std::vector<VertexPair> all;
    for (Vertex u = 0; u < size; ++u)
      for (Vertex v = u + 1; v < size; ++v) all.push_back({u, v});
    Rational s = 0;
    for (uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
      std::vector<VertexPair> e;
      for (std::size_t b = 0; b < all.size(); ++b)
        if ((mask >> b) & 1) e.push_back(all[b]);
      s += chi<Rational>(g, e, p);
    }
    Tuple t(size);
    for (int i = 0; i < size; ++i) t[i] = i;
    Rational expected = is_clique(g, t) ? pow(1 / p, static_cast<long>(all.size())) : Rational(0);
    EXPECT_EQ(s, expected);
  }
}

TEST(MapPattern, Examples) {
  std::vector<Vertex> t = {0, 3};
  EXPECT_TRUE(map_pattern(PatternGraph(2), t).empty());
  auto pairs = map_pattern(PatternGraph(2, {{0, 1}}), t);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0], (VertexPair{0, 3}));
  std::vector<Vertex> partial = {0, -1, 5};
  EXPECT_THROW(map_pattern(PatternGraph(3, {{0, 1}}), partial), std::invalid_argument);
  EXPECT_EQ(map_pattern(PatternGraph(3, {{0, 2}}), partial).size(), 1u);
}

TEST(MapPattern, RandomAgainstLookup) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    int k = 2 + static_cast<int>(rng() % 5), n = 1 + static_cast<int>(rng() % 5);
    auto h = PatternGraph::from_code(k, rng() % (uint64_t{1} << (k * (k - 1) / 2)));
    std::vector<Vertex> t(k);
    for (int i = 0; i < k; ++i) t[i] = i * n + static_cast<int>(rng() % n);
    auto got = map_pattern(h, t);
    std::vector<VertexPair> expected;
    for (auto [i, j] : h.edges()) expected.push_back({t[i], t[j]});
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(got, expected);
  }
}

TEST(CharSum, Examples) {
  BlockGraph full = complete_graph(2, 2), empty(2, 2);
  auto q = Rectangle::full(2, 2);
  for (auto s : {Strategy::kNaive, Strategy::kFactorized}) {
    EXPECT_EQ(char_sum<Rational>(empty, q, PatternGraph(2), kHalf, s), 4);
    EXPECT_EQ(char_sum<Rational>(full, q, PatternGraph(2, {{0, 1}}), kHalf, s), 4);
    EXPECT_EQ(char_sum<Rational>(empty, q, PatternGraph(2, {{0, 1}}), kHalf, s), -4);
  }
  EXPECT_THROW(char_sum<Rational>(full, q, PatternGraph(2), kHalf, Strategy::kGrouped),
               std::invalid_argument);
}

TEST(CharSum, StrategiesAgree) {
  std::mt19937_64 rng(3);
  int instances = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int k = 2 + static_cast<int>(rng() % 4), n = 1 + static_cast<int>(rng() % 6);
    Rational p(1 + static_cast<long>(rng() % 4), 5);
    auto g = random_graph(k, n, kHalf, rng);
    auto q = random_rectangle(k, n, rng);
    auto h = PatternGraph::from_code(k, rng() % (uint64_t{1} << (k * (k - 1) / 2)));
    Rational oracle = 0;
    for_each_tuple(q, [&](const Tuple& t) { oracle += direct_char(g, t, h, p); });
    EXPECT_EQ(char_sum<Rational>(g, q, h, p, Strategy::kNaive), oracle);
    EXPECT_EQ(char_sum<Rational>(g, q, h, p, Strategy::kFactorized), oracle) << h.describe();

    // Grouped: each core family against the sum over its members.
    int d = static_cast<int>(rng() % k);
    auto fams = core_families(k, d);
    const auto& fam = (*fams)[rng() % fams->size()];
    Rational members = 0;
    auto extra = fam.estar.edges();
    for (uint32_t mask = 0; mask < (1u << extra.size()); ++mask) {
      PatternGraph member = fam.f;
      for (std::size_t b = 0; b < extra.size(); ++b)
        if ((mask >> b) & 1) member.add_edge(extra[b].first, extra[b].second);
      for_each_tuple(q, [&](const Tuple& t) { members += direct_char(g, t, member, p); });
    }
    for (auto s : {Strategy::kNaive, Strategy::kFactorized, Strategy::kGrouped})
      EXPECT_EQ(family_sum<Rational>(g, q, fam, p, s), members) << fam.f.describe() << " " << to_string(s);
    ++instances;
  }
  EXPECT_EQ(instances, 200);
}

TEST(CharSum, DoubleTracksExact) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    int k = 3 + trial % 2, n = 4;
    auto g = random_graph(k, n, Rational(1, 3), rng);
    auto q = random_rectangle(k, n, rng);
    MeasureParams<Rational> exact = params(2, Rational(1, 3));
    MeasureParams<double> approx{2, 1.0 / 3.0, 0, 0};
    double want = mu_d<Rational>(g, q, exact, Strategy::kGrouped).get_d();
    for (auto s : {Strategy::kNaive, Strategy::kFactorized, Strategy::kGrouped})
      EXPECT_NEAR(mu_d<double>(g, q, approx, s), want, 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST(Mu, Examples) {
  std::mt19937_64 rng(5);
  auto g = random_graph(3, 4, kHalf, rng);
  auto q = random_rectangle(3, 4, rng);
  for (auto s : {Strategy::kNaive, Strategy::kFactorized, Strategy::kGrouped}) {
    EXPECT_EQ(mu_d<Rational>(g, q, params(0, kHalf), s), Rational(q.cardinality()) / 64);
    BlockGraph edge(2, 1), no_edge(2, 1);
    edge.add_edge(0, 1);
    auto unit = Rectangle::full(1, 2);
    EXPECT_EQ(mu_d<Rational>(edge, unit, params(1, kHalf), s), 2);
    EXPECT_EQ(mu_d<Rational>(no_edge, unit, params(1, kHalf), s), 0);
    auto kp = complete_graph(3, 3);
    EXPECT_EQ(mu_d<Rational>(kp, Rectangle::full(3, 3), params(1, kHalf), s), 7);
  }
}

TEST(Mu, StrategiesMatchDirectDefinition) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    int k = 2 + trial % 4, n = 1 + static_cast<int>(rng() % 4);
    int d = static_cast<int>(rng() % k);
    Rational p(1 + static_cast<long>(rng() % 2), 4);
    p.canonicalize();
    auto g = random_graph(k, n, kHalf, rng);
    auto q = random_rectangle(k, n, rng);
    Rational want = direct_mu(g, q, d, p);
    for (auto s : {Strategy::kNaive, Strategy::kFactorized, Strategy::kGrouped})
      EXPECT_EQ(mu_d<Rational>(g, q, params(d, p), s), want) << k << " " << n << " " << d;
  }
}

TEST(SmallBound, ClosedForm) {
  auto q = Rectangle::full(3, 3);
  EXPECT_EQ(rect_small_bound<Rational>(q, params(0, kHalf)), 1);
  EXPECT_EQ(rect_small_bound<Rational>(q, params(1, kHalf)), 25);
  auto q2 = Rectangle::full(4, 3);
  EXPECT_EQ(rect_small_bound<Rational>(q2, params(1, kHalf)), 25);
}

TEST(SmallBound, HoldsOnRandomInstances) {
  reset_small_bound_audit();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    int k = 2 + trial % 4, n = 2 + static_cast<int>(rng() % 4);
    int d = static_cast<int>(rng() % k);
    Rational p(1 + static_cast<long>(rng() % 2), 4);
    p.canonicalize();
    auto g = random_graph(k, n, p, rng);
    auto q = random_rectangle(k, n, rng);
    Rational mu = mu_d<Rational>(g, q, params(d, p), Strategy::kGrouped);
    EXPECT_LE(abs(mu), rect_small_bound<Rational>(q, params(d, p)));
  }
  auto audit = small_bound_audit();
  EXPECT_GE(audit.checked, 100);
  EXPECT_EQ(audit.violated, 0) << audit.first_violation;
}

TEST(Mu, LinearOverBlockSplits) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    int k = 2 + trial % 3, n = 3 + static_cast<int>(rng() % 3), d = 1 + trial % 2;
    auto g = random_graph(k, n, kHalf, rng);
    auto q = Rectangle::full(n, k);
    int block = static_cast<int>(rng() % k);
    Rectangle left = q, right = q;
    auto& ls = left.mutable_side(block);
    auto& rs = right.mutable_side(block);
    ls.clear();
    rs.clear();
    for (Vertex v : q.side(block)) ((rng() % 2) ? ls : rs).push_back(v);
    if (ls.empty() || rs.empty()) continue;
    auto mp = params(d, kHalf);
    EXPECT_EQ(mu_d<Rational>(g, left, mp, Strategy::kGrouped) + mu_d<Rational>(g, right, mp, Strategy::kGrouped),
              mu_d<Rational>(g, q, mp, Strategy::kGrouped));
  }
}

TEST(Mu, ExpectationIsNormalizedVolume) {
  std::mt19937_64 rng(9);
  const int k = 3, n = 4, d = 1;
  auto q = random_rectangle(k, n, rng);
  std::vector<double> samples;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    auto g = sample_block_model(n, k, kHalf, 1000 + seed);
    samples.push_back(mu_d<Rational>(g, q, params(d, kHalf), Strategy::kGrouped).get_d());
  }
  double mean = 0, var = 0;
  for (double x : samples) mean += x;
  mean /= samples.size();
  for (double x : samples) var += (x - mean) * (x - mean);
  var /= samples.size() - 1;
  double se = std::sqrt(var / samples.size());
  double expected = q.cardinality().get_d() / (n * n * n);
  EXPECT_LE(std::abs(mean - expected), 5 * se + 1e-12) << mean << " vs " << expected;
}

TEST(Mu, BlockAxiomsAnnihilate) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    int k = 3 + trial % 2, n = 3;
    auto g = random_graph(k, n, kHalf, rng);
    int block = static_cast<int>(rng() % k);
    std::vector<Vertex> pos, neg;
    for (int i = 0; i < k; ++i) {
      if (i == block) continue;
      Vertex v = i * n + static_cast<int>(rng() % n);
      switch (rng() % 3) {
        case 0: pos.push_back(v); break;
        case 1: neg.push_back(v); break;
        default: break;
      }
    }
    Monomial m(pos, neg);
    auto qm = ruled_out_rectangle(m, n, k);
    ASSERT_TRUE(qm);
    auto mp = params(1 + trial % 2, kHalf);
    Rational whole = mu_d<Rational>(g, *qm, mp, Strategy::kGrouped), parts = 0;
    for (int v = 0; v < n; ++v) {
      auto qv = ruled_out_rectangle(m * Monomial::var(block * n + v), n, k);
      ASSERT_TRUE(qv);
      parts += mu_d<Rational>(g, *qv, mp, Strategy::kGrouped);
    }
    EXPECT_EQ(parts, whole);
  }
}

TEST(Stars, Sizes) {
  for (int k = 2; k <= 8; ++k)
    for (int ell = 0; ell <= k; ++ell) {
      std::vector<int> centers;
      for (int i = 0; i < ell; ++i) centers.push_back(i);
      int want = ell < k ? ell * (2 * k - ell - 1) / 2 : k * (k - 1) / 2;
      EXPECT_EQ(star_union(k, centers).edge_count(), want);
      if (ell < k) EXPECT_EQ(star_union_size(k, ell), want);
    }
  EXPECT_EQ(star(4, 1, 3).edges(), (std::vector<LabelPair>{{0, 1}, {1, 2}}));
  EXPECT_EQ(star(4, 1, 4).edge_count(), 3);
}

// Singletons {v_r} for r in `singletons`; other blocks get all their vertices
// adjacent to every singleton and each singleton pair adjacent.
std::pair<BlockGraph, Rectangle> good_instance(int k, int n, std::span<const int> singletons,
                                               std::mt19937_64& rng) {
  auto g = random_graph(k, n, kHalf, rng);
  BlockGraph out(k, n);
  for (auto [u, v] : g.edges()) out.add_edge(u, v);
  std::vector<int> blocks(k);
  std::vector<std::vector<Vertex>> sides(k);
  for (int i = 0; i < k; ++i) {
    blocks[i] = i;
    bool single = std::find(singletons.begin(), singletons.end(), i) != singletons.end();
    if (single) {
      sides[i] = {i * n + static_cast<int>(rng() % n)};
    } else {
      for (int v = 0; v < n; ++v)
        if (rng() % 4) sides[i].push_back(i * n + v);
      if (sides[i].empty()) sides[i].push_back(i * n);
    }
  }
  for (int r : singletons)
    for (int i = 0; i < k; ++i)
      if (i != r)
        for (Vertex v : sides[i])
          if (!out.adjacent(sides[r][0], v)) out.add_edge(sides[r][0], v);
  return {out, Rectangle(n, blocks, sides)};
}

TEST(Split, NoSingletons) {
  std::mt19937_64 rng(11);
  auto g = random_graph(3, 3, kHalf, rng);
  auto q = random_rectangle(3, 3, rng);
  auto r = split_main_boundary(g, q, std::span<const int>{}, params(1, kHalf));
  EXPECT_TRUE(r.boundary.empty());
  EXPECT_EQ(r.main, r.full);
  EXPECT_EQ(r.full, direct_total(g, q, 1, kHalf));
}

TEST(Split, IdentityOnGoodInstances) {
  std::mt19937_64 rng(12);
  struct Shape { int k, n, d; std::vector<int> singles; };
  const std::vector<Shape> shapes = {
      {3, 2, 1, {0}}, {3, 3, 1, {1}}, {4, 2, 2, {0}}, {4, 2, 2, {0, 2}}, {4, 3, 3, {3}}, {5, 2, 2, {1, 4}},
      {5, 2, 3, {0, 1}}, {5, 2, 4, {2}}};
  for (const auto& s : shapes) {
    for (int trial = 0; trial < 3; ++trial) {
      auto [g, q] = good_instance(s.k, s.n, s.singles, rng);
      Rational p = trial == 2 ? Rational(1, 3) : kHalf;
      auto r = split_main_boundary(g, q, s.singles, params(s.d, p));
      EXPECT_EQ(r.full, direct_total(g, q, s.d, p));
      EXPECT_EQ(r.difference(), 0) << s.k << "," << s.n << "," << s.d;
      for (const auto& b : r.boundary) {
        // Emptiness past j = d + 2 needs fewer singletons than d.
        if (static_cast<int>(s.singles.size()) < s.d) EXPECT_LT(b.j, s.d + 3);
        EXPECT_LE(b.i, static_cast<int>(s.singles.size()));
        EXPECT_GT(b.j, b.i);
      }
      EXPECT_EQ(static_cast<int>(r.order.size()), s.k);
      for (std::size_t i = 0; i < s.singles.size(); ++i) EXPECT_EQ(r.order[i], s.singles[i]);
    }
  }
}

TEST(Split, RejectsMissingAdjacency) {
  std::mt19937_64 rng(13);
  std::vector<int> singles = {0};
  auto [g, q] = good_instance(3, 3, singles, rng);
  BlockGraph broken(3, 3);
  Vertex v0 = q.side(0)[0], victim = q.side(1)[0];
  for (auto [u, v] : g.edges())
    if (!((u == v0 && v == victim) || (u == victim && v == v0))) broken.add_edge(u, v);
  EXPECT_THROW(split_main_boundary(broken, q, singles, params(1, kHalf)), std::invalid_argument);
  std::vector<int> not_single = {1};
  if (q.side(1).size() > 1)
    EXPECT_THROW(split_main_boundary(g, q, not_single, params(1, kHalf)), std::invalid_argument);
}

TEST(Params, FromCliqueParameter) {
  auto mp = params_from_clique(100, 4.0, 0.5);
  EXPECT_NEAR(mp.p, 0.1, 1e-12);
  EXPECT_EQ(mp.d, 2);
  EXPECT_EQ(to_string(Strategy::kGrouped), "grouped");
}

}  // namespace
}  // namespace salab
