#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "salab/graph.h"

namespace salab {
namespace {

TEST(VertexSet, BasicOps) {
  VertexSet a(130), b(130);
  for (int v : {0, 5, 64, 129}) a.insert(v);
  for (int v : {5, 64, 100}) b.insert(v);
  EXPECT_EQ(a.count(), 4);
  EXPECT_EQ(a.intersection_count(b), 2);
  VertexSet c = a;
  c &= b;
  EXPECT_EQ(c.members(), (std::vector<Vertex>{5, 64}));
  c |= a;
  c.subtract(b);
  EXPECT_EQ(c.members(), (std::vector<Vertex>{0, 129}));
  c.erase(0);
  EXPECT_FALSE(c.contains(0));
  EXPECT_TRUE(VertexSet(10).empty());
}

TEST(SampleBlockModel, CertainProbabilities) {
  auto full = sample_block_model(2, 2, 1, 99);
  EXPECT_EQ(full.edge_count(), 4);
  auto none = sample_block_model(2, 2, 0, 99);
  EXPECT_EQ(none.edge_count(), 0);
  EXPECT_THROW(sample_block_model(2, 2, Rational(3, 2), 1), std::invalid_argument);
  EXPECT_THROW(sample_block_model(2, 2, -1, 1), std::invalid_argument);
}

TEST(SampleBlockModel, EdgeCountMoments) {
  // 3·100² cross pairs at p = 1/2: mean 15000, σ of the mean over 100 seeds.
  double total = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) total += sample_block_model(100, 3, Rational(1, 2), seed).edge_count();
  double mean = total / 100;
  double sigma = std::sqrt(30000 * 0.25) / 10;
  EXPECT_NEAR(mean, 15000, 3 * sigma);
}

TEST(SampleBlockModel, DeterministicAndPartite) {
  auto g1 = sample_block_model(7, 4, Rational(1, 3), 42);
  auto g2 = sample_block_model(7, 4, Rational(1, 3), 42);
  EXPECT_EQ(g1.edges(), g2.edges());
  for (Vertex u = 0; u < g1.vertex_count(); ++u)
    for (Vertex v = 0; v < g1.vertex_count(); ++v)
      if (g1.block_of(u) == g1.block_of(v)) EXPECT_FALSE(g1.adjacent(u, v));
  BlockGraph g(2, 3);
  EXPECT_THROW(g.add_edge(0, 2), std::invalid_argument);
  EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
}

TEST(CommonNeighborhood, Extremes) {
  auto full = sample_block_model(3, 2, 1, 0);
  std::vector<Vertex> t{0};
  EXPECT_EQ(common_neighborhood(full, t, full.block(1)), full.block(1));
  BlockGraph empty(2, 3);
  EXPECT_TRUE(common_neighborhood(empty, t, empty.block(1)).empty());
  EXPECT_THROW(common_neighborhood(empty, std::vector<Vertex>{}, empty.block(1)), std::invalid_argument);
}

TEST(CommonNeighborhood, MatchesScan) {
  auto g = sample_block_model(8, 3, Rational(1, 2), 7);
  VertexSet target = g.block(2);
  for (Vertex a = 0; a < 8; ++a)
    for (Vertex b = 8; b < 16; ++b) {
      std::vector<Vertex> t{a, b};
      VertexSet expected(g.vertex_count());
      for (Vertex v = 16; v < 24; ++v)
        if (g.adjacent(a, v) && g.adjacent(b, v)) expected.insert(v);
      EXPECT_EQ(common_neighborhood(g, t, target), expected);
    }
}

TEST(CommonNeighborhood, IntersectionOfSingles) {
  auto g = sample_block_model(6, 5, Rational(1, 2), 3);  // kn = 30
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    int size = 1 + trial % 3;
    std::vector<Vertex> t;
    for (int b = 0; b < size; ++b) t.push_back(b * 6 + static_cast<int>(rng() % 6));
    VertexSet target = g.block(4);
    VertexSet acc = target;
    for (Vertex v : t) acc &= common_neighborhood(g, std::vector<Vertex>{v}, target);
    EXPECT_EQ(common_neighborhood(g, t, target), acc);
  }
}

TEST(IsClique, Cases) {
  BlockGraph empty(3, 2);
  EXPECT_TRUE(is_clique(empty, std::vector<Vertex>{3}));
  auto full = sample_block_model(2, 3, 1, 0);
  EXPECT_TRUE(is_clique(full, std::vector<Vertex>{1, 2, 5}));
  auto g = sample_block_model(5, 4, Rational(1, 2), 11);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Vertex> t;
    for (int b = 0; b < 4; ++b) t.push_back(b * 5 + static_cast<int>(rng() % 5));
    bool pairwise = true;
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j) pairwise &= g.adjacent(t[i], t[j]);
    EXPECT_EQ(is_clique(g, t), pairwise);
  }
}

TEST(Rectangle, ProjectionAndCardinality) {
  auto full = Rectangle::full(5, 3);
  EXPECT_EQ(full.cardinality(), 125);
  auto none = full.project(std::vector<int>{});
  EXPECT_TRUE(none.blocks().empty());
  EXPECT_EQ(none.cardinality(), 1);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<Vertex>> sides;
    for (int b = 0; b < 4; ++b) {
      std::vector<Vertex> side;
      for (int i = 0; i < 6; ++i)
        if (rng() % 2) side.push_back(b * 6 + i);
      sides.push_back(side);
    }
    Rectangle q(6, {0, 1, 2, 3}, sides);
    std::vector<int> subset;
    BigInt expected = 1;
    for (int b = 0; b < 4; ++b)
      if (rng() % 2) {
        subset.push_back(b);
        expected *= static_cast<long>(sides[b].size());
      }
    EXPECT_EQ(q.project(subset).cardinality(), expected);
    long visited = 0;
    for_each_tuple(q, [&](const Tuple&) { ++visited; });
    EXPECT_EQ(BigInt(visited), q.cardinality());
  }
}

TEST(GraphJson, RoundTripAndRejects) {
  auto g = sample_block_model(4, 3, Rational(1, 2), 2);
  auto back = graph_from_json(graph_to_json(g));
  EXPECT_EQ(back.edges(), g.edges());
  EXPECT_EQ(*back.p(), Rational(1, 2));
  EXPECT_THROW(graph_from_json(R"({"k":2,"n":2,"edges":[[0,1]]})"), std::invalid_argument);
  EXPECT_THROW(graph_from_json(R"({"k":2,"n":1,"edges":[],"extra":1})"), std::invalid_argument);
}

}  // namespace
}  // namespace salab
