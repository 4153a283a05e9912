#ifndef SALAB_GRAPH_H_
#define SALAB_GRAPH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "salab/rational.h"

namespace salab {

using Vertex = int;

// Fixed-universe bitset; intersections are word-wise ANDs.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  int universe() const { return universe_; }
  void insert(Vertex v) { words_[v >> 6] |= uint64_t{1} << (v & 63); }
  void erase(Vertex v) { words_[v >> 6] &= ~(uint64_t{1} << (v & 63)); }
  bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1; }
  int count() const;
  bool empty() const;
  // |*this ∩ other| without materializing the intersection.
  int intersection_count(const VertexSet& other) const;
  VertexSet& operator&=(const VertexSet& other);
  VertexSet& operator|=(const VertexSet& other);
  VertexSet& subtract(const VertexSet& other);
  std::vector<Vertex> members() const;
  std::span<const uint64_t> words() const { return words_; }
  bool operator==(const VertexSet& other) const = default;

 private:
  int universe_ = 0;
  std::vector<uint64_t> words_;
};

// An ordered vertex list, one vertex per block, blocks strictly increasing.
using Tuple = std::vector<Vertex>;

class BlockGraph {
 public:
  BlockGraph(int k, int n, std::optional<Rational> p = std::nullopt);

  int k() const { return k_; }
  int n() const { return n_; }
  int vertex_count() const { return k_ * n_; }
  int block_of(Vertex v) const { return v / n_; }
  const std::optional<Rational>& p() const { return p_; }

  // Throws std::invalid_argument for loops or same-block pairs.
  void add_edge(Vertex u, Vertex v);
  bool adjacent(Vertex u, Vertex v) const { return adj_[u].contains(v); }
  const VertexSet& neighbors(Vertex v) const { return adj_[v]; }
  VertexSet block(int i) const;
  long edge_count() const;
  // Sorted (u < v) edge list.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

 private:
  void check_vertex(Vertex v) const;

  int k_;
  int n_;
  std::optional<Rational> p_;
  std::vector<VertexSet> adj_;
};

// G(n,k,p): each cross-block pair, in ascending (u,v) order, consumes one
// 64-bit draw from mt19937_64(seed) and is present iff draw < ceil(p·2^64).
BlockGraph sample_block_model(int n, int k, const Rational& p, uint64_t seed);

VertexSet common_neighborhood(const BlockGraph& g, std::span<const Vertex> t,
                              const VertexSet& target);
bool is_clique(const BlockGraph& g, std::span<const Vertex> t);
// Throws unless t has one vertex per block in strictly increasing blocks.
void check_tuple(const BlockGraph& g, std::span<const Vertex> t);

// Product of per-block vertex subsets over a declared block set.
class Rectangle {
 public:
  Rectangle() = default;
  Rectangle(int n, std::vector<int> blocks, std::vector<std::vector<Vertex>> sides);
  static Rectangle full(int n, int k);

  int n() const { return n_; }
  const std::vector<int>& blocks() const { return blocks_; }
  bool has_block(int i) const;
  const std::vector<Vertex>& side(int block) const;
  std::vector<Vertex>& mutable_side(int block);
  VertexSet side_set(int block, int universe) const;
  BigInt cardinality() const;
  bool empty() const;
  Rectangle project(std::span<const int> blocks) const;
  bool contains(std::span<const Vertex> t) const;
  bool operator==(const Rectangle& other) const = default;
  std::string describe() const;

 private:
  int position(int block) const;

  int n_ = 0;
  std::vector<int> blocks_;
  std::vector<std::vector<Vertex>> sides_;
};

// Visits every tuple of a rectangle in lexicographic order.
template <typename Fn>
void for_each_tuple(const Rectangle& q, Fn&& fn) {
  const auto& blocks = q.blocks();
  std::size_t r = blocks.size();
  for (int b : blocks)
    if (q.side(b).empty()) return;
  std::vector<std::size_t> pos(r, 0);
  Tuple t(r);
  for (std::size_t i = 0; i < r; ++i) t[i] = q.side(blocks[i])[0];
  while (true) {
    fn(static_cast<const Tuple&>(t));
    std::size_t i = r;
    while (i > 0) {
      --i;
      const auto& side = q.side(blocks[i]);
      if (++pos[i] < side.size()) {
        t[i] = side[pos[i]];
        break;
      }
      pos[i] = 0;
      t[i] = side[0];
      if (i == 0) return;
    }
    if (r == 0) return;
  }
}

std::string graph_to_json(const BlockGraph& g);
BlockGraph graph_from_json(const std::string& text);

}  // namespace salab

#endif  // SALAB_GRAPH_H_
