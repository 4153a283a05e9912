#include "salab/graph.h"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace salab {

int VertexSet::count() const {
  int c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  return c;
}

bool VertexSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](uint64_t w) { return w == 0; });
}

int VertexSet::intersection_count(const VertexSet& other) const {
  int c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & other.words_[i]);
  return c;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

VertexSet& VertexSet::subtract(const VertexSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    uint64_t w = words_[i];
    while (w) {
      out.push_back(static_cast<Vertex>(i * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

BlockGraph::BlockGraph(int k, int n, std::optional<Rational> p)
    : k_(k), n_(n), p_(std::move(p)) {
  if (k < 1 || n < 1) throw std::invalid_argument("block graph needs k, n >= 1");
  adj_.assign(static_cast<std::size_t>(k) * n, VertexSet(k * n));
}

void BlockGraph::check_vertex(Vertex v) const {
  if (v < 0 || v >= vertex_count())
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
}

void BlockGraph::add_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (block_of(u) == block_of(v))
    throw std::invalid_argument("edge {" + std::to_string(u) + "," + std::to_string(v) +
                                "} lies inside a block");
  adj_[u].insert(v);
  adj_[v].insert(u);
}

VertexSet BlockGraph::block(int i) const {
  VertexSet s(vertex_count());
  for (Vertex v = i * n_; v < (i + 1) * n_; ++v) s.insert(v);
  return s;
}

long BlockGraph::edge_count() const {
  long twice = 0;
  for (const auto& row : adj_) twice += row.count();
  return twice / 2;
}

std::vector<std::pair<Vertex, Vertex>> BlockGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : adj_[u].members())
      if (u < v) out.emplace_back(u, v);
  return out;
}

BlockGraph sample_block_model(int n, int k, const Rational& p, uint64_t seed) {
  if (p < 0 || p > 1) throw std::invalid_argument("edge probability outside [0,1]");
  BlockGraph g(k, n, p);
  BigInt two64 = pow(BigInt(2), 64);
  Rational scaled = p * Rational(two64);
  BigInt threshold = scaled.get_num() / scaled.get_den();
  if (threshold * scaled.get_den() != scaled.get_num()) threshold += 1;
  bool always = threshold >= two64;
  uint64_t cut = always ? 0 : static_cast<uint64_t>(threshold.get_ui());
  if (!always && !threshold.fits_ulong_p()) throw std::logic_error("threshold width");
  std::mt19937_64 rng(seed);
  int total = k * n;
  for (Vertex u = 0; u < total; ++u) {
    for (Vertex v = (u / n + 1) * n; v < total; ++v) {
      uint64_t draw = rng();
      if (always || draw < cut) g.add_edge(u, v);
    }
  }
  return g;
}

VertexSet common_neighborhood(const BlockGraph& g, std::span<const Vertex> t,
                              const VertexSet& target) {
  if (t.empty()) throw std::invalid_argument("common neighborhood of an empty tuple");
  VertexSet out = target;
  for (Vertex u : t) out &= g.neighbors(u);
  return out;
}

bool is_clique(const BlockGraph& g, std::span<const Vertex> t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (!g.adjacent(t[i], t[j])) return false;
  return true;
}

void check_tuple(const BlockGraph& g, std::span<const Vertex> t) {
  int last = -1;
  for (Vertex v : t) {
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("tuple vertex out of range");
    int b = g.block_of(v);
    if (b <= last) throw std::invalid_argument("tuple blocks must be strictly increasing");
    last = b;
  }
}

Rectangle::Rectangle(int n, std::vector<int> blocks, std::vector<std::vector<Vertex>> sides)
    : n_(n), blocks_(std::move(blocks)), sides_(std::move(sides)) {
  if (blocks_.size() != sides_.size()) throw std::invalid_argument("rectangle shape mismatch");
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i > 0 && blocks_[i] <= blocks_[i - 1])
      throw std::invalid_argument("rectangle blocks must be strictly increasing");
    auto& side = sides_[i];
    std::sort(side.begin(), side.end());
    side.erase(std::unique(side.begin(), side.end()), side.end());
    for (Vertex v : side)
      if (v / n_ != blocks_[i] || v < 0)
        throw std::invalid_argument("rectangle side leaves its block");
  }
}

Rectangle Rectangle::full(int n, int k) {
  std::vector<int> blocks(k);
  std::vector<std::vector<Vertex>> sides(k);
  for (int i = 0; i < k; ++i) {
    blocks[i] = i;
    for (Vertex v = i * n; v < (i + 1) * n; ++v) sides[i].push_back(v);
  }
  return Rectangle(n, std::move(blocks), std::move(sides));
}

int Rectangle::position(int block) const {
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), block);
  if (it == blocks_.end() || *it != block) return -1;
  return static_cast<int>(it - blocks_.begin());
}

bool Rectangle::has_block(int i) const { return position(i) >= 0; }

const std::vector<Vertex>& Rectangle::side(int block) const {
  int pos = position(block);
  if (pos < 0) throw std::out_of_range("rectangle has no block " + std::to_string(block));
  return sides_[pos];
}

std::vector<Vertex>& Rectangle::mutable_side(int block) {
  int pos = position(block);
  if (pos < 0) throw std::out_of_range("rectangle has no block " + std::to_string(block));
  return sides_[pos];
}

VertexSet Rectangle::side_set(int block, int universe) const {
  VertexSet s(universe);
  for (Vertex v : side(block)) s.insert(v);
  return s;
}

BigInt Rectangle::cardinality() const {
  BigInt c = 1;
  for (const auto& side : sides_) c *= static_cast<unsigned long>(side.size());
  return c;
}

bool Rectangle::empty() const {
  return std::any_of(sides_.begin(), sides_.end(), [](const auto& s) { return s.empty(); });
}

Rectangle Rectangle::project(std::span<const int> blocks) const {
  std::vector<int> keep(blocks.begin(), blocks.end());
  std::sort(keep.begin(), keep.end());
  std::vector<std::vector<Vertex>> sides;
  for (int b : keep) sides.push_back(side(b));
  return Rectangle(n_, std::move(keep), std::move(sides));
}

bool Rectangle::contains(std::span<const Vertex> t) const {
  if (t.size() != blocks_.size()) return false;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!std::binary_search(sides_[i].begin(), sides_[i].end(), t[i])) return false;
  return true;
}

std::string Rectangle::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    os << (i ? " x " : "") << "B" << blocks_[i] << "{";
    for (std::size_t j = 0; j < sides_[i].size(); ++j) os << (j ? "," : "") << sides_[i][j];
    os << "}";
  }
  return os.str();
}

std::string graph_to_json(const BlockGraph& g) {
  nlohmann::ordered_json j;
  j["k"] = g.k();
  j["n"] = g.n();
  if (g.p()) j["p"] = to_string(*g.p());
  auto edges = nlohmann::ordered_json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = edges;
  return j.dump() + "\n";
}

BlockGraph graph_from_json(const std::string& text) {
  auto j = nlohmann::ordered_json::parse(text);
  for (auto& [key, _] : j.items())
    if (key != "k" && key != "n" && key != "p" && key != "edges")
      throw std::invalid_argument("unknown graph key: " + key);
  int k = j.at("k").get<int>();
  int n = j.at("n").get<int>();
  std::optional<Rational> p;
  if (j.contains("p")) p = parse_rational(j.at("p").get<std::string>());
  BlockGraph g(k, n, p);
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be a pair");
    Vertex u = e[0].get<int>(), v = e[1].get<int>();
    if (u >= v) throw std::invalid_argument("edges must be listed with u < v");
    g.add_edge(u, v);
  }
  return g;
}

}  // namespace salab
