#include "salab/patterns.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "salab/guard.h"

namespace salab {

std::vector<int> labels_of(LabelSet s) {
  std::vector<int> out;
  while (s) {
    out.push_back(__builtin_ctz(s));
    s &= s - 1;
  }
  return out;
}

PatternGraph::PatternGraph(int k) : k_(k) {
  if (k < 0 || k > kMaxLabels) throw std::invalid_argument("pattern graphs support 0..16 labels");
}

PatternGraph::PatternGraph(int k, const std::vector<LabelPair>& edges) : PatternGraph(k) {
  for (auto [i, j] : edges) add_edge(i, j);
}

int pair_index(int k, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

PatternGraph PatternGraph::from_code(int k, uint64_t code) {
  if (k > 11) throw std::invalid_argument("edge codes need k ≤ 11");
  PatternGraph h(k);
  int b = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j, ++b)
      if ((code >> b) & 1) h.add_edge(i, j);
  return h;
}

void PatternGraph::add_edge(int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= k_ || j >= k_)
    throw std::invalid_argument("bad pattern edge");
  adj_[i] |= uint16_t(1u << j);
  adj_[j] |= uint16_t(1u << i);
}

void PatternGraph::remove_edge(int i, int j) {
  adj_[i] &= uint16_t(~(1u << j));
  adj_[j] &= uint16_t(~(1u << i));
}

int PatternGraph::edge_count() const {
  int twice = 0;
  for (int i = 0; i < k_; ++i) twice += label_count(adj_[i]);
  return twice / 2;
}

std::vector<LabelPair> PatternGraph::edges() const {
  std::vector<LabelPair> out;
  for (int i = 0; i < k_; ++i)
    for (int j = i + 1; j < k_; ++j)
      if (has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

LabelSet PatternGraph::support() const {
  LabelSet s = 0;
  for (int i = 0; i < k_; ++i)
    if (adj_[i]) s |= 1u << i;
  return s;
}

uint64_t PatternGraph::code() const {
  uint64_t c = 0;
  int b = 0;
  for (int i = 0; i < k_; ++i)
    for (int j = i + 1; j < k_; ++j, ++b)
      if (has_edge(i, j)) c |= uint64_t{1} << b;
  return c;
}

PatternGraph PatternGraph::induced(LabelSet keep) const {
  PatternGraph h(k_);
  for (int i = 0; i < k_; ++i)
    if ((keep >> i) & 1) h.adj_[i] = uint16_t(adj_[i] & keep);
  return h;
}

PatternGraph PatternGraph::united(const PatternGraph& other) const {
  PatternGraph h = *this;
  for (int i = 0; i < k_; ++i) h.adj_[i] |= other.adj_[i];
  return h;
}

PatternGraph PatternGraph::minus(const PatternGraph& other) const {
  PatternGraph h = *this;
  for (int i = 0; i < k_; ++i) h.adj_[i] &= uint16_t(~other.adj_[i]);
  return h;
}

bool PatternGraph::contains(const PatternGraph& other) const {
  for (int i = 0; i < k_; ++i)
    if (other.adj_[i] & ~adj_[i]) return false;
  return true;
}

bool PatternGraph::is_cover(LabelSet s) const {
  for (int i = 0; i < k_; ++i)
    if (!((s >> i) & 1) && (adj_[i] & ~s)) return false;
  return true;
}

std::string PatternGraph::describe() const {
  std::ostringstream os;
  os << "k=" << k_ << " {";
  bool first = true;
  for (auto [i, j] : edges()) {
    os << (first ? "" : ",") << i << "-" << j;
    first = false;
  }
  os << "}";
  return os.str();
}

bool PatternGraph::operator<(const PatternGraph& other) const {
  return std::tie(k_, adj_) < std::tie(other.k_, other.adj_);
}

namespace {

// Minimum cover of the subgraph induced on `alive`.
int mvc(const PatternGraph& h, LabelSet alive, int budget) {
  int best_v = -1, best_deg = 0;
  for (LabelSet s = alive; s; s &= s - 1) {
    int v = __builtin_ctz(s);
    int deg = label_count(h.neighbors(v) & alive);
    if (deg > best_deg) {
      best_deg = deg;
      best_v = v;
    }
  }
  if (best_v < 0) return 0;
  if (budget <= 0) return 1 << 20;
  // Degree ≤ 2 components are paths and cycles; branch anyway, k is tiny.
  LabelSet nbrs = h.neighbors(best_v) & alive;
  int take_v = 1 + mvc(h, alive & ~(1u << best_v), budget - 1);
  int best = take_v;
  int cost_n = label_count(nbrs);
  if (cost_n < best) {
    int take_n = cost_n + mvc(h, alive & ~nbrs & ~(1u << best_v), std::min(budget, best - 1) - cost_n);
    best = std::min(best, take_n);
  }
  return best;
}

LabelSet all_labels(int k) { return k >= 32 ? ~0u : (1u << k) - 1; }

}  // namespace

int vc_number(const PatternGraph& h) { return mvc(h, all_labels(h.k()), h.k()); }

int constrained_vc(const PatternGraph& h, LabelSet forced_in, LabelSet forced_out) {
  if (forced_in & forced_out) return -1;
  LabelSet must = forced_in;
  for (int v : labels_of(forced_out)) must |= h.neighbors(v);
  if (must & forced_out) return -1;
  LabelSet rest = all_labels(h.k()) & ~must & ~forced_out;
  return label_count(must) + mvc(h, rest, h.k());
}

std::vector<LabelSet> all_min_vertex_covers(const PatternGraph& h) {
  int best = vc_number(h);
  std::vector<LabelSet> out;
  for (LabelSet s = 0; s <= all_labels(h.k()); ++s) {
    if (label_count(s) == best && h.is_cover(s)) out.push_back(s);
    if (s == all_labels(h.k())) break;
  }
  return out;
}

bool lex_less(LabelSet a, LabelSet b) {
  LabelSet diff = a ^ b;
  if (!diff) return false;
  return (a >> __builtin_ctz(diff)) & 1;
}

LabelSet lex_first_min_vc(const PatternGraph& h) {
  const int target = vc_number(h);
  LabelSet in = 0, out = 0;
  for (int v = 0; v < h.k(); ++v) {
    if (constrained_vc(h, in | (1u << v), out) == target) in |= 1u << v;
    else out |= 1u << v;
  }
  return in;
}

std::vector<LabelPair> bipartite_matching(const PatternGraph& h, LabelSet left, LabelSet right) {
  std::array<int, PatternGraph::kMaxLabels> match_right;
  match_right.fill(-1);
  auto augment = [&](auto&& self, int u, LabelSet& seen) -> bool {
    for (LabelSet s = h.neighbors(u) & right & ~seen; s; s &= s - 1) {
      int w = __builtin_ctz(s);
      if (seen & (1u << w)) continue;
      seen |= 1u << w;
      if (match_right[w] < 0 || self(self, match_right[w], seen)) {
        match_right[w] = u;
        return true;
      }
    }
    return false;
  };
  for (int u : labels_of(left)) {
    LabelSet seen = 0;
    augment(augment, u, seen);
  }
  std::vector<LabelPair> out;
  for (int w = 0; w < h.k(); ++w)
    if (match_right[w] >= 0) out.emplace_back(match_right[w], w);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool fully_matchable(const PatternGraph& h, LabelSet left, LabelSet right) {
  return static_cast<int>(bipartite_matching(h, left, right).size()) == label_count(left);
}

CoreInfo core_without_estar(const PatternGraph& h) {
  CoreInfo info;
  info.w = lex_first_min_vc(h);
  LabelSet rest = all_labels(h.k()) & ~info.w;
  for (int v : labels_of(rest))
    if (fully_matchable(h, info.u1 | (1u << v), info.w)) info.u1 |= 1u << v;
  for (int v : labels_of(rest & ~info.u1))
    if (fully_matchable(h, info.u2 | (1u << v), info.w)) info.u2 |= 1u << v;
  info.m1 = bipartite_matching(h, info.u1, info.w);
  info.m2 = bipartite_matching(h, info.u2, info.w);
  info.f = h.induced(info.w | info.u1 | info.u2);
  info.estar = PatternGraph(h.k());
  return info;
}

PatternGraph estar_from(const CoreInfo& own) {
  const PatternGraph& f = own.f;
  PatternGraph estar(f.k());
  LabelSet outside = all_labels(f.k()) & ~f.support();
  for (int v : labels_of(outside)) {
    LabelSet below = (1u << v) - 1;
    LabelSet blocked = extension_set(f, own.w, own.u1 & below) |
                       extension_set(f, own.w, own.u2 & below);
    for (int w : labels_of(own.w & ~blocked)) estar.add_edge(v, w);
  }
  return estar;
}

}  // namespace

LabelSet extension_set(const PatternGraph& f, LabelSet w, LabelSet u) {
  LabelSet out = 0;
  for (int x : labels_of(w))
    if (fully_matchable(f, u, w & ~(1u << x))) out |= 1u << x;
  return out;
}

CoreInfo core_of(const PatternGraph& h) {
  CoreInfo info = core_without_estar(h);
  CoreInfo own = core_without_estar(info.f);
  if (!(own.f == info.f)) throw std::logic_error("core map is not idempotent on " + h.describe());
  info.estar = estar_from(own);
  return info;
}

PatternGraph estar_explicit(const PatternGraph& f) {
  CoreInfo own = core_without_estar(f);
  if (!(own.f == f)) throw std::invalid_argument(f.describe() + " is not a core");
  return estar_from(own);
}

PatternGraph estar_implicit(const PatternGraph& f, int k) {
  if (k != f.k()) throw std::invalid_argument("label count mismatch");
  if (k > pattern_label_guard())
    throw GuardExceeded("fiber enumeration limited to k ≤ " + std::to_string(pattern_label_guard()));
  if (!(core_without_estar(f).f == f)) throw std::invalid_argument(f.describe() + " is not a core");
  std::vector<LabelPair> free_pairs;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (!f.has_edge(i, j)) free_pairs.emplace_back(i, j);
  PatternGraph acc(k);
  uint64_t total = uint64_t{1} << free_pairs.size();
  for (uint64_t s = 0; s < total; ++s) {
    PatternGraph h = f;
    for (std::size_t b = 0; b < free_pairs.size(); ++b)
      if ((s >> b) & 1) h.add_edge(free_pairs[b].first, free_pairs[b].second);
    if (core_without_estar(h).f == f) acc = acc.united(h.minus(f));
  }
  return acc;
}

bool in_boundary(const PatternGraph& h, LabelPair e, int i) {
  PatternGraph plus = h;
  plus.add_edge(e.first, e.second);
  return vc_number(h) == i && vc_number(plus) == i + 1;
}

namespace {

std::mutex cache_mutex;

std::vector<PatternGraph> build_patterns(int k, int d, EnumerationMode mode) {
  std::vector<PatternGraph> out;
  if (mode == EnumerationMode::kAllHd) {
    if (k > pattern_label_guard())
      throw GuardExceeded("all_Hd enumeration limited to k ≤ " + std::to_string(pattern_label_guard()));
    uint64_t total = uint64_t{1} << (k * (k - 1) / 2);
    for (uint64_t c = 0; c < total; ++c) {
      PatternGraph h = PatternGraph::from_code(k, c);
      if (vc_number(h) <= d) out.push_back(h);
    }
    return out;
  }
  int max_support = std::min(k, 3 * d);
  double work = 0;
  for (int s = 0; s <= max_support; ++s)
    work += std::exp(std::lgamma(k + 1.0) - std::lgamma(s + 1.0) - std::lgamma(k - s + 1.0)) *
            std::ldexp(1.0, s * (s - 1) / 2);
  if (work > 5e7 * std::pow(10.0, guard_boost()))
    throw GuardExceeded("core enumeration for k=" + std::to_string(k) + ", d=" + std::to_string(d) +
                        " exceeds the work guard");
  for (LabelSet support = 0; support <= all_labels(k); ++support) {
    int size = label_count(support);
    if (size <= max_support && size != 1) {
      std::vector<int> labels = labels_of(support);
      std::vector<LabelPair> pairs;
      for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = a + 1; b < labels.size(); ++b) pairs.emplace_back(labels[a], labels[b]);
      uint64_t total = uint64_t{1} << pairs.size();
      for (uint64_t c = 0; c < total; ++c) {
        PatternGraph h(k);
        for (std::size_t b = 0; b < pairs.size(); ++b)
          if ((c >> b) & 1) h.add_edge(pairs[b].first, pairs[b].second);
        if (h.support() != support) continue;
        if (vc_number(h) > d) continue;
        if (core_without_estar(h).f == h) out.push_back(h);
      }
    }
    if (support == all_labels(k)) break;
  }
  return out;
}

}  // namespace

std::shared_ptr<const std::vector<PatternGraph>> enumerate_patterns(int k, int d,
                                                                    EnumerationMode mode) {
  if (k < 0 || k > PatternGraph::kMaxLabels) throw std::invalid_argument("k outside 0..16");
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const std::vector<PatternGraph>>> cache;
  auto key = std::make_tuple(k, d, static_cast<int>(mode));
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const std::vector<PatternGraph>>(build_patterns(k, d, mode));
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache.emplace(key, built).first->second;
}

std::shared_ptr<const std::vector<CoreFamily>> core_families(int k, int d) {
  static std::map<std::pair<int, int>, std::shared_ptr<const std::vector<CoreFamily>>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({k, d});
    if (it != cache.end()) return it->second;
  }
  auto cores = enumerate_patterns(k, d, EnumerationMode::kCoresOnly);
  auto families = std::make_shared<std::vector<CoreFamily>>();
  for (const auto& f : *cores) {
    CoreInfo own = core_without_estar(f);
    families->push_back({f, own.w, estar_from(own)});
  }
  std::shared_ptr<const std::vector<CoreFamily>> frozen = families;
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache.emplace(std::make_pair(k, d), frozen).first->second;
}

std::vector<LabelPair> maximal_matching(const PatternGraph& h) {
  std::vector<LabelPair> out;
  LabelSet used = 0;
  for (auto [i, j] : h.edges()) {
    if ((used >> i) & 1 || (used >> j) & 1) continue;
    out.emplace_back(i, j);
    used |= (1u << i) | (1u << j);
  }
  return out;
}

std::vector<AuditRow> counting_audit(int k) {
  if (k > pattern_label_guard())
    throw GuardExceeded("counting audit limited to k ≤ " + std::to_string(pattern_label_guard()));
  // exact[b][s]: graphs with vc b and exactly s non-isolated labels
  std::vector<std::vector<BigInt>> exact(k + 1, std::vector<BigInt>(k + 1, 0));
  uint64_t total = uint64_t{1} << (k * (k - 1) / 2);
  for (uint64_t c = 0; c < total; ++c) {
    PatternGraph h = PatternGraph::from_code(k, c);
    exact[vc_number(h)][label_count(h.support())] += 1;
  }
  std::vector<AuditRow> rows;
  for (int b = 0; b <= k; ++b) {
    BigInt running = 0;
    for (int c = 0; c <= k; ++c) {
      running += exact[b][c];
      AuditRow row;
      row.b = b;
      row.c = c;
      row.count = running;
      long twice_exp = static_cast<long>(b) * (2 * c - b - 1);
      row.bound = std::pow(static_cast<double>(k), c) * std::pow(2.0, twice_exp / 2.0);
      // count ≤ k^c·2^{e/2}  ⇔  count² ≤ k^{2c}·2^{e}
      BigInt lhs = running * running;
      BigInt rhs = pow(BigInt(k), static_cast<unsigned long>(2 * c));
      if (twice_exp >= 0) rhs <<= static_cast<mp_bitcnt_t>(twice_exp);
      else lhs <<= static_cast<mp_bitcnt_t>(-twice_exp);
      row.holds = lhs <= rhs;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string pattern_to_json(const PatternGraph& h) {
  nlohmann::ordered_json j;
  j["k"] = h.k();
  auto edges = nlohmann::ordered_json::array();
  for (auto [a, b] : h.edges()) edges.push_back({a, b});
  j["edges"] = edges;
  return j.dump();
}

}  // namespace salab
