#include "salab/measure.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "salab/guard.h"

namespace salab {

namespace {

template <typename Scalar>
Scalar from_big(const BigInt& x) {
  if constexpr (std::is_same_v<Scalar, double>) return x.get_d();
  else return Rational(x);
}

template <typename Scalar>
Scalar power(const Scalar& base, long e) {
  if constexpr (std::is_same_v<Scalar, double>) return std::pow(base, static_cast<double>(e));
  else return pow(base, e);
}

template <typename Scalar>
double as_double(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, double>) return x;
  else return x.get_d();
}

// Neumaier summation for doubles, plain exact addition for rationals.
template <typename Scalar>
class Accumulator {
 public:
  void add(const Scalar& x) {
    if constexpr (std::is_same_v<Scalar, double>) {
      double t = sum_ + x;
      if (std::fabs(sum_) >= std::fabs(x)) carry_ += (sum_ - t) + x;
      else carry_ += (x - t) + sum_;
      sum_ = t;
    } else {
      sum_ += x;
    }
  }
  Scalar value() const {
    if constexpr (std::is_same_v<Scalar, double>) return sum_ + carry_;
    else return sum_;
  }

 private:
  Scalar sum_{0};
  double carry_ = 0;
};

void require_full_blocks(const BlockGraph& g, const Rectangle& q) {
  if (static_cast<int>(q.blocks().size()) != g.k())
    throw std::invalid_argument("rectangle must carry all " + std::to_string(g.k()) + " blocks");
  if (q.n() != g.n()) throw std::invalid_argument("rectangle and graph disagree on n");
}

void check_naive_size(const Rectangle& q) {
  if (q.cardinality().get_d() > naive_tuple_guard())
    throw GuardExceeded("naive evaluation over " + q.cardinality().get_str() + " tuples");
}

template <typename Scalar>
Scalar edge_char(const BlockGraph& g, Vertex a, Vertex b, const Scalar& q_ratio) {
  return g.adjacent(a, b) ? q_ratio : Scalar(-1);
}

template <typename Scalar>
Scalar odds(const Scalar& p) {
  if (p <= Scalar(0) || p > Scalar(1)) throw std::invalid_argument("p must lie in (0,1]");
  return (Scalar(1) - p) / p;
}

LabelSet component_of(const PatternGraph& h, int start) {
  LabelSet seen = 1u << start, frontier = seen;
  while (frontier) {
    LabelSet next = 0;
    for (int v : labels_of(frontier)) next |= h.neighbors(v);
    frontier = next & ~seen;
    seen |= next;
  }
  return seen;
}

// Enumerates assignments of the given labels over Q; t is indexed by label.
template <typename Fn>
void for_each_assignment(const Rectangle& q, const std::vector<int>& labels, std::vector<Vertex>& t,
                         Fn&& fn) {
  std::size_t r = labels.size();
  std::vector<std::size_t> pos(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (q.side(labels[i]).empty()) return;
    t[labels[i]] = q.side(labels[i])[0];
  }
  while (true) {
    fn();
    std::size_t i = r;
    while (true) {
      if (i == 0) return;
      --i;
      const auto& side = q.side(labels[i]);
      if (++pos[i] < side.size()) {
        t[labels[i]] = side[pos[i]];
        break;
      }
      pos[i] = 0;
      t[labels[i]] = side[0];
    }
  }
}

template <typename Scalar>
Scalar char_sum_naive(const BlockGraph& g, const Rectangle& q, const PatternGraph& h,
                      const Scalar& p) {
  check_naive_size(q);
  const Scalar ratio = odds(p);
  const auto edges = h.edges();
  Accumulator<Scalar> acc;
  for_each_tuple(q, [&](const Tuple& t) {
    Scalar prod(1);
    for (auto [a, b] : edges) prod *= edge_char(g, t[a], t[b], ratio);
    acc.add(prod);
  });
  return acc.value();
}

template <typename Scalar>
Scalar component_sum(const BlockGraph& g, const Rectangle& q, const PatternGraph& comp,
                     LabelSet labels, const Scalar& ratio) {
  std::vector<Vertex> t(g.k(), -1);
  const LabelSet cover = lex_first_min_vc(comp);
  Accumulator<Scalar> acc;
  if (label_count(cover) > 3) {
    const auto edges = comp.edges();
    for_each_assignment(q, labels_of(labels), t, [&] {
      Scalar prod(1);
      for (auto [a, b] : edges) prod *= edge_char(g, t[a], t[b], ratio);
      acc.add(prod);
    });
    return acc.value();
  }
  const auto inner = comp.induced(cover).edges();
  const auto leaves = labels_of(labels & ~cover);
  for_each_assignment(q, labels_of(cover), t, [&] {
    Scalar prod(1);
    for (auto [a, b] : inner) prod *= edge_char(g, t[a], t[b], ratio);
    for (int u : leaves) {
      if (prod == Scalar(0)) break;
      const auto nbrs = labels_of(comp.neighbors(u));
      Accumulator<Scalar> leaf;
      for (Vertex v : q.side(u)) {
        Scalar term(1);
        for (int w : nbrs) term *= edge_char(g, t[w], v, ratio);
        leaf.add(term);
      }
      prod *= leaf.value();
    }
    acc.add(prod);
  });
  return acc.value();
}

template <typename Scalar>
Scalar char_sum_factorized(const BlockGraph& g, const Rectangle& q, const PatternGraph& h,
                           const Scalar& p) {
  const Scalar ratio = odds(p);
  Scalar total(1);
  LabelSet done = 0;
  for (int v = 0; v < h.k(); ++v) {
    if ((done >> v) & 1) continue;
    LabelSet comp = component_of(h, v);
    done |= comp;
    if (label_count(comp) == 1) {
      total *= Scalar(static_cast<long>(q.side(v).size()));
      continue;
    }
    total *= component_sum(g, q, h.induced(comp), comp, ratio);
  }
  return total;
}

// Common-neighborhood counts inside Q, cached for one and two anchors.
class CommonCounts {
 public:
  CommonCounts(const BlockGraph& g, const Rectangle& q) : g_(g), q_(q) {
    for (int b = 0; b < g.k(); ++b) {
      sides_.push_back(q.side_set(b, g.vertex_count()));
      index_.emplace_back(g.vertex_count(), -1);
      for (std::size_t i = 0; i < q.side(b).size(); ++i) index_[b][q.side(b)[i]] = static_cast<int>(i);
    }
  }

  // A count with its table resolved up front; eval only indexes.
  struct Lookup {
    int kind = 0;  // anchors: 0 none, 1 one, 2 two, 3 more
    int u = 0;
    int b1 = -1, b2 = -1;
    long constant = 0;
    const int* table = nullptr;
    const int* idx1 = nullptr;
    const int* idx2 = nullptr;
    std::size_t n2 = 0;
    std::vector<int> anchors;
  };

  Lookup prepare(std::span<const int> anchor_blocks, int u) {
    Lookup l;
    l.u = u;
    l.anchors.assign(anchor_blocks.begin(), anchor_blocks.end());
    switch (anchor_blocks.size()) {
      case 0:
        l.kind = 0;
        l.constant = static_cast<long>(q_.side(u).size());
        break;
      case 1:
        l.kind = 1;
        l.b1 = anchor_blocks[0];
        l.table = single(l.b1).data();
        l.idx1 = index_[l.b1].data();
        break;
      case 2:
        l.kind = 2;
        l.b1 = anchor_blocks[0];
        l.b2 = anchor_blocks[1];
        l.table = pair(l.b1, l.b2).data();
        l.idx1 = index_[l.b1].data();
        l.idx2 = index_[l.b2].data();
        l.n2 = q_.side(l.b2).size();
        break;
      default:
        l.kind = 3;
    }
    return l;
  }

  long eval(const Lookup& l, const std::vector<Vertex>& t) const {
    const std::size_t k = static_cast<std::size_t>(g_.k());
    switch (l.kind) {
      case 0:
        return l.constant;
      case 1:
        return l.table[static_cast<std::size_t>(l.idx1[t[l.b1]]) * k + l.u];
      case 2:
        return l.table[(static_cast<std::size_t>(l.idx1[t[l.b1]]) * l.n2 + l.idx2[t[l.b2]]) * k + l.u];
      default: {
        VertexSet acc = sides_[l.u];
        for (int b : l.anchors) acc &= g_.neighbors(t[b]);
        return acc.count();
      }
    }
  }

 private:
  const std::vector<int>& single(int b) {
    auto it = single_.find(b);
    if (it != single_.end()) return it->second;
    std::vector<int> table(q_.side(b).size() * g_.k(), 0);
    for (std::size_t i = 0; i < q_.side(b).size(); ++i)
      for (int u = 0; u < g_.k(); ++u)
        if (u != b) table[i * g_.k() + u] = g_.neighbors(q_.side(b)[i]).intersection_count(sides_[u]);
    return single_.emplace(b, std::move(table)).first->second;
  }

  const std::vector<int>& pair(int b1, int b2) {
    auto key = std::make_pair(b1, b2);
    auto it = pair_.find(key);
    if (it != pair_.end()) return it->second;
    const auto& s1 = q_.side(b1);
    const auto& s2 = q_.side(b2);
    std::vector<int> table(s1.size() * s2.size() * g_.k(), 0);
    for (std::size_t i1 = 0; i1 < s1.size(); ++i1) {
      auto w1 = g_.neighbors(s1[i1]).words();
      for (std::size_t i2 = 0; i2 < s2.size(); ++i2) {
        auto w2 = g_.neighbors(s2[i2]).words();
        for (int u = 0; u < g_.k(); ++u) {
          if (u == b1 || u == b2) continue;
          auto w3 = sides_[u].words();
          int c = 0;
          for (std::size_t w = 0; w < w1.size(); ++w) c += std::popcount(w1[w] & w2[w] & w3[w]);
          table[(i1 * s2.size() + i2) * g_.k() + u] = c;
        }
      }
    }
    return pair_.emplace(key, std::move(table)).first->second;
  }

  const BlockGraph& g_;
  const Rectangle& q_;
  std::vector<VertexSet> sides_;
  std::vector<std::vector<int>> index_;
  std::map<int, std::vector<int>> single_;
  std::map<std::pair<int, int>, std::vector<int>> pair_;
};

template <typename Scalar>
Scalar family_naive(const BlockGraph& g, const Rectangle& q, const CoreFamily& fam,
                    const Scalar& p) {
  check_naive_size(q);
  const Scalar ratio = odds(p);
  const auto edges = fam.f.edges();
  const auto optional = fam.estar.edges();
  const Scalar lift = power(p, -static_cast<long>(optional.size()));
  Accumulator<Scalar> acc;
  for_each_tuple(q, [&](const Tuple& t) {
    for (auto [a, b] : optional)
      if (!g.adjacent(t[a], t[b])) return;
    Scalar prod = lift;
    for (auto [a, b] : edges) prod *= edge_char(g, t[a], t[b], ratio);
    acc.add(prod);
  });
  return acc.value();
}

struct LeafPlan {
  int block = 0;
  std::vector<int> chi_anchors;  // F-neighbors, all in W
  std::vector<int> ind_anchors;  // E*-neighbors, all in W
};

template <typename Scalar>
Scalar family_cover(const BlockGraph& g, const Rectangle& q, const CoreFamily& fam, const Scalar& p,
                    CommonCounts& counts) {
  const Scalar ratio = odds(p);
  const auto cover = labels_of(fam.w);
  const auto inner = fam.f.induced(fam.w).edges();
  Scalar constant(1);
  std::vector<LeafPlan> plans;
  for (int u = 0; u < g.k(); ++u) {
    if ((fam.w >> u) & 1) continue;
    LeafPlan plan{u, labels_of(fam.f.neighbors(u) & fam.w), labels_of(fam.estar.neighbors(u) & fam.w)};
    if (label_count((fam.f.neighbors(u) | fam.estar.neighbors(u)) & ~fam.w))
      throw std::logic_error("cover does not cover the family");
    if (plan.chi_anchors.empty() && plan.ind_anchors.empty())
      constant *= Scalar(static_cast<long>(q.side(u).size()));
    else
      plans.push_back(std::move(plan));
  }
  int max_anchor = 0;
  for (const auto& plan : plans)
    max_anchor = std::max<int>(max_anchor, plan.chi_anchors.size() + plan.ind_anchors.size());
  std::vector<Scalar> inv_p(max_anchor + 1);
  for (int e = 0; e <= max_anchor; ++e) inv_p[e] = power(p, -e);

  // Inclusion-exclusion over the χ-anchors of each leaf, one signed term
  // per subset, resolved to a count table before the walk.
  struct Term {
    CommonCounts::Lookup lookup;
    Scalar weight;
  };
  std::vector<std::vector<Term>> plan_terms;
  std::vector<int> anchors;
  for (const auto& plan : plans) {
    const int m = static_cast<int>(plan.chi_anchors.size());
    std::vector<Term> terms;
    for (uint32_t sub = 0; sub < (1u << m); ++sub) {
      anchors = plan.ind_anchors;
      for (int b = 0; b < m; ++b)
        if ((sub >> b) & 1) anchors.push_back(plan.chi_anchors[b]);
      std::sort(anchors.begin(), anchors.end());
      Scalar w = inv_p[anchors.size()];
      if ((m - std::popcount(sub)) & 1) w = -w;
      terms.push_back({counts.prepare(anchors, plan.block), w});
    }
    plan_terms.push_back(std::move(terms));
  }

  std::vector<Vertex> t(g.k(), -1);
  Accumulator<Scalar> acc;
  for_each_assignment(q, cover, t, [&] {
    Scalar prod = constant;
    for (auto [a, b] : inner) prod *= edge_char(g, t[a], t[b], ratio);
    for (const auto& terms : plan_terms) {
      if (prod == Scalar(0)) break;
      Scalar factor(0);
      for (const auto& term : terms) {
        long c = counts.eval(term.lookup, t);
        if (c != 0) factor += term.weight * Scalar(c);
      }
      prod *= factor;
    }
    acc.add(prod);
  });
  return acc.value();
}

std::mutex audit_mutex;
SmallBoundAudit audit_state;

template <typename Scalar>
void audit(const Rectangle& q, const MeasureParams<Scalar>& params, const Scalar& value) {
  if (params.p > Scalar(1) / Scalar(2)) return;
  Scalar bound = rect_small_bound(q, params);
  bool ok;
  if constexpr (std::is_same_v<Scalar, double>) ok = std::fabs(value) <= bound * (1 + 1e-9);
  else ok = abs(value) <= bound;
  std::lock_guard<std::mutex> lock(audit_mutex);
  ++audit_state.checked;
  if (!ok) {
    if (audit_state.violated == 0)
      audit_state.first_violation = q.describe() + " value " + std::to_string(as_double(value)) +
                                    " bound " + std::to_string(as_double(bound));
    ++audit_state.violated;
  }
}

template <typename Scalar>
Scalar histogram_total(const BlockGraph& g, const Rectangle& q, const MeasureParams<Scalar>& params) {
  check_naive_size(q);
  const int k = g.k();
  if (k > pattern_label_guard())
    throw GuardExceeded("histogram transform limited to k ≤ " + std::to_string(pattern_label_guard()));
  const int pairs = k * (k - 1) / 2;
  std::vector<long> hist(std::size_t{1} << pairs, 0);
  for_each_tuple(q, [&](const Tuple& t) {
    std::size_t mask = 0;
    int bit = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j, ++bit)
        if (g.adjacent(t[i], t[j])) mask |= std::size_t{1} << bit;
    ++hist[mask];
  });
  const Scalar ratio = odds(params.p);
  std::vector<Scalar> val(hist.size());
  for (std::size_t m = 0; m < hist.size(); ++m) val[m] = Scalar(hist[m]);
  // Per pair coordinate: pattern bit 0 sums both presences, pattern bit 1
  // weights absent by −1 and present by (1−p)/p.
  for (int b = 0; b < pairs; ++b) {
    std::size_t bitmask = std::size_t{1} << b;
    for (std::size_t m = 0; m < val.size(); ++m) {
      if (m & bitmask) continue;
      Scalar absent = val[m], present = val[m | bitmask];
      val[m] = absent + present;
      val[m | bitmask] = ratio * present - absent;
    }
  }
  Accumulator<Scalar> acc;
  for (const auto& h : *enumerate_patterns(k, params.d, EnumerationMode::kAllHd)) acc.add(val[h.code()]);
  return acc.value();
}

}  // namespace

MeasureParams<double> params_from_clique(int n, double clique_parameter, double eta) {
  MeasureParams<double> out;
  out.clique_parameter = clique_parameter;
  out.eta = eta;
  out.p = std::pow(static_cast<double>(n), -2.0 / clique_parameter);
  out.d = static_cast<int>(std::floor(eta * clique_parameter + 1e-12));
  return out;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::kNaive: return "naive";
    case Strategy::kFactorized: return "factorized";
    case Strategy::kGrouped: return "grouped";
  }
  return "?";
}

template <typename Scalar>
Scalar chi(const BlockGraph& g, std::span<const VertexPair> pairs, const Scalar& p) {
  const Scalar ratio = odds(p);
  Scalar prod(1);
  for (auto [a, b] : pairs) {
    if (g.block_of(a) == g.block_of(b)) throw std::invalid_argument("pair inside one block");
    prod *= edge_char(g, a, b, ratio);
  }
  return prod;
}

std::vector<VertexPair> map_pattern(const PatternGraph& h, std::span<const Vertex> t) {
  std::vector<VertexPair> out;
  for (auto [a, b] : h.edges()) {
    if (a >= static_cast<int>(t.size()) || b >= static_cast<int>(t.size()) || t[a] < 0 || t[b] < 0)
      throw std::invalid_argument("tuple misses block " + std::to_string(t.size() <= std::size_t(a) || t[a] < 0 ? a : b));
    out.emplace_back(t[a], t[b]);
  }
  return out;
}

template <typename Scalar>
Scalar char_sum(const BlockGraph& g, const Rectangle& q, const PatternGraph& h, const Scalar& p,
                Strategy strategy) {
  require_full_blocks(g, q);
  switch (strategy) {
    case Strategy::kNaive: return char_sum_naive(g, q, h, p);
    case Strategy::kFactorized: return char_sum_factorized(g, q, h, p);
    case Strategy::kGrouped: break;
  }
  throw std::invalid_argument("grouped sums run over a core family; use family_sum");
}

template <typename Scalar>
Scalar family_sum(const BlockGraph& g, const Rectangle& q, const CoreFamily& family,
                  const Scalar& p, Strategy strategy) {
  require_full_blocks(g, q);
  if (strategy == Strategy::kNaive) return family_naive(g, q, family, p);
  CommonCounts counts(g, q);
  return family_cover(g, q, family, p, counts);
}

template <typename Scalar>
Scalar total_char_sum(const BlockGraph& g, const Rectangle& q, const MeasureParams<Scalar>& params,
                      Strategy strategy) {
  require_full_blocks(g, q);
  if (q.empty()) return Scalar(0);
  switch (strategy) {
    case Strategy::kNaive:
      return histogram_total(g, q, params);
    case Strategy::kFactorized: {
      Accumulator<Scalar> acc;
      for (const auto& h : *enumerate_patterns(g.k(), params.d, EnumerationMode::kAllHd))
        acc.add(char_sum_factorized(g, q, h, params.p));
      return acc.value();
    }
    case Strategy::kGrouped: {
      CommonCounts counts(g, q);
      Accumulator<Scalar> acc;
      for (const auto& fam : *core_families(g.k(), params.d))
        acc.add(family_cover(g, q, fam, params.p, counts));
      return acc.value();
    }
  }
  return Scalar(0);
}

template <typename Scalar>
Scalar mu_d(const BlockGraph& g, const Rectangle& q, const MeasureParams<Scalar>& params,
            Strategy strategy) {
  Scalar total = total_char_sum(g, q, params, strategy);
  Scalar value = total / from_big<Scalar>(pow(BigInt(g.n()), static_cast<unsigned long>(g.k())));
  audit(q, params, value);
  return value;
}

template <typename Scalar>
Scalar rect_small_bound(const Rectangle& q, const MeasureParams<Scalar>& params) {
  const int k = static_cast<int>(q.blocks().size());
  Scalar patterns(0);
  for (int i = 0; i <= std::min(params.d, k); ++i)
    patterns += from_big<Scalar>(binomial(k, i)) * power(params.p, -static_cast<long>(i) * k);
  return from_big<Scalar>(q.cardinality()) * patterns /
         from_big<Scalar>(pow(BigInt(q.n()), static_cast<unsigned long>(k)));
}

SmallBoundAudit small_bound_audit() {
  std::lock_guard<std::mutex> lock(audit_mutex);
  return audit_state;
}

void reset_small_bound_audit() {
  std::lock_guard<std::mutex> lock(audit_mutex);
  audit_state = {};
}

PatternGraph star(int k, int center, int cutoff) {
  PatternGraph s(k);
  for (int leaf = 0; leaf < std::min(cutoff, k); ++leaf)
    if (leaf != center) s.add_edge(center, leaf);
  return s;
}

PatternGraph star_union(int k, std::span<const int> centers) {
  PatternGraph s(k);
  for (int c : centers) s = s.united(star(k, c, k));
  return s;
}

int star_union_size(int k, int ell) { return ell * (2 * k - ell - 1) / 2; }

Rational SplitResult::difference() const {
  Rational sum = main;
  for (const auto& term : boundary) sum += term.value;
  return full - sum;
}

SplitResult split_main_boundary(const BlockGraph& g, const Rectangle& q,
                                std::span<const int> singletons,
                                const MeasureParams<Rational>& params) {
  require_full_blocks(g, q);
  const int k = g.k();
  std::vector<int> singles(singletons.begin(), singletons.end());
  std::sort(singles.begin(), singles.end());
  if (std::adjacent_find(singles.begin(), singles.end()) != singles.end())
    throw std::invalid_argument("repeated singleton block");
  for (int r : singles) {
    if (r < 0 || r >= k) throw std::invalid_argument("singleton block out of range");
    if (q.side(r).size() != 1)
      throw std::invalid_argument("block " + std::to_string(r) + " is not a singleton");
    Vertex v = q.side(r)[0];
    for (int b = 0; b < k; ++b) {
      if (b == r) continue;
      for (Vertex x : q.side(b))
        if (!g.adjacent(v, x))
          throw std::invalid_argument("singleton " + std::to_string(v) + " misses neighbor " +
                                      std::to_string(x) + " in block " + std::to_string(b));
    }
  }

  SplitResult out;
  out.order = singles;
  for (int b = 0; b < k; ++b)
    if (!std::binary_search(singles.begin(), singles.end(), b)) out.order.push_back(b);
  const auto& order = out.order;
  const int ell = static_cast<int>(singles.size());
  // Star around position i (0-based) with leaves at positions below `cutoff`.
  auto relabeled_star = [&](int i, int cutoff) {
    PatternGraph s(k);
    for (int j = 0; j < cutoff; ++j)
      if (j != i) s.add_edge(order[i], order[j]);
    return s;
  };

  const auto& family = *enumerate_patterns(k, params.d, EnumerationMode::kAllHd);
  const Rational& p = params.p;

  PatternGraph main_stars(k);
  for (int i = 0; i < ell; ++i) main_stars = main_stars.united(relabeled_star(i, k));
  Rational main_sum = 0;
  for (const auto& h : family)
    if (h.contains(main_stars)) main_sum += char_sum_factorized(g, q, h.minus(main_stars), p);
  out.main = pow(p, -static_cast<long>(main_stars.edge_count())) * main_sum;

  PatternGraph earlier(k);
  for (int i = 0; i < ell; ++i) {
    for (int j = i + 1; j < k; ++j) {
      PatternGraph fixed = earlier.united(relabeled_star(i, j));
      LabelPair e{std::min(order[i], order[j]), std::max(order[i], order[j])};
      BoundaryTerm term;
      term.i = i + 1;
      term.j = j + 1;
      term.edge = e;
      Rational sum = 0;
      for (const auto& h : family) {
        if (h.has_edge(e.first, e.second) || !h.contains(fixed)) continue;
        if (!in_boundary(h, e, params.d)) continue;
        ++term.family_size;
        sum += char_sum_factorized(g, q, h.minus(fixed), p);
      }
      term.value = pow(p, -static_cast<long>(fixed.edge_count())) * sum;
      out.boundary.push_back(std::move(term));
    }
    earlier = earlier.united(relabeled_star(i, k));
  }
  out.full = total_char_sum(g, q, params, Strategy::kFactorized);
  return out;
}

#define SALAB_MEASURE_INSTANTIATE(S)                                                              \
  template S chi<S>(const BlockGraph&, std::span<const VertexPair>, const S&);                   \
  template S char_sum<S>(const BlockGraph&, const Rectangle&, const PatternGraph&, const S&,     \
                         Strategy);                                                               \
  template S family_sum<S>(const BlockGraph&, const Rectangle&, const CoreFamily&, const S&,     \
                           Strategy);                                                             \
  template S total_char_sum<S>(const BlockGraph&, const Rectangle&, const MeasureParams<S>&,     \
                               Strategy);                                                         \
  template S mu_d<S>(const BlockGraph&, const Rectangle&, const MeasureParams<S>&, Strategy);    \
  template S rect_small_bound<S>(const Rectangle&, const MeasureParams<S>&);

SALAB_MEASURE_INSTANTIATE(Rational)
SALAB_MEASURE_INSTANTIATE(double)

}  // namespace salab
