#include "salab/wellbehaved.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "salab/guard.h"
#include "salab/measure.h"

namespace salab {

namespace {

// Closed (1 ± slack)·expected window with a hair of float headroom.
bool within(long count, double expected, double slack) {
  return std::fabs(count - expected) <= slack * expected * (1 + 1e-12) + 1e-9;
}

double deviation(long count, double expected) {
  if (expected == 0) return count == 0 ? 0 : INFINITY;
  return std::fabs(count - expected) / expected;
}

// Tuples of exactly `size` vertices from distinct blocks, vertex ids
// ascending; candidates[b] lists block b's allowed vertices. The callback
// returns false to stop.
template <typename Fn>
bool for_each_small_tuple(const std::vector<std::vector<Vertex>>& candidates, int size, Tuple& t,
                          int start_block, Fn&& fn) {
  if (static_cast<int>(t.size()) == size) return fn(static_cast<const Tuple&>(t));
  for (int b = start_block; b < static_cast<int>(candidates.size()); ++b) {
    for (Vertex v : candidates[b]) {
      t.push_back(v);
      bool go = for_each_small_tuple(candidates, size, t, b + 1, fn);
      t.pop_back();
      if (!go) return false;
    }
  }
  return true;
}

template <typename Fn>
void for_each_small_tuple(const std::vector<std::vector<Vertex>>& candidates, int size, Fn&& fn) {
  Tuple t;
  for_each_small_tuple(candidates, size, t, 0, fn);
}

long common_count(const BlockGraph& g, const Tuple& t, const VertexSet& target) {
  if (t.empty()) return target.count();
  if (t.size() == 1) return g.neighbors(t[0]).intersection_count(target);
  VertexSet acc = g.neighbors(t[0]);
  for (std::size_t i = 1; i < t.size(); ++i) acc &= g.neighbors(t[i]);
  return acc.intersection_count(target);
}

double tuple_count(const std::vector<std::vector<Vertex>>& candidates, int max_size) {
  // Elementary symmetric sums of the block sizes.
  std::vector<double> e(max_size + 1, 0);
  e[0] = 1;
  for (const auto& c : candidates)
    for (int j = max_size; j >= 1; --j) e[j] += e[j - 1] * static_cast<double>(c.size());
  double total = 0;
  for (int j = 1; j <= max_size; ++j) total += e[j];
  return total;
}

NeighborhoodReport scan(const BlockGraph& g, const std::vector<std::vector<Vertex>>& candidates,
                        const std::vector<VertexSet>& targets, const std::vector<bool>& is_target,
                        int max_size, double beta, double p) {
  if (tuple_count(candidates, max_size) > naive_tuple_guard())
    throw GuardExceeded("neighborhood scan over more than " + std::to_string(naive_tuple_guard()) +
                        " tuples");
  NeighborhoodReport report;
  std::vector<long> sizes(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) sizes[i] = targets[i].count();
  for (int a = 1; a <= max_size; ++a) {
    const double scale = std::pow(p, a);
    for_each_small_tuple(candidates, a, [&](const Tuple& t) {
      ++report.tuples_checked;
      for (int i = 0; i < g.k(); ++i) {
        if (!is_target[i]) continue;
        bool inside = false;
        for (Vertex v : t) inside |= g.block_of(v) == i;
        if (inside) continue;
        const long count = common_count(g, t, targets[i]);
        double dev = deviation(count, scale * sizes[i]);
        if (dev > report.worst_deviation) {
          report.worst_deviation = dev;
          report.worst_tuple = t;
          report.worst_block = i;
        }
        if (!within(count, scale * sizes[i], beta)) report.pass = false;
      }
      return true;
    });
  }
  return report;
}

std::vector<Vertex> block_vertices(const BlockGraph& g, int b) {
  std::vector<Vertex> out(g.n());
  for (int i = 0; i < g.n(); ++i) out[i] = b * g.n() + i;
  return out;
}

}  // namespace

NeighborhoodReport check_common_neighborhoods(const BlockGraph& g, double beta, double p, int d_cap) {
  std::vector<std::vector<Vertex>> candidates;
  std::vector<VertexSet> targets;
  for (int b = 0; b < g.k(); ++b) {
    candidates.push_back(block_vertices(g, b));
    targets.push_back(g.block(b));
  }
  return scan(g, candidates, targets, std::vector<bool>(g.k(), true), d_cap, beta, p);
}

NeighborhoodReport scan_rectangle_neighborhoods(const BlockGraph& g, const Rectangle& q,
                                                const std::vector<int>& sources,
                                                const std::vector<int>& targets, int max_size,
                                                double beta, double p) {
  std::vector<std::vector<Vertex>> candidates(g.k());
  std::vector<VertexSet> target_sets(g.k(), VertexSet(g.vertex_count()));
  std::vector<bool> is_target(g.k(), false);
  for (int b : sources)
    if (q.has_block(b)) candidates[b] = q.side(b);
  for (int b : targets) {
    if (!q.has_block(b)) continue;
    is_target[b] = true;
    target_sets[b] = q.side_set(b, g.vertex_count());
  }
  return scan(g, candidates, target_sets, is_target, max_size, beta, p);
}

ErrorSet build_error_set(const BlockGraph& g, const std::vector<Vertex>& side, int ell, double gamma,
                         double p, const std::optional<Rectangle>& pool) {
  ErrorSet out;
  out.packed_per_size.assign(std::max(ell, 0), 0);
  out.size_bound = 12.0 * ell * std::log(static_cast<double>(g.n())) / (std::pow(p, ell) * gamma * gamma);
  if (side.empty()) return out;
  const int home = g.block_of(side[0]);
  VertexSet target(g.vertex_count());
  for (Vertex v : side) {
    if (g.block_of(v) != home) throw std::invalid_argument("error-set side spans several blocks");
    target.insert(v);
  }
  const long size = target.count();
  std::vector<std::vector<Vertex>> candidates(g.k());
  for (int b = 0; b < g.k(); ++b) {
    if (b == home) continue;
    if (!pool) candidates[b] = block_vertices(g, b);
    else if (pool->has_block(b)) candidates[b] = pool->side(b);
  }
  if (tuple_count(candidates, ell) > naive_tuple_guard())
    throw GuardExceeded("error-set packing over more than " + std::to_string(naive_tuple_guard()) +
                        " tuples");

  VertexSet error(g.vertex_count());
  for (int a = 1; a <= ell; ++a) {
    VertexSet packed(g.vertex_count());
    const double expected = std::pow(p, a) * size;
    for_each_small_tuple(candidates, a, [&](const Tuple& t) {
      for (Vertex v : t)
        if (packed.contains(v)) return true;
      if (!within(common_count(g, t, target), expected, gamma)) {
        for (Vertex v : t) packed.insert(v);
        ++out.packed_per_size[a - 1];
      }
      return true;
    });
    error |= packed;
  }
  out.vertices = error.members();

  // Post-scan over everything that survived.
  for (auto& c : candidates)
    std::erase_if(c, [&](Vertex v) { return error.contains(v); });
  for (int a = 1; a <= ell; ++a) {
    const double expected = std::pow(p, a) * size;
    for_each_small_tuple(candidates, a, [&](const Tuple& t) {
      if (!within(common_count(g, t, target), expected, gamma))
        throw std::logic_error("error set misses a violating tuple");
      return true;
    });
  }
  return out;
}

std::vector<ErrorSetCheck> check_error_sets(const BlockGraph& g, const WellBehavedSpec& spec,
                                            double p, const std::vector<Rectangle>& rectangles) {
  std::vector<ErrorSetCheck> out;
  const double gamma = 1.0 / (3 * g.k());
  for (const auto& q : rectangles) {
    ErrorSetCheck check;
    check.rectangle = q.describe();
    check.s = spec.s;
    std::vector<int> large;
    for (int b = 0; b < g.k(); ++b) {
      long size = q.has_block(b) ? static_cast<long>(q.side(b).size()) : 0;
      if (size == 0) continue;
      if (size < 2 * spec.s) {
        check.admissible = false;
        check.reason = "block " + std::to_string(b) + " has " + std::to_string(size) +
                       " vertices, neither 0 nor at least 2s = " + std::to_string(2 * spec.s);
        break;
      }
      large.push_back(b);
    }
    if (!check.admissible) {
      out.push_back(check);
      continue;
    }
    VertexSet error(g.vertex_count());
    for (int b : large) {
      ErrorSet w = build_error_set(g, q.side(b), spec.ell, gamma, p, q);
      for (Vertex v : w.vertices) error.insert(v);
    }
    check.error_set_size = error.count();
    Rectangle trimmed = q;
    for (int b : large)
      std::erase_if(trimmed.mutable_side(b), [&](Vertex v) { return error.contains(v); });
    const double cap = std::min(gamma / 2, gamma * std::pow(p, spec.ell));
    for (int b : large)
      if (static_cast<double>(check.error_set_size) / q.side(b).size() > cap) check.removal_hypothesis = false;
    auto report = scan_rectangle_neighborhoods(g, trimmed, large, large, spec.ell, 1.0 / g.k(), p);
    check.worst_deviation = report.worst_deviation;
    check.pass = report.pass && check.error_set_size <= spec.s;
    out.push_back(check);
  }
  return out;
}

RemovalCheck set_removal(long universe, long subset, long removed, long removed_from_subset,
                         const Rational& b, const Rational& gamma) {
  RemovalCheck out;
  if (universe <= 0 || removed >= universe) return out;
  Rational u(universe), s(subset), t(removed);
  Rational ratio = s / u;
  Rational cap = std::min(Rational(gamma / 2), Rational(b * gamma));
  out.hypothesis = ratio >= (1 - gamma) * b && ratio <= (1 + gamma) * b && t / u <= cap;
  Rational after = Rational(subset - removed_from_subset) / Rational(universe - removed);
  out.conclusion = after >= (1 - 3 * gamma) * b && after <= (1 + 3 * gamma) * b;
  return out;
}

CharBoundReport check_char_bounds(const BlockGraph& g, const PatternGraph& core, const Rectangle& q,
                                  double p, CharBoundMode mode, const WellBehavedSpec& spec,
                                  LabelSet tight_blocks) {
  CharBoundReport report;
  const int k = g.k();
  const double n = g.n();
  CoreInfo info = core_of(core);
  if (!(info.f == core)) {
    report.precondition = false;
    report.reason = core.describe() + " is not a core";
    return report;
  }
  const LabelSet support = core.support();
  report.trivial = core.empty();

  if (mode == CharBoundMode::kGeneral) {
    for (int b : labels_of(support))
      if (!(q.side(b).size() > n / 2)) {
        report.precondition = false;
        report.reason = "block " + std::to_string(b) + " not larger than n/2";
        return report;
      }
    if (!(spec.lambda < 1 - std::log(k) / std::log(n))) {
      report.precondition = false;
      report.reason = "lambda must stay below 1 - log k / log n";
      return report;
    }
    CoreFamily family{core, info.w, info.estar};
    report.value = family_sum<double>(g, q, family, p, Strategy::kGrouped);
    report.threshold = 6 * std::pow(p, -core.edge_count()) *
                       std::pow(n, k - spec.lambda * vc_number(core) / 4.0);
  } else {
    const double big = spec.Lambda;
    for (int b = 0; b < k; ++b) {
      double size = q.side(b).size();
      if (size > 4 * big) {
        report.precondition = false;
        report.reason = "block " + std::to_string(b) + " exceeds 4*Lambda";
        return report;
      }
      if ((tight_blocks >> b) & 1 && !(size > big)) {
        report.precondition = false;
        report.reason = "block " + std::to_string(b) + " not larger than Lambda";
        return report;
      }
    }
    const LabelSet anchors = support & tight_blocks;
    std::vector<int> from = labels_of(anchors), to = labels_of(tight_blocks & ~anchors);
    if (!from.empty() && !to.empty()) {
      auto nbhd = scan_rectangle_neighborhoods(g, q, from, to, static_cast<int>(from.size()), 3.0 / k, p);
      if (!nbhd.pass) {
        report.precondition = false;
        report.reason = "neighborhoods from Q_A are not (3/k,p)-bounded";
        return report;
      }
    }
    PatternGraph restricted = core.induced(tight_blocks);
    CoreFamily family{restricted, info.w & tight_blocks, info.estar.induced(tight_blocks)};
    Rectangle local = q;
    BigInt local_size = 1;
    for (int b = 0; b < k; ++b) {
      if ((tight_blocks >> b) & 1) {
        local_size *= static_cast<long>(q.side(b).size());
        continue;
      }
      auto& side = local.mutable_side(b);
      Vertex keep = side.empty() ? b * g.n() : side[0];
      side.assign(1, keep);
    }
    report.value = family_sum<double>(g, local, family, p, Strategy::kGrouped);
    report.threshold = spec.tight_constant * std::pow(p, -restricted.edge_count()) *
                       std::pow(big / (10.0 * k * std::log2(n)), -vc_number(restricted) / 4.0) *
                       local_size.get_d();
  }
  report.ratio = report.threshold > 0 ? std::fabs(report.value) / report.threshold : INFINITY;
  report.pass = std::fabs(report.value) <= report.threshold;
  return report;
}

GoodWitness is_good_rectangle(const BlockGraph& g, const Rectangle& q, const GoodRectSpec& spec) {
  GoodWitness out;
  const int k = g.k();
  std::vector<bool> in_r(k, false);
  for (int r : spec.singletons) in_r.at(r) = true;
  for (int b = 0; b < k; ++b) {
    std::size_t size = q.side(b).size();
    if (in_r[b] ? size != 1 : size < spec.s) {
      out.item = 1;
      out.reason = in_r[b] ? "block " + std::to_string(b) + " is not a singleton"
                           : "block " + std::to_string(b) + " has fewer than s vertices";
      return out;
    }
  }
  for (int r : spec.singletons) {
    Vertex v = q.side(r)[0];
    for (int b = 0; b < k; ++b) {
      if (b == r) continue;
      for (Vertex x : q.side(b))
        if (!g.adjacent(v, x)) {
          out.item = 2;
          out.reason = "vertex " + std::to_string(v) + " misses " + std::to_string(x);
          return out;
        }
    }
  }
  std::vector<int> rest;
  for (int b = 0; b < k; ++b)
    if (!in_r[b]) rest.push_back(b);
  auto report = scan_rectangle_neighborhoods(g, q, rest, rest, spec.d, spec.beta, spec.p);
  if (!report.pass) {
    out.item = 3;
    out.reason = "tuple deviation " + std::to_string(report.worst_deviation) + " into block " +
                 std::to_string(report.worst_block);
    return out;
  }
  out.good = true;
  return out;
}

std::string to_string(PartLabel label) {
  switch (label) {
    case PartLabel::kSmall: return "small";
    case PartLabel::kAxiomSub: return "axiom_sub";
    case PartLabel::kGood: return "good";
  }
  return "?";
}

namespace {

Part make_part(const Rectangle& q, PartLabel label) {
  Part part;
  part.rect = q;
  part.label = label;
  return part;
}

class Decomposer {
 public:
  Decomposer(const BlockGraph& g, const DecomposeSpec& spec, Decomposition& out)
      : g_(g), spec_(spec), out_(out), beta_(spec.beta > 0 ? spec.beta : 1.0 / g.k()) {}

  void run(const Rectangle& q, int depth) {
    if (depth > 2 * g_.k() + 2) throw std::logic_error("decomposition recursion too deep");
    if (q.empty()) return;
    std::vector<int> singles = singletons(q);
    double ratio = q.cardinality().get_d() / out_.small_threshold;
    if (ratio <= 1) {
      Part part = make_part(q, PartLabel::kSmall);
      part.small_ratio = ratio;
      out_.worst_small_ratio = std::max(out_.worst_small_ratio, ratio);
      push(std::move(part), singles);
      return;
    }
    if (auto pair = axiom_pair(q, singles)) {
      Part part = make_part(q, PartLabel::kAxiomSub);
      part.non_edge = *pair;
      push(std::move(part), singles);
      return;
    }
    if (good(q, singles)) {
      push_good(q, singles);
      return;
    }
    // Case 1: a singleton with non-neighbors elsewhere in Q.
    for (int i : singles) {
      Vertex v = q.side(i)[0];
      std::vector<Vertex> misses;
      for (int b = 0; b < g_.k(); ++b)
        if (b != i)
          for (Vertex x : q.side(b))
            if (!g_.adjacent(v, x)) misses.push_back(x);
      if (misses.empty()) continue;
      Rectangle rest = q;
      for (Vertex u : misses) {
        int b = g_.block_of(u);
        Rectangle peeled = rest;
        peeled.mutable_side(b).assign(1, u);
        Part part = make_part(peeled, PartLabel::kAxiomSub);
        part.non_edge = {std::min(u, v), std::max(u, v)};
        push(std::move(part), singletons(peeled));
        std::erase(rest.mutable_side(b), u);
      }
      run(rest, depth + 1);
      return;
    }
    // Case 2: a block of size in (1, 2s].
    for (int b = 0; b < g_.k(); ++b) {
      std::size_t size = q.side(b).size();
      if (size > 1 && size <= 2 * spec_.s) {
        split_block(q, b, depth);
        return;
      }
    }
    // Case 3: peel the error set of the large blocks.
    std::vector<int> large;
    for (int b = 0; b < g_.k(); ++b)
      if (q.side(b).size() > 2 * spec_.s) large.push_back(b);
    if (large.empty()) throw std::logic_error("all-singleton rectangle was not small");
    Rectangle pool(q.n(), large, [&] {
      std::vector<std::vector<Vertex>> sides;
      for (int b : large) sides.push_back(q.side(b));
      return sides;
    }());
    VertexSet error(g_.vertex_count());
    const double gamma = 1.0 / (3 * g_.k());
    for (int b : large)
      for (Vertex v : build_error_set(g_, q.side(b), spec_.d, gamma, spec_.p, pool).vertices)
        error.insert(v);
    Rectangle rest = q;
    for (Vertex u : error.members()) {
      int b = g_.block_of(u);
      auto& side = rest.mutable_side(b);
      if (std::find(side.begin(), side.end(), u) == side.end()) continue;
      Rectangle peeled = rest;
      peeled.mutable_side(b).assign(1, u);
      run(peeled, depth + 1);
      std::erase(side, u);
    }
    if (rest.empty()) return;
    if (good(rest, singles)) {
      push_good(rest, singles);
      return;
    }
    ++out_.forced_splits;
    int b = large.front();
    if (rest.side(b).size() <= 1) {
      run(rest, depth + 1);
      return;
    }
    split_block(rest, b, depth);
  }

 private:
  std::vector<int> singletons(const Rectangle& q) const {
    std::vector<int> out;
    for (int b = 0; b < g_.k(); ++b)
      if (q.side(b).size() == 1) out.push_back(b);
    return out;
  }

  std::optional<std::pair<Vertex, Vertex>> axiom_pair(const Rectangle& q,
                                                      const std::vector<int>& singles) const {
    for (std::size_t a = 0; a < singles.size(); ++a)
      for (std::size_t b = a + 1; b < singles.size(); ++b) {
        Vertex u = q.side(singles[a])[0], v = q.side(singles[b])[0];
        if (!g_.adjacent(u, v)) return std::make_pair(u, v);
      }
    return std::nullopt;
  }

  bool good(const Rectangle& q, const std::vector<int>& singles) const {
    if (static_cast<int>(singles.size()) >= spec_.d) return false;
    GoodRectSpec gs{singles, spec_.s, beta_, spec_.p, spec_.d};
    return is_good_rectangle(g_, q, gs).good;
  }

  void split_block(const Rectangle& q, int b, int depth) {
    for (Vertex v : q.side(b)) {
      Rectangle one = q;
      one.mutable_side(b).assign(1, v);
      run(one, depth + 1);
    }
  }

  void push_good(const Rectangle& q, const std::vector<int>& singles) {
    Part part = make_part(q, PartLabel::kGood);
    part.singletons = singles;
    push(std::move(part), singles);
  }

  void push(Part part, const std::vector<int>& singles) {
    if (static_cast<int>(singles.size()) > spec_.d) ++out_.deep_parts;
    out_.parts.push_back(std::move(part));
  }

  const BlockGraph& g_;
  const DecomposeSpec& spec_;
  Decomposition& out_;
  double beta_;
};

}  // namespace

Decomposition decompose_rectangle(const BlockGraph& g, const Rectangle& q, const DecomposeSpec& spec) {
  if (static_cast<int>(q.blocks().size()) != g.k())
    throw std::invalid_argument("rectangle must carry every block");
  const double n = g.n();
  const double base = n * std::pow(spec.p, spec.d);
  if (base < 1) throw std::invalid_argument("n*p^d must be at least 1");
  Decomposition out;
  out.small_threshold = std::pow(base, g.k() - spec.d);
  out.part_bound = 2.0 * g.k() * n * std::pow(2 * spec.s, spec.d);
  out.regime = spec.s >= spec.C * std::pow(g.k(), 4) * spec.d * std::log(n) /
                             std::pow(spec.p, 2 * spec.d);
  Decomposer(g, spec, out).run(q, 0);
  return out;
}

std::string verify_part(const BlockGraph& g, const Part& part, const DecomposeSpec& spec,
                        double small_threshold) {
  const Rectangle& q = part.rect;
  switch (part.label) {
    case PartLabel::kSmall:
      if (q.cardinality().get_d() > small_threshold) return "small part exceeds the threshold";
      return "";
    case PartLabel::kAxiomSub: {
      auto [u, v] = part.non_edge;
      if (u < 0 || v < 0 || g.block_of(u) == g.block_of(v)) return "axiom part without a cross pair";
      if (g.adjacent(u, v)) return "axiom pair is an edge";
      if (q.side(g.block_of(u)) != std::vector<Vertex>{u} || q.side(g.block_of(v)) != std::vector<Vertex>{v})
        return "axiom part does not pin both endpoints";
      return "";
    }
    case PartLabel::kGood: {
      if (static_cast<int>(part.singletons.size()) >= spec.d) return "good part with too many singletons";
      GoodRectSpec gs{part.singletons, spec.s, spec.beta > 0 ? spec.beta : 1.0 / g.k(), spec.p, spec.d};
      auto witness = is_good_rectangle(g, q, gs);
      return witness.good ? "" : "good part fails item " + std::to_string(witness.item);
    }
  }
  return "unknown label";
}

BalancedPartition balanced_partition(const std::vector<int>& universe,
                                     const std::vector<std::vector<int>>& family, int parts,
                                     double gamma, uint64_t seed) {
  if (parts < 1) throw std::invalid_argument("need at least one part");
  BalancedPartition out;
  if (parts == 1) {
    out.parts.push_back(universe);
    return out;
  }
  const double b = static_cast<double>(universe.size()) / parts;
  if (!(b > 12 * std::log(4.0 * parts)))
    throw std::invalid_argument("part size must exceed 12 ln(4a)");
  if (!family.empty()) {
    std::size_t c = universe.size();
    for (const auto& f : family) c = std::min(c, f.size());
    double floor = std::sqrt(3.0 * parts * std::log(4.0 * parts * family.size()) / c);
    if (!(floor < gamma && gamma < 1))
      throw std::invalid_argument("gamma outside (" + std::to_string(floor) + ", 1)");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> color(0, parts - 1);
  for (int attempt = 0; attempt < 64; ++attempt) {
    BalancedPartition candidate;
    candidate.parts.assign(parts, {});
    for (int x : universe) candidate.parts[color(rng)].push_back(x);
    candidate.retries = attempt;
    if (partition_is_balanced(candidate, family, gamma)) return candidate;
  }
  throw std::runtime_error("no balanced coloring within 64 attempts");
}

bool partition_is_balanced(const BalancedPartition& partition,
                           const std::vector<std::vector<int>>& family, double gamma) {
  const int a = static_cast<int>(partition.parts.size());
  std::size_t total = 0;
  std::unordered_map<int, int> color;
  for (int i = 0; i < a; ++i) {
    total += partition.parts[i].size();
    for (int x : partition.parts[i]) color[x] = i;
  }
  const double b = static_cast<double>(total) / a;
  for (const auto& part : partition.parts)
    if (part.size() < b / 2 || part.size() > 1.5 * b) return false;
  std::vector<long> hits(a);
  for (const auto& f : family) {
    std::fill(hits.begin(), hits.end(), 0);
    for (int x : f) {
      auto it = color.find(x);
      if (it == color.end()) return false;
      ++hits[it->second];
    }
    const double share = static_cast<double>(f.size()) / a;
    for (long h : hits)
      if (h < (1 - gamma) * share || h > (1 + gamma) * share) return false;
  }
  return true;
}

TailReport tail_probe(const TailProbe& probe, const Rational& p, const std::vector<double>& s_grid,
                      int trials, uint64_t seed) {
  const auto& f = probe.f;
  const auto& q = probe.q;
  if (probe.m <= 0 || probe.m % 2 != 0) throw std::invalid_argument("moment must be even and positive");
  if (probe.m > probe.kappa) throw std::invalid_argument("moment exceeds kappa");
  if (f.empty()) throw std::invalid_argument("F must have an edge");
  LabelSet used = 0;
  for (auto [u, v] : probe.matching) {
    if (!f.has_edge(u, v)) throw std::invalid_argument("matching edge not in F");
    if ((used >> u) & 1 || (used >> v) & 1) throw std::invalid_argument("matching shares a label");
    used |= (1u << u) | (1u << v);
    double product = static_cast<double>(q.side(u).size()) * q.side(v).size();
    if (product < probe.kappa) throw std::invalid_argument("matched pair smaller than kappa");
  }
  for (int b : labels_of(f.support()))
    if (!q.has_block(b)) throw std::invalid_argument("rectangle misses a block of F");

  const int k = f.k();
  const double pd = p.get_d();
  const double ratio = (1 - pd) / pd;
  const auto edges = f.edges();
  std::vector<double> sums(trials);
  std::vector<Vertex> by_label(k, -1);
  for (int trial = 0; trial < trials; ++trial) {
    BlockGraph g = sample_block_model(q.n(), k, p, seed * 1000003ULL + trial);
    double total = 0;
    for_each_tuple(q, [&](const Tuple& t) {
      for (std::size_t i = 0; i < t.size(); ++i) by_label[q.blocks()[i]] = t[i];
      double weight = probe.xi ? probe.xi(t) : 1.0;
      if (std::fabs(weight) > probe.r) throw std::invalid_argument("weight function exceeds r");
      double prod = weight;
      for (auto [a, b] : edges) prod *= g.adjacent(by_label[a], by_label[b]) ? ratio : -1.0;
      total += prod;
    });
    sums[trial] = std::fabs(total);
  }
  const double size = q.cardinality().get_d();
  TailReport report;
  for (double s : s_grid) {
    TailRow row;
    row.s = s;
    long over = std::count_if(sums.begin(), sums.end(), [&](double x) { return x > s; });
    row.empirical = static_cast<double>(over) / trials;
    row.stderr_ = std::sqrt(row.empirical * (1 - row.empirical) / trials);
    row.bound = std::pow(probe.r * std::pow(pd, -static_cast<double>(edges.size())) *
                             std::pow(probe.m / probe.kappa, probe.matching.size() / 2.0) * size / s,
                         probe.m);
    row.pass = row.empirical <= row.bound + 3 * row.stderr_;
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace salab
