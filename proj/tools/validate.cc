// Invariant suite behind `salab validate`.

#include <map>
#include <random>
#include <set>

#include "commands.h"
#include "salab/duality.h"
#include "salab/formula.h"
#include "salab/graph.h"
#include "salab/guard.h"
#include "salab/measure.h"
#include "salab/patterns.h"
#include "salab/proof.h"

namespace salab::cli {
namespace {

class Tally {
 public:
  void check(const std::string& name, bool ok, const std::string& where) {
    auto& c = checks_[name];
    ++c.cases;
    if (!ok && c.failures++ == 0) c.first = where;
  }
  bool pass() const {
    for (const auto& [_, c] : checks_)
      if (c.failures) return false;
    return true;
  }
  Json json() const {
    Json out = Json::array();
    for (const auto& [name, c] : checks_) {
      Json j{{"name", name}, {"cases", c.cases}, {"failures", c.failures}};
      if (c.failures) j["first_failure"] = c.first;
      out.push_back(std::move(j));
    }
    return out;
  }
  void merge(const Tally& other) {
    for (const auto& [name, c] : other.checks_) {
      auto& mine = checks_[name];
      if (c.failures && mine.failures == 0) mine.first = c.first;
      mine.cases += c.cases;
      mine.failures += c.failures;
    }
  }

 private:
  struct Count {
    long cases = 0;
    long failures = 0;
    std::string first;
  };
  std::map<std::string, Count> checks_;
};

void core_suite(int k, Tally& t, Context& ctx) {
  const int pairs = k * (k - 1) / 2;
  const uint64_t total = uint64_t{1} << pairs;
  std::map<uint64_t, long> fiber;
  for (uint64_t code = 0; code < total; ++code) {
    PatternGraph h = PatternGraph::from_code(k, code);
    std::string where = "k=" + std::to_string(k) + " " + h.describe();
    CoreInfo info = core_of(h);
    const PatternGraph& f = info.f;
    int vc = vc_number(h);
    bool covers = true;
    for (LabelSet c : all_min_vertex_covers(f)) covers = covers && h.is_cover(c);
    t.check("core.min_covers_cover_graph", covers, where);
    t.check("core.is_induced", h.contains(f) && h.induced(f.support()) == f, where);
    t.check("core.support_at_most_3vc", label_count(f.support()) <= 3 * vc, where);
    t.check("core.vc_preserved", vc_number(f) == vc, where);
    t.check("core.fixed_point", core_of(f).f == f, where);
    PatternGraph opt = estar_explicit(f);
    t.check("core.fiber_within_optional_edges", f.united(opt).contains(h), where);
    ++fiber[f.code()];

    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        if (h.has_edge(i, j)) continue;
        PatternGraph plus = h;
        plus.add_edge(i, j);
        bool grows = vc_number(plus) == vc + 1;
        t.check("boundary.definition", in_boundary(h, {i, j}, vc) == grows, where);
        t.check("boundary.core_invariant", in_boundary(h, {i, j}, vc) == in_boundary(f, {i, j}, vc), where);
      }
  }

  uint64_t covered = 0;
  for (const auto& [code, count] : fiber) {
    PatternGraph f = PatternGraph::from_code(k, code);
    std::string where = "k=" + std::to_string(k) + " core " + f.describe();
    PatternGraph opt = estar_explicit(f);
    t.check("estar.implicit_equals_explicit", estar_implicit(f, k) == opt, where);
    t.check("fiber.size_is_power_of_two", count == (long{1} << opt.edge_count()), where);
    covered += static_cast<uint64_t>(count);
  }
  t.check("fiber.partition_of_all_graphs", covered == total, "k=" + std::to_string(k));

  for (int d = 0; d <= k; ++d) {
    std::string where = "k=" + std::to_string(k) + " d=" + std::to_string(d);
    auto all = enumerate_patterns(k, d, EnumerationMode::kAllHd);
    uint64_t via_cores = 0;
    for (const auto& fam : *core_families(k, d)) via_cores += uint64_t{1} << fam.estar.edge_count();
    t.check("fiber.partition_of_bounded_family", via_cores == all->size(), where);
  }
  ctx.log->info("core checks for k={} done ({} graphs, {} cores)", k, total, fiber.size());
}

bool has_full_clique(const BlockGraph& g) {
  bool found = false;
  for_each_tuple(Rectangle::full(g.n(), g.k()), [&](const Tuple& t) { found = found || is_clique(g, t); });
  return found;
}

Tally lp_instance(uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  const int k = 2 + static_cast<int>(rng() % 2);
  const int n = 1 + static_cast<int>(rng() % (6 / k));
  BlockGraph g(k, n, Rational(1, 2));
  while (true) {
    g = sample_block_model(n, k, Rational(1, 2), rng());
    if (!has_full_clique(g)) break;
  }
  std::string where = "seed " + std::to_string(seed) + " k=" + std::to_string(k) + " n=" + std::to_string(n);
  PolynomialSystem sys = build_clique_formula(g);
  MonomialIndex idx(sys.variable_count);
  auto primal = build_primal(sys, idx);
  auto dual = build_dual(sys, idx);
  auto rp = solve_exact(primal.lp);
  auto rd = solve_exact(dual.lp);
  bool both = rp.status == LPStatus::kOptimal && rd.status == LPStatus::kOptimal;
  t.check("lp.both_optimal", both, where);
  if (!both) return t;
  t.check("lp.strong_duality", rp.optimum == rd.optimum, where);
  t.check("lp.primal_certified", certify(primal.lp, rp).empty(), where);
  t.check("lp.dual_certified", certify(dual.lp, rd).empty(), where);
  for (const auto* pr : {&primal, &dual}) {
    auto ex = extract_solutions(*pr, idx, pr == &primal ? rp : rd);
    std::string tag = pr == &primal ? "primal" : "dual";
    t.check("lp.truth_table_accepts_" + tag, verify_truth_table(sys, ex.refutation), where);
    t.check("lp.canonical_accepts_" + tag, verify_canonical(sys, ex.refutation), where);
    t.check("lp.objective_matches_" + tag, size_report(sys, ex.refutation).lp_objective == ex.optimum, where);
    t.check("lp.measure_passes_" + tag, check_pseudo_measure(ex.measure, sys, 1 / ex.optimum, idx).pass, where);
  }
  return t;
}

Rectangle random_rectangle(int n, int k, std::mt19937_64& rng) {
  std::vector<int> blocks(k);
  std::vector<std::vector<Vertex>> sides(k);
  for (int b = 0; b < k; ++b) {
    blocks[b] = b;
    for (int v = 0; v < n; ++v)
      if (rng() % 2) sides[b].push_back(b * n + v);
    if (sides[b].empty()) sides[b].push_back(b * n + static_cast<int>(rng() % n));
  }
  return Rectangle(n, blocks, sides);
}

Tally measure_instance(uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  const int k = 2 + static_cast<int>(rng() % 3);
  const int n = 1 + static_cast<int>(rng() % 4);
  const int d = static_cast<int>(rng() % 3);
  Rational p(1 + static_cast<long>(rng() % 3), 4);
  p.canonicalize();
  BlockGraph g = sample_block_model(n, k, p, rng());
  Rectangle q = random_rectangle(n, k, rng);
  std::string where = "seed " + std::to_string(seed) + " " + q.describe();
  MeasureParams<Rational> params{d, p, 0, 0};
  Rational naive = mu_d<Rational>(g, q, params, Strategy::kNaive);
  t.check("measure.factorized_equals_naive", mu_d<Rational>(g, q, params, Strategy::kFactorized) == naive, where);
  t.check("measure.grouped_equals_naive", mu_d<Rational>(g, q, params, Strategy::kGrouped) == naive, where);
  PatternGraph h = PatternGraph::from_code(k, rng() % (uint64_t{1} << (k * (k - 1) / 2)));
  t.check("measure.char_sum_factorized_equals_naive",
          char_sum<Rational>(g, q, h, p, Strategy::kFactorized) == char_sum<Rational>(g, q, h, p, Strategy::kNaive),
          where + " " + h.describe());
  return t;
}

}  // namespace

int cmd_validate(const Config& cfg, Context& ctx) {
  std::string suite = cfg.get_string("suite");
  long k = cfg.get_int("k"), instances = cfg.get_int("instances");
  uint64_t seed = static_cast<uint64_t>(cfg.get_int("seed"));
  if (k < 1) throw UsageError("k must be positive");
  if (k > pattern_label_guard())
    throw GuardExceeded("k = " + std::to_string(k) + " exceeds the label guard; raise SA_LAB_GUARD");
  if (instances < 0) throw UsageError("instances must be non-negative");
  Tally tally;

  if (suite == "cores" || suite == "all")
    for (int kk = 1; kk <= k; ++kk) core_suite(kk, tally, ctx);

  if (suite == "lp" || suite == "all") {
    auto parts = parallel_map<Tally>(instances, ctx.jobs, [&](std::size_t i) { return lp_instance(seed + i); });
    for (const auto& p : parts) tally.merge(p);
    ctx.log->info("lp checks done ({} instances)", instances);
  }

  if (suite == "measure" || suite == "all") {
    reset_small_bound_audit();
    auto parts =
        parallel_map<Tally>(instances, ctx.jobs, [&](std::size_t i) { return measure_instance(seed + i); });
    for (const auto& p : parts) tally.merge(p);
    auto audit = small_bound_audit();
    tally.check("measure.small_bound_audit", audit.violated == 0, audit.first_violation);
    ctx.log->info("measure checks done ({} instances, {} bound comparisons)", instances, audit.checked);
  }

  bool pass = tally.pass();
  emit(cfg, Json{{"suite", suite}, {"k", k}, {"checks", tally.json()}, {"pass", pass}}.dump(2) + "\n");
  return pass ? kOk : kCheckFailed;
}

}  // namespace salab::cli
