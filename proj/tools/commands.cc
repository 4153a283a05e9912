#include "commands.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "salab/duality.h"
#include "salab/formula.h"
#include "salab/graph.h"
#include "salab/guard.h"
#include "salab/measure.h"
#include "salab/patterns.h"
#include "salab/proof.h"
#include "salab/wellbehaved.h"

namespace salab::cli {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Config& cfg, const std::string& text) {
  std::string path = cfg.has("out") ? cfg.get_string("out") : "-";
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<uint64_t> seeds_of(const Config& cfg) {
  long trials = cfg.has("trials") ? cfg.get_int("trials") : 1;
  if (trials < 1) throw UsageError("trials must be positive");
  if (cfg.has("graph")) trials = 1;
  std::vector<uint64_t> seeds;
  for (long i = 0; i < trials; ++i) seeds.push_back(static_cast<uint64_t>(cfg.get_int("seed") + i));
  return seeds;
}

Rational edge_probability(const Config& cfg) {
  if (cfg.has("D") && cfg.get_double("D") > 0) {
    double n = static_cast<double>(cfg.get_int("n"));
    return exact_from_double(std::pow(n, -2.0 / cfg.get_double("D")));
  }
  Rational p = cfg.get_rational("p");
  if (p < 0 || p > 1) throw UsageError("p must lie in [0,1]");
  return p;
}

BlockGraph load_graph(const Config& cfg, uint64_t seed) {
  if (cfg.has("graph")) return graph_from_json(read_file(cfg.get_string("graph")));
  long n = cfg.get_int("n"), k = cfg.get_int("k");
  if (n < 1 || k < 1) throw UsageError("n and k must be positive");
  return sample_block_model(static_cast<int>(n), static_cast<int>(k), edge_probability(cfg), seed);
}

// The graph's own p when it carries one.
Rational graph_p(const BlockGraph& g, const Config& cfg) { return g.p() ? *g.p() : edge_probability(cfg); }

PolynomialSystem load_system(const Config& cfg) {
  if (cfg.has("formula")) return system_from_json(read_file(cfg.get_string("formula")));
  if (cfg.has("graph")) return build_clique_formula(graph_from_json(read_file(cfg.get_string("graph"))));
  throw UsageError(cfg.schema().name + " needs 'graph' or 'formula'");
}

// "x3 x5 !x7"; "1" is the empty product.
Monomial parse_monomial(const std::string& text, int variables) {
  std::istringstream in(text);
  std::vector<Vertex> pos, neg;
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    bool negated = tok[0] == '!';
    std::string body = tok.substr(negated ? 1 : 0);
    if (body.size() < 2 || body[0] != 'x') throw UsageError("bad literal '" + tok + "'");
    Vertex v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(body.substr(1), &used);
      if (used != body.size() - 1) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("bad literal '" + tok + "'");
    }
    if (v < 0 || v >= variables) throw UsageError("variable out of range in '" + tok + "'");
    (negated ? neg : pos).push_back(v);
  }
  return Monomial(pos, neg);
}

// Empty optional for rectangles that contain no tuple.
std::optional<Rectangle> rectangle_of(const std::string& text, int n, int k) {
  if (text == "full") return Rectangle::full(n, k);
  Monomial m = parse_monomial(text, n * k);
  if (m.is_zero()) return std::nullopt;
  return ruled_out_rectangle(m, n, k);
}

int gen_graph(const Config& cfg, Context&) {
  emit(cfg, graph_to_json(load_graph(cfg, static_cast<uint64_t>(cfg.get_int("seed")))) + "\n");
  return kOk;
}

int build_formula(const Config& cfg, Context&) {
  if (!cfg.has("graph")) throw UsageError("build-formula needs 'graph'");
  emit(cfg, system_to_json(build_clique_formula(graph_from_json(read_file(cfg.get_string("graph"))))) + "\n");
  return kOk;
}

int verify(const Config& cfg, Context& ctx) {
  PolynomialSystem sys = load_system(cfg);
  if (!cfg.has("certificate")) throw UsageError("verify needs 'certificate'");
  Refutation pi;
  try {
    pi = refutation_from_json(read_file(cfg.get_string("certificate")));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("malformed certificate: ") + e.what());
  }

  Json report;
  bool accepted = true;
  try {
    check_shape(sys, pi);
    report["shape"] = "ok";
  } catch (const std::invalid_argument& e) {
    report["shape"] = e.what();
    report["accepted"] = false;
    emit(cfg, dump(report));
    return kCheckFailed;
  }
  if (cfg.get_bool("truth_table")) {
    try {
      bool ok = verify_truth_table(sys, pi);
      report["truth_table"] = ok;
      accepted = accepted && ok;
    } catch (const GuardExceeded& e) {
      ctx.log->warn("truth-table verifier skipped: {}", e.what());
      report["truth_table"] = "skipped";
      if (!cfg.get_bool("canonical")) throw;
    }
  }
  if (cfg.get_bool("canonical")) {
    bool ok = verify_canonical(sys, pi);
    report["canonical"] = ok;
    accepted = accepted && ok;
  }
  if (!cfg.get_bool("truth_table") && !cfg.get_bool("canonical"))
    throw UsageError("verify needs at least one verifier enabled");
  auto size = size_report(sys, pi);
  report["monomial_count"] = size.monomial_count;
  report["bit_size"] = size.bit_size;
  report["coefficient_size"] = to_string(size.coefficient_size);
  report["lp_objective"] = to_string(size.lp_objective);
  report["max_abs_coefficient"] = to_string(size.max_abs_coefficient);
  report["accepted"] = accepted;
  emit(cfg, dump(report));
  return accepted ? kOk : kCheckFailed;
}

int lp_solve(const Config& cfg, Context& ctx) {
  PolynomialSystem sys = load_system(cfg);
  long cap = cfg.get_int("degree_cap");
  MonomialIndex idx(sys.variable_count, cap < 0 ? std::nullopt : std::optional<int>(static_cast<int>(cap)));
  bool dual = cfg.get_string("program") == "dual";
  SaProgram program = dual ? build_dual(sys, idx) : build_primal(sys, idx);
  ctx.log->info("{} program: {} variables, {} rows, {} merged columns", dual ? "dual" : "primal",
                program.lp.num_vars(), program.lp.num_rows(), program.merged_columns);
  if (cfg.has("export")) export_lp(program.lp, cfg.get_string("export"), dual ? "dual" : "primal");

  LPResult result = solve_exact(program.lp);
  ctx.log->info("{} after {} iterations ({})", to_string(result.status), result.iterations, result.method);
  bool certified = true;
  std::optional<Extracted> extracted;
  if (result.status == LPStatus::kOptimal) {
    std::string why = certify(program.lp, result);
    if (!why.empty()) {
      ctx.log->error("optimality certificate failed: {}", why);
      certified = false;
    }
    extracted = extract_solutions(program, idx, result);
  }
  if (cfg.has("bundle")) {
    std::ofstream out(cfg.get_string("bundle"), std::ios::binary);
    if (!out) throw UsageError("cannot write " + cfg.get_string("bundle"));
    out << result_bundle_json(program, result, extracted, sys) << "\n";
  }
  std::cout << (result.status == LPStatus::kOptimal ? to_string(result.optimum) : to_string(result.status))
            << "\n";
  return certified ? kOk : kCheckFailed;
}

Json edges_json(const PatternGraph& h) {
  Json e = Json::array();
  for (auto [i, j] : h.edges()) e.push_back({i, j});
  return e;
}

int enumerate_cores(const Config& cfg, Context& ctx) {
  long k = cfg.get_int("k"), d = cfg.get_int("d");
  if (k < 1 || d < 0) throw UsageError("k must be positive and d non-negative");
  if (k > pattern_label_guard())
    throw GuardExceeded("k = " + std::to_string(k) + " exceeds the label guard; raise SA_LAB_GUARD");
  Json out;
  out["k"] = k;
  out["d"] = d;
  out["mode"] = cfg.get_string("mode");
  Json list = Json::array();
  if (cfg.get_string("mode") == "all") {
    auto all = enumerate_patterns(static_cast<int>(k), static_cast<int>(d), EnumerationMode::kAllHd);
    ctx.log->info("enumerated {} graphs", all->size());
    for (std::size_t i = 0; i < all->size(); ++i) {
      const auto& h = (*all)[i];
      list.push_back({{"code", h.code()}, {"edges", edges_json(h)}, {"vc", vc_number(h)},
                      {"core", core_of(h).f.code()}});
      if ((i + 1) % 10000 == 0) ctx.log->info("{} / {}", i + 1, all->size());
    }
  } else {
    auto fams = core_families(static_cast<int>(k), static_cast<int>(d));
    ctx.log->info("enumerated {} cores", fams->size());
    for (const auto& fam : *fams) {
      Json w = Json::array();
      for (int l : labels_of(fam.w)) w.push_back(l);
      list.push_back({{"code", fam.f.code()}, {"edges", edges_json(fam.f)}, {"vc", vc_number(fam.f)},
                      {"cover", w}, {"optional_edges", edges_json(fam.estar)},
                      {"fiber_size", to_string(Rational(pow(BigInt(2), fam.estar.edge_count())))}});
    }
  }
  out["count"] = list.size();
  out["patterns"] = std::move(list);
  emit(cfg, dump(out));
  return kOk;
}

Strategy strategy_of(const std::string& s) {
  if (s == "naive") return Strategy::kNaive;
  if (s == "factorized") return Strategy::kFactorized;
  return Strategy::kGrouped;
}

int eval_measure(const Config& cfg, Context& ctx) {
  auto seeds = seeds_of(cfg);
  auto rects = cfg.get_string_list("rectangle");
  if (rects.empty()) throw UsageError("eval-measure needs at least one rectangle");
  Strategy strategy = strategy_of(cfg.get_string("strategy"));
  bool exact = cfg.get_string("mode") == "exact";

  auto rows = parallel_map<std::string>(seeds.size(), ctx.jobs, [&](std::size_t i) {
    BlockGraph g = load_graph(cfg, seeds[i]);
    Rational p = graph_p(g, cfg);
    int d = static_cast<int>(cfg.get_int("d"));
    double D = cfg.get_double("D"), eta = cfg.get_double("eta");
    if (D > 0 && eta > 0) d = params_from_clique(g.n(), D, eta).d;
    std::string out;
    for (const auto& text : rects) {
      auto q = rectangle_of(text, g.n(), g.k());
      std::string value, value_exact;
      if (exact) {
        Rational v = q ? mu_d<Rational>(g, *q, MeasureParams<Rational>{d, p, D, eta}, strategy) : Rational(0);
        value = format_double(v.get_d());
        value_exact = to_string(v);
      } else {
        double v = q ? mu_d<double>(g, *q, MeasureParams<double>{d, p.get_d(), D, eta}, strategy) : 0.0;
        value = format_double(v);
      }
      out += std::to_string(seeds[i]) + "," + std::to_string(g.n()) + "," + std::to_string(g.k()) + "," +
             std::to_string(d) + "," + to_string(p) + "," + text + "," + cfg.get_string("strategy") + "," +
             cfg.get_string("mode") + "," + value + "," + value_exact + "\n";
    }
    ctx.log->info("seed {} done", seeds[i]);
    return out;
  });
  std::string csv = "seed,n,k,d,p,rectangle,strategy,mode,value,value_exact\n";
  for (const auto& r : rows) csv += r;
  emit(cfg, csv);
  return kOk;
}

int split_sum(const Config& cfg, Context&) {
  BlockGraph g = load_graph(cfg, static_cast<uint64_t>(cfg.get_int("seed")));
  if (!cfg.has("rectangle")) throw UsageError("split-sum needs 'rectangle'");
  auto q = rectangle_of(cfg.get_string("rectangle"), g.n(), g.k());
  if (!q) throw UsageError("the rectangle is empty");
  std::vector<int> singles;
  if (cfg.has("singletons")) {
    for (long b : cfg.get_int_list("singletons")) {
      if (b < 0 || b >= g.k()) throw UsageError("singleton block out of range");
      singles.push_back(static_cast<int>(b));
    }
  } else {
    for (int b = 0; b < g.k(); ++b)
      if (q->side(b).size() == 1) singles.push_back(b);
  }
  MeasureParams<Rational> params{static_cast<int>(cfg.get_int("d")), graph_p(g, cfg), 0, 0};
  SplitResult split;
  try {
    split = split_main_boundary(g, *q, singles, params);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Json out;
  out["rectangle"] = q->describe();
  out["order"] = split.order;
  out["main"] = to_string(split.main);
  Json terms = Json::array();
  for (const auto& t : split.boundary)
    terms.push_back({{"i", t.i}, {"j", t.j}, {"edge", {t.edge.first, t.edge.second}},
                     {"family_size", t.family_size}, {"value", to_string(t.value)}});
  out["boundary"] = std::move(terms);
  out["full"] = to_string(split.full);
  out["difference"] = to_string(split.difference());
  bool ok = split.difference() == 0;
  out["identity"] = ok;
  emit(cfg, dump(out));
  return ok ? kOk : kCheckFailed;
}

int decompose(const Config& cfg, Context& ctx) {
  auto seeds = seeds_of(cfg);
  struct Outcome {
    Json json;
    bool pass = true;
  };
  auto outcomes = parallel_map<Outcome>(seeds.size(), ctx.jobs, [&](std::size_t i) {
    BlockGraph g = load_graph(cfg, seeds[i]);
    Rational p = graph_p(g, cfg);
    auto q = rectangle_of(cfg.get_string("rectangle"), g.n(), g.k());
    if (!q) throw UsageError("the rectangle is empty");
    DecomposeSpec spec{cfg.get_double("s"), p.get_d(), static_cast<int>(cfg.get_int("d")), cfg.get_double("beta"),
                       cfg.get_double("C")};
    Decomposition dec = decompose_rectangle(g, *q, spec);

    Json parts = Json::array();
    std::map<std::string, long> labels;
    BigInt total = 0;
    long bad_labels = 0;
    std::string first_bad;
    for (const auto& part : dec.parts) {
      total += part.rect.cardinality();
      ++labels[to_string(part.label)];
      std::string why = verify_part(g, part, spec, dec.small_threshold);
      if (!why.empty() && bad_labels++ == 0) first_bad = why;
      Json pj{{"label", to_string(part.label)}, {"rectangle", part.rect.describe()}};
      if (part.label == PartLabel::kGood) pj["singletons"] = part.singletons;
      if (part.label == PartLabel::kAxiomSub) pj["non_edge"] = {part.non_edge.first, part.non_edge.second};
      parts.push_back(std::move(pj));
    }

    std::mt19937_64 rng(seeds[i]);
    long samples = cfg.get_int("samples"), unowned = 0;
    for (long s = 0; s < samples; ++s) {
      Tuple t;
      for (int b : q->blocks()) t.push_back(q->side(b)[rng() % q->side(b).size()]);
      int owners = 0;
      for (const auto& part : dec.parts) owners += part.rect.contains(t);
      unowned += owners != 1;
    }

    Outcome o;
    Json checks;
    checks["cardinality"] = total == q->cardinality();
    checks["labels"] = bad_labels == 0;
    if (bad_labels) checks["first_bad_label"] = first_bad;
    checks["membership_failures"] = unowned;
    checks["part_count_within_bound"] = static_cast<double>(dec.parts.size()) <= dec.part_bound;
    o.pass = total == q->cardinality() && bad_labels == 0 && unowned == 0 &&
             static_cast<double>(dec.parts.size()) <= dec.part_bound;
    if (cfg.get_bool("check_measure")) {
      MeasureParams<Rational> mp{spec.d, p, 0, 0};
      Rational sum = 0;
      for (const auto& part : dec.parts) sum += mu_d<Rational>(g, part.rect, mp, Strategy::kGrouped);
      Rational whole = mu_d<Rational>(g, *q, mp, Strategy::kGrouped);
      checks["measure_sum"] = to_string(sum);
      checks["measure_whole"] = to_string(whole);
      checks["measure_additive"] = sum == whole;
      o.pass = o.pass && sum == whole;
    }
    o.json = {{"seed", seeds[i]},
              {"rectangle", cfg.get_string("rectangle")},
              {"part_count", dec.parts.size()},
              {"labels", labels},
              {"regime", dec.regime},
              {"forced_splits", dec.forced_splits},
              {"deep_parts", dec.deep_parts},
              {"small_threshold", dec.small_threshold},
              {"part_bound", dec.part_bound},
              {"checks", checks},
              {"pass", o.pass},
              {"parts", parts}};
    if (!dec.regime) ctx.log->warn("seed {}: parameters are outside the analysed regime", seeds[i]);
    return o;
  });
  Json out = Json::array();
  bool pass = true;
  for (auto& o : outcomes) {
    pass = pass && o.pass;
    out.push_back(std::move(o.json));
  }
  emit(cfg, dump(out));
  return pass ? kOk : kCheckFailed;
}

int check_wellbehaved(const Config& cfg, Context& ctx) {
  auto seeds = seeds_of(cfg);
  struct Outcome {
    Json json;
    bool pass = true;
  };
  auto outcomes = parallel_map<Outcome>(seeds.size(), ctx.jobs, [&](std::size_t i) {
    BlockGraph g = load_graph(cfg, seeds[i]);
    double p = graph_p(g, cfg).get_d();
    auto nb = check_common_neighborhoods(g, cfg.get_double("beta"), p, static_cast<int>(cfg.get_int("d_cap")));
    WellBehavedSpec spec;
    spec.beta = cfg.get_double("beta");
    spec.s = cfg.get_int("s");
    spec.w = cfg.get_int("w");
    spec.ell = static_cast<int>(cfg.get_int("ell"));
    spec.gamma = cfg.get_double("gamma");
    auto errs = check_error_sets(g, spec, p, {Rectangle::full(g.n(), g.k())});
    Outcome o;
    o.pass = nb.pass;
    Json ej = Json::array();
    for (const auto& e : errs) {
      o.pass = o.pass && e.pass;
      ej.push_back({{"rectangle", e.rectangle}, {"admissible", e.admissible}, {"reason", e.reason},
                    {"error_set_size", e.error_set_size}, {"removal_hypothesis", e.removal_hypothesis},
                    {"worst_deviation", e.worst_deviation}, {"pass", e.pass}});
    }
    o.json = {{"seed", seeds[i]},
              {"neighborhoods",
               {{"worst_deviation", nb.worst_deviation}, {"worst_tuple", nb.worst_tuple},
                {"worst_block", nb.worst_block}, {"tuples_checked", nb.tuples_checked}, {"pass", nb.pass}}},
              {"error_sets", ej},
              {"pass", o.pass}};
    ctx.log->info("seed {}: {}", seeds[i], o.pass ? "pass" : "fail");
    return o;
  });
  Json out = Json::array();
  bool pass = true;
  for (auto& o : outcomes) {
    pass = pass && o.pass;
    out.push_back(std::move(o.json));
  }
  emit(cfg, dump(out));
  return pass ? kOk : kCheckFailed;
}

int run_tail_probe(const Config& cfg, Context&) {
  long n = cfg.get_int("n");
  if (n < 1) throw UsageError("n must be positive");
  TailProbe probe;
  probe.f = PatternGraph(2, {{0, 1}});
  probe.matching = {{0, 1}};
  probe.q = Rectangle::full(static_cast<int>(n), 2);
  probe.kappa = cfg.get_double("kappa") > 0 ? cfg.get_double("kappa") : static_cast<double>(n * n);
  probe.m = static_cast<int>(cfg.get_int("m"));
  probe.r = cfg.get_double("r");
  probe.xi = [](const Tuple&) { return 1.0; };
  auto rep = tail_probe(probe, cfg.get_rational("p"), cfg.get_double_list("s_grid"),
                        static_cast<int>(cfg.get_int("trials")), static_cast<uint64_t>(cfg.get_int("seed")));
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"s", r.s}, {"empirical", r.empirical}, {"bound", r.bound}, {"stderr", r.stderr_},
                    {"pass", r.pass}});
  emit(cfg, dump(Json{{"rows", rows}, {"pass", rep.pass}}));
  return rep.pass ? kOk : kCheckFailed;
}

}  // namespace

int run_command(const std::string& name, const Config& cfg, Context& ctx) {
  static const std::map<std::string, std::function<int(const Config&, Context&)>> table = {
      {"gen-graph", gen_graph},
      {"build-formula", build_formula},
      {"verify", verify},
      {"lp-solve", lp_solve},
      {"enumerate-cores", enumerate_cores},
      {"eval-measure", eval_measure},
      {"split-sum", split_sum},
      {"decompose", decompose},
      {"check-wellbehaved", check_wellbehaved},
      {"tail-probe", run_tail_probe},
      {"validate", cmd_validate},
      {"report", cmd_report},
  };
  auto it = table.find(name);
  if (it == table.end()) throw UsageError("unknown command '" + name + "'");
  return it->second(cfg, ctx);
}

}  // namespace salab::cli
