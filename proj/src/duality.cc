#include "salab/duality.h"

#include <algorithm>
#include <bit>
#include <map>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "salab/guard.h"

namespace salab {

int MonomialIndex::Entry::degree() const { return std::popcount(pos) + std::popcount(neg); }

MonomialIndex::MonomialIndex(int variable_count, std::optional<int> degree_cap)
    : vars_(variable_count), cap_(degree_cap) {
  if (variable_count < 0 || variable_count > 63)
    throw std::invalid_argument("monomial index supports 0..63 variables");
  if (variable_count > lp_variable_guard())
    throw GuardExceeded("monomial index over " + std::to_string(variable_count) +
                        " variables exceeds the LP guard of " +
                        std::to_string(lp_variable_guard()));
  std::vector<int> digit(vars_, 0);
  while (true) {
    Entry e;
    for (int v = 0; v < vars_; ++v) {
      if (digit[v] == 1) e.pos |= uint64_t{1} << v;
      if (digit[v] == 2) e.neg |= uint64_t{1} << v;
    }
    if (!cap_ || e.degree() <= *cap_) entries_.push_back(e);
    int v = 0;
    while (v < vars_ && digit[v] == 2) digit[v++] = 0;
    if (v == vars_) break;
    ++digit[v];
  }
}

Monomial MonomialIndex::monomial(std::size_t i) const {
  std::vector<Vertex> pos, neg;
  for (int v = 0; v < vars_; ++v) {
    if ((entries_[i].pos >> v) & 1) pos.push_back(v);
    if ((entries_[i].neg >> v) & 1) neg.push_back(v);
  }
  return Monomial(std::move(pos), std::move(neg));
}

namespace {

// Calls fn(ρ) for every assignment satisfying the monomial.
template <typename Fn>
void for_each_satisfying(uint64_t pos, uint64_t neg, int vars, Fn&& fn) {
  uint64_t full = vars == 64 ? ~uint64_t{0} : (uint64_t{1} << vars) - 1;
  uint64_t free_bits = full & ~(pos | neg);
  uint64_t sub = 0;
  while (true) {
    fn(pos | sub);
    if (sub == free_bits) break;
    sub = (sub - free_bits) & free_bits;
  }
}

std::string column_key(const SparseVector& col) {
  std::string key;
  for (const auto& [r, v] : col) {
    key += std::to_string(r);
    key += ':';
    key += v.get_str();
    key += ';';
  }
  return key;
}

struct ColumnSet {
  std::vector<SparseVector> columns;
  std::vector<ColumnSource> sources;
  std::size_t merged = 0;
};

ColumnSet collect_columns(const PolynomialSystem& sys, const MonomialIndex& idx) {
  const int vars = sys.variable_count;
  if (idx.variable_count() != vars)
    throw std::invalid_argument("monomial index and system disagree on the variable count");
  if (sys.axioms.empty()) throw std::invalid_argument("system has no axioms to refute");
  const uint64_t rows = uint64_t{1} << vars;
  std::vector<std::vector<Rational>> axiom_values;
  for (const auto& ax : sys.axioms) {
    for (const auto& [m, c] : ax.poly.terms())
      for (const auto* list : {&m.pos(), &m.neg()})
        for (Vertex v : *list)
          if (v >= vars) throw std::invalid_argument("axiom uses a variable outside the system");
    std::vector<Rational> values(rows);
    for (uint64_t rho = 0; rho < rows; ++rho) values[rho] = ax.poly.eval(rho);
    axiom_values.push_back(std::move(values));
  }
  ColumnSet set;
  std::unordered_map<std::string, std::size_t> seen;
  auto offer = [&](SparseVector col, ColumnSource src) {
    if (col.empty()) {
      ++set.merged;
      return;
    }
    auto [it, inserted] = seen.try_emplace(column_key(col), set.columns.size());
    if (!inserted) {
      ++set.merged;
      return;
    }
    set.columns.push_back(std::move(col));
    set.sources.push_back(src);
  };
  for (std::size_t j = 0; j < sys.axioms.size(); ++j) {
    for (std::size_t mi = 0; mi < idx.size(); ++mi) {
      const auto& e = idx[mi];
      SparseVector plus;
      for_each_satisfying(e.pos, e.neg, vars, [&](uint64_t rho) {
        const Rational& v = axiom_values[j][rho];
        if (v != 0) plus.push_back({static_cast<int>(rho), v});
      });
      std::sort(plus.begin(), plus.end());
      SparseVector minus = plus;
      for (auto& [r, v] : minus) v = -v;
      offer(std::move(plus), {ColumnSource::Kind::kBetaPlus, static_cast<int>(j), mi});
      offer(std::move(minus), {ColumnSource::Kind::kBetaMinus, static_cast<int>(j), mi});
    }
  }
  for (std::size_t mi = 0; mi < idx.size(); ++mi) {
    const auto& e = idx[mi];
    SparseVector col;
    for_each_satisfying(e.pos, e.neg, vars,
                        [&](uint64_t rho) { col.push_back({static_cast<int>(rho), Rational(-1)}); });
    std::sort(col.begin(), col.end());
    offer(std::move(col), {ColumnSource::Kind::kAlpha, -1, mi});
  }
  return set;
}

std::string source_name(const ColumnSource& s) {
  switch (s.kind) {
    case ColumnSource::Kind::kBetaPlus:
      return "bp_" + std::to_string(s.axiom) + "_" + std::to_string(s.monomial);
    case ColumnSource::Kind::kBetaMinus:
      return "bm_" + std::to_string(s.axiom) + "_" + std::to_string(s.monomial);
    case ColumnSource::Kind::kAlpha: break;
  }
  return "a_" + std::to_string(s.monomial);
}

bool is_capped(const MonomialIndex& idx) {
  return idx.degree_cap() && *idx.degree_cap() < idx.variable_count();
}

}  // namespace

SaProgram build_primal(const PolynomialSystem& sys, const MonomialIndex& idx) {
  ColumnSet set = collect_columns(sys, idx);
  SaProgram prog;
  prog.variable_count = sys.variable_count;
  prog.capped = is_capped(idx);
  prog.merged_columns = set.merged;
  prog.sources = set.sources;
  prog.lp.sense = Sense::kMinimize;
  const int rows = 1 << sys.variable_count;
  std::vector<LinearProgram::Row> row_list(rows);
  for (int r = 0; r < rows; ++r) {
    row_list[r].type = RowType::kEqual;
    row_list[r].rhs = 1;
    row_list[r].name = "rho_" + std::to_string(r);
  }
  for (std::size_t c = 0; c < set.columns.size(); ++c) {
    int var = prog.lp.add_variable(source_name(set.sources[c]), 1);
    for (const auto& [r, v] : set.columns[c]) row_list[r].coefs.push_back({var, v});
  }
  for (auto& row : row_list) prog.lp.add_row(std::move(row));
  return prog;
}

SaProgram build_dual(const PolynomialSystem& sys, const MonomialIndex& idx) {
  ColumnSet set = collect_columns(sys, idx);
  SaProgram prog;
  prog.is_dual = true;
  prog.variable_count = sys.variable_count;
  prog.capped = is_capped(idx);
  prog.merged_columns = set.merged;
  prog.sources = set.sources;
  prog.lp.sense = Sense::kMaximize;
  const int vars = 1 << sys.variable_count;
  for (int r = 0; r < vars; ++r) prog.lp.add_variable("mu_" + std::to_string(r), 1, true);
  for (std::size_t c = 0; c < set.columns.size(); ++c) {
    LinearProgram::Row row;
    row.coefs = set.columns[c];
    row.type = RowType::kLessEqual;
    row.rhs = 1;
    row.name = source_name(set.sources[c]);
    prog.lp.add_row(std::move(row));
  }
  return prog;
}

Rational PseudoMeasure::value(uint64_t pos, uint64_t neg) const {
  if (pos & neg) return 0;
  Rational s = 0;
  for_each_satisfying(pos, neg, variable_count, [&](uint64_t rho) { s += weights[rho]; });
  return s;
}

Rational PseudoMeasure::value(const Monomial& m) const {
  if (m.is_zero()) return 0;
  uint64_t pos = 0, neg = 0;
  for (Vertex v : m.pos()) pos |= uint64_t{1} << v;
  for (Vertex v : m.neg()) neg |= uint64_t{1} << v;
  return value(pos, neg);
}

Extracted extract_solutions(const SaProgram& program, const MonomialIndex& idx,
                            const LPResult& result) {
  if (result.status != LPStatus::kOptimal)
    throw std::invalid_argument("cannot extract from a " + to_string(result.status) + " program");
  if (result.optimum <= 0) throw std::logic_error("non-positive optimum");
  const std::vector<Rational>& coefficients = program.is_dual ? result.dual : result.primal;
  const std::vector<Rational>& weights = program.is_dual ? result.primal : result.dual;
  Extracted out;
  out.optimum = result.optimum;
  std::map<int, Polynomial> mults;
  for (std::size_t c = 0; c < program.sources.size(); ++c) {
    const Rational& x = coefficients[c];
    if (x == 0) continue;
    const ColumnSource& s = program.sources[c];
    Monomial m = idx.monomial(s.monomial);
    switch (s.kind) {
      case ColumnSource::Kind::kBetaPlus: mults[s.axiom].add(m, x); break;
      case ColumnSource::Kind::kBetaMinus: mults[s.axiom].add(m, -x); break;
      case ColumnSource::Kind::kAlpha: out.refutation.f0.add(m, x); break;
    }
  }
  for (auto& [axiom, poly] : mults) out.refutation.multipliers.push_back({axiom, std::move(poly)});
  out.refutation.target = 1;
  out.refutation.canonicalize();
  out.measure.variable_count = program.variable_count;
  out.measure.weights.reserve(weights.size());
  for (const auto& w : weights) out.measure.weights.push_back(w / result.optimum);
  out.measure.delta = Rational(1) / result.optimum;
  return out;
}

PseudoMeasureReport check_pseudo_measure(const PseudoMeasure& mu, const PolynomialSystem& sys,
                                         const Rational& delta, const MonomialIndex& idx) {
  const int vars = mu.variable_count;
  if (vars != sys.variable_count || vars != idx.variable_count())
    throw std::invalid_argument("pseudo-measure, system and index disagree on variables");
  if (mu.weights.size() != (std::size_t{1} << vars))
    throw std::invalid_argument("pseudo-measure needs one weight per assignment");
  // table[code] = μ(m) with base-3 digits (0 absent, 1 positive, 2 negated)
  std::size_t cells = 1;
  for (int v = 0; v < vars; ++v) cells *= 3;
  std::vector<uint64_t> pow3(vars + 1, 1);
  for (int v = 1; v <= vars; ++v) pow3[v] = pow3[v - 1] * 3;
  std::vector<Rational> table(cells);
  for (uint64_t rho = 0; rho < mu.weights.size(); ++rho) {
    uint64_t code = 0;
    for (int v = 0; v < vars; ++v) code += ((rho >> v) & 1 ? 1 : 2) * pow3[v];
    table[code] = mu.weights[rho];
  }
  for (int v = 0; v < vars; ++v) {
    for (uint64_t code = 0; code < cells; ++code) {
      if ((code / pow3[v]) % 3 != 0) continue;
      table[code] = table[code + pow3[v]] + table[code + 2 * pow3[v]];
    }
  }
  auto code_of = [&](uint64_t pos, uint64_t neg) {
    uint64_t code = 0;
    for (int v = 0; v < vars; ++v) {
      if ((pos >> v) & 1) code += pow3[v];
      else if ((neg >> v) & 1) code += 2 * pow3[v];
    }
    return code;
  };
  struct MaskTerm { uint64_t pos, neg; Rational c; };
  std::vector<std::vector<MaskTerm>> axioms;
  for (const auto& ax : sys.axioms) {
    std::vector<MaskTerm> terms;
    for (const auto& [m, c] : ax.poly.terms()) {
      MaskTerm t{0, 0, c};
      for (Vertex v : m.pos()) t.pos |= uint64_t{1} << v;
      for (Vertex v : m.neg()) t.neg |= uint64_t{1} << v;
      terms.push_back(t);
    }
    axioms.push_back(std::move(terms));
  }

  PseudoMeasureReport rep;
  rep.unit_value = table[0];
  bool first_axiom = true, first_mono = true;
  for (std::size_t mi = 0; mi < idx.size(); ++mi) {
    const auto& e = idx[mi];
    Rational mv = table[code_of(e.pos, e.neg)];
    if (first_mono || mv < rep.worst_monomial_value) {
      rep.worst_monomial_value = mv;
      rep.worst_monomial_where = idx.monomial(mi).describe();
      first_mono = false;
    }
    for (std::size_t j = 0; j < axioms.size(); ++j) {
      Rational s = 0;
      for (const auto& t : axioms[j]) {
        uint64_t pos = e.pos | t.pos, neg = e.neg | t.neg;
        if (pos & neg) continue;
        s += t.c * table[code_of(pos, neg)];
      }
      Rational mag = abs(s);
      if (first_axiom || mag > rep.worst_axiom_value) {
        rep.worst_axiom_value = mag;
        rep.worst_axiom_where = idx.monomial(mi).describe() + " * axiom " + std::to_string(j) +
                                " (" + sys.axioms[j].tag.describe() + ")";
        first_axiom = false;
      }
    }
  }
  if (rep.unit_value != 1) {
    rep.violation = "mu(1) = " + to_string(rep.unit_value) + " instead of 1";
  } else if (!first_axiom && rep.worst_axiom_value > delta) {
    rep.violation = "|mu(m*p)| = " + to_string(rep.worst_axiom_value) + " > delta at " +
                    rep.worst_axiom_where;
  } else if (!first_mono && rep.worst_monomial_value < -delta) {
    rep.violation = "mu(m) = " + to_string(rep.worst_monomial_value) + " < -delta at " +
                    rep.worst_monomial_where;
  }
  rep.pass = rep.violation.empty();
  return rep;
}

namespace {

std::string decimal(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", q.get_d());
  return buf;
}

void write_expression(std::ostringstream& os, const SparseVector& coefs,
                      const std::vector<std::string>& names) {
  int on_line = 0;
  for (const auto& [j, a] : coefs) {
    if (a == 0) continue;
    if (on_line == 8) {
      os << "\n  ";
      on_line = 0;
    }
    os << (a < 0 ? " - " : " + ") << decimal(abs(a)) << " " << names[j];
    ++on_line;
  }
  if (coefs.empty()) os << " 0 " << (names.empty() ? "x" : names[0]);
}

}  // namespace

std::string lp_format(const LinearProgram& lp, const std::string& title) {
  if (lp.num_vars() == 0 || lp.num_rows() == 0)
    throw std::invalid_argument("refusing to export a program without rows or variables");
  std::ostringstream os;
  os << "\\ " << (title.empty() ? "linear program" : title) << "\n";
  os << (lp.sense == Sense::kMinimize ? "Minimize\n" : "Maximize\n") << " obj:";
  SparseVector obj;
  for (int j = 0; j < lp.num_vars(); ++j)
    if (lp.objective[j] != 0) obj.push_back({j, lp.objective[j]});
  write_expression(os, obj, lp.var_names);
  os << "\nSubject To\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    const auto& row = lp.rows[i];
    os << " " << (row.name.empty() ? "r" + std::to_string(i) : row.name) << ":";
    write_expression(os, row.coefs, lp.var_names);
    os << (row.type == RowType::kEqual ? " = " : row.type == RowType::kLessEqual ? " <= " : " >= ")
       << decimal(row.rhs) << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < lp.num_vars(); ++j)
    if (lp.is_free[j]) os << " " << lp.var_names[j] << " free\n";
  os << "End\n";
  return os.str();
}

void export_lp(const LinearProgram& lp, const std::string& path, const std::string& title) {
  std::string text = lp_format(lp, title);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

std::string result_bundle_json(const SaProgram& program, const LPResult& result,
                               const std::optional<Extracted>& extracted,
                               const PolynomialSystem& sys) {
  nlohmann::ordered_json j;
  j["status"] = to_string(result.status);
  j["program"] = program.is_dual ? "dual" : "primal";
  if (result.status == LPStatus::kOptimal) j["optimum"] = to_string(result.optimum);
  if (program.capped)
    j["note"] = "restricted-system optimum (upper bound on refutation strength, not certified "
                "duality with the unrestricted system)";
  j["iterations"] = result.iterations;
  if (extracted) {
    j["refutation"] = nlohmann::ordered_json::parse(refutation_to_json(extracted->refutation));
    SizeReport sr = size_report(sys, extracted->refutation);
    j["refutation_size"] = {{"lp_objective", to_string(sr.lp_objective)},
                            {"coefficient_size", to_string(sr.coefficient_size)},
                            {"monomial_count", sr.monomial_count},
                            {"max_abs_coefficient", to_string(sr.max_abs_coefficient)}};
    auto weights = nlohmann::ordered_json::array();
    for (const auto& w : extracted->measure.weights) weights.push_back(to_string(w));
    j["pseudo_measure"] = {{"delta", to_string(extracted->measure.delta)}, {"weights", weights}};
  }
  return j.dump(1) + "\n";
}

}  // namespace salab
