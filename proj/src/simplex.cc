#include "salab/simplex.h"

#include <numeric>
#include <stdexcept>

namespace salab {

std::string to_string(LPStatus s) {
  switch (s) {
    case LPStatus::kOptimal: return "optimal";
    case LPStatus::kInfeasible: return "infeasible";
    case LPStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

int LinearProgram::add_variable(std::string name, Rational cost, bool free_var) {
  objective.push_back(std::move(cost));
  is_free.push_back(free_var);
  var_names.push_back(std::move(name));
  return num_vars() - 1;
}

int LinearProgram::add_row(Row row) {
  rows.push_back(std::move(row));
  return num_rows() - 1;
}

namespace {

// value_k = num_k / den with a shared integer denominator.
struct ScaledSparse {
  std::vector<int> idx;
  std::vector<BigInt> num;
  BigInt den = 1;
};

struct ScaledDense {
  std::vector<BigInt> num;
  BigInt den = 1;
};

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

ScaledSparse scale_sparse(const SparseVector& v) {
  ScaledSparse s;
  for (const auto& [i, q] : v) s.den = lcm(s.den, q.get_den());
  for (const auto& [i, q] : v) {
    if (q == 0) continue;
    s.idx.push_back(i);
    s.num.push_back(q.get_num() * (s.den / q.get_den()));
  }
  return s;
}

ScaledDense scale_dense(const std::vector<Rational>& v) {
  ScaledDense s;
  for (const auto& q : v) s.den = lcm(s.den, q.get_den());
  s.num.reserve(v.size());
  for (const auto& q : v) s.num.push_back(q.get_num() * (s.den / q.get_den()));
  return s;
}

// Numerator of a·y over the denominator a.den·y.den.
BigInt dot_numerator(const ScaledSparse& a, const ScaledDense& y) {
  BigInt acc = 0;
  for (std::size_t k = 0; k < a.idx.size(); ++k) acc += a.num[k] * y.num[a.idx[k]];
  return acc;
}

using Matrix = std::vector<std::vector<Rational>>;

Matrix identity(int m) {
  Matrix id(m, std::vector<Rational>(m, Rational(0)));
  for (int i = 0; i < m; ++i) id[i][i] = 1;
  return id;
}

struct Outcome {
  LPStatus status = LPStatus::kOptimal;
  std::vector<Rational> x;   // solver-space primal
  std::vector<Rational> mult;  // solver-space multipliers
  long iterations = 0;
};

void bump(long& iterations, long limit) {
  if (++iterations > limit) throw std::runtime_error("simplex iteration limit reached");
}

// min cost·x s.t. Σ_j cols[j]·x_j = b, x ≥ 0, with b ≥ 0.
Outcome solve_standard(int m, const std::vector<SparseVector>& cols, const std::vector<Rational>& cost,
                       const std::vector<Rational>& b, long limit) {
  const int n = static_cast<int>(cols.size());
  std::vector<ScaledSparse> scols;
  scols.reserve(n);
  for (const auto& c : cols) scols.push_back(scale_sparse(c));

  std::vector<int> basis(m);
  std::iota(basis.begin(), basis.end(), n);  // artificials n..n+m-1
  std::vector<char> basic(n + m, 0);
  for (int r = 0; r < m; ++r) basic[n + r] = 1;
  Matrix binv = identity(m);
  std::vector<Rational> xb = b;
  Outcome out;

  auto alpha_of = [&](int j) {
    std::vector<Rational> alpha(m, Rational(0));
    if (j >= n) {
      for (int l = 0; l < m; ++l) alpha[l] = binv[l][j - n];
      return alpha;
    }
    for (const auto& [k, a] : cols[j])
      for (int l = 0; l < m; ++l)
        if (binv[l][k] != 0) alpha[l] += a * binv[l][k];
    return alpha;
  };

  auto pivot = [&](int r, int enter, const std::vector<Rational>& alpha) {
    Rational piv = alpha[r];
    for (auto& v : binv[r]) v /= piv;
    xb[r] /= piv;
    for (int l = 0; l < m; ++l) {
      if (l == r || alpha[l] == 0) continue;
      const Rational f = alpha[l];
      for (int k = 0; k < m; ++k)
        if (binv[r][k] != 0) binv[l][k] -= f * binv[r][k];
      xb[l] -= f * xb[r];
    }
    basic[basis[r]] = 0;
    basis[r] = enter;
    basic[enter] = 1;
  };

  auto prices = [&](const std::vector<Rational>& c) {
    std::vector<Rational> pi(m, Rational(0));
    for (int r = 0; r < m; ++r) {
      const Rational& cb = c[basis[r]];
      if (cb == 0) continue;
      for (int k = 0; k < m; ++k)
        if (binv[r][k] != 0) pi[k] += cb * binv[r][k];
    }
    return pi;
  };

  auto run = [&](const std::vector<Rational>& c) -> LPStatus {
    while (true) {
      ScaledDense pi = scale_dense(prices(c));
      int enter = -1;
      for (int j = 0; j < n && enter < 0; ++j) {
        if (basic[j]) continue;
        // sign of c_j − π·A_j, cleared of denominators
        BigInt lhs = c[j].get_num() * scols[j].den * pi.den;
        BigInt rhs = c[j].get_den() * dot_numerator(scols[j], pi);
        if (lhs < rhs) enter = j;
      }
      if (enter < 0) return LPStatus::kOptimal;
      std::vector<Rational> alpha = alpha_of(enter);
      int leave = -1;
      Rational best;
      for (int r = 0; r < m; ++r) {
        if (alpha[r] <= 0) continue;
        Rational ratio = xb[r] / alpha[r];
        if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return LPStatus::kUnbounded;
      pivot(leave, enter, alpha);
      bump(out.iterations, limit);
    }
  };

  std::vector<Rational> phase1(n + m, Rational(0));
  for (int r = 0; r < m; ++r) phase1[n + r] = 1;
  run(phase1);
  Rational infeasibility = 0;
  for (int r = 0; r < m; ++r)
    if (basis[r] >= n) infeasibility += xb[r];
  if (infeasibility > 0) {
    out.status = LPStatus::kInfeasible;
    return out;
  }
  // Push zero-valued artificials out where a structural column allows it;
  // the rest sit on redundant rows and can never move.
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (basic[j]) continue;
      Rational entry = 0;
      for (const auto& [k, a] : cols[j]) entry += a * binv[r][k];
      if (entry != 0) {
        pivot(r, j, alpha_of(j));
        bump(out.iterations, limit);
        break;
      }
    }
  }
  std::vector<Rational> phase2(n + m, Rational(0));
  for (int j = 0; j < n; ++j) phase2[j] = cost[j];
  out.status = run(phase2);
  if (out.status != LPStatus::kOptimal) return out;
  out.x.assign(n, Rational(0));
  for (int r = 0; r < m; ++r)
    if (basis[r] < n) out.x[basis[r]] = xb[r];
  out.mult = prices(phase2);
  return out;
}

// max c·y s.t. a_j·y ≤ b_j with b ≥ 0 and y free. The basis holds r rows;
// a "virtual" row (−1) stands for a coordinate hyperplane through the
// current point and is traded for a real constraint in the first phase.
Outcome solve_vertex(int r, const std::vector<SparseVector>& rows, const std::vector<Rational>& b,
                     const std::vector<Rational>& c, long limit) {
  const int J = static_cast<int>(rows.size());
  std::vector<ScaledSparse> srows;
  srows.reserve(J);
  for (const auto& a : rows) srows.push_back(scale_sparse(a));

  std::vector<int> brow(r, -1);
  std::vector<char> pinned(r, 0);
  std::vector<char> in_basis(J, 0);
  Matrix binv = identity(r);  // columns align with basis positions
  std::vector<Rational> y(r, Rational(0));
  std::vector<Rational> slack = b;
  Outcome out;

  auto column = [&](int i, bool negate) {
    std::vector<Rational> d(r);
    for (int l = 0; l < r; ++l) d[l] = negate ? Rational(-binv[l][i]) : binv[l][i];
    return d;
  };

  // Returns the blocking constraint (or −1) and the step length.
  auto ratio_test = [&](const std::vector<Rational>& d, std::vector<Rational>& q, Rational& step) {
    ScaledDense sd = scale_dense(d);
    int block = -1;
    q.assign(J, Rational(0));
    for (int j = 0; j < J; ++j) {
      BigInt num = dot_numerator(srows[j], sd);
      if (num == 0) continue;
      q[j] = Rational(num, srows[j].den * sd.den);
      q[j].canonicalize();
      if (in_basis[j] || num < 0) continue;
      Rational t = slack[j] / q[j];
      if (block < 0 || t < step) {
        block = j;
        step = t;
      }
    }
    return block;
  };

  auto move_and_pivot = [&](int i, int enter, const std::vector<Rational>& d,
                            const std::vector<Rational>& q, const Rational& step) {
    if (step != 0) {
      for (int l = 0; l < r; ++l) y[l] += step * d[l];
      for (int j = 0; j < J; ++j)
        if (q[j] != 0) slack[j] -= step * q[j];
    }
    slack[enter] = 0;
    ScaledSparse& a = srows[enter];
    std::vector<Rational> u(r, Rational(0));
    for (int k = 0; k < r; ++k) {
      Rational acc = 0;
      for (std::size_t e = 0; e < a.idx.size(); ++e)
        if (binv[a.idx[e]][k] != 0) acc += Rational(a.num[e]) * binv[a.idx[e]][k];
      u[k] = acc / Rational(a.den);
    }
    Rational ui = u[i];
    for (int l = 0; l < r; ++l) binv[l][i] /= ui;
    for (int k = 0; k < r; ++k) {
      if (k == i || u[k] == 0) continue;
      for (int l = 0; l < r; ++l)
        if (binv[l][i] != 0) binv[l][k] -= u[k] * binv[l][i];
    }
    if (brow[i] >= 0) in_basis[brow[i]] = 0;
    brow[i] = enter;
    in_basis[enter] = 1;
  };

  auto objective_along = [&](int i) {
    Rational g = 0;
    for (int l = 0; l < r; ++l)
      if (c[l] != 0) g += c[l] * binv[l][i];
    return g;
  };

  std::vector<Rational> q;
  for (int i = 0; i < r; ++i) {
    Rational g = objective_along(i);
    bool negate = g < 0;
    std::vector<Rational> d = column(i, negate);
    Rational step;
    int block = ratio_test(d, q, step);
    if (block < 0 && g == 0) {
      d = column(i, true);
      block = ratio_test(d, q, step);
    }
    if (block < 0) {
      if (g != 0) {
        out.status = LPStatus::kUnbounded;
        return out;
      }
      pinned[i] = 1;  // lineality direction; the objective is flat along it
      continue;
    }
    move_and_pivot(i, block, d, q, step);
    bump(out.iterations, limit);
  }

  while (true) {
    int leave = -1;
    for (int i = 0; i < r; ++i) {
      if (pinned[i]) continue;
      if (objective_along(i) < 0 && (leave < 0 || brow[i] < brow[leave])) leave = i;
    }
    if (leave < 0) break;
    std::vector<Rational> d = column(leave, true);
    Rational step;
    int block = ratio_test(d, q, step);
    if (block < 0) {
      out.status = LPStatus::kUnbounded;
      return out;
    }
    move_and_pivot(leave, block, d, q, step);
    bump(out.iterations, limit);
  }
  out.x = y;
  out.mult.assign(J, Rational(0));
  for (int i = 0; i < r; ++i)
    if (!pinned[i]) out.mult[brow[i]] = objective_along(i);
  return out;
}

bool vertex_route_applies(const LinearProgram& lp) {
  for (bool f : lp.is_free)
    if (!f) return false;
  for (const auto& row : lp.rows) {
    if (row.type == RowType::kEqual) return false;
    Rational normalized = row.type == RowType::kLessEqual ? row.rhs : Rational(-row.rhs);
    if (normalized < 0) return false;
  }
  return true;
}

Rational evaluate(const SparseVector& coefs, const std::vector<Rational>& x) {
  Rational s = 0;
  for (const auto& [j, a] : coefs) s += a * x[j];
  return s;
}

}  // namespace

LPResult solve_exact(const LinearProgram& lp, long iteration_limit) {
  const int nv = lp.num_vars();
  const int nr = lp.num_rows();
  const bool maximize = lp.sense == Sense::kMaximize;
  LPResult res;

  if (vertex_route_applies(lp) && nv > 0) {
    res.method = "vertex";
    std::vector<SparseVector> rows(nr);
    std::vector<Rational> b(nr);
    std::vector<int> sigma(nr);
    for (int i = 0; i < nr; ++i) {
      sigma[i] = lp.rows[i].type == RowType::kLessEqual ? 1 : -1;
      for (const auto& [j, a] : lp.rows[i].coefs) rows[i].push_back({j, sigma[i] * a});
      b[i] = sigma[i] * lp.rows[i].rhs;
    }
    std::vector<Rational> c(nv);
    for (int j = 0; j < nv; ++j) c[j] = maximize ? lp.objective[j] : Rational(-lp.objective[j]);
    Outcome o = solve_vertex(nv, rows, b, c, iteration_limit);
    res.status = o.status;
    res.iterations = o.iterations;
    if (o.status == LPStatus::kOptimal) {
      res.primal = o.x;
      res.dual.resize(nr);
      for (int i = 0; i < nr; ++i) res.dual[i] = (maximize ? sigma[i] : -sigma[i]) * o.mult[i];
    }
  } else {
    res.method = "standard";
    std::vector<SparseVector> cols;
    std::vector<Rational> cost;
    std::vector<std::pair<int, int>> var_cols(nv, {-1, -1});
    for (int j = 0; j < nv; ++j) {
      Rational cj = maximize ? Rational(-lp.objective[j]) : lp.objective[j];
      var_cols[j].first = static_cast<int>(cols.size());
      cols.emplace_back();
      cost.push_back(cj);
      if (lp.is_free[j]) {
        var_cols[j].second = static_cast<int>(cols.size());
        cols.emplace_back();
        cost.push_back(-cj);
      }
    }
    std::vector<int> sigma(nr);
    std::vector<Rational> b(nr);
    for (int i = 0; i < nr; ++i) {
      const auto& row = lp.rows[i];
      sigma[i] = row.rhs < 0 ? -1 : 1;
      b[i] = sigma[i] * row.rhs;
      for (const auto& [j, a] : row.coefs) {
        if (a == 0) continue;
        cols[var_cols[j].first].push_back({i, sigma[i] * a});
        if (var_cols[j].second >= 0) cols[var_cols[j].second].push_back({i, -sigma[i] * a});
      }
      if (row.type != RowType::kEqual) {
        int sign = row.type == RowType::kLessEqual ? 1 : -1;
        cols.push_back({{i, Rational(sign * sigma[i])}});
        cost.push_back(0);
      }
    }
    Outcome o = solve_standard(nr, cols, cost, b, iteration_limit);
    res.status = o.status;
    res.iterations = o.iterations;
    if (o.status == LPStatus::kOptimal) {
      res.primal.resize(nv);
      for (int j = 0; j < nv; ++j) {
        res.primal[j] = o.x[var_cols[j].first];
        if (var_cols[j].second >= 0) res.primal[j] -= o.x[var_cols[j].second];
      }
      res.dual.resize(nr);
      for (int i = 0; i < nr; ++i) res.dual[i] = (maximize ? -sigma[i] : sigma[i]) * o.mult[i];
    }
  }

  if (res.status == LPStatus::kOptimal) {
    res.optimum = 0;
    for (int j = 0; j < nv; ++j) res.optimum += lp.objective[j] * res.primal[j];
    std::string problem = certify(lp, res);
    if (!problem.empty()) throw std::logic_error("strong duality check failed: " + problem);
  }
  return res;
}

std::string certify(const LinearProgram& lp, const LPResult& result) {
  if (result.status != LPStatus::kOptimal) return "";
  const int nv = lp.num_vars();
  const int nr = lp.num_rows();
  if (static_cast<int>(result.primal.size()) != nv || static_cast<int>(result.dual.size()) != nr)
    return "point dimensions do not match the program";
  const bool maximize = lp.sense == Sense::kMaximize;
  Rational primal_obj = 0;
  for (int j = 0; j < nv; ++j) {
    if (!lp.is_free[j] && result.primal[j] < 0) return "variable " + lp.var_names[j] + " negative";
    primal_obj += lp.objective[j] * result.primal[j];
  }
  std::vector<Rational> reduced = lp.objective;
  Rational dual_obj = 0;
  for (int i = 0; i < nr; ++i) {
    const auto& row = lp.rows[i];
    Rational lhs = evaluate(row.coefs, result.primal);
    bool ok = row.type == RowType::kEqual ? lhs == row.rhs
              : row.type == RowType::kLessEqual ? lhs <= row.rhs : lhs >= row.rhs;
    if (!ok) return "row " + std::to_string(i) + " violated by the primal point";
    const Rational& yi = result.dual[i];
    // min: y ≥ 0 on ≥ rows, y ≤ 0 on ≤ rows; max: reversed
    int expected = row.type == RowType::kEqual ? 0 : (row.type == RowType::kGreaterEqual ? 1 : -1);
    if (maximize) expected = -expected;
    if ((expected > 0 && yi < 0) || (expected < 0 && yi > 0))
      return "dual multiplier of row " + std::to_string(i) + " has the wrong sign";
    for (const auto& [j, a] : row.coefs) reduced[j] -= a * yi;
    dual_obj += row.rhs * yi;
  }
  for (int j = 0; j < nv; ++j) {
    const Rational& rc = reduced[j];
    bool ok = lp.is_free[j] ? rc == 0 : (maximize ? rc <= 0 : rc >= 0);
    if (!ok) return "reduced cost of " + lp.var_names[j] + " has the wrong sign";
  }
  if (primal_obj != result.optimum) return "reported optimum differs from the primal objective";
  if (dual_obj != result.optimum) return "dual objective differs from the primal objective";
  return "";
}

}  // namespace salab
