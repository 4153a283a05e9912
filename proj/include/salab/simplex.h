#ifndef SALAB_SIMPLEX_H_
#define SALAB_SIMPLEX_H_

#include <string>
#include <utility>
#include <vector>

#include "salab/rational.h"

namespace salab {

enum class Sense { kMinimize, kMaximize };
enum class RowType { kLessEqual, kEqual, kGreaterEqual };
enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

std::string to_string(LPStatus s);

using SparseVector = std::vector<std::pair<int, Rational>>;

struct LinearProgram {
  struct Row {
    SparseVector coefs;
    RowType type = RowType::kEqual;
    Rational rhs;
    std::string name;
  };

  Sense sense = Sense::kMinimize;
  std::vector<Rational> objective;
  std::vector<bool> is_free;  // false: x ≥ 0
  std::vector<std::string> var_names;
  std::vector<Row> rows;

  int add_variable(std::string name, Rational cost, bool free_var = false);
  int add_row(Row row);
  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

struct LPResult {
  LPStatus status = LPStatus::kInfeasible;
  Rational optimum;
  std::vector<Rational> primal;  // one value per variable
  // One multiplier per row with optimum = Σ rhs·dual and the textbook
  // dual sign pattern for the problem's sense.
  std::vector<Rational> dual;
  long iterations = 0;
  std::string method;
};

// Exact simplex with Bland's rule. Problems whose variables are all free
// and whose rows are all ≤ with nonnegative right-hand sides (after sign
// normalization) are solved by walking vertices of {y : Ay ≤ b} with a
// basis of size num_vars; everything else goes through a two-phase
// revised simplex on the standard form with a basis of size num_rows.
// Strong duality is re-checked before returning an optimal result.
LPResult solve_exact(const LinearProgram& lp, long iteration_limit = 5'000'000);

// Empty when both points are feasible, sign conditions hold and the
// objectives agree; otherwise a description of the first failure.
std::string certify(const LinearProgram& lp, const LPResult& result);

}  // namespace salab

#endif  // SALAB_SIMPLEX_H_
