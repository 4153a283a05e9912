#ifndef SALAB_DUALITY_H_
#define SALAB_DUALITY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "salab/formula.h"
#include "salab/proof.h"
#include "salab/simplex.h"

namespace salab {

// Canonical nonzero monomials over N ≤ 63 variables as (pos, neg) bit masks.
// Enumerated by a base-3 counter (digit 0 absent, 1 positive, 2 negated), so
// entry 0 is the constant 1.
class MonomialIndex {
 public:
  struct Entry {
    uint64_t pos = 0;
    uint64_t neg = 0;
    int degree() const;
  };

  MonomialIndex(int variable_count, std::optional<int> degree_cap = std::nullopt);

  int variable_count() const { return vars_; }
  std::optional<int> degree_cap() const { return cap_; }
  std::size_t size() const { return entries_.size(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Entry>& entries() const { return entries_; }
  Monomial monomial(std::size_t i) const;

 private:
  int vars_;
  std::optional<int> cap_;
  std::vector<Entry> entries_;
};

// Where an LP column (primal) or row (dual) came from. Columns with equal
// truth tables are merged; only the first source in build order is kept.
struct ColumnSource {
  enum class Kind { kBetaPlus, kBetaMinus, kAlpha };
  Kind kind;
  int axiom = -1;       // −1 for α
  std::size_t monomial = 0;
};

struct SaProgram {
  LinearProgram lp;
  std::vector<ColumnSource> sources;  // primal: per variable; dual: per row
  bool is_dual = false;
  bool capped = false;
  std::size_t merged_columns = 0;  // duplicates and all-zero columns removed
  int variable_count = 0;
};

// min Σα + Σ(β⁺ + β⁻) s.t. Σ_p Σ_m (β⁺−β⁻)(m)·𝟙_{m·p} − Σ_m α(m)·𝟙_m = 𝟙,
// one equality row per assignment ρ ∈ {0,1}^N (row index = ρ as a bit mask).
SaProgram build_primal(const PolynomialSystem& sys, const MonomialIndex& idx);
// max Σ_ρ μ_ρ s.t. a·μ ≤ 1 for every surviving primal column a.
SaProgram build_dual(const PolynomialSystem& sys, const MonomialIndex& idx);

struct PseudoMeasure {
  int variable_count = 0;
  std::vector<Rational> weights;  // indexed by assignment mask
  Rational delta;
  // μ(m) = Σ_ρ μ_ρ·𝟙_m(ρ).
  Rational value(uint64_t pos, uint64_t neg) const;
  Rational value(const Monomial& m) const;
};

struct Extracted {
  Refutation refutation;
  PseudoMeasure measure;
  Rational optimum;
};

// Requires an optimal result of a program from build_primal or build_dual.
Extracted extract_solutions(const SaProgram& program, const MonomialIndex& idx,
                            const LPResult& result);

struct PseudoMeasureReport {
  Rational unit_value;            // μ(1)
  Rational worst_axiom_value;     // max |μ(m·p)|
  std::string worst_axiom_where;
  Rational worst_monomial_value;  // min μ(m)
  std::string worst_monomial_where;
  bool pass = false;
  std::string violation;  // first violated item, empty on pass
};

PseudoMeasureReport check_pseudo_measure(const PseudoMeasure& mu, const PolynomialSystem& sys,
                                         const Rational& delta, const MonomialIndex& idx);

// CPLEX-style LP text. Rejects programs with no rows or no variables.
std::string lp_format(const LinearProgram& lp, const std::string& title);
void export_lp(const LinearProgram& lp, const std::string& path, const std::string& title = "");

std::string result_bundle_json(const SaProgram& program, const LPResult& result,
                               const std::optional<Extracted>& extracted,
                               const PolynomialSystem& sys);

}  // namespace salab

#endif  // SALAB_DUALITY_H_
