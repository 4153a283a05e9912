#ifndef SALAB_PROOF_H_
#define SALAB_PROOF_H_

#include <string>
#include <vector>

#include "salab/formula.h"
#include "salab/rational.h"

namespace salab {

struct Multiplier {
  int axiom = 0;
  Polynomial poly;
};

// Stored in the verification form Σ_j g_j p_j − f0 = M modulo the Boolean
// ideal. The certificate file uses the opposite sign on every g_j
// (Σ g_j p_j + f0 = −M); import and export negate.
struct Refutation {
  std::vector<Multiplier> multipliers;  // ascending axiom, no repeats
  Polynomial f0;                        // nonnegative coefficients
  long target = 1;                      // M ≥ 1

  // Sorts multipliers by axiom, merges repeats and drops empty ones.
  void canonicalize();
  const Polynomial* multiplier_for(int axiom) const;
};

struct SizeReport {
  long monomial_count = 0;
  long bit_size = 0;
  Rational coefficient_size = 0;
  Rational lp_objective = 0;
  Rational max_abs_coefficient = 0;
};

// Throws std::invalid_argument for malformed refutations (bad axiom index,
// negative f0 coefficient, M < 1).
void check_shape(const PolynomialSystem& sys, const Refutation& pi);

// Σ_j g_j p_j − f0 as a polynomial modulo the Boolean ideal.
Polynomial refutation_lhs(const PolynomialSystem& sys, const Refutation& pi);

// Inner-product test ⟨v,v⟩ = 0 for v = Σβγ·𝟙_{m1 m2} − Σα·𝟙_m − M·𝟙 over
// {0,1}^N. Throws GuardExceeded when N exceeds the truth-table guard.
bool verify_truth_table(const PolynomialSystem& sys, const Refutation& pi);

// Multilinear normal form over x only (x̄ = 1 − x) compared with M.
bool verify_canonical(const PolynomialSystem& sys, const Refutation& pi);

// Every product β·γ of a multiplier term and an axiom term is one expanded
// term; f0 terms count once each. Nothing is merged or cancelled.
SizeReport size_report(const PolynomialSystem& sys, const Refutation& pi);

bool is_unary(const Refutation& pi);
// Divides through by M; throws std::invalid_argument unless is_unary.
Refutation normalize_unary(const Refutation& pi);
bool is_f_bounded(const PolynomialSystem& sys, const Refutation& pi, const Rational& f);

std::string refutation_to_json(const Refutation& pi);
Refutation refutation_from_json(const std::string& text);

}  // namespace salab

#endif  // SALAB_PROOF_H_
