#ifndef SALAB_FORMULA_H_
#define SALAB_FORMULA_H_

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "salab/graph.h"
#include "salab/rational.h"

namespace salab {

// ∏_{v∈pos} x_v ∏_{v∈neg} x̄_v. Overlapping literals collapse to the zero marker.
class Monomial {
 public:
  Monomial() = default;  // the constant 1
  Monomial(std::vector<Vertex> pos, std::vector<Vertex> neg);
  static Monomial zero();
  static Monomial var(Vertex v) { return Monomial({v}, {}); }
  static Monomial negated(Vertex v) { return Monomial({}, {v}); }

  const std::vector<Vertex>& pos() const { return pos_; }
  const std::vector<Vertex>& neg() const { return neg_; }
  bool is_zero() const { return zero_; }
  bool is_one() const { return !zero_ && pos_.empty() && neg_.empty(); }
  int degree() const { return static_cast<int>(pos_.size() + neg_.size()); }

  // Product modulo x² = x and x·x̄ = 0.
  Monomial operator*(const Monomial& other) const;
  bool holds(const VertexSet& ones) const;
  // Bitmask evaluation when every variable index is below 64.
  bool holds(uint64_t ones) const;
  std::string describe() const;

  auto operator<=>(const Monomial& other) const = default;
  bool operator==(const Monomial& other) const = default;

 private:
  bool zero_ = false;
  std::vector<Vertex> pos_;
  std::vector<Vertex> neg_;
};

class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(const Rational& c);
  static Polynomial of(const Monomial& m, const Rational& c = 1);

  void add(const Monomial& m, const Rational& c);
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial scaled(const Rational& c) const;
  Rational eval(const VertexSet& ones) const;
  Rational eval(uint64_t ones) const;
  // Σ |coefficients|.
  Rational l1_norm() const;
  bool operator==(const Polynomial& other) const = default;

 private:
  std::map<Monomial, Rational> terms_;
};

struct AxiomTag {
  enum class Kind { kBlock, kEdge, kOther };
  Kind kind = Kind::kOther;
  int block = -1;
  Vertex u = -1, v = -1;
  std::string describe() const;
  bool operator==(const AxiomTag&) const = default;
};

struct Axiom {
  AxiomTag tag;
  Polynomial poly;
};

// Axioms p_j = 0 over variables x_0..x_{variable_count-1}.
struct PolynomialSystem {
  int variable_count = 0;
  int k = 0;  // zero for systems not built from a block graph
  int n = 0;
  std::vector<Axiom> axioms;
};

PolynomialSystem build_clique_formula(const BlockGraph& g);

// The 0/1 point ρ_t: x_v = 1 exactly for v ∈ t.
struct PointAssignment {
  VertexSet ones;
  static PointAssignment of_tuple(int variable_count, std::span<const Vertex> t);
};

Rational eval(const Polynomial& poly, const PointAssignment& rho);
Rational eval(const Monomial& m, const PointAssignment& rho);

// Q(m) over full tuples of the (n,k) block shape; nullopt is the empty marker.
std::optional<Rectangle> ruled_out_rectangle(const Monomial& m, int n, int k);
Monomial monomial_of_rectangle(const Rectangle& q);

nlohmann::ordered_json monomial_to_json(const Monomial& m, const Rational& coef);
nlohmann::ordered_json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::ordered_json& j);
std::string system_to_json(const PolynomialSystem& system);
PolynomialSystem system_from_json(const std::string& text);

}  // namespace salab

#endif  // SALAB_FORMULA_H_
