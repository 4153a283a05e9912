#include "salab/proof.h"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "salab/guard.h"

namespace salab {

void Refutation::canonicalize() {
  std::map<int, Polynomial> merged;
  for (auto& m : multipliers) merged[m.axiom] = merged[m.axiom] + m.poly;
  multipliers.clear();
  for (auto& [axiom, poly] : merged)
    if (!poly.empty()) multipliers.push_back({axiom, std::move(poly)});
}

const Polynomial* Refutation::multiplier_for(int axiom) const {
  for (const auto& m : multipliers)
    if (m.axiom == axiom) return &m.poly;
  return nullptr;
}

void check_shape(const PolynomialSystem& sys, const Refutation& pi) {
  if (pi.target < 1) throw std::invalid_argument("target M must be at least 1");
  for (const auto& m : pi.multipliers)
    if (m.axiom < 0 || m.axiom >= static_cast<int>(sys.axioms.size()))
      throw std::invalid_argument("multiplier refers to axiom " + std::to_string(m.axiom) +
                                  " which does not exist");
  for (const auto& [m, c] : pi.f0.terms())
    if (c < 0) throw std::invalid_argument("f0 has a negative coefficient on " + m.describe());
}

Polynomial refutation_lhs(const PolynomialSystem& sys, const Refutation& pi) {
  check_shape(sys, pi);
  Polynomial lhs;
  for (const auto& m : pi.multipliers) lhs = lhs + m.poly * sys.axioms[m.axiom].poly;
  return lhs + (-pi.f0);
}

namespace {

struct MaskTerm {
  uint64_t pos;
  uint64_t neg;
};

MaskTerm to_mask(const Monomial& m) {
  MaskTerm t{0, 0};
  for (Vertex v : m.pos()) t.pos |= uint64_t{1} << v;
  for (Vertex v : m.neg()) t.neg |= uint64_t{1} << v;
  return t;
}

}  // namespace

bool verify_truth_table(const PolynomialSystem& sys, const Refutation& pi) {
  check_shape(sys, pi);
  int vars = sys.variable_count;
  if (vars > truth_table_variable_guard())
    throw GuardExceeded("truth-table verification limited to " +
                        std::to_string(truth_table_variable_guard()) + " variables");
  // Identical indicator vectors are added before the quadratic form.
  std::map<std::pair<uint64_t, uint64_t>, Rational> vec;
  auto push = [&](const Monomial& m, const Rational& c) {
    if (m.is_zero()) return;
    MaskTerm t = to_mask(m);
    vec[{t.pos, t.neg}] += c;
  };
  for (const auto& mult : pi.multipliers)
    for (const auto& [m1, beta] : mult.poly.terms())
      for (const auto& [m2, gamma] : sys.axioms[mult.axiom].poly.terms())
        push(m1 * m2, beta * gamma);
  for (const auto& [m, alpha] : pi.f0.terms()) push(m, -alpha);
  push(Monomial(), Rational(-pi.target));

  std::vector<std::pair<MaskTerm, Rational>> terms;
  for (auto& [key, c] : vec)
    if (c != 0) terms.push_back({MaskTerm{key.first, key.second}, c});
  // ⟨𝟙_a, 𝟙_b⟩ = 2^{N − |vars(a·b)|} when a·b is consistent, else 0.
  Rational inner = 0;
  for (std::size_t a = 0; a < terms.size(); ++a) {
    for (std::size_t b = a; b < terms.size(); ++b) {
      uint64_t pos = terms[a].first.pos | terms[b].first.pos;
      uint64_t neg = terms[a].first.neg | terms[b].first.neg;
      if (pos & neg) continue;
      BigInt weight = BigInt(1) << (vars - std::popcount(pos | neg));
      Rational contrib = terms[a].second * terms[b].second * Rational(weight);
      inner += (a == b) ? contrib : contrib * 2;
    }
  }
  return inner == 0;
}

bool verify_canonical(const PolynomialSystem& sys, const Refutation& pi) {
  Polynomial lhs = refutation_lhs(sys, pi);
  std::map<std::vector<Vertex>, Rational> normal;
  for (const auto& [m, c] : lhs.terms()) {
    const auto& neg = m.neg();
    if (neg.size() > 30) throw GuardExceeded("negated literal count too large to expand");
    uint64_t subsets = uint64_t{1} << neg.size();
    for (uint64_t s = 0; s < subsets; ++s) {
      std::vector<Vertex> key = m.pos();
      for (std::size_t i = 0; i < neg.size(); ++i)
        if ((s >> i) & 1) key.push_back(neg[i]);
      std::sort(key.begin(), key.end());
      auto& slot = normal[key];
      if (std::popcount(s) % 2) slot -= c; else slot += c;
    }
  }
  for (const auto& [key, c] : normal) {
    Rational expected = key.empty() ? Rational(pi.target) : Rational(0);
    if (c != expected) return false;
  }
  if (normal.find({}) == normal.end() && pi.target != 0) return false;
  return true;
}

SizeReport size_report(const PolynomialSystem& sys, const Refutation& pi) {
  check_shape(sys, pi);
  SizeReport r;
  auto account = [&r](const Rational& c) {
    if (c == 0) return;
    Rational mag = abs(c);
    ++r.monomial_count;
    r.bit_size += bit_length(c);
    r.coefficient_size += mag;
    if (mag > r.max_abs_coefficient) r.max_abs_coefficient = mag;
  };
  for (const auto& mult : pi.multipliers) {
    for (const auto& [m1, beta] : mult.poly.terms()) {
      r.lp_objective += abs(beta);
      for (const auto& [m2, gamma] : sys.axioms[mult.axiom].poly.terms()) account(beta * gamma);
    }
  }
  for (const auto& [m, alpha] : pi.f0.terms()) {
    r.lp_objective += alpha;
    account(alpha);
  }
  return r;
}

bool is_unary(const Refutation& pi) {
  for (const auto& mult : pi.multipliers)
    for (const auto& [m, c] : mult.poly.terms())
      if (abs(c) != 1) return false;
  for (const auto& [m, c] : pi.f0.terms())
    if (c != 1) return false;
  return pi.target >= 1;
}

Refutation normalize_unary(const Refutation& pi) {
  if (!is_unary(pi)) throw std::invalid_argument("refutation is not unary");
  Refutation out;
  Rational scale(1, pi.target);
  for (const auto& mult : pi.multipliers) out.multipliers.push_back({mult.axiom, mult.poly.scaled(scale)});
  out.f0 = pi.f0.scaled(scale);
  out.target = 1;
  return out;
}

bool is_f_bounded(const PolynomialSystem& sys, const Refutation& pi, const Rational& f) {
  return size_report(sys, pi).max_abs_coefficient <= f;
}

std::string refutation_to_json(const Refutation& pi) {
  nlohmann::ordered_json j;
  auto mults = nlohmann::ordered_json::array();
  for (const auto& m : pi.multipliers) {
    nlohmann::ordered_json entry;
    entry["axiom"] = m.axiom;
    entry["poly"] = polynomial_to_json(-m.poly);
    mults.push_back(entry);
  }
  j["axiom_multipliers"] = mults;
  j["f0"] = polynomial_to_json(pi.f0);
  j["target_M"] = pi.target;
  return j.dump(1) + "\n";
}

Refutation refutation_from_json(const std::string& text) {
  auto j = nlohmann::ordered_json::parse(text);
  for (auto& [key, _] : j.items())
    if (key != "axiom_multipliers" && key != "f0" && key != "target_M")
      throw std::invalid_argument("unknown certificate key: " + key);
  Refutation pi;
  for (const auto& entry : j.at("axiom_multipliers")) {
    for (auto& [key, _] : entry.items())
      if (key != "axiom" && key != "poly")
        throw std::invalid_argument("unknown multiplier key: " + key);
    pi.multipliers.push_back({entry.at("axiom").get<int>(), -polynomial_from_json(entry.at("poly"))});
  }
  pi.f0 = polynomial_from_json(j.value("f0", nlohmann::ordered_json::array()));
  pi.target = j.value("target_M", 1L);
  pi.canonicalize();
  return pi;
}

}  // namespace salab
