#include "salab/formula.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace salab {

namespace {

std::vector<Vertex> sorted_unique(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool intersects(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

std::vector<Vertex> merged(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Monomial::Monomial(std::vector<Vertex> pos, std::vector<Vertex> neg)
    : pos_(sorted_unique(std::move(pos))), neg_(sorted_unique(std::move(neg))) {
  if (intersects(pos_, neg_)) *this = zero();
}

Monomial Monomial::zero() {
  Monomial m;
  m.zero_ = true;
  return m;
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (zero_ || other.zero_) return zero();
  return Monomial(merged(pos_, other.pos_), merged(neg_, other.neg_));
}

bool Monomial::holds(const VertexSet& ones) const {
  if (zero_) return false;
  for (Vertex v : pos_)
    if (!ones.contains(v)) return false;
  for (Vertex v : neg_)
    if (ones.contains(v)) return false;
  return true;
}

bool Monomial::holds(uint64_t ones) const {
  if (zero_) return false;
  for (Vertex v : pos_)
    if (!((ones >> v) & 1)) return false;
  for (Vertex v : neg_)
    if ((ones >> v) & 1) return false;
  return true;
}

std::string Monomial::describe() const {
  if (zero_) return "0";
  if (is_one()) return "1";
  std::ostringstream os;
  bool first = true;
  for (Vertex v : pos_) { os << (first ? "" : "*") << "x" << v; first = false; }
  for (Vertex v : neg_) { os << (first ? "" : "*") << "~x" << v; first = false; }
  return os.str();
}

Polynomial Polynomial::constant(const Rational& c) { return of(Monomial(), c); }

Polynomial Polynomial::of(const Monomial& m, const Rational& c) {
  Polynomial p;
  p.add(m, c);
  return p;
}

void Polynomial::add(const Monomial& m, const Rational& c) {
  if (m.is_zero() || c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial out;
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : other.terms_) out.add(a * b, ca * cb);
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  for (const auto& [m, c] : other.terms_) out.add(m, c);
  return out;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial out;
  for (const auto& [m, v] : terms_) out.add(m, v * c);
  return out;
}

Rational Polynomial::eval(const VertexSet& ones) const {
  Rational s = 0;
  for (const auto& [m, c] : terms_)
    if (m.holds(ones)) s += c;
  return s;
}

Rational Polynomial::eval(uint64_t ones) const {
  Rational s = 0;
  for (const auto& [m, c] : terms_)
    if (m.holds(ones)) s += c;
  return s;
}

Rational Polynomial::l1_norm() const {
  Rational s = 0;
  for (const auto& [m, c] : terms_) s += abs(c);
  return s;
}

std::string AxiomTag::describe() const {
  switch (kind) {
    case Kind::kBlock: return "block " + std::to_string(block);
    case Kind::kEdge: return "edge {" + std::to_string(u) + "," + std::to_string(v) + "}";
    case Kind::kOther: break;
  }
  return "axiom";
}

PolynomialSystem build_clique_formula(const BlockGraph& g) {
  PolynomialSystem sys;
  sys.variable_count = g.vertex_count();
  sys.k = g.k();
  sys.n = g.n();
  for (int i = 0; i < g.k(); ++i) {
    Polynomial p = Polynomial::constant(-1);
    for (Vertex v = i * g.n(); v < (i + 1) * g.n(); ++v) p.add(Monomial::var(v), 1);
    sys.axioms.push_back({AxiomTag{AxiomTag::Kind::kBlock, i, -1, -1}, std::move(p)});
  }
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v = (g.block_of(u) + 1) * g.n(); v < g.vertex_count(); ++v)
      if (!g.adjacent(u, v))
        sys.axioms.push_back({AxiomTag{AxiomTag::Kind::kEdge, -1, u, v},
                              Polynomial::of(Monomial({u, v}, {}))});
  return sys;
}

PointAssignment PointAssignment::of_tuple(int variable_count, std::span<const Vertex> t) {
  PointAssignment rho{VertexSet(variable_count)};
  for (Vertex v : t) rho.ones.insert(v);
  return rho;
}

Rational eval(const Polynomial& poly, const PointAssignment& rho) { return poly.eval(rho.ones); }

Rational eval(const Monomial& m, const PointAssignment& rho) {
  return m.holds(rho.ones) ? Rational(1) : Rational(0);
}

std::optional<Rectangle> ruled_out_rectangle(const Monomial& m, int n, int k) {
  if (m.is_zero()) return std::nullopt;
  std::vector<int> blocks(k);
  std::vector<std::vector<Vertex>> sides(k);
  std::vector<Vertex> chosen(k, -1);
  for (Vertex v : m.pos()) {
    int b = v / n;
    if (b >= k) throw std::out_of_range("monomial variable outside the block shape");
    if (chosen[b] >= 0) return std::nullopt;
    chosen[b] = v;
  }
  std::vector<char> removed(static_cast<std::size_t>(n) * k, 0);
  for (Vertex v : m.neg()) {
    if (v / n >= k) throw std::out_of_range("monomial variable outside the block shape");
    removed[v] = 1;
  }
  for (int i = 0; i < k; ++i) {
    blocks[i] = i;
    if (chosen[i] >= 0) {
      if (removed[chosen[i]]) return std::nullopt;
      sides[i] = {chosen[i]};
    } else {
      for (Vertex v = i * n; v < (i + 1) * n; ++v)
        if (!removed[v]) sides[i].push_back(v);
      if (sides[i].empty()) return std::nullopt;
    }
  }
  return Rectangle(n, std::move(blocks), std::move(sides));
}

Monomial monomial_of_rectangle(const Rectangle& q) {
  std::vector<Vertex> pos, neg;
  int n = q.n();
  for (int b : q.blocks()) {
    const auto& side = q.side(b);
    if (side.empty()) throw std::invalid_argument("rectangle with an empty side");
    if (side.size() == 1 && n > 1) {
      pos.push_back(side[0]);
      continue;
    }
    std::size_t j = 0;
    for (Vertex v = b * n; v < (b + 1) * n; ++v) {
      if (j < side.size() && side[j] == v) ++j;
      else neg.push_back(v);
    }
  }
  return Monomial(std::move(pos), std::move(neg));
}

nlohmann::ordered_json monomial_to_json(const Monomial& m, const Rational& coef) {
  return nlohmann::ordered_json{{"pos", m.pos()}, {"neg", m.neg()}, {"coef", to_string(coef)}};
}

nlohmann::ordered_json polynomial_to_json(const Polynomial& p) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [m, c] : p.terms()) arr.push_back(monomial_to_json(m, c));
  return arr;
}

Polynomial polynomial_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be an array of monomials");
  Polynomial p;
  for (const auto& term : j) {
    for (auto& [key, _] : term.items())
      if (key != "pos" && key != "neg" && key != "coef")
        throw std::invalid_argument("unknown monomial key: " + key);
    auto pos = term.value("pos", std::vector<Vertex>{});
    auto neg = term.value("neg", std::vector<Vertex>{});
    const auto& c = term.at("coef");
    Rational coef = c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>());
    p.add(Monomial(std::move(pos), std::move(neg)), coef);
  }
  return p;
}

std::string system_to_json(const PolynomialSystem& system) {
  nlohmann::ordered_json j;
  j["variable_count"] = system.variable_count;
  j["k"] = system.k;
  j["n"] = system.n;
  auto axioms = nlohmann::ordered_json::array();
  for (const auto& ax : system.axioms) {
    nlohmann::ordered_json a;
    switch (ax.tag.kind) {
      case AxiomTag::Kind::kBlock: a["tag"] = {{"block", ax.tag.block}}; break;
      case AxiomTag::Kind::kEdge: a["tag"] = {{"edge", {ax.tag.u, ax.tag.v}}}; break;
      case AxiomTag::Kind::kOther: a["tag"] = "other"; break;
    }
    a["poly"] = polynomial_to_json(ax.poly);
    axioms.push_back(a);
  }
  j["axioms"] = axioms;
  return j.dump(1) + "\n";
}

PolynomialSystem system_from_json(const std::string& text) {
  auto j = nlohmann::ordered_json::parse(text);
  for (auto& [key, _] : j.items())
    if (key != "variable_count" && key != "k" && key != "n" && key != "axioms")
      throw std::invalid_argument("unknown formula key: " + key);
  PolynomialSystem sys;
  sys.variable_count = j.at("variable_count").get<int>();
  sys.k = j.value("k", 0);
  sys.n = j.value("n", 0);
  for (const auto& a : j.at("axioms")) {
    Axiom ax;
    const auto& tag = a.at("tag");
    if (tag.is_object() && tag.contains("block")) {
      ax.tag = {AxiomTag::Kind::kBlock, tag["block"].get<int>(), -1, -1};
    } else if (tag.is_object() && tag.contains("edge")) {
      ax.tag = {AxiomTag::Kind::kEdge, -1, tag["edge"][0].get<int>(), tag["edge"][1].get<int>()};
    }
    ax.poly = polynomial_from_json(a.at("poly"));
    for (const auto& [m, c] : ax.poly.terms())
      for (const auto& list : {m.pos(), m.neg()})
        for (Vertex v : list)
          if (v < 0 || v >= sys.variable_count)
            throw std::invalid_argument("axiom variable out of range");
    sys.axioms.push_back(std::move(ax));
  }
  return sys;
}

}  // namespace salab
