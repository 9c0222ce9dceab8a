#include "dha/hall.hpp"

#include <sstream>
#include <stdexcept>

namespace dha {

// ---------------------------------------------------------- HallElement

HallElement HallElement::basis(long q, const DerivedObject& X, const QuadraticScalar& c) {
  HallElement r(q);
  r.add_term(X, c);
  return r;
}

HallElement HallElement::basis(long q, const DerivedObject& X) { return basis(q, X, QuadraticScalar(q, 1)); }

QuadraticScalar HallElement::coeff(const DerivedObject& X) const {
  auto it = t_.find(X);
  return it == t_.end() ? QuadraticScalar(q_, 0) : it->second;
}

void HallElement::add_term(const DerivedObject& X, const QuadraticScalar& c) {
  if (c.is_zero()) return;
  if (c.q() != q_) throw std::invalid_argument("mixing Hall elements over different fields");
  auto [it, inserted] = t_.emplace(X, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

HallElement& HallElement::operator+=(const HallElement& o) {
  for (const auto& [X, c] : o.t_) add_term(X, c);
  return *this;
}

HallElement HallElement::operator+(const HallElement& o) const {
  HallElement r = *this;
  r += o;
  return r;
}

HallElement HallElement::operator-(const HallElement& o) const {
  HallElement r = *this;
  for (const auto& [X, c] : o.t_) r.add_term(X, -c);
  return r;
}

HallElement HallElement::operator*(const QuadraticScalar& s) const {
  HallElement r(q_);
  if (s.is_zero()) return r;
  for (const auto& [X, c] : t_) r.t_.emplace(X, c * s);
  return r;
}

HallElement HallElement::shifted(int k) const {
  HallElement r(q_);
  for (const auto& [X, c] : t_) r.t_.emplace(X.shifted(k), c);
  return r;
}

std::string HallElement::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [X, c] : t_) {
    std::string cs = c.to_string();
    bool compound = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
    bool neg = !compound && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (compound) os << "(" << cs << ") ";
    else if (cs != "1") os << cs << " ";
    os << "[" << X.to_string() << "]";
  }
  return os.str();
}

nlohmann::json object_json(const DerivedObject& X) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : X.summands()) j.push_back({{"a", s.a}, {"b", s.b}, {"n", s.n}, {"mult", s.mult}});
  return j;
}

nlohmann::json scalar_json(const QuadraticScalar& c) {
  return {{"a", c.a().get_str()}, {"b", c.b().get_str()}, {"q", c.q()}};
}

nlohmann::json HallElement::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [X, c] : t_) j.push_back({{"object", object_json(X)}, {"coeff", scalar_json(c)}});
  return j;
}

nlohmann::json IdentityReport::to_json() const {
  return {{"status", pass ? "pass" : "fail"}, {"lhs", lhs.to_json()}, {"rhs", rhs.to_json()}, {"diff", diff.to_json()}};
}

// ---------------------------------------------------------- assignments

Assignment simples_assignment() {
  return [](const Generator& g, HallAlgebra& H) {
    if (g.fam != 'z' || g.i < 1 || g.i >= H.m())
      throw std::invalid_argument("unassigned generator " + g.to_string());
    return HallElement::basis(H.q(), DerivedObject::simple(g.i, g.n));
  };
}

Assignment object_assignment(std::function<DerivedObject(const Generator&)> f) {
  return [f = std::move(f)](const Generator& g, HallAlgebra& H) { return HallElement::basis(H.q(), f(g)); };
}

Assignment composed_assignment(GeneratorMap f, Assignment inner) {
  return [f = std::move(f), inner = std::move(inner)](const Generator& g, HallAlgebra& H) {
    return H.evaluate(f(g), inner);
  };
}

// ---------------------------------------------------------- HallAlgebra

HallAlgebra::HallAlgebra(int m, long q) : D_(m, FiniteField::make(q)) {}
HallAlgebra::HallAlgebra(int m, std::shared_ptr<const FiniteField> F) : D_(m, std::move(F)) {}

Rational HallAlgebra::q_power(long e) const {
  mpz_class p;
  mpz_class qq = q();
  mpz_pow_ui(p.get_mpz_t(), qq.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(1, 1) / Rational(p) : Rational(p);
}

Rational HallAlgebra::braces(const DerivedObject& X, const DerivedObject& Y) {
  long e = 0;
  for (auto [k, d] : D_.dhom_dims(X, Y))
    if (k < 0) e += ((-k) % 2 == 0 ? 1 : -1) * d;
  return q_power(e);
}

Rational HallAlgebra::weight(const DerivedObject& Z) {
  auto it = weights_.find(Z);
  if (it != weights_.end()) return it->second;
  Rational w = Rational(D_.aut_order(Z)) * braces(Z, Z);
  weights_.emplace(Z, w);
  return w;
}

Rational HallAlgebra::structure_constant(const DerivedObject& X, const DerivedObject& Y, const DerivedObject& L) {
  mpz_class count = 0;
  D_.for_each_dhom(X, L, [&](const DerivedCategory::Morphism& f) {
    if (D_.cone(f) == Y) ++count;
  });
  if (count == 0) return 0;
  return Rational(count) / Rational(D_.aut_count(X)) * braces(X, L) / braces(X, X);
}

const HallElement& HallAlgebra::basis_product(const DerivedObject& X, const DerivedObject& Y) {
  auto key = std::make_pair(X, Y);
  auto it = products_.find(key);
  if (it != products_.end()) return it->second;

  std::map<DerivedObject, long> counts;
  D_.for_each_dhom(Y.shifted(-1), X, [&](const DerivedCategory::Morphism& w) { ++counts[D_.cone(w)]; });

  // F^L_{X,Y} = #{w : cone(w) = L} * a(L) / (a(X) a(Y) {Y,X}_0),
  // a(Z) = |Aut Z| {Z,Z}, {Y,X}_0 = q^{sum_{i>=0} (-1)^i dim Hom(Y[i], X)}
  long e0 = 0;
  for (auto [k, d] : D_.dhom_dims(Y, X))
    if (k <= 0) e0 += ((-k) % 2 == 0 ? 1 : -1) * d;
  Rational denom = weight(X) * weight(Y) * q_power(e0);
  QuadraticScalar twist = QuadraticScalar::vpow(q(), static_cast<int>(D_.euler_form(Y, X)));

  HallElement r(q());
  for (const auto& [L, n] : counts) r.add_term(L, twist * (Rational(n) * weight(L) / denom));
  return products_.emplace(key, std::move(r)).first->second;
}

HallElement HallAlgebra::basis_product_by_definition(const DerivedObject& X, const DerivedObject& Y) {
  // candidate middle terms: cones of Y[-1] -> X
  std::map<DerivedObject, int> cands;
  D_.for_each_dhom(Y.shifted(-1), X, [&](const DerivedCategory::Morphism& w) { cands[D_.cone(w)] = 1; });
  QuadraticScalar twist = QuadraticScalar::vpow(q(), static_cast<int>(D_.euler_form(Y, X)));
  HallElement r(q());
  for (const auto& [L, unused] : cands) r.add_term(L, twist * structure_constant(X, Y, L));
  return r;
}

HallElement HallAlgebra::product(const HallElement& x, const HallElement& y) {
  HallElement r(q());
  for (const auto& [X, a] : x.terms())
    for (const auto& [Y, b] : y.terms()) r += basis_product(X, Y) * (a * b);
  return r;
}

HallElement HallAlgebra::evaluate(const NCPolynomial& x, const Assignment& assign, GeneratorCache* cache) {
  GeneratorCache local;
  if (!cache) cache = &local;
  auto image = [&](const Generator& g) -> const HallElement& {
    auto it = cache->find(g);
    if (it == cache->end()) it = cache->emplace(g, assign(g, *this)).first;
    return it->second;
  };
  // words arrive in lexicographic order: keep the partial products of the
  // previous word and reuse the common prefix
  HallElement total(q());
  std::vector<HallElement> stack{HallElement::unit(q())};
  const Word* prev = nullptr;
  for (const auto& [w, c] : x.terms()) {
    size_t common = 0;
    if (prev)
      while (common < prev->size() && common < w.size() && (*prev)[common] == w[common]) ++common;
    stack.resize(common + 1);
    for (size_t k = common; k < w.size(); ++k) stack.push_back(product(stack.back(), image(w[k])));
    total += stack.back() * evaluate_at(c, q());
    prev = &w;
  }
  return total;
}

IdentityReport HallAlgebra::verify_identity(const NCPolynomial& lhs, const NCPolynomial& rhs, const Assignment& assign,
                                            GeneratorCache* cache) {
  IdentityReport r;
  r.lhs = evaluate(lhs, assign, cache);
  r.rhs = evaluate(rhs, assign, cache);
  r.diff = r.lhs - r.rhs;
  r.pass = r.diff.is_zero();
  return r;
}

}  // namespace dha
