#pragma once
// Derived Hall algebra of D^b(rep A_{m-1}) over F_q with the Euler-twisted
// product [X]*[Y] = v^{<Y,X>} sum_L F^L_{X,Y} [L], v = sqrt(q).

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>

#include "dha/freealg.hpp"
#include "dha/repq.hpp"
#include "dha/scalar.hpp"
#include "json.hpp"

namespace dha {

class HallElement {
 public:
  using Terms = std::map<DerivedObject, QuadraticScalar>;

  explicit HallElement(long q = 2) : q_(q) {}
  static HallElement basis(long q, const DerivedObject& X, const QuadraticScalar& c);
  static HallElement basis(long q, const DerivedObject& X);
  static HallElement unit(long q) { return basis(q, DerivedObject()); }

  long q() const { return q_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  QuadraticScalar coeff(const DerivedObject& X) const;

  void add_term(const DerivedObject& X, const QuadraticScalar& c);
  HallElement operator+(const HallElement& o) const;
  HallElement operator-(const HallElement& o) const;
  HallElement operator*(const QuadraticScalar& s) const;
  HallElement& operator+=(const HallElement& o);
  bool operator==(const HallElement& o) const { return q_ == o.q_ && t_ == o.t_; }
  bool operator!=(const HallElement& o) const { return !(*this == o); }
  HallElement shifted(int k) const;

  std::string to_string() const;  // "3*v [M[1,2)[0] + M[1,2)[0]] + ..." ; "0"
  nlohmann::json to_json() const;

 private:
  long q_;
  Terms t_;
};

nlohmann::json object_json(const DerivedObject& X);
nlohmann::json scalar_json(const QuadraticScalar& c);

class HallAlgebra;
// Images of generators. Called at most once per generator per cache.
using Assignment = std::function<HallElement(const Generator&, HallAlgebra&)>;

// z[i,n] -> S_i[n]
Assignment simples_assignment();
// each generator to a single basis object
Assignment object_assignment(std::function<DerivedObject(const Generator&)> f);
// generator -> polynomial in other generators, then evaluated by `inner`
Assignment composed_assignment(GeneratorMap f, Assignment inner);

struct IdentityReport {
  bool pass = false;
  HallElement lhs, rhs, diff;
  nlohmann::json to_json() const;
};

class HallAlgebra {
 public:
  HallAlgebra(int m, long q);
  HallAlgebra(int m, std::shared_ptr<const FiniteField> F);

  int m() const { return D_.m(); }
  long q() const { return D_.q(); }
  DerivedCategory& category() { return D_; }

  // prod_{n>0} |Ext^{-n}(X,Y)|^{(-1)^n}
  Rational braces(const DerivedObject& X, const DerivedObject& Y);
  // F^L_{X,Y} by definition: classes f: X -> L with cone(f) = Y
  Rational structure_constant(const DerivedObject& X, const DerivedObject& Y, const DerivedObject& L);

  // Twisted product of basis elements, memoized. Counts triangles
  // Y[-1] -w-> X -> cone(w) and converts orbit counts to structure constants.
  const HallElement& basis_product(const DerivedObject& X, const DerivedObject& Y);
  // The same product with every coefficient computed by structure_constant.
  HallElement basis_product_by_definition(const DerivedObject& X, const DerivedObject& Y);

  HallElement product(const HallElement& x, const HallElement& y);

  using GeneratorCache = std::map<Generator, HallElement>;
  HallElement evaluate(const NCPolynomial& x, const Assignment& assign, GeneratorCache* cache = nullptr);
  IdentityReport verify_identity(const NCPolynomial& lhs, const NCPolynomial& rhs, const Assignment& assign,
                                 GeneratorCache* cache = nullptr);

 private:
  Rational q_power(long e) const;
  // |Aut Z| * {Z, Z}
  Rational weight(const DerivedObject& Z);

  DerivedCategory D_;
  std::map<std::pair<DerivedObject, DerivedObject>, HallElement> products_;
  std::map<DerivedObject, Rational> weights_;
};

}  // namespace dha
