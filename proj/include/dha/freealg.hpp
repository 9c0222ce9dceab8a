#pragma once
// Free associative algebra over Q(v) on shifted generators.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dha/scalar.hpp"

namespace dha {

// A generator `fam[i,n]`: family letter, label, shift. For the PBW family the
// second slot holds the right endpoint j of F[i,j] instead of a shift.
struct Generator {
  char fam = 'z';
  int i = 0;
  int n = 0;
  auto operator<=>(const Generator&) const = default;
  std::string to_string() const;
};

using Word = std::vector<Generator>;

class NCPolynomial {
 public:
  using Terms = std::map<Word, RationalFunctionV>;

  NCPolynomial() = default;
  NCPolynomial(const RationalFunctionV& c);  // NOLINT: scalar * empty word
  NCPolynomial(long c) : NCPolynomial(RationalFunctionV(c)) {}  // NOLINT
  static NCPolynomial gen(const Generator& g);
  static NCPolynomial gen(char fam, int i, int n) { return gen(Generator{fam, i, n}); }
  static NCPolynomial word(const Word& w, const RationalFunctionV& c = RationalFunctionV(1));

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_scalar() const;  // only the empty word (or zero)
  RationalFunctionV scalar_part() const;
  size_t size() const { return t_.size(); }

  NCPolynomial operator+(const NCPolynomial& o) const;
  NCPolynomial operator-(const NCPolynomial& o) const;
  NCPolynomial operator-() const;
  NCPolynomial operator*(const NCPolynomial& o) const;
  NCPolynomial operator*(const RationalFunctionV& s) const;
  NCPolynomial& operator+=(const NCPolynomial& o);
  NCPolynomial& operator-=(const NCPolynomial& o);
  bool operator==(const NCPolynomial& o) const { return t_ == o.t_; }
  bool operator!=(const NCPolynomial& o) const { return !(t_ == o.t_); }

  void add_term(const Word& w, const RationalFunctionV& c);
  std::string to_string() const;

 private:
  Terms t_;
};

inline NCPolynomial operator*(const RationalFunctionV& s, const NCPolynomial& x) { return x * s; }

NCPolynomial multiply(const NCPolynomial& x, const NCPolynomial& y);
NCPolynomial q_bracket(const NCPolynomial& x, const NCPolynomial& y, const RationalFunctionV& f);
NCPolynomial iterated_bracket(const std::vector<NCPolynomial>& items, const RationalFunctionV& f);
NCPolynomial suspend(const NCPolynomial& x, int n);
// [z_{b-1,n}, ..., z_{a,n}]_v on the quiver A_{m-1}
NCPolynomial zab(int a, int b, int n, int m);

// Generator-wise substitution; generators mapped by `f` are replaced by its value.
using GeneratorMap = std::function<NCPolynomial(const Generator&)>;
NCPolynomial substitute(const NCPolynomial& x, const GeneratorMap& f);
NCPolynomial map_scalars(const NCPolynomial& x, const std::function<RationalFunctionV(const RationalFunctionV&)>& f);

// Text syntax: generators `z[i,n]`, `E[i,n]`, brackets `[x,y]_{f}`, iterated
// `[x3,x2,x1]_q`, suspension `s^n(x)`, scalars in q and v.
NCPolynomial parse_polynomial(const std::string& text);

}  // namespace dha
