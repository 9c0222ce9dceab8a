#pragma once
// Exact scalars: the field Q(v) (v^2 = q symbolic) and its specialisation
// Q(sqrt q) at a fixed prime power.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace dha {

using Rational = mpq_class;

// Dense polynomial in v over Q, coefficient of v^i at index i, no trailing zeros.
class PolyQ {
 public:
  PolyQ() = default;
  explicit PolyQ(std::vector<Rational> c);
  static PolyQ constant(const Rational& c);
  static PolyQ monomial(const Rational& c, int deg);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  int valuation() const;                                           // lowest nonzero power
  const Rational& lead() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  bool is_monomial() const;

  PolyQ operator+(const PolyQ& o) const;
  PolyQ operator-(const PolyQ& o) const;
  PolyQ operator-() const;
  PolyQ operator*(const PolyQ& o) const;
  PolyQ operator*(const Rational& s) const;
  bool operator==(const PolyQ& o) const { return c_ == o.c_; }

  PolyQ shift_down(int k) const;  // divide by v^k (caller guarantees exactness)
  PolyQ shift_up(int k) const;
  PolyQ reversed() const;         // v^deg f(1/v)
  static void divmod(const PolyQ& a, const PolyQ& b, PolyQ& quo, PolyQ& rem);
  static PolyQ gcd(PolyQ a, PolyQ b);  // monic

 private:
  void trim();
  std::vector<Rational> c_;
};

class QuadraticScalar;

// Element of Q(v), kept as num/den with den monic and gcd(num, den) = 1.
class RationalFunctionV {
 public:
  RationalFunctionV() : den_(PolyQ::constant(1)) {}
  RationalFunctionV(long n);  // NOLINT(implicit)
  RationalFunctionV(const Rational& r);  // NOLINT(implicit)
  static RationalFunctionV normalize(PolyQ num, PolyQ den);
  static RationalFunctionV v();
  static RationalFunctionV q();  // v^2
  static RationalFunctionV vpow(int k);

  const PolyQ& num() const { return num_; }
  const PolyQ& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  Rational constant_value() const;  // requires is_constant()

  RationalFunctionV operator+(const RationalFunctionV& o) const;
  RationalFunctionV operator-(const RationalFunctionV& o) const;
  RationalFunctionV operator-() const;
  RationalFunctionV operator*(const RationalFunctionV& o) const;
  RationalFunctionV operator/(const RationalFunctionV& o) const;
  RationalFunctionV& operator+=(const RationalFunctionV& o) { return *this = *this + o; }
  RationalFunctionV& operator-=(const RationalFunctionV& o) { return *this = *this - o; }
  RationalFunctionV& operator*=(const RationalFunctionV& o) { return *this = *this * o; }
  RationalFunctionV inverse() const;
  RationalFunctionV pow(int k) const;
  RationalFunctionV invert_v() const;  // v -> 1/v
  bool operator==(const RationalFunctionV& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFunctionV& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  PolyQ num_, den_;
};

// a + b*sqrt(q); when q is a perfect square b is folded into a.
class QuadraticScalar {
 public:
  QuadraticScalar() = default;
  QuadraticScalar(long q, Rational a, Rational b = 0);
  static QuadraticScalar vpow(long q, int e);  // sqrt(q)^e

  long q() const { return q_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadraticScalar operator+(const QuadraticScalar& o) const;
  QuadraticScalar operator-(const QuadraticScalar& o) const;
  QuadraticScalar operator-() const { return {q_, -a_, -b_}; }
  QuadraticScalar operator*(const QuadraticScalar& o) const;
  QuadraticScalar operator*(const Rational& s) const { return {q_, a_ * s, b_ * s}; }
  QuadraticScalar operator/(const QuadraticScalar& o) const;
  QuadraticScalar& operator+=(const QuadraticScalar& o);
  QuadraticScalar& operator-=(const QuadraticScalar& o);
  QuadraticScalar inverse() const;
  bool operator==(const QuadraticScalar& o) const { return q_ == o.q_ && a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const QuadraticScalar& o) const { return !(*this == o); }

  // "3*v", "1/2 - 1/2*v", "0"; v stands for sqrt(q).
  std::string to_string() const;

 private:
  void fold();
  long q_ = 1;
  long root_ = 1;  // sqrt(q) if q is a perfect square, else 0
  Rational a_ = 0, b_ = 0;
};

long perfect_sqrt(long q);  // 0 if not a square
QuadraticScalar evaluate_at(const RationalFunctionV& x, long q);

// Parses `q`, `v`, integers, + - * / ^ and parentheses, e.g. "q^-1/(q^2-1)".
RationalFunctionV parse_scalar(const std::string& text);

}  // namespace dha
