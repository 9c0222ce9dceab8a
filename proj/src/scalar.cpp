#include "dha/scalar.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace dha {

// ---------------------------------------------------------------- PolyQ

PolyQ::PolyQ(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

PolyQ PolyQ::constant(const Rational& c) { return PolyQ(std::vector<Rational>{c}); }

PolyQ PolyQ::monomial(const Rational& c, int deg) {
  std::vector<Rational> v(deg + 1);
  v[deg] = c;
  return PolyQ(std::move(v));
}

void PolyQ::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int PolyQ::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

Rational PolyQ::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

bool PolyQ::is_monomial() const {
  return !c_.empty() && valuation() == degree();
}

PolyQ PolyQ::operator+(const PolyQ& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return PolyQ(std::move(r));
}

PolyQ PolyQ::operator-(const PolyQ& o) const { return *this + (-o); }

PolyQ PolyQ::operator-() const {
  PolyQ r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

PolyQ PolyQ::operator*(const PolyQ& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return PolyQ(std::move(r));
}

PolyQ PolyQ::operator*(const Rational& s) const {
  if (s == 0) return {};
  PolyQ r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

PolyQ PolyQ::shift_down(int k) const {
  if (k <= 0) return shift_up(-k);
  if (static_cast<int>(c_.size()) <= k) return {};
  return PolyQ(std::vector<Rational>(c_.begin() + k, c_.end()));
}

PolyQ PolyQ::shift_up(int k) const {
  if (k <= 0 || is_zero()) return k < 0 ? shift_down(-k) : *this;
  std::vector<Rational> r(k);
  r.insert(r.end(), c_.begin(), c_.end());
  return PolyQ(std::move(r));
}

PolyQ PolyQ::reversed() const {
  std::vector<Rational> r(c_.rbegin(), c_.rend());
  return PolyQ(std::move(r));
}

void PolyQ::divmod(const PolyQ& a, const PolyQ& b, PolyQ& quo, PolyQ& rem) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  std::vector<Rational> r = a.c_;
  int db = b.degree();
  std::vector<Rational> qv(std::max(0, a.degree() - db + 1));
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    Rational f = r[i] / b.lead();
    qv[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.c_[j];
  }
  quo = PolyQ(std::move(qv));
  rem = PolyQ(std::move(r));
}

PolyQ PolyQ::gcd(PolyQ a, PolyQ b) {
  while (!b.is_zero()) {
    PolyQ qq, rr;
    divmod(a, b, qq, rr);
    a = std::move(b);
    b = std::move(rr);
  }
  if (a.is_zero()) return a;
  return a * (Rational(1) / a.lead());
}

// ----------------------------------------------------- RationalFunctionV

RationalFunctionV::RationalFunctionV(long n)
    : num_(PolyQ::constant(Rational(n))), den_(PolyQ::constant(1)) {}

RationalFunctionV::RationalFunctionV(const Rational& r)
    : num_(PolyQ::constant(r)), den_(PolyQ::constant(1)) {}

RationalFunctionV RationalFunctionV::normalize(PolyQ num, PolyQ den) {
  if (den.is_zero()) throw std::domain_error("division by zero");
  RationalFunctionV r;
  if (num.is_zero()) return r;
  int k = std::min(num.valuation(), den.valuation());
  if (k > 0) {
    num = num.shift_down(k);
    den = den.shift_down(k);
  }
  if (!den.is_monomial() && !num.is_monomial()) {
    PolyQ g = PolyQ::gcd(num, den);
    if (g.degree() > 0) {
      PolyQ qq, rr;
      PolyQ::divmod(num, g, qq, rr);
      num = qq;
      PolyQ::divmod(den, g, qq, rr);
      den = qq;
    }
  }
  Rational l = den.lead();
  if (l != 1) {
    Rational il = 1 / l;
    num = num * il;
    den = den * il;
  }
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

RationalFunctionV RationalFunctionV::v() { return normalize(PolyQ::monomial(1, 1), PolyQ::constant(1)); }
RationalFunctionV RationalFunctionV::q() { return normalize(PolyQ::monomial(1, 2), PolyQ::constant(1)); }

RationalFunctionV RationalFunctionV::vpow(int k) {
  if (k >= 0) return normalize(PolyQ::monomial(1, k), PolyQ::constant(1));
  return normalize(PolyQ::constant(1), PolyQ::monomial(1, -k));
}

bool RationalFunctionV::is_one() const {
  return num_.degree() == 0 && num_.lead() == 1 && den_.degree() == 0;
}

Rational RationalFunctionV::constant_value() const {
  if (!is_constant()) throw std::logic_error("not a constant");
  return num_.is_zero() ? Rational(0) : num_.coeff(0);
}

RationalFunctionV RationalFunctionV::operator+(const RationalFunctionV& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return normalize(num_ + o.num_, den_);
  return normalize(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunctionV RationalFunctionV::operator-(const RationalFunctionV& o) const { return *this + (-o); }

RationalFunctionV RationalFunctionV::operator-() const {
  RationalFunctionV r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunctionV RationalFunctionV::operator*(const RationalFunctionV& o) const {
  if (is_zero() || o.is_zero()) return {};
  return normalize(num_ * o.num_, den_ * o.den_);
}

RationalFunctionV RationalFunctionV::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  return normalize(den_, num_);
}

RationalFunctionV RationalFunctionV::operator/(const RationalFunctionV& o) const { return *this * o.inverse(); }

RationalFunctionV RationalFunctionV::pow(int k) const {
  RationalFunctionV base = k < 0 ? inverse() : *this;
  RationalFunctionV r(1);
  for (int i = 0; i < std::abs(k); ++i) r *= base;
  return r;
}

RationalFunctionV RationalFunctionV::invert_v() const {
  if (is_zero()) return *this;
  int dn = num_.degree(), dd = den_.degree();
  return normalize(num_.reversed().shift_up(dd), den_.reversed().shift_up(dn));
}

namespace {

std::string rat_str(const Rational& r) { return r.get_str(); }

// terms c*v^e listed by descending e
std::string laurent_str(const PolyQ& p, int offset) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    Rational c = p.coeff(i);
    if (c == 0) continue;
    int e = i + offset;
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool unit = a == 1;
    if (e == 0) {
      os << rat_str(a);
      continue;
    }
    if (!unit) os << rat_str(a) << "*";
    os << "v";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

}  // namespace

std::string RationalFunctionV::to_string() const {
  if (den_.is_monomial()) return laurent_str(num_, -den_.degree());
  std::string n = laurent_str(num_, 0);
  bool n_simple = num_.is_monomial() && (num_.degree() == 0 || num_.lead() == 1 || num_.lead() == -1);
  return (n_simple ? n : "(" + n + ")") + "/(" + laurent_str(den_, 0) + ")";
}

// ------------------------------------------------------ QuadraticScalar

long perfect_sqrt(long q) {
  if (q < 0) return 0;
  long s = 0;
  while ((s + 1) * (s + 1) <= q) ++s;
  return s * s == q ? s : 0;
}

QuadraticScalar::QuadraticScalar(long q, Rational a, Rational b)
    : q_(q), root_(perfect_sqrt(q)), a_(std::move(a)), b_(std::move(b)) {
  fold();
}

void QuadraticScalar::fold() {
  if (root_ != 0 && b_ != 0) {
    a_ += b_ * root_;
    b_ = 0;
  }
}

QuadraticScalar QuadraticScalar::vpow(long q, int e) {
  long r = perfect_sqrt(q);
  Rational base = r ? Rational(r) : Rational(q);
  int ex = r ? e : (e >= 0 ? e / 2 : -((-e + 1) / 2));  // floor(e/2) when not square
  Rational p = 1;
  for (int i = 0; i < std::abs(ex); ++i) p *= base;
  if (ex < 0) p = 1 / p;
  if (r || e % 2 == 0) return {q, p, 0};
  return {q, 0, p};
}

QuadraticScalar QuadraticScalar::operator+(const QuadraticScalar& o) const {
  QuadraticScalar r = *this;
  r += o;
  return r;
}

QuadraticScalar QuadraticScalar::operator-(const QuadraticScalar& o) const {
  QuadraticScalar r = *this;
  r -= o;
  return r;
}

QuadraticScalar& QuadraticScalar::operator+=(const QuadraticScalar& o) {
  if (o.q_ != q_) throw std::logic_error("QuadraticScalar: mismatched q");
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadraticScalar& QuadraticScalar::operator-=(const QuadraticScalar& o) {
  if (o.q_ != q_) throw std::logic_error("QuadraticScalar: mismatched q");
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadraticScalar QuadraticScalar::operator*(const QuadraticScalar& o) const {
  if (o.q_ != q_) throw std::logic_error("QuadraticScalar: mismatched q");
  if (b_ == 0 && o.b_ == 0) return {q_, a_ * o.a_, 0};
  return {q_, a_ * o.a_ + b_ * o.b_ * q_, a_ * o.b_ + b_ * o.a_};
}

QuadraticScalar QuadraticScalar::inverse() const {
  Rational n = a_ * a_ - b_ * b_ * q_;
  if (n == 0) throw std::domain_error("division by zero");
  return {q_, a_ / n, -b_ / n};
}

QuadraticScalar QuadraticScalar::operator/(const QuadraticScalar& o) const { return *this * o.inverse(); }

std::string QuadraticScalar::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  if (a_ != 0) os << a_.get_str();
  if (b_ != 0) {
    bool neg = b_ < 0;
    Rational ab = neg ? Rational(-b_) : b_;
    if (a_ != 0)
      os << (neg ? " - " : " + ");
    else if (neg)
      os << "-";
    if (ab != 1) os << ab.get_str() << "*";
    os << "v";
  }
  return os.str();
}

QuadraticScalar evaluate_at(const RationalFunctionV& x, long q) {
  auto horner = [q](const PolyQ& p) {
    QuadraticScalar acc(q, 0, 0);
    QuadraticScalar v(q, 0, 1);
    for (int i = p.degree(); i >= 0; --i) acc = acc * v + QuadraticScalar(q, p.coeff(i), 0);
    return acc;
  };
  QuadraticScalar n = horner(x.num()), d = horner(x.den());
  if (d.is_zero())
    throw std::domain_error("pole at v = sqrt(q) for q = " + std::to_string(q) + ": " + x.to_string());
  return n / d;
}

// --------------------------------------------------------------- parser

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(const std::string& s) : s_(s) {}
  RationalFunctionV run() {
    RationalFunctionV r = expr();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("scalar parse error at " + std::to_string(i_) + ": " + why + " in '" + s_ + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  RationalFunctionV expr() {
    RationalFunctionV r = term();
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }
  RationalFunctionV term() {
    RationalFunctionV r = unary();
    for (;;) {
      if (eat('*'))
        r *= unary();
      else if (eat('/'))
        r = r / unary();
      else
        return r;
    }
  }
  RationalFunctionV unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  long integer_exponent() {
    bool braces = eat('{');
    bool paren = !braces && eat('(');
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    skip();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected integer exponent");
    long e = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) e = e * 10 + (s_[i_++] - '0');
    if (braces && !eat('}')) fail("expected }");
    if (paren && !eat(')')) fail("expected )");
    return neg ? -e : e;
  }
  RationalFunctionV power() {
    RationalFunctionV base = atom();
    if (eat('^')) return base.pow(static_cast<int>(integer_exponent()));
    return base;
  }
  RationalFunctionV atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      RationalFunctionV r = expr();
      if (!eat(')')) fail("expected )");
      return r;
    }
    if (c == 'q') {
      ++i_;
      return RationalFunctionV::q();
    }
    if (c == 'v') {
      ++i_;
      return RationalFunctionV::v();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      mpz_class z(s_.substr(i_, j - i_));
      i_ = j;
      return RationalFunctionV(Rational(z));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  size_t i_ = 0;
};

}  // namespace

RationalFunctionV parse_scalar(const std::string& text) { return ScalarParser(text).run(); }

}  // namespace dha
