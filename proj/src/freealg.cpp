#include "dha/freealg.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace dha {

std::string Generator::to_string() const {
  return std::string(1, fam) + "[" + std::to_string(i) + "," + std::to_string(n) + "]";
}

NCPolynomial::NCPolynomial(const RationalFunctionV& c) {
  if (!c.is_zero()) t_.emplace(Word{}, c);
}

NCPolynomial NCPolynomial::gen(const Generator& g) { return word(Word{g}); }

NCPolynomial NCPolynomial::word(const Word& w, const RationalFunctionV& c) {
  NCPolynomial p;
  p.add_term(w, c);
  return p;
}

bool NCPolynomial::is_scalar() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }

RationalFunctionV NCPolynomial::scalar_part() const {
  auto it = t_.find(Word{});
  return it == t_.end() ? RationalFunctionV() : it->second;
}

void NCPolynomial::add_term(const Word& w, const RationalFunctionV& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t_.emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& o) {
  for (const auto& [w, c] : o.t_) add_term(w, c);
  return *this;
}

NCPolynomial& NCPolynomial::operator-=(const NCPolynomial& o) {
  for (const auto& [w, c] : o.t_) add_term(w, -c);
  return *this;
}

NCPolynomial NCPolynomial::operator+(const NCPolynomial& o) const {
  NCPolynomial r = *this;
  r += o;
  return r;
}

NCPolynomial NCPolynomial::operator-(const NCPolynomial& o) const {
  NCPolynomial r = *this;
  r -= o;
  return r;
}

NCPolynomial NCPolynomial::operator-() const {
  NCPolynomial r = *this;
  for (auto& [w, c] : r.t_) c = -c;
  return r;
}

NCPolynomial NCPolynomial::operator*(const NCPolynomial& o) const {
  NCPolynomial r;
  for (const auto& [w1, c1] : t_)
    for (const auto& [w2, c2] : o.t_) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      r.add_term(w, c1 * c2);
    }
  return r;
}

NCPolynomial NCPolynomial::operator*(const RationalFunctionV& s) const {
  if (s.is_zero()) return {};
  if (s.is_one()) return *this;
  NCPolynomial r = *this;
  for (auto& [w, c] : r.t_) c *= s;
  return r;
}

std::string NCPolynomial::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : t_) {
    std::string cs = c.to_string();
    bool compound = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos ||
                    cs.find('/') != std::string::npos;
    bool neg = !compound && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (w.empty()) {
      os << (compound ? "(" + cs + ")" : cs);
      continue;
    }
    if (cs != "1") os << (compound ? "(" + cs + ")" : cs) << "*";
    for (size_t k = 0; k < w.size(); ++k) os << (k ? "*" : "") << w[k].to_string();
  }
  return os.str();
}

NCPolynomial multiply(const NCPolynomial& x, const NCPolynomial& y) { return x * y; }

NCPolynomial q_bracket(const NCPolynomial& x, const NCPolynomial& y, const RationalFunctionV& f) {
  return x * y - (y * x) * f;
}

NCPolynomial iterated_bracket(const std::vector<NCPolynomial>& items, const RationalFunctionV& f) {
  if (items.empty()) throw std::invalid_argument("iterated_bracket: empty list");
  NCPolynomial acc = items.back();
  for (int k = static_cast<int>(items.size()) - 2; k >= 0; --k) acc = q_bracket(items[k], acc, f);
  return acc;
}

NCPolynomial suspend(const NCPolynomial& x, int n) {
  if (n == 0) return x;
  NCPolynomial r;
  for (const auto& [w, c] : x.terms()) {
    Word s = w;
    for (auto& g : s) g.n += n;
    r.add_term(s, c);
  }
  return r;
}

NCPolynomial zab(int a, int b, int n, int m) {
  if (!(1 <= a && a < b && b <= m)) throw std::invalid_argument("zab: need 1 <= a < b <= m");
  std::vector<NCPolynomial> items;
  for (int i = b - 1; i >= a; --i) items.push_back(NCPolynomial::gen('z', i, n));
  return iterated_bracket(items, RationalFunctionV::v());
}

NCPolynomial substitute(const NCPolynomial& x, const GeneratorMap& f) {
  std::map<Generator, NCPolynomial> cache;
  auto img = [&](const Generator& g) -> const NCPolynomial& {
    auto it = cache.find(g);
    if (it == cache.end()) it = cache.emplace(g, f(g)).first;
    return it->second;
  };
  NCPolynomial r;
  for (const auto& [w, c] : x.terms()) {
    NCPolynomial t(c);
    for (const auto& g : w) t = t * img(g);
    r += t;
  }
  return r;
}

NCPolynomial map_scalars(const NCPolynomial& x, const std::function<RationalFunctionV(const RationalFunctionV&)>& f) {
  NCPolynomial r;
  for (const auto& [w, c] : x.terms()) r.add_term(w, f(c));
  return r;
}

// --------------------------------------------------------------- parser

namespace {

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}
  NCPolynomial run() {
    NCPolynomial r = expr();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("parse error at " + std::to_string(i_) + ": " + why + " in '" + s_ + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  long integer() {
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    skip();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected integer");
    long v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) v = v * 10 + (s_[i_++] - '0');
    return neg ? -v : v;
  }
  long exponent() {
    if (eat('{')) {
      long e = integer();
      expect('}');
      return e;
    }
    if (eat('(')) {
      long e = integer();
      expect(')');
      return e;
    }
    return integer();
  }
  bool starts_factor() {
    char c = peek();
    return c == '(' || c == '[' || std::isalnum(static_cast<unsigned char>(c));
  }
  NCPolynomial expr() {
    NCPolynomial r;
    if (eat('-')) r = -term();
    else {
      eat('+');
      r = term();
    }
    for (;;) {
      if (eat('+')) r += term();
      else if (eat('-')) r -= term();
      else return r;
    }
  }
  NCPolynomial term() {
    NCPolynomial r = power();
    for (;;) {
      if (eat('*')) r = r * power();
      else if (eat('/')) {
        NCPolynomial d = power();
        if (!d.is_scalar() || d.is_zero()) fail("division by a non-scalar");
        r = r * d.scalar_part().inverse();
      } else if (starts_factor()) r = r * power();
      else return r;
    }
  }
  NCPolynomial power() {
    if (eat('-')) return -power();
    NCPolynomial b = atom();
    if (eat('^')) {
      long e = exponent();
      if (e < 0) {
        if (!b.is_scalar() || b.is_zero()) fail("negative power of a non-scalar");
        return NCPolynomial(b.scalar_part().pow(static_cast<int>(e)));
      }
      NCPolynomial r(1);
      for (long k = 0; k < e; ++k) r = r * b;
      return r;
    }
    return b;
  }
  NCPolynomial atom() {
    char c = peek();
    if (c == '\0') fail("unexpected end");
    if (c == '(') {
      ++i_;
      NCPolynomial r = expr();
      expect(')');
      return r;
    }
    if (c == '[') {
      ++i_;
      std::vector<NCPolynomial> items{expr()};
      while (eat(',')) items.push_back(expr());
      expect(']');
      if (items.size() < 2) fail("bracket needs at least two entries");
      expect('_');
      NCPolynomial f;
      if (eat('{')) {
        f = expr();
        expect('}');
      } else {
        f = atom();
      }
      if (!f.is_scalar()) fail("bracket subscript must be a scalar");
      return iterated_bracket(items, f.scalar_part());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      mpz_class z(s_.substr(i_, j - i_));
      i_ = j;
      return NCPolynomial(RationalFunctionV(Rational(z)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++i_;
      if (c == 'q') return NCPolynomial(RationalFunctionV::q());
      if (c == 'v') return NCPolynomial(RationalFunctionV::v());
      if (c == 's' && peek() == '^') {
        ++i_;
        long n = exponent();
        expect('(');
        NCPolynomial x = expr();
        expect(')');
        return suspend(x, static_cast<int>(n));
      }
      expect('[');
      long a = integer();
      expect(',');
      long b = integer();
      expect(']');
      return NCPolynomial::gen(c, static_cast<int>(a), static_cast<int>(b));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  size_t i_ = 0;
};

}  // namespace

NCPolynomial parse_polynomial(const std::string& text) { return PolyParser(text).run(); }

}  // namespace dha
