#include <gtest/gtest.h>

#include <random>

#include "dha/freealg.hpp"

using namespace dha;

namespace {
NCPolynomial z(int i, int n) { return NCPolynomial::gen('z', i, n); }
}  // namespace

TEST(NCPolynomial, BracketExpands) {
  auto v = RationalFunctionV::v();
  auto b = q_bracket(z(1, 0), z(2, 0), v);
  EXPECT_EQ(b, z(1, 0) * z(2, 0) - v * (z(2, 0) * z(1, 0)));
}

TEST(NCPolynomial, IteratedBracketIsRightNested) {
  auto f = parse_scalar("v^3");
  auto x = z(1, 0), y = z(2, 0), w = z(3, 0);
  EXPECT_EQ(iterated_bracket({x, y, w}, f), q_bracket(x, q_bracket(y, w, f), f));
  EXPECT_EQ(iterated_bracket({x}, f), x);
  EXPECT_THROW(iterated_bracket({}, f), std::invalid_argument);
}

TEST(NCPolynomial, ZabMatchesDefinition) {
  auto v = RationalFunctionV::v();
  EXPECT_EQ(zab(1, 2, 0, 4), z(1, 0));
  EXPECT_EQ(zab(1, 3, 1, 4), z(2, 1) * z(1, 1) - v * (z(1, 1) * z(2, 1)));
  EXPECT_THROW(zab(2, 2, 0, 4), std::invalid_argument);
}

TEST(NCPolynomial, SuspendShiftsEveryGenerator) {
  auto x = z(1, 0) * z(2, -1) + z(3, 2);
  EXPECT_EQ(suspend(x, 2), z(1, 2) * z(2, 1) + z(3, 4));
  EXPECT_EQ(suspend(suspend(x, 1), -1), x);
}

TEST(NCPolynomial, ParserHandlesBracketsAndSuspension) {
  auto p = parse_polynomial("[z[2,0], z[1,0]]_v");
  EXPECT_EQ(p, zab(1, 3, 0, 4));
  auto s = parse_polynomial("s^{1}([z[2,0], z[1,0]]_{v})");
  EXPECT_EQ(s, zab(1, 3, 1, 4));
  auto r = parse_polynomial("z[1,0]z[1,1] - v^-2 z[1,1]z[1,0] - v^-1/(v^2-1)");
  auto v = RationalFunctionV::v();
  EXPECT_EQ(r, z(1, 0) * z(1, 1) - v.pow(-2) * (z(1, 1) * z(1, 0)) - NCPolynomial(v.inverse() / (v * v - 1)));
  EXPECT_THROW(parse_polynomial("z[1,0]/z[2,0]"), std::invalid_argument);
  EXPECT_THROW(parse_polynomial("z[1,0]^-1"), std::invalid_argument);
}

TEST(NCPolynomial, ToStringRoundTrips) {
  auto x = parse_polynomial("3*z[1,0]z[2,1] - v^-1 z[2,1] + (v+1)/(v-2) z[1,0] - 1/2");
  EXPECT_EQ(parse_polynomial(x.to_string()), x) << x.to_string();
}

TEST(NCPolynomial, SubstituteIsAHomomorphism) {
  GeneratorMap f = [](const Generator& g) {
    return g.i == 1 ? z(2, g.n) + z(3, g.n) : NCPolynomial::gen(g) * RationalFunctionV::v();
  };
  auto a = z(1, 0) + z(2, 0), b = z(1, 1) * z(2, 0);
  EXPECT_EQ(substitute(a * b, f), substitute(a, f) * substitute(b, f));
}

namespace {

struct RandomAlgebra {
  std::mt19937 rng{2024};
  RationalFunctionV scalar() {
    static const char* pool[] = {"1", "-2", "v", "v^-1", "v^2", "(v+1)/(v-2)", "1/3", "v^-3 - v"};
    return parse_scalar(pool[rng() % 8]);
  }
  RationalFunctionV unit() { return RationalFunctionV::vpow(static_cast<int>(rng() % 7) - 3); }
  NCPolynomial poly() {
    NCPolynomial p;
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      Word w;
      int len = static_cast<int>(rng() % 3);
      for (int k = 0; k < len; ++k) w.push_back({'z', 1 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 3) - 1});
      p.add_term(w, scalar());
    }
    return p;
  }
};

}  // namespace

TEST(Property, OmniJacobiIdentity) {
  RandomAlgebra R;
  for (int t = 0; t < 100; ++t) {
    auto x = R.poly(), y = R.poly(), z = R.poly();
    auto a = R.unit(), b = R.unit(), c = R.scalar();
    auto lhs = q_bracket(x, q_bracket(y, z, a * c), a * b) + a * q_bracket(z, q_bracket(x, y, a * b * c), a.inverse()) +
               (a * b) * q_bracket(y, q_bracket(z, x, c), b.inverse());
    EXPECT_TRUE(lhs.is_zero()) << lhs.to_string();
  }
}

TEST(Property, QAntisymmetry) {
  RandomAlgebra R;
  for (int t = 0; t < 100; ++t) {
    auto x = R.poly(), y = R.poly();
    auto f = R.unit();
    EXPECT_TRUE((q_bracket(x, y, f) + f * q_bracket(y, x, f.inverse())).is_zero());
  }
}
