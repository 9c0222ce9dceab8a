#include <gtest/gtest.h>

#include <random>

#include "dha/repq.hpp"
#include "fixtures.hpp"

using namespace dha;

namespace {

DerivedObject M(int a, int b, int n = 0) { return DerivedObject::indecomposable(a, b, n); }

std::vector<DerivedObject> indecomposables(int m, int lo, int hi) {
  std::vector<DerivedObject> out;
  for (int n = lo; n <= hi; ++n)
    for (int a = 1; a < m; ++a)
      for (int b = a + 1; b <= m; ++b) out.push_back(M(a, b, n));
  return out;
}

}  // namespace

TEST(FiniteField, PrimePowerDetection) {
  int p = 0, k = 0;
  EXPECT_TRUE(is_prime_power(9, &p, &k));
  EXPECT_EQ(p, 3);
  EXPECT_EQ(k, 2);
  EXPECT_FALSE(is_prime_power(6));
  EXPECT_FALSE(is_prime_power(1));
  EXPECT_THROW(FiniteField::make(6), std::invalid_argument);
}

TEST(FiniteField, FieldAxioms) {
  for (long q : {2, 3, 4, 5, 8, 9}) {
    auto F = FiniteField::make(q);
    for (Elt a = 0; a < q; ++a) {
      EXPECT_EQ(F->add(a, F->neg(a)), 0);
      if (a) EXPECT_EQ(F->mul(a, F->inv(a)), 1);
      for (Elt b = 0; b < q; ++b)
        for (Elt c = 0; c < q; ++c) EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
    }
  }
}

TEST(FiniteField, ExplicitModulus) {
  EXPECT_EQ(FiniteField::make(4)->modulus(), (std::vector<int>{1, 1, 1}));
  auto F = FiniteField::with_modulus(3, {2, 2, 1});  // x^2 + 2x + 2 over F_3
  EXPECT_EQ(F->q(), 9);
  EXPECT_THROW(FiniteField::with_modulus(2, {1, 0, 1}), std::invalid_argument);
}

TEST(Matrices, KernelAndRank) {
  auto F = FiniteField::make(3);
  Mat A(2, 3);
  A(0, 0) = 1, A(0, 1) = 2, A(1, 2) = 1;
  EXPECT_EQ(mat_rank(*F, A), 2);
  auto K = mat_kernel(*F, A);
  ASSERT_EQ(K.size(), 1u);
  Mat x(3, 1);
  for (int i = 0; i < 3; ++i) x(i, 0) = K[0][i];
  EXPECT_TRUE(mat_mul(*F, A, x).is_zero());
  Mat B = Mat::identity(2);
  B(0, 1) = 2;
  EXPECT_EQ(mat_mul(*F, B, mat_inverse(*F, B)), Mat::identity(2));
}

TEST(QuiverReps, HomExtTableMatchesOracle) {
  auto F = FiniteField::make(2);
  for (const auto& [key, val] : fixtures::frozen()["a3_hom_ext_table_q2"].items()) {
    int a, b, c, d;
    ASSERT_EQ(std::sscanf(key.c_str(), "%d,%d;%d,%d", &a, &b, &c, &d), 4);
    auto X = interval_rep(4, {a, b}), Y = interval_rep(4, {c, d});
    EXPECT_EQ(hom_space(*F, X, Y).dim, val[0].get<int>()) << key;
    EXPECT_EQ(ext1_space(*F, X, Y).dim, val[1].get<int>()) << key;
    EXPECT_EQ(interval_hom(a, b, c, d), val[0].get<int>()) << key;
    EXPECT_EQ(interval_ext(a, b, c, d), val[1].get<int>()) << key;
  }
}

TEST(QuiverReps, SmallHomExtFixtures) {
  auto F = FiniteField::make(2);
  const auto& j = fixtures::frozen();
  EXPECT_EQ(hom_space(*F, interval_rep(3, {1, 2}), interval_rep(3, {2, 3})).dim, j["hom_dim"]["A2: M[1,2) -> M[2,3)"]);
  EXPECT_EQ(hom_space(*F, interval_rep(3, {1, 3}), interval_rep(3, {1, 2})).dim, j["hom_dim"]["A2: M[1,3) -> M[1,2)"]);
  EXPECT_EQ(hom_space(*F, interval_rep(3, {2, 3}), interval_rep(3, {1, 3})).dim, j["hom_dim"]["A2: M[2,3) -> M[1,3)"]);
  EXPECT_EQ(ext1_space(*F, interval_rep(3, {1, 2}), interval_rep(3, {2, 3})).dim, j["ext1_dim"]["A2: S1 -> S2"]);
  EXPECT_EQ(ext1_space(*F, interval_rep(3, {2, 3}), interval_rep(3, {1, 2})).dim, j["ext1_dim"]["A2: S2 -> S1"]);
}

TEST(QuiverReps, BarcodeOfDimensionVector121) {
  auto F = FiniteField::make(2);
  QuiverRep R;
  R.m = 4;
  R.dims = {1, 2, 1};
  Mat A(2, 1), B(1, 2);
  A(0, 0) = 1;
  B(0, 1) = 1;
  R.maps = {A, B};
  std::vector<Interval> want;
  for (const auto& iv : fixtures::frozen()["barcode_121"]) want.push_back({iv[0], iv[1]});
  EXPECT_EQ(barcode(*F, R), want);
}

TEST(QuiverReps, NonSplitExtensionMiddleTerm) {
  auto F = FiniteField::make(2);
  auto S1 = interval_rep(3, {1, 2}), S2 = interval_rep(3, {2, 3});
  auto X = ext1_space(*F, S1, S2);
  ASSERT_EQ(X.dim, 1);
  auto E = extension_middle(*F, S1, S2, X.reps[0]);
  std::vector<Interval> want;
  for (const auto& iv : fixtures::frozen()["nonsplit_ext_S1_by_S2"]) want.push_back({iv[0], iv[1]});
  EXPECT_EQ(barcode(*F, E), want);
}

TEST(DerivedObject, CanonicalFormAndParsing) {
  auto X = M(1, 3, 1) + M(1, 2) + M(1, 2);
  EXPECT_EQ(X.to_string(), "M[1,2)[0] + M[1,2)[0] + M[1,3)[1]");
  EXPECT_EQ(parse_object(X.to_string()), X);
  EXPECT_EQ(parse_object("2*M[1,2)[0] + M[1,3)[1]"), X);
  EXPECT_EQ(parse_object("S[1] + S[1] + M[1,3)[1]"), X);
  EXPECT_EQ(parse_object("0"), DerivedObject());
  EXPECT_EQ(X.shifted(1).shifted(-1), X);
  EXPECT_EQ(X.k0_class(3), (std::vector<long>{1, -1}));
  EXPECT_THROW(parse_object("M[2,1)"), std::invalid_argument);
}

TEST(DerivedCategory, DhomDimsTwoRoutesAgree) {
  for (int m : {2, 3, 4}) {
    DerivedCategory D(m, FiniteField::make(2));
    auto objs = indecomposables(m, -1, 1);
    for (const auto& X : objs)
      for (const auto& Y : objs) EXPECT_EQ(D.dhom_dims(X, Y), D.dhom_dims_by_complex(X, Y)) << X.to_string() << " / " << Y.to_string();
    auto X = M(1, 2) + M(1, m, 1) + M(m - 1, m, -1);
    for (const auto& Y : objs) EXPECT_EQ(D.dhom_dims(X, Y), D.dhom_dims_by_complex(X, Y));
  }
}

TEST(DerivedCategory, HomClassesCountMatchesDimension) {
  DerivedCategory D(4, FiniteField::make(3));
  auto objs = indecomposables(4, -1, 1);
  for (const auto& X : objs)
    for (const auto& Y : objs) EXPECT_EQ(static_cast<int>(D.hom_classes(X, Y)->basis.size()), D.dhom_dim(X, Y, 0));
}

TEST(DerivedCategory, ConeOfZeroAndIdentity) {
  DerivedCategory D(4, FiniteField::make(2));
  auto X = M(1, 3) + M(2, 4, 1), Y = M(1, 2, -1) + M(3, 4);
  auto homs = D.enumerate_dhoms(X, Y);
  bool saw_zero = false;
  for (const auto& f : homs) {
    bool zero = std::all_of(f.coords.begin(), f.coords.end(), [](Elt e) { return e == 0; });
    if (zero) {
      saw_zero = true;
      EXPECT_EQ(D.cone(f), X.shifted(1) + Y);
    }
  }
  EXPECT_TRUE(saw_zero);
  for (const auto& A : indecomposables(4, -1, 1)) {
    int zero_cones = 0;
    for (const auto& f : D.enumerate_dhoms(A, A)) zero_cones += D.cone(f).is_zero();
    EXPECT_EQ(zero_cones, 1) << A.to_string();
  }
}

TEST(DerivedCategory, ConeOfNonSplitExtension) {
  // S1[-1] -> S2 nonzero has cone the extension M[1,3)
  DerivedCategory D(3, FiniteField::make(2));
  auto maps = D.enumerate_dhoms(M(1, 2, -1), M(2, 3));
  ASSERT_EQ(maps.size(), 2u);
  std::vector<DerivedObject> cones;
  for (const auto& f : maps) cones.push_back(D.cone(f));
  std::sort(cones.begin(), cones.end());
  std::vector<DerivedObject> want{M(1, 2) + M(2, 3), M(1, 3)};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(cones, want);
}

TEST(DerivedCategory, AutomorphismCountsMatchOracle) {
  const auto& a = fixtures::frozen()["aut"];
  auto check = [&](int m, long q, const DerivedObject& X, const char* key) {
    DerivedCategory D(m, FiniteField::make(q));
    EXPECT_EQ(D.aut_count(X), a[key].get<long>()) << key;
    EXPECT_EQ(D.aut_order(X), a[key].get<long>()) << key;
  };
  check(2, 2, M(1, 2), "A1 q=2: S");
  check(2, 2, M(1, 2) + M(1, 2), "A1 q=2: S+S");
  check(3, 2, M(1, 3) + M(1, 2), "A2 q=2: M[1,3)+M[1,2)");
  check(3, 3, M(1, 3) + M(2, 3), "A2 q=3: M[1,3)+S2");
  check(3, 2, M(1, 2) + M(1, 2) + M(1, 3), "A2 q=2: S1+S1+M[1,3)");
}

TEST(DerivedCategory, AutomorphismRoutesAgreeOnShiftedSums) {
  DerivedCategory D(4, FiniteField::make(2));
  std::vector<DerivedObject> xs = {M(1, 2) + M(1, 2, 1), M(1, 3) + M(2, 4, -1), M(1, 4) + M(1, 4) + M(2, 3, 1),
                                   M(1, 2, -1) + M(2, 3) + M(1, 3)};
  for (const auto& X : xs) EXPECT_EQ(D.aut_count(X), D.aut_order(X)) << X.to_string();
}

// Random representations of A_4: the barcode determines the iso class, so
// rebuilding from the barcode and changing basis must preserve it.
TEST(Property, BarcodeRoundTripAndBaseChange) {
  std::mt19937 rng(7);
  for (long q : {2, 3}) {
    auto F = FiniteField::make(q);
    for (int trial = 0; trial < 250; ++trial) {
      QuiverRep R;
      R.m = 5;
      for (int v = 0; v < 4; ++v) R.dims.push_back(static_cast<int>(rng() % 3));
      for (int v = 0; v < 3; ++v) {
        Mat A(R.dims[v + 1], R.dims[v]);
        for (auto& e : A.e) e = static_cast<Elt>(rng() % q);
        R.maps.push_back(A);
      }
      auto bc = barcode(*F, R);
      auto rebuilt = rep_from_intervals(5, bc);
      EXPECT_EQ(rebuilt.dims, R.dims);
      EXPECT_EQ(barcode(*F, rebuilt), bc);
      // same iso class: Hom dims against every interval agree
      for (int a = 1; a < 5; ++a)
        for (int b = a + 1; b <= 5; ++b) {
          auto I = interval_rep(5, {a, b});
          EXPECT_EQ(hom_space(*F, R, I).dim, hom_space(*F, rebuilt, I).dim);
          EXPECT_EQ(hom_space(*F, I, R).dim, hom_space(*F, I, rebuilt).dim);
        }
      // random base change g_v at every vertex
      QuiverRep G = R;
      std::vector<Mat> g;
      for (int v = 0; v < 4; ++v) {
        for (;;) {
          Mat A(R.dims[v], R.dims[v]);
          for (auto& e : A.e) e = static_cast<Elt>(rng() % q);
          if (mat_rank(*F, A) == A.rows) {
            g.push_back(A);
            break;
          }
        }
      }
      for (int v = 0; v < 3; ++v) G.maps[v] = mat_mul(*F, mat_mul(*F, g[v + 1], R.maps[v]), mat_inverse(*F, g[v]));
      EXPECT_EQ(barcode(*F, G), bc);
    }
  }
}
