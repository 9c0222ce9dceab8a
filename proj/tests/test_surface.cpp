#include <gtest/gtest.h>

#include <random>

#include "dha/surface.hpp"

using namespace dha;

namespace {
NCPolynomial z(int a, int b, int n, int m) { return zab(a, b, n, m); }
RationalFunctionV v() { return RationalFunctionV::v(); }

FoliationData random_foliation(std::mt19937& rng, int m) {
  std::vector<int> h(m, 0);
  for (int k = 0; k < m - 2; ++k) ++h[rng() % m];
  return FoliationData(h);
}
}  // namespace

TEST(Foliation, ValidatesSum) {
  EXPECT_NO_THROW(FoliationData({0, 1, 0, 1}));
  EXPECT_THROW(FoliationData({0, 0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(FoliationData({0}), std::invalid_argument);
  EXPECT_EQ(parse_foliation("1,0,0").values(), (std::vector<int>{1, 0, 0}));
  EXPECT_THROW(parse_foliation("1,x,0"), std::invalid_argument);
}

TEST(Foliation, AngleOnStandardForm) {
  auto e0 = standard_form();
  EXPECT_EQ(angle(1, e0), 0);
  EXPECT_EQ(angle(2, e0), 1);
  EXPECT_EQ(angle(3, e0), 1);
  EXPECT_EQ(angle(4, e0), 2);
  EXPECT_THROW(angle(5, e0), std::out_of_range);
  EXPECT_THROW(angle(0, e0), std::out_of_range);
}

TEST(Foliation, SpanExamples) {
  auto e0 = standard_form();
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(span(1, k, e0), angle(k, e0));
  EXPECT_EQ(span(3, 3, e0), 0);
  EXPECT_EQ(span(2, 4, e0) + span(4, 2, e0), 2);
  // relabelled angle starting after arc 4 is the plain angle
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(tau_angle(4, k, e0), angle(k, e0));
}

TEST(Property, SpanSplittingAndFullTurn) {
  std::mt19937 rng(5);
  for (int t = 0; t < 200; ++t) {
    int m = 2 + static_cast<int>(rng() % 6);
    auto h = random_foliation(rng, m);
    int full = 0;
    for (int i = 1; i <= m; ++i) full += 1 - h(i);
    EXPECT_EQ(full, 2);
    int j = 1 + static_cast<int>(rng() % m), k = 1 + static_cast<int>(rng() % m), l = 1 + static_cast<int>(rng() % m);
    if (j != k) EXPECT_EQ(span(j, k, h) + span(k, j, h), 2);
    // splitting through any point l on the forward path from j to k
    int steps_jl = ((l - j) % m + m) % m, steps_jk = ((k - j) % m + m) % m;
    if (steps_jl <= steps_jk) EXPECT_EQ(span(j, l, h) + span(l, k, h), span(j, k, h));
  }
}

TEST(Gluing, TwoTrianglesGiveSquare) {
  auto G = glue(FoliationData({0, 1, 0}), 3, FoliationData({1, 0, 0}), 1);
  EXPECT_EQ(G.g.values(), (std::vector<int>{0, 2, 0, 0}));
  EXPECT_EQ(G.n, 3);
  EXPECT_EQ(G.m, 3);
  EXPECT_EQ(G.left_label(3), 0);
  EXPECT_EQ(G.left_label(1), 1);
  EXPECT_EQ(G.right_label(1), 0);
  EXPECT_EQ(G.right_label(2), 3);
  EXPECT_EQ(G.right_label(3), 4);
  EXPECT_THROW(glue(FoliationData({0, 1, 0}), 4, FoliationData({1, 0, 0}), 1), std::out_of_range);
}

TEST(Gluing, RotationIsAppliedToOtherArcs) {
  // gluing along the first arc of the left disk rotates it so that arc becomes last
  auto G = glue(FoliationData({1, 0, 0}), 1, FoliationData({1, 0, 0}), 2);
  EXPECT_EQ(G.e, FoliationData({0, 0, 1}));
  EXPECT_EQ(G.f, FoliationData({0, 0, 1}));
  EXPECT_EQ(G.left_label(2), 1);
  EXPECT_EQ(G.left_label(3), 2);
  EXPECT_EQ(G.right_label(3), 3);
  EXPECT_EQ(G.right_label(1), 4);
}

TEST(Property, GlueCutRoundTripAndArcCount) {
  std::mt19937 rng(9);
  for (int t = 0; t < 300; ++t) {
    int n = 2 + static_cast<int>(rng() % 5), m = 2 + static_cast<int>(rng() % 5);
    auto e = random_foliation(rng, n), f = random_foliation(rng, m);
    int i = 1 + static_cast<int>(rng() % n), j = 1 + static_cast<int>(rng() % m);
    auto G = glue(e, i, f, j);
    EXPECT_EQ(G.g.m(), n + m - 2);
    auto [e2, f2] = cut(G.g, n, G.f(1));
    EXPECT_EQ(e2, G.e);
    EXPECT_EQ(f2, G.f);
  }
}

TEST(Chords, CrossingClassification) {
  EXPECT_EQ(crossing({1, 2, 0}, {3, 4, 0}).kind, Crossing::Disjoint);
  EXPECT_EQ(crossing({1, 4, 0}, {2, 3, 0}).kind, Crossing::Disjoint);
  EXPECT_EQ(crossing({1, 3, 0}, {2, 4, 0}).kind, Crossing::Interleaved);
  EXPECT_EQ(crossing({2, 4, 0}, {1, 3, 5}).kind, Crossing::Interleaved);
  auto s = crossing({1, 3, 0}, {1, 2, 0});
  EXPECT_EQ(s.kind, Crossing::SharedEndpoint);
  EXPECT_EQ(s.shared, 1);
  EXPECT_EQ(crossing({1, 3, 0}, {1, 3, 2}).kind, Crossing::Equal);
  EXPECT_THROW(crossing({3, 1, 0}, {1, 2, 0}), std::invalid_argument);
}

TEST(Chords, SkeinCommutatorBranches) {
  int m = 4;
  auto s0 = skein_commutator({1, 3, 0}, {2, 4, 0}, m);
  EXPECT_EQ(s0.lhs, q_bracket(z(1, 3, 0, m), z(2, 4, 0, m), 1));
  EXPECT_EQ(s0.rhs, (v() - v().inverse()) * (z(1, 4, 0, m) * z(2, 3, 0, m)));
  auto s1 = skein_commutator({1, 3, 1}, {2, 4, 0}, m);
  EXPECT_EQ(s1.rhs, (v().inverse() - v()) * (z(1, 2, 1, m) * z(3, 4, 0, m)));
  EXPECT_TRUE(skein_commutator({1, 3, 2}, {2, 4, 0}, m).rhs.is_zero());
  EXPECT_TRUE(skein_commutator({1, 3, -2}, {2, 4, 0}, m).rhs.is_zero());
  EXPECT_TRUE(skein_commutator({1, 3, 0}, {2, 4, 1}, m).rhs.is_zero());
  // swapped arguments
  auto sw = skein_commutator({2, 4, 0}, {1, 3, 0}, m);
  EXPECT_EQ(sw.lhs, -s0.lhs);
  EXPECT_EQ(sw.rhs, -s0.rhs);
  EXPECT_THROW(skein_commutator({1, 2, 0}, {3, 4, 0}, m), std::invalid_argument);
}

TEST(Chords, BoundarySkeinReproducesArcRelations) {
  int m = 5;
  int a = 1, b = 3, c = 4;
  for (int n = -1; n <= 1; ++n) {
    auto finger = boundary_skein({b, c, n}, {a, b, n}, m);
    EXPECT_EQ(finger.lhs, q_bracket(z(b, c, n, m), z(a, b, n, m), v()));
    EXPECT_EQ(finger.rhs, z(a, c, n, m));
    auto skein = boundary_skein({a, c, n}, {b, c, n - 1}, m);
    EXPECT_EQ(skein.lhs, q_bracket(z(a, c, n, m), z(b, c, n - 1, m), v()));
    EXPECT_EQ(skein.rhs, z(a, b, n, m));
    auto opposite = boundary_skein({a, b, n + 1}, {a, c, n}, m);
    EXPECT_EQ(opposite.lhs, q_bracket(z(a, b, n + 1, m), z(a, c, n, m), v()));
    EXPECT_EQ(opposite.rhs, z(b, c, n, m));
  }
  // away from index one the right-hand side vanishes
  EXPECT_TRUE(boundary_skein({b, c, 2}, {a, b, 0}, m).rhs.is_zero());
  EXPECT_THROW(boundary_skein({1, 3, 0}, {2, 4, 0}, m), std::invalid_argument);
}

TEST(Chords, IndexIdentities) {
  IndexPair p{0};
  EXPECT_EQ(p.backward(), 1);
  EXPECT_EQ(p.forward(1, 0), p.forward() + 1);
  EXPECT_EQ(p.forward(3, 3), p.forward());
  for (int i = -3; i <= 3; ++i)
    for (int n1 = -2; n1 <= 2; ++n1)
      for (int n2 = -2; n2 <= 2; ++n2) EXPECT_TRUE(index_identities_hold({i}, n1, n2));
}

TEST(SurfaceConfig, AnnulusTopology) {
  auto c = SurfaceConfig::from_json(nlohmann::json::parse(R"({
    "disks": [{"m": 4, "h": [0,1,0,1]}, {"m": 4, "h": [0,1,0,1]}],
    "gluings": [{"left": 0, "arc_i": 2, "right": 1, "arc_j": 4},
                {"left": 0, "arc_i": 4, "right": 1, "arc_j": 2}]})"));
  auto t = analyze(c);
  EXPECT_EQ(t.boundary_components, 2);
  EXPECT_EQ(t.closed_components, 0);
  EXPECT_FALSE(t.is_disk);
  EXPECT_TRUE(t.warnings.empty());
  EXPECT_EQ(SurfaceConfig::from_json(c.to_json()).to_json(), c.to_json());
}

TEST(SurfaceConfig, TreeOfTrianglesIsADisk) {
  auto c = SurfaceConfig::from_json(nlohmann::json::parse(R"({
    "disks": [{"m": 3, "h": [0,1,0]}, {"m": 3, "h": [1,0,0]}],
    "gluings": [{"left": 0, "arc_i": 3, "right": 1, "arc_j": 1}]})"));
  auto t = analyze(c);
  EXPECT_TRUE(t.is_disk);
  EXPECT_EQ(t.boundary_components, 1);
}

TEST(SurfaceConfig, ValidationErrors) {
  using nlohmann::json;
  // a closed boundary component: two digons glued along both arcs
  EXPECT_THROW(SurfaceConfig::from_json(json::parse(R"({
    "disks": [{"m": 2, "h": [0,0]}, {"m": 2, "h": [0,0]}],
    "gluings": [{"left": 0, "arc_i": 1, "right": 1, "arc_j": 2},
                {"left": 0, "arc_i": 2, "right": 1, "arc_j": 1}]})")),
               std::invalid_argument);
  EXPECT_THROW(SurfaceConfig::from_json(json::parse(R"({"disks": [{"m": 3, "h": [0,0,0]}]})")), std::invalid_argument);
  EXPECT_THROW(SurfaceConfig::from_json(json::parse(R"({"disks": [{"m": 3, "h": [1,0]}]})")), std::invalid_argument);
  EXPECT_THROW(SurfaceConfig::from_json(json::parse(R"({"disks": [{"m": 3, "h": [1,0,0]}],
    "gluings": [{"left": 0, "arc_i": 1, "right": 1, "arc_j": 1}]})")),
               std::invalid_argument);
  EXPECT_THROW(SurfaceConfig::from_json(json::parse(R"({"disks": [{"m": 3, "h": [1,0,0]}, {"m": 3, "h": [1,0,0]}],
    "gluings": [{"left": 0, "arc_i": 1, "right": 1, "arc_j": 1}, {"left": 0, "arc_i": 1, "right": 1, "arc_j": 2}]})")),
               std::invalid_argument);
  EXPECT_THROW(SurfaceConfig::from_json(json::parse(R"({"disks": []})")), std::invalid_argument);
}

TEST(SurfaceConfig, WarnsWhenADiskMeetsOneIntervalTwice) {
  // a single square glued to itself along opposite arcs
  auto c = SurfaceConfig{{{4, {0, 1, 0, 1}}}, {{0, 1, 0, 3}}};
  auto t = analyze(c);
  EXPECT_FALSE(t.warnings.empty());
}
