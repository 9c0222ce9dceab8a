#include "dha/surface.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dha {

// ------------------------------------------------------------ foliation

FoliationData::FoliationData(std::vector<int> h) : h_(std::move(h)) {
  int m = static_cast<int>(h_.size());
  if (m < 2) throw std::invalid_argument("foliation data needs m >= 2 marked intervals");
  long sum = std::accumulate(h_.begin(), h_.end(), 0L);
  if (sum != m - 2)
    throw std::invalid_argument("foliation data must satisfy sum h(i) = m - 2 (got sum " + std::to_string(sum) +
                                " for m = " + std::to_string(m) + ")");
}

int FoliationData::wrap(int i) const {
  int m = this->m();
  return ((i - 1) % m + m) % m + 1;
}

FoliationData FoliationData::rotated(int r) const {
  std::vector<int> h(h_.size());
  for (int i = 1; i <= m(); ++i) h[i - 1] = (*this)(i + r);
  return FoliationData(h);
}

std::string FoliationData::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < h_.size(); ++i) os << (i ? "," : "") << h_[i];
  os << ")";
  return os.str();
}

FoliationData parse_foliation(const std::string& text) {
  std::vector<int> h;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    int x = 0;
    try {
      x = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad foliation entry '" + item + "'");
    }
    if (item.find_first_not_of(" \t", pos) != std::string::npos)
      throw std::invalid_argument("bad foliation entry '" + item + "'");
    h.push_back(x);
  }
  return FoliationData(h);
}

FoliationData standard_form() { return FoliationData({0, 1, 0, 1}); }

int angle(int k, const FoliationData& h) {
  if (k < 1 || k > h.m()) throw std::out_of_range("angle: index " + std::to_string(k) + " outside 1.." + std::to_string(h.m()));
  return span(1, k, h);
}

int span(int j, int k, const FoliationData& h) {
  j = h.wrap(j);
  k = h.wrap(k);
  int s = 0;
  for (int l = j; h.wrap(l) != k; ++l) s += 1 - h(l);
  return s;
}

int tau_angle(int i, int k, const FoliationData& h) { return span(i + 1, i + k, h); }

// -------------------------------------------------------------- gluing

int Gluing::left_label(int arc) const {
  // rotated label r satisfies original = r + left_rotation
  int r = e.wrap(arc - left_rotation);
  return r == n ? 0 : r;
}

int Gluing::right_label(int arc) const {
  int own = f.wrap(arc - right_rotation);
  return own == 1 ? 0 : f_label(own);
}

Gluing glue(const FoliationData& left, int left_arc, const FoliationData& right, int right_arc) {
  if (left_arc < 1 || left_arc > left.m()) throw std::out_of_range("glue: left arc index out of range");
  if (right_arc < 1 || right_arc > right.m()) throw std::out_of_range("glue: right arc index out of range");
  Gluing G;
  G.n = left.m();
  G.m = right.m();
  G.left_rotation = left_arc - G.n;  // rotated label n is the glued arc
  G.right_rotation = right_arc - 1;  // own arc 1 is the glued arc
  G.e = left.rotated(G.left_rotation);
  G.f = right.rotated(G.right_rotation);
  int n = G.n, m = G.m;
  auto f = [&](int label) { return G.f(G.f_own(label)); };
  std::vector<int> g(n + m - 2);
  for (int i = 1; i <= n + m - 2; ++i) {
    if (i <= n - 2) g[i - 1] = G.e(i);
    else if (i == n - 1) g[i - 1] = G.e(n - 1) + f(n - 1);
    else if (i <= n + m - 3) g[i - 1] = f(i);
    else g[i - 1] = G.e(n) + f(n + m - 2);
  }
  G.g = FoliationData(g);
  return G;
}

std::pair<FoliationData, FoliationData> cut(const FoliationData& g, int n, int f_glued) {
  int total = g.m();
  int m = total - n + 2;
  if (n < 2 || m < 2) throw std::invalid_argument("cut: pieces need at least two arcs");
  std::vector<int> e(n), f(m);
  for (int i = 1; i <= n - 2; ++i) e[i - 1] = g(i);
  e[n - 2] = g(n - 1) - f_glued;
  int partial = std::accumulate(e.begin(), e.end() - 1, 0);
  e[n - 1] = (n - 2) - partial;
  // right piece in its own labels: own k <-> glued label k + n - 2
  f[0] = f_glued;
  for (int own = 2; own <= m - 1; ++own) f[own - 1] = g(own + n - 2);
  f[m - 1] = g(n + m - 2) - e[n - 1];
  return {FoliationData(e), FoliationData(f)};
}

// -------------------------------------------------------------- chords

std::string GradedChord::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")[" + std::to_string(n) + "]";
}

CrossingInfo crossing(const GradedChord& x, const GradedChord& y) {
  if (x.a >= x.b || y.a >= y.b) throw std::invalid_argument("chords need a < b");
  if (x.a == y.a && x.b == y.b) return {Crossing::Equal, 0};
  if (x.a == y.a || x.a == y.b) return {Crossing::SharedEndpoint, x.a};
  if (x.b == y.a || x.b == y.b) return {Crossing::SharedEndpoint, x.b};
  bool y_a_inside = x.a < y.a && y.a < x.b;
  bool y_b_inside = x.a < y.b && y.b < x.b;
  return {y_a_inside != y_b_inside ? Crossing::Interleaved : Crossing::Disjoint, 0};
}

std::string crossing_name(Crossing c) {
  switch (c) {
    case Crossing::Equal: return "equal";
    case Crossing::Disjoint: return "disjoint";
    case Crossing::SharedEndpoint: return "shared-endpoint-interval";
    case Crossing::Interleaved: return "interleaved";
  }
  return "?";
}

namespace {

NCPolynomial chord(const GradedChord& c, int m) { return zab(c.a, c.b, c.n, m); }

RationalFunctionV v() { return RationalFunctionV::v(); }

}  // namespace

SkeinIdentity skein_commutator(const GradedChord& x, const GradedChord& y, int m) {
  if (crossing(x, y).kind != Crossing::Interleaved) throw std::invalid_argument("no interior crossing");
  if (x.a > y.a) {
    // [y, x]_1 = -[x, y]_1
    SkeinIdentity s = skein_commutator(y, x, m);
    s.lhs = q_bracket(chord(x, m), chord(y, m), 1);
    s.rhs = -s.rhs;
    s.label = "skein " + x.to_string() + " " + y.to_string();
    return s;
  }
  int a = x.a, c = x.b, b = y.a, d = y.b;
  int n = x.n, k = x.n - y.n;
  SkeinIdentity s;
  s.label = "skein " + x.to_string() + " " + y.to_string();
  s.lhs = q_bracket(chord(x, m), chord(y, m), 1);
  if (k == 0) s.rhs = (v() - v().inverse()) * (zab(a, d, n, m) * zab(b, c, n, m));
  else if (k == 1) s.rhs = (v().inverse() - v()) * (zab(a, b, n, m) * zab(c, d, n - 1, m));
  return s;
}

namespace {

// r(i) = (-1)^i for i >= 1, (-1)^{1+i} for i < 1
int r_of_index(int i) {
  int e = i >= 1 ? i : 1 + i;
  return (e % 2 == 0) ? 1 : -1;
}

}  // namespace

SkeinIdentity boundary_skein(const GradedChord& x, const GradedChord& y, int m) {
  CrossingInfo ci = crossing(x, y);
  if (ci.kind != Crossing::SharedEndpoint) throw std::invalid_argument("chords do not share exactly one marked interval");
  int p = ci.shared;
  auto other = [p](const GradedChord& c) { return c.a == p ? c.b : c.a; };
  // X is the chord whose far end comes first going forward from p
  auto ahead = [p, m](int end) { return ((end - p) % m + m) % m; };
  bool swapped = ahead(other(x)) > ahead(other(y));
  const GradedChord& X = swapped ? y : x;
  const GradedChord& Y = swapped ? x : y;
  int lo = std::min(other(X), other(Y)), hi = std::max(other(X), other(Y));
  bool middle = lo < p && p < hi;  // finger configuration
  int i = X.n - Y.n + (middle ? 1 : 0);
  RationalFunctionV rho = RationalFunctionV::vpow(-r_of_index(i));

  NCPolynomial res;
  if (i == 1) {
    // the resolution X # Y: the chord joining the two far ends
    int shift = (middle || p > hi) ? X.n : Y.n;
    res = zab(lo, hi, shift, m);
  }
  SkeinIdentity s;
  s.label = "boundary skein " + x.to_string() + " " + y.to_string();
  NCPolynomial cx = chord(x, m), cy = chord(y, m);
  if (!swapped) {
    s.lhs = cx * cy - cy * cx * rho;
    s.rhs = res;
  } else {
    // X Y - rho Y X = R  <=>  Y X - rho^{-1} X Y = -rho^{-1} R, with x = Y, y = X
    s.lhs = cx * cy - cy * cx * rho.inverse();
    s.rhs = res * (-rho.inverse());
  }
  return s;
}

bool index_identities_hold(const IndexPair& p, int n1, int n2) {
  return p.forward(n1, n2) + p.backward(n1, n2) == 1 && p.forward(n1, n2) == p.forward() + n1 - n2 &&
         p.forward(n1 + 1, n2 + 1) == p.forward(n1, n2);
}

// ------------------------------------------------------ surface config

char disk_family(int index) {
  static const std::string letters = "EFHJKLNPRTUWXY";
  if (index < 0 || index >= static_cast<int>(letters.size())) throw std::out_of_range("too many disks");
  return letters[index];
}

SurfaceConfig SurfaceConfig::from_json(const nlohmann::json& j) {
  SurfaceConfig c;
  if (!j.is_object() || !j.contains("disks") || !j["disks"].is_array() || j["disks"].empty())
    throw std::invalid_argument("config needs a non-empty \"disks\" array");
  for (const auto& d : j["disks"]) {
    DiskSpec s;
    s.m = d.at("m").get<int>();
    s.h = d.at("h").get<std::vector<int>>();
    if (static_cast<int>(s.h.size()) != s.m)
      throw std::invalid_argument("disk foliation vector must have m = " + std::to_string(s.m) + " entries");
    FoliationData check(s.h);  // sum constraint
    c.disks.push_back(s);
  }
  if (c.disks.size() > 14) throw std::invalid_argument("at most 14 disks are supported");
  if (j.contains("gluings")) {
    for (const auto& g : j["gluings"]) {
      GluingEdge e{g.at("left").get<int>(), g.at("arc_i").get<int>(), g.at("right").get<int>(), g.at("arc_j").get<int>()};
      int nd = static_cast<int>(c.disks.size());
      if (e.left < 0 || e.left >= nd || e.right < 0 || e.right >= nd)
        throw std::invalid_argument("gluing refers to a missing disk");
      if (e.arc_i < 1 || e.arc_i > c.disks[e.left].m || e.arc_j < 1 || e.arc_j > c.disks[e.right].m)
        throw std::invalid_argument("gluing arc index out of range");
      if (e.left == e.right && e.arc_i == e.arc_j) throw std::invalid_argument("an arc cannot be glued to itself");
      for (const auto& o : c.gluings) {
        auto uses = [](const GluingEdge& x, int d, int a) {
          return (x.left == d && x.arc_i == a) || (x.right == d && x.arc_j == a);
        };
        if (uses(o, e.left, e.arc_i) || uses(o, e.right, e.arc_j))
          throw std::invalid_argument("each arc can be glued at most once");
      }
      c.gluings.push_back(e);
    }
  }
  SurfaceTopology t = analyze(c);
  if (t.closed_components > 0)
    throw std::invalid_argument("surface is not finitary: a boundary component carries no marked interval");
  return c;
}

nlohmann::json SurfaceConfig::to_json() const {
  nlohmann::json j;
  j["disks"] = nlohmann::json::array();
  for (const auto& d : disks) j["disks"].push_back({{"m", d.m}, {"h", d.h}});
  j["gluings"] = nlohmann::json::array();
  for (const auto& g : gluings)
    j["gluings"].push_back({{"left", g.left}, {"arc_i", g.arc_i}, {"right", g.right}, {"arc_j", g.arc_j}});
  return j;
}

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[b] = a;
    return true;
  }
};

}  // namespace

SurfaceTopology analyze(const SurfaceConfig& c) {
  SurfaceTopology t;
  int nd = static_cast<int>(c.disks.size());
  std::vector<int> offset(nd + 1, 0);
  for (int d = 0; d < nd; ++d) offset[d + 1] = offset[d] + c.disks[d].m;
  int total = offset[nd];
  auto wrap = [&](int d, int k) { int m = c.disks[d].m; return ((k - 1) % m + m) % m + 1; };
  auto id = [&](int d, int k) { return offset[d] + wrap(d, k) - 1; };

  // partner[(d, arc)] = (d', arc') for glued arcs
  std::vector<std::pair<int, int>> partner(total, {-1, 0});
  UnionFind intervals(total), disks(nd);
  int merges = 0;
  for (const auto& g : c.gluings) {
    partner[id(g.left, g.arc_i)] = {g.right, g.arc_j};
    partner[id(g.right, g.arc_j)] = {g.left, g.arc_i};
    // the interval before one glued arc meets the interval after the other
    intervals.unite(id(g.left, g.arc_i - 1), id(g.right, g.arc_j));
    intervals.unite(id(g.left, g.arc_i), id(g.right, g.arc_j - 1));
    if (disks.unite(g.left, g.right)) ++merges;
  }
  t.is_disk = merges == nd - 1 && static_cast<int>(c.gluings.size()) == nd - 1;

  t.interval_class.resize(nd);
  for (int d = 0; d < nd; ++d)
    for (int k = 1; k <= c.disks[d].m; ++k) t.interval_class[d].push_back(intervals.find(id(d, k)));

  // walk the boundary: from interval k of disk d, cross arc k + 1
  std::vector<bool> seen(total, false);
  for (int d = 0; d < nd; ++d)
    for (int k = 1; k <= c.disks[d].m; ++k) {
      if (seen[id(d, k)]) continue;
      int cd = d, ck = k, unglued = 0;
      while (!seen[id(cd, ck)]) {
        seen[id(cd, ck)] = true;
        auto [pd, pa] = partner[id(cd, ck + 1)];
        if (pd < 0) {
          ++unglued;
          ck = wrap(cd, ck + 1);
        } else {
          cd = pd;
          ck = pa;
        }
      }
      ++t.boundary_components;
      if (unglued == 0) ++t.closed_components;
    }

  // two intervals of the same disk ending up in one marked interval
  for (int d = 0; d < nd; ++d) {
    std::vector<int> cls = t.interval_class[d];
    std::sort(cls.begin(), cls.end());
    if (std::adjacent_find(cls.begin(), cls.end()) != cls.end())
      t.warnings.push_back(std::string("disk ") + disk_family(d) +
                           " meets one marked interval twice; the presentation may not embed (too few marked intervals)");
  }
  return t;
}

}  // namespace dha
