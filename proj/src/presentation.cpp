#include "dha/presentation.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <memory>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dha {

namespace {

RationalFunctionV v() { return RationalFunctionV::v(); }
RationalFunctionV vp(int e) { return RationalFunctionV::vpow(e); }
// v^{-1} / (v^2 - 1)
RationalFunctionV self_ext_constant() { return v().inverse() / (v() * v() - 1); }
int sign_pow(int k) { return (k % 2 == 0) ? 1 : -1; }  // (-1)^k

NCPolynomial gen(char fam, int i, int n) { return NCPolynomial::gen(fam, i, n); }

std::string fmt(const char* tag, std::initializer_list<std::pair<const char*, int>> kv) {
  std::ostringstream os;
  os << tag;
  for (const auto& [k, x] : kv) os << " " << k << "=" << x;
  return os.str();
}

void collect(const NCPolynomial& p, std::set<Generator>& out) {
  for (const auto& [w, c] : p.terms())
    for (const auto& g : w) out.insert(g);
}

}  // namespace

ShiftWindow parse_window(const std::string& text) {
  auto pos = text.find("..");
  if (pos == std::string::npos) throw std::invalid_argument("shift window must look like lo..hi");
  ShiftWindow w;
  try {
    size_t used = 0;
    w.lo = std::stoi(text.substr(0, pos), &used);
    if (used != pos) throw std::invalid_argument("");
    std::string rest = text.substr(pos + 2);
    w.hi = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("shift window must look like lo..hi");
  }
  if (w.lo > w.hi) throw std::invalid_argument("shift window needs lo <= hi");
  return w;
}

// ---------------------------------------------------------- RelationSet

std::vector<Generator> RelationSet::generators() const {
  std::set<Generator> s;
  for (const auto& r : rels_) {
    collect(r.lhs, s);
    collect(r.rhs, s);
  }
  return {s.begin(), s.end()};
}

void RelationSet::add(const std::string& label, const NCPolynomial& lhs, const NCPolynomial& rhs) {
  auto it = std::lower_bound(labels_sorted_.begin(), labels_sorted_.end(), label);
  if (it != labels_sorted_.end() && *it == label) throw std::logic_error("duplicate relation label: " + label);
  labels_sorted_.insert(it, label);
  rels_.push_back({label, lhs, rhs});
}

bool RelationSet::add_in_window(const ShiftWindow& w, const std::string& label, const NCPolynomial& lhs,
                                const NCPolynomial& rhs) {
  std::set<Generator> s;
  collect(lhs, s);
  collect(rhs, s);
  for (const auto& g : s)
    if (!w.contains(g.n)) return false;
  add(label, lhs, rhs);
  return true;
}

void RelationSet::append(const RelationSet& o) {
  for (const auto& r : o.rels_) add(r.label, r.lhs, r.rhs);
}

void RelationSet::set_assignment(int oracle_m, GeneratorMap images, bool invert_v) {
  oracle_m_ = oracle_m;
  images_ = std::move(images);
  invert_v_ = invert_v;
}

RelationSet RelationSet::renamed(const GeneratorMap& f, const std::string& name) const {
  RelationSet r(name);
  for (const auto& x : rels_) r.add(x.label, substitute(x.lhs, f), substitute(x.rhs, f));
  return r;
}

nlohmann::json RelationSet::to_json() const {
  nlohmann::json j;
  j["name"] = name_;
  j["generators"] = nlohmann::json::array();
  auto gens = generators();
  for (const auto& g : gens) j["generators"].push_back(g.to_string());
  j["relations"] = nlohmann::json::array();
  for (const auto& r : rels_) j["relations"].push_back({{"label", r.label}, {"lhs", r.lhs.to_string()}, {"rhs", r.rhs.to_string()}});
  if (has_assignment()) {
    nlohmann::json a = nlohmann::json::object();
    for (const auto& g : gens) a[g.to_string()] = images_(g).to_string();
    j["assignment"] = {{"images", a}, {"quiver_m", oracle_m_}, {"z", "z[i,n] -> S_i[n]"}, {"invert_v", invert_v_}};
  } else {
    j["assignment"] = nullptr;
  }
  return j;
}

std::string RelationSet::to_text() const {
  std::ostringstream os;
  os << "# " << name_ << "\n";
  os << "# generators:";
  for (const auto& g : generators()) os << " " << g.to_string();
  os << "\n";
  for (const auto& r : rels_) os << r.label << ": " << r.lhs.to_string() << " = " << r.rhs.to_string() << "\n";
  if (has_assignment()) {
    os << "# assignment (then z[i,n] -> S_i[n] on A_" << oracle_m_ - 1 << (invert_v_ ? ", v -> 1/v" : "") << "):\n";
    for (const auto& g : generators()) os << "#   " << g.to_string() << " -> " << images_(g).to_string() << "\n";
  } else {
    os << "# no assignment: emission only\n";
  }
  return os.str();
}

// ------------------------------------------------------------- quiver

int cartan(int i, int j) {
  if (i == j) return 2;
  if (i - j == 1 || j - i == 1) return -1;
  return 0;
}

RelationSet quiver_relations(int m, const ShiftWindow& w) {
  if (m < 2) throw std::invalid_argument("quiver relations need m >= 2");
  RelationSet rs("quiver A_" + std::to_string(m - 1));
  int r = m - 1;
  for (int n = w.lo; n <= w.hi; ++n)
    for (int i = 1; i <= r; ++i)
      for (int j = 1; j <= r; ++j) {
        int c = cartan(i, j);
        if (c == 0 && i < j) {
          rs.add(fmt("H1 commute", {{"i", i}, {"j", j}, {"n", n}}), q_bracket(gen('z', i, n), gen('z', j, n), 1), {});
        } else if (c == -1) {
          NCPolynomial zi = gen('z', i, n), zj = gen('z', j, n);
          NCPolynomial serre = zi * zi * zj - zi * zj * zi * (v() + v().inverse()) + zj * zi * zi;
          rs.add(fmt("H1 serre", {{"i", i}, {"j", j}, {"n", n}}), serre, {});
        }
      }
  for (int n = w.lo; n <= w.hi; ++n)
    for (int k = 1; n + k <= w.hi; ++k)
      for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) {
          NCPolynomial a = gen('z', i, n), b = gen('z', j, n + k);
          int e = (k == 1 ? -1 : sign_pow(k)) * cartan(i, j);
          NCPolynomial rhs = b * a * vp(e);
          if (k == 1 && i == j) rhs += NCPolynomial(self_ext_constant());
          rs.add(fmt(k == 1 ? "H2" : "H3", {{"i", i}, {"j", j}, {"n", n}, {"k", k}}), a * b, rhs);
        }
  rs.set_assignment(m, [](const Generator& g) { return NCPolynomial::gen(g); });
  return rs;
}

RelationSet s_relations(int m, const ShiftWindow& w) {
  RelationSet rs("arc relations on A_" + std::to_string(m - 1));
  auto z = [m](int a, int b, int n) { return zab(a, b, n, m); };
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b)
      for (int c = b + 1; c <= m; ++c)
        for (int n = w.lo; n <= w.hi; ++n) {
          rs.add_in_window(w, fmt("S0", {{"a", a}, {"b", b}, {"c", c}, {"n", n}}), q_bracket(z(b, c, n), z(a, b, n), v()),
                           z(a, c, n));
          rs.add_in_window(w, fmt("S1", {{"a", a}, {"b", b}, {"c", c}, {"n", n}}),
                           q_bracket(z(a, c, n), z(b, c, n - 1), v()), z(a, b, n));
          rs.add_in_window(w, fmt("S1'", {{"a", a}, {"b", b}, {"c", c}, {"n", n}}),
                           q_bracket(z(a, b, n + 1), z(a, c, n), v()), z(b, c, n));
          for (int d = c + 1; d <= m; ++d) {
            rs.add_in_window(w, fmt("S2", {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"n", n}}),
                             q_bracket(z(a, d, n), z(b, c, n - 1), 1), {});
            for (int k = w.lo; k <= w.hi; ++k)
              rs.add(fmt("S3", {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"n", n}, {"k", k}}),
                     q_bracket(z(a, b, n), z(c, d, k), 1), {});
          }
        }
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b)
      for (int n = w.lo; n <= w.hi; ++n)
        for (int k = 1; n + k <= w.hi; ++k)
          rs.add(fmt("S4", {{"a", a}, {"b", b}, {"n", n}, {"k", k}}), q_bracket(z(a, b, n), z(a, b, n + k), vp(2 * sign_pow(k))),
                 k == 1 ? NCPolynomial(self_ext_constant()) : NCPolynomial());
  rs.set_assignment(m, [](const Generator& g) { return NCPolynomial::gen(g); });
  return rs;
}

RelationSet skein_relations(int m, const ShiftWindow& w) {
  RelationSet rs("interleaved skein on A_" + std::to_string(m - 1));
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b)
      for (int c = b + 1; c <= m; ++c)
        for (int d = c + 1; d <= m; ++d)
          for (int n = w.lo; n <= w.hi; ++n)
            for (int n2 = w.lo; n2 <= w.hi; ++n2) {
              SkeinIdentity s = skein_commutator({a, c, n}, {b, d, n2}, m);
              rs.add_in_window(w, s.label, s.lhs, s.rhs);
            }
  rs.set_assignment(m, [](const Generator& g) { return NCPolynomial::gen(g); });
  return rs;
}

RelationSet boundary_skein_relations(int m, const ShiftWindow& w) {
  RelationSet rs("boundary skein on A_" + std::to_string(m - 1));
  std::vector<std::pair<int, int>> chords;
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b) chords.emplace_back(a, b);
  for (const auto& [a1, b1] : chords)
    for (const auto& [a2, b2] : chords)
      for (int n = w.lo; n <= w.hi; ++n)
        for (int n2 = w.lo; n2 <= w.hi; ++n2) {
          GradedChord x{a1, b1, n}, y{a2, b2, n2};
          if (crossing(x, y).kind != Crossing::SharedEndpoint) continue;
          SkeinIdentity s = boundary_skein(x, y, m);
          rs.add_in_window(w, s.label, s.lhs, s.rhs);
        }
  rs.set_assignment(m, [](const Generator& g) { return NCPolynomial::gen(g); });
  return rs;
}

// ------------------------------------------------------- minimal disk

NCPolynomial convolution(const FoliationData& h, int i, char fam) {
  int m = h.m();
  std::vector<NCPolynomial> items;
  for (int k = m - 1; k >= 1; --k) items.push_back(gen(fam, h.wrap(i + k), tau_angle(i, k, h)));
  return iterated_bracket(items, v());
}

RelationSet minimal_disk_relations(const FoliationData& h, const ShiftWindow& w, char fam) {
  int m = h.m();
  RelationSet rs(std::string("minimal disk ") + fam + " m=" + std::to_string(m) + " h=" + h.to_string());
  std::string F(1, fam);
  // self-extension
  for (int i = 1; i <= m; ++i)
    for (int n = w.lo; n <= w.hi; ++n)
      for (int k = 1; n + k <= w.hi; ++k)
        rs.add(fmt(("R1 " + F).c_str(), {{"i", i}, {"n", n}, {"k", k}}),
               q_bracket(gen(fam, i, n), gen(fam, i, n + k), vp(2 * sign_pow(k))),
               k == 1 ? NCPolynomial(self_ext_constant()) : NCPolynomial());
  // adjacent commutativity: E_{i+1,t} against E_{i,u}, k = t - (u - h(i))
  for (int i = 1; i <= m; ++i)
    for (int t = w.lo; t <= w.hi; ++t)
      for (int u = w.lo; u <= w.hi; ++u) {
        int k = t - u + h(i);
        if (k == 1) continue;
        int e = k > 1 ? sign_pow(k + 1) : sign_pow(k);
        rs.add(fmt(("R2 adjacent " + F).c_str(), {{"i", i}, {"t", t}, {"u", u}}),
               q_bracket(gen(fam, h.wrap(i + 1), t), gen(fam, i, u), vp(e)), {});
      }
  // convolution
  for (int i = 1; i <= m; ++i) {
    NCPolynomial conv = convolution(h, i, fam);
    for (int s = w.lo - 2 * m; s <= w.hi + 2 * m; ++s)
      rs.add_in_window(w, fmt(("R2 convolution " + F).c_str(), {{"i", i}, {"s", s}}), gen(fam, i, h(i) + s),
                       suspend(conv, s));
  }
  // far commutativity
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      int d = std::min(j - i, m - (j - i));
      if (d < 2) continue;
      for (int t = w.lo; t <= w.hi; ++t)
        for (int u = w.lo; u <= w.hi; ++u)
          rs.add(fmt(("R3 " + F).c_str(), {{"i", i}, {"j", j}, {"t", t}, {"u", u}}),
                 q_bracket(gen(fam, i, t), gen(fam, j, u), 1), {});
    }
  GeneratorMap psi = psi_map(h, fam);
  rs.set_assignment(m, psi);
  return rs;
}

RelationSet cyclic_family(const FoliationData& h, int i, int s, char fam) {
  int m = h.m();
  RelationSet rs(std::string("cyclic ladder ") + fam + " i=" + std::to_string(i) + " h=" + h.to_string());
  for (int r = 0; r <= m - 2; ++r) {
    std::vector<NCPolynomial> left, right;
    for (int k = r; k >= 1; --k) left.push_back(gen(fam, h.wrap(i + k), tau_angle(i, k, h) + 1 + s));
    left.push_back(gen(fam, i, h(i) + s));
    for (int k = m - 1; k >= r + 1; --k) right.push_back(gen(fam, h.wrap(i + k), tau_angle(i, k, h) + s));
    rs.add(fmt((std::string("ladder ") + fam).c_str(), {{"i", i}, {"rung", r}, {"s", s}}), iterated_bracket(left, v()),
           iterated_bracket(right, v()));
  }
  rs.set_assignment(m, psi_map(h, fam));
  return rs;
}

GeneratorMap psi_map(const FoliationData& h, char fam) {
  return [h, fam](const Generator& g) -> NCPolynomial {
    if (g.fam != fam) return NCPolynomial::gen(g);
    int m = h.m();
    if (g.i < 1 || g.i > m) throw std::invalid_argument("arc label out of range: " + g.to_string());
    if (g.i < m) return gen('z', g.i, g.n - angle(g.i, h));
    return zab(1, m, g.n - h(m), m);
  };
}

GeneratorMap phi_map(const FoliationData& h, char fam) {
  return [h, fam](const Generator& g) -> NCPolynomial {
    if (g.fam != 'z') return NCPolynomial::gen(g);
    if (g.i < 1 || g.i >= h.m()) throw std::invalid_argument("vertex out of range: " + g.to_string());
    return gen(fam, g.i, g.n + angle(g.i, h));
  };
}

RelationSet local_skein_relations(const FoliationData& h, int lmin, int lmax) {
  if (h.m() != 4) throw std::invalid_argument("the local skein computation lives on a disk with 4 marked intervals");
  RelationSet rs("local skein h=" + h.to_string());
  NCPolynomial X = q_bracket(gen('E', 2, 1), gen('E', 1, h(1)), v());
  NCPolynomial Y = q_bracket(gen('E', 3, 1 - h(2)), gen('E', 2, 0), v());
  for (int l = lmin; l <= lmax; ++l) {
    NCPolynomial rhs;
    if (l == 1) rhs = gen('E', 2, 1) * gen('E', 4, h(4) + h(1)) * (v() - v().inverse());
    if (l == 0) rhs = gen('E', 1, h(1)) * gen('E', 3, 1 - h(2)) * (v().inverse() - v());
    rs.add(fmt("local skein", {{"l", l}}), q_bracket(X, suspend(Y, l), 1), rhs);
  }
  rs.set_assignment(4, psi_map(h, 'E'));
  return rs;
}

// ------------------------------------------------------------- gluing

namespace {

NCPolynomial beta_left(const Gluing& gl) {
  int n = gl.n;
  std::vector<NCPolynomial> items;
  for (int k = n - 1; k >= 1; --k) items.push_back(gen('G', k, span(1, k, gl.g)));
  return suspend(iterated_bracket(items, v()), 1 - gl.e(n));
}

NCPolynomial beta_right(const Gluing& gl) {
  int n = gl.n, m = gl.m;
  std::vector<NCPolynomial> items;
  for (int k = n + m - 2; k >= n; --k) items.push_back(gen('G', k, span(n, k, gl.g)));
  return suspend(iterated_bracket(items, v()), 1 - gl.f(1));
}

}  // namespace

NCPolynomial beta_image(const Gluing& gl, const Generator& x) {
  int n = gl.n, m = gl.m;
  if (x.fam == 'E') {
    if (x.i < 1 || x.i > n) throw std::invalid_argument("no such left arc: " + x.to_string());
    if (x.i == n) return suspend(beta_left(gl), x.n - 1);
    return gen('G', x.i, x.n);
  }
  if (x.fam == 'F') {
    if (x.i < n - 1 || x.i > n + m - 2) throw std::invalid_argument("no such right arc: " + x.to_string());
    if (x.i == n - 1) return suspend(beta_right(gl), x.n - 1);
    return gen('G', x.i, x.n);
  }
  return NCPolynomial::gen(x);
}

GeneratorMap beta_map(const Gluing& g) {
  return [g](const Generator& x) { return beta_image(g, x); };
}

GeneratorMap alpha_map(const Gluing& g) {
  return [g](const Generator& x) -> NCPolynomial {
    if (x.fam != 'G') return NCPolynomial::gen(x);
    if (x.i < 1 || x.i > g.n + g.m - 2) throw std::invalid_argument("no such glued arc: " + x.to_string());
    return gen(x.i <= g.n - 1 ? 'E' : 'F', x.i, x.n);
  };
}

RelationSet gluing_relations(const Gluing& gl, const ShiftWindow& w) {
  int n = gl.n, m = gl.m;
  RelationSet rs("gluing " + gl.e.to_string() + " * " + gl.f.to_string() + " -> " + gl.g.to_string());
  rs.append(minimal_disk_relations(gl.e, w, 'E'));
  // right disk: own label k is arc k + n - 2
  GeneratorMap relabel = [&gl](const Generator& x) {
    return x.fam == 'F' ? gen('F', gl.f_label(x.i), x.n) : NCPolynomial::gen(x);
  };
  RelationSet right = minimal_disk_relations(gl.f, w, 'F').renamed(relabel, "");
  rs.append(right);
  for (int s = w.lo; s <= w.hi; ++s) rs.add(fmt("G1", {{"s", s}}), gen('E', n, s), gen('F', n - 1, s));
  std::set<std::pair<int, int>> neighbours = {{1, n - 1}, {1, m + n - 2}, {n - 1, n - 1},
                                              {n - 1, n}, {n, n},         {n, m + n - 2}};
  neighbours.insert({n, n - 1});  // the glued arc itself
  for (int k = 1; k <= n; ++k)
    for (int l = n - 1; l <= n + m - 2; ++l) {
      if (neighbours.count({k, l})) continue;
      for (int s = w.lo; s <= w.hi; ++s)
        for (int t = w.lo; t <= w.hi; ++t)
          rs.add(fmt("G3", {{"k", k}, {"l", l}, {"s", s}, {"t", t}}), q_bracket(gen('E', k, s), gen('F', l, t), 1), {});
    }
  GeneratorMap beta = beta_map(gl), psi = psi_map(gl.g, 'G');
  rs.set_assignment(n + m - 2, [beta, psi](const Generator& x) { return substitute(beta(x), psi); });
  return rs;
}

CompositeDisk compose_tree(const SurfaceConfig& c, const std::vector<int>& order) {
  int nd = static_cast<int>(c.disks.size());
  std::vector<bool> in(nd, false);
  int root = 0;
  if (!order.empty()) root = c.gluings.at(order.front()).left;
  in[root] = true;
  CompositeDisk cd{FoliationData(c.disks[root].h), {}};
  for (int a = 1; a <= c.disks[root].m; ++a) cd.images[{root, a}] = gen('G', a, 0);
  for (int idx : order) {
    const GluingEdge& e = c.gluings.at(idx);
    int d_in = e.left, a_in = e.arc_i, d_new = e.right, a_new = e.arc_j;
    if (!in[d_in]) {
      std::swap(d_in, d_new);
      std::swap(a_in, a_new);
    }
    if (!in[d_in] || in[d_new]) throw std::invalid_argument("gluing order does not grow a tree of disks");
    const NCPolynomial& img = cd.images.at({d_in, a_in});
    if (img.size() != 1 || img.terms().begin()->first.size() != 1 || !img.terms().begin()->second.is_one())
      throw std::invalid_argument("arc is already glued");
    int x = img.terms().begin()->first.front().i;
    Gluing gl = glue(cd.g, x, FoliationData(c.disks[d_new].h), a_new);
    NCPolynomial be = beta_left(gl), bf = beta_right(gl);
    GeneratorMap old_to_new = [&gl, x, &be](const Generator& g) -> NCPolynomial {
      if (g.fam != 'G') return NCPolynomial::gen(g);
      if (g.i == x) return suspend(be, g.n - 1);
      return gen('G', gl.left_label(g.i), g.n);
    };
    for (auto& [key, p] : cd.images) p = substitute(p, old_to_new);
    for (int a = 1; a <= c.disks[d_new].m; ++a) {
      int lab = gl.right_label(a);
      cd.images[{d_new, a}] = lab == 0 ? suspend(bf, -1) : gen('G', lab, 0);
    }
    cd.g = gl.g;
    in[d_new] = true;
  }
  return cd;
}

PentagonReport pentagon_check(const SurfaceConfig& c, const std::vector<int>& order_a, const std::vector<int>& order_b,
                              const ShiftWindow& w, long q) {
  PentagonReport rep;
  CompositeDisk A = compose_tree(c, order_a), B = compose_tree(c, order_b);
  int m = A.g.m();
  if (B.g.m() != m) return rep;
  // label in A -> label in B for every arc that is still a single generator
  std::vector<int> perm(m + 1, 0);
  auto single = [](const NCPolynomial& p) -> int {
    if (p.size() != 1 || p.terms().begin()->first.size() != 1 || !p.terms().begin()->second.is_one()) return 0;
    return p.terms().begin()->first.front().i;
  };
  for (const auto& [key, pa] : A.images) {
    int la = single(pa), lb = single(B.images.at(key));
    if ((la == 0) != (lb == 0)) return rep;
    if (la) perm[la] = lb;
  }
  int r = perm[1] - 1;
  for (int k = 1; k <= m; ++k)
    if (perm[k] == 0 || perm[k] != B.g.wrap(k + r)) return rep;
  rep.arcs_match = true;
  rep.foliation_match = B.g.rotated(r) == A.g;

  GeneratorMap to_b = [&B, r](const Generator& x) {
    return x.fam == 'G' ? gen('G', B.g.wrap(x.i + r), x.n) : NCPolynomial::gen(x);
  };
  auto key_set = [](const RelationSet& rs) {
    std::set<std::pair<std::string, std::string>> s;
    // an identity and its negative are the same relation ([x,y]_1 = -[y,x]_1)
    for (const auto& x : rs.relations()) {
      NCPolynomial d = x.lhs - x.rhs;
      std::string a = d.to_string(), b = (-d).to_string();
      s.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
    }
    return s;
  };
  rep.relations_match =
      key_set(minimal_disk_relations(A.g, w, 'G').renamed(to_b, "")) == key_set(minimal_disk_relations(B.g, w, 'G'));

  HallAlgebra H(m, q);
  Assignment psi = composed_assignment(psi_map(B.g, 'G'), simples_assignment());
  HallAlgebra::GeneratorCache cache;
  rep.images_match = true;
  for (const auto& [key, pa] : A.images)
    for (int s : {0, 1})
      if (H.evaluate(suspend(substitute(pa, to_b), s), psi, &cache) != H.evaluate(suspend(B.images.at(key), s), psi, &cache))
        rep.images_match = false;
  return rep;
}

NaivePresentation naive_presentation(const SurfaceConfig& c, const ShiftWindow& w) {
  NaivePresentation out;
  out.topology = analyze(c);
  const SurfaceTopology& t = out.topology;
  int nd = static_cast<int>(c.disks.size());
  RelationSet& rs = out.relations;
  rs = RelationSet(nd == 1 ? "naive presentation (disk)" : "naive presentation");
  for (int d = 0; d < nd; ++d) rs.append(minimal_disk_relations(FoliationData(c.disks[d].h), w, disk_family(d)));

  std::map<std::pair<int, int>, std::pair<int, int>> partner;
  for (size_t gi = 0; gi < c.gluings.size(); ++gi) {
    const auto& e = c.gluings[gi];
    partner[{e.left, e.arc_i}] = {e.right, e.arc_j};
    partner[{e.right, e.arc_j}] = {e.left, e.arc_i};
    for (int s = w.lo; s <= w.hi; ++s)
      rs.add(fmt("G1", {{"gluing", static_cast<int>(gi)}, {"s", s}}), gen(disk_family(e.left), e.arc_i, s),
             gen(disk_family(e.right), e.arc_j, s));
  }
  auto ends = [&](int d, int a) {
    int m = c.disks[d].m;
    int before = ((a - 2) % m + m) % m;  // interval a-1, 0-based
    int after = (a - 1) % m;             // interval a
    return std::pair<int, int>{t.interval_class[d][before], t.interval_class[d][after]};
  };
  for (int d1 = 0; d1 < nd; ++d1)
    for (int d2 = d1 + 1; d2 < nd; ++d2)
      for (int a1 = 1; a1 <= c.disks[d1].m; ++a1)
        for (int a2 = 1; a2 <= c.disks[d2].m; ++a2) {
          auto it = partner.find({d1, a1});
          if (it != partner.end() && it->second == std::make_pair(d2, a2)) continue;
          auto [p1, q1] = ends(d1, a1);
          auto [p2, q2] = ends(d2, a2);
          if (p1 == p2 || p1 == q2 || q1 == p2 || q1 == q2) continue;
          for (int s = w.lo; s <= w.hi; ++s)
            for (int u = w.lo; u <= w.hi; ++u)
              rs.add(std::string("G3 ") + disk_family(d1) + std::to_string(a1) + " " + disk_family(d2) +
                         std::to_string(a2) + " s=" + std::to_string(s) + " t=" + std::to_string(u),
                     q_bracket(gen(disk_family(d1), a1, s), gen(disk_family(d2), a2, u), 1), {});
        }

  if (t.is_disk) {
    // grow the tree breadth-first from disk 0
    std::vector<int> order;
    std::vector<bool> in(nd, false), used(c.gluings.size(), false);
    in[0] = true;
    bool grown = true;
    while (grown) {
      grown = false;
      for (size_t gi = 0; gi < c.gluings.size(); ++gi) {
        const auto& e = c.gluings[gi];
        if (used[gi] || in[e.left] == in[e.right]) continue;
        used[gi] = true;
        in[e.left] = in[e.right] = true;
        order.push_back(static_cast<int>(gi));
        grown = true;
      }
    }
    SurfaceConfig rooted = c;
    // compose_tree roots at the left disk of the first gluing; make it disk 0
    if (!order.empty() && rooted.gluings[order.front()].left != 0) {
      auto& e = rooted.gluings[order.front()];
      std::swap(e.left, e.right);
      std::swap(e.arc_i, e.arc_j);
    }
    CompositeDisk cd = compose_tree(rooted, order);
    auto images = std::make_shared<std::map<std::pair<int, int>, NCPolynomial>>(cd.images);
    std::map<char, int> disk_of;
    for (int d = 0; d < nd; ++d) disk_of[disk_family(d)] = d;
    GeneratorMap psi = psi_map(cd.g, 'G');
    rs.set_assignment(cd.g.m(), [images, disk_of, psi](const Generator& x) -> NCPolynomial {
      auto it = disk_of.find(x.fam);
      if (it == disk_of.end()) return NCPolynomial::gen(x);
      return substitute(suspend(images->at({it->second, x.i}), x.n), psi);
    });
  }
  return out;
}

// ---------------------------------------------------------------- PBW

namespace {

bool lex_less(const Generator& x, const Generator& y) { return x.i != y.i ? x.i < y.i : x.n < y.n; }

NCPolynomial F(int i, int j) { return gen('F', i, j); }

// x y with y < x, rewritten as a combination of sorted pairs or shorter words
NCPolynomial swap_rule(const Generator& x, const Generator& y) {
  int xi = x.i, xj = x.n, yi = y.i, yj = y.n;
  if (yi == xi) return F(yi, yj) * F(xi, xj) * v();                                 // F_ac F_ab = v F_ab F_ac
  if (yj == xj) return F(yi, yj) * F(xi, xj) * v();                                 // F_bc F_ac = v F_ac F_bc
  if (yj == xi) return F(yi, yj) * F(xi, xj) * v().inverse() + F(yi, xj);           // F_bc F_ab
  if (yj < xi || yj > xj) return F(yi, yj) * F(xi, xj);                             // disjoint or nested
  return F(yi, yj) * F(xi, xj) - F(yi, xj) * F(xi, yj) * (v().inverse() - v());     // F_bd F_ac
}

}  // namespace

bool pbw_sorted(const Word& w) {
  for (size_t k = 0; k + 1 < w.size(); ++k)
    if (lex_less(w[k + 1], w[k])) return false;
  return true;
}

RelationSet pbw_relations(int m) {
  if (m < 2) throw std::invalid_argument("PBW relations need m >= 2");
  RelationSet rs("PBW relations for sl_" + std::to_string(m));
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b)
      for (int c = b + 1; c <= m; ++c) {
        rs.add(fmt("Ld", {{"a", a}, {"b", b}, {"c", c}}), q_bracket(F(b, c), F(a, b), v().inverse()), F(a, c));
        rs.add(fmt("Le", {{"a", a}, {"b", b}, {"c", c}}), q_bracket(F(a, c), F(b, c), v().inverse()), {});
        rs.add(fmt("Lf", {{"a", a}, {"b", b}, {"c", c}}), q_bracket(F(a, b), F(a, c), v().inverse()), {});
        for (int d = c + 1; d <= m; ++d) {
          rs.add(fmt("La", {{"a", a}, {"b", b}, {"c", c}, {"d", d}}), q_bracket(F(a, c), F(b, d), 1),
                 F(a, d) * F(b, c) * (v().inverse() - v()));
          rs.add(fmt("Lb", {{"a", a}, {"b", b}, {"c", c}, {"d", d}}), q_bracket(F(a, b), F(c, d), 1), {});
          rs.add(fmt("Lc", {{"a", a}, {"b", b}, {"c", c}, {"d", d}}), q_bracket(F(a, d), F(b, c), 1), {});
        }
      }
  rs.set_assignment(
      m,
      [m](const Generator& g) {
        if (g.fam != 'F') return NCPolynomial::gen(g);
        return zab(g.i, g.n, 0, m);
      },
      true);
  return rs;
}

NCPolynomial pbw_normal_form(const NCPolynomial& x, RewriteOrder order) {
  NCPolynomial out;
  std::deque<std::pair<Word, RationalFunctionV>> work(x.terms().begin(), x.terms().end());
  while (!work.empty()) {
    auto [w, c] = std::move(work.front());
    work.pop_front();
    int pos = -1;
    for (size_t k = 0; k + 1 < w.size(); ++k)
      if (lex_less(w[k + 1], w[k])) {
        pos = static_cast<int>(k);
        if (order == RewriteOrder::Leftmost) break;
      }
    if (pos < 0) {
      out.add_term(w, c);
      continue;
    }
    NCPolynomial rep = swap_rule(w[pos], w[pos + 1]);
    for (const auto& [rw, rc] : rep.terms()) {
      Word nw(w.begin(), w.begin() + pos);
      nw.insert(nw.end(), rw.begin(), rw.end());
      nw.insert(nw.end(), w.begin() + pos + 2, w.end());
      work.emplace_back(std::move(nw), c * rc);
    }
  }
  return out;
}

// --------------------------------------------------------- verification

bool VerificationReport::pass() const { return failures() == 0; }

int VerificationReport::failures() const {
  int f = 0;
  for (const auto& r : results) f += r.report.pass ? 0 : 1;
  return f;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["status"] = pass() ? "pass" : "fail";
  j["checked"] = results.size();
  j["failures"] = failures();
  j["results"] = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json e = r.report.to_json();
    e["label"] = r.label;
    e["q"] = r.q;
    j["results"].push_back(e);
  }
  return j;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << name << ": " << (pass() ? "pass" : "FAIL") << " (" << results.size() - failures() << "/" << results.size()
     << " checks)\n";
  for (const auto& r : results)
    if (!r.report.pass)
      os << "  FAIL q=" << r.q << " " << r.label << "\n    lhs - rhs = " << r.report.diff.to_string() << "\n";
  return os.str();
}

VerificationReport verify_relation_set(const RelationSet& rs, const std::vector<long>& qs, int jobs) {
  if (!rs.has_assignment() && rs.size() > 0)
    throw std::invalid_argument("relation set '" + rs.name() + "' has no assignment: emission only");
  VerificationReport rep;
  rep.name = rs.name();
  const auto& rels = rs.relations();
  size_t total = rels.size() * qs.size();
  rep.results.resize(total);
  if (total == 0) return rep;
  for (long q : qs) FiniteField::make(q);  // validate before spawning workers

  std::atomic<size_t> next{0};
  std::vector<std::string> errors(std::max(1, jobs));
  auto worker = [&](int id) {
    try {
      std::map<long, std::unique_ptr<HallAlgebra>> algebras;
      std::map<long, HallAlgebra::GeneratorCache> caches;
      Assignment assign = composed_assignment(rs.images(), simples_assignment());
      for (size_t t = next++; t < total; t = next++) {
        const Relation& r = rels[t / qs.size()];
        long q = qs[t % qs.size()];
        auto& H = algebras[q];
        if (!H) H = std::make_unique<HallAlgebra>(rs.oracle_m(), q);
        NCPolynomial lhs = r.lhs, rhs = r.rhs;
        if (rs.inverts_v()) {
          auto inv = [](const RationalFunctionV& c) { return c.invert_v(); };
          lhs = map_scalars(lhs, inv);
          rhs = map_scalars(rhs, inv);
        }
        rep.results[t] = {r.label, q, H->verify_identity(lhs, rhs, assign, &caches[q])};
      }
    } catch (const std::exception& e) {
      errors[id] = e.what();
      next = total;
    }
  };
  if (jobs <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker, i);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);
  return rep;
}

}  // namespace dha
