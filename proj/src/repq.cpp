#include "dha/repq.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace dha {

// ------------------------------------------------------------ fields

bool is_prime_power(long q, int* p, int* k) {
  if (q < 2) return false;
  long f = 0;
  for (long d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      f = d;
      break;
    }
  if (f == 0) f = q;
  int e = 0;
  long r = q;
  while (r % f == 0) {
    r /= f;
    ++e;
  }
  if (r != 1) return false;
  if (p) *p = static_cast<int>(f);
  if (k) *k = e;
  return true;
}

namespace {

// polynomials over F_p, low -> high
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int p) {
  int db = static_cast<int>(b.size()) - 1;
  int inv_lead = 1;
  for (int x = 1; x < p; ++x)
    if ((b[db] * x) % p == 1) inv_lead = x;
  for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
    int c = (a[i] * inv_lead) % p;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) a[i - db + j] = ((a[i - db + j] - c * b[j]) % p + p) % p;
  }
  a.resize(std::max(0, db));
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

}  // namespace

bool is_irreducible(int p, const std::vector<int>& poly) {
  int deg = static_cast<int>(poly.size()) - 1;
  if (deg < 1) return false;
  if (deg == 1) return true;
  // trial division by every monic polynomial of degree 1..deg/2
  for (int d = 1; d <= deg / 2; ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long code = 0; code < count; ++code) {
      std::vector<int> g(d + 1, 0);
      long c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(poly, g, p).empty()) return false;
    }
  }
  return true;
}

std::shared_ptr<const FiniteField> FiniteField::make(long q) {
  int p = 0, k = 0;
  if (!is_prime_power(q, &p, &k)) throw std::invalid_argument("field size " + std::to_string(q) + " is not a prime power");
  if (q > 256) throw std::invalid_argument("field size " + std::to_string(q) + " is too large");
  if (k == 1) return with_modulus(p, {0, 1});
  long count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (long code = 0; code < count; ++code) {
    std::vector<int> f(k + 1, 0);
    long c = code;
    for (int i = 0; i < k; ++i) {
      f[i] = static_cast<int>(c % p);
      c /= p;
    }
    f[k] = 1;
    if (is_irreducible(p, f)) return with_modulus(p, f);
  }
  throw std::logic_error("no irreducible polynomial found");
}

std::shared_ptr<const FiniteField> FiniteField::with_modulus(int p, const std::vector<int>& modulus) {
  int k = static_cast<int>(modulus.size()) - 1;
  if (k < 1 || modulus.back() != 1) throw std::invalid_argument("modulus must be monic of degree >= 1");
  if (!is_irreducible(p, modulus)) throw std::invalid_argument("modulus is not irreducible");
  std::shared_ptr<FiniteField> F(new FiniteField());
  F->p_ = p;
  F->k_ = k;
  F->q_ = 1;
  for (int i = 0; i < k; ++i) F->q_ *= p;
  F->modulus_ = modulus;
  F->build();
  return F;
}

void FiniteField::build() {
  // element code = sum c_i p^i for the polynomial sum c_i x^i
  auto digits = [&](long a) {
    std::vector<int> d(k_);
    for (int i = 0; i < k_; ++i) {
      d[i] = static_cast<int>(a % p_);
      a /= p_;
    }
    return d;
  };
  auto code = [&](const std::vector<int>& d) {
    long a = 0;
    for (int i = k_ - 1; i >= 0; --i) a = a * p_ + d[i];
    return static_cast<Elt>(a);
  };
  size_t n = static_cast<size_t>(q_);
  add_.assign(n * n, 0);
  mul_.assign(n * n, 0);
  neg_.assign(n, 0);
  inv_.assign(n, 0);
  for (long a = 0; a < q_; ++a) {
    auto da = digits(a);
    std::vector<int> dn(k_);
    for (int i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = code(dn);
    for (long b = 0; b < q_; ++b) {
      auto db = digits(b);
      std::vector<int> s(k_);
      for (int i = 0; i < k_; ++i) s[i] = (da[i] + db[i]) % p_;
      add_[a * q_ + b] = code(s);
      std::vector<int> prod(2 * k_ - 1, 0);
      for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      auto r = poly_mod(prod, modulus_, p_);
      r.resize(k_, 0);
      mul_[a * q_ + b] = code(r);
    }
  }
  for (long a = 1; a < q_; ++a)
    for (long b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Elt>(b);
}

Elt FiniteField::inv(Elt a) const {
  if (a == 0) throw std::domain_error("inverse of zero in finite field");
  return inv_[a];
}

// ------------------------------------------------------------ matrices

bool Mat::is_zero() const {
  return std::all_of(e.begin(), e.end(), [](Elt x) { return x == 0; });
}

Mat Mat::identity(int n) {
  Mat I(n, n);
  for (int i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

Mat mat_mul(const FiniteField& F, const Mat& A, const Mat& B) {
  if (A.cols != B.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  Mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      Elt a = A(i, k);
      if (!a) continue;
      for (int j = 0; j < B.cols; ++j)
        if (B(k, j)) C(i, j) = F.add(C(i, j), F.mul(a, B(k, j)));
    }
  return C;
}

Mat mat_add(const FiniteField& F, const Mat& A, const Mat& B) {
  if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("mat_add: shape mismatch");
  Mat C = A;
  for (size_t i = 0; i < C.e.size(); ++i) C.e[i] = F.add(A.e[i], B.e[i]);
  return C;
}

Mat mat_sub(const FiniteField& F, const Mat& A, const Mat& B) {
  if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("mat_sub: shape mismatch");
  Mat C = A;
  for (size_t i = 0; i < C.e.size(); ++i) C.e[i] = F.sub(A.e[i], B.e[i]);
  return C;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(const FiniteField& F, Mat& A) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < A.cols && r < A.rows; ++c) {
    int p = -1;
    for (int i = r; i < A.rows; ++i)
      if (A(i, c)) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < A.cols; ++j) std::swap(A(p, j), A(r, j));
    Elt inv = F.inv(A(r, c));
    for (int j = 0; j < A.cols; ++j) A(r, j) = F.mul(A(r, j), inv);
    for (int i = 0; i < A.rows; ++i) {
      if (i == r || !A(i, c)) continue;
      Elt f = A(i, c);
      for (int j = 0; j < A.cols; ++j)
        if (A(r, j)) A(i, j) = F.sub(A(i, j), F.mul(f, A(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

int mat_rank(const FiniteField& F, Mat A) { return static_cast<int>(rref(F, A).size()); }

std::vector<Vec> mat_kernel(const FiniteField& F, Mat A) {
  auto piv = rref(F, A);
  std::vector<char> is_piv(A.cols, 0);
  for (int c : piv) is_piv[c] = 1;
  std::vector<Vec> out;
  for (int f = 0; f < A.cols; ++f) {
    if (is_piv[f]) continue;
    Vec x(A.cols, 0);
    x[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = F.neg(A(static_cast<int>(r), f));
    out.push_back(std::move(x));
  }
  return out;
}

Mat mat_inverse(const FiniteField& F, const Mat& A) {
  if (A.rows != A.cols) throw std::invalid_argument("mat_inverse: not square");
  int n = A.rows;
  if (n == 0) return A;
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(F, aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw std::domain_error("mat_inverse: singular");
  Mat R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R(i, j) = aug(i, n + j);
  return R;
}

Vec Echelon::reduce(Vec v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    Elt c = v[piv_[r]];
    if (!c) continue;
    for (int j = 0; j < n_; ++j)
      if (rows_[r][j]) v[j] = F_->sub(v[j], F_->mul(c, rows_[r][j]));
  }
  return v;
}

bool Echelon::add(Vec v) {
  v = reduce(std::move(v));
  int p = -1;
  for (int j = 0; j < n_; ++j)
    if (v[j]) {
      p = j;
      break;
    }
  if (p < 0) return false;
  Elt inv = F_->inv(v[p]);
  for (auto& x : v) x = F_->mul(x, inv);
  for (auto& row : rows_) {
    Elt c = row[p];
    if (!c) continue;
    for (int j = 0; j < n_; ++j)
      if (v[j]) row[j] = F_->sub(row[j], F_->mul(c, v[j]));
  }
  rows_.push_back(std::move(v));
  piv_.push_back(p);
  return true;
}

// --------------------------------------------------------- quiver reps

std::string Interval::to_string() const { return "M[" + std::to_string(a) + "," + std::to_string(b) + ")"; }

QuiverRep interval_rep(int m, const Interval& iv) {
  if (!(1 <= iv.a && iv.a < iv.b && iv.b <= m)) throw std::invalid_argument("interval out of range: " + iv.to_string());
  QuiverRep R;
  R.m = m;
  R.dims.assign(m - 1, 0);
  for (int v = iv.a; v < iv.b; ++v) R.dims[v - 1] = 1;
  for (int v = 0; v + 1 < m - 1; ++v) {
    Mat A(R.dims[v + 1], R.dims[v]);
    if (A.rows && A.cols) A(0, 0) = 1;
    R.maps.push_back(A);
  }
  return R;
}

QuiverRep direct_sum(const QuiverRep& X, const QuiverRep& Y) {
  if (X.m != Y.m) throw std::invalid_argument("direct_sum: different quivers");
  QuiverRep R;
  R.m = X.m;
  for (size_t v = 0; v < X.dims.size(); ++v) R.dims.push_back(X.dims[v] + Y.dims[v]);
  for (size_t v = 0; v < X.maps.size(); ++v) {
    Mat A(R.dims[v + 1], R.dims[v]);
    const Mat& P = X.maps[v];
    const Mat& Q = Y.maps[v];
    for (int i = 0; i < P.rows; ++i)
      for (int j = 0; j < P.cols; ++j) A(i, j) = P(i, j);
    for (int i = 0; i < Q.rows; ++i)
      for (int j = 0; j < Q.cols; ++j) A(P.rows + i, P.cols + j) = Q(i, j);
    R.maps.push_back(A);
  }
  return R;
}

QuiverRep rep_from_intervals(int m, const std::vector<Interval>& ivs) {
  QuiverRep R;
  R.m = m;
  R.dims.assign(m - 1, 0);
  R.maps.clear();
  for (int v = 0; v + 1 < m - 1; ++v) R.maps.emplace_back(0, 0);
  for (const auto& iv : ivs) R = direct_sum(R, interval_rep(m, iv));
  return R;
}

namespace {

// Linear map phi = (phi_v) |-> (N_alpha phi_v - phi_{v+1} M_alpha)_alpha.
// Unknown layout: for each vertex v, N_v x M_v row-major.
// Equation layout: for each arrow v -> v+1, N_{v+1} x M_v row-major.
struct HomSystem {
  std::vector<int> var_off, eq_off;
  int nvar = 0, neq = 0;
  Mat delta;
};

HomSystem hom_system(const FiniteField& F, const QuiverRep& M, const QuiverRep& N) {
  HomSystem S;
  int r = static_cast<int>(M.dims.size());
  for (int v = 0; v < r; ++v) {
    S.var_off.push_back(S.nvar);
    S.nvar += N.dims[v] * M.dims[v];
  }
  for (int v = 0; v + 1 < r; ++v) {
    S.eq_off.push_back(S.neq);
    S.neq += N.dims[v + 1] * M.dims[v];
  }
  S.delta = Mat(S.neq, S.nvar);
  for (int v = 0; v + 1 < r; ++v) {
    const Mat& Na = N.maps[v];
    const Mat& Ma = M.maps[v];
    int mv = M.dims[v], nv = N.dims[v], nw = N.dims[v + 1], mw = M.dims[v + 1];
    // N_alpha phi_v: entry (i, j) = sum_k Na(i,k) phi_v(k,j)
    for (int i = 0; i < nw; ++i)
      for (int j = 0; j < mv; ++j) {
        int row = S.eq_off[v] + i * mv + j;
        for (int k = 0; k < nv; ++k)
          if (Na(i, k)) {
            int col = S.var_off[v] + k * mv + j;
            S.delta(row, col) = F.add(S.delta(row, col), Na(i, k));
          }
        // - phi_{v+1} M_alpha: entry (i, j) = - sum_k phi_{v+1}(i,k) Ma(k,j)
        for (int k = 0; k < mw; ++k)
          if (Ma(k, j)) {
            int col = S.var_off[v + 1] + i * mw + k;
            S.delta(row, col) = F.sub(S.delta(row, col), Ma(k, j));
          }
      }
  }
  return S;
}

}  // namespace

HomSpace hom_space(const FiniteField& F, const QuiverRep& M, const QuiverRep& N) {
  HomSystem S = hom_system(F, M, N);
  HomSpace H;
  for (const Vec& x : mat_kernel(F, S.delta)) {
    std::vector<Mat> phi;
    for (size_t v = 0; v < M.dims.size(); ++v) {
      Mat P(N.dims[v], M.dims[v]);
      std::copy(x.begin() + S.var_off[v], x.begin() + S.var_off[v] + P.rows * P.cols, P.e.begin());
      phi.push_back(P);
    }
    H.basis.push_back(std::move(phi));
  }
  H.dim = static_cast<int>(H.basis.size());
  return H;
}

ExtSpace ext1_space(const FiniteField& F, const QuiverRep& M, const QuiverRep& N) {
  HomSystem S = hom_system(F, M, N);
  Echelon E(F, S.neq);
  for (int c = 0; c < S.nvar; ++c) {
    Vec col(S.neq);
    for (int r = 0; r < S.neq; ++r) col[r] = S.delta(r, c);
    E.add(col);
  }
  ExtSpace X;
  for (int u = 0; u < S.neq; ++u) {
    Vec e(S.neq, 0);
    e[u] = 1;
    if (!E.add(e)) continue;
    std::vector<Mat> eta;
    for (size_t v = 0; v + 1 < M.dims.size(); ++v) {
      Mat A(N.dims[v + 1], M.dims[v]);
      std::copy(e.begin() + S.eq_off[v], e.begin() + S.eq_off[v] + A.rows * A.cols, A.e.begin());
      eta.push_back(A);
    }
    X.reps.push_back(std::move(eta));
  }
  X.dim = static_cast<int>(X.reps.size());
  return X;
}

QuiverRep extension_middle(const FiniteField&, const QuiverRep& M, const QuiverRep& N, const std::vector<Mat>& eta) {
  QuiverRep E = direct_sum(N, M);
  for (size_t v = 0; v < E.maps.size(); ++v) {
    Mat& A = E.maps[v];
    const Mat& t = eta[v];
    for (int i = 0; i < t.rows; ++i)
      for (int j = 0; j < t.cols; ++j) A(i, N.dims[v] + j) = t(i, j);
  }
  return E;
}

std::vector<Interval> barcode(const FiniteField& F, const QuiverRep& M) {
  int r = static_cast<int>(M.dims.size());
  // rk[i][j] = rank of the composite M_i -> M_j, 1-based vertices, i <= j
  std::vector<std::vector<int>> rk(r + 2, std::vector<int>(r + 2, 0));
  for (int i = 1; i <= r; ++i) {
    Mat P = Mat::identity(M.dims[i - 1]);
    rk[i][i] = M.dims[i - 1];
    for (int j = i + 1; j <= r; ++j) {
      P = mat_mul(F, M.maps[j - 2], P);
      rk[i][j] = mat_rank(F, P);
    }
  }
  auto R = [&](int i, int j) { return (i < 1 || j > r || i > j) ? 0 : rk[i][j]; };
  std::vector<Interval> out;
  for (int a = 1; a <= r; ++a)
    for (int b = a + 1; b <= r + 1; ++b) {
      int mult = R(a, b - 1) - R(a - 1, b - 1) - R(a, b) + R(a - 1, b);
      for (int k = 0; k < mult; ++k) out.push_back({a, b});
    }
  return out;
}

// ------------------------------------------------------ derived objects

DerivedObject::DerivedObject(std::vector<Summand> s) {
  std::map<std::tuple<int, int, int>, int> acc;
  for (const auto& x : s) {
    if (x.mult < 0) throw std::invalid_argument("negative multiplicity");
    if (!(x.a < x.b)) throw std::invalid_argument("summand needs a < b");
    if (x.mult) acc[{x.n, x.a, x.b}] += x.mult;
  }
  for (const auto& [k, c] : acc) s_.push_back({std::get<1>(k), std::get<2>(k), std::get<0>(k), c});
  // canonical order: a-major, then b, then shift
  std::sort(s_.begin(), s_.end());
}

int DerivedObject::total_multiplicity() const {
  int t = 0;
  for (const auto& x : s_) t += x.mult;
  return t;
}

DerivedObject DerivedObject::shifted(int k) const {
  auto s = s_;
  for (auto& x : s) x.n += k;
  return DerivedObject(s);
}

DerivedObject DerivedObject::operator+(const DerivedObject& o) const {
  auto s = s_;
  s.insert(s.end(), o.s_.begin(), o.s_.end());
  return DerivedObject(s);
}

std::vector<long> DerivedObject::k0_class(int m) const {
  std::vector<long> c(m - 1, 0);
  for (const auto& x : s_) {
    long sgn = (x.n % 2 == 0) ? 1 : -1;
    for (int v = x.a; v < x.b; ++v) c[v - 1] += sgn * x.mult;
  }
  return c;
}

std::string DerivedObject::to_string() const {
  if (s_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& x : s_) {
    for (int k = 0; k < x.mult; ++k) {
      if (!first) os << " + ";
      first = false;
      os << "M[" << x.a << "," << x.b << ")[" << x.n << "]";
    }
  }
  return os.str();
}

size_t DerivedObject::hash() const {
  size_t h = 1469598103934665603ull;
  for (const auto& x : s_)
    for (int v : {x.a, x.b, x.n, x.mult}) h = (h ^ static_cast<size_t>(v + 1000)) * 1099511628211ull;
  return h;
}

DerivedObject parse_object(const std::string& text) {
  // "0" | term (+ term)* ; term := [k*] (M[a,b)[n] | S[i][n] | M[a,b) | S[i])
  std::vector<Summand> out;
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) -> void {
    throw std::invalid_argument("cannot parse object '" + text + "': " + why);
  };
  auto integer = [&]() {
    skip();
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected integer");
    int v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
    return neg ? -v : v;
  };
  auto expect = [&](char c) {
    skip();
    if (i >= text.size() || text[i] != c) fail(std::string("expected '") + c + "'");
    ++i;
  };
  skip();
  if (text.substr(i) == "0") return DerivedObject();
  for (;;) {
    skip();
    int mult = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      mult = integer();
      expect('*');
      skip();
    }
    if (i >= text.size()) fail("unexpected end");
    char c = text[i++];
    int a = 0, b = 0;
    if (c == 'M') {
      expect('[');
      a = integer();
      expect(',');
      b = integer();
      skip();
      if (i < text.size() && (text[i] == ')' || text[i] == ']')) ++i;
      else fail("expected ')'");
    } else if (c == 'S') {
      expect('[');
      a = integer();
      b = a + 1;
      expect(']');
    } else {
      fail(std::string("unexpected '") + c + "'");
    }
    int n = 0;
    skip();
    if (i < text.size() && text[i] == '[') {
      ++i;
      n = integer();
      expect(']');
    }
    out.push_back({a, b, n, mult});
    skip();
    if (i >= text.size()) break;
    if (text[i] == '+' || text[i] == ',') ++i;
    else fail("expected '+'");
  }
  return DerivedObject(out);
}

int interval_hom(int a, int b, int c, int d) { return (c <= a && a < d && d <= b) ? 1 : 0; }
int interval_ext(int a, int b, int c, int d) { return (a < c && c <= b && b < d) ? 1 : 0; }

// ------------------------------------------------ projective complexes

const std::vector<int>& PComplex::at(int deg) const {
  static const std::vector<int> empty;
  if (deg < lo || deg > hi()) return empty;
  return terms[deg - lo];
}

Mat PComplex::diff(int deg) const {
  int src = static_cast<int>(at(deg).size()), dst = static_cast<int>(at(deg + 1).size());
  if (deg < lo || deg > hi() || src == 0 || dst == 0) return Mat(dst, src);
  return d[deg - lo];
}

namespace {

// Puts the complex into the normal shape: terms contiguous, d sized consistently.
PComplex make_complex(std::map<int, std::vector<int>> terms, std::map<int, Mat> d) {
  PComplex C;
  if (terms.empty()) return C;
  C.lo = terms.begin()->first;
  int hi = terms.rbegin()->first;
  for (int k = C.lo; k <= hi; ++k) C.terms.push_back(terms.count(k) ? terms[k] : std::vector<int>{});
  for (int k = C.lo; k <= hi; ++k) {
    int src = static_cast<int>(C.terms[k - C.lo].size());
    int dst = k + 1 <= hi ? static_cast<int>(C.terms[k + 1 - C.lo].size()) : 0;
    auto it = d.find(k);
    if (it != d.end() && it->second.rows == dst && it->second.cols == src) C.d.push_back(it->second);
    else C.d.emplace_back(dst, src);
  }
  return C;
}

void trim(PComplex& C) {
  while (!C.terms.empty() && C.terms.back().empty()) {
    C.terms.pop_back();
    C.d.pop_back();
  }
  while (!C.terms.empty() && C.terms.front().empty()) {
    C.terms.erase(C.terms.begin());
    C.d.erase(C.d.begin());
    ++C.lo;
  }
  if (!C.d.empty()) C.d.back() = Mat(0, static_cast<int>(C.terms.back().size()));
}

}  // namespace

PComplex resolve(const DerivedObject& X, int m) {
  std::map<int, std::vector<int>> terms;
  std::map<int, std::vector<std::pair<int, int>>> edges;  // deg -> (src index, dst index)
  for (const auto& s : X.summands()) {
    if (!(1 <= s.a && s.a < s.b && s.b <= m)) throw std::invalid_argument("summand out of range for m = " + std::to_string(m));
    for (int k = 0; k < s.mult; ++k) {
      auto& top = terms[-s.n];
      top.push_back(s.a);
      if (s.b < m) {
        auto& bot = terms[-s.n - 1];
        bot.push_back(s.b);
        edges[-s.n - 1].push_back({static_cast<int>(bot.size()) - 1, static_cast<int>(top.size()) - 1});
      }
    }
  }
  std::map<int, Mat> d;
  for (const auto& [deg, es] : edges) {
    Mat A(static_cast<int>(terms[deg + 1].size()), static_cast<int>(terms[deg].size()));
    for (auto [s, t] : es) A(t, s) = 1;
    d[deg] = A;
  }
  PComplex C = make_complex(terms, d);
  trim(C);
  return C;
}

void minimize(const FiniteField& F, PComplex& C) {
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t k = 0; k + 1 < C.terms.size() && !changed; ++k) {
      Mat& D = C.d[k];
      for (int t = 0; t < D.rows && !changed; ++t)
        for (int s = 0; s < D.cols && !changed; ++s) {
          if (!D(t, s) || C.terms[k + 1][t] != C.terms[k][s]) continue;
          // Gaussian elimination of the contractible summand P -id-> P
          Elt ci = F.inv(D(t, s));
          Mat N(D.rows - 1, D.cols - 1);
          for (int i = 0, ii = 0; i < D.rows; ++i) {
            if (i == t) continue;
            for (int j = 0, jj = 0; j < D.cols; ++j) {
              if (j == s) continue;
              Elt x = D(i, j);
              if (D(i, s) && D(t, j)) x = F.sub(x, F.mul(F.mul(D(i, s), ci), D(t, j)));
              N(ii, jj++) = x;
            }
            ++ii;
          }
          D = N;
          C.terms[k].erase(C.terms[k].begin() + s);
          C.terms[k + 1].erase(C.terms[k + 1].begin() + t);
          if (k > 0) {
            Mat& P = C.d[k - 1];  // drop row s
            Mat Q(P.rows - 1, P.cols);
            for (int i = 0, ii = 0; i < P.rows; ++i) {
              if (i == s) continue;
              for (int j = 0; j < P.cols; ++j) Q(ii, j) = P(i, j);
              ++ii;
            }
            P = Q;
          }
          {
            Mat& P = C.d[k + 1];  // drop column t
            Mat Q(P.rows, P.cols - 1);
            for (int i = 0; i < P.rows; ++i)
              for (int j = 0, jj = 0; j < P.cols; ++j)
                if (j != t) Q(i, jj++) = P(i, j);
            P = Q;
          }
          changed = true;
        }
    }
  }
  trim(C);
}

DerivedObject homology_object(const FiniteField& F, const PComplex& C, int m) {
  // Evaluating P_i at vertex v gives k iff i <= v. Homology at degree deg,
  // vertex v, with the structure maps given by inclusion of summands.
  std::vector<Summand> out;
  for (int deg = C.lo; deg <= C.hi(); ++deg) {
    const auto& T = C.at(deg);
    if (T.empty()) continue;
    Mat Dout = C.diff(deg), Din = C.diff(deg - 1);
    const auto& Tin = C.at(deg - 1);
    const auto& Tout = C.at(deg + 1);
    int r = m - 1;
    // Z_v: kernel of Dout restricted to summands with vertex <= v, as vectors in C^deg
    std::vector<std::vector<Vec>> Z(r + 2), B(r + 2);
    for (int v = 1; v <= r; ++v) {
      std::vector<int> cols, rows;
      for (int s = 0; s < static_cast<int>(T.size()); ++s)
        if (T[s] <= v) cols.push_back(s);
      for (int t = 0; t < static_cast<int>(Tout.size()); ++t)
        if (Tout[t] <= v) rows.push_back(t);
      Mat A(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
      for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) A(i, j) = Dout(rows[i], cols[j]);
      for (const Vec& x : mat_kernel(F, A)) {
        Vec y(T.size(), 0);
        for (size_t j = 0; j < cols.size(); ++j) y[cols[j]] = x[j];
        Z[v].push_back(y);
      }
      for (int s = 0; s < static_cast<int>(Tin.size()); ++s)
        if (Tin[s] <= v) {
          Vec y(T.size(), 0);
          for (int t = 0; t < static_cast<int>(T.size()); ++t) y[t] = Din(t, s);
          B[v].push_back(y);
        }
    }
    int n = static_cast<int>(T.size());
    auto span_rank = [&](const std::vector<Vec>& a, const std::vector<Vec>& b) {
      Echelon E(F, n);
      for (const auto& x : a) E.add(x);
      for (const auto& x : b) E.add(x);
      return E.rank();
    };
    // rank of H_i -> H_j for i <= j: dim (Z_i + B_j) / B_j
    auto R = [&](int i, int j) {
      if (i < 1 || j > r || i > j) return 0;
      return span_rank(Z[i], B[j]) - span_rank({}, B[j]);
    };
    for (int a = 1; a <= r; ++a)
      for (int b = a + 1; b <= r + 1; ++b) {
        int mult = R(a, b - 1) - R(a - 1, b - 1) - R(a, b) + R(a - 1, b);
        if (mult < 0) throw std::logic_error("negative barcode multiplicity");
        if (mult) out.push_back({a, b, -deg, mult});
      }
  }
  return DerivedObject(out);
}

int HomIndex::find(int deg, int t, int s, int cols) const {
  auto it = slot.find(deg);
  if (it == slot.end()) return -1;
  return it->second[static_cast<size_t>(t) * cols + s];
}

HomIndex hom_index(const PComplex& X, const PComplex& Y, int k) {
  HomIndex H;
  H.k = k;
  for (int deg = X.lo; deg <= X.hi(); ++deg) {
    const auto& S = X.at(deg);
    const auto& T = Y.at(deg + k);
    if (S.empty() || T.empty()) continue;
    std::vector<int> sl(T.size() * S.size(), -1);
    for (size_t t = 0; t < T.size(); ++t)
      for (size_t s = 0; s < S.size(); ++s)
        if (T[t] <= S[s]) {
          sl[t * S.size() + s] = H.size();
          H.entries.push_back({deg, static_cast<int>(t), static_cast<int>(s)});
        }
    H.slot[deg] = std::move(sl);
  }
  return H;
}

Mat hom_differential(const FiniteField& F, const PComplex& X, const PComplex& Y, int k) {
  HomIndex src = hom_index(X, Y, k), dst = hom_index(X, Y, k + 1);
  Mat D(dst.size(), src.size());
  Elt sign = (k % 2 == 0) ? F.neg(1) : 1;  // f |-> d_Y f - (-1)^k f d_X
  for (int c = 0; c < src.size(); ++c) {
    auto [deg, t, s] = src.entries[c];
    int ncols = static_cast<int>(X.at(deg).size());
    Mat dY = Y.diff(deg + k);
    for (int t2 = 0; t2 < dY.rows; ++t2)
      if (dY(t2, t)) {
        int r = dst.find(deg, t2, s, ncols);
        if (r < 0) throw std::logic_error("hom complex: composite leaves the allowed pattern");
        D(r, c) = F.add(D(r, c), dY(t2, t));
      }
    Mat dX = X.diff(deg - 1);
    int pcols = static_cast<int>(X.at(deg - 1).size());
    for (int s2 = 0; s2 < dX.cols; ++s2)
      if (dX(s, s2)) {
        int r = dst.find(deg - 1, t, s2, pcols);
        if (r < 0) throw std::logic_error("hom complex: composite leaves the allowed pattern");
        D(r, c) = F.add(D(r, c), F.mul(sign, dX(s, s2)));
      }
  }
  return D;
}

// ------------------------------------------------------ the category

DerivedCategory::DerivedCategory(int m, std::shared_ptr<const FiniteField> F) : m_(m), F_(std::move(F)) {
  if (m < 2) throw std::invalid_argument("need m >= 2");
}

std::shared_ptr<const PComplex> DerivedCategory::complex(const DerivedObject& X) {
  auto it = complexes_.find(X);
  if (it != complexes_.end()) return it->second;
  auto C = std::make_shared<const PComplex>(resolve(X, m_));
  complexes_.emplace(X, C);
  return C;
}

std::shared_ptr<const DerivedCategory::HomClasses> DerivedCategory::hom_classes(const DerivedObject& X,
                                                                                  const DerivedObject& Y) {
  auto key = std::make_pair(X, Y);
  auto it = homs_.find(key);
  if (it != homs_.end()) return it->second;
  auto H = std::make_shared<HomClasses>();
  H->X = complex(X);
  H->Y = complex(Y);
  H->idx = hom_index(*H->X, *H->Y, 0);
  int n = H->idx.size();
  Mat D0 = hom_differential(*F_, *H->X, *H->Y, 0);
  Mat Dm = hom_differential(*F_, *H->X, *H->Y, -1);
  Echelon E(*F_, n);
  for (int c = 0; c < Dm.cols; ++c) {
    Vec col(n);
    for (int r = 0; r < n; ++r) col[r] = Dm(r, c);
    E.add(col);
  }
  for (Vec& z : mat_kernel(*F_, D0))
    if (E.add(z)) H->basis.push_back(z);
  homs_.emplace(key, H);
  return H;
}

std::map<int, Mat> DerivedCategory::Morphism::matrices() const {
  std::map<int, Mat> out;
  const auto& X = *h->X;
  const auto& Y = *h->Y;
  for (int deg = X.lo; deg <= X.hi(); ++deg) out[deg] = Mat(static_cast<int>(Y.at(deg).size()), static_cast<int>(X.at(deg).size()));
  for (int e = 0; e < h->idx.size(); ++e)
    if (coords[e]) {
      auto [deg, t, s] = h->idx.entries[e];
      out[deg](t, s) = coords[e];
    }
  return out;
}

void DerivedCategory::for_each_dhom(const DerivedObject& X, const DerivedObject& Y,
                                    const std::function<void(const Morphism&)>& fn) {
  Morphism f;
  f.h = hom_classes(X, Y);
  int r = static_cast<int>(f.h->basis.size());
  int n = f.h->idx.size();
  std::vector<Elt> c(r, 0);
  long q = F_->q();
  for (;;) {
    f.coords.assign(n, 0);
    for (int i = 0; i < r; ++i)
      if (c[i])
        for (int e = 0; e < n; ++e)
          if (f.h->basis[i][e]) f.coords[e] = F_->add(f.coords[e], F_->mul(c[i], f.h->basis[i][e]));
    fn(f);
    int i = 0;
    while (i < r && ++c[i] == q) c[i++] = 0;
    if (i == r) break;
  }
}

std::vector<DerivedCategory::Morphism> DerivedCategory::enumerate_dhoms(const DerivedObject& X, const DerivedObject& Y) {
  std::vector<Morphism> out;
  for_each_dhom(X, Y, [&](const Morphism& f) { out.push_back(f); });
  return out;
}

DerivedObject DerivedCategory::cone(const Morphism& f) {
  const PComplex& X = *f.h->X;
  const PComplex& Y = *f.h->Y;
  auto fm = f.matrices();
  // C^d = X^{d+1} + Y^d, d_C = [[-d_X, 0], [f, d_Y]]
  std::map<int, std::vector<int>> terms;
  int lo = std::min(X.terms.empty() ? 0 : X.lo - 1, Y.terms.empty() ? 0 : Y.lo);
  int hi = std::max(X.terms.empty() ? 0 : X.hi() - 1, Y.terms.empty() ? 0 : Y.hi());
  for (int deg = lo; deg <= hi; ++deg) {
    auto t = X.at(deg + 1);
    const auto& y = Y.at(deg);
    t.insert(t.end(), y.begin(), y.end());
    terms[deg] = t;
  }
  std::map<int, Mat> d;
  for (int deg = lo; deg < hi; ++deg) {
    int x1 = static_cast<int>(X.at(deg + 1).size()), y0 = static_cast<int>(Y.at(deg).size());
    int x2 = static_cast<int>(X.at(deg + 2).size()), y1 = static_cast<int>(Y.at(deg + 1).size());
    Mat A(x2 + y1, x1 + y0);
    Mat dX = X.diff(deg + 1), dY = Y.diff(deg);
    for (int i = 0; i < x2; ++i)
      for (int j = 0; j < x1; ++j) A(i, j) = F_->neg(dX(i, j));
    if (x1 && y1) {
      const Mat& fd = fm.at(deg + 1);
      for (int i = 0; i < y1; ++i)
        for (int j = 0; j < x1; ++j) A(x2 + i, j) = fd(i, j);
    }
    for (int i = 0; i < y1; ++i)
      for (int j = 0; j < y0; ++j) A(x2 + i, x1 + j) = dY(i, j);
    d[deg] = A;
  }
  PComplex C = make_complex(terms, d);
  minimize(*F_, C);
  return homology_object(*F_, C, m_);
}

std::map<int, int> DerivedCategory::dhom_dims(const DerivedObject& X, const DerivedObject& Y) {
  auto key = std::make_pair(X, Y);
  auto it = dims_.find(key);
  if (it != dims_.end()) return it->second;
  std::map<int, int> out;
  for (const auto& x : X.summands())
    for (const auto& y : Y.summands()) {
      int w = x.mult * y.mult;
      // Hom(A[n], B[n'][k]) = Hom(A, B) if k = n - n', Ext^1(A, B) if k = n - n' + 1
      int h = interval_hom(x.a, x.b, y.a, y.b), e = interval_ext(x.a, x.b, y.a, y.b);
      if (h) out[x.n - y.n] += w * h;
      if (e) out[x.n - y.n + 1] += w * e;
    }
  for (auto i = out.begin(); i != out.end();) i = i->second ? std::next(i) : out.erase(i);
  dims_.emplace(key, out);
  return out;
}

std::map<int, int> DerivedCategory::dhom_dims_by_complex(const DerivedObject& X, const DerivedObject& Y) {
  auto CX = complex(X), CY = complex(Y);
  std::map<int, int> out;
  if (CX->terms.empty() || CY->terms.empty()) return out;
  int kmin = CY->lo - CX->hi() - 1, kmax = CY->hi() - CX->lo + 1;
  for (int k = kmin; k <= kmax; ++k) {
    Mat Dk = hom_differential(*F_, *CX, *CY, k);
    Mat Dk1 = hom_differential(*F_, *CX, *CY, k - 1);
    int dim = Dk.cols - mat_rank(*F_, Dk) - mat_rank(*F_, Dk1);
    if (dim) out[k] = dim;
  }
  return out;
}

int DerivedCategory::dhom_dim(const DerivedObject& X, const DerivedObject& Y, int k) {
  auto t = dhom_dims(X, Y);
  auto it = t.find(k);
  return it == t.end() ? 0 : it->second;
}

long DerivedCategory::euler_form(const DerivedObject& X, const DerivedObject& Y) {
  long s = 0;
  for (auto [k, d] : dhom_dims(X, Y)) s += (k % 2 == 0 ? 1 : -1) * d;
  return s;
}

mpz_class gl_order(long q, int n) {
  mpz_class r = 1, qn = 1, qq = q;
  for (int i = 0; i < n; ++i) qn *= qq;
  mpz_class qi = 1;
  for (int i = 0; i < n; ++i) {
    r *= qn - qi;
    qi *= qq;
  }
  return r;
}

mpz_class DerivedCategory::aut_count(const DerivedObject& X) {
  mpz_class n = 0;
  for_each_dhom(X, X, [&](const Morphism& f) {
    if (cone(f).is_zero()) ++n;
  });
  return n;
}

mpz_class DerivedCategory::aut_order(const DerivedObject& X) {
  auto it = aut_.find(X);
  if (it != aut_.end()) return it->second;
  // End(X) modulo its radical is a product of matrix algebras, one per
  // isotypic component: |Aut| = q^{dim End - sum mult^2} prod |GL_mult|.
  int end = dhom_dim(X, X, 0), sq = 0;
  mpz_class r = 1;
  for (const auto& s : X.summands()) {
    sq += s.mult * s.mult;
    r *= gl_order(q(), s.mult);
  }
  mpz_class qq = q(), p;
  mpz_pow_ui(p.get_mpz_t(), qq.get_mpz_t(), static_cast<unsigned long>(end - sq));
  r *= p;
  aut_.emplace(X, r);
  return r;
}

}  // namespace dha
