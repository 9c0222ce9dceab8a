#pragma once
// Representations of the linearly oriented A_{m-1} quiver (arrows i -> i+1)
// over a finite field, and the bounded derived category realised by
// complexes of indecomposable projectives P_i = M[i, m).

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace dha {

using Elt = std::uint16_t;

bool is_prime_power(long q, int* p = nullptr, int* k = nullptr);

class FiniteField {
 public:
  // Prime fields directly; for p^k the lexicographically smallest monic
  // irreducible of degree k is used unless a modulus is supplied.
  static std::shared_ptr<const FiniteField> make(long q);
  static std::shared_ptr<const FiniteField> with_modulus(int p, const std::vector<int>& modulus);

  int p() const { return p_; }
  int k() const { return k_; }
  long q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }  // low -> high, monic

  Elt add(Elt a, Elt b) const { return add_[a * q_ + b]; }
  Elt mul(Elt a, Elt b) const { return mul_[a * q_ + b]; }
  Elt neg(Elt a) const { return neg_[a]; }
  Elt sub(Elt a, Elt b) const { return add_[a * q_ + neg_[b]]; }
  Elt inv(Elt a) const;

 private:
  FiniteField() = default;
  void build();
  int p_ = 2, k_ = 1;
  long q_ = 2;
  std::vector<int> modulus_;
  std::vector<Elt> add_, mul_, neg_, inv_;
};

bool is_irreducible(int p, const std::vector<int>& poly);

// ------------------------------------------------------------ matrices

struct Mat {
  int rows = 0, cols = 0;
  std::vector<Elt> e;
  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), e(static_cast<size_t>(r) * c, 0) {}
  Elt& operator()(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
  Elt operator()(int i, int j) const { return e[static_cast<size_t>(i) * cols + j]; }
  bool operator==(const Mat& o) const = default;
  bool is_zero() const;
  static Mat identity(int n);
};

using Vec = std::vector<Elt>;

Mat mat_mul(const FiniteField& F, const Mat& A, const Mat& B);
Mat mat_add(const FiniteField& F, const Mat& A, const Mat& B);
Mat mat_sub(const FiniteField& F, const Mat& A, const Mat& B);
int mat_rank(const FiniteField& F, Mat A);
std::vector<Vec> mat_kernel(const FiniteField& F, Mat A);  // basis of {x : Ax = 0}
Mat mat_inverse(const FiniteField& F, const Mat& A);       // throws if singular

// Incrementally maintained reduced row basis.
class Echelon {
 public:
  Echelon(const FiniteField& F, int n) : F_(&F), n_(n) {}
  bool add(Vec v);  // true if v was independent
  Vec reduce(Vec v) const;
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  const FiniteField* F_;
  int n_;
  std::vector<Vec> rows_;
  std::vector<int> piv_;
};

// --------------------------------------------------------- quiver reps

struct Interval {
  int a = 1, b = 2;  // M[a,b), 1 <= a < b <= m
  auto operator<=>(const Interval&) const = default;
  std::string to_string() const;
};

struct QuiverRep {
  int m = 2;                // quiver A_{m-1}
  std::vector<int> dims;    // size m-1, 0-based vertex
  std::vector<Mat> maps;    // size m-2, maps[v]: dims[v+1] x dims[v]
};

QuiverRep interval_rep(int m, const Interval& iv);
QuiverRep direct_sum(const QuiverRep& X, const QuiverRep& Y);
QuiverRep rep_from_intervals(int m, const std::vector<Interval>& ivs);

struct HomSpace {
  int dim = 0;
  std::vector<std::vector<Mat>> basis;  // per vertex component maps
};

struct ExtSpace {
  int dim = 0;
  std::vector<std::vector<Mat>> reps;  // cocycles eta (per arrow) spanning a complement of the coboundaries
};

HomSpace hom_space(const FiniteField& F, const QuiverRep& M, const QuiverRep& N);
ExtSpace ext1_space(const FiniteField& F, const QuiverRep& M, const QuiverRep& N);
// middle term E of 0 -> N -> E -> M -> 0 classified by eta
QuiverRep extension_middle(const FiniteField& F, const QuiverRep& M, const QuiverRep& N, const std::vector<Mat>& eta);
std::vector<Interval> barcode(const FiniteField& F, const QuiverRep& M);

// ------------------------------------------------------ derived objects

struct Summand {
  int a = 1, b = 2, n = 0, mult = 1;
  auto operator<=>(const Summand&) const = default;
};

class DerivedObject {
 public:
  DerivedObject() = default;
  explicit DerivedObject(std::vector<Summand> s);
  static DerivedObject indecomposable(int a, int b, int n = 0) { return DerivedObject({{a, b, n, 1}}); }
  static DerivedObject simple(int i, int n = 0) { return indecomposable(i, i + 1, n); }

  const std::vector<Summand>& summands() const { return s_; }
  bool is_zero() const { return s_.empty(); }
  int total_multiplicity() const;
  DerivedObject shifted(int k) const;
  DerivedObject operator+(const DerivedObject& o) const;  // direct sum
  auto operator<=>(const DerivedObject&) const = default;
  bool operator==(const DerivedObject&) const = default;

  // class in K_0 = Z^{m-1}: sum of (-1)^n dim-vectors
  std::vector<long> k0_class(int m) const;
  std::string to_string() const;  // "M[1,2)[0] + M[1,3)[1]" ; "0"
  size_t hash() const;

 private:
  std::vector<Summand> s_;
};

DerivedObject parse_object(const std::string& text);

struct DerivedObjectHash {
  size_t operator()(const DerivedObject& x) const { return x.hash(); }
};

// Dimensions of Hom and Ext^1 between interval modules (linear orientation).
int interval_hom(int a, int b, int c, int d);
int interval_ext(int a, int b, int c, int d);

// ------------------------------------------------ projective complexes

// Complex of projectives: terms[k] lists vertex labels of the summands
// P_i in degree lo + k; d[k] : terms[k] -> terms[k+1]. A matrix entry from
// P_i to P_j may be nonzero only if j <= i.
struct PComplex {
  int lo = 0;
  std::vector<std::vector<int>> terms;
  std::vector<Mat> d;  // d.size() == terms.size(); the last one maps to an empty term

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  const std::vector<int>& at(int deg) const;
  Mat diff(int deg) const;  // C^deg -> C^{deg+1}, possibly 0 x n or n x 0
};

PComplex resolve(const DerivedObject& X, int m);
void minimize(const FiniteField& F, PComplex& C);
DerivedObject homology_object(const FiniteField& F, const PComplex& C, int m);

// Coordinates of the graded Hom complex Hom^k(X, Y).
struct HomIndex {
  int k = 0;
  struct Entry {
    int deg, t, s;
  };
  std::vector<Entry> entries;
  std::map<int, std::vector<int>> slot;  // deg -> row-major (t, s) -> entry index or -1
  int size() const { return static_cast<int>(entries.size()); }
  int find(int deg, int t, int s, int cols) const;
};

HomIndex hom_index(const PComplex& X, const PComplex& Y, int k);
Mat hom_differential(const FiniteField& F, const PComplex& X, const PComplex& Y, int k);  // Hom^k -> Hom^{k+1}

// ------------------------------------------------------ the category

class DerivedCategory {
 public:
  DerivedCategory(int m, std::shared_ptr<const FiniteField> F);

  int m() const { return m_; }
  long q() const { return F_->q(); }
  const FiniteField& field() const { return *F_; }
  std::shared_ptr<const FiniteField> field_ptr() const { return F_; }

  struct HomClasses {
    std::shared_ptr<const PComplex> X, Y;
    HomIndex idx;
    std::vector<Vec> basis;  // chain maps spanning a complement of the null-homotopic ones
  };

  // A representative chain map of one class in Hom^0(X, Y).
  struct Morphism {
    std::shared_ptr<const HomClasses> h;
    Vec coords;
    std::map<int, Mat> matrices() const;  // degree -> (Y^deg x X^deg)
  };

  std::shared_ptr<const PComplex> complex(const DerivedObject& X);
  std::shared_ptr<const HomClasses> hom_classes(const DerivedObject& X, const DerivedObject& Y);
  std::vector<Morphism> enumerate_dhoms(const DerivedObject& X, const DerivedObject& Y);
  void for_each_dhom(const DerivedObject& X, const DerivedObject& Y, const std::function<void(const Morphism&)>& fn);
  DerivedObject cone(const Morphism& f);

  // degree k -> dim Hom(X, Y[k]); closed form from interval Hom/Ext tables
  std::map<int, int> dhom_dims(const DerivedObject& X, const DerivedObject& Y);
  // the same table computed as cohomology of the Hom complex
  std::map<int, int> dhom_dims_by_complex(const DerivedObject& X, const DerivedObject& Y);
  int dhom_dim(const DerivedObject& X, const DerivedObject& Y, int k);
  long euler_form(const DerivedObject& X, const DerivedObject& Y);

  mpz_class aut_count(const DerivedObject& X);  // enumeration: classes f with cone(f) = 0
  mpz_class aut_order(const DerivedObject& X);  // closed form from End and multiplicities

 private:
  int m_;
  std::shared_ptr<const FiniteField> F_;
  std::map<DerivedObject, std::shared_ptr<const PComplex>> complexes_;
  std::map<std::pair<DerivedObject, DerivedObject>, std::shared_ptr<const HomClasses>> homs_;
  std::map<std::pair<DerivedObject, DerivedObject>, std::map<int, int>> dims_;
  std::map<DerivedObject, mpz_class> aut_;
};

mpz_class gl_order(long q, int n);

}  // namespace dha
