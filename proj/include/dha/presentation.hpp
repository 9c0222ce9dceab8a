#pragma once
// Relation families as symbolic identities, the structural maps between
// presentations, and batch verification against the Hall-algebra oracle.

#include <optional>
#include <string>
#include <vector>

#include "dha/freealg.hpp"
#include "dha/hall.hpp"
#include "dha/surface.hpp"
#include "json.hpp"

namespace dha {

struct Relation {
  std::string label;
  NCPolynomial lhs, rhs;
};

struct ShiftWindow {
  int lo = -2, hi = 3;
  bool contains(int n) const { return lo <= n && n <= hi; }
};

ShiftWindow parse_window(const std::string& text);  // "lo..hi"

class RelationSet {
 public:
  explicit RelationSet(std::string name = "") : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  const std::vector<Relation>& relations() const { return rels_; }
  std::vector<Generator> generators() const;  // every generator occurring, sorted
  size_t size() const { return rels_.size(); }

  // throws on duplicate labels
  void add(const std::string& label, const NCPolynomial& lhs, const NCPolynomial& rhs);
  // adds only if every generator shift of the identity lies in the window
  bool add_in_window(const ShiftWindow& w, const std::string& label, const NCPolynomial& lhs, const NCPolynomial& rhs);
  void append(const RelationSet& o);

  // Default assignment: generator -> polynomial in z[i,n], evaluated with
  // z[i,n] -> S_i[n] in the quiver A_{oracle_m - 1}. `invert_v` maps v -> 1/v
  // in the relation scalars before evaluation.
  void set_assignment(int oracle_m, GeneratorMap images, bool invert_v = false);
  bool has_assignment() const { return static_cast<bool>(images_); }
  int oracle_m() const { return oracle_m_; }
  const GeneratorMap& images() const { return images_; }
  bool inverts_v() const { return invert_v_; }

  RelationSet renamed(const GeneratorMap& f, const std::string& name) const;  // images dropped

  nlohmann::json to_json() const;
  std::string to_text() const;

 private:
  std::string name_;
  std::vector<Relation> rels_;
  std::vector<std::string> labels_sorted_;
  int oracle_m_ = 0;
  GeneratorMap images_;
  bool invert_v_ = false;
};

// ------------------------------------------------------------- families

int cartan(int i, int j);  // 2, -1 or 0
RelationSet quiver_relations(int m, const ShiftWindow& w);
RelationSet s_relations(int m, const ShiftWindow& w);
// the elements z_{(a,b),n} as chords on the disk with m marked intervals
RelationSet skein_relations(int m, const ShiftWindow& w);
RelationSet boundary_skein_relations(int m, const ShiftWindow& w);

// Disk generators are `fam[i,n]`, i = 1..m cyclic.
RelationSet minimal_disk_relations(const FoliationData& h, const ShiftWindow& w, char fam = 'E');
// the m-1 rungs of the cyclic convolution ladder at arc i, suspended by s
RelationSet cyclic_family(const FoliationData& h, int i, int s = 0, char fam = 'E');
NCPolynomial convolution(const FoliationData& h, int i, char fam = 'E');  // the bracket equal to E_{i,h(i)}
GeneratorMap psi_map(const FoliationData& h, char fam = 'E');             // E -> z
GeneratorMap phi_map(const FoliationData& h, char fam = 'E');             // z -> E
// the bracket identity of the local skein computation in the standard form
RelationSet local_skein_relations(const FoliationData& h, int lmin, int lmax);

// ------------------------------------------------------------- gluing

// E (arcs 1..n, glued arc n) and F (arcs n-1..n+m-2, glued arc n-1) into G.
GeneratorMap beta_map(const Gluing& g);   // E, F -> G
GeneratorMap alpha_map(const Gluing& g);  // G -> E, F
NCPolynomial beta_image(const Gluing& g, const Generator& x);
RelationSet gluing_relations(const Gluing& g, const ShiftWindow& w);

// A glued tree of disks as one disk: its foliation data and, for every
// original arc (disk, arc), the image of its shift-0 generator in the
// generators G[k,n] of the composite disk.
struct CompositeDisk {
  FoliationData g;
  std::map<std::pair<int, int>, NCPolynomial> images;
};
// gluings applied in the given order; each must attach a new disk
CompositeDisk compose_tree(const SurfaceConfig& c, const std::vector<int>& order);

// Gluing the same tree in two orders: the composite disks must agree after
// the relabelling that matches original arcs.
struct PentagonReport {
  bool arcs_match = false;       // same unglued arcs, related by a rotation
  bool foliation_match = false;  // foliation data agree under that rotation
  bool relations_match = false;  // minimal-disk presentations agree after renaming
  bool images_match = false;     // internal arcs evaluate equally in the oracle
  bool pass() const { return arcs_match && foliation_match && relations_match && images_match; }
};
PentagonReport pentagon_check(const SurfaceConfig& c, const std::vector<int>& order_a, const std::vector<int>& order_b,
                              const ShiftWindow& w, long q);

struct NaivePresentation {
  RelationSet relations;
  SurfaceTopology topology;
};
NaivePresentation naive_presentation(const SurfaceConfig& c, const ShiftWindow& w);

// ---------------------------------------------------------------- PBW

// F[i,j] is stored as Generator{'F', i, j}.
RelationSet pbw_relations(int m);
enum class RewriteOrder { Rightmost, Leftmost };
NCPolynomial pbw_normal_form(const NCPolynomial& x, RewriteOrder order = RewriteOrder::Rightmost);
bool pbw_sorted(const Word& w);

// --------------------------------------------------------- verification

struct RelationResult {
  std::string label;
  long q = 2;
  IdentityReport report;
};

struct VerificationReport {
  std::string name;
  std::vector<RelationResult> results;  // relation-major, then q
  bool pass() const;
  int failures() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

// Evaluates every relation at every q; jobs > 1 spreads the work over
// threads, each with its own Hall algebra cache.
VerificationReport verify_relation_set(const RelationSet& rs, const std::vector<long>& qs, int jobs = 1);

}  // namespace dha
