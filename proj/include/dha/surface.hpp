#pragma once
// Combinatorics of marked disks: foliation data, angle arithmetic, gluing
// along boundary arcs, graded chords and their crossings, skein identities.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dha/freealg.hpp"
#include "json.hpp"

namespace dha {

// Foliation data on a disk with m marked intervals; h(i) sits on the
// marked interval between arcs i and i+1, labels cyclic mod m in 1..m.
class FoliationData {
 public:
  FoliationData() = default;
  // throws std::invalid_argument unless m >= 2 and sum h = m - 2
  explicit FoliationData(std::vector<int> h);

  int m() const { return static_cast<int>(h_.size()); }
  int wrap(int i) const;  // any integer -> 1..m
  int operator()(int i) const { return h_[wrap(i) - 1]; }
  const std::vector<int>& values() const { return h_; }
  FoliationData rotated(int r) const;  // new h(i) = old h(i + r)
  bool operator==(const FoliationData&) const = default;
  std::string to_string() const;  // "(0,1,0,1)"

 private:
  std::vector<int> h_;
};

FoliationData parse_foliation(const std::string& text);  // "0,1,0,1"
FoliationData standard_form();                          // m = 4, (0,1,0,1)

// sum_{j=1}^{k-1} (1 - h(j)), 1 <= k <= m
int angle(int k, const FoliationData& h);
// sum over l = j, j+1, ..., k-1 (cyclically) of (1 - h(l)); span(j, j) = 0
int span(int j, int k, const FoliationData& h);
// the angle function of the disk relabelled to start after arc i:
// sum_{j=1}^{k-1} (1 - h(i + j)) = span(i + 1, i + k)
int tau_angle(int i, int k, const FoliationData& h);

struct MarkedDisk {
  FoliationData foliation;
  char name = 'E';  // generator family of the boundary arcs
  int m() const { return foliation.m(); }
};

// Two disks glued along one boundary arc each. After rotation the left disk
// has arcs 1..n with the glued arc n, the right disk arcs n-1..n+m-2 with the
// glued arc n-1, and the result arcs 1..n+m-2.
struct Gluing {
  FoliationData e;  // left, rotated so the glued arc is n
  FoliationData f;  // right, rotated so the glued arc is its first arc
  FoliationData g;  // glued disk
  int n = 0, m = 0;
  int left_rotation = 0, right_rotation = 0;

  // original arc index -> label in the glued disk, 0 for the glued arc
  int left_label(int arc) const;
  int right_label(int arc) const;
  // right disk label (n-1 .. n+m-2) <-> its own arc index 1..m
  int f_label(int own) const { return own + n - 2; }
  int f_own(int label) const { return label - n + 2; }
};

Gluing glue(const FoliationData& left, int left_arc, const FoliationData& right, int right_arc);
// Recovers the two foliations from the glued one, given the size n of the
// left piece and the value of the right foliation on its glued arc.
std::pair<FoliationData, FoliationData> cut(const FoliationData& g, int n, int f_glued);

// ---------------------------------------------------------------- chords

struct GradedChord {
  int a = 1, b = 2, n = 0;  // z_{(a,b),n}
  auto operator<=>(const GradedChord&) const = default;
  std::string to_string() const;
};

enum class Crossing { Equal, Disjoint, SharedEndpoint, Interleaved };

struct CrossingInfo {
  Crossing kind = Crossing::Disjoint;
  int shared = 0;  // the common marked interval for SharedEndpoint
};

CrossingInfo crossing(const GradedChord& x, const GradedChord& y);
std::string crossing_name(Crossing c);

struct SkeinIdentity {
  std::string label;
  NCPolynomial lhs, rhs;
};

// [x, y]_1 = ... for interleaved chords x = (a,c), y = (b,d), a < b < c < d
// (either order of arguments), keyed by the shift difference.
SkeinIdentity skein_commutator(const GradedChord& x, const GradedChord& y, int m);
// x y - v^e y x = (resolution or 0) for chords sharing one marked interval.
SkeinIdentity boundary_skein(const GradedChord& x, const GradedChord& y, int m);

// Index bookkeeping for a transverse intersection point: given i(c1, c2)
// derive i(c2, c1) and the indices of all shifts.
struct IndexPair {
  int i12 = 0;
  int forward(int n1 = 0, int n2 = 0) const { return i12 + n1 - n2; }       // i(c1[n1], c2[n2])
  int backward(int n1 = 0, int n2 = 0) const { return 1 - i12 + n2 - n1; }  // i(c2[n2], c1[n1])
};
bool index_identities_hold(const IndexPair& p, int n1, int n2);

// -------------------------------------------------------- surface config

struct DiskSpec {
  int m = 3;
  std::vector<int> h;
};

struct GluingEdge {
  int left = 0, arc_i = 1, right = 1, arc_j = 1;  // disks 0-based, arcs 1-based
};

struct SurfaceConfig {
  std::vector<DiskSpec> disks;
  std::vector<GluingEdge> gluings;

  static SurfaceConfig from_json(const nlohmann::json& j);  // validates
  nlohmann::json to_json() const;
};

// Marked intervals after gluing, and boundary components of the surface.
struct SurfaceTopology {
  // class id for interval k (between arcs k and k+1) of disk d
  std::vector<std::vector<int>> interval_class;
  int boundary_components = 0;
  int closed_components = 0;  // components with no unglued arc
  bool is_disk = false;       // connected tree of gluings
  std::vector<std::string> warnings;
};

SurfaceTopology analyze(const SurfaceConfig& c);
char disk_family(int index);  // E, F, H, J, K, L, N, P, ...

}  // namespace dha
