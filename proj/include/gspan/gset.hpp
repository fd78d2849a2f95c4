#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gspan/group.hpp"

namespace gspan {

// A finite left G-set as an action table over the point set {0..size-1}.
// act(g, i) is g.i; validated on construction.
class GSet {
 public:
  GSet(GroupPtr group, int size, std::vector<std::vector<int>> act);

  const GroupPtr& group() const { return group_; }
  int size() const { return size_; }
  int act(int g, int i) const { return act_[static_cast<size_t>(g) * size_ + i]; }

  bool operator==(const GSet& o) const {
    return size_ == o.size_ && *group_ == *o.group_ && act_ == o.act_;
  }

  std::vector<std::vector<int>> table() const;

 private:
  GroupPtr group_;
  int size_;
  std::vector<int> act_;
};

GSet empty_gset(GroupPtr g);
GSet trivial_gset(GroupPtr g, int size);  // size points, all fixed
GSet regular_gset(GroupPtr g);            // G acting on itself by left translation

// An equivariant map of G-sets.
class GMap {
 public:
  GMap(GSet source, GSet target, std::vector<int> map);

  const GSet& source() const { return source_; }
  const GSet& target() const { return target_; }
  int operator()(int i) const { return map_[i]; }
  const std::vector<int>& map() const { return map_; }

  bool is_bijective() const;
  GMap inverse() const;  // requires bijective

  bool operator==(const GMap& o) const {
    return source_ == o.source_ && target_ == o.target_ && map_ == o.map_;
  }

 private:
  GSet source_, target_;
  std::vector<int> map_;
};

GMap identity_map(const GSet& s);
GMap compose(const GMap& g, const GMap& f);  // g after f

// The coset space G/H: cosets numbered by minimal representative, ascending,
// with left translation action. `reps` lists the minimal representative per
// coset and `coset_of` sends a group element to its coset index.
struct CosetSpace {
  GSet gset;
  Subgroup subgroup;
  std::vector<int> reps;
  std::vector<int> coset_of;
};

CosetSpace coset_space(const Subgroup& h);

struct Orbit {
  std::vector<int> points;  // ascending; points[0] is the representative
  int representative;
  Subgroup stabilizer;  // of the representative
  GMap iso;             // equivariant bijection G/stabilizer -> orbit (into S)
};

// Orbits listed by ascending representative. Each iso is injective into S
// with image the orbit.
struct OrbitDecomposition {
  std::vector<Orbit> orbits;
};

OrbitDecomposition decompose(const GSet& s);

std::vector<int> fixed_points(const GSet& s, const Subgroup& h);
Subgroup stabilizer(const GSet& s, int point);

GSet product(const GSet& s, const GSet& t);    // pairs in lex order, diagonal action
GSet coproduct(const GSet& s, const GSet& t);  // S then T

// Pullback of f: S -> U against g: T -> U. Points are the pairs (s, t) with
// f(s) = g(t) in lexicographic order, renumbered consecutively.
struct PullbackResult {
  GSet object;
  GMap to_left;   // P -> S
  GMap to_right;  // P -> T
  std::vector<std::pair<int, int>> pairs;
};

PullbackResult pullback(const GMap& f, const GMap& g);

// The mediating map into a pullback from a cone (a: W -> S, b: W -> T).
std::optional<GMap> mediating_map(const PullbackResult& p, const GMap& a,
                                  const GMap& b);

// Restriction of a G-set to a subgroup, as a set with an action of
// subgroup_as_group(h).
struct RestrictedGSet {
  SubgroupGroup acting;
  GSet gset;
};

RestrictedGSet restrict_gset(const GSet& s, const Subgroup& h);

// K x_L Y for L <= K inside a common parent group. Y must be a set with an
// action of subgroup_as_group(L). Points are pairs (coset kL, y) numbered
// lexicographically over the minimal-representative transversal.
struct InducedGSet {
  SubgroupGroup acting;            // K as a group
  GSet gset;                       // the induced K-set
  std::vector<int> transversal;    // minimal coset reps of K/L, in parent indices
  std::vector<std::pair<int, int>> points;  // (coset index, y)
  std::vector<int> unit;           // y -> point index of (eL, y)
  GMap to_quotient;                // K x_L Y -> K/L as K-sets
};

InducedGSet induce(const Subgroup& k, const Subgroup& l, const GSet& y);

// Report for the fixed-point formula
//   (K x_L Y)^H = ∐_{kL : k^-1 H k <= L} Y^{k^-1 H k},
// checked as exact point-set equality inside the induced set.
struct FixedPointFormulaReport {
  bool pass = false;
  std::vector<int> direct;        // fixed points computed directly
  std::vector<int> via_formula;   // union of the embedded coproduct pieces
  int num_contributing_cosets = 0;
};

FixedPointFormulaReport check_fixed_point_formula(const InducedGSet& ind,
                                                  const Subgroup& k,
                                                  const Subgroup& l,
                                                  const GSet& y,
                                                  const Subgroup& h);

// Fixed-point counts per subgroup class, in canonical class order.
using MarkVector = std::vector<int>;

MarkVector mark_vector(const GSet& s, const SubgroupClassification& cls);

struct MarksAndIso {
  MarkVector marks_left, marks_right;
  std::optional<GMap> iso;  // present iff the mark vectors agree
};

// Burnside's theorem for finite G-sets: marks determine the isomorphism
// class. When the marks agree an explicit isomorphism is produced by
// stabilizer-respecting orbit matching.
MarksAndIso marks_and_iso(const GSet& s, const GSet& t,
                          const SubgroupClassification& cls);

// All equivariant maps S -> T (used by small exhaustive verifiers).
std::vector<GMap> all_gmaps(const GSet& s, const GSet& t);
long long count_gmaps(const GSet& s, const GSet& t);

}  // namespace gspan
