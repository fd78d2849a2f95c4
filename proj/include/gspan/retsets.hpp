#pragma once

#include <optional>
#include <vector>

#include "gspan/gcat.hpp"
#include "gspan/gset.hpp"

namespace gspan {

// ---------------------------------------------------------------------------
// The category of retractive finite sets over a G-set X, in structural form.
//
// An object is X -> Y -> X with the copy of X kept implicit: only the
// complement C = Y \ X is stored, as the vector of its structure-map values
// in X. A morphism sends each complement point either to a complement point
// with the same structure value or to the basepoint copy of its structure
// value (encoded as kCollapse). The G-action relabels structure values;
// with this normalization it is strictly functorial and preserves the
// designated sums (concatenation) on the nose.

inline constexpr int kCollapse = -1;

struct RetObj {
  std::vector<int> to_x;  // complement point -> point of X
  int size() const { return static_cast<int>(to_x.size()); }
  bool operator==(const RetObj& o) const = default;
  auto operator<=>(const RetObj& o) const = default;
};

struct RetMor {
  RetObj src, tgt;
  std::vector<int> img;  // per src complement point: tgt index or kCollapse
  bool operator==(const RetMor& o) const = default;
};

// The ambient instance: a G-set X plus the caps used by enumeration.
class RetCategory {
 public:
  explicit RetCategory(GSet x) : x_(std::move(x)) {}

  const GSet& x() const { return x_; }
  const GroupPtr& group() const { return x_.group(); }

  void validate(const RetObj& o) const;
  void validate(const RetMor& m) const;

  RetObj zero() const { return RetObj{{}}; }
  RetMor id(const RetObj& o) const;
  RetMor compose(const RetMor& g, const RetMor& f) const;
  bool is_iso(const RetMor& m) const;
  RetMor inverse(const RetMor& m) const;

  RetObj act_obj(int g, const RetObj& o) const;
  RetMor act_mor(int g, const RetMor& m) const;

  // Designated sums: complement concatenation, left to right.
  RetObj sum(const std::vector<RetObj>& parts) const;
  RetMor injection(const std::vector<RetObj>& parts, int k) const;
  // the unique map out of a designated sum with the given legs
  RetMor cotuple(const std::vector<RetObj>& parts, const RetObj& target,
                 const std::vector<RetMor>& legs) const;
  RetMor sum_mor(const std::vector<RetMor>& parts) const;

  // All morphisms src -> tgt (kCollapse or a structure-compatible target per
  // point).
  std::vector<RetMor> hom(const RetObj& src, const RetObj& tgt) const;

  // All objects with complement size <= bound, graded-lexicographically.
  std::vector<RetObj> objects_up_to(int bound) const;

 private:
  GSet x_;
};

// ---------------------------------------------------------------------------
// Equivariant objects (cocycle pairs) and orbit-indexed families.

// A carrier C with isomorphisms psi_g: C -> g.C for g in the subgroup,
// aligned with subgroup.elements(); satisfies psi_e = id and
// psi_{gh} = (g.psi_h) psi_g.
struct RetEquivObj {
  RetObj carrier;
  std::vector<RetMor> cocycle;
};

// A morphism of equivariant objects: a single base morphism commuting with
// both cocycles.
struct RetEquivMor {
  RetMor base;
};

bool ret_cocycle_valid(const RetCategory& c, const Subgroup& h,
                       const RetEquivObj& o);
bool ret_equiv_mor_valid(const RetCategory& c, const Subgroup& h,
                         const RetEquivObj& a, const RetEquivObj& b,
                         const RetMor& m);
std::vector<RetEquivObj> enumerate_equiv_objects(const RetCategory& c,
                                                 const Subgroup& h, int bound);
std::vector<RetMor> equiv_homs(const RetCategory& c, const Subgroup& h,
                               const RetEquivObj& a, const RetEquivObj& b);

// Conversion between the cocycle form over H and an H-set structure on the
// complement: the action of h is the underlying permutation of psi_{h^-1},
// and the structure map to X is H-equivariant for it.
struct HSetOverX {
  SubgroupGroup acting;       // H as a group
  GSet complement;            // H-set structure on the complement
  std::vector<int> to_x;      // structure map to X (H-equivariantly)
};

HSetOverX equiv_to_hset(const RetCategory& c, const Subgroup& h,
                        const RetEquivObj& o);
RetEquivObj hset_to_equiv(const RetCategory& c, const Subgroup& h,
                          const HSetOverX& s);

// An object of Cat(S x EG, C)^G stored orbitwise: one equivariant object
// over the stabilizer of each orbit representative of S.
struct OrbitIndexedObject {
  GSet base;
  std::vector<RetEquivObj> parts;  // aligned with decompose(base).orbits
};

// A morphism of orbit-indexed objects, one equivariant morphism per orbit.
struct OrbitIndexedMor {
  std::vector<RetMor> parts;
  bool operator==(const OrbitIndexedMor& o) const = default;
};

void validate_orbit_object(const RetCategory& c, const OrbitIndexedObject& f);

// The same functor in pointwise form: a carrier per point of the base and
// structure isomorphisms phi[t][g]: C_t -> g.C_{g^-1 t} satisfying
// phi[t][e] = id and phi[t][gh] = (g.phi[g^-1 t][h]) phi[t][g].
struct FullFunctor {
  GSet base;
  std::vector<RetObj> carrier;
  std::vector<std::vector<RetMor>> structure;  // [point][g]
};

struct FullMor {
  std::vector<RetMor> at;  // per point
};

FullFunctor expand(const RetCategory& c, const OrbitIndexedObject& f);
OrbitIndexedObject contract(const RetCategory& c, const FullFunctor& f);
void validate_full(const RetCategory& c, const FullFunctor& f);

FullMor expand_mor(const RetCategory& c, const FullFunctor& src,
                   const FullFunctor& tgt, const OrbitIndexedMor& m);
OrbitIndexedMor contract_mor(const RetCategory& c, const FullFunctor& src,
                             const FullMor& m);
bool full_mor_valid(const RetCategory& c, const FullFunctor& src,
                    const FullFunctor& tgt, const FullMor& m);

// ---------------------------------------------------------------------------
// Restriction and transfer along equivariant maps of base G-sets.

// (f^*F)(s, g) = F(f(s), g)
OrbitIndexedObject restrict_along(const RetCategory& c, const GMap& f,
                                  const OrbitIndexedObject& over_target);

// (f_!F)(t, g) = g(⊕_{i in f^-1(g^-1 t)} F(i, e)), sums in ascending point
// order.
OrbitIndexedObject transfer_along(const RetCategory& c, const GMap& f,
                                  const OrbitIndexedObject& over_source);

FullMor restrict_full_mor(const GMap& f, const FullFunctor& src_t,
                          const FullMor& m);
FullMor transfer_full_mor(const RetCategory& c, const GMap& f,
                          const FullFunctor& src_s, const FullFunctor& tgt_s,
                          const FullMor& m);

// unit F -> f^* f_! F and counit f_! f^* F' -> F' of the adjunction
FullMor adjunction_unit(const RetCategory& c, const GMap& f,
                        const FullFunctor& over_source);
FullMor adjunction_counit(const RetCategory& c, const GMap& f,
                          const FullFunctor& over_target);

// mates across the adjunction
OrbitIndexedMor adjoint_transpose(const RetCategory& c, const GMap& f,
                                  const OrbitIndexedObject& over_s,
                                  const OrbitIndexedObject& over_t,
                                  const OrbitIndexedMor& from_transfer);
OrbitIndexedMor adjoint_transpose_back(const RetCategory& c, const GMap& f,
                                       const OrbitIndexedObject& over_s,
                                       const OrbitIndexedObject& over_t,
                                       const OrbitIndexedMor& to_restrict);

struct AdjunctionReport {
  bool pass = true;
  long long pairs_checked = 0;
  long long hom_elements = 0;
  std::vector<std::string> failures;
};

// Exhaustive check of the (f_!, f^*) adjunction over all equivariant objects
// with per-orbit complement size <= bound: hom-set bijections both ways,
// naturality in both slots, and the triangle identities.
AdjunctionReport check_adjunction(const RetCategory& c, const GMap& f,
                                  int bound);

// ---------------------------------------------------------------------------
// Beck-Chevalley and middle-map transformations.

struct CommutingSquare {
  // A --k--> B, A --h--> C, B --f--> D, C --j--> D with f k = j h
  GMap k, h, f, j;
};

struct BeckChevalleyResult {
  bool is_pullback = false;
  bool is_iso = false;
  OrbitIndexedMor map;  // h_! k^* F -> j^* f_! F
};

// Builds the composite unit-then-counit map h_! k^* F -> j^* f_! F and
// reports whether the square is a pullback and whether the map inverts.
// Throws NotCommutingError unless f k = j h.
BeckChevalleyResult beck_chevalley(const RetCategory& c,
                                   const CommutingSquare& sq,
                                   const OrbitIndexedObject& over_b);

// For legs p = r f, q = s f: the natural transformation
// f_sharp: q_! p^* F -> s_! r^* F obtained from the counit of (f_!, f^*).
OrbitIndexedMor f_sharp(const RetCategory& c, const GMap& p, const GMap& q,
                        const GMap& r, const GMap& s, const GMap& f,
                        const OrbitIndexedObject& over_u);

// ---------------------------------------------------------------------------
// Transfer versus induction.

struct TransferInductionReport {
  bool pass = false;
  OrbitIndexedObject transferred;
  std::vector<int> iso;  // complement bijection at the target representative
};

// For f: S -> T with transitive S and T, checks that the transfer of an
// equivariant object agrees with the G-set induction of its complement,
// producing the explicit natural isomorphism.
TransferInductionReport transfer_matches_induction(
    const RetCategory& c, const GMap& f, const OrbitIndexedObject& over_s);

// ---------------------------------------------------------------------------
// Materialization into a table category with a strict G-action.

struct MaterializedRetSets {
  GCategoryAction action;
  SumData sums;
  std::vector<RetObj> objects;          // per object index
  std::vector<RetMor> morphisms;        // per morphism index
  int object_index(const RetObj& o) const;
  int morphism_index(const RetMor& m) const;
};

// Objects are all complements of size <= bound in graded-lex order;
// morphisms are enumerated per ordered object pair. Throws OversizeError
// when the object count exceeds the cap.
MaterializedRetSets ret_sets_category(const GSet& x, int bound,
                                      const GcatLimits& limits = {});

}  // namespace gspan
