#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "gspan/gset.hpp"

namespace gspan {

struct GcatLimits {
  int max_objects = 64;
  long long max_assoc_triples = 20'000'000;
};

// A finite category: indexed objects and morphisms, identity table and a
// composition table. Associativity and unit laws are validated on
// construction (throws OversizeError when the composable-triple count
// exceeds the configured cap instead of skipping validation).
class FiniteCategory {
 public:
  struct Mor {
    int src, tgt;
  };

  FiniteCategory(int num_objects, std::vector<Mor> mors,
                 std::vector<int> identity,
                 std::function<int(int, int)> compose_fn,
                 const GcatLimits& limits = {});

  int num_objects() const { return num_objects_; }
  int num_morphisms() const { return static_cast<int>(mors_.size()); }
  int src(int m) const { return mors_[m].src; }
  int tgt(int m) const { return mors_[m].tgt; }
  int identity(int obj) const { return identity_[obj]; }

  // g after f; throws on a non-composable pair.
  int compose(int g, int f) const;

  const std::vector<int>& hom(int a, int b) const;

  bool is_iso(int m) const { return inverse_[m] >= 0; }
  int inverse(int m) const;

  // Partition of the objects into isomorphism classes (each class sorted,
  // classes ordered by smallest member).
  std::vector<std::vector<int>> iso_classes() const;

 private:
  int num_objects_;
  std::vector<Mor> mors_;
  std::vector<int> identity_;
  std::unordered_map<std::uint64_t, int> comp_;
  std::vector<std::vector<std::vector<int>>> hom_;  // [src][tgt]
  std::vector<int> inverse_;
};

using CategoryPtr = std::shared_ptr<const FiniteCategory>;

// A strict left action of G on a finite category: one functor per group
// element, composing on the nose (act(g) after act(h) = act(gh)) with the
// identity acting as the identity functor.
class GCategoryAction {
 public:
  GCategoryAction(GroupPtr group, CategoryPtr cat,
                  std::vector<std::vector<int>> obj_act,
                  std::vector<std::vector<int>> mor_act);

  const GroupPtr& group() const { return group_; }
  const FiniteCategory& cat() const { return *cat_; }
  const CategoryPtr& cat_ptr() const { return cat_; }
  int act_obj(int g, int obj) const { return obj_act_[g][obj]; }
  int act_mor(int g, int m) const { return mor_act_[g][m]; }

 private:
  GroupPtr group_;
  CategoryPtr cat_;
  std::vector<std::vector<int>> obj_act_, mor_act_;
};

// Designated zero object and binary sums for a category with a G-action.
// sum_mor builds f1 ⊕ f2 on designated sums; twist(g, a, b) is the canonical
// iso (g.a) ⊕ (g.b) -> g.(a ⊕ b) (the identity when the action preserves
// the designated sums strictly).
struct SumData {
  int zero;
  std::function<int(int, int)> sum_obj;
  std::function<int(int, int)> sum_mor;
  std::function<int(int, int, int)> twist;
};

// An object of the homotopy fixed point category over H: a carrier C with
// isomorphisms psi_g: C -> g.C for g in H satisfying psi_e = id and
// psi_{gh} = (g.psi_h) psi_g. The cocycle vector is aligned with
// h.elements().
struct EquivObject {
  int carrier;
  std::vector<int> cocycle;
};

struct HFixCategory {
  FiniteCategory cat;                      // the fixed point category itself
  std::vector<EquivObject> objects;        // per hfix object
  std::vector<int> underlying_mor;         // per hfix morphism: base mor
  Subgroup subgroup;
  std::optional<int> zero_object;          // when the instance has SumData
  // coproduct of two hfix objects by the sum-and-twist formula (requires
  // SumData); returns the hfix object index.
  std::function<int(int, int)> coproduct;
};

bool cocycle_valid(const GCategoryAction& c, const Subgroup& h,
                   const EquivObject& obj);
bool equiv_mor_valid(const GCategoryAction& c, const Subgroup& h,
                     const EquivObject& a, const EquivObject& b, int mor);

// Materializes Cat(EG, C)^H: objects are all valid cocycle pairs, morphisms
// the base morphisms commuting with both cocycles.
HFixCategory homotopy_fixed_points(const GCategoryAction& c, const Subgroup& h,
                                   const SumData* sums = nullptr,
                                   const GcatLimits& limits = {});

// A functor commuting with the actions up to coherent isomorphisms
// theta[g][obj]: F(g.obj) -> g.F(obj).
struct PseudoEquivFunctor {
  const GCategoryAction* source;
  const GCategoryAction* target;
  std::vector<int> obj_map;
  std::vector<int> mor_map;
  std::vector<std::vector<int>> theta;  // [g][source object]
};

void validate_functor_data(const FiniteCategory& src,
                           const FiniteCategory& tgt,
                           const std::vector<int>& obj_map,
                           const std::vector<int>& mor_map);

struct RectifiedFunctor {
  std::vector<int> obj_map;  // hfix(source) object -> hfix(target) object
  std::vector<int> mor_map;  // hfix(source) mor -> hfix(target) mor
};

// Sends (C, psi) to (F(C), g -> theta_g F(psi_g)); throws
// IncoherentPseudoDataError if an output cocycle fails the cocycle law,
// and validates functoriality of the result.
RectifiedFunctor rectify_pseudo(const PseudoEquivFunctor& f, const Subgroup& h,
                                const HFixCategory& hfix_src,
                                const HFixCategory& hfix_tgt);

// The diagonal action on the product category C x D.
struct ProductAction {
  GCategoryAction action;
  // object/morphism pair decoding
  std::vector<std::pair<int, int>> obj_pairs;
  std::vector<std::pair<int, int>> mor_pairs;
  int obj_index(int a, int b) const;
  int mor_index(int f, int g) const;
};

ProductAction product_action(const GCategoryAction& c,
                             const GCategoryAction& d,
                             const GcatLimits& limits = {});

}  // namespace gspan
