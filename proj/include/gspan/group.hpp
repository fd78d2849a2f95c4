#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gspan/errors.hpp"

namespace gspan {

// Hard cap on |G| for subgroup enumeration and everything built on it.
inline constexpr int kMaxGroupOrder = 24;

// A finite group given by its multiplication table. Element 0 is always the
// identity; `mult(a, b)` is the product a*b and `inverse[a]` the two-sided
// inverse. Immutable after construction.
class FiniteGroup {
 public:
  // Validates the table (associativity, identity, inverses) and relabels
  // the identity to index 0 if needed. Throws NotAGroupError with a witness
  // triple on failure.
  static std::shared_ptr<const FiniteGroup> from_table(
      const std::vector<std::vector<int>>& table);

  int order() const { return order_; }
  int mult(int a, int b) const { return mult_[static_cast<size_t>(a) * order_ + b]; }
  int inverse(int a) const { return inv_[a]; }
  int conj(int g, int x) const { return mult(mult(g, x), inverse(g)); }

  bool operator==(const FiniteGroup& o) const {
    return order_ == o.order_ && mult_ == o.mult_;
  }

  std::vector<std::vector<int>> table() const;

 private:
  FiniteGroup(int order, std::vector<int> mult);
  int order_;
  std::vector<int> mult_;  // row-major order_ x order_
  std::vector<int> inv_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

enum class GroupFamily { Cyclic, Dihedral, Symmetric, Alternating, Klein4, Quaternion8 };

// Deterministic element numbering per family: cyclic = residues, dihedral =
// rotations r^0..r^{n-1} then reflections r^k s, symmetric/alternating =
// permutations in lexicographic one-line order, klein4 = bit vectors under
// xor, quaternion8 = 1,-1,i,-i,j,-j,k,-k.
GroupPtr named_group(GroupFamily family, int n);
GroupPtr named_group(const std::string& family, int n);

std::optional<GroupFamily> parse_family(const std::string& name);

// A subgroup of `parent`, stored as the sorted list of its element indices.
// Always contains 0 and is validated to be closed on construction.
class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<int> elements);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<int>& elements() const { return elements_; }
  int order() const { return static_cast<int>(elements_.size()); }
  bool contains(int g) const;
  bool contains(const Subgroup& other) const;

  bool operator==(const Subgroup& o) const { return elements_ == o.elements_; }

  // Canonical total order: by order, then lexicographic on element lists.
  static bool canonical_less(const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  }

  Subgroup conjugate(int g) const;  // g H g^-1

 private:
  GroupPtr parent_;
  std::vector<int> elements_;
};

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup full_subgroup(const GroupPtr& g);
Subgroup generated_subgroup(const GroupPtr& g, const std::vector<int>& gens);

// A subgroup repackaged as a standalone FiniteGroup, with the index
// translation in both directions.
struct SubgroupGroup {
  GroupPtr group;                // abstract copy of the subgroup
  std::vector<int> to_parent;    // element index -> parent element
  std::vector<int> from_parent;  // parent element -> index, or -1
};

SubgroupGroup subgroup_as_group(const Subgroup& h);

struct SubgroupClass {
  Subgroup representative;       // minimum of the class in canonical order
  std::vector<Subgroup> members; // sorted canonically
  Subgroup normalizer;           // N_G(representative)
  SubgroupGroup weyl;            // N_G(H)/H with transversal into N_G(H)
  std::vector<int> weyl_transversal;  // minimal coset reps, one per Weyl element
};

// All subgroups of G partitioned into conjugacy classes, with normalizers
// and Weyl quotients. Classes are sorted by their representatives, so the
// trivial subgroup is class 0 and G itself is the last class.
class SubgroupClassification {
 public:
  explicit SubgroupClassification(GroupPtr g);

  const GroupPtr& group() const { return group_; }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  const SubgroupClass& cls(int i) const { return classes_[i]; }
  const std::vector<SubgroupClass>& classes() const { return classes_; }

  int num_subgroups() const { return static_cast<int>(all_subgroups_.size()); }
  const Subgroup& subgroup(int i) const { return all_subgroups_[i]; }
  const std::vector<Subgroup>& all_subgroups() const { return all_subgroups_; }

  int index_of(const Subgroup& h) const;      // index into all_subgroups()
  int class_of(const Subgroup& h) const;      // class index
  int class_of_index(int sub_index) const { return class_of_[sub_index]; }

  // Minimal g with g H g^-1 = representative(class_of(H)).
  int conjugator_to_representative(const Subgroup& h) const;

  // Human-readable class label, e.g. "C2", with primes when several classes
  // share the same isomorphism type ("C2'", "C2''").
  const std::string& class_label(int i) const { return labels_[i]; }
  std::optional<int> class_by_label(const std::string& label) const;

 private:
  GroupPtr group_;
  std::vector<Subgroup> all_subgroups_;  // canonically sorted
  std::vector<int> class_of_;            // per subgroup index
  std::vector<int> conjugator_;          // per subgroup index
  std::vector<SubgroupClass> classes_;
  std::vector<std::string> labels_;
};

using ClassificationPtr = std::shared_ptr<const SubgroupClassification>;

// Enumerates every subgroup of G (closure of generated subsets; |G| capped
// at kMaxGroupOrder). Sorted canonically.
std::vector<Subgroup> all_subgroups(const GroupPtr& g);

Subgroup normalizer(const Subgroup& h);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

// Some g with g L g^-1 <= H, minimal among witnesses, or nullopt.
std::optional<int> subconjugacy_witness(const Subgroup& l, const Subgroup& h);

struct DoubleCoset {
  int representative;          // minimal element of the coset
  std::vector<int> elements;   // sorted
};

// Partition of G into K g H double cosets, sorted by representative.
struct DoubleCosetDecomposition {
  GroupPtr group;
  Subgroup left;   // K
  Subgroup right;  // H
  std::vector<DoubleCoset> cosets;
};

DoubleCosetDecomposition double_cosets(const Subgroup& k, const Subgroup& h);

// Isomorphism-type name for small groups ("C6", "S3", "D4", "Q8", ...).
// Best effort for orders <= 24; falls back to "G<order>".
std::string iso_name(const FiniteGroup& g);

}  // namespace gspan
