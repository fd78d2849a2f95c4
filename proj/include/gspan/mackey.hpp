#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gspan/grid.hpp"
#include "gspan/matrix.hpp"
#include "gspan/span.hpp"

namespace gspan {

// A Mackey functor over the subgroup-class lattice, with free abelian values.
//
// Values live at the canonical class representatives R_c; the value at any
// other subgroup K is reached through the chosen minimal conjugator
// gamma_K (gamma_K K gamma_K^-1 = R_c). Stored data:
//   - wact[c][n]: the conjugation action of n in N_G(R_c) on M(R_c),
//   - res/tr for one witness inclusion W <= R_c per N_G(R_c)-orbit of
//     class-(L) subgroups of R_c.
// Restriction, transfer and conjugation along arbitrary subgroup
// configurations are derived from these.
struct MackeyData {
  ClassificationPtr cls;
  std::vector<int> ranks;
  std::vector<std::vector<std::string>> labels;
  std::vector<std::map<int, IntMatrix>> wact;  // [class][normalizer element]
  // key = (class of H, subgroup index of the witness W <= R_cH)
  std::map<std::pair<int, int>, IntMatrix> res;  // r_cW x r_cH
  std::map<std::pair<int, int>, IntMatrix> tr;   // r_cH x r_cW
};

class MackeyFunctor {
 public:
  explicit MackeyFunctor(MackeyData data);

  const MackeyData& data() const { return data_; }
  const ClassificationPtr& classification() const { return data_.cls; }
  int rank(int cls_index) const { return data_.ranks[cls_index]; }
  const std::vector<std::string>& labels(int cls_index) const {
    return data_.labels[cls_index];
  }

  // Matrix of the conjugation iso M(H) -> M(g H g^-1), both ends in
  // class-representative coordinates.
  IntMatrix conj_matrix(int g, const Subgroup& h) const;

  // Restriction along a genuine inclusion L <= H.
  IntMatrix res_matrix(const Subgroup& l, const Subgroup& h) const;

  // Transfer along a genuine inclusion L <= H.
  IntMatrix tr_matrix(const Subgroup& h, const Subgroup& l) const;

  // Contravariant / covariant action of the orbit map G/L -> G/H sending
  // eL to the coset aH (requires a^-1 L a <= H).
  IntMatrix contravariant(const Subgroup& l, int a, const Subgroup& h) const;
  IntMatrix covariant(const Subgroup& l, int a, const Subgroup& h) const;

  // Witness bookkeeping (exposed for serialization and tests).
  const std::vector<int>& witnesses(int h_class) const {
    return witnesses_[h_class];
  }

 private:
  std::pair<int, int> find_witness(int h_class, int sub_index) const;

  MackeyData data_;
  std::vector<std::vector<int>> witnesses_;  // per H-class: witness sub indices
};

// Builder interface: native matrices at arbitrary subgroups, in whatever
// basis the construction carries at each subgroup. Bases at conjugate
// subgroups must correspond under conj_native.
class MackeyBuilder {
 public:
  virtual ~MackeyBuilder() = default;
  virtual int rank(const Subgroup& k) const = 0;
  virtual std::vector<std::string> labels(const Subgroup& k) const = 0;
  virtual IntMatrix res_native(const Subgroup& l, const Subgroup& h) const = 0;
  virtual IntMatrix tr_native(const Subgroup& h, const Subgroup& l) const = 0;
  virtual IntMatrix conj_native(int g, const Subgroup& h) const = 0;
};

MackeyFunctor build_mackey(const ClassificationPtr& cls,
                           const MackeyBuilder& builder);

// The Burnside Mackey functor H -> A(H) in the orbit basis.
MackeyFunctor burnside_mackey(const ClassificationPtr& cls);

// The fixed-point Mackey functor of a G-set: H -> Z[S]^H with the
// H-orbit-sum basis.
MackeyFunctor fixed_point_mackey(const ClassificationPtr& cls, const GSet& s);

struct AxiomFailure {
  std::string axiom;
  std::string witness;
};

struct MackeyCheckReport {
  bool pass = true;
  std::vector<AxiomFailure> failures;
  int checks_run = 0;
};

// Checks, over every class representative as ambient group: conjugation
// functoriality (and triviality of inner conjugations), restriction and
// transfer transitivity, conjugation/restriction/transfer compatibility,
// and the double coset formula
//   res^A_K tr^A_H = sum over K\A/H of tr^K_{K ∩ gHg^-1} c_g res^H_{g^-1Kg ∩ H}.
MackeyCheckReport check_mackey_axioms(const MackeyFunctor& m,
                                      ExecMode mode = ExecMode::Parallel);

struct SpanActionResult {
  int input_class;
  int output_class;
  std::vector<std::int64_t> vector;
};

// Action of a retractive span on a Mackey functor: each orbit of the middle
// contributes transfer ∘ conjugation ∘ restriction according to its
// stabilizer configuration over G/H x G/K; the empty middle acts as zero and
// the unit span as the identity.
SpanActionResult span_act(const MackeyFunctor& m, const RetractiveSpan& s,
                          const std::vector<std::int64_t>& x);

// The matrix of the span action on M(H) -> M(K).
IntMatrix span_action_matrix(const MackeyFunctor& m, const RetractiveSpan& s);

}  // namespace gspan
