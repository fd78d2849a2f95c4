#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gspan/gset.hpp"
#include "gspan/grid.hpp"
#include "gspan/matrix.hpp"

namespace gspan {

// A span G/H <- S -> G/K between canonical orbits. H and K are subgroup
// class indices into a shared classification; the legs must land in the
// coset spaces of the class representatives.
class Span {
 public:
  Span(ClassificationPtr cls, int source_class, int target_class, GSet middle,
       GMap leg_p, GMap leg_q);

  const ClassificationPtr& classification() const { return cls_; }
  int source_class() const { return source_class_; }
  int target_class() const { return target_class_; }
  const GSet& middle() const { return middle_; }
  const GMap& leg_p() const { return leg_p_; }
  const GMap& leg_q() const { return leg_q_; }

 private:
  ClassificationPtr cls_;
  int source_class_, target_class_;
  GSet middle_;
  GMap leg_p_, leg_q_;
};

// S_+ = S ⊔ (G/H x G/K) with leg extensions by the projections. The retract
// summand is implicit; wrap/unwrap only repackage the non-basepoint part.
class RetractiveSpan {
 public:
  explicit RetractiveSpan(Span span) : span_(std::move(span)) {}
  const Span& span() const { return span_; }

 private:
  Span span_;
};

inline RetractiveSpan wrap_retractive(Span s) { return RetractiveSpan(std::move(s)); }
inline Span unwrap_retractive(const RetractiveSpan& s) { return s.span(); }

Span unit_span(const ClassificationPtr& cls, int h_class);
Span empty_span(const ClassificationPtr& cls, int h_class, int k_class);

// Middle = G/M with the two legs sending eM to the given cosets; requires M
// to stabilize both cosets.
Span orbit_span(const ClassificationPtr& cls, int h_class, int k_class,
                const Subgroup& m, int coset_in_h, int coset_in_k);

// The transfer span G/H <- G/H -> G/G and restriction span G/G <- G/H -> G/H.
Span transfer_span(const ClassificationPtr& cls, int h_class);
Span restriction_span(const ClassificationPtr& cls, int h_class);

// Composition by pullback of the middle legs over the shared orbit.
Span compose_spans(const Span& s1, const Span& s2);

// Disjoint union of middles over the same leg classes.
Span span_disjoint_union(const Span& a, const Span& b);

// Canonical-form key of one middle orbit over G/H x G/K: the minimal
// (p(x), q(x), stabilizer elements) tuple over the orbit.
struct SpanOrbitKey {
  int p_coset;
  int q_coset;
  std::vector<int> stabilizer;
  auto operator<=>(const SpanOrbitKey&) const = default;
};

// Multiset of orbit keys; two spans between the same classes are isomorphic
// as spans iff their normal forms agree.
using SpanNormalForm = std::vector<SpanOrbitKey>;

SpanNormalForm span_normal_form(const Span& s);
std::string normal_form_to_string(const SpanNormalForm& nf);

// Explicit span isomorphism (equivariant bijection of middles commuting with
// both legs), or nullopt.
std::optional<GMap> span_iso(const Span& a, const Span& b);

// Table of marks m[(H)][(K)] = |(G/H)^K| over canonical classes;
// lower-triangular with diagonal |W_G H|.
struct TableOfMarks {
  ClassificationPtr cls;
  IntMatrix m;
};

TableOfMarks table_of_marks(const ClassificationPtr& cls,
                            ExecMode mode = ExecMode::Parallel);

// An element of the Burnside ring A(G) in the orbit basis [G/H], canonical
// class order.
struct BurnsideElement {
  ClassificationPtr cls;
  std::vector<std::int64_t> coeffs;
};

BurnsideElement burnside_basis_element(const ClassificationPtr& cls, int h_class);
BurnsideElement burnside_of_gset(const ClassificationPtr& cls, const GSet& s);

// Multiplication computed two ways (orbit decomposition of products, and
// pointwise in mark coordinates followed by the exact triangular solve);
// the two results are asserted equal.
BurnsideElement burnside_multiply(const BurnsideElement& a,
                                  const BurnsideElement& b);

std::vector<std::int64_t> ghost_coordinates(const BurnsideElement& a);

}  // namespace gspan
