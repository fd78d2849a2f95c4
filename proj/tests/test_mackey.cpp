#include <doctest.h>

#include "gspan/mackey.hpp"

using namespace gspan;

namespace {

ClassificationPtr classify(const GroupPtr& g) {
  return std::make_shared<SubgroupClassification>(g);
}

std::vector<GroupPtr> catalog() {
  return {named_group(GroupFamily::Cyclic, 2),
          named_group(GroupFamily::Cyclic, 3),
          named_group(GroupFamily::Cyclic, 4),
          named_group(GroupFamily::Klein4, 0),
          named_group(GroupFamily::Symmetric, 3),
          named_group(GroupFamily::Dihedral, 4),
          named_group(GroupFamily::Quaternion8, 0),
          named_group(GroupFamily::Alternating, 4)};
}

}  // namespace

TEST_CASE("Burnside Mackey functor of the trivial group") {
  auto cls = classify(named_group(GroupFamily::Cyclic, 1));
  const auto m = burnside_mackey(cls);
  CHECK(m.rank(0) == 1);
  CHECK(m.res_matrix(trivial_subgroup(cls->group()),
                     trivial_subgroup(cls->group()))
            .is_identity());
}

TEST_CASE("Burnside Mackey functor of C2: res = (2 1), tr = (1 0)^T") {
  auto cls = classify(named_group(GroupFamily::Cyclic, 2));
  const auto m = burnside_mackey(cls);
  const Subgroup e = trivial_subgroup(cls->group());
  const Subgroup c2 = full_subgroup(cls->group());
  CHECK(m.rank(0) == 1);
  CHECK(m.rank(1) == 2);
  CHECK(m.res_matrix(e, c2) == IntMatrix{{2, 1}});
  CHECK(m.tr_matrix(c2, e) == IntMatrix{{1}, {0}});
}

TEST_CASE("S3: res tr = id + tr res at C2 (double coset instance)") {
  auto cls = classify(named_group(GroupFamily::Symmetric, 3));
  const auto m = burnside_mackey(cls);
  const Subgroup c2 = cls->cls(1).representative;
  const Subgroup e = trivial_subgroup(cls->group());
  const Subgroup g = full_subgroup(cls->group());
  const IntMatrix lhs = m.res_matrix(c2, g) * m.tr_matrix(g, c2);
  const IntMatrix rhs =
      IntMatrix::identity(2) + m.tr_matrix(c2, e) * m.res_matrix(e, c2);
  CHECK(lhs == rhs);
}

TEST_CASE("derived matrices agree with natively computed ones") {
  // The stored representation keeps one matrix per witness inclusion; check
  // the conjugation-derived values against direct recomputation through a
  // fresh builder on a group with nontrivial fusion.
  auto g = named_group(GroupFamily::Dihedral, 4);
  auto cls = classify(g);
  const auto m = burnside_mackey(cls);
  for (const auto& h : cls->all_subgroups())
    for (const auto& l : cls->all_subgroups()) {
      if (!h.contains(l)) continue;
      const IntMatrix r = m.res_matrix(l, h);
      const IntMatrix t = m.tr_matrix(h, l);
      // row/column dimensions in class-rep coordinates
      CHECK(r.rows() == m.rank(cls->class_of(l)));
      CHECK(r.cols() == m.rank(cls->class_of(h)));
      CHECK(t.rows() == m.rank(cls->class_of(h)));
      CHECK(t.cols() == m.rank(cls->class_of(l)));
    }
  SUBCASE("conjugation matrices compose") {
    for (const auto& h : cls->all_subgroups())
      for (int a = 0; a < g->order(); ++a)
        for (int b = 0; b < g->order(); ++b) {
          const IntMatrix lhs = m.conj_matrix(g->mult(a, b), h);
          const IntMatrix rhs =
              m.conj_matrix(a, h.conjugate(b)) * m.conj_matrix(b, h);
          CHECK(lhs == rhs);
        }
  }
}

TEST_CASE("burnside_mackey passes the axiom checker on the catalog") {
  for (auto g : catalog()) {
    CAPTURE(g->order());
    auto cls = classify(g);
    const auto report = check_mackey_axioms(burnside_mackey(cls));
    CHECK(report.pass);
    if (!report.pass)
      for (const auto& f : report.failures) MESSAGE(f.axiom, " at ", f.witness);
  }
}

TEST_CASE("axiom checker runs identically in serial and parallel") {
  auto cls = classify(named_group(GroupFamily::Dihedral, 4));
  const auto m = burnside_mackey(cls);
  const auto a = check_mackey_axioms(m, ExecMode::Serial);
  const auto b = check_mackey_axioms(m, ExecMode::Parallel);
  CHECK(a.pass == b.pass);
  CHECK(a.failures.size() == b.failures.size());
}

TEST_CASE("a perturbed transfer entry is caught with a witness") {
  auto cls = classify(named_group(GroupFamily::Symmetric, 3));
  MackeyData d = burnside_mackey(cls).data();
  // bump one entry of one stored transfer matrix
  auto& [key, mat] = *d.tr.begin();
  mat.at(0, 0) += 1;
  const auto report = check_mackey_axioms(MackeyFunctor(std::move(d)));
  CHECK(!report.pass);
  REQUIRE(!report.failures.empty());
  CHECK(!report.failures.front().witness.empty());
}

TEST_CASE("fixed-point Mackey functor of permutation modules passes") {
  auto g = named_group(GroupFamily::Symmetric, 3);
  auto cls = classify(g);
  const auto x = coset_space(cls->cls(1).representative).gset;
  for (const GSet& s : {x, product(x, x), regular_gset(g)}) {
    const auto m = fixed_point_mackey(cls, s);
    CHECK(check_mackey_axioms(m).pass);
  }
}

TEST_CASE("span action: unit acts as identity, empty span as zero") {
  auto cls = classify(named_group(GroupFamily::Symmetric, 3));
  const auto m = burnside_mackey(cls);
  for (int c = 0; c < cls->num_classes(); ++c) {
    for (int j = 0; j < m.rank(c); ++j) {
      std::vector<std::int64_t> x(m.rank(c), 0);
      x[j] = 3;
      const auto u = span_act(m, wrap_retractive(unit_span(cls, c)), x);
      CHECK(u.vector == x);
    }
    for (int k = 0; k < cls->num_classes(); ++k) {
      std::vector<std::int64_t> x(m.rank(c), 1);
      const auto z = span_act(m, wrap_retractive(empty_span(cls, c, k)), x);
      CHECK(z.vector == std::vector<std::int64_t>(m.rank(k), 0));
    }
  }
}

TEST_CASE("span action matches the res/tr matrix algebra") {
  auto cls = classify(named_group(GroupFamily::Symmetric, 3));
  const auto m = burnside_mackey(cls);
  const auto tr = wrap_retractive(transfer_span(cls, 1));
  const auto res = wrap_retractive(restriction_span(cls, 1));
  const Subgroup c2 = cls->cls(1).representative;
  const Subgroup g = full_subgroup(cls->group());

  CHECK(span_action_matrix(m, tr) == m.tr_matrix(g, c2));
  CHECK(span_action_matrix(m, res) == m.res_matrix(c2, g));

  // composite res∘tr acting on [C2/C2] gives [C2/C2] + [C2/e]
  const auto comp =
      wrap_retractive(compose_spans(tr.span(), res.span()));
  const auto out = span_act(m, comp, std::vector<std::int64_t>{0, 1});
  CHECK(out.vector == std::vector<std::int64_t>{1, 1});
}

TEST_CASE("span action is functorial over composition") {
  for (auto g : {named_group(GroupFamily::Cyclic, 2),
                 named_group(GroupFamily::Symmetric, 3)}) {
    auto cls = classify(g);
    const auto m = burnside_mackey(cls);
    const int n = cls->num_classes();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          // single-orbit spans with small middles
          for (const auto& sub1 : cls->all_subgroups()) {
            const auto gh = coset_space(cls->cls(a).representative).gset;
            const auto gl = coset_space(cls->cls(b).representative).gset;
            const auto fx1 = fixed_points(gh, sub1);
            const auto fy1 = fixed_points(gl, sub1);
            if (fx1.empty() || fy1.empty()) continue;
            const auto s1 = orbit_span(cls, a, b, sub1, fx1[0], fy1[0]);
            for (const auto& sub2 : cls->all_subgroups()) {
              const auto gk = coset_space(cls->cls(c).representative).gset;
              const auto fx2 = fixed_points(gl, sub2);
              const auto fy2 = fixed_points(gk, sub2);
              if (fx2.empty() || fy2.empty()) continue;
              const auto s2 = orbit_span(cls, b, c, sub2, fx2[0], fy2[0]);
              const auto comp = compose_spans(s1, s2);
              const IntMatrix lhs =
                  span_action_matrix(m, wrap_retractive(comp));
              const IntMatrix rhs =
                  span_action_matrix(m, wrap_retractive(s2)) *
                  span_action_matrix(m, wrap_retractive(s1));
              CHECK(lhs == rhs);
            }
          }
        }
  }
}

TEST_CASE("span action is additive in the span") {
  auto cls = classify(named_group(GroupFamily::Symmetric, 3));
  const auto m = burnside_mackey(cls);
  const auto tr = transfer_span(cls, 1);
  const auto both = span_disjoint_union(tr, tr);
  const IntMatrix one = span_action_matrix(m, wrap_retractive(tr));
  CHECK(span_action_matrix(m, wrap_retractive(both)) == one + one);
}

TEST_CASE("span_act rejects vectors of the wrong length") {
  auto cls = classify(named_group(GroupFamily::Cyclic, 2));
  const auto m = burnside_mackey(cls);
  CHECK_THROWS_AS(span_act(m, wrap_retractive(unit_span(cls, 1)),
                           std::vector<std::int64_t>{1}),
                  DimensionMismatchError);
}
