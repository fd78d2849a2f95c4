#include <doctest.h>

#include <numeric>
#include <set>

#include "gspan/gset.hpp"

using namespace gspan;

namespace {

ClassificationPtr classify(const GroupPtr& g) {
  return std::make_shared<SubgroupClassification>(g);
}

// Independent orbit counter: floodfill on the point graph.
int orbit_count_oracle(const GSet& s) {
  std::vector<int> comp(s.size(), -1);
  int n = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = n;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int g = 0; g < s.group()->order(); ++g) {
        int y = s.act(g, x);
        if (comp[y] < 0) {
          comp[y] = n;
          stack.push_back(y);
        }
      }
    }
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("orbit G/H basics") {
  auto g = named_group(GroupFamily::Symmetric, 3);
  auto cls = classify(g);

  SUBCASE("H = G gives a point") {
    CHECK(coset_space(full_subgroup(g)).gset.size() == 1);
  }
  SUBCASE("H = e gives the regular set") {
    const auto r = coset_space(trivial_subgroup(g)).gset;
    CHECK(r.size() == 6);
    CHECK(r == regular_gset(g));
  }
  SUBCASE("S3/C2 has mark vector (3,1,0,0)") {
    const auto x = coset_space(cls->cls(1).representative).gset;
    CHECK(mark_vector(x, *cls) == MarkVector{3, 1, 0, 0});
  }
}

TEST_CASE("decompose") {
  auto g = named_group(GroupFamily::Cyclic, 2);

  SUBCASE("empty G-set decomposes into nothing") {
    CHECK(decompose(empty_gset(g)).orbits.empty());
  }
  SUBCASE("two free C2 orbits") {
    const auto r = regular_gset(g);
    const auto s = coproduct(r, r);
    auto d = decompose(s);
    REQUIRE(d.orbits.size() == 2);
    for (const auto& orb : d.orbits) {
      CHECK(orb.stabilizer.order() == 1);
      CHECK(orb.iso.source().size() == 2);
      // iso lands bijectively on the orbit
      std::set<int> img(orb.iso.map().begin(), orb.iso.map().end());
      CHECK(img == std::set<int>(orb.points.begin(), orb.points.end()));
    }
  }
  SUBCASE("(S3/C2)^2 decomposes as [S3/C2] + [S3/e]") {
    auto s3 = named_group(GroupFamily::Symmetric, 3);
    auto cls = classify(s3);
    const auto x = coset_space(cls->cls(1).representative).gset;
    auto d = decompose(product(x, x));
    REQUIRE(d.orbits.size() == 2);
    std::multiset<int> stab_orders;
    for (const auto& orb : d.orbits) stab_orders.insert(orb.stabilizer.order());
    CHECK(stab_orders == std::multiset<int>{1, 2});
  }
}

TEST_CASE("fixed points") {
  auto g = named_group(GroupFamily::Symmetric, 3);
  auto cls = classify(g);
  const auto reg = regular_gset(g);

  CHECK(fixed_points(reg, trivial_subgroup(g)).size() == 6);
  for (int c = 1; c < cls->num_classes(); ++c)
    CHECK(fixed_points(reg, cls->cls(c).representative).empty());

  const auto x = coset_space(cls->cls(1).representative).gset;
  CHECK(fixed_points(x, cls->cls(1).representative).size() == 1);
}

TEST_CASE("Burnside orbit counting lemma holds exactly") {
  auto g = named_group(GroupFamily::Dihedral, 4);
  auto cls = classify(g);
  for (int c = 0; c < cls->num_classes(); ++c) {
    const auto x = coset_space(cls->cls(c).representative).gset;
    const auto s = product(x, x);
    long long total = 0;
    for (int e = 0; e < g->order(); ++e) {
      int fix = 0;
      for (int i = 0; i < s.size(); ++i)
        if (s.act(e, i) == i) ++fix;
      total += fix;
    }
    CHECK(total % g->order() == 0);
    CHECK(total / g->order() == orbit_count_oracle(s));
    CHECK(static_cast<size_t>(total / g->order()) ==
          decompose(s).orbits.size());
  }
}

TEST_CASE("|S| equals the sum of orbit index formulas") {
  auto g = named_group(GroupFamily::Quaternion8, 0);
  auto cls = classify(g);
  const auto s = product(coset_space(cls->cls(1).representative).gset,
                         coset_space(cls->cls(2).representative).gset);
  int total = 0;
  for (const auto& orb : decompose(s).orbits)
    total += g->order() / orb.stabilizer.order();
  CHECK(total == s.size());
}

TEST_CASE("pullback") {
  auto g = named_group(GroupFamily::Cyclic, 2);
  const auto pt = trivial_gset(g, 1);
  const auto reg = regular_gset(g);

  SUBCASE("pullback along an isomorphism is an isomorphism") {
    const auto f = GMap(reg, pt, {0, 0});
    const auto idp = identity_map(pt);
    auto pb = pullback(f, idp);
    CHECK(pb.object.size() == reg.size());
    CHECK(pb.to_left.is_bijective());
  }
  SUBCASE("G/e x_pt G/e for C2 is two free orbits") {
    const auto f = GMap(reg, pt, {0, 0});
    auto pb = pullback(f, f);
    CHECK(pb.object.size() == 4);
    auto d = decompose(pb.object);
    REQUIRE(d.orbits.size() == 2);
    for (const auto& orb : d.orbits) CHECK(orb.stabilizer.order() == 1);
  }
  SUBCASE("pullback of identities is the diagonal") {
    auto pb = pullback(identity_map(reg), identity_map(reg));
    CHECK(pb.object.size() == reg.size());
    CHECK(pb.to_left.is_bijective());
    for (int i = 0; i < pb.object.size(); ++i)
      CHECK(pb.to_left(i) == pb.to_right(i));
  }
}

TEST_CASE("pullback universal property: mediating maps exist uniquely") {
  auto g = named_group(GroupFamily::Symmetric, 3);
  auto cls = classify(g);
  const auto gh = coset_space(cls->cls(1).representative).gset;  // size 3
  const auto gg = coset_space(full_subgroup(g)).gset;
  const auto f = GMap(gh, gg, {0, 0, 0});
  auto pb = pullback(f, f);  // 9 points
  REQUIRE(pb.object.size() <= 12);

  // Every cone from a small test family admits exactly one mediating map.
  for (const auto& w : {gh, product(gh, gh), regular_gset(g)}) {
    for (const auto& a : all_gmaps(w, gh))
      for (const auto& b : all_gmaps(w, gh)) {
        if (!(compose(f, a) == compose(f, b))) continue;
        auto med = mediating_map(pb, a, b);
        REQUIRE(med.has_value());
        CHECK(compose(pb.to_left, *med) == a);
        CHECK(compose(pb.to_right, *med) == b);
        int count = 0;
        for (const auto& u : all_gmaps(w, pb.object))
          if (compose(pb.to_left, u) == a && compose(pb.to_right, u) == b)
            ++count;
        CHECK(count == 1);
      }
  }
}

TEST_CASE("induction") {
  auto g = named_group(GroupFamily::Symmetric, 3);
  auto cls = classify(g);
  const Subgroup k = full_subgroup(g);
  const Subgroup l = cls->cls(1).representative;  // C2

  SUBCASE("inducing the regular L-set gives the regular K-set") {
    auto lg = subgroup_as_group(l);
    const auto y = regular_gset(lg.group);
    auto ind = induce(k, l, y);
    CHECK(ind.gset.size() == 6);
    auto d = decompose(ind.gset);
    REQUIRE(d.orbits.size() == 1);
    CHECK(d.orbits[0].stabilizer.order() == 1);
  }
  SUBCASE("size formula [K:L]|Y| and H = e fixed points") {
    auto lg = subgroup_as_group(l);
    const auto y = coproduct(regular_gset(lg.group), regular_gset(lg.group));
    auto ind = induce(k, l, y);
    CHECK(ind.gset.size() == 3 * 4);
    auto rep = check_fixed_point_formula(ind, k, l, y, trivial_subgroup(g));
    CHECK(rep.pass);
    CHECK(rep.direct.size() == 12);
  }
  SUBCASE("H = C3 never sits inside a conjugate of C2") {
    auto lg = subgroup_as_group(l);
    const auto y = coproduct(regular_gset(lg.group), regular_gset(lg.group));
    auto ind = induce(k, l, y);
    const Subgroup c3 = cls->cls(2).representative;
    auto rep = check_fixed_point_formula(ind, k, l, y, c3);
    CHECK(rep.pass);
    CHECK(rep.direct.empty());
    CHECK(rep.num_contributing_cosets == 0);
  }
  SUBCASE("L must be contained in K") {
    auto c3 = cls->cls(2).representative;
    auto lg = subgroup_as_group(l);
    CHECK_THROWS_AS(induce(c3, l, regular_gset(lg.group)),
                    NotASubgroupChainError);
  }
}

TEST_CASE("fixed point formula across a grid over S3") {
  auto g = named_group(GroupFamily::Symmetric, 3);
  auto cls = classify(g);
  for (const auto& k : cls->all_subgroups()) {
    for (const auto& l : cls->all_subgroups()) {
      if (!k.contains(l)) continue;
      auto lg = subgroup_as_group(l);
      auto lcls = SubgroupClassification(lg.group);
      // Y ranges over single orbits of L
      for (int c = 0; c < lcls.num_classes(); ++c) {
        const auto y = coset_space(lcls.cls(c).representative).gset;
        auto ind = induce(k, l, y);
        for (const auto& h : cls->all_subgroups()) {
          if (!k.contains(h)) continue;
          CHECK(check_fixed_point_formula(ind, k, l, y, h).pass);
        }
      }
    }
  }
}

TEST_CASE("induction is left adjoint to restriction (hom counting)") {
  auto g = named_group(GroupFamily::Symmetric, 3);
  auto cls = classify(g);
  const Subgroup k = full_subgroup(g);
  for (const auto& l : cls->all_subgroups()) {
    auto lg = subgroup_as_group(l);
    auto lcls = SubgroupClassification(lg.group);
    for (int c = 0; c < lcls.num_classes(); ++c) {
      const auto y = coset_space(lcls.cls(c).representative).gset;
      auto ind = induce(k, l, y);
      for (int zc = 0; zc < cls->num_classes(); ++zc) {
        const auto z = coset_space(cls->cls(zc).representative).gset;
        // restrict z along the abstract copy of K = G: index translation is
        // the identity here since K = G.
        const auto z_on_k = GSet(ind.acting.group, z.size(), z.table());
        const auto z_on_l = restrict_gset(z, l);
        CHECK(count_gmaps(ind.gset, z_on_k) ==
              count_gmaps(y, z_on_l.gset));
      }
    }
  }
}

TEST_CASE("marks_and_iso") {
  auto g = named_group(GroupFamily::Cyclic, 2);
  auto cls = classify(g);

  SUBCASE("identical sets get the identity-like iso") {
    const auto r = regular_gset(g);
    auto out = marks_and_iso(r, r, *cls);
    REQUIRE(out.iso.has_value());
    CHECK(out.iso->is_bijective());
  }
  SUBCASE("two free orbits vs four fixed points: no iso") {
    const auto s = coproduct(regular_gset(g), regular_gset(g));
    const auto t = trivial_gset(g, 4);
    auto out = marks_and_iso(s, t, *cls);
    CHECK(out.marks_left == MarkVector{4, 0});
    CHECK(out.marks_right == MarkVector{4, 4});
    CHECK(!out.iso.has_value());
  }
  SUBCASE("S3/e + S3/C2 is isomorphic to (S3/C2)^2") {
    auto s3 = named_group(GroupFamily::Symmetric, 3);
    auto c3 = classify(s3);
    const auto x = coset_space(c3->cls(1).representative).gset;
    const auto s = coproduct(regular_gset(s3), x);
    const auto t = product(x, x);
    auto out = marks_and_iso(s, t, *c3);
    REQUIRE(out.iso.has_value());
    CHECK(out.iso->is_bijective());
  }
}

TEST_CASE("mark vectors are monotone under subconjugacy") {
  auto g = named_group(GroupFamily::Dihedral, 4);
  auto cls = classify(g);
  const auto s = product(coset_space(cls->cls(1).representative).gset,
                         coset_space(cls->cls(2).representative).gset);
  const auto marks = mark_vector(s, *cls);
  for (int a = 0; a < cls->num_classes(); ++a)
    for (int b = 0; b < cls->num_classes(); ++b) {
      if (!subconjugacy_witness(cls->cls(a).representative,
                                cls->cls(b).representative)
               .has_value())
        continue;
      // (a) subconjugate to (b): fixed points of b-fix inside a-fix
      CHECK(marks[b] <= marks[a]);
    }
}
