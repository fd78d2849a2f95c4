#include <doctest.h>

#include <algorithm>
#include <set>

#include "gspan/group.hpp"
#include "gspan/gset.hpp"

using namespace gspan;

namespace {

// Independent oracle: enumerate all subgroups of G by checking every subset
// for closure. Exponential, used only on small groups.
std::set<std::vector<int>> brute_force_subgroups(const FiniteGroup& g) {
  const int n = g.order();
  REQUIRE(n <= 12);  // 2^12 subsets is the ceiling for this oracle
  std::set<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & 1u)) continue;  // must contain the identity
    std::vector<int> els;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) els.push_back(i);
    bool closed = true;
    for (int a : els) {
      if (!std::binary_search(els.begin(), els.end(), g.inverse(a))) {
        closed = false;
        break;
      }
      for (int b : els)
        if (!std::binary_search(els.begin(), els.end(), g.mult(a, b))) {
          closed = false;
          break;
        }
      if (!closed) break;
    }
    if (closed) out.insert(els);
  }
  return out;
}

}  // namespace

TEST_CASE("build_group accepts the trivial group and C2") {
  auto t = FiniteGroup::from_table({{0}});
  CHECK(t->order() == 1);
  auto c2 = FiniteGroup::from_table({{0, 1}, {1, 0}});
  CHECK(c2->order() == 2);
  CHECK(c2->inverse(1) == 1);
}

TEST_CASE("build_group relabels a displaced identity to index 0") {
  // C3 written with identity at index 1
  auto g = FiniteGroup::from_table({{2, 0, 1}, {0, 1, 2}, {1, 2, 0}});
  CHECK(g->order() == 3);
  CHECK(g->mult(0, 2) == 2);
  for (int a = 0; a < 3; ++a) CHECK(g->mult(0, a) == a);
}

TEST_CASE("build_group rejects a corrupted C3 table with a witness") {
  // row 1 corrupted to [1,1,0]: 1*0 = 1 breaks the identity axiom
  try {
    FiniteGroup::from_table({{0, 1, 2}, {1, 1, 0}, {2, 0, 1}});
    FAIL("expected NotAGroupError");
  } catch (const NotAGroupError& e) {
    CHECK(!e.axiom.empty());
  }
}

TEST_CASE("named families have the expected orders") {
  CHECK(named_group(GroupFamily::Cyclic, 1)->order() == 1);
  CHECK(named_group(GroupFamily::Cyclic, 7)->order() == 7);
  CHECK(named_group(GroupFamily::Symmetric, 3)->order() == 6);
  CHECK(named_group(GroupFamily::Alternating, 4)->order() == 12);
  CHECK(named_group(GroupFamily::Dihedral, 4)->order() == 8);
  CHECK(named_group(GroupFamily::Klein4, 0)->order() == 4);
  CHECK(named_group(GroupFamily::Quaternion8, 0)->order() == 8);
  CHECK_THROWS_AS(named_group(GroupFamily::Symmetric, 6),
                  UnsupportedParameterError);
  CHECK_THROWS_AS(named_group(GroupFamily::Cyclic, 0),
                  UnsupportedParameterError);
}

TEST_CASE("subgroup enumeration agrees with the brute-force subset oracle") {
  for (const char* name : {"C2", "C3", "V4", "S3", "D4", "Q8", "A4"}) {
    GroupPtr g;
    if (std::string(name) == "C2") g = named_group(GroupFamily::Cyclic, 2);
    if (std::string(name) == "C3") g = named_group(GroupFamily::Cyclic, 3);
    if (std::string(name) == "V4") g = named_group(GroupFamily::Klein4, 0);
    if (std::string(name) == "S3") g = named_group(GroupFamily::Symmetric, 3);
    if (std::string(name) == "D4") g = named_group(GroupFamily::Dihedral, 4);
    if (std::string(name) == "Q8") g = named_group(GroupFamily::Quaternion8, 0);
    if (std::string(name) == "A4") g = named_group(GroupFamily::Alternating, 4);
    CAPTURE(name);
    const auto expect = brute_force_subgroups(*g);
    const auto got = all_subgroups(g);
    REQUIRE(got.size() == expect.size());
    for (const auto& h : got) CHECK(expect.count(h.elements()) == 1);
  }
}

TEST_CASE("D4 has 10 subgroups with 3 conjugacy classes of order 2") {
  auto g = named_group(GroupFamily::Dihedral, 4);
  auto cls = SubgroupClassification(g);
  CHECK(cls.num_subgroups() == 10);
  int order2_classes = 0;
  for (int c = 0; c < cls.num_classes(); ++c)
    if (cls.cls(c).representative.order() == 2) ++order2_classes;
  CHECK(order2_classes == 3);
}

TEST_CASE("subgroup_classes: C2, S3, trivial") {
  auto c2 = SubgroupClassification(named_group(GroupFamily::Cyclic, 2));
  REQUIRE(c2.num_classes() == 2);
  CHECK(c2.cls(0).representative.order() == 1);
  CHECK(c2.cls(0).weyl.group->order() == 2);
  CHECK(c2.cls(1).weyl.group->order() == 1);

  auto s3 = SubgroupClassification(named_group(GroupFamily::Symmetric, 3));
  REQUIRE(s3.num_classes() == 4);
  CHECK(s3.cls(0).representative.order() == 1);
  CHECK(s3.cls(1).representative.order() == 2);
  CHECK(s3.cls(1).members.size() == 3);
  CHECK(s3.cls(2).representative.order() == 3);
  CHECK(s3.cls(3).representative.order() == 6);

  auto triv = SubgroupClassification(named_group(GroupFamily::Cyclic, 1));
  CHECK(triv.num_classes() == 1);
}

TEST_CASE("classes partition all subgroups and |class| = [G : N_G(H)]") {
  for (auto g : {named_group(GroupFamily::Symmetric, 3),
                 named_group(GroupFamily::Dihedral, 4),
                 named_group(GroupFamily::Quaternion8, 0),
                 named_group(GroupFamily::Alternating, 4)}) {
    auto cls = SubgroupClassification(g);
    size_t total = 0;
    for (int c = 0; c < cls.num_classes(); ++c) {
      const auto& k = cls.cls(c);
      total += k.members.size();
      CHECK(static_cast<int>(k.members.size()) * k.normalizer.order() ==
            g->order());
      CHECK(k.weyl.group->order() * k.representative.order() ==
            k.normalizer.order());
      // representative is the canonical minimum of its class
      for (const auto& mForward : k.members)
        CHECK(!Subgroup::canonical_less(mForward, k.representative));
    }
    CHECK(total == static_cast<size_t>(cls.num_subgroups()));
  }
}

TEST_CASE("subconjugacy witnesses") {
  auto g = named_group(GroupFamily::Symmetric, 3);
  auto cls = SubgroupClassification(g);
  const Subgroup triv = trivial_subgroup(g);
  const Subgroup full = full_subgroup(g);

  SUBCASE("trivial subgroup is subconjugate to everything with witness 0") {
    for (const auto& h : cls.all_subgroups())
      CHECK(subconjugacy_witness(triv, h) == 0);
  }

  SUBCASE("two order-2 subgroups of S3 are conjugate") {
    std::vector<Subgroup> order2;
    for (const auto& h : cls.all_subgroups())
      if (h.order() == 2) order2.push_back(h);
    REQUIRE(order2.size() == 3);
    auto w = subconjugacy_witness(order2[2], order2[0]);
    REQUIRE(w.has_value());
    CHECK(order2[2].conjugate(*w) == order2[0]);
  }

  SUBCASE("C3 is not subconjugate to C2") {
    std::vector<Subgroup> by_order[7];
    for (const auto& h : cls.all_subgroups()) by_order[h.order()].push_back(h);
    CHECK(!subconjugacy_witness(by_order[3][0], by_order[2][0]).has_value());
  }

  SUBCASE("everything is subconjugate to G") {
    for (const auto& h : cls.all_subgroups())
      CHECK(subconjugacy_witness(h, full).has_value());
  }
}

TEST_CASE("double cosets") {
  auto g = named_group(GroupFamily::Symmetric, 3);
  const Subgroup full = full_subgroup(g);
  const Subgroup triv = trivial_subgroup(g);

  SUBCASE("K = H = G gives a single coset") {
    CHECK(double_cosets(full, full).cosets.size() == 1);
  }
  SUBCASE("K = H = {e} gives |G| singletons") {
    CHECK(double_cosets(triv, triv).cosets.size() == 6);
  }
  SUBCASE("K = H = <transposition> gives cosets of sizes 2 and 4") {
    auto cls = SubgroupClassification(g);
    const Subgroup c2 = cls.cls(1).representative;
    auto dc = double_cosets(c2, c2);
    REQUIRE(dc.cosets.size() == 2);
    std::multiset<size_t> sizes;
    for (const auto& c : dc.cosets) sizes.insert(c.elements.size());
    CHECK(sizes == std::multiset<size_t>{2, 4});
  }
  SUBCASE("cosets partition G with minimal representatives") {
    auto cls = SubgroupClassification(g);
    for (int a = 0; a < cls.num_classes(); ++a)
      for (int b = 0; b < cls.num_classes(); ++b) {
        auto dc = double_cosets(cls.cls(a).representative,
                                cls.cls(b).representative);
        std::set<int> all;
        for (const auto& c : dc.cosets) {
          CHECK(c.representative == c.elements.front());
          all.insert(c.elements.begin(), c.elements.end());
        }
        CHECK(all.size() == static_cast<size_t>(g->order()));
      }
  }
}

TEST_CASE("number of double cosets K\\G/H equals number of K-orbits on G/H") {
  for (auto g : {named_group(GroupFamily::Symmetric, 3),
                 named_group(GroupFamily::Dihedral, 4)}) {
    auto cls = SubgroupClassification(g);
    for (int a = 0; a < cls.num_classes(); ++a)
      for (int b = 0; b < cls.num_classes(); ++b) {
        const Subgroup& k = cls.cls(a).representative;
        const Subgroup& h = cls.cls(b).representative;
        auto dc = double_cosets(k, h);
        const auto gh = coset_space(h);
        const auto restricted = restrict_gset(gh.gset, k);
        CHECK(dc.cosets.size() ==
              decompose(restricted.gset).orbits.size());
      }
  }
}

TEST_CASE("iso_name identifies small groups") {
  CHECK(iso_name(*named_group(GroupFamily::Cyclic, 4)) == "C4");
  CHECK(iso_name(*named_group(GroupFamily::Klein4, 0)) == "C2xC2");
  CHECK(iso_name(*named_group(GroupFamily::Symmetric, 3)) == "S3");
  CHECK(iso_name(*named_group(GroupFamily::Dihedral, 4)) == "D4");
  CHECK(iso_name(*named_group(GroupFamily::Quaternion8, 0)) == "Q8");
  CHECK(iso_name(*named_group(GroupFamily::Alternating, 4)) == "A4");
  CHECK(iso_name(*named_group(GroupFamily::Symmetric, 4)) == "S4");
  CHECK(iso_name(*named_group(GroupFamily::Dihedral, 6)) == "D6");
}

TEST_CASE("subgroup_as_group round-trips elements") {
  auto g = named_group(GroupFamily::Dihedral, 4);
  auto cls = SubgroupClassification(g);
  for (const auto& h : cls.all_subgroups()) {
    auto sg = subgroup_as_group(h);
    CHECK(sg.group->order() == h.order());
    for (int i = 0; i < h.order(); ++i)
      CHECK(sg.from_parent[sg.to_parent[i]] == i);
    // multiplication commutes with the embedding
    for (int i = 0; i < h.order(); ++i)
      for (int j = 0; j < h.order(); ++j)
        CHECK(sg.to_parent[sg.group->mult(i, j)] ==
              g->mult(sg.to_parent[i], sg.to_parent[j]));
  }
}
