#include "gspan/mackey.hpp"

#include <algorithm>
#include <sstream>

namespace gspan {

namespace {

std::string subgroup_str(const Subgroup& s) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < s.elements().size(); ++i) {
    if (i) os << ' ';
    os << s.elements()[i];
  }
  os << '}';
  return os.str();
}

}  // namespace

MackeyFunctor::MackeyFunctor(MackeyData data) : data_(std::move(data)) {
  const auto& cls = *data_.cls;
  const int nc = cls.num_classes();
  if (static_cast<int>(data_.ranks.size()) != nc ||
      static_cast<int>(data_.labels.size()) != nc ||
      static_cast<int>(data_.wact.size()) != nc)
    throw DimensionMismatchError("Mackey data shape mismatch");

  // Witness inclusions per (H-class, L-class): the canonically minimal
  // member of each N_G(R_cH)-conjugation orbit of class-(L) subgroups of
  // R_cH. Determined by the classification alone.
  witnesses_.resize(nc);
  for (int ch = 0; ch < nc; ++ch) {
    const Subgroup& rep = cls.cls(ch).representative;
    std::vector<char> seen(cls.num_subgroups(), 0);
    for (int si = 0; si < cls.num_subgroups(); ++si) {
      const Subgroup& w = cls.subgroup(si);
      if (seen[si] || !rep.contains(w)) continue;
      // w is minimal in its orbit because subgroups are scanned canonically.
      witnesses_[ch].push_back(si);
      for (int n : cls.cls(ch).normalizer.elements())
        seen[cls.index_of(w.conjugate(n))] = 1;
    }
  }
}

std::pair<int, int> MackeyFunctor::find_witness(int h_class,
                                                int sub_index) const {
  const auto& cls = *data_.cls;
  const Subgroup& l = cls.subgroup(sub_index);
  const auto& norm = cls.cls(h_class).normalizer;
  // minimal n in N(R_cH) with n W n^-1 = L for a stored witness W
  for (int n : norm.elements()) {
    const int w = cls.index_of(l.conjugate(cls.group()->inverse(n)));
    if (std::binary_search(witnesses_[h_class].begin(),
                           witnesses_[h_class].end(), w))
      return {w, n};
  }
  throw ValidationError("no stored witness reachable (classification bug)");
}

IntMatrix MackeyFunctor::conj_matrix(int g, const Subgroup& h) const {
  const auto& cls = *data_.cls;
  const int c = cls.class_of(h);
  const Subgroup h2 = h.conjugate(g);
  const auto& grp = *cls.group();
  // T_{H'} c_g T_H^-1 = c_{gamma_{H'} g gamma_H^-1}, a normalizer element.
  const int n = grp.mult(
      grp.mult(cls.conjugator_to_representative(h2), g),
      grp.inverse(cls.conjugator_to_representative(h)));
  auto it = data_.wact[c].find(n);
  if (it == data_.wact[c].end())
    throw ValidationError("conjugation left the stored normalizer action");
  return it->second;
}

IntMatrix MackeyFunctor::res_matrix(const Subgroup& l,
                                    const Subgroup& h) const {
  if (!h.contains(l))
    throw NotASubgroupChainError("res_matrix requires L <= H");
  const auto& cls = *data_.cls;
  const auto& grp = *cls.group();
  const int ch = cls.class_of(h);
  const int cl = cls.class_of(l);
  const int gamma_h = cls.conjugator_to_representative(h);
  const Subgroup lp = l.conjugate(gamma_h);  // <= R_cH
  auto [wi, n] = find_witness(ch, cls.index_of(lp));
  // tres(L<=H) = wact_cL(gamma_L gamma_H^-1 n gamma_W^-1)
  //              * stored_res(W) * wact_cH(n^-1)
  const int gamma_l = cls.conjugator_to_representative(l);
  const int gamma_w =
      cls.conjugator_to_representative(cls.subgroup(wi));
  const int m = grp.mult(
      grp.mult(gamma_l, grp.inverse(gamma_h)),
      grp.mult(n, grp.inverse(gamma_w)));
  const IntMatrix& stored = data_.res.at({ch, wi});
  return data_.wact[cl].at(m) * stored *
         data_.wact[ch].at(grp.inverse(n));
}

IntMatrix MackeyFunctor::tr_matrix(const Subgroup& h,
                                   const Subgroup& l) const {
  if (!h.contains(l))
    throw NotASubgroupChainError("tr_matrix requires L <= H");
  const auto& cls = *data_.cls;
  const auto& grp = *cls.group();
  const int ch = cls.class_of(h);
  const int cl = cls.class_of(l);
  const int gamma_h = cls.conjugator_to_representative(h);
  const Subgroup lp = l.conjugate(gamma_h);
  auto [wi, n] = find_witness(ch, cls.index_of(lp));
  // ttr(H>=L) = wact_cH(n) * stored_tr(W)
  //             * wact_cL(gamma_W n^-1 gamma_H gamma_L^-1)
  const int gamma_l = cls.conjugator_to_representative(l);
  const int gamma_w = cls.conjugator_to_representative(cls.subgroup(wi));
  const int m = grp.mult(
      grp.mult(gamma_w, grp.inverse(n)),
      grp.mult(gamma_h, grp.inverse(gamma_l)));
  const IntMatrix& stored = data_.tr.at({ch, wi});
  return data_.wact[ch].at(n) * stored * data_.wact[cl].at(m);
}

IntMatrix MackeyFunctor::contravariant(const Subgroup& l, int a,
                                       const Subgroup& h) const {
  const Subgroup hp = h.conjugate(a);  // a H a^-1 >= L
  if (!hp.contains(l))
    throw NotASubgroupChainError("orbit map requires a^-1 L a <= H");
  return res_matrix(l, hp) * conj_matrix(a, h);
}

IntMatrix MackeyFunctor::covariant(const Subgroup& l, int a,
                                   const Subgroup& h) const {
  const auto& grp = *data_.cls->group();
  const Subgroup hp = h.conjugate(a);
  if (!hp.contains(l))
    throw NotASubgroupChainError("orbit map requires a^-1 L a <= H");
  return conj_matrix(grp.inverse(a), hp) * tr_matrix(hp, l);
}

MackeyFunctor build_mackey(const ClassificationPtr& cls,
                           const MackeyBuilder& builder) {
  MackeyData d;
  d.cls = cls;
  const int nc = cls->num_classes();
  d.ranks.resize(nc);
  d.labels.resize(nc);
  d.wact.resize(nc);
  for (int c = 0; c < nc; ++c) {
    const Subgroup& rep = cls->cls(c).representative;
    d.ranks[c] = builder.rank(rep);
    d.labels[c] = builder.labels(rep);
    for (int n : cls->cls(c).normalizer.elements())
      d.wact[c].emplace(n, builder.conj_native(n, rep));
  }
  MackeyFunctor shell(d);  // computes the witness lists
  for (int ch = 0; ch < nc; ++ch) {
    const Subgroup& rep = cls->cls(ch).representative;
    for (int wi : shell.witnesses(ch)) {
      const Subgroup& w = cls->subgroup(wi);
      const int gamma_w = cls->conjugator_to_representative(w);
      // transported: T_W res^R_W  and  tr^R_W T_W^-1
      d.res[{ch, wi}] = builder.conj_native(gamma_w, w) *
                        builder.res_native(w, rep);
      d.tr[{ch, wi}] =
          builder.tr_native(rep, w) *
          builder.conj_native(cls->group()->inverse(gamma_w),
                              w.conjugate(gamma_w));
    }
  }
  return MackeyFunctor(std::move(d));
}

// ---------------------------------------------------------------------------
// Burnside Mackey functor

namespace {

// Cache of per-subgroup classifications of the subgroup as a group in its
// own right, used to name the A(K) orbit bases.
class BurnsideBuilder : public MackeyBuilder {
 public:
  explicit BurnsideBuilder(ClassificationPtr cls) : cls_(std::move(cls)) {}

  int rank(const Subgroup& k) const override {
    return local(k).classification->num_classes();
  }

  std::vector<std::string> labels(const Subgroup& k) const override {
    const auto& loc = local(k);
    std::vector<std::string> out;
    for (int j = 0; j < loc.classification->num_classes(); ++j)
      out.push_back("[" + iso_name(*loc.sub.group) + "/" +
                    loc.classification->class_label(j) + "]");
    return out;
  }

  // res^H_L [H/J] = decomposition of H/J as an L-set
  IntMatrix res_native(const Subgroup& l, const Subgroup& h) const override {
    const auto& lh = local(h);
    const auto& ll = local(l);
    IntMatrix m(ll.classification->num_classes(),
                lh.classification->num_classes());
    for (int j = 0; j < lh.classification->num_classes(); ++j) {
      // H/J as a set with H-group action, then restricted to L.
      const Subgroup j_in_h = lh.classification->cls(j).representative;
      const Subgroup j_in_g = to_parent(lh, j_in_h);
      const CosetSpace hj = coset_space_in(h, j_in_g);
      // L acts through its inclusion into H.
      const Subgroup l_in_h = from_parent(lh, l);
      const RestrictedGSet rs = restrict_gset(hj.gset, l_in_h);
      for (const auto& orb : decompose(rs.gset).orbits) {
        // orbit stabilizer is a subgroup of L-as-group; translate to G, then
        // into L's own classification
        const Subgroup stab_in_g = to_parent_sg(rs.acting, lh, orb.stabilizer);
        m.at(ll.classification->class_of(from_parent(ll, stab_in_g)), j) += 1;
      }
    }
    return m;
  }

  // tr^H_L [L/J] = [H/J]
  IntMatrix tr_native(const Subgroup& h, const Subgroup& l) const override {
    const auto& lh = local(h);
    const auto& ll = local(l);
    IntMatrix m(lh.classification->num_classes(),
                ll.classification->num_classes());
    for (int j = 0; j < ll.classification->num_classes(); ++j) {
      const Subgroup j_in_g =
          to_parent(ll, ll.classification->cls(j).representative);
      m.at(lh.classification->class_of(from_parent(lh, j_in_g)), j) += 1;
    }
    return m;
  }

  // c_g [H/J] = [gHg^-1 / gJg^-1]
  IntMatrix conj_native(int g, const Subgroup& h) const override {
    const auto& lh = local(h);
    const Subgroup h2 = h.conjugate(g);
    const auto& lh2 = local(h2);
    IntMatrix m(lh2.classification->num_classes(),
                lh.classification->num_classes());
    for (int j = 0; j < lh.classification->num_classes(); ++j) {
      const Subgroup j_in_g =
          to_parent(lh, lh.classification->cls(j).representative);
      m.at(lh2.classification->class_of(from_parent(lh2, j_in_g.conjugate(g))),
           j) += 1;
    }
    return m;
  }

 private:
  struct Local {
    SubgroupGroup sub;
    ClassificationPtr classification;  // of sub.group
  };

  const Local& local(const Subgroup& k) const {
    const int idx = cls_->index_of(k);
    auto it = cache_.find(idx);
    if (it != cache_.end()) return it->second;
    Local loc;
    loc.sub = subgroup_as_group(k);
    loc.classification =
        std::make_shared<SubgroupClassification>(loc.sub.group);
    return cache_.emplace(idx, std::move(loc)).first->second;
  }

  GroupPtr parent() const { return cls_->group(); }

  // subgroup of K-as-group -> subgroup of G
  Subgroup to_parent(const Local& loc, const Subgroup& s) const {
    std::vector<int> els;
    for (int a : s.elements()) els.push_back(loc.sub.to_parent[a]);
    return Subgroup(parent(), std::move(els));
  }

  Subgroup from_parent(const Local& loc, const Subgroup& s) const {
    std::vector<int> els;
    for (int a : s.elements()) {
      const int x = loc.sub.from_parent[a];
      if (x < 0) throw ValidationError("subgroup not inside ambient subgroup");
      els.push_back(x);
    }
    return Subgroup(loc.sub.group, std::move(els));
  }

  // stabilizer inside L-as-group (acting through H-as-group) -> subgroup of G
  Subgroup to_parent_sg(const SubgroupGroup& l_sg, const Local& lh,
                        const Subgroup& stab) const {
    std::vector<int> els;
    for (int a : stab.elements())
      els.push_back(lh.sub.to_parent[l_sg.to_parent[a]]);
    return Subgroup(parent(), std::move(els));
  }

  // coset space of J <= H computed inside H-as-group
  CosetSpace coset_space_in(const Subgroup& h, const Subgroup& j_in_g) const {
    const auto& lh = local(h);
    return coset_space(from_parent(lh, j_in_g));
  }

  ClassificationPtr cls_;
  mutable std::map<int, Local> cache_;
};

}  // namespace

MackeyFunctor burnside_mackey(const ClassificationPtr& cls) {
  return build_mackey(cls, BurnsideBuilder(cls));
}

// ---------------------------------------------------------------------------
// Fixed-point Mackey functor of a permutation module

namespace {

class FixedPointBuilder : public MackeyBuilder {
 public:
  FixedPointBuilder(ClassificationPtr cls, GSet s)
      : cls_(std::move(cls)), s_(std::move(s)) {}

  int rank(const Subgroup& k) const override {
    return static_cast<int>(orbits(k).size());
  }

  std::vector<std::string> labels(const Subgroup& k) const override {
    std::vector<std::string> out;
    for (const auto& o : orbits(k))
      out.push_back("orb@" + std::to_string(o.front()));
    return out;
  }

  IntMatrix res_native(const Subgroup& l, const Subgroup& h) const override {
    const auto oh = orbits(h);
    const auto ol = orbits(l);
    IntMatrix m(static_cast<int>(ol.size()), static_cast<int>(oh.size()));
    for (size_t j = 0; j < oh.size(); ++j)
      for (int x : oh[j]) m.at(orbit_index(ol, x), static_cast<int>(j)) = 1;
    // each point counted once per containing L-orbit row; entries are 0/1
    // because distinct points of one L-orbit lie in the same H-orbit.
    return m;
  }

  IntMatrix tr_native(const Subgroup& h, const Subgroup& l) const override {
    // tr(sum over L-orbit O) = sum over coset reps hL of h.O
    const auto oh = orbits(h);
    const auto ol = orbits(l);
    IntMatrix m(static_cast<int>(oh.size()), static_cast<int>(ol.size()));
    const CosetSpace hl = coset_transversal(h, l);
    for (size_t j = 0; j < ol.size(); ++j) {
      std::vector<std::int64_t> w(s_.size(), 0);
      for (int rep : hl.reps)
        for (int x : ol[j]) w[s_.act(rep, x)] += 1;
      for (size_t i = 0; i < oh.size(); ++i)
        m.at(static_cast<int>(i), static_cast<int>(j)) = w[oh[i].front()];
    }
    return m;
  }

  IntMatrix conj_native(int g, const Subgroup& h) const override {
    const auto oh = orbits(h);
    const auto oh2 = orbits(h.conjugate(g));
    IntMatrix m(static_cast<int>(oh2.size()), static_cast<int>(oh.size()));
    for (size_t j = 0; j < oh.size(); ++j)
      m.at(orbit_index(oh2, s_.act(g, oh[j].front())), static_cast<int>(j)) = 1;
    return m;
  }

 private:
  std::vector<std::vector<int>> orbits(const Subgroup& k) const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(s_.size(), 0);
    for (int i = 0; i < s_.size(); ++i) {
      if (seen[i]) continue;
      std::vector<int> orb{i};
      seen[i] = 1;
      for (size_t t = 0; t < orb.size(); ++t)
        for (int g : k.elements()) {
          const int y = s_.act(g, orb[t]);
          if (!seen[y]) {
            seen[y] = 1;
            orb.push_back(y);
          }
        }
      std::sort(orb.begin(), orb.end());
      out.push_back(std::move(orb));
    }
    return out;
  }

  static int orbit_index(const std::vector<std::vector<int>>& orbs, int x) {
    for (size_t i = 0; i < orbs.size(); ++i)
      if (std::binary_search(orbs[i].begin(), orbs[i].end(), x))
        return static_cast<int>(i);
    throw ValidationError("point missing from orbit partition");
  }

  // minimal coset representatives of H/L (in parent element indices)
  CosetSpace coset_transversal(const Subgroup& h, const Subgroup& l) const {
    const auto hg = subgroup_as_group(h);
    std::vector<int> l_in_h;
    for (int a : l.elements()) l_in_h.push_back(hg.from_parent[a]);
    const CosetSpace cs = coset_space(Subgroup(hg.group, l_in_h));
    CosetSpace out = cs;
    for (auto& r : out.reps) r = hg.to_parent[r];
    return out;
  }

  ClassificationPtr cls_;
  GSet s_;
};

}  // namespace

MackeyFunctor fixed_point_mackey(const ClassificationPtr& cls, const GSet& s) {
  return build_mackey(cls, FixedPointBuilder(cls, s));
}

// ---------------------------------------------------------------------------
// Axiom checker

namespace {

// double cosets K g H restricted to the elements of an ambient subgroup
std::vector<int> double_coset_reps_in(const Subgroup& ambient,
                                      const Subgroup& k, const Subgroup& h) {
  const auto& g = *ambient.parent();
  std::vector<int> reps;
  std::vector<char> seen(g.order(), 0);
  for (int x : ambient.elements()) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (int a : k.elements())
      for (int b : h.elements()) seen[g.mult(g.mult(a, x), b)] = 1;
  }
  return reps;
}

}  // namespace

MackeyCheckReport check_mackey_axioms(const MackeyFunctor& m, ExecMode mode) {
  MackeyCheckReport report;
  const auto& cls = *m.classification();
  const auto& grp = *cls.group();

  // 1. Normalizer action: homomorphism, identity at e, trivial on inner
  //    conjugations.
  for (int c = 0; c < cls.num_classes(); ++c) {
    const auto& wact = m.data().wact[c];
    const auto& rep = cls.cls(c).representative;
    if (!wact.at(0).is_identity()) {
      report.failures.push_back({"conj-identity", "class " + std::to_string(c)});
    }
    for (int h : rep.elements())
      if (!wact.at(h).is_identity())
        report.failures.push_back(
            {"conj-inner-trivial",
             "class " + std::to_string(c) + " h=" + std::to_string(h)});
    for (const auto& [n1, m1] : wact)
      for (const auto& [n2, m2] : wact) {
        ++report.checks_run;
        if (!(wact.at(grp.mult(n1, n2)) == m1 * m2)) {
          report.failures.push_back(
              {"conj-functorial", "class " + std::to_string(c) + " (" +
                                      std::to_string(n1) + "," +
                                      std::to_string(n2) + ")"});
        }
      }
  }

  // Enumerate per-ambient work items: all subgroup pairs inside each class
  // representative.
  struct Item {
    int ambient_class;
    int k_idx, h_idx;
  };
  std::vector<Item> items;
  for (int c = 0; c < cls.num_classes(); ++c) {
    const auto& amb = cls.cls(c).representative;
    for (int ki = 0; ki < cls.num_subgroups(); ++ki) {
      if (!amb.contains(cls.subgroup(ki))) continue;
      for (int hi = 0; hi < cls.num_subgroups(); ++hi)
        if (amb.contains(cls.subgroup(hi))) items.push_back({c, ki, hi});
    }
  }

  std::vector<std::vector<AxiomFailure>> slot(items.size());
  for_each_index(items.size(), mode, [&](size_t t) {
    const auto [c, ki, hi] = items[t];
    const Subgroup& amb = cls.cls(c).representative;
    const Subgroup& k = cls.subgroup(ki);
    const Subgroup& h = cls.subgroup(hi);
    auto& fail = slot[t];

    // 2. transitivity through intermediate subgroups K <= M <= ambient
    if (amb.contains(k)) {
      for (int mi = 0; mi < cls.num_subgroups(); ++mi) {
        const Subgroup& mid = cls.subgroup(mi);
        if (!(mid.contains(k) && amb.contains(mid))) continue;
        if (!(m.res_matrix(k, mid) * m.res_matrix(mid, amb) ==
              m.res_matrix(k, amb)))
          fail.push_back({"res-transitive",
                          subgroup_str(k) + "<=" + subgroup_str(mid) +
                              "<=" + subgroup_str(amb)});
        if (!(m.tr_matrix(amb, mid) * m.tr_matrix(mid, k) ==
              m.tr_matrix(amb, k)))
          fail.push_back({"tr-transitive",
                          subgroup_str(k) + "<=" + subgroup_str(mid) +
                              "<=" + subgroup_str(amb)});
      }
    }

    // 3. conjugation compatibility (g ranges over the ambient representative)
    for (int g : amb.elements()) {
      if (!(m.conj_matrix(g, k) * m.res_matrix(k, amb) ==
            m.res_matrix(k.conjugate(g), amb.conjugate(g)) *
                m.conj_matrix(g, amb)))
        fail.push_back({"conj-res",
                        "g=" + std::to_string(g) + " K=" + subgroup_str(k)});
      if (!(m.conj_matrix(g, amb) * m.tr_matrix(amb, k) ==
            m.tr_matrix(amb.conjugate(g), k.conjugate(g)) *
                m.conj_matrix(g, k)))
        fail.push_back({"conj-tr",
                        "g=" + std::to_string(g) + " K=" + subgroup_str(k)});
    }

    // 4. double coset formula inside the ambient subgroup
    const IntMatrix lhs = m.res_matrix(k, amb) * m.tr_matrix(amb, h);
    IntMatrix rhs(m.rank(cls.class_of(k)), m.rank(cls.class_of(h)));
    for (int g : double_coset_reps_in(amb, k, h)) {
      const Subgroup ghg = h.conjugate(g);
      const Subgroup jk = intersect(k, ghg);           // K ∩ gHg^-1
      const Subgroup jh = jk.conjugate(grp.inverse(g));  // g^-1Kg ∩ H
      rhs = rhs + m.tr_matrix(k, jk) * m.conj_matrix(g, jh) *
                      m.res_matrix(jh, h);
    }
    if (!(lhs == rhs))
      fail.push_back(
          {"double-coset", "ambient=" + subgroup_str(amb) +
                               " K=" + subgroup_str(k) +
                               " H=" + subgroup_str(h)});
  });

  for (auto& s : slot) {
    report.checks_run += 1;
    for (auto& f : s) report.failures.push_back(std::move(f));
  }
  report.pass = report.failures.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Span action

SpanActionResult span_act(const MackeyFunctor& m, const RetractiveSpan& rs,
                          const std::vector<std::int64_t>& x) {
  const Span& s = rs.span();
  const auto& cls = *m.classification();
  const int ch = s.source_class();
  const int ck = s.target_class();
  if (static_cast<int>(x.size()) != m.rank(ch))
    throw DimensionMismatchError("span_act input has wrong length");

  const CosetSpace gh = coset_space(cls.cls(ch).representative);
  const CosetSpace gk = coset_space(cls.cls(ck).representative);

  std::vector<std::int64_t> out(m.rank(ck), 0);
  for (const auto& orb : decompose(s.middle()).orbits) {
    const Subgroup& stab = orb.stabilizer;
    const int a = gh.reps[s.leg_p()(orb.representative)];
    const int b = gk.reps[s.leg_q()(orb.representative)];
    const IntMatrix piece =
        m.covariant(stab, b, cls.cls(ck).representative) *
        m.contravariant(stab, a, cls.cls(ch).representative);
    const auto y = piece.apply(x);
    for (size_t i = 0; i < y.size(); ++i) out[i] += y[i];
  }
  return SpanActionResult{ch, ck, std::move(out)};
}

IntMatrix span_action_matrix(const MackeyFunctor& m, const RetractiveSpan& rs) {
  const int ch = rs.span().source_class();
  const int ck = rs.span().target_class();
  IntMatrix out(m.rank(ck), m.rank(ch));
  for (int j = 0; j < m.rank(ch); ++j) {
    std::vector<std::int64_t> e(m.rank(ch), 0);
    e[j] = 1;
    const auto r = span_act(m, rs, e);
    for (int i = 0; i < m.rank(ck); ++i) out.at(i, j) = r.vector[i];
  }
  return out;
}

}  // namespace gspan
