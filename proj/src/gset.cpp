#include "gspan/gset.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace gspan {

GSet::GSet(GroupPtr group, int size, std::vector<std::vector<int>> act)
    : group_(std::move(group)), size_(size) {
  const int n = group_->order();
  if (static_cast<int>(act.size()) != n)
    throw ValidationError("action table must have |G| rows");
  act_.reserve(static_cast<size_t>(n) * size_);
  for (const auto& row : act) {
    if (static_cast<int>(row.size()) != size_)
      throw ValidationError("action table row has wrong length");
    for (int v : row) {
      if (v < 0 || v >= size_) throw ValidationError("action image out of range");
      act_.push_back(v);
    }
  }
  for (int i = 0; i < size_; ++i)
    if (this->act(0, i) != i)
      throw ValidationError("identity must act trivially");
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int i = 0; i < size_; ++i)
        if (this->act(g, this->act(h, i)) != this->act(group_->mult(g, h), i))
          throw ValidationError("not a left action: g(h.i) != (gh).i");
}

std::vector<std::vector<int>> GSet::table() const {
  std::vector<std::vector<int>> t(group_->order(), std::vector<int>(size_));
  for (int g = 0; g < group_->order(); ++g)
    for (int i = 0; i < size_; ++i) t[g][i] = act(g, i);
  return t;
}

GSet empty_gset(GroupPtr g) {
  const int n = g->order();
  return GSet(std::move(g), 0, std::vector<std::vector<int>>(n));
}

GSet trivial_gset(GroupPtr g, int size) {
  std::vector<int> row(size);
  std::iota(row.begin(), row.end(), 0);
  std::vector<std::vector<int>> act(g->order(), row);
  return GSet(std::move(g), size, std::move(act));
}

GSet regular_gset(GroupPtr g) {
  const int n = g->order();
  std::vector<std::vector<int>> act(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int i = 0; i < n; ++i) act[x][i] = g->mult(x, i);
  return GSet(std::move(g), n, std::move(act));
}

GMap::GMap(GSet source, GSet target, std::vector<int> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (!(*source_.group() == *target_.group()))
    throw ValidationError("equivariant map requires a common group");
  if (static_cast<int>(map_.size()) != source_.size())
    throw ValidationError("map length must equal source size");
  for (int v : map_)
    if (v < 0 || v >= target_.size())
      throw ValidationError("map image out of range");
  const int n = source_.group()->order();
  for (int g = 0; g < n; ++g)
    for (int i = 0; i < source_.size(); ++i)
      if (map_[source_.act(g, i)] != target_.act(g, map_[i]))
        throw ValidationError("map is not equivariant");
}

bool GMap::is_bijective() const {
  if (source_.size() != target_.size()) return false;
  std::vector<char> hit(target_.size(), 0);
  for (int v : map_) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

GMap GMap::inverse() const {
  if (!is_bijective()) throw ValidationError("inverse of a non-bijective map");
  std::vector<int> inv(map_.size());
  for (int i = 0; i < static_cast<int>(map_.size()); ++i) inv[map_[i]] = i;
  return GMap(target_, source_, std::move(inv));
}

GMap identity_map(const GSet& s) {
  std::vector<int> id(s.size());
  std::iota(id.begin(), id.end(), 0);
  return GMap(s, s, std::move(id));
}

GMap compose(const GMap& g, const GMap& f) {
  if (!(f.target() == g.source()))
    throw ValidationError("composition needs matching middle object");
  std::vector<int> m(f.source().size());
  for (int i = 0; i < f.source().size(); ++i) m[i] = g(f(i));
  return GMap(f.source(), g.target(), std::move(m));
}

CosetSpace coset_space(const Subgroup& h) {
  const auto& g = h.parent();
  const int n = g->order();
  std::vector<int> coset_of(n, -1);
  std::vector<int> reps;
  for (int x = 0; x < n; ++x) {
    if (coset_of[x] >= 0) continue;
    const int c = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int t : h.elements()) coset_of[g->mult(x, t)] = c;
  }
  const int m = static_cast<int>(reps.size());
  std::vector<std::vector<int>> act(n, std::vector<int>(m));
  for (int x = 0; x < n; ++x)
    for (int c = 0; c < m; ++c) act[x][c] = coset_of[g->mult(x, reps[c])];
  return CosetSpace{GSet(g, m, std::move(act)), h, std::move(reps),
                    std::move(coset_of)};
}

Subgroup stabilizer(const GSet& s, int point) {
  std::vector<int> els;
  for (int g = 0; g < s.group()->order(); ++g)
    if (s.act(g, point) == point) els.push_back(g);
  return Subgroup(s.group(), std::move(els));
}

OrbitDecomposition decompose(const GSet& s) {
  OrbitDecomposition out;
  std::vector<char> seen(s.size(), 0);
  const int n = s.group()->order();
  for (int i = 0; i < s.size(); ++i) {
    if (seen[i]) continue;
    Orbit orb{{}, i, stabilizer(s, i), identity_map(s)};
    std::vector<int> pts;
    for (int g = 0; g < n; ++g) pts.push_back(s.act(g, i));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (int p : pts) seen[p] = 1;
    orb.points = std::move(pts);
    const CosetSpace cs = coset_space(orb.stabilizer);
    std::vector<int> m(cs.gset.size());
    for (int c = 0; c < cs.gset.size(); ++c) m[c] = s.act(cs.reps[c], i);
    orb.iso = GMap(cs.gset, s, std::move(m));
    out.orbits.push_back(std::move(orb));
  }
  return out;
}

std::vector<int> fixed_points(const GSet& s, const Subgroup& h) {
  std::vector<int> out;
  for (int i = 0; i < s.size(); ++i) {
    bool fixed = true;
    for (int g : h.elements())
      if (s.act(g, i) != i) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(i);
  }
  return out;
}

GSet product(const GSet& s, const GSet& t) {
  if (!(*s.group() == *t.group()))
    throw ValidationError("product requires a common group");
  const int n = s.group()->order();
  const int m = s.size() * t.size();
  std::vector<std::vector<int>> act(n, std::vector<int>(m));
  for (int g = 0; g < n; ++g)
    for (int a = 0; a < s.size(); ++a)
      for (int b = 0; b < t.size(); ++b)
        act[g][a * t.size() + b] = s.act(g, a) * t.size() + t.act(g, b);
  return GSet(s.group(), m, std::move(act));
}

GSet coproduct(const GSet& s, const GSet& t) {
  if (!(*s.group() == *t.group()))
    throw ValidationError("coproduct requires a common group");
  const int n = s.group()->order();
  const int m = s.size() + t.size();
  std::vector<std::vector<int>> act(n, std::vector<int>(m));
  for (int g = 0; g < n; ++g) {
    for (int a = 0; a < s.size(); ++a) act[g][a] = s.act(g, a);
    for (int b = 0; b < t.size(); ++b) act[g][s.size() + b] = s.size() + t.act(g, b);
  }
  return GSet(s.group(), m, std::move(act));
}

PullbackResult pullback(const GMap& f, const GMap& g) {
  if (!(f.target() == g.target()))
    throw ValidationError("pullback requires a shared target");
  std::vector<std::pair<int, int>> pairs;
  std::map<std::pair<int, int>, int> index;
  for (int a = 0; a < f.source().size(); ++a)
    for (int b = 0; b < g.source().size(); ++b)
      if (f(a) == g(b)) {
        index[{a, b}] = static_cast<int>(pairs.size());
        pairs.emplace_back(a, b);
      }
  const int n = f.source().group()->order();
  const int m = static_cast<int>(pairs.size());
  std::vector<std::vector<int>> act(n, std::vector<int>(m));
  for (int x = 0; x < n; ++x)
    for (int i = 0; i < m; ++i)
      act[x][i] = index.at({f.source().act(x, pairs[i].first),
                            g.source().act(x, pairs[i].second)});
  GSet p(f.source().group(), m, std::move(act));
  std::vector<int> left(m), right(m);
  for (int i = 0; i < m; ++i) {
    left[i] = pairs[i].first;
    right[i] = pairs[i].second;
  }
  return PullbackResult{p, GMap(p, f.source(), std::move(left)),
                        GMap(p, g.source(), std::move(right)), std::move(pairs)};
}

std::optional<GMap> mediating_map(const PullbackResult& p, const GMap& a,
                                  const GMap& b) {
  if (!(a.source() == b.source())) return std::nullopt;
  std::map<std::pair<int, int>, int> index;
  for (int i = 0; i < static_cast<int>(p.pairs.size()); ++i)
    index[p.pairs[i]] = i;
  std::vector<int> m(a.source().size());
  for (int w = 0; w < a.source().size(); ++w) {
    auto it = index.find({a(w), b(w)});
    if (it == index.end()) return std::nullopt;
    m[w] = it->second;
  }
  return GMap(a.source(), p.object, std::move(m));
}

RestrictedGSet restrict_gset(const GSet& s, const Subgroup& h) {
  SubgroupGroup hg = subgroup_as_group(h);
  const int n = hg.group->order();
  std::vector<std::vector<int>> act(n, std::vector<int>(s.size()));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < s.size(); ++i) act[a][i] = s.act(hg.to_parent[a], i);
  GSet g(hg.group, s.size(), std::move(act));
  return RestrictedGSet{std::move(hg), std::move(g)};
}

InducedGSet induce(const Subgroup& k, const Subgroup& l, const GSet& y) {
  if (!k.contains(l))
    throw NotASubgroupChainError("induction requires L <= K");
  SubgroupGroup kg = subgroup_as_group(k);
  SubgroupGroup lg = subgroup_as_group(l);
  if (!(*y.group() == *lg.group))
    throw ValidationError("Y must carry an action of L as a group");

  // Transversal of K/L by minimal representatives (in parent indices).
  const auto& parent = *k.parent();
  std::vector<int> coset_of(parent.order(), -1);
  std::vector<int> reps;
  for (int x : k.elements()) {
    if (coset_of[x] >= 0) continue;
    const int c = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int t : l.elements()) coset_of[parent.mult(x, t)] = c;
  }
  const int nc = static_cast<int>(reps.size());
  const int m = nc * y.size();
  std::vector<std::pair<int, int>> points;
  points.reserve(m);
  for (int c = 0; c < nc; ++c)
    for (int i = 0; i < y.size(); ++i) points.emplace_back(c, i);

  std::vector<std::vector<int>> act(kg.group->order(), std::vector<int>(m));
  for (int a = 0; a < kg.group->order(); ++a) {
    const int ka = kg.to_parent[a];
    for (int p = 0; p < m; ++p) {
      const auto [c, i] = points[p];
      const int kc = parent.mult(ka, reps[c]);
      const int c2 = coset_of[kc];
      // ell = reps[c2]^-1 * ka * reps[c] lies in L
      const int ell = parent.mult(parent.inverse(reps[c2]), kc);
      const int li = lg.from_parent[ell];
      if (li < 0) throw ValidationError("transversal arithmetic left L");
      act[a][p] = c2 * y.size() + y.act(li, i);
    }
  }
  GSet ind(kg.group, m, std::move(act));

  std::vector<int> unit(y.size());
  for (int i = 0; i < y.size(); ++i) unit[i] = 0 * y.size() + i;

  // K/L as a K-set over the abstract copy of K.
  std::vector<std::vector<int>> qact(kg.group->order(), std::vector<int>(nc));
  for (int a = 0; a < kg.group->order(); ++a)
    for (int c = 0; c < nc; ++c)
      qact[a][c] = coset_of[parent.mult(kg.to_parent[a], reps[c])];
  GSet quo(kg.group, nc, std::move(qact));
  std::vector<int> qmap(m);
  for (int p = 0; p < m; ++p) qmap[p] = points[p].first;

  return InducedGSet{std::move(kg), ind,          std::move(reps),
                     std::move(points), std::move(unit),
                     GMap(ind, quo, std::move(qmap))};
}

FixedPointFormulaReport check_fixed_point_formula(const InducedGSet& ind,
                                                  const Subgroup& k,
                                                  const Subgroup& l,
                                                  const GSet& y,
                                                  const Subgroup& h) {
  if (!k.contains(h))
    throw NotASubgroupChainError("fixed point formula requires H <= K");
  const auto& parent = *k.parent();
  SubgroupGroup lg = subgroup_as_group(l);

  FixedPointFormulaReport rep;
  // Direct side: H acting through the abstract copy of K.
  {
    std::vector<int> hk;
    for (int e : h.elements()) {
      int a = -1;
      for (int i = 0; i < static_cast<int>(k.elements().size()); ++i)
        if (k.elements()[i] == e) a = i;
      hk.push_back(a);
    }
    for (int p = 0; p < ind.gset.size(); ++p) {
      bool fixed = true;
      for (int a : hk)
        if (ind.gset.act(a, p) != p) {
          fixed = false;
          break;
        }
      if (fixed) rep.direct.push_back(p);
    }
  }
  // Formula side: cosets kL with k^-1 H k <= L contribute Y^{k^-1 H k},
  // embedded as the points (kL, y).
  for (int c = 0; c < static_cast<int>(ind.transversal.size()); ++c) {
    const int t = ind.transversal[c];
    std::vector<int> conj;
    bool inside = true;
    for (int e : h.elements()) {
      const int x = parent.mult(parent.mult(parent.inverse(t), e), t);
      if (lg.from_parent[x] < 0) {
        inside = false;
        break;
      }
      conj.push_back(lg.from_parent[x]);
    }
    if (!inside) continue;
    ++rep.num_contributing_cosets;
    for (int i = 0; i < y.size(); ++i) {
      bool fixed = true;
      for (int a : conj)
        if (y.act(a, i) != i) {
          fixed = false;
          break;
        }
      if (fixed) rep.via_formula.push_back(c * y.size() + i);
    }
  }
  std::sort(rep.via_formula.begin(), rep.via_formula.end());
  rep.pass = rep.direct == rep.via_formula;
  return rep;
}

MarkVector mark_vector(const GSet& s, const SubgroupClassification& cls) {
  MarkVector out(cls.num_classes());
  for (int c = 0; c < cls.num_classes(); ++c)
    out[c] = static_cast<int>(
        fixed_points(s, cls.cls(c).representative).size());
  return out;
}

MarksAndIso marks_and_iso(const GSet& s, const GSet& t,
                          const SubgroupClassification& cls) {
  MarksAndIso out{mark_vector(s, cls), mark_vector(t, cls), std::nullopt};
  if (out.marks_left != out.marks_right) return out;

  // Marks agree, so the orbit type multisets agree (Burnside); match orbits
  // with conjugate stabilizers and glue the pieces.
  const auto ds = decompose(s);
  auto dt = decompose(t);
  std::vector<char> used(dt.orbits.size(), 0);
  std::vector<int> image(s.size(), -1);
  const auto& g = *s.group();
  for (const auto& os : ds.orbits) {
    bool matched = false;
    for (size_t j = 0; j < dt.orbits.size() && !matched; ++j) {
      if (used[j]) continue;
      const auto& ot = dt.orbits[j];
      if (ot.stabilizer.order() != os.stabilizer.order()) continue;
      // need x with stab(t_rep) = x stab(s_rep) x^-1
      for (int x = 0; x < g.order() && !matched; ++x) {
        if (!(os.stabilizer.conjugate(x) == ot.stabilizer)) continue;
        // a.s_rep -> a x^-1 . t_rep, well defined since the stabilizers match
        for (int a = 0; a < g.order(); ++a)
          image[s.act(a, os.representative)] =
              t.act(g.mult(a, g.inverse(x)), ot.representative);
        used[j] = 1;
        matched = true;
      }
    }
    if (!matched)
      throw ValidationError(
          "marks agree but orbit matching failed (mark theorem violated)");
  }
  out.iso = GMap(s, t, std::move(image));
  return out;
}

namespace {

void gmap_search(const GSet& s, const GSet& t,
                 const std::vector<Orbit>& orbits, size_t k,
                 std::vector<int>& image, std::vector<GMap>* maps,
                 long long* count) {
  if (k == orbits.size()) {
    if (maps) maps->emplace_back(s, t, image);
    if (count) ++*count;
    return;
  }
  const auto& orb = orbits[k];
  // A map on the orbit is a choice of target point fixed by the stabilizer.
  for (int v : fixed_points(t, orb.stabilizer)) {
    for (int g = 0; g < s.group()->order(); ++g)
      image[s.act(g, orb.representative)] = t.act(g, v);
    gmap_search(s, t, orbits, k + 1, image, maps, count);
  }
}

}  // namespace

std::vector<GMap> all_gmaps(const GSet& s, const GSet& t) {
  std::vector<GMap> out;
  std::vector<int> image(s.size(), -1);
  const auto d = decompose(s);
  gmap_search(s, t, d.orbits, 0, image, &out, nullptr);
  return out;
}

long long count_gmaps(const GSet& s, const GSet& t) {
  // |Hom_G(S, T)| = prod over orbits of |T^{stabilizer}|.
  long long n = 1;
  for (const auto& orb : decompose(s).orbits)
    n *= static_cast<long long>(fixed_points(t, orb.stabilizer).size());
  return n;
}

}  // namespace gspan
