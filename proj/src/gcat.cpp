#include "gspan/gcat.hpp"

#include <algorithm>

namespace gspan {

namespace {

std::uint64_t key(int g, int f) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g)) << 32) |
         static_cast<std::uint32_t>(f);
}

}  // namespace

FiniteCategory::FiniteCategory(int num_objects, std::vector<Mor> mors,
                               std::vector<int> identity,
                               std::function<int(int, int)> compose_fn,
                               const GcatLimits& limits)
    : num_objects_(num_objects),
      mors_(std::move(mors)),
      identity_(std::move(identity)) {
  const int nm = static_cast<int>(mors_.size());
  if (static_cast<int>(identity_.size()) != num_objects_)
    throw ValidationError("identity table has wrong length");
  for (int o = 0; o < num_objects_; ++o) {
    const int i = identity_[o];
    if (i < 0 || i >= nm || mors_[i].src != o || mors_[i].tgt != o)
      throw ValidationError("identity morphism has wrong endpoints");
  }

  hom_.assign(num_objects_, std::vector<std::vector<int>>(num_objects_));
  for (int m = 0; m < nm; ++m) hom_[mors_[m].src][mors_[m].tgt].push_back(m);

  for (int f = 0; f < nm; ++f) {
    const int mid = mors_[f].tgt;
    for (int c = 0; c < num_objects_; ++c)
      for (int g : hom_[mid][c]) {
        const int gf = compose_fn(g, f);
        if (gf < 0 || gf >= nm || mors_[gf].src != mors_[f].src ||
            mors_[gf].tgt != c)
          throw ValidationError("composite has wrong endpoints");
        comp_.emplace(key(g, f), gf);
      }
  }

  // Unit laws.
  for (int m = 0; m < nm; ++m)
    if (compose(m, identity_[mors_[m].src]) != m ||
        compose(identity_[mors_[m].tgt], m) != m)
      throw ValidationError("unit law fails");

  // Associativity over all composable triples, with a size guard.
  long long triples = 0;
  for (int a = 0; a < num_objects_ && triples <= limits.max_assoc_triples; ++a)
    for (int b = 0; b < num_objects_; ++b) {
      if (hom_[a][b].empty()) continue;
      for (int c = 0; c < num_objects_; ++c) {
        if (hom_[b][c].empty()) continue;
        for (int d = 0; d < num_objects_; ++d)
          triples += static_cast<long long>(hom_[a][b].size()) *
                     hom_[b][c].size() * hom_[c][d].size();
      }
    }
  if (triples > limits.max_assoc_triples)
    throw OversizeError("category too large to validate associativity");
  for (int a = 0; a < num_objects_; ++a)
    for (int b = 0; b < num_objects_; ++b)
      for (int f : hom_[a][b])
        for (int c = 0; c < num_objects_; ++c)
          for (int g : hom_[b][c]) {
            const int gf = compose(g, f);
            for (int d = 0; d < num_objects_; ++d)
              for (int h : hom_[c][d])
                if (compose(h, gf) != compose(compose(h, g), f))
                  throw ValidationError("composition is not associative");
          }

  // Isomorphism table.
  inverse_.assign(nm, -1);
  for (int m = 0; m < nm; ++m)
    for (int n : hom_[mors_[m].tgt][mors_[m].src])
      if (compose(n, m) == identity_[mors_[m].src] &&
          compose(m, n) == identity_[mors_[m].tgt]) {
        inverse_[m] = n;
        break;
      }
}

int FiniteCategory::compose(int g, int f) const {
  auto it = comp_.find(key(g, f));
  if (it == comp_.end()) throw ValidationError("morphisms are not composable");
  return it->second;
}

const std::vector<int>& FiniteCategory::hom(int a, int b) const {
  return hom_[a][b];
}

int FiniteCategory::inverse(int m) const {
  if (inverse_[m] < 0) throw ValidationError("morphism is not invertible");
  return inverse_[m];
}

std::vector<std::vector<int>> FiniteCategory::iso_classes() const {
  std::vector<int> cls(num_objects_, -1);
  std::vector<std::vector<int>> out;
  for (int a = 0; a < num_objects_; ++a) {
    if (cls[a] >= 0) continue;
    const int c = static_cast<int>(out.size());
    out.push_back({a});
    cls[a] = c;
    for (int b = a + 1; b < num_objects_; ++b) {
      if (cls[b] >= 0) continue;
      for (int m : hom_[a][b])
        if (is_iso(m)) {
          cls[b] = c;
          out[c].push_back(b);
          break;
        }
    }
  }
  return out;
}

GCategoryAction::GCategoryAction(GroupPtr group, CategoryPtr cat,
                                 std::vector<std::vector<int>> obj_act,
                                 std::vector<std::vector<int>> mor_act)
    : group_(std::move(group)),
      cat_(std::move(cat)),
      obj_act_(std::move(obj_act)),
      mor_act_(std::move(mor_act)) {
  const int n = group_->order();
  const auto& c = *cat_;
  if (static_cast<int>(obj_act_.size()) != n ||
      static_cast<int>(mor_act_.size()) != n)
    throw ValidationError("action tables must have |G| rows");
  for (int o = 0; o < c.num_objects(); ++o)
    if (obj_act_[0][o] != o)
      throw ValidationError("identity must act trivially on objects");
  for (int m = 0; m < c.num_morphisms(); ++m)
    if (mor_act_[0][m] != m)
      throw ValidationError("identity must act trivially on morphisms");
  for (int g = 0; g < n; ++g) {
    for (int m = 0; m < c.num_morphisms(); ++m) {
      const int gm = mor_act_[g][m];
      if (c.src(gm) != obj_act_[g][c.src(m)] ||
          c.tgt(gm) != obj_act_[g][c.tgt(m)])
        throw ValidationError("action does not preserve endpoints");
    }
    for (int o = 0; o < c.num_objects(); ++o)
      if (mor_act_[g][c.identity(o)] != c.identity(obj_act_[g][o]))
        throw ValidationError("action does not preserve identities");
    for (int a = 0; a < c.num_objects(); ++a)
      for (int b = 0; b < c.num_objects(); ++b)
        for (int f : c.hom(a, b))
          for (int c2 = 0; c2 < c.num_objects(); ++c2)
            for (int h : c.hom(b, c2))
              if (mor_act_[g][c.compose(h, f)] !=
                  c.compose(mor_act_[g][h], mor_act_[g][f]))
                throw ValidationError("action does not preserve composition");
    for (int h = 0; h < n; ++h) {
      const int gh = group_->mult(g, h);
      for (int o = 0; o < c.num_objects(); ++o)
        if (obj_act_[g][obj_act_[h][o]] != obj_act_[gh][o])
          throw ValidationError("action is not strictly multiplicative");
      for (int m = 0; m < c.num_morphisms(); ++m)
        if (mor_act_[g][mor_act_[h][m]] != mor_act_[gh][m])
          throw ValidationError("action is not strictly multiplicative");
    }
  }
}

bool cocycle_valid(const GCategoryAction& c, const Subgroup& h,
                   const EquivObject& obj) {
  const auto& cat = c.cat();
  const auto& els = h.elements();
  if (obj.cocycle.size() != els.size()) return false;
  auto psi = [&](int g) {
    const auto it = std::lower_bound(els.begin(), els.end(), g);
    return obj.cocycle[it - els.begin()];
  };
  for (size_t i = 0; i < els.size(); ++i) {
    const int g = els[i];
    const int m = obj.cocycle[i];
    if (m < 0 || m >= cat.num_morphisms()) return false;
    if (cat.src(m) != obj.carrier || cat.tgt(m) != c.act_obj(g, obj.carrier))
      return false;
    if (!cat.is_iso(m)) return false;
  }
  if (psi(0) != cat.identity(obj.carrier)) return false;
  for (int g : els)
    for (int k : els)
      // psi_{gk} = (g.psi_k) psi_g
      if (psi(c.group()->mult(g, k)) !=
          cat.compose(c.act_mor(g, psi(k)), psi(g)))
        return false;
  return true;
}

bool equiv_mor_valid(const GCategoryAction& c, const Subgroup& h,
                     const EquivObject& a, const EquivObject& b, int mor) {
  const auto& cat = c.cat();
  if (cat.src(mor) != a.carrier || cat.tgt(mor) != b.carrier) return false;
  const auto& els = h.elements();
  for (size_t i = 0; i < els.size(); ++i)
    // psi'_g ∘ alpha = (g.alpha) ∘ psi_g
    if (cat.compose(b.cocycle[i], mor) !=
        cat.compose(c.act_mor(els[i], mor), a.cocycle[i]))
      return false;
  return true;
}

namespace {

void enumerate_cocycles(const GCategoryAction& c, const Subgroup& h,
                        int carrier, std::vector<EquivObject>* out) {
  const auto& cat = c.cat();
  const auto& els = h.elements();
  std::vector<std::vector<int>> choices(els.size());
  choices[0] = {cat.identity(carrier)};  // psi_e = id
  for (size_t i = 1; i < els.size(); ++i) {
    for (int m : cat.hom(carrier, c.act_obj(els[i], carrier)))
      if (cat.is_iso(m)) choices[i].push_back(m);
    if (choices[i].empty()) return;
  }
  long long total = 1;
  for (const auto& ch : choices) {
    total *= static_cast<long long>(ch.size());
    if (total > 4'000'000)
      throw OversizeError("cocycle enumeration exceeds the configured bound");
  }
  std::vector<int> cur(els.size());
  for (long long it = 0; it < total; ++it) {
    long long t = it;
    for (size_t i = 0; i < els.size(); ++i) {
      cur[i] = choices[i][t % choices[i].size()];
      t /= static_cast<long long>(choices[i].size());
    }
    EquivObject cand{carrier, cur};
    if (cocycle_valid(c, h, cand)) out->push_back(std::move(cand));
  }
}

}  // namespace

HFixCategory homotopy_fixed_points(const GCategoryAction& c, const Subgroup& h,
                                   const SumData* sums,
                                   const GcatLimits& limits) {
  if (!(*c.group() == *h.parent()))
    throw ValidationError("subgroup must belong to the acting group");
  const auto& cat = c.cat();

  std::vector<EquivObject> objects;
  for (int carrier = 0; carrier < cat.num_objects(); ++carrier)
    enumerate_cocycles(c, h, carrier, &objects);
  if (static_cast<int>(objects.size()) > limits.max_objects)
    throw OversizeError("fixed point category exceeds the object cap");

  const int n = static_cast<int>(objects.size());
  std::vector<FiniteCategory::Mor> mors;
  std::vector<int> underlying;
  std::vector<int> identity(n, -1);
  std::unordered_map<std::uint64_t, int> index;  // (a, b, base mor) -> hfix mor
  auto mor_key = [](int a, int b, int m) {
    return (static_cast<std::uint64_t>(a) << 42) |
           (static_cast<std::uint64_t>(b) << 21) | static_cast<std::uint64_t>(m);
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int m : cat.hom(objects[a].carrier, objects[b].carrier))
        if (equiv_mor_valid(c, h, objects[a], objects[b], m)) {
          index[mor_key(a, b, m)] = static_cast<int>(mors.size());
          mors.push_back({a, b});
          underlying.push_back(m);
          if (a == b && m == cat.identity(objects[a].carrier))
            identity[a] = static_cast<int>(mors.size()) - 1;
        }
  for (int a = 0; a < n; ++a)
    if (identity[a] < 0)
      throw ValidationError("missing identity in fixed point category");

  auto compose_fn = [&](int g, int f) {
    const int base = cat.compose(underlying[g], underlying[f]);
    auto it = index.find(mor_key(mors[f].src, mors[g].tgt, base));
    if (it == index.end())
      throw ValidationError(
          "fixed point category not closed under composition");
    return it->second;
  };
  FiniteCategory hcat(n, mors, identity, compose_fn, limits);

  HFixCategory out{std::move(hcat), objects, underlying, h, std::nullopt,
                   nullptr};

  if (sums != nullptr) {
    for (int i = 0; i < n; ++i)
      if (out.objects[i].carrier == sums->zero) {
        out.zero_object = i;
        break;
      }
    const auto els = h.elements();
    const SumData sums_copy = *sums;
    const GCategoryAction* cp = &c;
    auto objects_copy = out.objects;
    out.coproduct = [sums_copy, cp, els, objects_copy](int a, int b) {
      const auto& oa = objects_copy[a];
      const auto& ob = objects_copy[b];
      EquivObject sum;
      sum.carrier = sums_copy.sum_obj(oa.carrier, ob.carrier);
      for (size_t i = 0; i < els.size(); ++i) {
        const int g = els[i];
        // (psi ⊕ psi')_g = twist ∘ (psi_g ⊕ psi'_g)
        const int blockwise = sums_copy.sum_mor(oa.cocycle[i], ob.cocycle[i]);
        const int tw = sums_copy.twist(g, oa.carrier, ob.carrier);
        sum.cocycle.push_back(cp->cat().compose(tw, blockwise));
      }
      for (size_t i = 0; i < objects_copy.size(); ++i)
        if (objects_copy[i].carrier == sum.carrier &&
            objects_copy[i].cocycle == sum.cocycle)
          return static_cast<int>(i);
      throw ValidationError("coproduct left the materialized category");
    };
  }
  return out;
}

void validate_functor_data(const FiniteCategory& src,
                           const FiniteCategory& tgt,
                           const std::vector<int>& obj_map,
                           const std::vector<int>& mor_map) {
  if (static_cast<int>(obj_map.size()) != src.num_objects() ||
      static_cast<int>(mor_map.size()) != src.num_morphisms())
    throw ValidationError("functor tables have wrong lengths");
  for (int m = 0; m < src.num_morphisms(); ++m)
    if (tgt.src(mor_map[m]) != obj_map[src.src(m)] ||
        tgt.tgt(mor_map[m]) != obj_map[src.tgt(m)])
      throw ValidationError("functor does not preserve endpoints");
  for (int o = 0; o < src.num_objects(); ++o)
    if (mor_map[src.identity(o)] != tgt.identity(obj_map[o]))
      throw ValidationError("functor does not preserve identities");
  for (int a = 0; a < src.num_objects(); ++a)
    for (int b = 0; b < src.num_objects(); ++b)
      for (int f : src.hom(a, b))
        for (int c = 0; c < src.num_objects(); ++c)
          for (int g : src.hom(b, c))
            if (mor_map[src.compose(g, f)] !=
                tgt.compose(mor_map[g], mor_map[f]))
              throw ValidationError("functor does not preserve composition");
}

RectifiedFunctor rectify_pseudo(const PseudoEquivFunctor& f, const Subgroup& h,
                                const HFixCategory& hfix_src,
                                const HFixCategory& hfix_tgt) {
  const auto& csrc = f.source->cat();
  const auto& ctgt = f.target->cat();
  validate_functor_data(csrc, ctgt, f.obj_map, f.mor_map);
  for (int g = 0; g < f.source->group()->order(); ++g)
    for (int o = 0; o < csrc.num_objects(); ++o) {
      const int th = f.theta[g][o];
      if (ctgt.src(th) != f.obj_map[f.source->act_obj(g, o)] ||
          ctgt.tgt(th) != f.target->act_obj(g, f.obj_map[o]) ||
          !ctgt.is_iso(th))
        throw IncoherentPseudoDataError("theta component has the wrong shape");
    }

  const auto& els = h.elements();
  auto find_tgt_obj = [&](const EquivObject& e) {
    for (size_t i = 0; i < hfix_tgt.objects.size(); ++i)
      if (hfix_tgt.objects[i].carrier == e.carrier &&
          hfix_tgt.objects[i].cocycle == e.cocycle)
        return static_cast<int>(i);
    throw IncoherentPseudoDataError(
        "rectified object is missing from the target fixed point category");
  };

  RectifiedFunctor out;
  for (const auto& obj : hfix_src.objects) {
    EquivObject image;
    image.carrier = f.obj_map[obj.carrier];
    for (size_t i = 0; i < els.size(); ++i) {
      const int g = els[i];
      // F(C) --F(psi_g)--> F(g.C) --theta_g--> g.F(C)
      image.cocycle.push_back(
          ctgt.compose(f.theta[g][obj.carrier], f.mor_map[obj.cocycle[i]]));
    }
    if (!cocycle_valid(*f.target, h, image))
      throw IncoherentPseudoDataError(
          "rectified cocycle fails the cocycle law");
    out.obj_map.push_back(find_tgt_obj(image));
  }
  for (int m = 0; m < hfix_src.cat.num_morphisms(); ++m) {
    const int base = f.mor_map[hfix_src.underlying_mor[m]];
    const int a = out.obj_map[hfix_src.cat.src(m)];
    const int b = out.obj_map[hfix_src.cat.tgt(m)];
    int found = -1;
    for (int tm : hfix_tgt.cat.hom(a, b))
      if (hfix_tgt.underlying_mor[tm] == base) {
        found = tm;
        break;
      }
    if (found < 0)
      throw IncoherentPseudoDataError(
          "rectified morphism is not equivariant for the new cocycles");
    out.mor_map.push_back(found);
  }
  validate_functor_data(hfix_src.cat, hfix_tgt.cat, out.obj_map, out.mor_map);
  return out;
}

int ProductAction::obj_index(int a, int b) const {
  for (size_t i = 0; i < obj_pairs.size(); ++i)
    if (obj_pairs[i] == std::pair<int, int>{a, b}) return static_cast<int>(i);
  throw ValidationError("object pair not found");
}

int ProductAction::mor_index(int f, int g) const {
  for (size_t i = 0; i < mor_pairs.size(); ++i)
    if (mor_pairs[i] == std::pair<int, int>{f, g}) return static_cast<int>(i);
  throw ValidationError("morphism pair not found");
}

ProductAction product_action(const GCategoryAction& c,
                             const GCategoryAction& d,
                             const GcatLimits& limits) {
  const auto& cc = c.cat();
  const auto& cd = d.cat();
  const int no = cc.num_objects() * cd.num_objects();
  if (no > limits.max_objects)
    throw OversizeError("product category exceeds the object cap");
  std::vector<std::pair<int, int>> obj_pairs, mor_pairs;
  for (int a = 0; a < cc.num_objects(); ++a)
    for (int b = 0; b < cd.num_objects(); ++b) obj_pairs.emplace_back(a, b);
  auto oidx = [&](int a, int b) { return a * cd.num_objects() + b; };

  std::vector<FiniteCategory::Mor> mors;
  std::unordered_map<std::uint64_t, int> midx;
  auto mkey = [](int f, int g) {
    return (static_cast<std::uint64_t>(f) << 32) |
           static_cast<std::uint32_t>(g);
  };
  for (int fm = 0; fm < cc.num_morphisms(); ++fm)
    for (int gm = 0; gm < cd.num_morphisms(); ++gm) {
      midx[mkey(fm, gm)] = static_cast<int>(mors.size());
      mor_pairs.emplace_back(fm, gm);
      mors.push_back(
          {oidx(cc.src(fm), cd.src(gm)), oidx(cc.tgt(fm), cd.tgt(gm))});
    }
  std::vector<int> identity(no);
  for (int a = 0; a < cc.num_objects(); ++a)
    for (int b = 0; b < cd.num_objects(); ++b)
      identity[oidx(a, b)] = midx.at(mkey(cc.identity(a), cd.identity(b)));

  auto compose_fn = [&](int g, int f) {
    const auto [g1, g2] = mor_pairs[g];
    const auto [f1, f2] = mor_pairs[f];
    return midx.at(mkey(cc.compose(g1, f1), cd.compose(g2, f2)));
  };
  auto cat = std::make_shared<FiniteCategory>(no, mors, identity, compose_fn,
                                              limits);

  const int n = c.group()->order();
  std::vector<std::vector<int>> obj_act(n, std::vector<int>(no));
  std::vector<std::vector<int>> mor_act(n, std::vector<int>(mors.size()));
  for (int g = 0; g < n; ++g) {
    for (int a = 0; a < cc.num_objects(); ++a)
      for (int b = 0; b < cd.num_objects(); ++b)
        obj_act[g][oidx(a, b)] = oidx(c.act_obj(g, a), d.act_obj(g, b));
    for (size_t m = 0; m < mor_pairs.size(); ++m)
      mor_act[g][m] = midx.at(mkey(c.act_mor(g, mor_pairs[m].first),
                                   d.act_mor(g, mor_pairs[m].second)));
  }
  return ProductAction{
      GCategoryAction(c.group(), cat, std::move(obj_act), std::move(mor_act)),
      std::move(obj_pairs), std::move(mor_pairs)};
}

}  // namespace gspan
