#include "gspan/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace gspan {

namespace {

std::vector<int> flatten_checked(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw NotAGroupError("nonempty", {-1, -1, -1});
  std::vector<int> flat;
  flat.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n)
      throw NotAGroupError("square table", {i, -1, -1});
    for (int j = 0; j < n; ++j) {
      if (table[i][j] < 0 || table[i][j] >= n)
        throw NotAGroupError("entries in range", {i, j, -1});
      flat.push_back(table[i][j]);
    }
  }
  return flat;
}

}  // namespace

FiniteGroup::FiniteGroup(int order, std::vector<int> mult_table)
    : order_(order), mult_(std::move(mult_table)) {
  inv_.assign(order_, -1);
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      if (mult(a, b) == 0 && mult(b, a) == 0) {
        inv_[a] = b;
        break;
      }
    }
    if (inv_[a] < 0) throw NotAGroupError("inverse", {a, -1, -1});
  }
}

std::shared_ptr<const FiniteGroup> FiniteGroup::from_table(
    const std::vector<std::vector<int>>& table) {
  std::vector<int> flat = flatten_checked(table);
  const int n = static_cast<int>(table.size());
  auto at = [&](int a, int b) { return flat[static_cast<size_t>(a) * n + b]; };

  // Locate the two-sided identity.
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n; ++b)
      if (at(a, b) != b || at(b, a) != b) {
        ok = false;
        break;
      }
    if (ok) e = a;
  }
  if (e < 0) throw NotAGroupError("identity", {0, -1, -1});

  if (e != 0) {
    // Relabel so the identity is element 0 (swap 0 <-> e).
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[0], perm[e]);
    std::vector<int> relabeled(flat.size());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        relabeled[static_cast<size_t>(perm[a]) * n + perm[b]] = perm[at(a, b)];
    flat = std::move(relabeled);
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const int ab = flat[static_cast<size_t>(a) * n + b];
        const int bc = flat[static_cast<size_t>(b) * n + c];
        if (flat[static_cast<size_t>(ab) * n + c] !=
            flat[static_cast<size_t>(a) * n + bc])
          throw NotAGroupError("associativity", {a, b, c});
      }

  return std::shared_ptr<const FiniteGroup>(new FiniteGroup(n, std::move(flat)));
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> t(order_, std::vector<int>(order_));
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b) t[a][b] = mult(a, b);
  return t;
}

namespace {

GroupPtr group_from_mult_fn(int n, const std::function<int(int, int)>& f) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = f(a, b);
  return FiniteGroup::from_table(t);
}

std::vector<std::vector<int>> permutations_lex(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool perm_even(const std::vector<int>& p) {
  int inversions = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

GroupPtr permutation_group(const std::vector<std::vector<int>>& perms) {
  const int n = static_cast<int>(perms.size());
  const int deg = static_cast<int>(perms[0].size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index[perms[i]] = i;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> c(deg);
      for (int x = 0; x < deg; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = index.at(c);
    }
  return FiniteGroup::from_table(t);
}

// Quaternion units 1,-1,i,-i,j,-j,k,-k encoded as (sign, axis).
int q8_mult(int a, int b) {
  auto dec = [](int x) {
    // axis: 0 = 1, 1 = i, 2 = j, 3 = k; sign in {+1,-1}
    int axis = x / 2;
    int sign = (x % 2 == 0) ? 1 : -1;
    return std::pair<int, int>(axis, sign);
  };
  auto [ax, sa] = dec(a);
  auto [bx, sb] = dec(b);
  int sign = sa * sb, axis;
  if (ax == 0) {
    axis = bx;
  } else if (bx == 0) {
    axis = ax;
  } else if (ax == bx) {
    axis = 0;
    sign = -sign;
  } else {
    // i*j=k, j*k=i, k*i=j and the reversed products pick up a sign
    axis = 6 - ax - bx;
    const bool forward = (bx - ax + 3) % 3 == 1;
    if (!forward) sign = -sign;
  }
  return axis * 2 + (sign == 1 ? 0 : 1);
}

}  // namespace

GroupPtr named_group(GroupFamily family, int n) {
  switch (family) {
    case GroupFamily::Cyclic:
      if (n < 1) throw UnsupportedParameterError("cyclic requires n >= 1");
      return group_from_mult_fn(n, [n](int a, int b) { return (a + b) % n; });
    case GroupFamily::Dihedral: {
      if (n < 1) throw UnsupportedParameterError("dihedral requires n >= 1");
      const int m = 2 * n;
      return group_from_mult_fn(m, [n](int a, int b) {
        const bool ra = a < n, rb = b < n;
        const int ka = a % n, kb = b % n;
        if (ra && rb) return (ka + kb) % n;
        if (ra && !rb) return n + (ka + kb) % n;
        if (!ra && rb) return n + (ka - kb + n) % n;
        return (ka - kb + n) % n;
      });
    }
    case GroupFamily::Symmetric: {
      if (n < 1 || n > 5)
        throw UnsupportedParameterError("symmetric supports 1 <= n <= 5");
      return permutation_group(permutations_lex(n));
    }
    case GroupFamily::Alternating: {
      if (n < 1 || n > 5)
        throw UnsupportedParameterError("alternating supports 1 <= n <= 5");
      std::vector<std::vector<int>> evens;
      for (auto& p : permutations_lex(n))
        if (perm_even(p)) evens.push_back(p);
      return permutation_group(evens);
    }
    case GroupFamily::Klein4:
      return group_from_mult_fn(4, [](int a, int b) { return a ^ b; });
    case GroupFamily::Quaternion8:
      return group_from_mult_fn(8, q8_mult);
  }
  throw UnsupportedParameterError("unknown family");
}

std::optional<GroupFamily> parse_family(const std::string& name) {
  if (name == "cyclic") return GroupFamily::Cyclic;
  if (name == "dihedral") return GroupFamily::Dihedral;
  if (name == "symmetric") return GroupFamily::Symmetric;
  if (name == "alternating") return GroupFamily::Alternating;
  if (name == "klein4") return GroupFamily::Klein4;
  if (name == "quaternion8") return GroupFamily::Quaternion8;
  return std::nullopt;
}

GroupPtr named_group(const std::string& family, int n) {
  auto f = parse_family(family);
  if (!f) throw UnsupportedParameterError("unknown family: " + family);
  return named_group(*f, n);
}

Subgroup::Subgroup(GroupPtr parent, std::vector<int> elements)
    : parent_(std::move(parent)), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()),
                  elements_.end());
  if (elements_.empty() || elements_[0] != 0)
    throw ValidationError("subgroup must contain the identity");
  for (int a : elements_) {
    if (a < 0 || a >= parent_->order())
      throw ValidationError("subgroup element out of range");
    if (!std::binary_search(elements_.begin(), elements_.end(),
                            parent_->inverse(a)))
      throw ValidationError("subgroup not closed under inverse");
    for (int b : elements_)
      if (!std::binary_search(elements_.begin(), elements_.end(),
                              parent_->mult(a, b)))
        throw ValidationError("subgroup not closed under multiplication");
  }
}

bool Subgroup::contains(int g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

bool Subgroup::contains(const Subgroup& other) const {
  return std::includes(elements_.begin(), elements_.end(),
                       other.elements().begin(), other.elements().end());
}

Subgroup Subgroup::conjugate(int g) const {
  std::vector<int> out;
  out.reserve(elements_.size());
  for (int x : elements_) out.push_back(parent_->conj(g, x));
  return Subgroup(parent_, std::move(out));
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, {0}); }

Subgroup full_subgroup(const GroupPtr& g) {
  std::vector<int> all(g->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(g, std::move(all));
}

namespace {

std::vector<int> closure(const FiniteGroup& g, std::vector<int> gens) {
  std::set<int> seen(gens.begin(), gens.end());
  seen.insert(0);
  std::vector<int> work(seen.begin(), seen.end());
  while (!work.empty()) {
    const int a = work.back();
    work.pop_back();
    for (int b : std::vector<int>(seen.begin(), seen.end())) {
      for (int c : {g.mult(a, b), g.mult(b, a)}) {
        if (seen.insert(c).second) work.push_back(c);
      }
    }
    if (seen.insert(g.inverse(a)).second) work.push_back(g.inverse(a));
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

Subgroup generated_subgroup(const GroupPtr& g, const std::vector<int>& gens) {
  return Subgroup(g, closure(*g, gens));
}

SubgroupGroup subgroup_as_group(const Subgroup& h) {
  const auto& parent = *h.parent();
  const auto& els = h.elements();
  const int n = static_cast<int>(els.size());
  std::vector<int> from_parent(parent.order(), -1);
  for (int i = 0; i < n; ++i) from_parent[els[i]] = i;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = from_parent[parent.mult(els[a], els[b])];
  SubgroupGroup out;
  out.group = FiniteGroup::from_table(t);
  out.to_parent = els;
  out.from_parent = std::move(from_parent);
  return out;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
  if (g->order() > kMaxGroupOrder)
    throw OversizeError("subgroup enumeration capped at |G| <= " +
                        std::to_string(kMaxGroupOrder));
  // Cyclic subgroups first, then saturate by adjoining single generators.
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> cyclic(g->order());
  for (int a = 0; a < g->order(); ++a) {
    cyclic[a] = closure(*g, {a});
    found.insert(cyclic[a]);
  }
  std::vector<std::vector<int>> work(found.begin(), found.end());
  while (!work.empty()) {
    std::vector<int> s = std::move(work.back());
    work.pop_back();
    for (int a = 0; a < g->order(); ++a) {
      if (std::binary_search(s.begin(), s.end(), a)) continue;
      std::vector<int> gens = s;
      gens.push_back(a);
      std::vector<int> bigger = closure(*g, gens);
      if (found.insert(bigger).second) work.push_back(bigger);
    }
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (const auto& els : found) out.emplace_back(g, els);
  std::sort(out.begin(), out.end(), Subgroup::canonical_less);
  return out;
}

Subgroup normalizer(const Subgroup& h) {
  const auto& g = h.parent();
  std::vector<int> norm;
  for (int x = 0; x < g->order(); ++x)
    if (h.conjugate(x) == h) norm.push_back(x);
  return Subgroup(g, std::move(norm));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<int> out;
  std::set_intersection(a.elements().begin(), a.elements().end(),
                        b.elements().begin(), b.elements().end(),
                        std::back_inserter(out));
  return Subgroup(a.parent(), std::move(out));
}

std::optional<int> subconjugacy_witness(const Subgroup& l, const Subgroup& h) {
  const auto& g = l.parent();
  for (int x = 0; x < g->order(); ++x)
    if (h.contains(l.conjugate(x))) return x;
  return std::nullopt;
}

namespace {

// Quotient N/H with cosets numbered by minimal representative, ascending.
std::pair<SubgroupGroup, std::vector<int>> weyl_quotient(const Subgroup& norm,
                                                         const Subgroup& h) {
  const auto& g = norm.parent();
  std::vector<int> coset_of(g->order(), -1);
  std::vector<int> reps;
  for (int x : norm.elements()) {
    if (coset_of[x] >= 0) continue;
    const int c = static_cast<int>(reps.size());
    reps.push_back(x);  // norm.elements() ascending, so x is minimal in xH
    for (int t : h.elements()) coset_of[g->mult(x, t)] = c;
  }
  const int m = static_cast<int>(reps.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[a][b] = coset_of[g->mult(reps[a], reps[b])];
  SubgroupGroup q;
  q.group = FiniteGroup::from_table(t);
  q.to_parent = reps;
  q.from_parent = std::move(coset_of);
  return {std::move(q), reps};
}

std::string abelian_name(const FiniteGroup& g);

}  // namespace

SubgroupClassification::SubgroupClassification(GroupPtr g)
    : group_(std::move(g)) {
  all_subgroups_ = gspan::all_subgroups(group_);
  const int n = num_subgroups();
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index[all_subgroups_[i].elements()] = i;

  class_of_.assign(n, -1);
  conjugator_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (class_of_[i] >= 0) continue;
    const int c = static_cast<int>(classes_.size());
    // i is canonically minimal among the not-yet-classified, and conjugation
    // preserves order, so subgroup i is the representative of its class.
    for (int x = 0; x < group_->order(); ++x) {
      const Subgroup conj = all_subgroups_[i].conjugate(x);
      const int j = index.at(conj.elements());
      if (class_of_[j] < 0) class_of_[j] = c;
    }
    // Minimal conjugator per member: smallest y with y H_j y^-1 = rep.
    std::vector<Subgroup> members;
    for (int j = 0; j < n; ++j) {
      if (class_of_[j] != c) continue;
      members.push_back(all_subgroups_[j]);
      for (int y = 0; y < group_->order(); ++y)
        if (all_subgroups_[j].conjugate(y) == all_subgroups_[i]) {
          conjugator_[j] = y;
          break;
        }
    }
    Subgroup norm = normalizer(all_subgroups_[i]);
    auto [q, reps] = weyl_quotient(norm, all_subgroups_[i]);
    classes_.push_back(SubgroupClass{all_subgroups_[i], std::move(members),
                                     std::move(norm), std::move(q),
                                     std::move(reps)});
  }

  // |weyl| * |H| = |normalizer| by construction; assert it anyway.
  for (const auto& c : classes_)
    if (c.weyl.group->order() * c.representative.order() !=
        c.normalizer.order())
      throw ValidationError("Weyl order mismatch");

  // Labels: isomorphism-type names with primes for repeats.
  std::map<std::string, int> seen;
  for (const auto& c : classes_) {
    std::string base = iso_name(*subgroup_as_group(c.representative).group);
    if (c.representative.order() == group_->order()) base = iso_name(*group_);
    int k = seen[base]++;
    std::string label = base;
    for (int t = 0; t < k; ++t) label += '\'';
    labels_.push_back(label);
  }
}

int SubgroupClassification::index_of(const Subgroup& h) const {
  auto it = std::lower_bound(all_subgroups_.begin(), all_subgroups_.end(), h,
                             Subgroup::canonical_less);
  if (it == all_subgroups_.end() || !(*it == h))
    throw ValidationError("subgroup not found in classification");
  return static_cast<int>(it - all_subgroups_.begin());
}

int SubgroupClassification::class_of(const Subgroup& h) const {
  return class_of_[index_of(h)];
}

int SubgroupClassification::conjugator_to_representative(
    const Subgroup& h) const {
  return conjugator_[index_of(h)];
}

std::optional<int> SubgroupClassification::class_by_label(
    const std::string& label) const {
  if (label == "e" || label == "1")
    return 0;
  if (label == "G") return num_classes() - 1;
  for (int i = 0; i < num_classes(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

DoubleCosetDecomposition double_cosets(const Subgroup& k, const Subgroup& h) {
  const auto& g = k.parent();
  DoubleCosetDecomposition out{g, k, h, {}};
  std::vector<char> seen(g->order(), 0);
  for (int x = 0; x < g->order(); ++x) {
    if (seen[x]) continue;
    DoubleCoset dc;
    dc.representative = x;  // ascending scan, so x is minimal in K x H
    for (int a : k.elements())
      for (int b : h.elements()) {
        const int y = g->mult(g->mult(a, x), b);
        if (!seen[y]) {
          seen[y] = 1;
          dc.elements.push_back(y);
        }
      }
    std::sort(dc.elements.begin(), dc.elements.end());
    out.cosets.push_back(std::move(dc));
  }
  return out;
}

namespace {

int element_order(const FiniteGroup& g, int a) {
  int x = a, n = 1;
  while (x != 0) {
    x = g.mult(x, a);
    ++n;
  }
  return n;
}

bool is_abelian(const FiniteGroup& g) {
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (g.mult(a, b) != g.mult(b, a)) return false;
  return true;
}

std::string abelian_name(const FiniteGroup& g) {
  // Invariant-factor decomposition by peeling off a maximal-order cyclic
  // direct factor; at this scale a multiset-of-element-orders match against
  // products of cyclic groups is enough.
  const int n = g.order();
  std::multiset<int> orders;
  for (int a = 0; a < n; ++a) orders.insert(element_order(g, a));
  // Enumerate factorizations n = d1 * d2 * ... with d_{i+1} | d_i.
  std::vector<std::vector<int>> stack;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rem, int maxd) {
    if (rem == 1) {
      stack.push_back(cur);
      return;
    }
    for (int d = std::min(rem, maxd); d >= 2; --d) {
      if (rem % d != 0) continue;
      cur.push_back(d);
      rec(rem / d, d);
      cur.pop_back();
    }
  };
  rec(n, n);
  for (const auto& fac : stack) {
    bool dividing = true;
    for (size_t i = 1; i < fac.size(); ++i)
      if (fac[i - 1] % fac[i] != 0) dividing = false;
    if (!dividing) continue;
    // element orders of C_{d1} x ... : lcm of component orders
    std::multiset<int> expect;
    std::function<void(size_t, int)> gen = [&](size_t i, int l) {
      if (i == fac.size()) {
        expect.insert(l);
        return;
      }
      for (int x = 0; x < fac[i]; ++x)
        gen(i + 1, std::lcm(l, fac[i] / std::gcd(fac[i], x == 0 ? fac[i] : x)));
    };
    gen(0, 1);
    if (expect == orders) {
      std::string name;
      for (size_t i = 0; i < fac.size(); ++i) {
        if (i) name += 'x';
        name += 'C' + std::to_string(fac[i]);
      }
      return name;
    }
  }
  return "A" + std::to_string(n) + "?";  // unreachable for abelian inputs
}

}  // namespace

std::string iso_name(const FiniteGroup& g) {
  const int n = g.order();
  if (n == 1) return "e";
  // Cyclic?
  for (int a = 0; a < n; ++a)
    if (element_order(g, a) == n) return "C" + std::to_string(n);
  if (is_abelian(g)) return abelian_name(g);
  int inv = 0, maxord = 0;
  for (int a = 1; a < n; ++a) {
    const int o = element_order(g, a);
    if (o == 2) ++inv;
    maxord = std::max(maxord, o);
  }
  if (n == 6) return "S3";
  if (n == 8) return inv == 1 ? "Q8" : "D4";
  if (n == 10) return "D5";
  if (n == 12) {
    if (inv == 1) return "Dic3";
    if (maxord == 6) return "D6";
    return "A4";
  }
  if (n == 24) {
    if (maxord == 4 && inv == 9) return "S4";
    return "G24";
  }
  if (n % 2 == 0 && inv >= n / 2) return "D" + std::to_string(n / 2);
  return "G" + std::to_string(n);
}

}  // namespace gspan
