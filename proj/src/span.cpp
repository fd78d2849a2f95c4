#include "gspan/span.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace gspan {

namespace {

GSet canonical_orbit(const SubgroupClassification& cls, int c) {
  return coset_space(cls.cls(c).representative).gset;
}

}  // namespace

Span::Span(ClassificationPtr cls, int source_class, int target_class,
           GSet middle, GMap leg_p, GMap leg_q)
    : cls_(std::move(cls)),
      source_class_(source_class),
      target_class_(target_class),
      middle_(std::move(middle)),
      leg_p_(std::move(leg_p)),
      leg_q_(std::move(leg_q)) {
  if (source_class_ < 0 || source_class_ >= cls_->num_classes() ||
      target_class_ < 0 || target_class_ >= cls_->num_classes())
    throw ClassMismatchError("span class index out of range");
  if (!(leg_p_.source() == middle_) || !(leg_q_.source() == middle_))
    throw LegMismatchError("span legs must start at the middle");
  if (!(leg_p_.target() == canonical_orbit(*cls_, source_class_)))
    throw LegMismatchError("left leg must land in G/H");
  if (!(leg_q_.target() == canonical_orbit(*cls_, target_class_)))
    throw LegMismatchError("right leg must land in G/K");
}

Span unit_span(const ClassificationPtr& cls, int h_class) {
  GSet gh = canonical_orbit(*cls, h_class);
  return Span(cls, h_class, h_class, gh, identity_map(gh), identity_map(gh));
}

Span empty_span(const ClassificationPtr& cls, int h_class, int k_class) {
  GSet e = empty_gset(cls->group());
  GSet gh = canonical_orbit(*cls, h_class);
  GSet gk = canonical_orbit(*cls, k_class);
  return Span(cls, h_class, k_class, e, GMap(e, gh, {}), GMap(e, gk, {}));
}

Span orbit_span(const ClassificationPtr& cls, int h_class, int k_class,
                const Subgroup& m, int coset_in_h, int coset_in_k) {
  const CosetSpace gm = coset_space(m);
  GSet gh = canonical_orbit(*cls, h_class);
  GSet gk = canonical_orbit(*cls, k_class);
  std::vector<int> pm(gm.gset.size()), qm(gm.gset.size());
  for (int c = 0; c < gm.gset.size(); ++c) {
    pm[c] = gh.act(gm.reps[c], coset_in_h);
    qm[c] = gk.act(gm.reps[c], coset_in_k);
  }
  return Span(cls, h_class, k_class, gm.gset, GMap(gm.gset, gh, std::move(pm)),
              GMap(gm.gset, gk, std::move(qm)));
}

Span transfer_span(const ClassificationPtr& cls, int h_class) {
  const int top = cls->num_classes() - 1;
  GSet gh = canonical_orbit(*cls, h_class);
  GSet gg = canonical_orbit(*cls, top);
  std::vector<int> q(gh.size(), 0);
  return Span(cls, h_class, top, gh, identity_map(gh),
              GMap(gh, gg, std::move(q)));
}

Span restriction_span(const ClassificationPtr& cls, int h_class) {
  const int top = cls->num_classes() - 1;
  GSet gh = canonical_orbit(*cls, h_class);
  GSet gg = canonical_orbit(*cls, top);
  std::vector<int> p(gh.size(), 0);
  return Span(cls, top, h_class, gh, GMap(gh, gg, std::move(p)),
              identity_map(gh));
}

Span compose_spans(const Span& s1, const Span& s2) {
  if (s1.classification() != s2.classification() &&
      !(*s1.classification()->group() == *s2.classification()->group()))
    throw ClassMismatchError("spans live over different groups");
  if (s1.target_class() != s2.source_class())
    throw ClassMismatchError("span composition needs matching middle class");
  const PullbackResult pb = pullback(s1.leg_q(), s2.leg_p());
  return Span(s1.classification(), s1.source_class(), s2.target_class(),
              pb.object, compose(s1.leg_p(), pb.to_left),
              compose(s2.leg_q(), pb.to_right));
}

Span span_disjoint_union(const Span& a, const Span& b) {
  if (a.source_class() != b.source_class() ||
      a.target_class() != b.target_class())
    throw ClassMismatchError("disjoint union needs equal leg classes");
  GSet mid = coproduct(a.middle(), b.middle());
  std::vector<int> p(mid.size()), q(mid.size());
  for (int i = 0; i < a.middle().size(); ++i) {
    p[i] = a.leg_p()(i);
    q[i] = a.leg_q()(i);
  }
  for (int i = 0; i < b.middle().size(); ++i) {
    p[a.middle().size() + i] = b.leg_p()(i);
    q[a.middle().size() + i] = b.leg_q()(i);
  }
  return Span(a.classification(), a.source_class(), a.target_class(), mid,
              GMap(mid, a.leg_p().target(), std::move(p)),
              GMap(mid, a.leg_q().target(), std::move(q)));
}

SpanNormalForm span_normal_form(const Span& s) {
  SpanNormalForm nf;
  for (const auto& orb : decompose(s.middle()).orbits) {
    SpanOrbitKey best{-1, -1, {}};
    bool first = true;
    for (int x : orb.points) {
      SpanOrbitKey key{s.leg_p()(x), s.leg_q()(x),
                       stabilizer(s.middle(), x).elements()};
      if (first || key < best) {
        best = std::move(key);
        first = false;
      }
    }
    nf.push_back(std::move(best));
  }
  std::sort(nf.begin(), nf.end());
  return nf;
}

std::string normal_form_to_string(const SpanNormalForm& nf) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < nf.size(); ++i) {
    if (i) os << ", ";
    os << '(' << nf[i].p_coset << ',' << nf[i].q_coset << ",[";
    for (size_t j = 0; j < nf[i].stabilizer.size(); ++j) {
      if (j) os << ' ';
      os << nf[i].stabilizer[j];
    }
    os << "])";
  }
  os << '}';
  return os.str();
}

std::optional<GMap> span_iso(const Span& a, const Span& b) {
  if (a.source_class() != b.source_class() ||
      a.target_class() != b.target_class())
    return std::nullopt;
  if (a.middle().size() != b.middle().size()) return std::nullopt;

  // Match orbits by their minimal (p, q, stabilizer) key; a key witness on
  // each side yields the orbit isomorphism x.s -> x.t.
  struct Witness {
    int point;
    SpanOrbitKey key;
  };
  auto witnesses = [](const Span& s) {
    std::vector<Witness> out;
    for (const auto& orb : decompose(s.middle()).orbits) {
      Witness best{-1, {-1, -1, {}}};
      bool first = true;
      for (int x : orb.points) {
        SpanOrbitKey key{s.leg_p()(x), s.leg_q()(x),
                         stabilizer(s.middle(), x).elements()};
        if (first || key < best.key) {
          best = Witness{x, std::move(key)};
          first = false;
        }
      }
      out.push_back(std::move(best));
    }
    return out;
  };
  auto wa = witnesses(a);
  auto wb = witnesses(b);
  if (wa.size() != wb.size()) return std::nullopt;

  std::vector<char> used(wb.size(), 0);
  std::vector<int> image(a.middle().size(), -1);
  const auto& g = *a.middle().group();
  for (const auto& w : wa) {
    bool matched = false;
    for (size_t j = 0; j < wb.size() && !matched; ++j) {
      if (used[j] || !(wb[j].key == w.key)) continue;
      for (int x = 0; x < g.order(); ++x)
        image[a.middle().act(x, w.point)] = b.middle().act(x, wb[j].point);
      used[j] = 1;
      matched = true;
    }
    if (!matched) return std::nullopt;
  }
  GMap iso(a.middle(), b.middle(), std::move(image));
  if (!iso.is_bijective()) return std::nullopt;
  // Leg compatibility is forced by equal keys; check anyway.
  for (int i = 0; i < a.middle().size(); ++i)
    if (a.leg_p()(i) != b.leg_p()(iso(i)) || a.leg_q()(i) != b.leg_q()(iso(i)))
      return std::nullopt;
  return iso;
}

TableOfMarks table_of_marks(const ClassificationPtr& cls, ExecMode mode) {
  const int n = cls->num_classes();
  TableOfMarks out{cls, IntMatrix(n, n)};
  std::vector<GSet> orbits;
  orbits.reserve(n);
  for (int i = 0; i < n; ++i) orbits.push_back(canonical_orbit(*cls, i));
  for_each_index(static_cast<size_t>(n) * n, mode, [&](size_t idx) {
    const int i = static_cast<int>(idx) / n, j = static_cast<int>(idx) % n;
    out.m.at(i, j) = static_cast<std::int64_t>(
        fixed_points(orbits[i], cls->cls(j).representative).size());
  });
  return out;
}

BurnsideElement burnside_basis_element(const ClassificationPtr& cls,
                                       int h_class) {
  BurnsideElement e{cls, std::vector<std::int64_t>(cls->num_classes(), 0)};
  e.coeffs[h_class] = 1;
  return e;
}

BurnsideElement burnside_of_gset(const ClassificationPtr& cls, const GSet& s) {
  BurnsideElement e{cls, std::vector<std::int64_t>(cls->num_classes(), 0)};
  for (const auto& orb : decompose(s).orbits)
    e.coeffs[cls->class_of(orb.stabilizer)] += 1;
  return e;
}

std::vector<std::int64_t> ghost_coordinates(const BurnsideElement& a) {
  const auto marks = table_of_marks(a.cls, ExecMode::Serial);
  const int n = a.cls->num_classes();
  std::vector<std::int64_t> ghost(n, 0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) ghost[j] += a.coeffs[i] * marks.m.at(i, j);
  return ghost;
}

BurnsideElement burnside_multiply(const BurnsideElement& a,
                                  const BurnsideElement& b) {
  if (a.cls != b.cls && !(*a.cls->group() == *b.cls->group()))
    throw ClassMismatchError("Burnside elements over different groups");
  const auto& cls = a.cls;
  const int n = cls->num_classes();

  // Route 1: bilinear extension of orbit decompositions of products.
  BurnsideElement out{cls, std::vector<std::int64_t>(n, 0)};
  for (int i = 0; i < n; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (b.coeffs[j] == 0) continue;
      const GSet prod = product(canonical_orbit(*cls, i),
                                canonical_orbit(*cls, j));
      const BurnsideElement d = burnside_of_gset(cls, prod);
      for (int k = 0; k < n; ++k)
        out.coeffs[k] += a.coeffs[i] * b.coeffs[j] * d.coeffs[k];
    }
  }

  // Route 2: pointwise in ghost coordinates, then the exact solve against
  // the transposed (upper triangular) table of marks.
  const auto marks = table_of_marks(cls, ExecMode::Serial);
  const auto ga = ghost_coordinates(a);
  const auto gb = ghost_coordinates(b);
  std::vector<std::int64_t> gprod(n);
  for (int j = 0; j < n; ++j) gprod[j] = ga[j] * gb[j];
  IntMatrix mt(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mt.at(i, j) = marks.m.at(j, i);
  const auto via_ghost = solve_upper_triangular_exact(mt, gprod);
  if (via_ghost != out.coeffs)
    throw ValidationError(
        "Burnside product mismatch between orbit and ghost routes");
  return out;
}

}  // namespace gspan
