#include "schurkit/sring_build.hpp"

#include <algorithm>
#include <set>

namespace schurkit {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Subgroup trivial_subgroup(const Group& g) { return generate_subgroup(g, {}); }

Subgroup full_subgroup(const Group& g) {
  std::vector<int> all(g.order());
  for (int e = 0; e < g.order(); ++e) all[e] = e;
  return generate_subgroup(g, all);
}

std::vector<ElemSet> partition_masks(const std::vector<std::vector<int>>& parts) {
  std::vector<ElemSet> masks;
  masks.reserve(parts.size());
  for (const auto& p : parts) masks.push_back(vector_to_set(p));
  std::sort(masks.begin(), masks.end(), [](ElemSet x, ElemSet y) {
    if (set_size(x) != set_size(y)) return set_size(x) < set_size(y);
    return set_min(x) < set_min(y);
  });
  return masks;
}

Perm automorphism_perm(const GroupAutomorphism& f) {
  return Perm(std::vector<int>(f.image));
}

}  // namespace

SRing orbit_sring(GroupPtr g, const PermGroup& k) {
  if (!g) throw std::invalid_argument("null group");
  if (k.degree() != g->order())
    throw std::invalid_argument("permutation degree does not match the group order");
  for (int e = 0; e < g->order(); ++e)
    if (!k.contains(right_translation(*g, e)))
      throw std::invalid_argument("group does not contain the right translation by " +
                                  std::to_string(e));
  PermGroup stab = k.point_stabilizer(g->identity());
  std::vector<std::vector<int>> orbits = stab.orbits();
  std::vector<ElemSet> classes;
  classes.reserve(orbits.size());
  for (const auto& o : orbits) classes.push_back(vector_to_set(o));
  return SRing::validate(std::move(g), classes);
}

SRing cyclotomic_sring(GroupPtr g, const std::vector<GroupAutomorphism>& k) {
  if (!g) throw std::invalid_argument("null group");
  std::vector<Perm> perms;
  perms.reserve(k.size());
  for (const GroupAutomorphism& f : k) {
    if (!is_automorphism(*g, f.image))
      throw std::invalid_argument("input map is not an automorphism of the group");
    perms.push_back(automorphism_perm(f));
  }
  std::vector<ElemSet> classes;
  for (const auto& o : orbit_partition(g->order(), perms))
    classes.push_back(vector_to_set(o));
  SRing ring = SRing::validate(g, classes);

  // the orbit ring of the closure of the translations with K must coincide
  std::vector<Perm> gens;
  int stride = 1;
  for (int f : g->factors()) {
    gens.push_back(right_translation(*g, stride));
    stride *= f;
  }
  for (const Perm& p : perms)
    if (!p.is_identity()) gens.push_back(p);
  PermGroup closure = PermGroup::trivial(g->order());
  if (!gens.empty()) {
    ClosureOptions opts;
    opts.max_order = UINT64_MAX;
    closure = PermGroup::close(std::move(gens), opts);
  }
  SRing schurian = orbit_sring(g, closure);
  if (ring != schurian)
    throw PropertyViolation("automorphism orbits disagree with the stabilizer orbits");
  return ring;
}

SRing tensor_sring(const SRing& a1, const SRing& a2) {
  std::vector<int> factors = a1.group().factors();
  for (int f : a2.group().factors()) factors.push_back(f);
  auto g = std::make_shared<Group>(factors);
  const int n1 = a1.group().order();
  std::vector<ElemSet> classes;
  for (ElemSet x2 : a2.classes())
    for (ElemSet x1 : a1.classes()) {
      ElemSet c = 0;
      for (int e2 : set_to_vector(x2))
        for (int e1 : set_to_vector(x1)) c = set_insert(c, e1 + n1 * e2);
      classes.push_back(c);
    }
  return SRing::validate(std::move(g), classes);
}

SRing restrict_sring(const SRing& a, const Subgroup& u) {
  return quotient_sring(a, make_section(a.group(), u, trivial_subgroup(a.group())));
}

SRing s_wreath(const GroupPtr& g, const Section& s, const SRing& a_u,
               const SRing& a_quot) {
  Section sec_u = make_section(*g, s.upper, trivial_subgroup(*g));
  Section sec_l = make_section(*g, full_subgroup(*g), s.lower);
  if (a_u.group().factors() != sec_u.quotient.factors())
    throw std::invalid_argument("inner ring is not over the upper subgroup");
  if (a_quot.group().factors() != sec_l.quotient.factors())
    throw std::invalid_argument("outer ring is not over the quotient by the lower subgroup");

  std::vector<int> from_u(sec_u.quotient.order());
  for (int u : s.upper.elements) from_u[sec_u.pi[u]] = u;

  ElemSet upper_q = 0;
  for (int u : s.upper.elements) upper_q = set_insert(upper_q, sec_l.pi[u]);
  if (!a_quot.is_a_set(upper_q))
    throw std::invalid_argument(
        "section mismatch: the image of the upper subgroup is not a class union "
        "of the outer ring");

  // both inputs must induce the same partition of the section
  std::set<ElemSet> side1, side2;
  for (ElemSet x : a_u.classes()) {
    ElemSet img = 0;
    for (int e : set_to_vector(x)) img = set_insert(img, sec_l.pi[from_u[e]]);
    side1.insert(img);
  }
  for (ElemSet y : a_quot.classes())
    if ((y & ~upper_q) == 0) side2.insert(y);
  if (side1 != side2)
    throw std::invalid_argument("section mismatch: the two rings disagree on " +
                                format_set(upper_q));

  std::vector<ElemSet> classes;
  for (ElemSet x : a_u.classes()) {
    ElemSet lift = 0;
    for (int e : set_to_vector(x)) lift = set_insert(lift, from_u[e]);
    classes.push_back(lift);
  }
  for (ElemSet y : a_quot.classes()) {
    if ((y & ~upper_q) == 0) continue;
    ElemSet pre = 0;
    for (int e = 0; e < g->order(); ++e)
      if (set_contains(y, sec_l.pi[e])) pre = set_insert(pre, e);
    classes.push_back(pre);
  }
  return SRing::validate(g, classes);
}

std::vector<std::pair<Subgroup, Subgroup>> detect_tensor(const SRing& a) {
  const Group& g = a.group();
  const int n = g.order();
  std::vector<Subgroup> subs = a.a_subgroups();
  std::vector<std::pair<Subgroup, Subgroup>> out;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (std::size_t j = i + 1; j < subs.size(); ++j) {
      const Subgroup& h1 = subs[i];
      const Subgroup& h2 = subs[j];
      if (h1.order() <= 1 || h2.order() <= 1) continue;
      if (h1.order() >= n || h2.order() >= n) continue;
      if (h1.order() * h2.order() != n) continue;
      if ((h1.mask() & h2.mask()) != ElemSet{1}) continue;

      // unique factorization x = a*b with a in h1, b in h2
      std::vector<int> pa(n, -1), pb(n, -1);
      for (int x = 0; x < n; ++x)
        for (int e1 : h1.elements) {
          int rest = g.mul(g.inv(e1), x);
          if (set_contains(h2.mask(), rest)) {
            pa[x] = e1;
            pb[x] = rest;
            break;
          }
        }

      bool all_split = true;
      for (ElemSet x : a.classes()) {
        ElemSet p1 = 0, p2 = 0;
        for (int e : set_to_vector(x)) {
          p1 = set_insert(p1, pa[e]);
          p2 = set_insert(p2, pb[e]);
        }
        ElemSet prod = 0;
        for (int e1 : set_to_vector(p1))
          for (int e2 : set_to_vector(p2)) prod = set_insert(prod, g.mul(e1, e2));
        if (prod != x) {
          all_split = false;
          break;
        }
      }
      if (all_split) out.emplace_back(h1, h2);
    }
  }
  return out;
}

std::vector<SWreathWitness> detect_s_wreath(const SRing& a) {
  const Group& g = a.group();
  const ElemSet full = full_set(g.order());
  std::vector<Subgroup> subs = a.a_subgroups();

  std::vector<ElemSet> rad_of_class(a.rank());
  for (int i = 0; i < a.rank(); ++i)
    rad_of_class[i] = radical(g, set_to_vector(a.classes()[i])).mask();

  std::vector<SWreathWitness> out;
  for (const Subgroup& u : subs) {
    for (const Subgroup& l : subs) {
      if ((l.mask() & ~u.mask()) != 0) continue;  // need L <= U
      bool l_trivial = l.order() == 1;
      bool u_full = u.mask() == full;
      if (l_trivial && u.order() == 1) continue;  // one-point section e/e
      if (u_full && l.mask() == full) continue;   // one-point section G/G

      bool ok = true;
      for (int i = 0; i < a.rank() && ok; ++i) {
        if ((a.classes()[i] & ~u.mask()) == 0) continue;  // class inside U
        if ((l.mask() & ~rad_of_class[i]) != 0) ok = false;
      }
      if (!ok) continue;
      out.push_back(SWreathWitness{make_section(g, u, l), !l_trivial && !u_full});
    }
  }
  std::sort(out.begin(), out.end(), [](const SWreathWitness& x, const SWreathWitness& y) {
    if (x.section.upper.order() != y.section.upper.order())
      return x.section.upper.order() > y.section.upper.order();
    if (x.section.lower.order() != y.section.lower.order())
      return x.section.lower.order() < y.section.lower.order();
    if (x.section.upper.mask() != y.section.upper.mask())
      return x.section.upper.mask() < y.section.upper.mask();
    return x.section.lower.mask() < y.section.lower.mask();
  });
  return out;
}

std::vector<GroupAutomorphism> aut_g(const SRing& a) {
  const Group& g = a.group();
  std::vector<GroupAutomorphism> out;
  for (const GroupAutomorphism& f : automorphism_group(g).all) {
    bool fixes = true;
    for (ElemSet c : a.classes()) {
      ElemSet img = 0;
      for (int e : set_to_vector(c)) img = set_insert(img, f.image[e]);
      if (img != c) {
        fixes = false;
        break;
      }
    }
    if (fixes) out.push_back(f);
  }
  return out;
}

bool cayley_equivalent(const Group& g, const std::vector<GroupAutomorphism>& k1,
                       const std::vector<GroupAutomorphism>& k2) {
  auto orbits = [&](const std::vector<GroupAutomorphism>& k) {
    std::vector<Perm> perms;
    for (const GroupAutomorphism& f : k) {
      if (!is_automorphism(g, f.image))
        throw std::invalid_argument("input map is not an automorphism of the group");
      perms.push_back(automorphism_perm(f));
    }
    return partition_masks(orbit_partition(g.order(), perms));
  };
  return orbits(k1) == orbits(k2);
}

TriState cayley_minimal(const SRing& a) {
  std::vector<GroupAutomorphism> stab = aut_g(a);
  if (cyclotomic_sring(a.group_ptr(), stab) != a) return TriState::not_applicable;

  std::vector<Perm> perms;
  for (const GroupAutomorphism& f : stab) {
    Perm p = automorphism_perm(f);
    if (!p.is_identity()) perms.push_back(std::move(p));
  }
  PermGroup k = PermGroup::trivial(a.group().order());
  if (!perms.empty()) {
    ClosureOptions opts;
    opts.max_order = UINT64_MAX;
    k = PermGroup::close(perms, opts);
  }
  ElementTable table = element_table(k, 100000);
  for (const auto& sub : enumerate_subgroups(table)) {
    if (sub.size() == table.elems.size()) continue;  // proper subgroups only
    std::vector<Perm> sub_elems;
    for (std::uint16_t e : sub) sub_elems.push_back(table.elems[e]);
    if (partition_masks(orbit_partition(a.group().order(), sub_elems)) == a.classes())
      return TriState::no;
  }
  return TriState::yes;
}

namespace {

bool structurally_cyclotomic(const SRing& a) {
  return cyclotomic_sring(a.group_ptr(), aut_g(a)) == a;
}

// the forced shape over a cyclic group of order 4p: inside V*L the classes
// are L-translates of the classes inside V, outside they are whole V-cosets
bool caaa_shape(const SRing& a, const Section& s) {
  if (s.lower.order() != 2) return false;
  Section sec_u = make_section(a.group(), s.upper, trivial_subgroup(a.group()));
  SRing au = quotient_sring(a, sec_u);
  const Group& ug = au.group();
  std::vector<int> inv = ug.invariant_factors();
  if (inv.size() != 1 || inv[0] % 4 != 0) return false;
  int p = inv[0] / 4;
  if (p % 2 == 0 || !is_prime(p)) return false;

  ElemSet lmask = 0;
  for (int l : s.lower.elements) lmask = set_insert(lmask, sec_u.pi[l]);

  for (const Subgroup& v : au.a_subgroups()) {
    if (v.order() != p) continue;
    ElemSet vlmask = 0;
    for (int ve : v.elements)
      for (int le : set_to_vector(lmask)) vlmask = set_insert(vlmask, ug.mul(ve, le));

    std::vector<ElemSet> cand;
    for (int le : set_to_vector(lmask))
      for (ElemSet x : au.classes()) {
        if ((x & ~v.mask()) != 0) continue;
        ElemSet t = 0;
        for (int e : set_to_vector(x)) t = set_insert(t, ug.mul(e, le));
        cand.push_back(t);
      }
    ElemSet covered = vlmask;
    for (int u = 0; u < ug.order(); ++u) {
      if (set_contains(covered, u)) continue;
      ElemSet coset = 0;
      for (int ve : v.elements) coset = set_insert(coset, ug.mul(ve, u));
      covered |= coset;
      cand.push_back(coset);
    }
    std::sort(cand.begin(), cand.end(), [](ElemSet x, ElemSet y) {
      if (set_size(x) != set_size(y)) return set_size(x) < set_size(y);
      return set_min(x) < set_min(y);
    });
    if (cand == au.classes()) return true;
  }
  return false;
}

}  // namespace

ConditionFlags section_condition(const SRing& a, const Section& s) {
  ConditionFlags flags;
  SRing as = quotient_sring(a, s);
  flags.ca = as.rank() == as.group().order();
  SRing au = restrict_sring(a, s.upper);
  SRing agl =
      quotient_sring(a, make_section(a.group(), full_subgroup(a.group()), s.lower));
  bool end_cyclotomic = structurally_cyclotomic(au) || structurally_cyclotomic(agl);
  flags.caa = end_cyclotomic && cayley_minimal(as) == TriState::yes;
  flags.caaa = caaa_shape(a, s);
  return flags;
}

CircClass circ_classify(const SRing& a) {
  if (!a.group().is_cyclic())
    throw std::invalid_argument("classification requires a cyclic group");
  CircClass c;
  c.rank2 = a.rank() == 2;
  c.cyclotomic = structurally_cyclotomic(a);
  c.tensor = !detect_tensor(a).empty();
  for (const SWreathWitness& w : detect_s_wreath(a))
    if (w.nontrivial) {
      c.nontrivial_s_wreath = true;
      break;
    }
  if (!c.any())
    throw PropertyViolation("ring over a cyclic group fits none of the four cases");
  return c;
}

std::string to_string(DecompositionReport::Kind k) {
  switch (k) {
    case DecompositionReport::Kind::rank2: return "rank2";
    case DecompositionReport::Kind::tensor: return "tensor";
    case DecompositionReport::Kind::s_wreath: return "s-wreath";
    case DecompositionReport::Kind::cyclotomic: return "cyclotomic";
    case DecompositionReport::Kind::none: return "none";
  }
  return "none";
}

DecompositionReport classify_main2(const SRing& a) {
  const Group& g = a.group();
  std::vector<int> inv = g.invariant_factors();
  bool shape_ok = false;
  if (inv.size() == 2 && inv[1] == 4 * inv[0]) {
    int p = inv[0];
    shape_ok = p % 2 == 1 && is_prime(p);
  }
  if (!shape_ok)
    throw std::invalid_argument("classification requires the C4 x Cp x Cp shape, p odd");

  DecompositionReport rep;
  rep.statement1 = a.rank() == 2;
  rep.tensor_witnesses = detect_tensor(a);
  rep.statement2 = !rep.tensor_witnesses.empty();
  for (const SWreathWitness& w : detect_s_wreath(a)) {
    if (!w.nontrivial) continue;
    ConditionFlags flags = section_condition(a, w.section);
    if (flags.any())
      rep.swreath_witnesses.push_back(SectionWitness{w.section, w.nontrivial, flags});
  }
  rep.statement3 = !rep.swreath_witnesses.empty();
  if (rep.statement1)
    rep.kind = DecompositionReport::Kind::rank2;
  else if (rep.statement2)
    rep.kind = DecompositionReport::Kind::tensor;
  else if (rep.statement3)
    rep.kind = DecompositionReport::Kind::s_wreath;
  return rep;
}

}  // namespace schurkit
