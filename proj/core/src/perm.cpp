#include "schurkit/perm.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace schurkit {

Perm Perm::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Perm(std::move(img));
}

Perm Perm::then(const Perm& o) const {
  std::vector<int> img(img_.size());
  for (std::size_t x = 0; x < img_.size(); ++x) img[x] = o.img_[img_[x]];
  return Perm(std::move(img));
}

Perm Perm::inverse() const {
  std::vector<int> img(img_.size());
  for (std::size_t x = 0; x < img_.size(); ++x) img[img_[x]] = static_cast<int>(x);
  return Perm(std::move(img));
}

bool Perm::is_identity() const {
  for (std::size_t x = 0; x < img_.size(); ++x)
    if (img_[x] != static_cast<int>(x)) return false;
  return true;
}

int Perm::order() const {
  std::vector<char> seen(img_.size(), 0);
  long long ord = 1;
  for (std::size_t s = 0; s < img_.size(); ++s) {
    if (seen[s]) continue;
    int len = 0, x = static_cast<int>(s);
    while (!seen[x]) {
      seen[x] = 1;
      x = img_[x];
      ++len;
    }
    ord = std::lcm(ord, static_cast<long long>(len));
  }
  return static_cast<int>(ord);
}

// ---------------- PermGroup ----------------

namespace {
// saturation threshold for the order product; well beyond any budget we use
const unsigned __int128 kOrderSat = static_cast<unsigned __int128>(1e27);
}  // namespace

PermGroup PermGroup::trivial(int degree) {
  PermGroup g;
  g.degree_ = degree;
  return g;
}

std::pair<Perm, std::size_t> PermGroup::sift_from(Perm g, std::size_t level) const {
  for (std::size_t m = level; m < levels_.size(); ++m) {
    const Level& l = levels_[m];
    int q = g[l.base_pt];
    int pos = l.orbit_pos[q];
    if (pos < 0) return {std::move(g), m};
    g = g.then(l.trans[pos].inverse());
  }
  return {std::move(g), levels_.size()};
}

void PermGroup::extend_orbit(std::size_t level) {
  Level& l = levels_[level];
  // generators relevant at this level: everything that fixes the base prefix
  std::vector<const Perm*> gens;
  for (std::size_t i = 0; i < strong_.size(); ++i)
    if (strong_depth_[i] >= static_cast<int>(level)) gens.push_back(&strong_[i]);
  l.orbit.assign(1, l.base_pt);
  l.orbit_pos.assign(degree_, -1);
  l.orbit_pos[l.base_pt] = 0;
  l.trans.assign(1, Perm::identity(degree_));
  for (std::size_t oi = 0; oi < l.orbit.size(); ++oi) {
    int p = l.orbit[oi];
    for (const Perm* g : gens) {
      int q = (*g)[p];
      if (l.orbit_pos[q] < 0) {
        l.orbit_pos[q] = static_cast<int>(l.orbit.size());
        l.orbit.push_back(q);
        l.trans.push_back(l.trans[oi].then(*g));
      }
    }
  }
}

void PermGroup::push_level(int base_pt) {
  Level l;
  l.base_pt = base_pt;
  l.orbit = {base_pt};
  l.orbit_pos.assign(degree_, -1);
  l.orbit_pos[base_pt] = 0;
  l.trans = {Perm::identity(degree_)};
  levels_.push_back(std::move(l));
  base_.push_back(base_pt);
}

void PermGroup::insert_gen(const Perm& g, std::size_t level) {
  auto [res, drop] = sift_from(g, level);
  if (res.is_identity()) return;
  for (const Perm& s : strong_)
    if (s == res) return;
  if (drop == levels_.size()) {
    int b = 0;
    while (res[b] == b) ++b;
    push_level(b);
  }
  strong_.push_back(res);
  strong_depth_.push_back(static_cast<int>(drop));
  // re-verify the levels the new generator participates in, deepest first
  for (std::size_t l = drop;; --l) {
    build_level(l);
    if (l == level) break;
  }
}

void PermGroup::build_level(std::size_t i) {
  extend_orbit(i);
  // local copies: recursion through insert_gen may reallocate levels_, and
  // additions at deeper levels cannot change this orbit (they lie in the
  // span of the generators the orbit was closed under)
  const std::vector<int> orbit = levels_[i].orbit;
  const std::vector<int> pos = levels_[i].orbit_pos;
  const std::vector<Perm> trans = levels_[i].trans;
  for (std::size_t si = 0; si < strong_.size(); ++si) {  // grows during loop
    if (strong_depth_[si] < static_cast<int>(i)) continue;
    const Perm x = strong_[si];
    for (std::size_t oi = 0; oi < orbit.size(); ++oi) {
      int q = x[orbit[oi]];
      if (pos[q] < 0)
        throw PropertyViolation("stabilizer chain: orbit not closed");
      Perm sg = trans[oi].then(x).then(trans[pos[q]].inverse());
      insert_gen(sg, i + 1);
    }
  }
}

void PermGroup::recompute_order() {
  order_ = 1;
  order_saturated_ = false;
  for (const Level& l : levels_) {
    order_ *= static_cast<unsigned __int128>(l.orbit.size());
    if (order_ > kOrderSat) {
      order_saturated_ = true;
      order_ = kOrderSat;
      return;
    }
  }
}

PermGroup PermGroup::close(std::vector<Perm> gens, const ClosureOptions& opts) {
  if (gens.empty()) throw std::invalid_argument("close: no generators (use trivial)");
  PermGroup g;
  g.degree_ = gens[0].degree();
  for (const Perm& p : gens)
    if (p.degree() != g.degree_) throw std::invalid_argument("close: degree mismatch");

  for (int pt : opts.base_hint) {
    if (pt < 0 || pt >= g.degree_) throw std::invalid_argument("close: base hint out of range");
    Level l;
    l.base_pt = pt;
    l.orbit = {pt};
    l.orbit_pos.assign(g.degree_, -1);
    l.orbit_pos[pt] = 0;
    l.trans = {Perm::identity(g.degree_)};
    g.levels_.push_back(std::move(l));
    g.base_.push_back(pt);
  }

  // dedup input, drop identity, keep first-occurrence order
  std::set<std::vector<int>> seen;
  for (Perm& p : gens) {
    if (p.is_identity()) continue;
    if (seen.insert(p.images()).second) g.gens_.push_back(std::move(p));
  }
  if (g.gens_.empty()) {
    g.recompute_order();
    return g;
  }

  // place every input generator at the deepest level whose base prefix it
  // fixes, adding base points so each generator moves one
  for (const Perm& p : g.gens_) {
    bool fixes_all = true;
    for (const Level& l : g.levels_)
      if (p[l.base_pt] != l.base_pt) {
        fixes_all = false;
        break;
      }
    if (fixes_all) {
      int b = 0;
      while (p[b] == b) ++b;
      g.push_level(b);
    }
    int d = 0;
    while (d < static_cast<int>(g.levels_.size()) &&
           p[g.levels_[d].base_pt] == g.levels_[d].base_pt)
      ++d;
    g.strong_.push_back(p);
    g.strong_depth_.push_back(d);
  }

  for (std::size_t i = g.levels_.size(); i-- > 0;) g.build_level(i);

  g.recompute_order();
  if (opts.max_order != UINT64_MAX && g.order_exceeds(opts.max_order))
    throw BudgetExceeded("group order exceeds cap " + std::to_string(opts.max_order));
  if (opts.element_budget) g.elements(opts.element_budget);
  return g;
}

std::uint64_t PermGroup::order() const {
  if (order_saturated_ || order_ > static_cast<unsigned __int128>(UINT64_MAX))
    return UINT64_MAX;
  return static_cast<std::uint64_t>(order_);
}

bool PermGroup::order_exceeds(std::uint64_t cap) const {
  if (order_saturated_) return true;
  return order_ > static_cast<unsigned __int128>(cap);
}

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  auto [res, lvl] = sift_from(g, 0);
  (void)lvl;
  return res.is_identity();
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  if (degree_ != other.degree_) return false;
  for (const Perm& g : gens_)
    if (!other.contains(g)) return false;
  return true;
}

const std::vector<Perm>& PermGroup::elements(std::size_t budget) const {
  if (order_exceeds(budget))
    throw BudgetExceeded("element enumeration: order " + std::to_string(order()) +
                         " exceeds budget " + std::to_string(budget));
  if (!elements_.empty()) return elements_;
  std::vector<Perm> cur = {Perm::identity(degree_)};
  for (std::size_t m = levels_.size(); m-- > 0;) {
    std::vector<Perm> next;
    next.reserve(cur.size() * levels_[m].trans.size());
    for (const Perm& t : levels_[m].trans)
      for (const Perm& h : cur) next.push_back(h.then(t));
    cur = std::move(next);
  }
  elements_ = std::move(cur);
  return elements_;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  return orbit_partition(degree_, gens_);
}

PermGroup PermGroup::point_stabilizer(int pt) const {
  if (pt < 0 || pt >= degree_) throw std::invalid_argument("stabilizer point out of range");
  if (gens_.empty()) return trivial(degree_);
  ClosureOptions opts;
  opts.base_hint = {pt};
  opts.max_order = UINT64_MAX;
  PermGroup rebased = close(gens_, opts);
  std::vector<Perm> stab_gens;
  for (std::size_t i = 0; i < rebased.strong_.size(); ++i)
    if (rebased.strong_depth_[i] >= 1) stab_gens.push_back(rebased.strong_[i]);
  if (stab_gens.empty()) return trivial(degree_);
  ClosureOptions sopts;
  sopts.max_order = UINT64_MAX;
  return close(std::move(stab_gens), sopts);
}

// ---------------- free functions ----------------

Perm right_translation(const Group& g, int h) {
  std::vector<int> img(g.order());
  for (int x = 0; x < g.order(); ++x) img[x] = g.mul(x, h);
  return Perm(std::move(img));
}

PermGroup right_regular(const Group& g) {
  if (g.order() == 1) return PermGroup::trivial(1);
  std::vector<Perm> gens;
  int stride = 1;
  for (int f : g.factors()) {
    gens.push_back(right_translation(g, stride));
    stride *= f;
  }
  ClosureOptions opts;
  opts.max_order = UINT64_MAX;
  return PermGroup::close(std::move(gens), opts);
}

std::vector<std::vector<int>> orbit_partition(int degree, const std::vector<Perm>& gens) {
  std::vector<char> seen(degree, 0);
  std::vector<std::vector<int>> parts;
  for (int s = 0; s < degree; ++s) {
    if (seen[s]) continue;
    std::vector<int> orb = {s};
    seen[s] = 1;
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const Perm& g : gens) {
        int q = g[orb[i]];
        if (!seen[q]) {
          seen[q] = 1;
          orb.push_back(q);
        }
      }
    std::sort(orb.begin(), orb.end());
    parts.push_back(std::move(orb));
  }
  return parts;
}

PermGroup induced_section_action(const PermGroup& k, const Group& g,
                                 const Section& s, std::size_t element_budget) {
  if (k.degree() != g.order())
    throw std::invalid_argument("induced action: degree does not match the group");
  const std::vector<Perm>& elems = k.elements(element_budget);
  const int m = s.quotient.order();
  std::set<std::vector<int>> found;
  for (const Perm& f : elems) {
    bool ok = true;
    for (int u : s.upper.elements)
      if (s.pi[f[u]] < 0) {  // image left the upper subgroup
        ok = false;
        break;
      }
    if (!ok) continue;
    std::vector<int> img(m, -1);
    for (int u : s.upper.elements) {
      int from = s.pi[u], to = s.pi[f[u]];
      if (img[from] < 0) {
        img[from] = to;
      } else if (img[from] != to) {  // f splits a coset
        ok = false;
        break;
      }
    }
    if (ok) found.insert(img);
  }
  std::vector<Perm> gens;
  for (const auto& img : found) {
    Perm p{std::vector<int>(img)};
    if (!p.is_identity()) gens.push_back(std::move(p));
  }
  if (gens.empty()) return PermGroup::trivial(m);
  ClosureOptions opts;
  opts.max_order = UINT64_MAX;
  return PermGroup::close(std::move(gens), opts);
}

RegularSubgroupSearch regular_subgroups(const PermGroup& k, const Group& target,
                                        const SearchBudget& budget) {
  RegularSubgroupSearch out;
  const int n = k.degree();
  if (target.order() != n) return out;  // a regular subgroup has order = degree
  if (n == 1) {
    out.groups.push_back(PermGroup::trivial(1));
    return out;
  }
  if (!k.order_exceeds(UINT64_MAX) && k.order() < static_cast<std::uint64_t>(n)) return out;

  std::vector<Perm> elems;
  try {
    elems = k.elements(budget.element_budget);
  } catch (const BudgetExceeded&) {
    out.complete = false;
    return out;
  }

  // target order census: how many elements of each order
  std::map<int, int> census;
  for (int e = 0; e < n; ++e) census[target.element_order(e)]++;

  // candidates: fixed-point-free elements whose cycles all share one length
  // that occurs as an element order of the target
  std::vector<Perm> cand;
  for (const Perm& p : elems) {
    if (p.is_identity()) continue;
    bool fpf = true;
    for (int x = 0; x < n && fpf; ++x)
      if (p[x] == x) fpf = false;
    if (!fpf) continue;
    int len = 0;
    {
      int x = p[0], c = 1;
      while (x != 0) {
        x = p[x];
        ++c;
      }
      len = c;
    }
    bool uniform = true;
    std::vector<char> seen(n, 0);
    for (int s0 = 0; s0 < n && uniform; ++s0) {
      if (seen[s0]) continue;
      int x = s0, c = 0;
      while (!seen[x]) {
        seen[x] = 1;
        x = p[x];
        ++c;
      }
      if (c != len) uniform = false;
    }
    if (!uniform) continue;
    auto it = census.find(len);
    if (it == census.end() || it->second == 0) continue;
    cand.push_back(p);
  }

  std::vector<int> target_inv = target.invariant_factors();

  std::set<std::vector<std::vector<int>>> dedup;
  std::uint64_t nodes = 0;

  // span of the current generator chain, as sorted perm list for dedup
  std::vector<Perm> chain;

  auto span_of = [&](const std::vector<Perm>& gens) -> std::vector<Perm> {
    std::vector<Perm> span = {Perm::identity(n)};
    std::set<std::vector<int>> in;
    in.insert(span[0].images());
    for (std::size_t i = 0; i < span.size(); ++i) {
      for (const Perm& ge : gens) {
        Perm q = span[i].then(ge);
        if (in.insert(q.images()).second) span.push_back(std::move(q));
        if (span.size() > static_cast<std::size_t>(n)) return span;  // too big, caller prunes
      }
    }
    return span;
  };

  auto check_span = [&](const std::vector<Perm>& span) -> bool {
    // all non-identity elements fixed-point-free, order census dominated
    std::map<int, int> c;
    for (const Perm& p : span) {
      if (p.is_identity()) continue;
      for (int x = 0; x < n; ++x)
        if (p[x] == x) return false;
      c[p.order()]++;
    }
    for (auto& [o, cnt] : c) {
      auto it = census.find(o);
      if (it == census.end() || cnt > it->second) return false;
    }
    return true;
  };

  auto invariants_match = [&](const std::vector<Perm>& span) -> bool {
    // build the composition table; identity must be index 0 for abelian_basis
    std::vector<Perm> ordered = span;
    std::sort(ordered.begin(), ordered.end());
    // ensure identity first
    for (std::size_t i = 0; i < ordered.size(); ++i)
      if (ordered[i].is_identity()) {
        std::swap(ordered[0], ordered[i]);
        break;
      }
    std::map<std::vector<int>, int> oidx;
    for (std::size_t i = 0; i < ordered.size(); ++i) oidx[ordered[i].images()] = static_cast<int>(i);
    std::vector<std::vector<int>> table(ordered.size(), std::vector<int>(ordered.size()));
    for (std::size_t i = 0; i < ordered.size(); ++i)
      for (std::size_t j = 0; j < ordered.size(); ++j) {
        auto it = oidx.find(ordered[i].then(ordered[j]).images());
        if (it == oidx.end()) return false;  // not closed (should not happen)
        table[i][j] = it->second;
      }
    std::vector<int> inv;
    try {
      auto basis = abelian_basis(table);
      for (auto& [b, o] : basis) inv.push_back(o);
    } catch (const PropertyViolation&) {
      return false;  // not abelian
    }
    // convert to invariant factor form via a scratch Group
    Group scratch(inv.empty() ? std::vector<int>{} : inv);
    return scratch.invariant_factors() == target_inv;
  };

  auto emit = [&](const std::vector<Perm>& span) {
    std::vector<std::vector<int>> key;
    for (const Perm& p : span) key.push_back(p.images());
    std::sort(key.begin(), key.end());
    if (!dedup.insert(key).second) return;
    if (!invariants_match(span)) return;
    ClosureOptions opts;
    opts.max_order = UINT64_MAX;
    out.groups.push_back(PermGroup::close(chain, opts));
  };

  auto dfs = [&](auto&& self, std::vector<Perm> span, std::size_t next) -> void {
    if (++nodes > budget.node_budget) {
      out.complete = false;
      return;
    }
    if (span.size() == static_cast<std::size_t>(n)) {
      emit(span);
      return;
    }
    for (std::size_t ci = next; ci < cand.size(); ++ci) {
      if (!out.complete) return;
      const Perm& g = cand[ci];
      bool inside = false;
      for (const Perm& p : span)
        if (p == g) {
          inside = true;
          break;
        }
      if (inside) continue;
      bool commutes = true;
      for (const Perm& h : chain)
        if (!(h.then(g) == g.then(h))) {
          commutes = false;
          break;
        }
      if (!commutes) continue;
      chain.push_back(g);
      std::vector<Perm> gens = chain;
      std::vector<Perm> sp = span_of(gens);
      if (sp.size() <= static_cast<std::size_t>(n) && n % sp.size() == 0 && check_span(sp))
        self(self, std::move(sp), ci + 1);
      chain.pop_back();
    }
  };

  dfs(dfs, {Perm::identity(n)}, 0);

  std::sort(out.groups.begin(), out.groups.end(),
            [](const PermGroup& a, const PermGroup& b) {
              return a.generators() < b.generators();
            });
  return out;
}

ConjugacySearch conjugate_subgroup_search(const PermGroup& k, const PermGroup& a,
                                          const PermGroup& b,
                                          const SearchBudget& budget) {
  ConjugacySearch out;
  if (a.degree() != k.degree() || b.degree() != k.degree())
    throw std::invalid_argument("conjugacy search: degree mismatch");
  if (!a.order_exceeds(UINT64_MAX) && !b.order_exceeds(UINT64_MAX) &&
      b.order() % a.order() != 0) {
    out.status = ConjugacySearch::Status::none;
    return out;
  }
  std::vector<Perm> elems;
  try {
    elems = k.elements(budget.element_budget);
  } catch (const BudgetExceeded&) {
    out.status = ConjugacySearch::Status::undecided;
    return out;
  }
  for (const Perm& t : elems) {
    Perm ti = t.inverse();
    bool ok = true;
    for (const Perm& g : a.generators()) {
      if (!b.contains(ti.then(g).then(t))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.status = ConjugacySearch::Status::found;
      out.conjugator = t;
      return out;
    }
  }
  out.status = ConjugacySearch::Status::none;
  return out;
}

int ElementTable::index_of(const Perm& p) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), p);
  if (it == elems.end() || !(*it == p)) return -1;
  return static_cast<int>(it - elems.begin());
}

ElementTable element_table(const PermGroup& k, std::size_t element_budget) {
  ElementTable t;
  t.elems = k.elements(element_budget);
  std::sort(t.elems.begin(), t.elems.end());
  const int m = static_cast<int>(t.elems.size());
  t.mul.assign(m, std::vector<std::uint16_t>(m));
  t.inv.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    if (t.elems[i].is_identity()) t.identity = i;
    int j = t.index_of(t.elems[i].inverse());
    if (j < 0) throw PropertyViolation("element table: inverse missing");
    t.inv[i] = static_cast<std::uint16_t>(j);
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int x = t.index_of(t.elems[i].then(t.elems[j]));
      if (x < 0) throw PropertyViolation("element table: product missing");
      t.mul[i][j] = static_cast<std::uint16_t>(x);
    }
  return t;
}

std::vector<std::vector<std::uint16_t>> enumerate_subgroups(const ElementTable& t) {
  const int m = static_cast<int>(t.elems.size());
  auto closure = [&](std::vector<std::uint16_t> seed) {
    std::vector<char> in(m, 0);
    std::vector<std::uint16_t> out = {static_cast<std::uint16_t>(t.identity)};
    in[t.identity] = 1;
    for (std::uint16_t e : seed)
      if (!in[e]) {
        in[e] = 1;
        out.push_back(e);
      }
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = 0; j < out.size(); ++j) {
        std::uint16_t p = t.mul[out[i]][out[j]];
        if (!in[p]) {
          in[p] = 1;
          out.push_back(p);
        }
      }
      std::uint16_t iv = t.inv[out[i]];
      if (!in[iv]) {
        in[iv] = 1;
        out.push_back(iv);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  std::set<std::vector<std::uint16_t>> seen;
  std::vector<std::vector<std::uint16_t>> work;
  auto triv = closure({});
  seen.insert(triv);
  work.push_back(triv);
  for (std::size_t wi = 0; wi < work.size(); ++wi) {
    std::vector<std::uint16_t> h = work[wi];
    for (int e = 0; e < m; ++e) {
      if (std::binary_search(h.begin(), h.end(), static_cast<std::uint16_t>(e))) continue;
      auto bigger = h;
      bigger.push_back(static_cast<std::uint16_t>(e));
      auto c = closure(bigger);
      if (seen.insert(c).second) work.push_back(c);
    }
  }
  std::vector<std::vector<std::uint16_t>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace schurkit
