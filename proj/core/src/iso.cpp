#include "schurkit/iso.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "schurkit/sring_build.hpp"

namespace schurkit {

namespace {

// SplitMix64 finalizer.  Signatures built from these mixes are functions of
// color data only, so a collision can at worst leave a cell unsplit (slower
// search), never a wrong answer.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

using Partition = std::vector<std::vector<int>>;

// Splits cells by their arc-color signatures toward each pending splitter
// until the partition is stable.  Cells stay sorted; fragments are ordered by
// signature value, which is a function of invariant data, so the outcome is
// identical for isomorphic inputs under the matching vertex bijection.
void refine_partition(const ColorDigraph& d, Partition& p,
                      std::deque<std::vector<int>> work) {
  const int n = d.n;
  std::vector<std::uint64_t> sig(n);
  while (!work.empty()) {
    const std::vector<int> splitter = std::move(work.front());
    work.pop_front();
    std::fill(sig.begin(), sig.end(), 0);
    for (int u : splitter) {
      const std::vector<int>& row_u = d.color[u];
      for (int v = 0; v < n; ++v) {
        sig[v] += mix64(static_cast<std::uint64_t>(d.color[v][u]) * 2);
        sig[v] += mix64(static_cast<std::uint64_t>(row_u[v]) * 2 + 1);
      }
    }
    Partition next;
    next.reserve(p.size());
    for (std::vector<int>& cell : p) {
      if (cell.size() > 1) {
        std::map<std::uint64_t, std::vector<int>> groups;
        for (int v : cell) groups[sig[v]].push_back(v);
        if (groups.size() > 1) {
          for (auto& [value, frag] : groups) {
            (void)value;
            work.push_back(frag);
            next.push_back(std::move(frag));
          }
          continue;
        }
      }
      next.push_back(std::move(cell));
    }
    p = std::move(next);
  }
}

Partition initial_partition(const ColorDigraph& d) {
  std::map<int, std::vector<int>> by_loop;
  for (int v = 0; v < d.n; ++v) by_loop[d.color[v][v]].push_back(v);
  Partition p;
  p.reserve(by_loop.size());
  for (auto& [c, cell] : by_loop) {
    (void)c;
    p.push_back(std::move(cell));
  }
  return p;
}

std::vector<std::vector<int>> relabel_matrix(const ColorDigraph& d,
                                             const std::vector<int>& order) {
  const int n = d.n;
  std::vector<std::vector<int>> m(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = d.color[order[i]][order[j]];
  return m;
}

// Individualization-refinement search.  Leaves are discrete partitions; equal
// leaf matrices yield verified automorphisms, and the lexicographically
// smallest leaf matrix is the canonical form.  Branches are pruned only when
// an already-discovered automorphism fixing every individualized vertex maps
// the candidate onto one already explored, which cannot change the set of
// leaf matrices.
struct IsoSearch {
  const ColorDigraph& d;
  int n;
  bool have_first = false;
  std::vector<std::vector<int>> first_matrix;
  std::vector<int> first_order;  // canonical position -> vertex
  std::vector<std::vector<int>> best_matrix;
  std::vector<int> best_order;
  std::vector<Perm> autos;
  std::set<std::vector<int>> auto_seen;

  explicit IsoSearch(const ColorDigraph& graph) : d(graph), n(graph.n) {}

  void run() {
    Partition p = initial_partition(d);
    std::deque<std::vector<int>> work(p.begin(), p.end());
    refine_partition(d, p, std::move(work));
    std::vector<int> prefix;
    descend(p, prefix);
  }

  void record_automorphism(const std::vector<int>& from_order,
                           const std::vector<int>& to_order) {
    std::vector<int> img(n);
    bool ident = true;
    for (int i = 0; i < n; ++i) {
      img[from_order[i]] = to_order[i];
      if (from_order[i] != to_order[i]) ident = false;
    }
    if (ident) return;
    if (auto_seen.insert(img).second) autos.push_back(Perm(std::move(img)));
  }

  void handle_leaf(const Partition& p) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = p[i][0];
    std::vector<std::vector<int>> m = relabel_matrix(d, order);
    if (!have_first) {
      have_first = true;
      first_matrix = m;
      first_order = order;
      best_matrix = std::move(m);
      best_order = std::move(order);
      return;
    }
    if (m == first_matrix) record_automorphism(first_order, order);
    if (m == best_matrix) {
      record_automorphism(best_order, order);
    } else if (m < best_matrix) {
      best_matrix = std::move(m);
      best_order = std::move(order);
    }
  }

  // True when some automorphism fixing the prefix pointwise carries v onto a
  // candidate already explored at this node.
  bool pruned(const std::vector<int>& prefix, const std::vector<int>& tried,
              int v) const {
    if (tried.empty() || autos.empty()) return false;
    std::vector<const Perm*> stab;
    for (const Perm& a : autos) {
      bool fixes = true;
      for (int x : prefix)
        if (a[x] != x) {
          fixes = false;
          break;
        }
      if (fixes) stab.push_back(&a);
    }
    if (stab.empty()) return false;
    std::vector<char> seen(n, 0);
    std::vector<int> orbit{v};
    seen[v] = 1;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (const Perm* a : stab) {
        const int w = (*a)[orbit[i]];
        if (!seen[w]) {
          seen[w] = 1;
          orbit.push_back(w);
        }
      }
    for (int u : tried)
      if (seen[u]) return true;
    return false;
  }

  void descend(const Partition& p, std::vector<int>& prefix) {
    int target = -1;
    std::size_t target_size = SIZE_MAX;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i].size() > 1 && p[i].size() < target_size) {
        target_size = p[i].size();
        target = static_cast<int>(i);
      }
    if (target < 0) {
      handle_leaf(p);
      return;
    }
    std::vector<int> tried;
    for (int v : p[static_cast<std::size_t>(target)]) {
      if (pruned(prefix, tried, v)) continue;
      tried.push_back(v);
      Partition q;
      q.reserve(p.size() + 1);
      std::deque<std::vector<int>> work;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (static_cast<int>(i) != target) {
          q.push_back(p[i]);
          continue;
        }
        std::vector<int> rest;
        rest.reserve(p[i].size() - 1);
        for (int u : p[i])
          if (u != v) rest.push_back(u);
        q.push_back({v});
        work.push_back({v});
        q.push_back(rest);
        work.push_back(std::move(rest));
      }
      refine_partition(d, q, std::move(work));
      prefix.push_back(v);
      descend(q, prefix);
      prefix.pop_back();
    }
  }
};

std::uint64_t matrix_hash(const std::vector<std::vector<int>>& m) {
  std::uint64_t h = 14695981039346656037ull;
  for (const std::vector<int>& row : m)
    for (int c : row) {
      std::uint8_t bytes[4] = {static_cast<std::uint8_t>(c & 0xff),
                               static_cast<std::uint8_t>((c >> 8) & 0xff),
                               static_cast<std::uint8_t>((c >> 16) & 0xff),
                               static_cast<std::uint8_t>((c >> 24) & 0xff)};
      h = fnv1a(bytes, 4, h);
    }
  return h;
}

void check_graph(const ColorDigraph& d, const char* who) {
  if (d.n < 1 || d.n > 64)
    throw std::invalid_argument(std::string(who) + ": need 1 <= n <= 64, got n = " +
                                std::to_string(d.n));
  if (static_cast<int>(d.color.size()) != d.n)
    throw std::invalid_argument(std::string(who) + ": color matrix has wrong height");
  for (const std::vector<int>& row : d.color) {
    if (static_cast<int>(row.size()) != d.n)
      throw std::invalid_argument(std::string(who) + ": color matrix has wrong width");
    for (int c : row)
      if (c < 0 || c >= d.palette)
        throw std::invalid_argument(std::string(who) + ": color " + std::to_string(c) +
                                    " outside palette of size " + std::to_string(d.palette));
  }
}

// Abstract isomorphism between two abelian groups given by composition
// tables, built by matching cyclic bases factor by factor.  Returns the image
// of every element of the first group in the second, or throws if the
// invariant factors disagree.
std::vector<int> table_isomorphism(const std::vector<std::vector<int>>& ta,
                                   const std::vector<std::vector<int>>& tb) {
  const int n = static_cast<int>(ta.size());
  const std::vector<std::pair<int, int>> ba = abelian_basis(ta);
  const std::vector<std::pair<int, int>> bb = abelian_basis(tb);
  if (ba.size() != bb.size())
    throw PropertyViolation("table_isomorphism: cyclic basis ranks differ");
  for (std::size_t i = 0; i < ba.size(); ++i)
    if (ba[i].second != bb[i].second)
      throw PropertyViolation("table_isomorphism: invariant factors differ");
  std::vector<int> image(n, -1);
  std::vector<int> exps(ba.size(), 0);
  int assigned = 0;
  for (;;) {
    int ea = 0, eb = 0;
    for (std::size_t i = 0; i < ba.size(); ++i)
      for (int k = 0; k < exps[i]; ++k) {
        ea = ta[ea][ba[i].first];
        eb = tb[eb][bb[i].first];
      }
    if (image[ea] != -1) throw PropertyViolation("table_isomorphism: basis not independent");
    image[ea] = eb;
    ++assigned;
    std::size_t pos = 0;
    while (pos < exps.size()) {
      if (++exps[pos] < ba[pos].second) break;
      exps[pos] = 0;
      ++pos;
    }
    if (pos == exps.size()) break;
  }
  if (assigned != n) throw PropertyViolation("table_isomorphism: basis does not span");
  return image;
}

}  // namespace

ColorDigraph ColorDigraph::make(std::vector<std::vector<int>> color) {
  ColorDigraph d;
  d.n = static_cast<int>(color.size());
  d.color = std::move(color);
  int max_color = 0;
  for (const std::vector<int>& row : d.color)
    for (int c : row) max_color = std::max(max_color, c);
  d.palette = max_color + 1;
  check_graph(d, "ColorDigraph");
  return d;
}

ColorDigraph cayley_color_graph(const SRing& a) {
  const Group& g = a.group();
  const int n = g.order();
  if (n > 64) throw std::invalid_argument("cayley_color_graph: group larger than 64");
  std::vector<std::vector<int>> color(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x) {
    const int xinv = g.inv(x);
    for (int y = 0; y < n; ++y) color[x][y] = a.class_of(g.mul(y, xinv));
  }
  ColorDigraph d;
  d.n = n;
  d.color = std::move(color);
  d.palette = a.rank();
  check_graph(d, "cayley_color_graph");
  return d;
}

ColorDigraph cayley_digraph(const Group& g, ElemSet s) {
  const int n = g.order();
  if (n > 64) throw std::invalid_argument("cayley_digraph: group larger than 64");
  if (s & ~full_set(n))
    throw std::invalid_argument("cayley_digraph: connection set outside the group");
  std::vector<std::vector<int>> color(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x) {
    const int xinv = g.inv(x);
    for (int y = 0; y < n; ++y)
      if (set_contains(s, g.mul(y, xinv))) color[x][y] = 1;
  }
  ColorDigraph d;
  d.n = n;
  d.color = std::move(color);
  d.palette = 2;
  check_graph(d, "cayley_digraph");
  return d;
}

CanonicalForm canonize(const ColorDigraph& d) {
  check_graph(d, "canonize");
  IsoSearch search(d);
  search.run();
  CanonicalForm f;
  f.canon = std::move(search.best_matrix);
  std::vector<int> img(d.n);
  for (int i = 0; i < d.n; ++i) img[search.best_order[i]] = i;
  f.labeling = Perm(std::move(img));
  f.hash = matrix_hash(f.canon);
  return f;
}

PermGroup color_automorphisms(const ColorDigraph& d) {
  check_graph(d, "color_automorphisms");
  IsoSearch search(d);
  search.run();
  for (const Perm& a : search.autos)
    for (int x = 0; x < d.n; ++x)
      for (int y = 0; y < d.n; ++y)
        if (d.color[a[x]][a[y]] != d.color[x][y])
          throw PropertyViolation("color_automorphisms: generator does not preserve colors");
  if (search.autos.empty()) return PermGroup::trivial(d.n);
  ClosureOptions opts;
  opts.max_order = UINT64_MAX;
  return PermGroup::close(search.autos, opts);
}

PermGroup two_closure(const PermGroup& k, const GroupPtr& g) {
  if (!g) throw std::invalid_argument("two_closure: null group");
  if (k.degree() != g->order())
    throw std::invalid_argument("two_closure: degree does not match the group order");
  const SRing a = orbit_sring(g, k);
  PermGroup closed = color_automorphisms(cayley_color_graph(a));
  for (const Perm& x : k.generators())
    if (!closed.contains(x))
      throw PropertyViolation("two_closure: input permutation lost by the closure");
  if (orbit_sring(g, closed) != a)
    throw PropertyViolation("two_closure: closure changed the orbit ring, not idempotent");
  return closed;
}

std::optional<GroupAutomorphism> cayley_iso(const Group& g, ElemSet s, ElemSet t) {
  const int n = g.order();
  if (n > 64) throw std::invalid_argument("cayley_iso: group larger than 64");
  const ElemSet full = full_set(n);
  if ((s & ~full) || (t & ~full))
    throw std::invalid_argument("cayley_iso: connection set outside the group");
  if (set_size(s) != set_size(t)) return std::nullopt;
  const AutomorphismGroup aut = automorphism_group(g);
  for (const GroupAutomorphism& phi : aut.all) {
    ElemSet image = 0;
    for (ElemSet rest = s; rest;) {
      const int e = __builtin_ctzll(rest);
      rest &= rest - 1;
      image = set_insert(image, phi.apply(e));
    }
    if (image == t) return phi;
  }
  return std::nullopt;
}

namespace {

// Re-expresses the arcs of Cay(G,S) over another regular subgroup r of its
// automorphism group: vertex v corresponds to the unique element of r moving
// the identity vertex to v, and an isomorphism of abstract groups carries the
// resulting connection set back into G.  The derived pair (T, f) is verified
// arc by arc and against the full automorphism scan before it is returned.
void derive_witness(const Group& g, ElemSet s, const PermGroup& r, CIVerdict& out) {
  const int n = g.order();
  const std::vector<Perm>& relems = r.elements(static_cast<std::size_t>(n) + 1);
  if (static_cast<int>(relems.size()) != n)
    throw PropertyViolation("ci witness: subgroup order does not match the degree");
  std::vector<int> rho_of(n, -1);  // vertex -> index of the element sending 0 there
  for (int i = 0; i < n; ++i) {
    const int v = relems[i][0];
    if (rho_of[v] != -1) throw PropertyViolation("ci witness: subgroup is not regular");
    rho_of[v] = i;
  }
  std::map<std::vector<int>, int> index_of;
  for (int i = 0; i < n; ++i) index_of[relems[i].images()] = i;
  std::vector<std::vector<int>> rtable(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto it = index_of.find(relems[i].then(relems[j]).images());
      if (it == index_of.end())
        throw PropertyViolation("ci witness: element list not closed under composition");
      rtable[i][j] = it->second;
    }
  std::vector<std::vector<int>> gtable(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) gtable[a][b] = g.mul(a, b);
  const std::vector<int> theta = table_isomorphism(rtable, gtable);

  std::vector<int> img(n);
  for (int v = 0; v < n; ++v) img[v] = theta[rho_of[v]];
  ElemSet t = 0;
  for (ElemSet rest = s; rest;) {
    const int v = __builtin_ctzll(rest);
    rest &= rest - 1;
    t = set_insert(t, img[v]);
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const bool arc_s = set_contains(s, g.mul(y, g.inv(x)));
      const bool arc_t = set_contains(t, g.mul(img[y], g.inv(img[x])));
      if (arc_s != arc_t)
        throw PropertyViolation("ci witness: derived map is not a digraph isomorphism");
    }
  if (cayley_iso(g, s, t))
    throw PropertyViolation("ci witness: derived set is equivalent under a group automorphism");
  out.witness_set = t;
  out.witness_iso = Perm(std::move(img));
}

// Shared regular-subgroup criterion: ci exactly when every regular subgroup
// of `aut` isomorphic to g conjugates onto the right translations.
void regular_subgroup_verdict(const Group& g, const PermGroup& aut, ElemSet s,
                              bool have_set, const SearchBudget& budget, CIVerdict& out) {
  const PermGroup g_reg = right_regular(g);
  const RegularSubgroupSearch found = regular_subgroups(aut, g, budget);
  bool undecided = !found.complete;
  for (const PermGroup& r : found.groups) {
    const ConjugacySearch c = conjugate_subgroup_search(aut, r, g_reg, budget);
    if (c.status == ConjugacySearch::Status::found) continue;
    if (c.status == ConjugacySearch::Status::undecided) {
      undecided = true;
      continue;
    }
    out.status = CIVerdict::Status::non_ci;
    if (have_set) derive_witness(g, s, r, out);
    return;
  }
  out.status = undecided ? CIVerdict::Status::undecided : CIVerdict::Status::ci;
}

}  // namespace

CIVerdict ci_subset(const GroupPtr& g, ElemSet s, CIMethod method, const SearchBudget& budget) {
  if (!g) throw std::invalid_argument("ci_subset: null group");
  const Group& gr = *g;
  const int n = gr.order();
  if (n > 64) throw std::invalid_argument("ci_subset: group larger than 64");
  if (s & ~full_set(n))
    throw std::invalid_argument("ci_subset: connection set outside the group");
  if (method == CIMethod::automatic)
    method = n <= 16 ? CIMethod::orbit_census : CIMethod::regular_subgroup;
  CIVerdict out;
  out.method = method;

  // Loops land on loops under any vertex bijection, so for these four sets an
  // isomorphic Cayley digraph forces T = S and the identity automorphism works.
  const ElemSet full = full_set(n);
  const ElemSet identity_only = ElemSet{1};
  if (s == 0 || s == identity_only || s == (full & ~identity_only) || s == full) {
    out.status = CIVerdict::Status::ci;
    return out;
  }

  if (method == CIMethod::orbit_census) {
    if (n > 16)
      throw std::invalid_argument("ci_subset: the census method enumerates all sets, order <= 16 only");
    const CanonicalForm fs = canonize(cayley_digraph(gr, s));
    const int size_s = set_size(s);
    const std::uint64_t limit = ElemSet{1} << n;
    for (ElemSet t = 0; t < limit; ++t) {
      if (t == s || set_size(t) != size_s) continue;
      const CanonicalForm ft = canonize(cayley_digraph(gr, t));
      if (ft.hash != fs.hash) continue;  // bucket shortcut; equality decided below
      if (ft.canon != fs.canon) continue;
      if (cayley_iso(gr, s, t)) continue;
      out.status = CIVerdict::Status::non_ci;
      out.witness_set = t;
      Perm f = fs.labeling.then(ft.labeling.inverse());
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          const bool arc_s = set_contains(s, gr.mul(y, gr.inv(x)));
          const bool arc_t = set_contains(t, gr.mul(f[y], gr.inv(f[x])));
          if (arc_s != arc_t)
            throw PropertyViolation("ci_subset: canonical labelings disagree with the arcs");
        }
      out.witness_iso = std::move(f);
      return out;
    }
    out.status = CIVerdict::Status::ci;
    return out;
  }

  const PermGroup aut = color_automorphisms(cayley_digraph(gr, s));
  regular_subgroup_verdict(gr, aut, s, /*have_set=*/true, budget, out);
  return out;
}

CIVerdict ci_sring(const SRing& a, const SearchBudget& budget) {
  CIVerdict out;
  out.method = CIMethod::regular_subgroup;
  if (a.rank() <= 2) {
    // the color graph is complete (plus loops): its automorphism group is the
    // full symmetric group, where all regular copies of the group are conjugate
    out.status = CIVerdict::Status::ci;
    return out;
  }
  const PermGroup aut = color_automorphisms(cayley_color_graph(a));
  regular_subgroup_verdict(a.group(), aut, 0, /*have_set=*/false, budget, out);
  return out;
}

Decision g_complete_leq(const PermGroup& k1, const PermGroup& k2, const Group& g,
                        const SearchBudget& budget) {
  const PermGroup g_reg = right_regular(g);
  if (!g_reg.is_subgroup_of(k1))
    throw std::invalid_argument("g_complete_leq: k1 does not contain the right translations");
  if (!k1.is_subgroup_of(k2))
    throw std::invalid_argument("g_complete_leq: k1 is not a subgroup of k2");
  const RegularSubgroupSearch found = regular_subgroups(k2, g, budget);
  bool undecided = !found.complete;
  for (const PermGroup& r : found.groups) {
    const ConjugacySearch c = conjugate_subgroup_search(k2, r, k1, budget);
    if (c.status == ConjugacySearch::Status::found) continue;
    if (c.status == ConjugacySearch::Status::none) return Decision::no;
    undecided = true;
  }
  return undecided ? Decision::undecided : Decision::yes;
}

std::vector<PermGroup> min_family_elements(const std::vector<PermGroup>& family,
                                           const Group& g, const SearchBudget& budget) {
  std::vector<PermGroup> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < family.size() && minimal; ++j) {
      if (j == i) continue;
      if (!family[j].is_subgroup_of(family[i])) continue;
      if (family[j].order() == family[i].order()) {
        if (j < i) minimal = false;  // duplicate group, keep the first copy
        continue;
      }
      if (g_complete_leq(family[j], family[i], g, budget) == Decision::yes) minimal = false;
    }
    if (minimal) out.push_back(family[i]);
  }
  return out;
}

}  // namespace schurkit
