// Canonical labeling, Cayley-graph isomorphism, CI verdicts and the
// completeness ordering, validated against exhaustive brute force at small
// degree and against classical witnesses over C8.

#include <doctest.h>

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "schurkit/common.hpp"
#include "schurkit/group.hpp"
#include "schurkit/iso.hpp"
#include "schurkit/perm.hpp"
#include "schurkit/rng.hpp"
#include "schurkit/sring.hpp"
#include "schurkit/sring_build.hpp"

using namespace schurkit;

namespace {

GroupPtr grp(std::vector<int> factors) {
  return std::make_shared<const Group>(std::move(factors));
}

ColorDigraph random_digraph(int n, int palette, CounterRng& rng) {
  std::vector<std::vector<int>> color(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) color[i][j] = static_cast<int>(rng.next() % palette);
  return ColorDigraph::make(color);
}

ColorDigraph relabel(const ColorDigraph& d, const Perm& p) {
  std::vector<std::vector<int>> color(d.n, std::vector<int>(d.n, 0));
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j) color[p[i]][p[j]] = d.color[i][j];
  return ColorDigraph::make(color);
}

Perm random_perm(int n, CounterRng& rng) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(img[i], img[rng.next() % (i + 1)]);
  return Perm(img);
}

// brute-force digraph isomorphism at tiny degree
bool brute_iso(const ColorDigraph& a, const ColorDigraph& b) {
  std::vector<int> img(a.n);
  for (int i = 0; i < a.n; ++i) img[i] = i;
  do {
    bool ok = true;
    for (int i = 0; i < a.n && ok; ++i)
      for (int j = 0; j < a.n && ok; ++j)
        if (a.color[i][j] != b.color[img[i]][img[j]]) ok = false;
    if (ok) return true;
  } while (std::next_permutation(img.begin(), img.end()));
  return false;
}

}  // namespace

TEST_SUITE("iso") {
  TEST_CASE("cayley digraph arcs follow the connection set") {
    const auto g = grp({4});
    const ColorDigraph d = cayley_digraph(*g, vector_to_set({1}));
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        CHECK(d.color[x][y] == (g->mul(y, g->inv(x)) == 1 ? 1 : 0));
    const SRing a = SRing::validate(g, std::vector<std::vector<int>>{{0}, {2}, {1, 3}});
    const ColorDigraph c = cayley_color_graph(a);
    CHECK(c.palette == 3);
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) CHECK(c.color[x][y] == a.class_of(g->mul(y, g->inv(x))));
  }

  TEST_CASE("canonical forms are relabeling invariants") {
    CounterRng rng(421);
    for (int trial = 0; trial < 120; ++trial) {
      const int n = 2 + static_cast<int>(rng.next() % 7);
      const int palette = 2 + static_cast<int>(rng.next() % 3);
      const ColorDigraph d = random_digraph(n, palette, rng);
      const CanonicalForm f = canonize(d);
      // the canonical labeling really produces the canonical matrix
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          CHECK(f.canon[f.labeling[i]][f.labeling[j]] == d.color[i][j]);
      const CanonicalForm fr = canonize(relabel(d, random_perm(n, rng)));
      CHECK(f == fr);
      CHECK(f.hash == fr.hash);
    }
  }

  TEST_CASE("canonical equality matches brute-force isomorphism exhaustively at n=3") {
    // all 2-color digraphs on 3 vertices, grouped two ways
    std::vector<ColorDigraph> all;
    for (int bits = 0; bits < 512; ++bits) {
      std::vector<std::vector<int>> color(3, std::vector<int>(3, 0));
      for (int a = 0; a < 9; ++a) color[a / 3][a % 3] = (bits >> a) & 1;
      all.push_back(ColorDigraph::make(std::move(color)));
    }
    std::vector<CanonicalForm> forms;
    for (const auto& d : all) forms.push_back(canonize(d));
    for (int i = 0; i < 512; i += 7)
      for (int j = i; j < 512; j += 13)
        CHECK((forms[i] == forms[j]) == brute_iso(all[i], all[j]));
  }

  TEST_CASE("color automorphisms preserve every color") {
    const auto g = grp({8});
    const ColorDigraph d = cayley_digraph(*g, vector_to_set({1, 2, 5}));
    const PermGroup aut = color_automorphisms(d);
    for (const auto& p : aut.generators())
      for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j) CHECK(d.color[p[i]][p[j]] == d.color[i][j]);
    // a directed 8-cycle admits only the 8 rotations
    CHECK(color_automorphisms(cayley_digraph(*g, vector_to_set({1}))).order() == 8);
  }

  TEST_CASE("two-closure is extensive and idempotent") {
    const auto g = grp({8});
    std::vector<Perm> gens = right_regular(*g).generators();
    std::vector<int> inv_img(8);
    for (int e = 0; e < 8; ++e) inv_img[e] = g->inv(e);
    gens.push_back(Perm(inv_img));
    const PermGroup k = PermGroup::close(gens);
    const PermGroup k2 = two_closure(k, g);
    CHECK(k.is_subgroup_of(k2));
    const PermGroup k4 = two_closure(k2, g);
    CHECK(k2.is_subgroup_of(k4));
    CHECK(k4.is_subgroup_of(k2));
    // the group ring of an abelian group has the regular group as closure
    const PermGroup reg = right_regular(*g);
    CHECK(two_closure(reg, g).order() == 8);
  }

  TEST_CASE("cayley isomorphism by group automorphism") {
    const auto g = grp({8});
    const auto hit = cayley_iso(*g, vector_to_set({1}), vector_to_set({3}));
    REQUIRE(hit.has_value());
    ElemSet image = 0;
    for (int e : set_to_vector(vector_to_set({1}))) image = set_insert(image, hit->apply(e));
    CHECK(image == vector_to_set({3}));
    CHECK_FALSE(cayley_iso(*g, vector_to_set({1}), vector_to_set({2})).has_value());
  }

  TEST_CASE("the classical C8 witness pair is isomorphic but not Cayley isomorphic") {
    const auto g = grp({8});
    const ElemSet s = vector_to_set({1, 2, 5});
    const ElemSet t = vector_to_set({1, 5, 6});
    CHECK_FALSE(cayley_iso(*g, s, t).has_value());
    CHECK(canonize(cayley_digraph(*g, s)) == canonize(cayley_digraph(*g, t)));
    const CIVerdict v = ci_subset(g, s, CIMethod::orbit_census);
    REQUIRE(v.status == CIVerdict::Status::non_ci);
    REQUIRE(v.witness_set.has_value());
    REQUIRE(v.witness_iso.has_value());
    // the witness digraph isomorphism maps arc sets exactly
    const Perm& f = *v.witness_iso;
    const ColorDigraph ds = cayley_digraph(*g, s);
    const ColorDigraph dt = cayley_digraph(*g, *v.witness_set);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) CHECK(ds.color[i][j] == dt.color[f[i]][f[j]]);
    // and no group automorphism explains it
    CHECK_FALSE(cayley_iso(*g, s, *v.witness_set).has_value());
    // the regular-subgroup route reaches the same verdict
    CHECK(ci_subset(g, s, CIMethod::regular_subgroup).status == CIVerdict::Status::non_ci);
  }

  TEST_CASE("ci verdicts for plainly CI subsets") {
    const auto g6 = grp({6});
    for (ElemSet s : {ElemSet{0}, vector_to_set({1}), vector_to_set({1, 5}), full_set(6)}) {
      CHECK(ci_subset(g6, s, CIMethod::orbit_census).status == CIVerdict::Status::ci);
      CHECK(ci_subset(g6, s, CIMethod::regular_subgroup).status == CIVerdict::Status::ci);
    }
  }

  TEST_CASE("starved budgets yield undecided rather than a verdict") {
    const auto g = grp({8});
    SearchBudget tiny;
    tiny.node_budget = 1;
    tiny.element_budget = 4;
    tiny.max_group_order = 4;
    const CIVerdict v = ci_subset(g, vector_to_set({1, 2, 5}), CIMethod::regular_subgroup, tiny);
    CHECK(v.status == CIVerdict::Status::undecided);
  }

  TEST_CASE("ci rings over CI groups") {
    const auto g = grp({6});
    std::vector<std::vector<int>> singl;
    for (int e = 0; e < 6; ++e) singl.push_back({e});
    CHECK(ci_sring(SRing::validate(g, singl)).status == CIVerdict::Status::ci);
  }

  TEST_CASE("completeness order on C8 closures") {
    const auto g = grp({8});
    const PermGroup base = two_closure(right_regular(*g), g);
    std::vector<Perm> gens = right_regular(*g).generators();
    std::vector<int> inv_img(8);
    for (int e = 0; e < 8; ++e) inv_img[e] = g->inv(e);
    gens.push_back(Perm(inv_img));
    const PermGroup bigger = two_closure(PermGroup::close(gens), g);
    CHECK(g_complete_leq(base, bigger, *g) == Decision::yes);
    const auto mins = min_family_elements({base, bigger}, *g);
    REQUIRE(mins.size() == 1);
    CHECK(mins[0].order() == base.order());
    // a family holding only the closed regular group is its own minimum
    const auto self = min_family_elements({base}, *g);
    CHECK(self.size() == 1);
  }
}
