// Permutation algebra and the Schreier-Sims machinery against brute-force
// oracles on degrees small enough to enumerate symmetric groups outright.

#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "schurkit/common.hpp"
#include "schurkit/group.hpp"
#include "schurkit/perm.hpp"

using namespace schurkit;

namespace {

Perm p(std::vector<int> img) { return Perm(std::move(img)); }

// all degree-n permutations, lexicographic
std::vector<Perm> all_perms(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  std::vector<Perm> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

// brute-force closure by repeated composition
std::set<Perm> oracle_close(std::vector<Perm> gens) {
  std::set<Perm> s(gens.begin(), gens.end());
  s.insert(Perm::identity(gens.front().degree()));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Perm> cur(s.begin(), s.end());
    for (const auto& a : cur)
      for (const auto& b : cur)
        if (s.insert(a.then(b)).second) grew = true;
  }
  return s;
}

}  // namespace

TEST_SUITE("perm") {
  TEST_CASE("composition order and inverse") {
    const Perm a = p({1, 2, 0});  // 0->1->2->0
    const Perm b = p({1, 0, 2});  // swap 0,1
    // a.then(b): apply a first
    CHECK(a.then(b) == p({0, 2, 1}));
    CHECK(b.then(a) == p({2, 1, 0}));
    CHECK(a.inverse() == p({2, 0, 1}));
    CHECK(a.then(a.inverse()).is_identity());
    CHECK(a.order() == 3);
    CHECK(b.order() == 2);
    CHECK(p({1, 0, 3, 2}).order() == 2);
    CHECK(p({1, 2, 0, 4, 3}).order() == 6);  // 3-cycle times 2-cycle
    CHECK(Perm::identity(5).order() == 1);
  }

  TEST_CASE("closure reproduces brute-force element sets") {
    const std::vector<Perm> gens = {p({1, 0, 2, 3}), p({1, 2, 3, 0})};  // S4
    const PermGroup k = PermGroup::close(gens);
    const auto want = oracle_close(gens);
    CHECK(k.order() == want.size());
    CHECK(k.order() == 24);
    for (const auto& e : want) CHECK(k.contains(e));
    const auto& elems = k.elements(100);
    CHECK(elems.size() == 24);
    CHECK(std::set<Perm>(elems.begin(), elems.end()) == want);
  }

  TEST_CASE("closure is deterministic") {
    const std::vector<Perm> gens = {p({2, 3, 0, 1}), p({1, 0, 3, 2})};
    const PermGroup k1 = PermGroup::close(gens);
    const PermGroup k2 = PermGroup::close(gens);
    CHECK(k1.base() == k2.base());
    CHECK(k1.elements(64) == k2.elements(64));
  }

  TEST_CASE("max order budget trips") {
    // S5 has order 120
    std::vector<Perm> gens = {p({1, 0, 2, 3, 4}), p({1, 2, 3, 4, 0})};
    ClosureOptions co;
    co.max_order = 100;
    CHECK_THROWS_AS(PermGroup::close(gens, co), BudgetExceeded);
    co.max_order = 120;
    CHECK(PermGroup::close(gens, co).order() == 120);
  }

  TEST_CASE("membership and subgroup relations") {
    const PermGroup s3 = PermGroup::close({p({1, 0, 2}), p({1, 2, 0})});
    const PermGroup c3 = PermGroup::close({p({1, 2, 0})});
    CHECK(s3.order() == 6);
    CHECK(c3.order() == 3);
    CHECK(c3.is_subgroup_of(s3));
    CHECK_FALSE(s3.is_subgroup_of(c3));
    for (const auto& e : all_perms(3)) CHECK(s3.contains(e));
    CHECK_FALSE(c3.contains(p({1, 0, 2})));
    CHECK(PermGroup::trivial(4).order() == 1);
  }

  TEST_CASE("orbits and point stabilizers") {
    const PermGroup k = PermGroup::close({p({1, 0, 2, 3}), p({0, 1, 3, 2})});
    const auto orb = k.orbits();
    CHECK(orb == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
    const PermGroup s3 = PermGroup::close({p({1, 0, 2}), p({1, 2, 0})});
    CHECK(s3.point_stabilizer(0).order() == 2);
    CHECK(orbit_partition(4, {p({1, 0, 2, 3}), p({0, 1, 3, 2})}) ==
          std::vector<std::vector<int>>{{0, 1}, {2, 3}});
  }

  TEST_CASE("right regular representation is regular") {
    const Group g({4, 2});
    const PermGroup k = right_regular(g);
    CHECK(k.order() == 8);
    CHECK(k.degree() == 8);
    for (const auto& e : k.elements(16)) {
      if (e.is_identity()) continue;
      for (int x = 0; x < 8; ++x) CHECK(e[x] != x);  // fixed-point free
    }
    // translation by h sends x to x*h
    const Perm t = right_translation(g, 3);
    for (int x = 0; x < 8; ++x) CHECK(t[x] == g.mul(x, 3));
  }

  TEST_CASE("element tables expose a consistent finite group") {
    const PermGroup s3 = PermGroup::close({p({1, 0, 2}), p({1, 2, 0})});
    const ElementTable t = element_table(s3, 100);
    CHECK(t.elems.size() == 6);
    CHECK(t.elems[t.identity].is_identity());
    for (std::size_t i = 0; i < t.elems.size(); ++i) {
      CHECK(t.elems[t.inv[i]] == t.elems[i].inverse());
      for (std::size_t j = 0; j < t.elems.size(); ++j)
        CHECK(t.elems[t.mul[i][j]] == t.elems[i].then(t.elems[j]));
    }
  }

  TEST_CASE("subgroup enumeration counts classic lattices") {
    const PermGroup s3 = PermGroup::close({p({1, 0, 2}), p({1, 2, 0})});
    CHECK(enumerate_subgroups(element_table(s3, 100)).size() == 6);
    const PermGroup s4 = PermGroup::close({p({1, 0, 2, 3}), p({1, 2, 3, 0})});
    CHECK(enumerate_subgroups(element_table(s4, 100)).size() == 30);
    const PermGroup d4 = PermGroup::close({p({1, 2, 3, 0}), p({3, 2, 1, 0})});
    CHECK(enumerate_subgroups(element_table(d4, 100)).size() == 10);
  }

  TEST_CASE("regular subgroup search inside Sym(4)") {
    const PermGroup s4 = PermGroup::close({p({1, 0, 2, 3}), p({1, 2, 3, 0})});
    const RegularSubgroupSearch c4 = regular_subgroups(s4, Group({4}));
    CHECK(c4.complete);
    CHECK(c4.groups.size() == 3);  // three cyclic regular subgroups
    const RegularSubgroupSearch v4 = regular_subgroups(s4, Group({2, 2}));
    CHECK(v4.complete);
    CHECK(v4.groups.size() == 1);  // only the normal Klein subgroup acts freely
    for (const auto& r : c4.groups) {
      CHECK(r.order() == 4);
      for (const auto& e : r.elements(8)) {
        if (e.is_identity()) continue;
        for (int x = 0; x < 4; ++x) CHECK(e[x] != x);
      }
    }
    // the regular representation of C8 contains exactly one copy of itself
    const PermGroup reg = right_regular(Group({8}));
    const RegularSubgroupSearch self = regular_subgroups(reg, Group({8}));
    CHECK(self.complete);
    CHECK(self.groups.size() == 1);
    CHECK(self.groups[0].is_subgroup_of(reg));
  }

  TEST_CASE("conjugacy search finds witnesses or refutes exhaustively") {
    const PermGroup s3 = PermGroup::close({p({1, 0, 2}), p({1, 2, 0})});
    const PermGroup a = PermGroup::close({p({1, 0, 2})});  // <(01)>
    const PermGroup b = PermGroup::close({p({0, 2, 1})});  // <(12)>
    const ConjugacySearch found = conjugate_subgroup_search(s3, a, b);
    REQUIRE(found.status == ConjugacySearch::Status::found);
    const Perm t = found.conjugator;
    for (const auto& e : a.elements(6))
      CHECK(b.contains(t.inverse().then(e).then(t)));
    const PermGroup c3 = PermGroup::close({p({1, 2, 0})});
    CHECK(conjugate_subgroup_search(s3, c3, b).status == ConjugacySearch::Status::none);
  }

  TEST_CASE("induced section action of the regular group is the quotient") {
    const Group g({4, 2});
    const Subgroup whole = generate_subgroup(g, {1, 4});
    const Subgroup l = generate_subgroup(g, {2});
    const Section s = make_section(g, whole, l);
    const PermGroup act = induced_section_action(right_regular(g), g, s, 1000);
    CHECK(act.degree() == 4);
    CHECK(act.order() == 4);
  }
}
