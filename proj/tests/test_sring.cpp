// Ring axioms, structure constants and the set-level operators, checked
// against hand-computed partitions and convolution-count oracles.

#include <doctest.h>

#include <map>
#include <memory>
#include <tuple>
#include <vector>

#include "schurkit/common.hpp"
#include "schurkit/group.hpp"
#include "schurkit/sring.hpp"

using namespace schurkit;

namespace {

GroupPtr grp(std::vector<int> factors) {
  return std::make_shared<const Group>(std::move(factors));
}

SRing ring(GroupPtr g, std::vector<std::vector<int>> classes) {
  return SRing::validate(std::move(g), classes);
}

SRing group_ring(const GroupPtr& g) {
  std::vector<std::vector<int>> cls;
  for (int e = 0; e < g->order(); ++e) cls.push_back({e});
  return SRing::validate(g, cls);
}

// oracle: c^Z_{X,Y} = |{(x,y) : x in X, y in Y, xy = z}| for a fixed z in Z
int oracle_constant(const SRing& a, int xi, int yi, int z) {
  const Group& g = a.group();
  int c = 0;
  for (int x : set_to_vector(a.classes()[xi]))
    for (int y : set_to_vector(a.classes()[yi]))
      if (g.mul(x, y) == z) ++c;
  return c;
}

}  // namespace

TEST_SUITE("sring") {
  TEST_CASE("group ring and rank-2 ring validate") {
    const auto g = grp({6});
    CHECK(group_ring(g).rank() == 6);
    const SRing r2 = ring(grp({7}), {{0}, {1, 2, 3, 4, 5, 6}});
    CHECK(r2.rank() == 2);
    CHECK(r2.class_of(0) == 0);
    CHECK(r2.class_of(3) == 1);
  }

  TEST_CASE("each axiom failure is reported with its number") {
    // identity not alone
    try {
      ring(grp({4}), {{0, 2}, {1, 3}});
      FAIL("expected axiom violation");
    } catch (const AxiomViolation& e) {
      CHECK(e.axiom == 1);
    }
    // classes not closed under inverses: inv(1) = 3 lands in another class
    try {
      ring(grp({4}), {{0}, {1}, {2, 3}});
      FAIL("expected axiom violation");
    } catch (const AxiomViolation& e) {
      CHECK(e.axiom == 2);
    }
    // inverse-closed at the set level but convolution counts vary per element
    try {
      ring(grp({6}), {{0}, {1, 2}, {4, 5}, {3}});
      FAIL("expected axiom violation");
    } catch (const AxiomViolation& e) {
      CHECK(e.axiom == 3);
    }
    // not a partition: element 2 missing, then classes overlapping in 2
    CHECK_THROWS_AS(ring(grp({4}), {{0}, {1, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(ring(grp({4}), {{0}, {1, 2}, {2, 3}}), std::invalid_argument);
  }

  TEST_CASE("classes are ordered by size then minimal element") {
    const SRing a = ring(grp({8}), {{1, 3, 5, 7}, {0}, {2, 6}, {4}});
    CHECK(a.classes() == std::vector<ElemSet>{0x01, 0x10, 0x44, 0xAA});
  }

  TEST_CASE("structure constants match the convolution oracle") {
    const SRing a = ring(grp({8}), {{0}, {4}, {2, 6}, {1, 3, 5, 7}});
    for (int xi = 0; xi < a.rank(); ++xi)
      for (int yi = 0; yi < a.rank(); ++yi) {
        const auto& row = a.constants_row(xi, yi);
        REQUIRE(row.size() == static_cast<std::size_t>(a.rank()));
        for (int zi = 0; zi < a.rank(); ++zi) {
          const int z = set_min(a.classes()[zi]);
          CHECK(row[zi] == oracle_constant(a, xi, yi, z));
        }
      }
    // nonzero list agrees with the rows
    for (const auto& [xi, yi, zi, c] : a.nonzero_constants()) {
      CHECK(c > 0);
      CHECK(a.constants_row(xi, yi)[zi] == c);
    }
  }

  TEST_CASE("A-set recognition") {
    const SRing a = ring(grp({8}), {{0}, {4}, {2, 6}, {1, 3, 5, 7}});
    CHECK(a.is_a_set(0));                 // empty set
    CHECK(a.is_a_set(0x11));              // {0,4}
    CHECK(a.is_a_set(0xAA | 0x44));       // union of two classes
    CHECK_FALSE(a.is_a_set(0x02));        // {1} splits a class
    CHECK(a.aset(0x44).elements == 0x44);
    CHECK_THROWS_AS(a.aset(0x06), std::invalid_argument);
  }

  TEST_CASE("A-subgroups of the group ring are the whole lattice") {
    const auto g = grp({6});
    const auto subs = group_ring(g).a_subgroups();
    CHECK(subs.size() == 4);  // C6 has subgroups of order 1, 2, 3, 6
    const SRing r2 = ring(grp({7}), {{0}, {1, 2, 3, 4, 5, 6}});
    CHECK(r2.a_subgroups().size() == 2);  // only {e} and G
  }

  TEST_CASE("quotient ring by an A-subgroup") {
    const auto g = grp({4});
    const SRing zg = group_ring(g);
    const Subgroup whole = generate_subgroup(*g, {1});
    const Subgroup l = generate_subgroup(*g, {2});
    const SRing q = quotient_sring(zg, make_section(*g, whole, l));
    CHECK(q.rank() == 2);
    CHECK(q.group().order() == 2);
    // a non-A-section is rejected: {1,2,3} has no subgroup structure to quotient by
    const SRing r2 = ring(grp({4}), {{0}, {1, 2, 3}});
    CHECK_THROWS_AS(quotient_sring(r2, make_section(*g, whole, l)), std::invalid_argument);
  }

  TEST_CASE("power map permutes the classes") {
    const SRing a = ring(grp({8}), {{0}, {4}, {2, 6}, {1, 3, 5, 7}});
    // coprime powers fix every class of this ring
    for (long long m : {1, 3, 5, 7})
      for (int c = 0; c < a.rank(); ++c) CHECK(power_map_classes(a, c, m) == a.classes()[c]);
    const SRing b = ring(grp({8}), {{0}, {4}, {2, 6}, {1, 7}, {3, 5}});
    // classes sort to {0},{4},{1,7},{2,6},{3,5}; index 2 is {1,7}
    CHECK(power_map_classes(b, 2, 3) == vector_to_set({3, 5}));  // {1,7}^(3) = {3,5}
    CHECK(power_map_classes(b, 2, 7) == vector_to_set({1, 7}));  // inversion fixes {1,7}
  }

  TEST_CASE("rationality means invariance under every coprime power") {
    const auto g7 = grp({7});
    const SRing quad = ring(g7, {{0}, {1, 2, 4}, {3, 5, 6}});
    CHECK_FALSE(rationality(quad, vector_to_set({1, 2, 4})));  // cubing swaps the halves
    const SRing r2 = ring(g7, {{0}, {1, 2, 3, 4, 5, 6}});
    CHECK(rationality(r2, full_set(7) & ~ElemSet{1}));
    CHECK(rationality(quad, 0x01));  // the identity class is always rational
  }

  TEST_CASE("torsion-filtered power set") {
    const SRing a = ring(grp({4}), {{0}, {2}, {1, 3}});
    // H = 2-torsion = {0,2}; the class {1,3} meets every coset twice, so it
    // contributes nothing; {2} meets H exactly once and contributes 2^2 = 0
    CHECK(sylow_power_set(a, a.aset(vector_to_set({1, 3})), 2).elements == 0);
    CHECK(sylow_power_set(a, a.aset(vector_to_set({2})), 2).elements == 0x01);
  }

  TEST_CASE("intersection numbers are the constant coset overlap") {
    const auto g7 = grp({7});
    const SRing r2 = ring(g7, {{0}, {1, 2, 3, 4, 5, 6}});
    const Subgroup whole = generate_subgroup(*g7, {1});
    CHECK(intersection_numbers(r2, whole, 1) == 6);
    const SRing zg = group_ring(grp({6}));
    const Subgroup h = generate_subgroup(zg.group(), {3});
    for (int c = 0; c < zg.rank(); ++c) CHECK(intersection_numbers(zg, h, c) == 1);
  }

  TEST_CASE("separating subgroup check") {
    const auto g4 = grp({4});
    const SRing r2 = ring(g4, {{0}, {1, 2, 3}});
    const Subgroup h = generate_subgroup(*g4, {2});
    // X = {1,2,3} straddles H = {0,2}; <X meet H> = {0,2} equals rad({1,3})
    CHECK(separat_check(r2, 1, h) == LemmaVerdict::holds);
    // the identity class never straddles anything
    CHECK(separat_check(r2, 0, h) == LemmaVerdict::not_applicable);
  }

  TEST_CASE("p-ring test checks class sizes") {
    CHECK(is_p_sring(ring(grp({4}), {{0}, {2}, {1, 3}}), 2));
    CHECK_FALSE(is_p_sring(ring(grp({4}), {{0}, {1, 2, 3}}), 2));
    CHECK(is_p_sring(group_ring(grp({3, 3})), 3));
  }

  TEST_CASE("format renders sorted element lists") {
    CHECK(format_set(vector_to_set({2, 0, 5})) == "{0,2,5}");
    CHECK(format_set(0) == "{}");
  }
}
