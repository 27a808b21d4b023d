// Ring constructions: orbit and cyclotomic rings, tensor and wreath
// assemblies, and the structural classifiers, on hand-checkable groups.

#include <doctest.h>

#include <memory>
#include <vector>

#include "schurkit/common.hpp"
#include "schurkit/group.hpp"
#include "schurkit/perm.hpp"
#include "schurkit/sring.hpp"
#include "schurkit/sring_build.hpp"

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

GroupAutomorphism power_aut(const Group& g, int m) {
  std::vector<int> image(g.order());
  for (int e = 0; e < g.order(); ++e) image[e] = g.pow(e, m);
  return GroupAutomorphism{image};
}

}  // namespace

TEST_SUITE("sring_build") {
  TEST_CASE("the orbit ring of the bare regular group is the group ring") {
    for (const auto& factors : {std::vector<int>{6}, std::vector<int>{8}, std::vector<int>{3, 3}}) {
      const auto g = grp(factors);
      CHECK(orbit_sring(g, right_regular(*g)) == group_ring(g));
    }
  }

  TEST_CASE("adjoining an automorphism merges its orbits") {
    const auto g = grp({8});
    std::vector<Perm> gens = right_regular(*g).generators();
    gens.push_back(Perm(power_aut(*g, 7).image));  // inversion
    const SRing a = orbit_sring(g, PermGroup::close(gens));
    CHECK(a == ring(grp({8}), {{0}, {4}, {2, 6}, {1, 7}, {3, 5}}));
    CHECK(a == cyclotomic_sring(g, {power_aut(*g, 7)}));
  }

  TEST_CASE("cyclotomic ring of the full automorphism group over C8") {
    const auto g = grp({8});
    std::vector<GroupAutomorphism> all;
    for (int m : {3, 5, 7}) all.push_back(power_aut(*g, m));
    CHECK(cyclotomic_sring(g, all) == ring(grp({8}), {{0}, {4}, {2, 6}, {1, 3, 5, 7}}));
  }

  TEST_CASE("tensor products multiply classes pairwise") {
    const auto g2 = grp({2});
    const auto g3 = grp({3});
    const SRing t1 = tensor_sring(group_ring(g2), group_ring(g3));
    CHECK(t1.group().factors() == std::vector<int>{2, 3});
    CHECK(t1 == group_ring(grp({2, 3})));
    // rank-2 times rank-2: elements index as c2 + 2*c3
    const SRing r2a = ring(g2, {{0}, {1}});
    const SRing r2b = ring(g3, {{0}, {1, 2}});
    const SRing t2 = tensor_sring(r2a, r2b);
    CHECK(t2 == ring(grp({2, 3}), {{0}, {1}, {2, 4}, {3, 5}}));
    const auto pairs = detect_tensor(t2);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].first.elements == std::vector<int>{0, 1});
    CHECK(pairs[0].second.elements == std::vector<int>{0, 2, 4});
  }

  TEST_CASE("restriction to an A-subgroup renumbers densely") {
    const auto g = grp({8});
    const SRing a = ring(g, {{0}, {4}, {2, 6}, {1, 7}, {3, 5}});
    const Subgroup u = generate_subgroup(*g, {2});  // {0,2,4,6}
    const SRing r = restrict_sring(a, u);
    CHECK(r.group().order() == 4);
    CHECK(r == ring(grp({4}), {{0}, {2}, {1, 3}}));
  }

  TEST_CASE("wreath assembly agrees inside and coarsens outside") {
    const auto g = grp({8});
    const Subgroup u = generate_subgroup(*g, {2});
    const Subgroup l = generate_subgroup(*g, {4});
    const Section s = make_section(*g, u, l);
    const SRing a_u = ring(grp({4}), {{0}, {1}, {2}, {3}});  // ring on U (as C4)
    // quotient of G by L is C4; take its group ring
    const Section gq = make_section(*g, generate_subgroup(*g, {1}), l);
    const SRing a_q = group_ring(grp({4}));
    const SRing w = s_wreath(g, s, a_u, a_q);
    CHECK(w.rank() == 6);
    // outside U every class is a full L-coset
    for (ElemSet c : w.classes()) {
      if ((c & ~u.mask()) == 0) continue;
      CHECK(set_size(c) == 2);
      const auto v = set_to_vector(c);
      CHECK(g->mul(v[0], 4) == v[1]);
    }
    // the assembly rejects inputs that disagree on the section
    const SRing a_q_rank2 = ring(grp({4}), {{0}, {1, 2, 3}});
    CHECK_THROWS_AS(s_wreath(g, s, a_u, a_q_rank2), std::invalid_argument);
  }

  TEST_CASE("detect_s_wreath finds the wreath sections") {
    const auto g = grp({8});
    const SRing a = ring(g, {{0}, {4}, {2, 6}, {1, 3, 5, 7}});
    bool found = false;
    for (const auto& w : detect_s_wreath(a)) {
      if (!w.nontrivial) continue;
      // L must translate-fix every class outside U
      for (ElemSet c : a.classes()) {
        if ((c & ~w.section.upper.mask()) == 0) continue;
        for (int l : w.section.lower.elements) {
          ElemSet shifted = 0;
          for (int x : set_to_vector(c)) shifted = set_insert(shifted, g->mul(l, x));
          CHECK(shifted == c);
        }
      }
      found = true;
    }
    CHECK(found);
    // the group ring admits no nontrivial wreath section
    for (const auto& w : detect_s_wreath(group_ring(grp({6})))) CHECK_FALSE(w.nontrivial);
  }

  TEST_CASE("class-fixing automorphisms") {
    const auto g = grp({6});
    CHECK(aut_g(group_ring(g)).size() == 1);  // identity only
    const SRing r2 = ring(grp({7}), {{0}, {1, 2, 3, 4, 5, 6}});
    CHECK(aut_g(r2).size() == 6);  // every automorphism fixes both classes
    const auto g8 = grp({8});
    const SRing inv8 = ring(g8, {{0}, {4}, {2, 6}, {1, 7}, {3, 5}});
    CHECK(cyclotomic_sring(g8, aut_g(inv8)) == inv8);  // round trip
  }

  TEST_CASE("cayley equivalence compares orbit partitions") {
    const auto g = grp({5});
    const GroupAutomorphism inv = power_aut(*g, 4);
    const GroupAutomorphism full = power_aut(*g, 2);
    CHECK(cayley_equivalent(*g, {inv}, {inv}));
    CHECK_FALSE(cayley_equivalent(*g, {inv}, {full}));
  }

  TEST_CASE("cayley minimality over small cyclic groups") {
    const auto g5 = grp({5});
    CHECK(cayley_minimal(group_ring(g5)) == TriState::yes);
    CHECK(cayley_minimal(ring(g5, {{0}, {1, 2, 3, 4}})) == TriState::yes);
    // the C6 tensor ring is exactly the orbit ring of inversion, and the
    // trivial subgroup has strictly finer orbits
    const SRing t = tensor_sring(ring(grp({2}), {{0}, {1}}),
                                 ring(grp({3}), {{0}, {1, 2}}));
    CHECK(cayley_minimal(t) == TriState::yes);
    // classes coarser than the orbits of their own class-fixing
    // automorphisms: {1,2,3,5,6,7} splits under Aut(C8)
    const SRing coarse = ring(grp({8}), {{0}, {4}, {1, 2, 3, 5, 6, 7}});
    CHECK(cayley_minimal(coarse) == TriState::not_applicable);
  }

  TEST_CASE("circ classification covers the four structural cases") {
    const auto g8 = grp({8});
    CHECK(circ_classify(ring(g8, {{0}, {1, 2, 3, 4, 5, 6, 7}})).rank2);
    CHECK(circ_classify(group_ring(g8)).cyclotomic);
    const SRing w = ring(g8, {{0}, {4}, {2, 6}, {1, 3, 5, 7}});
    CHECK(circ_classify(w).nontrivial_s_wreath);
    const SRing t = tensor_sring(group_ring(grp({4})), group_ring(grp({3})));
    CHECK(circ_classify(t).tensor);
    CHECK_THROWS_AS(circ_classify(group_ring(grp({2, 2}))), std::invalid_argument);
  }

  TEST_CASE("main classification statements on C4 x C3 x C3") {
    const auto g = grp({4, 3, 3});
    const SRing zg = group_ring(g);
    const DecompositionReport tz = classify_main2(zg);
    CHECK(tz.statement2);  // ZG is the tensor of its factor restrictions
    CHECK_FALSE(tz.statement1);
    REQUIRE_FALSE(tz.tensor_witnesses.empty());
    std::vector<int> all_elems;
    for (int e = 0; e < 36; ++e) all_elems.push_back(e);
    const SRing r2 = SRing::validate(g, std::vector<std::vector<int>>{
                                            {0}, std::vector<int>(all_elems.begin() + 1,
                                                                  all_elems.end())});
    const DecompositionReport rz = classify_main2(r2);
    CHECK(rz.statement1);
    CHECK(rz.kind == DecompositionReport::Kind::rank2);
    CHECK(to_string(DecompositionReport::Kind::rank2) == "rank2");
  }

  TEST_CASE("section conditions flag the full-group-ring case") {
    const auto g = grp({8});
    const SRing w = ring(g, {{0}, {4}, {2, 6}, {1, 3, 5, 7}});
    bool saw_flag = false;
    for (const auto& witness : detect_s_wreath(w)) {
      if (!witness.nontrivial) continue;
      const ConditionFlags f = section_condition(w, witness.section);
      if (f.any()) saw_flag = true;
    }
    CHECK(saw_flag);
  }
}
