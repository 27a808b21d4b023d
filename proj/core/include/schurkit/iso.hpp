#pragma once

#include <optional>
#include <vector>

#include "schurkit/common.hpp"
#include "schurkit/group.hpp"
#include "schurkit/perm.hpp"
#include "schurkit/sring.hpp"

namespace schurkit {

// Complete arc coloring of a digraph on n <= 64 vertices; loops carry colors
// too.  Isomorphisms are color-preserving vertex bijections (color values are
// not permutable).
struct ColorDigraph {
  int n = 0;
  std::vector<std::vector<int>> color;
  int palette = 0;

  // validates shape and color range, sets palette = max color + 1
  static ColorDigraph make(std::vector<std::vector<int>> color);
};

struct CanonicalForm {
  std::vector<std::vector<int>> canon;  // color matrix under the canonical labeling
  Perm labeling;                        // original vertex -> canonical position
  std::uint64_t hash = 0;               // digest of canon; buckets only, never verdicts

  bool operator==(const CanonicalForm& o) const { return canon == o.canon; }
  bool operator!=(const CanonicalForm& o) const { return canon != o.canon; }
};

// color[g][h] = class index of h g^-1, so each color class is one basic relation
ColorDigraph cayley_color_graph(const SRing& a);

// two colors: color[g][h] = 1 iff h g^-1 lies in s
ColorDigraph cayley_digraph(const Group& g, ElemSet s);

// Exact canonical labeling by individualization-refinement: equitable
// refinement with per-cell color signatures, target cell = smallest
// non-singleton, full backtrack over the target cell with pruning only by
// automorphisms already discovered at the leaves.  Identical canon matrices
// for isomorphic inputs, different matrices otherwise.
CanonicalForm canonize(const ColorDigraph& d);

// The full color-preserving automorphism group, generated by the
// automorphisms discovered during the canonization search.
PermGroup color_automorphisms(const ColorDigraph& d);

// Automorphism group of the orbit ring of K: contains K, idempotent.
PermGroup two_closure(const PermGroup& k, const GroupPtr& g);

// Some group automorphism mapping s to t, or nothing (exhaustive scan).
std::optional<GroupAutomorphism> cayley_iso(const Group& g, ElemSet s, ElemSet t);

enum class CIMethod { automatic, orbit_census, regular_subgroup };

struct CIVerdict {
  enum class Status { ci, non_ci, undecided };
  Status status = Status::undecided;
  CIMethod method = CIMethod::automatic;  // the method actually used
  // for non_ci: a connection set T with Cay(G,T) isomorphic to Cay(G,S) but
  // not through any group automorphism, plus the digraph isomorphism
  std::optional<ElemSet> witness_set;
  std::optional<Perm> witness_iso;
};

// Whether every connection set with an isomorphic Cayley digraph is the image
// of s under a group automorphism.  The orbit-census method enumerates all
// same-size sets (|G| <= 16); the regular-subgroup method tests whether every
// regular subgroup of Aut(Cay(G,s)) isomorphic to G is conjugate to the right
// translations.  Budget blowouts yield undecided, never a wrong verdict.
CIVerdict ci_subset(const GroupPtr& g, ElemSet s, CIMethod method = CIMethod::automatic,
                    const SearchBudget& budget = {});

// Same criterion applied to the automorphism group of a ring.
CIVerdict ci_sring(const SRing& a, const SearchBudget& budget = {});

enum class Decision { yes, no, undecided };

// Whether every regular subgroup of k2 isomorphic to g conjugates (within k2)
// into k1.  Requires right translations <= k1 <= k2.
Decision g_complete_leq(const PermGroup& k1, const PermGroup& k2, const Group& g,
                        const SearchBudget& budget = {});

// The minimal elements of the family under "subgroup + complete-subgroup"
// comparison; members of undecided comparisons are kept.  Duplicate groups
// keep their first occurrence.
std::vector<PermGroup> min_family_elements(const std::vector<PermGroup>& family,
                                           const Group& g,
                                           const SearchBudget& budget = {});

}  // namespace schurkit
