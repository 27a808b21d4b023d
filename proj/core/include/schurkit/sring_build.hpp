#pragma once

#include <utility>
#include <vector>

#include "schurkit/group.hpp"
#include "schurkit/perm.hpp"
#include "schurkit/sring.hpp"

namespace schurkit {

// Ring whose classes are the orbits of the point stabilizer K_e, for a
// permutation group K containing every right translation.
SRing orbit_sring(GroupPtr g, const PermGroup& k);

// Ring whose classes are the orbits of a group K of automorphisms of G.
// Asserted equal to the orbit ring of the closure of G_r together with K.
SRing cyclotomic_sring(GroupPtr g, const std::vector<GroupAutomorphism>& k);

// Ring on the direct product whose classes are the pairwise products of the
// classes of the two inputs.  Product elements are indexed with the first
// factor's coordinates running fastest.
SRing tensor_sring(const SRing& a1, const SRing& a2);

// Restriction of a ring to an A-subgroup, as a standalone ring on the
// materialized subgroup.
SRing restrict_sring(const SRing& a, const Subgroup& u);

// Assembles the ring that agrees with a_u inside the upper subgroup of s and
// is a union of lower-subgroup cosets outside: classes outside are the
// preimages of the classes of a_quot (a ring on G/L).  The two inputs must
// agree on the section itself; disagreement throws invalid_argument.
SRing s_wreath(const GroupPtr& g, const Section& s, const SRing& a_u,
               const SRing& a_quot);

// All unordered pairs of nontrivial proper A-subgroups whose internal direct
// product is G and for which every class is the product of its projections.
std::vector<std::pair<Subgroup, Subgroup>> detect_tensor(const SRing& a);

struct SWreathWitness {
  Section section;
  bool nontrivial = false;  // lower != {e} and upper != G
};

// All A-sections U/L (excluding the one-point sections e/e and G/G) whose
// lower subgroup lies in the radical of every class outside U.  Ordered by
// (|U| descending, |L| ascending, masks).
std::vector<SWreathWitness> detect_s_wreath(const SRing& a);

// The automorphisms of the group that fix every class setwise.
std::vector<GroupAutomorphism> aut_g(const SRing& a);

// Same orbit partition on the group.
bool cayley_equivalent(const Group& g, const std::vector<GroupAutomorphism>& k1,
                       const std::vector<GroupAutomorphism>& k2);

enum class TriState { yes, no, not_applicable };

// yes iff no proper subgroup of aut_g(A) has the same orbits; not_applicable
// when A is not the orbit ring of its own group-automorphism stabilizer.
TriState cayley_minimal(const SRing& a);

struct ConditionFlags {
  bool ca = false;    // the section ring is the full group ring
  bool caa = false;   // a cyclotomic end and a Cayley minimal section ring
  bool caaa = false;  // the cyclic C_{4p}/C_2 shape with the forced wreath form
  bool any() const { return ca || caa || caaa; }
};

// Flags which of the three sufficient conditions hold for a section of A.
ConditionFlags section_condition(const SRing& a, const Section& s);

struct CircClass {
  bool rank2 = false;
  bool cyclotomic = false;
  bool tensor = false;
  bool nontrivial_s_wreath = false;
  bool any() const { return rank2 || cyclotomic || tensor || nontrivial_s_wreath; }
};

// Which of the four structural cases hold for a ring over a cyclic group.
// PropertyViolation when none does; invalid_argument for non-cyclic groups.
CircClass circ_classify(const SRing& a);

struct SectionWitness {
  Section section;
  bool nontrivial = false;
  ConditionFlags flags;
};

struct DecompositionReport {
  enum class Kind { rank2, tensor, s_wreath, cyclotomic, none };
  Kind kind = Kind::none;
  bool statement1 = false;  // rank 2
  bool statement2 = false;  // tensor over proper A-subgroups
  bool statement3 = false;  // nontrivial s-wreath section with a condition flag
  std::vector<std::pair<Subgroup, Subgroup>> tensor_witnesses;
  std::vector<SectionWitness> swreath_witnesses;
};

std::string to_string(DecompositionReport::Kind k);

// Tests the three statements for a ring over C4 x Cp x Cp (p odd prime) and
// reports every match with witnesses; kind is the first satisfied statement.
DecompositionReport classify_main2(const SRing& a);

}  // namespace schurkit
