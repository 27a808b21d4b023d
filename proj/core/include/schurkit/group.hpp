#pragma once

#include <memory>
#include <string>
#include <vector>

#include "schurkit/common.hpp"

namespace schurkit {

// Finite abelian group presented as a direct product of cyclic factors.
// Elements are dense indices 0..order-1 in mixed radix over the factor
// orders, least significant factor first; index 0 is the identity.
// Multiplication, inverse and element-order tables are precomputed, so all
// element arithmetic is O(1) after construction.
class Group {
 public:
  // factors: cyclic factor orders, each >= 2.  An empty list is the trivial
  // group.  Throws std::invalid_argument on a factor < 2 or order overflow
  // of the dense-index representation.
  explicit Group(std::vector<int> factors);

  int order() const { return order_; }
  const std::vector<int>& factors() const { return factors_; }
  int identity() const { return 0; }

  int mul(int a, int b) const { return mul_[a * order_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int pow(int a, long long m) const;
  int element_order(int a) const { return elt_order_[a]; }
  int exponent() const { return exponent_; }

  std::vector<int> coords_of(int idx) const;
  int index_of(const std::vector<int>& coords) const;

  bool is_cyclic() const { return exponent_ == order_; }
  // p-group test; on success *p_out (if non-null) receives the prime.
  bool is_p_group(int* p_out = nullptr) const;

  // Invariant factor list d_1 | d_2 | ... | d_k (ascending), computed
  // arithmetically from the cyclic factors.  Canonical isomorphism type.
  std::vector<int> invariant_factors() const;

  // True when every Sylow subgroup is elementary abelian or cyclic of
  // order 4.  Precondition of the coset order lift.
  bool sylow_shape_ok() const;

  bool operator==(const Group& o) const { return factors_ == o.factors_; }
  std::string describe() const;  // e.g. "C4xC3xC3"

 private:
  std::vector<int> factors_;
  int order_;
  int exponent_;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<int> elt_order_;
};

using GroupPtr = std::shared_ptr<const Group>;

// Subgroup of a Group: the sorted element list always contains 0.
struct Subgroup {
  std::vector<int> elements;
  std::vector<int> generators;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int e) const;
  ElemSet mask() const;  // requires all elements < 64
};

// Automorphism of a Group, stored as the image of every element index.
struct GroupAutomorphism {
  std::vector<int> image;

  int apply(int e) const { return image[e]; }
  bool operator==(const GroupAutomorphism& o) const { return image == o.image; }
  bool operator<(const GroupAutomorphism& o) const { return image < o.image; }
};

// Full automorphism group: every automorphism plus a generating subset.
struct AutomorphismGroup {
  std::vector<GroupAutomorphism> all;       // sorted by image array
  std::vector<int> generator_indices;       // indices into `all`
};

// Section U/L of G: the cosets of L inside U, carrying a Group structure on
// the cosets.  pi maps a G element index to its quotient element index (-1
// outside U); rep_of maps a quotient element to the minimal coset
// representative in G.
struct Section {
  Subgroup upper;
  Subgroup lower;
  std::vector<std::vector<int>> cosets;  // sorted element lists, ordered by min element
  Group quotient;
  std::vector<int> pi;
  std::vector<int> rep_of;
};

// Closure of the given elements under multiplication and inverse.
Subgroup generate_subgroup(const Group& g, const std::vector<int>& gens);

// rad(X) = { g : gX = X }.  X must be nonempty (throws std::invalid_argument).
Subgroup radical(const Group& g, const std::vector<int>& x);

// Every subgroup, sorted by (order, element list).  Refuses groups larger
// than `bound` (throws BudgetExceeded); the lattice is exponential in rank.
std::vector<Subgroup> subgroup_lattice(const Group& g, int bound = 64);

// Builds the section U/L.  L must be contained in U (std::invalid_argument).
Section make_section(const Group& g, const Subgroup& upper, const Subgroup& lower);

// Brute-force automorphism search over generator images.
AutomorphismGroup automorphism_group(const Group& g);

bool is_automorphism(const Group& g, const std::vector<int>& image);

// Given x,y outside L with |x| an odd prime or 4 and ord(Lx) = ord(Ly) in
// G/L, returns y' in Ly with |y'| = |x|.  Requires sylow_shape_ok().
// A missing lift contradicts the underlying counting argument and throws
// PropertyViolation; bad inputs throw std::invalid_argument.
int coset_order_lift(const Group& g, const Subgroup& l, int x, int y);

// A subgroup materialized as a standalone Group: to_parent embeds the new
// group's element indices back into G, from_parent inverts it (-1 outside U).
struct EmbeddedGroup {
  Group group;
  std::vector<int> to_parent;
  std::vector<int> from_parent;
};

EmbeddedGroup as_group(const Group& g, const Subgroup& u);

// Cyclic-factor decomposition of an abelian group given by an explicit
// multiplication table.  Returns (generator, order) pairs, largest order
// first, so the order sequence is the invariant factor chain reversed.
std::vector<std::pair<int, int>> abelian_basis(const std::vector<std::vector<int>>& table);

}  // namespace schurkit
