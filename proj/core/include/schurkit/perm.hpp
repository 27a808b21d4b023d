#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "schurkit/common.hpp"
#include "schurkit/group.hpp"

namespace schurkit {

// Permutation of 0..degree-1, stored as the image array.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> img) : img_(std::move(img)) {}
  static Perm identity(int n);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator[](int x) const { return img_[x]; }
  const std::vector<int>& images() const { return img_; }

  // apply *this first, then o
  Perm then(const Perm& o) const;
  Perm inverse() const;
  bool is_identity() const;
  int order() const;  // lcm of cycle lengths

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

 private:
  std::vector<int> img_;
};

struct ClosureOptions {
  std::vector<int> base_hint;            // forced leading base points
  std::uint64_t max_order = 1'000'000'000;  // exceeding throws; UINT64_MAX = no cap
  std::size_t element_budget = 0;        // enumerate elements now if order fits
};

// Permutation group with a base and strong generating set, built by a
// deterministic Schreier-Sims: generators are processed in input order,
// orbits by BFS in point order, and new base points are the smallest moved
// point of the residue, so identical input always yields identical data.
class PermGroup {
 public:
  PermGroup() = default;

  static PermGroup trivial(int degree);
  static PermGroup close(std::vector<Perm> gens, const ClosureOptions& opts = {});

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }

  // Saturates at UINT64_MAX for astronomically large closures; use
  // order_exceeds for budget decisions.
  std::uint64_t order() const;
  bool order_exceeds(std::uint64_t cap) const;

  bool contains(const Perm& g) const;
  bool is_subgroup_of(const PermGroup& other) const;

  // Explicit element list in deterministic transversal-product order.
  // Throws BudgetExceeded if the order exceeds the budget.
  const std::vector<Perm>& elements(std::size_t budget) const;

  std::vector<std::vector<int>> orbits() const;  // sorted by minimal point
  PermGroup point_stabilizer(int pt) const;

  const std::vector<int>& base() const { return base_; }

 private:
  struct Level {
    int base_pt = -1;
    std::vector<int> orbit;      // discovery order, orbit[0] = base_pt
    std::vector<int> orbit_pos;  // point -> orbit index, -1 outside
    std::vector<Perm> trans;     // trans[k] maps base_pt to orbit[k]
  };

  void push_level(int base_pt);
  void insert_gen(const Perm& g, std::size_t level);
  void build_level(std::size_t i);
  void extend_orbit(std::size_t level);
  std::pair<Perm, std::size_t> sift_from(Perm g, std::size_t level) const;
  void recompute_order();

  int degree_ = 0;
  std::vector<Perm> gens_;     // input generators, deduplicated
  std::vector<Perm> strong_;   // strong generating set
  std::vector<int> strong_depth_;  // strong_[i] fixes base_[0..depth-1]
  std::vector<int> base_;
  std::vector<Level> levels_;
  unsigned __int128 order_ = 1;
  bool order_saturated_ = false;
  mutable std::vector<Perm> elements_;  // cache for elements()
};

// Right regular representation x -> xg of a finite abelian group.
Perm right_translation(const Group& g, int h);
PermGroup right_regular(const Group& g);

// Orbit partition of a point set under generators (BFS, minimal point first).
std::vector<std::vector<int>> orbit_partition(int degree, const std::vector<Perm>& gens);

// The action induced on the cosets of a section by the elements of K that
// fix the upper subgroup setwise and respect the lower-coset partition.
// Needs the explicit element list of K (BudgetExceeded beyond the budget).
PermGroup induced_section_action(const PermGroup& k, const Group& g,
                                 const Section& s, std::size_t element_budget);

struct RegularSubgroupSearch {
  std::vector<PermGroup> groups;  // deduplicated, deterministic order
  bool complete = true;           // false when a budget tripped
};

// All regular subgroups of k abstractly isomorphic to `target` (abelian).
// Regularity forces |R| = degree; the isomorphism test compares invariant
// factors computed from a cyclic basis of R.
RegularSubgroupSearch regular_subgroups(const PermGroup& k, const Group& target,
                                        const SearchBudget& budget = {});

struct ConjugacySearch {
  enum class Status { found, none, undecided };
  Status status = Status::undecided;
  Perm conjugator;  // valid when status == found
};

// Searches k for an element t with A^t <= B (conjugation x -> t^-1 x t).
// none means exhaustively ruled out; undecided means the budget tripped.
ConjugacySearch conjugate_subgroup_search(const PermGroup& k, const PermGroup& a,
                                          const PermGroup& b,
                                          const SearchBudget& budget = {});

// Small finite group materialized as an index-composition table, for
// subgroup-lattice work on groups of a few hundred elements.
struct ElementTable {
  std::vector<Perm> elems;  // sorted by image array
  std::vector<std::vector<std::uint16_t>> mul;
  std::vector<std::uint16_t> inv;
  int identity = -1;

  int index_of(const Perm& p) const;
};

ElementTable element_table(const PermGroup& k, std::size_t element_budget);

// Every subgroup of the table group, as sorted element-index lists ordered
// by (size, lexicographic).
std::vector<std::vector<std::uint16_t>> enumerate_subgroups(const ElementTable& t);

}  // namespace schurkit
