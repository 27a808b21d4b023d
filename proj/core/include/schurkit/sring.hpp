#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "schurkit/common.hpp"
#include "schurkit/group.hpp"

namespace schurkit {

class SRing;

// An element set known to be a union of basic sets of a specific ring.
// Construct through SRing::aset so the guarantee actually holds.
struct ASet {
  ElemSet elements = 0;
};

enum class LemmaVerdict { holds, not_applicable };

// Partition of an abelian group into classes with the identity alone in its
// class, inverse-closed classes, and constant structure constants.  Immutable
// after validation; the constant cache fills lazily, one row per (X,Y) pair.
class SRing {
 public:
  // Checks the three axioms and builds the ring.  Throws AxiomViolation
  // naming the offending classes, or std::invalid_argument when the input is
  // not a partition of a group of order <= 64.
  static SRing validate(GroupPtr g, const std::vector<ElemSet>& classes);
  static SRing validate(GroupPtr g, const std::vector<std::vector<int>>& classes);

  const Group& group() const { return *g_; }
  const GroupPtr& group_ptr() const { return g_; }
  int rank() const { return static_cast<int>(classes_.size()); }
  // canonically ordered by (size, minimal element)
  const std::vector<ElemSet>& classes() const { return classes_; }
  int class_of(int elem) const { return class_of_[elem]; }

  bool is_a_set(ElemSet x) const;
  ASet aset(ElemSet x) const;  // invalid_argument when x is not an A-set

  // all subgroups of the group that are A-sets
  std::vector<Subgroup> a_subgroups() const;

  // c^Z_{X,Y} for each class index Z; row computed once, then cached
  const std::vector<int>& constants_row(int xi, int yi) const;
  // every nonzero (X,Y,Z,c), ordered by (X,Y,Z)
  std::vector<std::tuple<int, int, int, int>> nonzero_constants() const;

  bool operator==(const SRing& o) const {
    return g_->factors() == o.g_->factors() && classes_ == o.classes_;
  }
  bool operator!=(const SRing& o) const { return !(*this == o); }

  SRing(const SRing& o);
  SRing& operator=(const SRing& o);
  SRing(SRing&& o) noexcept;
  SRing& operator=(SRing&& o) noexcept;

 private:
  SRing() = default;

  GroupPtr g_;
  std::vector<ElemSet> classes_;
  std::vector<int> class_of_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, std::vector<int>> cache_;
};

// {0,2,5}-style rendering of an element set, for error messages
std::string format_set(ElemSet s);

// The ring induced on a section U/L whose ends are both A-subgroups: classes
// are the projections of the classes inside U.  Throws invalid_argument when
// the section is not an A-section; the result is re-validated.
SRing quotient_sring(const SRing& a, const Section& s);

// {x^m : x in X} for a class X and m coprime to the group order; the result
// is asserted to be a class again (PropertyViolation if not).
ElemSet power_map_classes(const SRing& a, int class_index, long long m);

// {x^p : x in X, |X meet Hx| not divisible by p} with H = {g : g^p = e};
// asserted to be an A-set.  p must divide the group order.
ASet sylow_power_set(const SRing& a, const ASet& x, int p);

// The common value |X meet Hx| over x in X, for an A-subgroup H.
// PropertyViolation if the count is not constant.
int intersection_numbers(const SRing& a, const Subgroup& h, int class_index);

// When X meets both H and its complement and <X meet H> lies in the radical
// of X minus H: asserts X = <X> minus rad(X) and rad(X) <= H, returns holds.
// Otherwise not_applicable.
LemmaVerdict separat_check(const SRing& a, int class_index, const Subgroup& h);

// every class has p-power size; the group must be a p-group
bool is_p_sring(const SRing& a, int p);

// X^(m) = X for every m coprime to the group order
bool rationality(const SRing& a, ElemSet x);

}  // namespace schurkit
