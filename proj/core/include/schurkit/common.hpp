#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace schurkit {

// A search or closure blew past its configured cap.  Callers either enlarge
// the budget or treat the result as undecided; they must not guess.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// An input that type-checks violates a guarantee the math promises us
// (e.g. a quotient that should be an S-ring is not).  Always a bug or a
// corrupted input, never something to swallow.
struct PropertyViolation : std::logic_error {
  explicit PropertyViolation(const std::string& what) : std::logic_error(what) {}
};

// A candidate partition failed one of the three S-ring axioms.
struct AxiomViolation : std::invalid_argument {
  AxiomViolation(int axiom, const std::string& what)
      : std::invalid_argument(what), axiom(axiom) {}
  int axiom;  // 1 = identity class, 2 = inverse closure, 3 = constant structure constants
};

// Dense element sets over groups of order <= 64.
using ElemSet = std::uint64_t;

inline bool set_contains(ElemSet s, int e) { return (s >> e) & 1u; }
inline ElemSet set_insert(ElemSet s, int e) { return s | (ElemSet{1} << e); }
inline int set_size(ElemSet s) { return __builtin_popcountll(s); }
inline ElemSet full_set(int n) { return n >= 64 ? ~ElemSet{0} : ((ElemSet{1} << n) - 1); }

inline int set_min(ElemSet s) { return s ? __builtin_ctzll(s) : -1; }

inline std::vector<int> set_to_vector(ElemSet s) {
  std::vector<int> v;
  while (s) {
    int e = __builtin_ctzll(s);
    v.push_back(e);
    s &= s - 1;
  }
  return v;
}

inline ElemSet vector_to_set(const std::vector<int>& v) {
  ElemSet s = 0;
  for (int e : v) s = set_insert(s, e);
  return s;
}

// Caps for the search routines.  Defaults are sized so every workload in the
// acceptance suite finishes; anything structurally explosive trips the cap
// and surfaces as budget-exceeded / undecided instead of hanging.
struct SearchBudget {
  std::uint64_t max_group_order = 1'000'000'000;  // close_group hard cap
  std::size_t element_budget = 200'000;           // explicit element enumeration
  std::uint64_t node_budget = 20'000'000;         // backtracking node cap
};

// FNV-1a, used only to bucket canonical forms; equality is always decided by
// comparing full matrices.
inline std::uint64_t fnv1a(const std::uint8_t* data, std::size_t n,
                           std::uint64_t h = 14695981039346656037ull) {
  for (std::size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace schurkit
