#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schurkit/common.hpp"
#include "schurkit/group.hpp"
#include "schurkit/iso.hpp"
#include "schurkit/perm.hpp"
#include "schurkit/sring.hpp"

namespace schurkit {

// One row of a subset census, keyed by the minimal-bitmask representative of
// an Aut(G)-orbit of connection sets.  Rows sharing iso_class_id have equal
// canonical forms; rows in one aut_orbit_id are Aut(G)-images of each other.
struct CensusRecord {
  ElemSet subset = 0;
  std::uint64_t canonical_hash = 0;
  int aut_orbit_id = -1;
  int iso_class_id = -1;
  int orbit_size = 0;
  bool ci = true;  // iso class contains exactly one Aut(G)-orbit
};

// Isomorphic Cayley digraphs on inequivalent connection sets.  `iso` maps
// Cay(G,s) onto Cay(G,t) arc by arc; both facts are re-verified before the
// pair is emitted.
struct NonCIPair {
  ElemSet s = 0;
  ElemSet t = 0;
  Perm iso;
};

struct CensusOptions {
  bool aut_reduction = true;  // false canonizes every subset (cross-check mode)
  int threads = 1;            // canonization fan-out; results merge deterministically
  // Content-addressed canonical-form store (one record per digraph, keyed by
  // group spec + palette + adjacency).  A rerun with the same directory skips
  // every form already on disk, so interrupted runs resume where they stopped.
  std::string cache_dir;
};

struct CensusSummary {
  std::vector<int> factors;
  int subsets_total = 0;
  int orbit_count = 0;
  int iso_class_count = 0;
  std::vector<CensusRecord> records;  // ascending subset bitmask
  std::vector<NonCIPair> non_ci_pairs;
};

// Exhaustive subset census over a group of order <= 16 (BudgetExceeded
// beyond): canonize one digraph per Aut(G)-orbit, group by canonical form,
// flag isomorphism classes that span several orbits.
CensusSummary subset_census(const GroupPtr& g, const CensusOptions& opts = {});

struct SampleRow {
  std::uint64_t index = 0;
  ElemSet subset = 0;
  CIVerdict::Status status = CIVerdict::Status::undecided;
};

struct SampleReport {
  std::vector<int> factors;
  std::uint64_t seed = 0;
  int requested = 0;
  std::vector<SampleRow> rows;
  int ci_count = 0;
  int undecided_count = 0;
  bool halted = false;  // a non-ci sample stops the run with a witness dump
  std::optional<NonCIPair> witness;
};

// Seeded random subsets tested with the regular-subgroup CI method; the row
// table is a pure function of (group, count, seed, budget).
SampleReport ci_sample(const GroupPtr& g, int count, std::uint64_t seed,
                       const SearchBudget& budget = {});

enum class EnumMode { all, cyclotomic, p_srings };

// Complete duplicate-free ring lists.
//   all:        partition backtracking over groups of order <= 12
//   cyclotomic: subgroup lattice of Aut(G), deduplicated by orbit partition
//   p_srings:   block backtracking restricted to p-power class sizes
std::vector<SRing> enumerate_srings(const GroupPtr& g, EnumMode mode,
                                    const SearchBudget& budget = {});

// Deduplicated two-closures of G_r * K over all K <= Aut(G), plus the minimal
// elements under the subgroup + complete-subgroup order.  Members whose
// comparisons exhaust the budget stay in `minimal_indices` (conservative
// keep) but carry minimality_proven = false: nothing dominated them, yet not
// every comparison could be decided.
struct TwoClosedFamily {
  std::vector<PermGroup> all;
  std::vector<SRing> rings;             // orbit ring of each member of `all`
  std::vector<int> minimal_indices;     // indices into `all`
  std::vector<bool> minimality_proven;  // parallel to minimal_indices
  bool order_fully_decided = true;      // true iff every kept member is proven minimal
};
TwoClosedFamily two_closed_family(const GroupPtr& g, const SearchBudget& budget = {});

struct LemmaScope {
  enum class Source { schurian, enumerated_all, cyclotomic, p_srings };
  std::vector<std::vector<int>> groups;  // factor lists
  Source source = Source::schurian;
  SearchBudget budget;
};

struct LemmaFailure {
  std::string instance;
  std::string detail;
};

struct LemmaReport {
  std::string lemma;
  std::uint64_t instances_checked = 0;
  std::vector<LemmaFailure> failures;
  std::vector<std::string> notes;  // scope caveats, e.g. minimality approximation
  double runtime_seconds = 0;      // console display only, never serialized
};

// Registry: burn, sch, intersection, tenspr, circ, circcaymin, minpring,
// orders, main2.  Unknown names throw std::invalid_argument.
LemmaReport verify_lemma(const std::string& name, const LemmaScope& scope);
std::vector<std::string> lemma_names();

// ---- persistence ----------------------------------------------------------

// SCHURKIT_CACHE env var, or ".schurkit-cache" under the working directory.
std::string cache_root();

// write-temp-then-rename; concurrent writers of identical content are safe
void write_file_atomic(const std::string& path, const std::string& content);

struct RunPaths {
  std::string dir;       // <cache>/runs/<run-id>
  std::string raw;       // raw.json: full machine-readable result
  std::string csv;       // table.csv
  std::string summary;   // summary.json
  std::string digest;    // digest.md
};
RunPaths run_paths(const std::string& run_id);

std::string census_raw_json(const CensusSummary& s);
CensusSummary census_from_raw_json(const std::string& text);
std::string census_csv(const CensusSummary& s);
std::string census_summary_json(const CensusSummary& s);
std::string census_digest_md(const CensusSummary& s);

std::string sample_raw_json(const SampleReport& r);
SampleReport sample_from_raw_json(const std::string& text);
std::string sample_csv(const SampleReport& r);
std::string sample_digest_md(const SampleReport& r);

std::string lemma_report_json(const LemmaReport& r);  // runtime_seconds omitted
LemmaReport lemma_report_from_json(const std::string& text);
std::string lemma_csv(const LemmaReport& r);
std::string lemma_digest_md(const LemmaReport& r);

// writes raw + csv + summary + digest under runs/<run-id>
void write_census_artifacts(const CensusSummary& s, const std::string& run_id);
void write_sample_artifacts(const SampleReport& r, const std::string& run_id);
void write_lemma_artifacts(const LemmaReport& r, const std::string& run_id);

// rebuilds csv/summary/digest from the stored raw.json of a finished run;
// throws std::invalid_argument when the run is missing
void regenerate_report(const std::string& run_id);

}  // namespace schurkit
