// End-to-end acceptance gate for the toolkit.  Ten checks, one line each;
// every check recomputes its result twice and byte-compares the serialized
// reports, so determinism is exercised everywhere and summarized by check 10.
// Exit status: 0 when all ten lines say PASS, 1 otherwise.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "schurkit/census.hpp"
#include "schurkit/common.hpp"
#include "schurkit/group.hpp"
#include "schurkit/iso.hpp"
#include "schurkit/json_io.hpp"
#include "schurkit/sring.hpp"

using namespace schurkit;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

GroupPtr grp(std::vector<int> factors) {
  return std::make_shared<const Group>(std::move(factors));
}

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<bool> g_stable;  // one entry per byte-stability comparison

bool line(int id, bool ok, const std::string& detail) {
  std::printf("[%s] check %2d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  return ok;
}

std::string secs_str(double secs, double cap) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), " (%.1fs, cap %.0fs)", secs, cap);
  return buf;
}

// ---------------------------------------------------------------------------
// check 1: C8 census finds an isomorphism class spanning several
// automorphism orbits, and the emitted witness replays independently.
bool check1() {
  const auto t0 = Clock::now();
  const GroupPtr g = grp({8});
  const CensusSummary a = subset_census(g);
  const CensusSummary b = subset_census(g);
  const double secs = since(t0);
  g_stable.push_back(census_raw_json(a) == census_raw_json(b));

  std::map<int, std::set<int>> orbits_per_class;
  for (const auto& r : a.records) orbits_per_class[r.iso_class_id].insert(r.aut_orbit_id);
  int multi = 0;
  for (const auto& [cls, orbs] : orbits_per_class)
    if (orbs.size() >= 2) ++multi;

  bool witness_ok = !a.non_ci_pairs.empty();
  if (witness_ok) {
    const NonCIPair& w = a.non_ci_pairs.front();
    const Group& gr = *g;
    const Perm& p = w.iso;
    // arc-by-arc: x->y in Cay(G,s) iff p(x)->p(y) in Cay(G,t)
    witness_ok &= p.degree() == 8;
    for (int x = 0; x < 8 && witness_ok; ++x)
      for (int y = 0; y < 8; ++y) {
        const bool arc_s = (w.s >> gr.mul(y, gr.inv(x))) & 1;
        const bool arc_t = (w.t >> gr.mul(p[y], gr.inv(p[x]))) & 1;
        if (arc_s != arc_t) {
          witness_ok = false;
          break;
        }
      }
    // and no group automorphism carries s to t
    const AutomorphismGroup ag = automorphism_group(gr);
    witness_ok &= ag.all.size() == 4;
    for (const auto& aut : ag.all) {
      ElemSet img = 0;
      for (int x = 0; x < 8; ++x)
        if ((w.s >> x) & 1) img |= ElemSet{1} << aut.apply(x);
      if (img == w.t) witness_ok = false;
    }
  }

  const bool ok = g_stable.back() && multi >= 1 && witness_ok && secs < 60.0;
  std::ostringstream d;
  d << "C8 census: " << multi << " isomorphism classes span several orbits, "
    << a.non_ci_pairs.size() << " witness pairs, first witness "
    << (witness_ok ? "replays" : "FAILS to replay") << secs_str(secs, 60);
  return line(1, ok, d.str());
}

// ---------------------------------------------------------------------------
// check 2: every subset of C6 is CI.
bool check2() {
  const auto t0 = Clock::now();
  const CensusSummary a = subset_census(grp({6}));
  const CensusSummary b = subset_census(grp({6}));
  const double secs = since(t0);
  g_stable.push_back(census_raw_json(a) == census_raw_json(b));
  bool all_ci = a.non_ci_pairs.empty();
  for (const auto& r : a.records) all_ci &= r.ci;
  const bool ok = g_stable.back() && all_ci && a.subsets_total == 64 && secs < 60.0;
  std::ostringstream d;
  d << "C6 census: " << a.subsets_total << " subsets, " << a.non_ci_pairs.size()
    << " witness pairs (want 0)" << secs_str(secs, 60);
  return line(2, ok, d.str());
}

// ---------------------------------------------------------------------------
// check 3: the 2^16-subset census over C4 x C2 x C2 finds witness pairs,
// and the canonical-form store lets an interrupted run resume.
bool check3() {
  const auto t0 = Clock::now();
  const fs::path tmp =
      fs::temp_directory_path() / ("schurkit-acceptance-" + std::to_string(::getpid()));
  std::error_code ec;
  fs::remove_all(tmp, ec);

  CensusOptions opts;
  opts.threads = 4;
  opts.cache_dir = (tmp / "forms").string();
  const GroupPtr g = grp({4, 2, 2});

  const CensusSummary cold = subset_census(g, opts);
  const std::string cold_raw = census_raw_json(cold);

  int stored = 0;
  for (const auto& e : fs::recursive_directory_iterator(tmp / "forms"))
    if (e.is_regular_file()) ++stored;

  // simulate an interruption: drop one shard directory, then resume
  fs::path dropped;
  for (const auto& e : fs::directory_iterator(tmp / "forms"))
    if (e.is_directory()) {
      dropped = e.path();
      break;
    }
  if (!dropped.empty()) fs::remove_all(dropped);
  const std::string resumed_raw = census_raw_json(subset_census(g, opts));
  const double secs = since(t0);
  g_stable.push_back(resumed_raw == cold_raw);
  fs::remove_all(tmp, ec);

  const bool ok = g_stable.back() && cold.subsets_total == 65536 &&
                  !cold.non_ci_pairs.empty() && stored > 0 && secs < 1800.0;
  std::ostringstream d;
  d << "C4xC2xC2 census: " << cold.orbit_count << " orbits, " << cold.non_ci_pairs.size()
    << " witness pairs (want >=1), " << stored
    << " stored forms, resume after shard loss byte-identical" << secs_str(secs, 1800);
  return line(3, ok, d.str());
}

// ---------------------------------------------------------------------------
// check 4: seeded random sampling over C4 x C3 x C3 decides at least 80%
// of 200 subsets and never finds a witness.
bool check4() {
  const auto t0 = Clock::now();
  const GroupPtr g = grp({4, 3, 3});
  const SampleReport a = ci_sample(g, 200, 20260814);
  const SampleReport b = ci_sample(g, 200, 20260814);
  const double secs = since(t0);
  g_stable.push_back(sample_raw_json(a) == sample_raw_json(b));
  const int decided = a.requested - a.undecided_count;
  const bool ok = g_stable.back() && !a.halted && a.undecided_count <= 40 &&
                  decided == a.ci_count && secs < 3600.0;
  std::ostringstream d;
  d << "C4xC3xC3 sample: 200 subsets, seed 20260814, " << a.ci_count << " CI, "
    << a.undecided_count << " undecided (cap 40), halted=" << (a.halted ? "yes" : "no")
    << secs_str(secs, 3600);
  return line(4, ok, d.str());
}

// ---------------------------------------------------------------------------
// check 5: p-ring enumeration matches the known lists and agrees with
// filtering the full enumeration.
bool check5() {
  const auto t0 = Clock::now();
  const GroupPtr g4 = grp({4});
  const GroupPtr g9 = grp({3, 3});

  const auto p4 = enumerate_srings(g4, EnumMode::p_srings);
  const auto p9 = enumerate_srings(g9, EnumMode::p_srings);
  g_stable.push_back(enumerate_srings(g4, EnumMode::p_srings) == p4 &&
                     enumerate_srings(g9, EnumMode::p_srings) == p9);

  // C9-elementary list: the full group ring plus one wreath-style ring per
  // order-3 subgroup (singletons on the subgroup, then its two cosets)
  int full_rings = 0, wreath_rings = 0;
  for (const auto& a : p9) {
    if (a.rank() == 9) {
      ++full_rings;
      continue;
    }
    std::multiset<int> sizes;
    for (ElemSet c : a.classes()) sizes.insert(__builtin_popcountll(c));
    if (sizes != std::multiset<int>{1, 1, 1, 3, 3}) continue;
    // the three singletons together must form a subgroup, and the size-3
    // classes its cosets
    ElemSet h = 0;
    for (ElemSet c : a.classes())
      if (__builtin_popcountll(c) == 1) h |= c;
    bool closed = true;
    for (int x = 0; x < 9; ++x)
      for (int y = 0; y < 9; ++y)
        if (((h >> x) & 1) && ((h >> y) & 1) && !((h >> g9->mul(x, y)) & 1)) closed = false;
    bool cosets = closed;
    for (ElemSet c : a.classes()) {
      if (__builtin_popcountll(c) != 3) continue;
      int x0 = 0;
      while (!((c >> x0) & 1)) ++x0;
      ElemSet coset = 0;
      for (int e = 0; e < 9; ++e)
        if ((h >> e) & 1) coset |= ElemSet{1} << g9->mul(e, x0);
      cosets &= coset == c;
    }
    if (closed && cosets) ++wreath_rings;
  }

  // filtering the full enumeration by the p-ring predicate gives the same sets
  auto filter = [](const std::vector<SRing>& all, int p) {
    std::vector<SRing> out;
    for (const auto& a : all)
      if (is_p_sring(a, p)) out.push_back(a);
    return out;
  };
  const bool filter4 = filter(enumerate_srings(g4, EnumMode::all), 2) == p4;
  const bool filter9 = filter(enumerate_srings(g9, EnumMode::all), 3) == p9;
  const double secs = since(t0);

  const bool ok = g_stable.back() && p4.size() == 2 && p9.size() == 5 && full_rings == 1 &&
                  wreath_rings == 4 && filter4 && filter9 && secs < 600.0;
  std::ostringstream d;
  d << "p-ring enumeration: C4 has " << p4.size() << " (want 2), C3xC3 has " << p9.size()
    << " = " << full_rings << " full + " << wreath_rings
    << " wreath-style (want 1+4), full-enumeration filter "
    << (filter4 && filter9 ? "agrees" : "DISAGREES") << secs_str(secs, 600);
  return line(5, ok, d.str());
}

// ---------------------------------------------------------------------------
// check 6: power-map, Sylow-power and intersection-number invariants hold
// on every orbit ring of the five reference groups.
bool check6() {
  const auto t0 = Clock::now();
  LemmaScope scope;
  scope.groups = {{4}, {8}, {3, 3}, {4, 3}, {4, 2, 2}};
  scope.source = LemmaScope::Source::schurian;
  bool stable = true, clean = true;
  std::ostringstream d;
  d << "orbit rings of C4,C8,C3xC3,C12,C4xC2xC2:";
  for (const std::string name : {"burn", "sch", "intersection"}) {
    const LemmaReport a = verify_lemma(name, scope);
    const LemmaReport b = verify_lemma(name, scope);
    stable &= lemma_report_json(a) == lemma_report_json(b);
    clean &= a.failures.empty() && a.instances_checked > 0;
    d << " " << name << "=" << a.instances_checked << "/" << a.failures.size() << "f";
  }
  const double secs = since(t0);
  g_stable.push_back(stable);
  const bool ok = stable && clean && secs < 1800.0;
  return line(6, ok, d.str() + secs_str(secs, 1800));
}

// ---------------------------------------------------------------------------
// check 7: prime-order cyclic groups only carry cyclotomic rings, every
// C12 ring classifies, and cyclic cyclotomic rings are Cayley minimal.
bool check7() {
  const auto t0 = Clock::now();

  bool prime_match = true;
  for (int p : {5, 7}) {
    const auto all = enumerate_srings(grp({p}), EnumMode::all);
    const auto cyc = enumerate_srings(grp({p}), EnumMode::cyclotomic);
    prime_match &= all.size() == cyc.size();
    for (const auto& a : all) {
      bool found = false;
      for (const auto& c : cyc)
        if (a == c) found = true;
      prime_match &= found;
    }
  }

  LemmaScope circ_scope;
  circ_scope.groups = {{5}, {7}, {12}};
  circ_scope.source = LemmaScope::Source::enumerated_all;
  const LemmaReport circ_a = verify_lemma("circ", circ_scope);
  const LemmaReport circ_b = verify_lemma("circ", circ_scope);

  LemmaScope cm_scope;
  cm_scope.groups = {{8}, {12}, {15}};
  cm_scope.source = LemmaScope::Source::cyclotomic;
  const LemmaReport cm_a = verify_lemma("circcaymin", cm_scope);
  const LemmaReport cm_b = verify_lemma("circcaymin", cm_scope);
  const double secs = since(t0);

  g_stable.push_back(lemma_report_json(circ_a) == lemma_report_json(circ_b) &&
                     lemma_report_json(cm_a) == lemma_report_json(cm_b));
  const bool ok = g_stable.back() && prime_match && circ_a.failures.empty() &&
                  circ_a.instances_checked == 39 && cm_a.failures.empty() &&
                  cm_a.instances_checked == 18 && secs < 600.0;
  std::ostringstream d;
  d << "cyclic rings: C5/C7 all-cyclotomic " << (prime_match ? "holds" : "FAILS")
    << ", classification " << circ_a.instances_checked << "/" << circ_a.failures.size()
    << "f (want 39/0), Cayley-minimal " << cm_a.instances_checked << "/"
    << cm_a.failures.size() << "f (want 18/0)" << secs_str(secs, 600);
  return line(7, ok, d.str());
}

// ---------------------------------------------------------------------------
// check 8: the two CI decision routes agree on every subset of C6 and C8.
bool check8() {
  const auto t0 = Clock::now();
  auto sweep = [](const GroupPtr& g) {
    std::string verdicts;
    const int n = g->order();
    for (ElemSet s = 0; s < (ElemSet{1} << n); ++s) {
      const CIVerdict oc = ci_subset(g, s, CIMethod::orbit_census);
      const CIVerdict rs = ci_subset(g, s, CIMethod::regular_subgroup);
      char c = '?';
      if (oc.status != rs.status)
        c = 'X';
      else if (oc.status == CIVerdict::Status::ci)
        c = 'c';
      else if (oc.status == CIVerdict::Status::non_ci)
        c = 'n';
      verdicts.push_back(c);
    }
    return verdicts;
  };
  const std::string v6 = sweep(grp({6}));
  const std::string v8 = sweep(grp({8}));
  const std::string v6b = sweep(grp({6}));
  const std::string v8b = sweep(grp({8}));
  const double secs = since(t0);
  g_stable.push_back(v6 == v6b && v8 == v8b);

  const auto count = [](const std::string& v, char c) {
    return static_cast<int>(std::count(v.begin(), v.end(), c));
  };
  const int disagreements = count(v6, 'X') + count(v8, 'X');
  const int undecided = count(v6, '?') + count(v8, '?');
  const bool ok = g_stable.back() && disagreements == 0 && undecided == 0 &&
                  v6.size() + v8.size() == 320 && count(v6, 'n') == 0 &&
                  count(v8, 'n') == 16 && secs < 600.0;
  std::ostringstream d;
  d << "dual CI routes: " << v6.size() + v8.size() << " verdicts, " << disagreements
    << " disagreements (want 0), " << undecided << " undecided (want 0), C8 non-CI "
    << count(v8, 'n') << " (want 16)" << secs_str(secs, 600);
  return line(8, ok, d.str());
}

// ---------------------------------------------------------------------------
// check 9: every minimal member of the C4 x C3 x C3 two-closure family
// matches one of the three structure statements, and the report accounts for
// every excluded ring.
bool check9() {
  const auto t0 = Clock::now();
  LemmaScope scope;
  scope.groups = {{4, 3, 3}};
  const LemmaReport a = verify_lemma("main2", scope);
  const LemmaReport b = verify_lemma("main2", scope);
  const double secs = since(t0);
  g_stable.push_back(lemma_report_json(a) == lemma_report_json(b));

  int excluded = 0, kept = 0;
  bool labeled = false;
  for (const auto& n : a.notes) {
    if (n.find("excluded by minimality filter") != std::string::npos) ++excluded;
    if (n.find("kept ring#") != std::string::npos) ++kept;
    if (n.find("two-closures") != std::string::npos) labeled = true;
  }
  const bool ok = g_stable.back() && a.failures.empty() && a.instances_checked == 3 &&
                  excluded == 140 && kept == 3 && labeled && secs < 1800.0;
  std::ostringstream d;
  d << "C4xC3xC3 family: " << a.instances_checked << " minimal rings classified, "
    << a.failures.size() << " failures (want 0), " << excluded
    << " exclusions listed (want 140), scope " << (labeled ? "labeled" : "UNLABELED")
    << secs_str(secs, 1800);
  return line(9, ok, d.str());
}

// ---------------------------------------------------------------------------
// check 10: every double-run comparison above produced identical bytes.
bool check10() {
  int held = 0;
  for (bool b : g_stable)
    if (b) ++held;
  const bool ok = held == static_cast<int>(g_stable.size()) && !g_stable.empty();
  std::ostringstream d;
  d << "determinism: " << held << "/" << g_stable.size()
    << " byte-identical report comparisons";
  return line(10, ok, d.str());
}

}  // namespace

int main() {
  std::printf("acceptance gate: census toolkit\n");
  int passed = 0;
  bool (*checks[])() = {check1, check2, check3, check4, check5,
                        check6, check7, check8, check9, check10};
  for (int i = 0; i < 10; ++i) {
    try {
      if (checks[i]()) ++passed;
    } catch (const std::exception& e) {
      line(i + 1, false, std::string("unexpected exception: ") + e.what());
      if (i + 1 != 10) g_stable.push_back(false);
    }
  }
  std::printf("RESULT: %d/10 checks passed\n", passed);
  return passed == 10 ? 0 : 1;
}
