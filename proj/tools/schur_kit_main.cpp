// schur-kit: command-line driver for the Schur-ring census toolkit.
//
//   group             describe a finite abelian group
//   subset-census     exhaustive connection-set census with CI flags
//   ci-sample         seeded random CI verdicts (regular-subgroup method)
//   enumerate-srings  complete ring lists (all | cyclotomic | p-srings)
//   verify-lemma      run a named structural check over a scope of rings
//   decompose         structural decomposition report for one ring
//   report            rebuild the derived artifacts of a stored run
//
// Exit codes: 0 success; 1 structural failure (lemma failure, non-CI
// sample, broken internal invariant); 2 budget exhausted with undecided
// verdicts; 3 bad input.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "schurkit/census.hpp"
#include "schurkit/common.hpp"
#include "schurkit/group.hpp"
#include "schurkit/iso.hpp"
#include "schurkit/json_io.hpp"
#include "schurkit/sring.hpp"
#include "schurkit/sring_build.hpp"

namespace {

using schurkit::BudgetExceeded;
using schurkit::PropertyViolation;
using Json = nlohmann::ordered_json;

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitBadInput = 3;

schurkit::GroupPtr make_group(const std::vector<int>& factors) {
  return std::make_shared<const schurkit::Group>(factors);
}

std::string hex_mask(schurkit::ElemSet s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "0x%llx", static_cast<unsigned long long>(s));
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    schurkit::write_file_atomic(out_path, text);
  }
}

// ---- group ----------------------------------------------------------------

int run_group(const std::vector<int>& factors, bool as_json) {
  const schurkit::GroupPtr g = make_group(factors);
  const auto inv = g->invariant_factors();
  int p = 0;
  const bool pg = g->is_p_group(&p);
  const auto aut = schurkit::automorphism_group(*g);
  if (as_json) {
    Json j;
    j["name"] = g->describe();
    j["factors"] = g->factors();
    j["order"] = g->order();
    j["exponent"] = g->exponent();
    j["invariant_factors"] = inv;
    j["cyclic"] = g->is_cyclic();
    if (pg)
      j["p_group_prime"] = p;
    else
      j["p_group_prime"] = nullptr;
    j["automorphism_count"] = aut.all.size();
    j["sylow_shape_ok"] = g->sylow_shape_ok();
    std::fputs((j.dump(2) + "\n").c_str(), stdout);
    return kExitSuccess;
  }
  std::printf("group %s\n", g->describe().c_str());
  std::printf("  order              %d\n", g->order());
  std::printf("  exponent           %d\n", g->exponent());
  std::string invs;
  for (std::size_t i = 0; i < inv.size(); ++i) invs += (i ? " " : "") + std::to_string(inv[i]);
  std::printf("  invariant factors  %s\n", invs.c_str());
  std::printf("  cyclic             %s\n", g->is_cyclic() ? "yes" : "no");
  if (pg)
    std::printf("  p-group            yes (p=%d)\n", p);
  else
    std::printf("  p-group            no\n");
  std::printf("  automorphisms      %zu\n", aut.all.size());
  std::printf("  sylow shape ok     %s\n", g->sylow_shape_ok() ? "yes" : "no");
  return kExitSuccess;
}

// ---- subset-census ---------------------------------------------------------

int run_census(const std::vector<int>& factors, bool no_reduction, int threads,
               const std::string& run_id, bool no_form_cache) {
  const schurkit::GroupPtr g = make_group(factors);
  schurkit::CensusOptions opts;
  opts.aut_reduction = !no_reduction;
  opts.threads = threads;
  if (!no_form_cache) opts.cache_dir = schurkit::cache_root() + "/forms";
  const schurkit::CensusSummary s = schurkit::subset_census(g, opts);
  std::printf("census %s: %d subsets, %d orbit representatives, %d isomorphism classes\n",
              g->describe().c_str(), s.subsets_total, s.orbit_count, s.iso_class_count);
  std::printf("non-CI pairs: %zu\n", s.non_ci_pairs.size());
  for (const auto& p : s.non_ci_pairs)
    std::printf("  s=%s t=%s\n", hex_mask(p.s).c_str(), hex_mask(p.t).c_str());
  if (!run_id.empty()) {
    schurkit::write_census_artifacts(s, run_id);
    std::printf("artifacts: %s\n", schurkit::run_paths(run_id).dir.c_str());
  }
  return kExitSuccess;
}

// ---- ci-sample --------------------------------------------------------------

int run_sample(const std::vector<int>& factors, int count, std::uint64_t seed,
               const std::string& run_id, const schurkit::SearchBudget& budget) {
  const schurkit::GroupPtr g = make_group(factors);
  const schurkit::SampleReport r = schurkit::ci_sample(g, count, seed, budget);
  std::printf("ci-sample %s seed=%llu count=%d: ci=%d undecided=%d%s\n", g->describe().c_str(),
              static_cast<unsigned long long>(seed), r.requested, r.ci_count, r.undecided_count,
              r.halted ? " HALTED on a non-CI witness" : "");
  if (r.witness)
    std::printf("  witness: s=%s t=%s\n", hex_mask(r.witness->s).c_str(),
                hex_mask(r.witness->t).c_str());
  if (!run_id.empty()) {
    schurkit::write_sample_artifacts(r, run_id);
    std::printf("artifacts: %s\n", schurkit::run_paths(run_id).dir.c_str());
  }
  if (r.halted) return kExitFailure;
  if (r.undecided_count > 0) return kExitUndecided;
  return kExitSuccess;
}

// ---- enumerate-srings --------------------------------------------------------

int run_enumerate(const std::vector<int>& factors, schurkit::EnumMode mode, bool as_json,
                  const std::string& out_path, const schurkit::SearchBudget& budget) {
  const schurkit::GroupPtr g = make_group(factors);
  const auto rings = schurkit::enumerate_srings(g, mode, budget);
  if (as_json) {
    Json j;
    j["group"] = Json::parse(schurkit::group_to_json(*g));
    j["mode"] = mode == schurkit::EnumMode::all          ? "all"
                : mode == schurkit::EnumMode::cyclotomic ? "cyclotomic"
                                                         : "p-srings";
    j["count"] = rings.size();
    j["rings"] = Json::array();
    for (const auto& a : rings) j["rings"].push_back(Json::parse(schurkit::sring_to_json(a)));
    emit(j.dump(2) + "\n", out_path);
    return kExitSuccess;
  }
  std::string text = g->describe() + ": " + std::to_string(rings.size()) + " rings\n";
  for (std::size_t i = 0; i < rings.size(); ++i) {
    text += "ring#" + std::to_string(i) + " rank=" + std::to_string(rings[i].rank()) + " classes=";
    const auto cls = rings[i].classes();
    for (std::size_t c = 0; c < cls.size(); ++c)
      text += (c ? " " : "") + schurkit::format_set(cls[c]);
    text += "\n";
  }
  emit(text, out_path);
  return kExitSuccess;
}

// ---- verify-lemma ------------------------------------------------------------

int run_verify(const std::string& name, const std::string& source,
               const std::vector<std::string>& group_specs, const std::string& run_id,
               const schurkit::SearchBudget& budget) {
  schurkit::LemmaScope scope;
  scope.budget = budget;
  if (source == "schurian")
    scope.source = schurkit::LemmaScope::Source::schurian;
  else if (source == "all")
    scope.source = schurkit::LemmaScope::Source::enumerated_all;
  else if (source == "cyclotomic")
    scope.source = schurkit::LemmaScope::Source::cyclotomic;
  else if (source == "p-srings")
    scope.source = schurkit::LemmaScope::Source::p_srings;
  else
    throw std::invalid_argument("unknown scope source: " + source);
  for (const auto& spec : group_specs) {
    std::vector<int> factors;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ','))
      factors.push_back(std::stoi(tok));
    if (factors.empty()) throw std::invalid_argument("empty group spec");
    scope.groups.push_back(std::move(factors));
  }
  const schurkit::LemmaReport rep = schurkit::verify_lemma(name, scope);
  std::printf("lemma %s: %llu instances, %zu failures (%.2f s)\n", rep.lemma.c_str(),
              static_cast<unsigned long long>(rep.instances_checked), rep.failures.size(),
              rep.runtime_seconds);
  for (const auto& n : rep.notes) std::printf("  note: %s\n", n.c_str());
  for (const auto& f : rep.failures)
    std::printf("  FAIL %s: %s\n", f.instance.c_str(), f.detail.c_str());
  if (!run_id.empty()) {
    schurkit::write_lemma_artifacts(rep, run_id);
    std::printf("artifacts: %s\n", schurkit::run_paths(run_id).dir.c_str());
  }
  return rep.failures.empty() ? kExitSuccess : kExitFailure;
}

// ---- decompose ----------------------------------------------------------------

int run_decompose(const std::string& input, const std::string& out_path) {
  const schurkit::SRing a = schurkit::sring_from_json(read_text_file(input));
  const schurkit::DecompositionReport rep = schurkit::classify_main2(a);
  emit(schurkit::decomposition_to_json(rep), out_path);
  return kExitSuccess;
}

// ---- report ---------------------------------------------------------------------

int run_report(const std::string& run_id) {
  schurkit::regenerate_report(run_id);
  const schurkit::RunPaths rp = schurkit::run_paths(run_id);
  std::printf("regenerated: %s\n", rp.csv.c_str());
  std::printf("regenerated: %s\n", rp.summary.c_str());
  std::printf("regenerated: %s\n", rp.digest.c_str());
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur-ring census toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags are accepted after the subcommand too

  std::string cache_dir;
  app.add_option("--cache-dir", cache_dir,
                 "cache directory (default: SCHURKIT_CACHE or ./.schurkit-cache)");

  schurkit::SearchBudget budget;
  app.add_option("--node-budget", budget.node_budget, "backtracking node cap");
  app.add_option("--element-budget", budget.element_budget, "explicit element enumeration cap");

  // group
  auto* c_group = app.add_subcommand("group", "describe a finite abelian group");
  std::vector<int> g_factors;
  c_group->add_option("--factors", g_factors, "cyclic factor orders, e.g. 4,3,3")
      ->delimiter(',')
      ->required();
  bool g_json = false;
  c_group->add_flag("--json", g_json, "emit machine-readable JSON");

  // subset-census
  auto* c_census =
      app.add_subcommand("subset-census", "exhaustive connection-set census with CI flags");
  std::vector<int> s_factors;
  c_census->add_option("--factors", s_factors, "cyclic factor orders")->delimiter(',')->required();
  bool s_noreduce = false;
  c_census->add_flag("--no-orbit-reduction", s_noreduce,
                     "canonize every subset instead of one per Aut(G)-orbit");
  int s_threads = 1;
  c_census->add_option("--threads", s_threads, "parallel canonization lanes")
      ->check(CLI::PositiveNumber);
  std::string s_run;
  c_census->add_option("--run-id", s_run, "store artifacts under <cache>/runs/<run-id>");
  bool s_nocache = false;
  c_census->add_flag("--no-form-cache", s_nocache,
                     "skip the on-disk canonical-form store (disables resume)");

  // ci-sample
  auto* c_sample =
      app.add_subcommand("ci-sample", "seeded random CI verdicts, regular-subgroup method");
  std::vector<int> m_factors;
  c_sample->add_option("--factors", m_factors, "cyclic factor orders")->delimiter(',')->required();
  int m_count = 0;
  c_sample->add_option("--count", m_count, "number of sampled subsets")
      ->check(CLI::PositiveNumber)
      ->required();
  std::uint64_t m_seed = 0;
  c_sample->add_option("--seed", m_seed, "64-bit sampling seed")->required();
  std::string m_run;
  c_sample->add_option("--run-id", m_run, "store artifacts under <cache>/runs/<run-id>");

  // enumerate-srings
  auto* c_enum = app.add_subcommand("enumerate-srings", "complete duplicate-free ring lists");
  std::vector<int> e_factors;
  c_enum->add_option("--factors", e_factors, "cyclic factor orders")->delimiter(',')->required();
  std::string e_mode;
  c_enum->add_option("--mode", e_mode, "all | cyclotomic | p-srings")
      ->check(CLI::IsMember({"all", "cyclotomic", "p-srings"}))
      ->required();
  bool e_json = false;
  c_enum->add_flag("--json", e_json, "emit the full ring list as JSON");
  std::string e_out;
  c_enum->add_option("--out", e_out, "write output to a file instead of stdout");

  // verify-lemma
  auto* c_verify = app.add_subcommand("verify-lemma", "run a named structural check");
  std::string v_name;
  c_verify->add_option("--name", v_name, "check name")
      ->check(CLI::IsMember(schurkit::lemma_names()))
      ->required();
  std::string v_scope = "schurian";
  c_verify->add_option("--scope", v_scope, "instance source: schurian | all | cyclotomic | p-srings")
      ->check(CLI::IsMember({"schurian", "all", "cyclotomic", "p-srings"}));
  std::vector<std::string> v_groups;
  c_verify
      ->add_option("--groups", v_groups,
                   "group factor lists, one comma list per entry, e.g. --groups 8 --groups 4,3,3")
      ->required();
  std::string v_run;
  c_verify->add_option("--run-id", v_run, "store the report under <cache>/runs/<run-id>");

  // decompose
  auto* c_dec = app.add_subcommand("decompose", "structural decomposition report for one ring");
  std::string d_input;
  c_dec->add_option("--input", d_input, "ring JSON file")->required();
  std::string d_out;
  c_dec->add_option("--out", d_out, "write the report to a file instead of stdout");

  // report
  auto* c_rep = app.add_subcommand("report", "rebuild the derived artifacts of a stored run");
  std::string r_run;
  c_rep->add_option("--run", r_run, "run id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message
    return kExitBadInput;
  }

  if (!cache_dir.empty()) setenv("SCHURKIT_CACHE", cache_dir.c_str(), 1);

  try {
    if (app.got_subcommand(c_group)) return run_group(g_factors, g_json);
    if (app.got_subcommand(c_census))
      return run_census(s_factors, s_noreduce, s_threads, s_run, s_nocache);
    if (app.got_subcommand(c_sample)) return run_sample(m_factors, m_count, m_seed, m_run, budget);
    if (app.got_subcommand(c_enum)) {
      const schurkit::EnumMode mode = e_mode == "all"          ? schurkit::EnumMode::all
                                      : e_mode == "cyclotomic" ? schurkit::EnumMode::cyclotomic
                                                               : schurkit::EnumMode::p_srings;
      return run_enumerate(e_factors, mode, e_json, e_out, budget);
    }
    if (app.got_subcommand(c_verify)) return run_verify(v_name, v_scope, v_groups, v_run, budget);
    if (app.got_subcommand(c_dec)) return run_decompose(d_input, d_out);
    if (app.got_subcommand(c_rep)) return run_report(r_run);
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "budget exceeded: %s\n", e.what());
    return kExitUndecided;
  } catch (const PropertyViolation& e) {
    std::fprintf(stderr, "internal invariant violated: %s\n", e.what());
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "bad input: %s\n", e.what());
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitSuccess;
}
