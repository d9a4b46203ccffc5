// Prints one PASS/FAIL/SKIP line per acceptance criterion; exits 1 on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "oracle.hpp"
#include "properties.hpp"
#include "semrel/cli.hpp"
#include "semrel/store.hpp"
#include "semrel/tasks.hpp"

namespace fs = std::filesystem;
using namespace semrel;

namespace {

int failures = 0;

void report(const char* status, int id, const std::string& label, const std::string& detail) {
  fmt::print("{} {} {}: {}\n", status, id, label, detail);
  std::fflush(stdout);
}

void verdict(bool ok, int id, const std::string& label, const std::string& detail) {
  if (!ok) ++failures;
  report(ok ? "PASS" : "FAIL", id, label, detail);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void criterion_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = testing::oracle_equivalence(500, 1);
  const double secs = seconds_since(t0);
  verdict(r.ok() && r.trials >= 200 && secs < 10.0, 1, "oracle equivalence",
          fmt::format("{} graphs, {} checks ({} connected pairs), {} violations, {:.2f} s{}", r.trials, r.checks,
                      r.nontrivial, r.violations, secs, r.ok() ? "" : "; first: " + r.first_violation));
}

void criterion_vehicles() {
  const auto g = testing::vehicles();
  const auto car = *g.find("02958343-n"), pedal = *g.find("02687172-n");
  const auto pr = max_relatedness(g, car, pedal, Measure::pr);
  const auto nwpl = max_relatedness(g, car, pedal, Measure::nwpl);
  bool hierarchy_only = nwpl.witness.has_value();
  if (nwpl.witness)
    for (Relation t : nwpl.witness->edges) hierarchy_only &= t == Relation::hypernym || t == Relation::hyponym;
  const bool direct = pr.witness && pr.witness->length() == 1 && pr.witness->edges[0] == Relation::part_meronym;
  verdict(pr.value == 0.0367 && direct && std::abs(nwpl.value - 0.61) <= 1e-12 && hierarchy_only, 2,
          "car/accelerator fixture",
          fmt::format("PR = {} (direct part_meronym: {}), NWPL = {:.15f} over {} hierarchy edges", pr.value, direct,
                      nwpl.value, nwpl.witness ? nwpl.witness->length() : 0));
}

void criterion_formulas() {
  struct Check {
    const char* what;
    double got, want;
  };
  const double w1[] = {0.61}, w2[] = {0.61, 0.0367};
  const int d1[] = {5}, d2[] = {2, 4}, d3[] = {2, 4, 4};
  const Check checks[] = {
      {"SCM(empty)", scm(std::span<const double>{}), 1.0},
      {"SCM(hypernym)", scm(w1), 0.61},
      {"SCM(hypernym, part_meronym)", scm(w2), 0.0223870},
      {"SPE(d=5)", spe(d1, 10), 0.5},
      {"SPE(2,4)", spe(d2, 10), 0.26666666666666666},
      {"SPE(2,4,4)", spe(d3, 10), 0.10666666666666667},
      {"lambda(0.2, 0.6)", lexical_relevance(0.2, 0.6), 0.3},
  };
  double worst = 0.0;
  std::string detail;
  for (const auto& c : checks) {
    worst = std::max(worst, std::abs(c.got - c.want));
    detail += fmt::format("{}={:.7f} ", c.what, c.got);
  }
  verdict(worst <= 1e-12, 3, "formula spot checks", fmt::format("{}max |err| {:.1e}", detail, worst));
}

void criterion_properties() {
  const std::pair<const char*, std::function<testing::PropertyResult()>> suites[] = {
      {"SR symmetry", [] { return testing::sr_symmetry(1000, 2); }},
      {"range [0,1]", [] { return testing::relatedness_range(1000, 3); }},
      {"edge-deletion monotonicity", [] { return testing::edge_deletion_monotonicity(1000, 4); }},
      {"Omiotis symmetry", [] { return testing::omiotis_symmetry(1000, 5); }},
      {"TF-IDF scale homogeneity", [] { return testing::tfidf_scale_homogeneity(1000, 6); }},
  };
  bool ok = true;
  std::string detail;
  for (const auto& [label, run] : suites) {
    const auto r = run();
    ok &= r.ok() && r.trials == 1000;
    detail += fmt::format("{}: {} trials, {} violations; ", label, r.trials, r.violations);
    if (!r.ok()) detail += "first: " + r.first_violation + "; ";
  }
  detail.resize(detail.size() - 2);
  verdict(ok, 4, "property suites", detail);
}

// Connected random graph: a hypernym tree plus extra typed edges.
Thesaurus cache_graph(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ThesaurusBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_sense("c" + std::to_string(i), Pos::noun);
  for (std::size_t i = 1; i < n; ++i)
    b.add_edge(static_cast<SenseIndex>(i), Relation::hypernym,
               std::uniform_int_distribution<SenseIndex>(0, static_cast<SenseIndex>(i - 1))(rng));
  std::uniform_int_distribution<SenseIndex> any(0, static_cast<SenseIndex>(n - 1));
  std::uniform_int_distribution<int> type(0, static_cast<int>(kRelationCount) - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const auto u = any(rng), v = any(rng);
    if (u != v) b.add_edge(u, static_cast<Relation>(type(rng)), v);
  }
  return std::move(b).build();
}

void criterion_cache() {
  const auto g = cache_graph(160, 7);
  const auto cache = precompute(g, {}, 1'000'000);
  const auto r = verify_cache(cache, g, 10'000, 11);
  const auto path = (fs::temp_directory_path() / "semrel_acceptance_cache.bin").string();
  cache.write(path);
  const auto bytes = cache.serialize();
  const auto back = PairCache::read(path);
  const bool round_trip = back.serialize() == bytes && fs::file_size(path) == bytes.size();
  fs::remove(path);
  verdict(r.sampled == 10'000 && r.deviations == 0 && round_trip, 5, "cache integrity",
          fmt::format("{} records, {} sampled, {} deviations, round trip {} ({} bytes)", cache.size(), r.sampled,
                      r.deviations, round_trip ? "identical" : "differs", bytes.size()));
}

// Needs SEMREL_DATA (an imported thesaurus) and SEMREL_EVAL_DIR with mc.tsv,
// rg.tsv, li30.tsv and msr_test.tsv in the task formats. SEMREL_CACHE is
// optional.
void criterion_datasets() {
  const char* data = std::getenv("SEMREL_DATA");
  const char* eval = std::getenv("SEMREL_EVAL_DIR");
  if (!data || !eval) {
    report("SKIP", 6, "published-benchmark replication", "set SEMREL_DATA and SEMREL_EVAL_DIR to run");
    return;
  }
  const auto g = load_thesaurus({fs::path(data) / "lexicon.tsv", fs::path(data) / "edges.tsv"});
  std::optional<PairCache> cache;
  if (const char* c = std::getenv("SEMREL_CACHE")) cache = PairCache::read(c);
  TermOptions opts;
  opts.cache = cache ? &*cache : nullptr;
  const TermScorer sr = [&](const std::string& a, const std::string& b) { return sr_terms(a, b, g, opts).value; };
  OmiotisConfig oc;
  oc.term = opts;
  const TextRelatedness rel(g, oc);

  auto file = [&](const char* name) { return (fs::path(eval) / name).string(); };
  auto run = [&](const char* name, double want, double tol, const std::function<double(const std::string&)>& fn) {
    if (!fs::exists(file(name))) {
      report("SKIP", 6, name, "dataset not present");
      return;
    }
    const double got = fn(file(name));
    const bool ok = std::abs(got - want) <= tol;
    verdict(ok, 6, name,
            fmt::format("{:.4f} (target {} +/- {}){}", got, want, tol,
                        ok || std::abs(got - want) <= 0.10 * (want > 1 ? 100 : 1) ? "" : "; outside the defect band"));
  };
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  run("mc.tsv", 0.856, 0.05, [&](const std::string& f) {
    return evaluate_word_similarity(load_word_pairs(f), sr, threads).summary["spearman"].get<double>();
  });
  run("rg.tsv", 0.8614, 0.05, [&](const std::string& f) {
    return evaluate_word_similarity(load_word_pairs(f), sr, threads).summary["spearman"].get<double>();
  });
  run("li30.tsv", 0.8905, 0.07, [&](const std::string& f) {
    return evaluate_sentence_similarity(load_text_pairs(f), rel, nullptr, threads).summary["spearman"].get<double>();
  });
  run("msr_test.tsv", 69.97, 2.0, [&](const std::string& f) {
    ParaphraseOptions po;
    po.threshold = 0.2;
    return 100.0 * evaluate_paraphrase(load_text_pairs(f), rel, po, nullptr, threads).summary["accuracy"].get<double>();
  });
}

void criterion_default_weights() {
  const auto golden = slurp(testing::test_data("golden/weights_default.tsv"));
  std::ostringstream out, err;
  const char* argv[] = {"semrel", "weights"};
  const int code = run_cli(2, argv, out, err);
  const auto g = testing::vehicles();
  std::size_t lines = 0;
  for (char c : golden) lines += c == '\n';
  const bool ok = code == 0 && out.str() == golden && dump_weights(g.weights()) == golden &&
                  g.weights() == WeightConfig::defaults() && lines == kCategoryCount;
  verdict(ok, 7, "default weights", fmt::format("{} golden lines, CLI dump {}", lines,
                                                out.str() == golden ? "identical" : "differs"));
}

}  // namespace

int main() {
  criterion_oracle();
  criterion_vehicles();
  criterion_formulas();
  criterion_properties();
  criterion_cache();
  criterion_datasets();
  criterion_default_weights();
  fmt::print("{} failed\n", failures);
  return failures == 0 ? 0 : 1;
}
