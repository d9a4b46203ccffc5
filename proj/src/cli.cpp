#include "semrel/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "semrel/error.hpp"
#include "semrel/store.hpp"
#include "semrel/tasks.hpp"
#include "semrel/termrel.hpp"
#include "semrel/textrel.hpp"
#include "semrel/wordnet_import.hpp"

namespace semrel {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fixed(double v) { return fmt::format("{:.6f}", v); }

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Graph, cache and option objects built once per invocation.
struct Session {
  const RunConfig& cfg;
  Thesaurus graph;
  std::optional<PairCache> cache;
  std::optional<ICTable> ic;
  std::optional<StopwordSet> stopwords;

  Session(const RunConfig& c, std::ostream& err) : cfg(c), graph(load(c)) {
    if (cfg.cache) {
      cache = PairCache::read(*cfg.cache);
      check_cache_compatible(*cache, graph);
    }
    if (cfg.ic) {
      ic = load_ic_table(*cfg.ic, graph);
      if (auto v = ic->monotonicity_violations(graph))
        fmt::print(err, "warning: {} hypernym links have a child more probable than its parent\n", v);
    }
    if (!is_path_measure(cfg.mode) && cfg.mode != Measure::leacock && !ic)
      throw UsageError(fmt::format("--mode {} needs --ic", name(cfg.mode)));
    if (cfg.stopwords) stopwords = load_stopwords(*cfg.stopwords);
  }

  static Thesaurus load(const RunConfig& c) {
    std::string lexicon = c.lexicon, edges = c.edges;
    if (lexicon.empty() || edges.empty()) {
      if (c.data_dir.empty())
        throw UsageError("no thesaurus given: pass --data, --lexicon and --edges, or set SEMREL_DATA");
      if (lexicon.empty()) lexicon = (fs::path(c.data_dir) / "lexicon.tsv").string();
      if (edges.empty()) edges = (fs::path(c.data_dir) / "edges.tsv").string();
    }
    return load_thesaurus({lexicon, edges, c.weights, c.depths});
  }

  TermOptions term_options() const {
    TermOptions t;
    t.mode = cfg.mode;
    t.search.max_length = cfg.max_length;
    t.identical_term_unity = cfg.identical_term_unity;
    t.cache = cache ? &*cache : nullptr;
    t.ic = ic ? &*ic : nullptr;
    if (cfg.simple) {
      auto simple = SearchOptions::without_cross_pos(graph);
      t.search.excluded = simple.excluded;
    }
    return t;
  }

  TextRelatedness text_relatedness() const {
    OmiotisConfig oc;
    oc.term = term_options();
    oc.simple = cfg.simple;
    oc.stopwords = stopwords ? &*stopwords : nullptr;
    return TextRelatedness(graph, oc);
  }

  SenseIndex sense(const std::string& key) const {
    auto s = graph.find(key);
    if (!s) throw DataError("unknown sense key '" + key + "'");
    return *s;
  }

  std::string path_string(const SemanticPath& p) const {
    std::string out = graph.sense(p.senses.front()).key;
    for (std::size_t i = 0; i < p.edges.size(); ++i)
      out += fmt::format(" -{}-> {}", name(p.edges[i]), graph.sense(p.senses[i + 1]).key);
    return out;
  }
};

int cmd_sr(const Session& s, const std::string& w1, const std::string& w2, bool explain, std::ostream& out) {
  auto r = sr_terms(w1, w2, s.graph, s.term_options());
  std::optional<std::string> k1, k2;
  if (r.best_pair) {
    k1 = s.graph.sense(r.best_pair->first).key;
    k2 = s.graph.sense(r.best_pair->second).key;
  }
  if (s.cfg.format == OutputFormat::structured) {
    fmt::print(out, "{{\"term1\":{},\"term2\":{},\"mode\":\"{}\",\"value\":{},\"sense1\":{},\"sense2\":{}}}\n",
               json_string(w1), json_string(w2), name(s.cfg.mode), fixed(r.value), k1 ? json_string(*k1) : "null",
               k2 ? json_string(*k2) : "null");
    return kExitOk;
  }
  fmt::print(out, "{}\n", fixed(r.value));
  if (explain && r.best_pair) {
    fmt::print(out, "senses\t{}\t{}\n", *k1, *k2);
    if (is_path_measure(s.cfg.mode)) {
      auto p = max_relatedness(s.graph, r.best_pair->first, r.best_pair->second, s.cfg.mode,
                               s.term_options().search);
      if (p.witness) fmt::print(out, "path\t{}\n", s.path_string(*p.witness));
    }
  }
  return kExitOk;
}

int cmd_sr_sense(const Session& s, const std::string& k1, const std::string& k2, bool explain, std::ostream& out) {
  const auto a = s.sense(k1), b = s.sense(k2);
  const auto opts = s.term_options();
  double value = 0.0;
  std::optional<SemanticPath> witness;
  if (is_path_measure(s.cfg.mode)) {
    auto r = max_relatedness(s.graph, a, b, s.cfg.mode, opts.search);
    value = r.value;
    witness = std::move(r.witness);
  } else {
    value = baseline_similarity(s.cfg.mode, s.graph, a, b, opts.ic);
  }
  if (s.cfg.format == OutputFormat::structured) {
    fmt::print(out, "{{\"sense1\":{},\"sense2\":{},\"mode\":\"{}\",\"value\":{},\"path\":{}}}\n", json_string(k1),
               json_string(k2), name(s.cfg.mode), fixed(value), witness ? json_string(s.path_string(*witness)) : "null");
    return kExitOk;
  }
  fmt::print(out, "{}\n", fixed(value));
  if (explain && witness)
    fmt::print(out, "path\t{}\nscm\t{}\nspe\t{}\n", s.path_string(*witness), fixed(witness->scm), fixed(witness->spe));
  return kExitOk;
}

int cmd_relate(const Session& s, const std::vector<std::string>& inputs, bool text, bool explain, std::ostream& out,
               std::ostream& err) {
  const std::string a = text ? inputs[0] : read_file(inputs[0]);
  const std::string b = text ? inputs[1] : read_file(inputs[1]);
  auto rel = s.text_relatedness();
  std::vector<TokenizedText> docs{rel.tokenize(a, "A"), rel.tokenize(b, "B")};
  std::optional<CorpusStats> corpus;
  if (s.cfg.df_table) corpus = load_df_table(*s.cfg.df_table);
  else corpus = CorpusStats::from_texts(docs);
  auto r = rel.score(docs[0], docs[1], *corpus);
  if (r.empty_input) fmt::print(err, "warning: a text is empty after stopword removal; relatedness is 0\n");

  if (s.cfg.format == OutputFormat::structured) {
    fmt::print(out, "{{\"omiotis\":{},\"zeta_ab\":{},\"zeta_ba\":{},\"empty_input\":{}}}\n", fixed(r.omiotis),
               fixed(r.zeta_ab), fixed(r.zeta_ba), r.empty_input ? "true" : "false");
    return kExitOk;
  }
  fmt::print(out, "{}\n", fixed(r.omiotis));
  if (explain) {
    fmt::print(out, "zeta_ab\t{}\nzeta_ba\t{}\n", fixed(r.zeta_ab), fixed(r.zeta_ba));
    for (const auto* dir : {&r.matches_ab, &r.matches_ba})
      for (const auto& m : *dir)
        fmt::print(out, "match\t{}\t{}\t{}\t{}\t{}\n", m.term, m.partner, fixed(m.lambda), fixed(m.sr),
                   fixed(m.product));
  }
  return kExitOk;
}

int cmd_precompute(const Session& s, const std::optional<std::string>& seeds_file, std::uint64_t budget,
                   const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::vector<SenseIndex> seeds;
  if (seeds_file) {
    std::ifstream in(*seeds_file);
    if (!in) throw DataError("cannot open " + *seeds_file);
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      if (auto k = s.graph.find(line)) {
        seeds.push_back(*k);
        continue;
      }
      auto senses = senses_of(line, s.graph);
      if (senses.empty()) fmt::print(err, "warning: {}:{}: '{}' is not in the thesaurus\n", *seeds_file, n, line);
      seeds.insert(seeds.end(), senses.begin(), senses.end());
    }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    if (seeds.empty()) throw DataError(*seeds_file + ": no seed senses");
  }
  auto cache = precompute(s.graph, seeds, budget);
  cache.write(out_path);
  const auto& h = cache.header();
  fmt::print(out, "records\t{}\nseeded\t{}\ncomplete\t{}\n", h.record_count, h.seeded ? 1 : 0, h.complete ? 1 : 0);
  return kExitOk;
}

int cmd_verify(const Session& s, const std::string& path, std::size_t samples, std::uint64_t seed, std::ostream& out) {
  auto cache = PairCache::read(path);
  auto r = verify_cache(cache, s.graph, samples, seed);
  fmt::print(out, "sampled\t{}\ndeviations\t{}\nmax_abs_deviation\t{}\n", r.sampled, r.deviations,
             fixed(r.max_abs_deviation));
  return r.deviations == 0 ? kExitOk : kExitData;
}

struct EvalArgs {
  std::string task;
  std::string dataset;
  std::optional<std::string> tune;
  std::string objective = "accuracy";
  std::string analogy_mode = "s";
};

int cmd_eval(const Session& s, const EvalArgs& e, std::ostream& out) {
  const auto opts = s.term_options();
  TermScorer scorer = [&](const std::string& a, const std::string& b) {
    return sr_terms(a, b, s.graph, opts).value;
  };
  const auto threads = s.cfg.threads;
  EvalReport report;
  if (e.task == "wordsim") {
    report = evaluate_word_similarity(load_word_pairs(e.dataset), scorer, threads);
  } else if (e.task == "synonym") {
    report = evaluate_synonyms(load_choice_questions(e.dataset), scorer, threads);
  } else if (e.task == "sat") {
    const auto mode = e.analogy_mode == "s1" ? AnalogyMode::s1 : e.analogy_mode == "s2" ? AnalogyMode::s2 : AnalogyMode::s;
    report = evaluate_analogies(load_analogy_questions(e.dataset), scorer, mode, threads);
  } else {
    auto rel = s.text_relatedness();
    std::optional<CorpusStats> corpus;
    if (s.cfg.df_table) corpus = load_df_table(*s.cfg.df_table);
    const CorpusStats* cp = corpus ? &*corpus : nullptr;
    auto pairs = load_text_pairs(e.dataset);
    if (e.task == "sentence") {
      report = evaluate_sentence_similarity(pairs, rel, cp, threads);
    } else {
      std::vector<LabeledTextPair> tuning;
      if (e.tune) tuning = load_text_pairs(*e.tune);
      ParaphraseOptions po;
      po.threshold = s.cfg.threshold;
      po.tuning = tuning;
      po.objective = e.objective == "f1" ? TuneObjective::f1 : TuneObjective::accuracy;
      report = evaluate_paraphrase(pairs, rel, po, cp, threads);
    }
  }
  out << (s.cfg.format == OutputFormat::structured ? report.to_structured() : report.to_tsv());
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semantic relatedness of senses, words and texts over a weighted lexical graph", "semrel"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  if (const char* env = std::getenv("SEMREL_DATA")) cfg.data_dir = env;
  std::string mode = "sr", format = "tsv";
  std::optional<double> threshold;

  app.add_option("--data", cfg.data_dir, "Directory with lexicon.tsv and edges.tsv (default $SEMREL_DATA)");
  app.add_option("--lexicon", cfg.lexicon, "Lexicon TSV: lemma, pos, sense_key");
  app.add_option("--edges", cfg.edges, "Edge list TSV: source, edge_type, target");
  app.add_option("--weights", cfg.weights, "Edge weight overrides: edge_type, weight");
  app.add_option("--depths", cfg.depths, "Depth overrides: sense_key, depth");
  app.add_option("--stopwords", cfg.stopwords, "Stopword list, one word per line");
  app.add_option("--df-table", cfg.df_table, "Document frequencies: term, df, with a #N row");
  app.add_option("--cache", cfg.cache, "Precomputed pair cache");
  app.add_option("--ic", cfg.ic, "Sense probabilities for resnik, jc and lin");
  app.add_option("--mode", mode, "Relatedness measure")
      ->check(CLI::IsMember({"sr", "pr", "nwpl", "leacock", "resnik", "jc", "lin"}));
  app.add_flag("--simple", cfg.simple, "Skip relation types that cross parts of speech");
  app.add_flag("--identical-term-unity", cfg.identical_term_unity, "Identical known terms score 1");
  app.add_option("--threshold", threshold, "Paraphrase decision threshold (default 0.2)")->check(CLI::Range(0.0, 1.0));
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"tsv", "structured"}));
  app.add_option("--threads", cfg.threads, "Worker threads for eval")->check(CLI::PositiveNumber);
  app.add_option("--max-length", cfg.max_length, "Maximum path length in edges")->check(CLI::PositiveNumber);

  auto* import = app.add_subcommand("import", "Convert a WordNet dict directory to lexicon.tsv and edges.tsv");
  std::string dict_dir, out_dir;
  std::optional<std::string> ic_counts;
  import->add_option("dict", dict_dir, "Directory with data.noun, data.verb, data.adj, data.adv")->required();
  import->add_option("out", out_dir, "Output directory")->required();
  import->add_option("--ic-counts", ic_counts, "ic-*.dat count file; also writes ic.tsv");

  auto* sr = app.add_subcommand("sr", "Relatedness of two words");
  auto* sr_sense = app.add_subcommand("sr-sense", "Relatedness of two sense keys");
  std::vector<std::string> pair;
  bool explain = false;
  for (auto* c : {sr, sr_sense}) {
    c->add_option("items", pair, "Two words or sense keys")->required()->expected(2);
    c->add_flag("--explain", explain, "Also print the best senses and path");
  }

  auto* relate = app.add_subcommand("relate", "Relatedness of two texts");
  bool text = false;
  relate->add_option("inputs", pair, "Two files, or two strings with --text")->required()->expected(2);
  relate->add_flag("--text", text, "Treat the inputs as literal texts");
  relate->add_flag("--explain", explain, "Also print directional scores and term matches");

  auto* pre = app.add_subcommand("precompute", "Build a pair cache");
  std::optional<std::string> seeds;
  std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();
  std::string cache_out;
  pre->add_option("--seeds", seeds, "Terms or sense keys, one per line; every sense when omitted");
  pre->add_option("--budget", budget, "Maximum number of pairs to compute")->check(CLI::PositiveNumber);
  pre->add_option("--out", cache_out, "Output cache file")->required();

  auto* verify = app.add_subcommand("verify-cache", "Recompute a random sample of cached pairs");
  std::string verify_path;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  verify->add_option("cache", verify_path, "Cache file")->required();
  verify->add_option("--samples", samples, "Number of records to check");
  verify->add_option("--seed", seed, "Sampling seed");

  app.add_subcommand("weights", "Print the effective edge weights");

  auto* eval = app.add_subcommand("eval", "Run an evaluation task");
  EvalArgs eargs;
  eval->add_option("task", eargs.task, "Task")
      ->required()
      ->check(CLI::IsMember({"wordsim", "synonym", "sat", "sentence", "paraphrase"}));
  eval->add_option("dataset", eargs.dataset, "Dataset TSV")->required();
  eval->add_option("--tune", eargs.tune, "Paraphrase pairs for threshold tuning");
  eval->add_option("--objective", eargs.objective, "Tuning objective")->check(CLI::IsMember({"accuracy", "f1"}));
  eval->add_option("--analogy-mode", eargs.analogy_mode, "SAT score")->check(CLI::IsMember({"s", "s1", "s2"}));

  for (auto* c : app.get_subcommands({})) c->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  cfg.mode = *parse_measure(mode);
  cfg.format = format == "structured" ? OutputFormat::structured : OutputFormat::tsv;
  if (threshold) cfg.threshold = *threshold;

  try {
    if (import->parsed()) {
      auto r = import_wordnet(dict_dir, out_dir, ic_counts);
      fmt::print(out, "senses\t{}\nlemmas\t{}\nedges\t{}\n", r.senses, r.lemma_rows, r.edges);
      if (ic_counts) fmt::print(out, "ic\t{}\n", r.ic_rows);
      return kExitOk;
    }
    if (app.got_subcommand("weights")) {
      out << dump_weights(cfg.weights ? load_weight_overrides(*cfg.weights) : WeightConfig::defaults());
      return kExitOk;
    }
    if (threshold && !(eval->parsed() && eargs.task == "paraphrase"))
      throw UsageError("--threshold only applies to eval paraphrase");

    Session session(cfg, err);
    if (sr->parsed()) return cmd_sr(session, pair[0], pair[1], explain, out);
    if (sr_sense->parsed()) return cmd_sr_sense(session, pair[0], pair[1], explain, out);
    if (relate->parsed()) return cmd_relate(session, pair, text, explain, out, err);
    if (pre->parsed()) return cmd_precompute(session, seeds, budget, cache_out, out, err);
    if (verify->parsed()) return cmd_verify(session, verify_path, samples, seed, out);
    if (eval->parsed()) return cmd_eval(session, eargs, out);
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace semrel
