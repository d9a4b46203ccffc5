#include "semrel/textrel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "semrel/error.hpp"
#include "tsv.hpp"

namespace semrel {
namespace {

// Keep in sync with data/stopwords.txt.
constexpr std::string_view kStopwords[] = {
    "a",        "about",   "above",      "after",    "again",    "against",  "all",     "am",      "an",
    "and",      "any",     "are",        "as",       "at",       "be",       "because", "been",    "before",
    "being",    "below",   "between",    "both",     "but",      "by",       "can",     "could",   "did",
    "do",       "does",    "doing",      "down",     "during",   "each",     "few",     "for",     "from",
    "further",  "had",     "has",        "have",     "having",   "he",       "her",     "here",    "hers",
    "herself",  "him",     "himself",    "his",      "how",      "i",        "if",      "in",      "into",
    "is",       "it",      "its",        "itself",   "just",     "me",       "more",    "most",    "my",
    "myself",   "no",      "nor",        "not",      "now",      "of",       "off",     "on",      "once",
    "only",     "or",      "other",      "ought",    "our",      "ours",     "ourselves", "out",   "over",
    "own",      "same",    "she",        "should",   "so",       "some",     "such",    "than",    "that",
    "the",      "their",   "theirs",     "them",     "themselves", "then",   "there",   "these",   "they",
    "this",     "those",   "through",    "to",       "too",      "under",    "until",   "up",      "very",
    "was",      "we",      "were",       "what",     "when",     "where",    "which",   "while",   "who",
    "whom",     "why",     "will",       "with",     "would",    "you",      "your",    "yours",   "yourself",
    "yourselves", "s",     "t",          "d",        "ll",       "m",        "re",      "ve",
};

bool word_char(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

}  // namespace

const StopwordSet& default_stopwords() {
  static const StopwordSet set = [] {
    StopwordSet s;
    for (auto w : kStopwords) s.emplace(w);
    return s;
  }();
  return set;
}

StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  StopwordSet out;
  std::string line;
  while (std::getline(in, line)) {
    auto w = detail::trim(line);
    if (w.empty() || w.front() == '#') continue;
    std::string lower(w);
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.insert(std::move(lower));
  }
  return out;
}

std::vector<std::string> TokenizedText::distinct_terms() const {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& t : terms)
    if (seen.insert(t).second) out.push_back(t);
  return out;
}

int TokenizedText::frequency(const std::string& term) const {
  auto it = tf.find(term);
  return it == tf.end() ? 0 : it->second;
}

TokenizedText preprocess(std::string_view raw, const StopwordSet& stopwords, std::string source_id) {
  TokenizedText out;
  out.source_id = std::move(source_id);
  std::string cur;
  auto flush = [&] {
    if (!cur.empty() && !stopwords.contains(cur)) {
      ++out.tf[cur];
      out.terms.push_back(cur);
    }
    cur.clear();
  };
  for (char ch : raw) {
    auto c = static_cast<unsigned char>(ch);
    if (word_char(c))
      cur += static_cast<char>(c < 0x80 ? std::tolower(c) : c);
    else
      flush();
  }
  flush();
  return out;
}

void CorpusStats::add(const TokenizedText& doc) {
  ++documents;
  for (const auto& [term, count] : doc.tf) ++df[term];
}

std::size_t CorpusStats::document_frequency(const std::string& term) const {
  auto it = df.find(term);
  return it == df.end() ? 0 : it->second;
}

CorpusStats CorpusStats::from_texts(std::span<const TokenizedText> docs) {
  CorpusStats c;
  for (const auto& d : docs) c.add(d);
  return c;
}

CorpusStats load_df_table(const std::string& path) {
  CorpusStats c;
  bool have_n = false;
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = detail::split(line, '\t');
    if (f.size() != 2) throw DataError(path, line_no, "expected term<TAB>df");
    if (f[0] == "#N") {
      c.documents = detail::parse_int<std::size_t>(f[1], path, line_no);
      have_n = true;
      continue;
    }
    if (f[0].starts_with('#')) continue;
    c.df[std::string(f[0])] = detail::parse_int<std::size_t>(f[1], path, line_no);
  }
  if (!have_n) throw DataError(path + ": missing #N header row");
  for (const auto& [term, df] : c.df)
    if (df > c.documents) throw DataError(path + ": df of '" + term + "' exceeds N");
  return c;
}

double tf_idf(const std::string& term, const TokenizedText& doc, const CorpusStats& corpus) {
  int tf = doc.frequency(term);
  if (tf == 0) throw std::invalid_argument("term '" + term + "' not in document");
  double n = static_cast<double>(corpus.documents);
  double df = static_cast<double>(corpus.document_frequency(term));
  return tf * std::log(1.0 + n / (1.0 + df));
}

double lexical_relevance(double x, double y) {
  if (x + y == 0.0) return 0.0;
  return 2.0 * x * y / (x + y);
}

double lambda(const std::string& a, const TokenizedText& A, const std::string& b, const TokenizedText& B,
              const CorpusStats& corpus) {
  return lexical_relevance(tf_idf(a, A, corpus), tf_idf(b, B, corpus));
}

std::vector<WeightedTerm> weigh(const TokenizedText& doc, const CorpusStats& corpus) {
  std::vector<WeightedTerm> out;
  for (auto& t : doc.distinct_terms()) {
    double w = tf_idf(t, doc, corpus);
    out.push_back({std::move(t), w});
  }
  return out;
}

BestMatch best_match(const WeightedTerm& a, std::span<const WeightedTerm> to, const TermScoreFn& sr) {
  if (to.empty()) throw std::invalid_argument("best match against an empty text");
  BestMatch best;
  for (std::size_t j = 0; j < to.size(); ++j) {
    double lam = lexical_relevance(a.weight, to[j].weight);
    double rel = sr(a.term, to[j].term);
    double score = lam * rel;
    if (j == 0 || score > best.score) best = {j, lam, rel, score};
  }
  return best;
}

DirectionalScore zeta(std::span<const WeightedTerm> from, std::span<const WeightedTerm> to, const TermScoreFn& sr) {
  if (from.empty()) throw std::invalid_argument("zeta of an empty text");
  DirectionalScore out;
  if (to.empty()) return out;
  double sum = 0.0;
  for (const auto& a : from) {
    auto m = best_match(a, to, sr);
    sum += m.score;
    out.matches.push_back({a.term, to[m.partner].term, m.lambda, m.sr, m.score});
  }
  out.zeta = sum / static_cast<double>(from.size());
  return out;
}

TextPairScore omiotis(std::span<const WeightedTerm> a, std::span<const WeightedTerm> b, const TermScoreFn& sr) {
  TextPairScore out;
  if (a.empty() || b.empty()) {
    out.empty_input = true;
    return out;
  }
  // Term relatedness is symmetric; evaluate each (a, b) pair once.
  std::vector<double> table(a.size() * b.size());
  std::unordered_map<std::string, std::size_t> a_index, b_index;
  for (std::size_t i = 0; i < a.size(); ++i) a_index.emplace(a[i].term, i);
  for (std::size_t j = 0; j < b.size(); ++j) b_index.emplace(b[j].term, j);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) table[i * b.size() + j] = sr(a[i].term, b[j].term);

  auto ab = [&](const std::string& x, const std::string& y) { return table[a_index.at(x) * b.size() + b_index.at(y)]; };
  auto ba = [&](const std::string& y, const std::string& x) { return table[a_index.at(x) * b.size() + b_index.at(y)]; };

  auto forward = zeta(a, b, ab);
  auto backward = zeta(b, a, ba);
  out.zeta_ab = forward.zeta;
  out.zeta_ba = backward.zeta;
  out.matches_ab = std::move(forward.matches);
  out.matches_ba = std::move(backward.matches);
  out.omiotis = (out.zeta_ab + out.zeta_ba) / 2.0;
  return out;
}

TextRelatedness::TextRelatedness(const Thesaurus& graph, OmiotisConfig config)
    : graph_(&graph), config_(std::move(config)) {
  if (config_.simple) {
    auto simple = SearchOptions::without_cross_pos(graph);
    for (std::size_t i = 0; i < kRelationCount; ++i) config_.term.search.excluded[i] |= simple.excluded[i];
  }
}

TokenizedText TextRelatedness::tokenize(std::string_view raw, std::string source_id) const {
  return preprocess(raw, config_.stopwords ? *config_.stopwords : default_stopwords(), std::move(source_id));
}

double TextRelatedness::term_relatedness(const std::string& t1, const std::string& t2) const {
  return sr_terms(t1, t2, *graph_, config_.term).value;
}

TextPairScore TextRelatedness::score(const TokenizedText& a, const TokenizedText& b, const CorpusStats& corpus) const {
  auto wa = weigh(a, corpus);
  auto wb = weigh(b, corpus);
  SearchPool pool(*graph_, config_.term.mode, config_.term.search);
  TermOptions options = config_.term;
  options.pool = &pool;
  return omiotis(wa, wb, [&](const std::string& x, const std::string& y) {
    return sr_terms(x, y, *graph_, options).value;
  });
}

TextPairScore TextRelatedness::score(std::string_view a, std::string_view b) const {
  std::vector<TokenizedText> docs{tokenize(a, "A"), tokenize(b, "B")};
  auto corpus = CorpusStats::from_texts(docs);
  return score(docs[0], docs[1], corpus);
}

}  // namespace semrel
