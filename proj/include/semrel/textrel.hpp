#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "semrel/termrel.hpp"
#include "semrel/thesaurus.hpp"

namespace semrel {

using StopwordSet = std::unordered_set<std::string>;

/// Built-in English stopword list.
const StopwordSet& default_stopwords();
/// One word per line; blank lines and '#' comments ignored.
StopwordSet load_stopwords(const std::string& path);

struct TokenizedText {
  std::vector<std::string> terms;  // text order, repeats kept
  std::map<std::string, int> tf;
  std::string source_id;

  bool empty() const { return terms.empty(); }
  /// Distinct terms in order of first occurrence.
  std::vector<std::string> distinct_terms() const;
  int frequency(const std::string& term) const;
};

/// Lowercases, splits on runs of non-alphanumeric ASCII (bytes >= 0x80 count
/// as word characters), drops stopwords and counts frequencies.
TokenizedText preprocess(std::string_view raw, const StopwordSet& stopwords, std::string source_id = {});

/// Document frequencies over a collection of texts.
struct CorpusStats {
  std::size_t documents = 0;
  std::unordered_map<std::string, std::size_t> df;

  void add(const TokenizedText& doc);
  std::size_t document_frequency(const std::string& term) const;

  static CorpusStats from_texts(std::span<const TokenizedText> docs);
};

/// TSV `term<TAB>df` with a `#N<TAB><count>` header row.
CorpusStats load_df_table(const std::string& path);

/// tf * ln(1 + N / (1 + df)). Throws std::invalid_argument if the term is
/// not in the document.
double tf_idf(const std::string& term, const TokenizedText& doc, const CorpusStats& corpus);

/// Harmonic mean 2xy / (x + y) of two TF-IDF weights; 0 when x + y == 0.
double lexical_relevance(double x, double y);

double lambda(const std::string& a, const TokenizedText& A, const std::string& b, const TokenizedText& B,
              const CorpusStats& corpus);

struct WeightedTerm {
  std::string term;
  double weight;
};

/// Distinct terms of `doc` with their TF-IDF weights, in text order.
std::vector<WeightedTerm> weigh(const TokenizedText& doc, const CorpusStats& corpus);

using TermScoreFn = std::function<double(const std::string&, const std::string&)>;

struct BestMatch {
  std::size_t partner = 0;  // index into the target text
  double lambda = 0.0;
  double sr = 0.0;
  double score = 0.0;  // lambda * sr
};

/// argmax over the target terms of lambda * SR; the first term in text order
/// wins ties. Throws std::invalid_argument for an empty target.
BestMatch best_match(const WeightedTerm& a, std::span<const WeightedTerm> to, const TermScoreFn& sr);

struct MatchRecord {
  std::string term;
  std::string partner;
  double lambda;
  double sr;
  double product;
};

struct DirectionalScore {
  double zeta = 0.0;
  std::vector<MatchRecord> matches;
};

/// Mean over the distinct source terms of their best lambda * SR product
/// against `to`. 0 when `to` is empty; throws std::invalid_argument when
/// `from` is empty.
DirectionalScore zeta(std::span<const WeightedTerm> from, std::span<const WeightedTerm> to, const TermScoreFn& sr);

struct TextPairScore {
  double omiotis = 0.0;
  double zeta_ab = 0.0;
  double zeta_ba = 0.0;
  std::vector<MatchRecord> matches_ab;
  std::vector<MatchRecord> matches_ba;
  bool empty_input = false;  // at least one side had no terms left
};

/// Symmetric combination of both directions over weighted texts. Term
/// relatedness is evaluated once per distinct pair.
TextPairScore omiotis(std::span<const WeightedTerm> a, std::span<const WeightedTerm> b, const TermScoreFn& sr);

struct OmiotisConfig {
  TermOptions term;
  /// Leave out relation types that cross parts of speech.
  bool simple = false;
  const StopwordSet* stopwords = nullptr;  // default list when null
};

/// Text relatedness with a fixed thesaurus and configuration.
class TextRelatedness {
 public:
  TextRelatedness(const Thesaurus& graph, OmiotisConfig config = {});

  TokenizedText tokenize(std::string_view raw, std::string source_id = {}) const;

  /// Scores two tokenized texts against `corpus`.
  TextPairScore score(const TokenizedText& a, const TokenizedText& b, const CorpusStats& corpus) const;

  /// Scores two raw texts; the two texts form the corpus.
  TextPairScore score(std::string_view a, std::string_view b) const;

  double term_relatedness(const std::string& t1, const std::string& t2) const;

 private:
  const Thesaurus* graph_;
  OmiotisConfig config_;
};

}  // namespace semrel
