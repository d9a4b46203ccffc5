#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "semrel/stats.hpp"
#include "semrel/textrel.hpp"

namespace semrel {

// ---------------------------------------------------------------- datasets

struct WordPair {
  std::string w1;
  std::string w2;
  double gold;
};

struct ChoiceQuestion {
  std::string stem;
  std::vector<std::string> candidates;
  std::size_t gold;
};

using WordPairTerms = std::pair<std::string, std::string>;

struct AnalogyQuestion {
  WordPairTerms stem;
  std::vector<WordPairTerms> candidates;
  std::size_t gold;
};

struct LabeledTextPair {
  double label;  // 0/1 for paraphrase, real for similarity
  std::string a;
  std::string b;
};

/// `word1<TAB>word2<TAB>gold_score`
std::vector<WordPair> load_word_pairs(const std::string& path);
/// `stem<TAB>cand1;cand2;...<TAB>gold_index`
std::vector<ChoiceQuestion> load_choice_questions(const std::string& path);
/// `w1<TAB>w2<TAB>w1k:w2k;...<TAB>gold_index`
std::vector<AnalogyQuestion> load_analogy_questions(const std::string& path);
/// `label<TAB>textA<TAB>textB`
std::vector<LabeledTextPair> load_text_pairs(const std::string& path);

// ------------------------------------------------------------- protocols

using TermScorer = std::function<double(const std::string&, const std::string&)>;

struct Choice {
  std::size_t index = 0;
  bool tie = false;  // another candidate reached the same maximum
  std::vector<double> scores;
};

/// argmax with ties resolved to the lowest index.
Choice argmax_choice(std::vector<double> scores);

/// Candidate most related to the stem. Needs at least two candidates.
Choice synonym_choice(const std::string& stem, std::span<const std::string> candidates, const TermScorer& sr);

struct AnalogyScores {
  double s1;  // horizontal: 1 - |SR(w1,w2) - SR(w1k,w2k)|
  double s2;  // vertical:   1 - |SR(w1,w1k) - SR(w2,w2k)|
  double s;   // (s1 + s2) / 2
};

AnalogyScores combine_analogy(double s1, double s2);
AnalogyScores sat_scores(const WordPairTerms& stem, const WordPairTerms& candidate, const TermScorer& sr);

enum class AnalogyMode { s, s1, s2 };

/// Per-question inputs for an external learner: min, max and max - min of
/// the s1 values over the candidates, then the same for s2.
struct AnalogyFeatures {
  double min_s1, max_s1, diff_s1;
  double min_s2, max_s2, diff_s2;
};

struct AnalogyAnswer {
  Choice by_s;
  Choice by_s1;
  Choice by_s2;
  std::vector<AnalogyScores> scores;
  AnalogyFeatures features;

  const Choice& chosen(AnalogyMode mode) const;
};

AnalogyAnswer sat_answer(const AnalogyQuestion& question, const TermScorer& sr);

/// Strictly greater than the threshold.
bool paraphrase_decide(double score, double threshold);

struct ClassificationMetrics {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  bool precision_undefined = false;  // no positive predictions
  bool recall_undefined = false;     // no positive labels
};

ClassificationMetrics classification_metrics(std::span<const bool> predictions, std::span<const bool> labels);

enum class TuneObjective { accuracy, f1 };

/// Exhaustive search over thresholds k/200, k = 0..200; the lowest optimal
/// threshold wins. Needs at least one positive and one negative label.
double tune_threshold(std::span<const double> scores, std::span<const bool> labels, TuneObjective objective);

// ------------------------------------------------------------ harnesses

/// Metrics plus one record per item, keyed by item index.
struct EvalReport {
  std::string task;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<nlohmann::ordered_json> items;

  /// Header line, one line per item, then a `# summary` line.
  std::string to_tsv() const;
  /// One JSON object per line: items, then {"summary": {...}}.
  std::string to_structured() const;
};

/// Runs fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

EvalReport evaluate_word_similarity(std::span<const WordPair> pairs, const TermScorer& sr, unsigned threads = 1);
EvalReport evaluate_synonyms(std::span<const ChoiceQuestion> questions, const TermScorer& sr, unsigned threads = 1);
EvalReport evaluate_analogies(std::span<const AnalogyQuestion> questions, const TermScorer& sr,
                              AnalogyMode mode = AnalogyMode::s, unsigned threads = 1);

/// Scores every pair; the corpus is the dataset's own texts unless given.
std::vector<TextPairScore> score_text_pairs(std::span<const LabeledTextPair> pairs, const TextRelatedness& rel,
                                            const CorpusStats* corpus = nullptr, unsigned threads = 1);

EvalReport evaluate_sentence_similarity(std::span<const LabeledTextPair> pairs, const TextRelatedness& rel,
                                        const CorpusStats* corpus = nullptr, unsigned threads = 1);

struct ParaphraseOptions {
  double threshold = 0.2;
  /// When set, the threshold is tuned on these pairs instead.
  std::span<const LabeledTextPair> tuning;
  TuneObjective objective = TuneObjective::accuracy;
};

EvalReport evaluate_paraphrase(std::span<const LabeledTextPair> pairs, const TextRelatedness& rel,
                               const ParaphraseOptions& options, const CorpusStats* corpus = nullptr,
                               unsigned threads = 1);

}  // namespace semrel
