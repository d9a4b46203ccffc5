#include "semrel/tasks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "semrel/error.hpp"
#include "tsv.hpp"

namespace semrel {
namespace {

using nlohmann::ordered_json;

std::size_t parse_gold_index(std::string_view s, std::size_t candidates, const std::string& path, std::size_t line) {
  auto g = detail::parse_int<std::size_t>(s, path, line);
  if (g >= candidates) throw DataError(path, line, "gold index out of range");
  return g;
}

std::string format_scalar(const ordered_json& v) {
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (!std::isfinite(d)) return "nan";
    return fmt::format("{:.6f}", d);
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ';';
      out += format_scalar(v[i]);
    }
    return out;
  }
  return v.dump();
}

std::string write_structured(const ordered_json& v) {
  if (v.is_number_float()) {
    double d = v.get<double>();
    return std::isfinite(d) ? fmt::format("{:.6f}", d) : "null";
  }
  if (v.is_object()) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, x] : v.items()) {
      if (!first) out += ',';
      first = false;
      out += ordered_json(k).dump() + ':' + write_structured(x);
    }
    return out + '}';
  }
  if (v.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      out += write_structured(v[i]);
    }
    return out + ']';
  }
  return v.dump();
}

ordered_json correlation_summary(std::span<const double> predicted, std::span<const double> gold) {
  ordered_json s;
  s["n"] = predicted.size();
  auto c = rank_correlations(predicted, gold);
  s["spearman"] = c.spearman;
  s["pearson"] = c.pearson;
  return s;
}

bool is_positive(double label) { return label != 0.0; }

}  // namespace

std::vector<WordPair> load_word_pairs(const std::string& path) {
  std::vector<WordPair> out;
  detail::for_each_row(path, [&](const auto& f, std::size_t line) {
    if (f.size() != 3) throw DataError(path, line, "expected word1<TAB>word2<TAB>gold_score");
    double g = detail::parse_double(f[2], path, line);
    if (!std::isfinite(g)) throw DataError(path, line, "gold score not finite");
    out.push_back({std::string(detail::trim(f[0])), std::string(detail::trim(f[1])), g});
  });
  return out;
}

std::vector<ChoiceQuestion> load_choice_questions(const std::string& path) {
  std::vector<ChoiceQuestion> out;
  detail::for_each_row(path, [&](const auto& f, std::size_t line) {
    if (f.size() != 3) throw DataError(path, line, "expected stem<TAB>cand1;cand2;...<TAB>gold_index");
    ChoiceQuestion q;
    q.stem = std::string(detail::trim(f[0]));
    for (auto c : detail::split(f[1], ';')) q.candidates.emplace_back(detail::trim(c));
    if (q.candidates.size() < 2) throw DataError(path, line, "need at least two candidates");
    q.gold = parse_gold_index(f[2], q.candidates.size(), path, line);
    out.push_back(std::move(q));
  });
  return out;
}

std::vector<AnalogyQuestion> load_analogy_questions(const std::string& path) {
  std::vector<AnalogyQuestion> out;
  detail::for_each_row(path, [&](const auto& f, std::size_t line) {
    if (f.size() != 4) throw DataError(path, line, "expected w1<TAB>w2<TAB>w1k:w2k;...<TAB>gold_index");
    AnalogyQuestion q;
    q.stem = {std::string(detail::trim(f[0])), std::string(detail::trim(f[1]))};
    for (auto c : detail::split(f[2], ';')) {
      auto parts = detail::split(c, ':');
      if (parts.size() != 2) throw DataError(path, line, "candidate pair must be w1k:w2k");
      q.candidates.emplace_back(std::string(detail::trim(parts[0])), std::string(detail::trim(parts[1])));
    }
    if (q.candidates.empty()) throw DataError(path, line, "no candidate pairs");
    q.gold = parse_gold_index(f[3], q.candidates.size(), path, line);
    out.push_back(std::move(q));
  });
  return out;
}

std::vector<LabeledTextPair> load_text_pairs(const std::string& path) {
  std::vector<LabeledTextPair> out;
  detail::for_each_row(path, [&](const auto& f, std::size_t line) {
    if (f.size() != 3) throw DataError(path, line, "expected label<TAB>textA<TAB>textB");
    double label = detail::parse_double(f[0], path, line);
    if (!std::isfinite(label)) throw DataError(path, line, "label not finite");
    out.push_back({label, std::string(f[1]), std::string(f[2])});
  });
  return out;
}

Choice argmax_choice(std::vector<double> scores) {
  Choice c;
  c.scores = std::move(scores);
  for (std::size_t i = 1; i < c.scores.size(); ++i)
    if (c.scores[i] > c.scores[c.index]) c.index = i;
  for (std::size_t i = 0; i < c.scores.size(); ++i)
    if (i != c.index && c.scores[i] == c.scores[c.index]) c.tie = true;
  return c;
}

Choice synonym_choice(const std::string& stem, std::span<const std::string> candidates, const TermScorer& sr) {
  if (candidates.size() < 2) throw std::invalid_argument("synonym question needs at least two candidates");
  std::vector<double> scores;
  for (const auto& c : candidates) scores.push_back(sr(stem, c));
  return argmax_choice(std::move(scores));
}

AnalogyScores combine_analogy(double s1, double s2) { return {s1, s2, (s1 + s2) / 2.0}; }

AnalogyScores sat_scores(const WordPairTerms& stem, const WordPairTerms& cand, const TermScorer& sr) {
  const auto& [w1, w2] = stem;
  const auto& [w1k, w2k] = cand;
  double s1 = 1.0 - std::abs(sr(w1, w2) - sr(w1k, w2k));
  double s2 = 1.0 - std::abs(sr(w1, w1k) - sr(w2, w2k));
  return combine_analogy(s1, s2);
}

const Choice& AnalogyAnswer::chosen(AnalogyMode mode) const {
  switch (mode) {
    case AnalogyMode::s1: return by_s1;
    case AnalogyMode::s2: return by_s2;
    default: return by_s;
  }
}

AnalogyAnswer sat_answer(const AnalogyQuestion& q, const TermScorer& sr) {
  if (q.candidates.empty()) throw std::invalid_argument("analogy question without candidates");
  AnalogyAnswer a;
  std::vector<double> s, s1, s2;
  for (const auto& c : q.candidates) {
    auto sc = sat_scores(q.stem, c, sr);
    a.scores.push_back(sc);
    s.push_back(sc.s);
    s1.push_back(sc.s1);
    s2.push_back(sc.s2);
  }
  auto [min1, max1] = std::minmax_element(s1.begin(), s1.end());
  auto [min2, max2] = std::minmax_element(s2.begin(), s2.end());
  a.features = {*min1, *max1, *max1 - *min1, *min2, *max2, *max2 - *min2};
  a.by_s = argmax_choice(std::move(s));
  a.by_s1 = argmax_choice(std::move(s1));
  a.by_s2 = argmax_choice(std::move(s2));
  return a;
}

bool paraphrase_decide(double score, double threshold) { return score > threshold; }

ClassificationMetrics classification_metrics(std::span<const bool> predictions, std::span<const bool> labels) {
  if (predictions.size() != labels.size()) throw std::invalid_argument("predictions and labels differ in length");
  ClassificationMetrics m;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (predictions[i] && labels[i]) ++m.tp;
    else if (predictions[i]) ++m.fp;
    else if (labels[i]) ++m.fn;
    else ++m.tn;
  }
  const auto n = static_cast<double>(labels.size());
  m.accuracy = n > 0 ? static_cast<double>(m.tp + m.tn) / n : 0.0;
  m.precision_undefined = m.tp + m.fp == 0;
  m.recall_undefined = m.tp + m.fn == 0;
  m.precision = m.precision_undefined ? 0.0 : static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
  m.recall = m.recall_undefined ? 0.0 : static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
  m.f_measure = m.precision + m.recall > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  return m;
}

double tune_threshold(std::span<const double> scores, std::span<const bool> labels, TuneObjective objective) {
  if (scores.size() != labels.size()) throw std::invalid_argument("scores and labels differ in length");
  const auto positives = std::count(labels.begin(), labels.end(), true);
  if (positives == 0 || positives == static_cast<std::ptrdiff_t>(labels.size()))
    throw std::invalid_argument("threshold tuning needs both positive and negative examples");

  double best_t = 0.0, best_v = -1.0;
  auto pred = std::make_unique<bool[]>(scores.size());
  for (int k = 0; k <= 200; ++k) {
    const double t = k / 200.0;
    for (std::size_t i = 0; i < scores.size(); ++i) pred[i] = paraphrase_decide(scores[i], t);
    auto m = classification_metrics(std::span<const bool>(pred.get(), scores.size()), labels);
    const double v = objective == TuneObjective::accuracy ? m.accuracy : m.f_measure;
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  }
  return best_t;
}

std::string EvalReport::to_tsv() const {
  std::string out;
  if (!items.empty()) {
    bool first = true;
    for (const auto& [k, v] : items.front().items()) {
      out += first ? "" : "\t";
      out += k;
      first = false;
    }
    out += '\n';
    for (const auto& item : items) {
      first = true;
      for (const auto& [k, v] : item.items()) {
        out += first ? "" : "\t";
        out += format_scalar(v);
        first = false;
      }
      out += '\n';
    }
  }
  out += "# summary\ttask=" + task;
  for (const auto& [k, v] : summary.items()) out += "\t" + k + "=" + format_scalar(v);
  out += '\n';
  return out;
}

std::string EvalReport::to_structured() const {
  std::string out;
  for (const auto& item : items) out += write_structured(item) + '\n';
  ordered_json s;
  s["task"] = task;
  s["summary"] = summary;
  out += write_structured(s) + '\n';
  return out;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t)
    workers.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  workers.clear();
  if (error) std::rethrow_exception(error);
}

EvalReport evaluate_word_similarity(std::span<const WordPair> pairs, const TermScorer& sr, unsigned threads) {
  std::vector<double> pred(pairs.size()), gold(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) { pred[i] = sr(pairs[i].w1, pairs[i].w2); });
  EvalReport r;
  r.task = "wordsim";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    gold[i] = pairs[i].gold;
    ordered_json item;
    item["index"] = i;
    item["word1"] = pairs[i].w1;
    item["word2"] = pairs[i].w2;
    item["gold"] = pairs[i].gold;
    item["score"] = pred[i];
    r.items.push_back(std::move(item));
  }
  r.summary = correlation_summary(pred, gold);
  return r;
}

EvalReport evaluate_synonyms(std::span<const ChoiceQuestion> questions, const TermScorer& sr, unsigned threads) {
  std::vector<Choice> choices(questions.size());
  parallel_for(questions.size(), threads,
               [&](std::size_t i) { choices[i] = synonym_choice(questions[i].stem, questions[i].candidates, sr); });
  EvalReport r;
  r.task = "synonym";
  std::size_t correct = 0, ties = 0;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    const auto& c = choices[i];
    correct += c.index == questions[i].gold;
    ties += c.tie;
    ordered_json item;
    item["index"] = i;
    item["stem"] = questions[i].stem;
    item["chosen"] = c.index;
    item["gold"] = questions[i].gold;
    item["correct"] = c.index == questions[i].gold;
    item["tie"] = c.tie;
    item["scores"] = c.scores;
    r.items.push_back(std::move(item));
  }
  r.summary["n"] = questions.size();
  r.summary["correct"] = correct;
  r.summary["accuracy"] = questions.empty() ? 0.0 : static_cast<double>(correct) / questions.size();
  r.summary["ties"] = ties;
  return r;
}

EvalReport evaluate_analogies(std::span<const AnalogyQuestion> questions, const TermScorer& sr, AnalogyMode mode,
                              unsigned threads) {
  std::vector<AnalogyAnswer> answers(questions.size());
  parallel_for(questions.size(), threads, [&](std::size_t i) { answers[i] = sat_answer(questions[i], sr); });
  EvalReport r;
  r.task = "sat";
  std::size_t correct = 0, c_s = 0, c_s1 = 0, c_s2 = 0, c_ub = 0, ties = 0;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    const auto& a = answers[i];
    const auto gold = questions[i].gold;
    const auto& chosen = a.chosen(mode);
    correct += chosen.index == gold;
    ties += chosen.tie;
    c_s += a.by_s.index == gold;
    c_s1 += a.by_s1.index == gold;
    c_s2 += a.by_s2.index == gold;
    c_ub += a.by_s1.index == gold || a.by_s2.index == gold;
    ordered_json item;
    item["index"] = i;
    item["chosen"] = chosen.index;
    item["gold"] = gold;
    item["correct"] = chosen.index == gold;
    item["tie"] = chosen.tie;
    item["chosen_s"] = a.by_s.index;
    item["chosen_s1"] = a.by_s1.index;
    item["chosen_s2"] = a.by_s2.index;
    item["min_s1"] = a.features.min_s1;
    item["max_s1"] = a.features.max_s1;
    item["diff_s1"] = a.features.diff_s1;
    item["min_s2"] = a.features.min_s2;
    item["max_s2"] = a.features.max_s2;
    item["diff_s2"] = a.features.diff_s2;
    r.items.push_back(std::move(item));
  }
  const double n = questions.empty() ? 1.0 : static_cast<double>(questions.size());
  r.summary["n"] = questions.size();
  r.summary["mode"] = mode == AnalogyMode::s ? "s" : mode == AnalogyMode::s1 ? "s1" : "s2";
  r.summary["accuracy"] = correct / n;
  r.summary["accuracy_s"] = c_s / n;
  r.summary["accuracy_s1"] = c_s1 / n;
  r.summary["accuracy_s2"] = c_s2 / n;
  r.summary["accuracy_ub"] = c_ub / n;
  r.summary["ties"] = ties;
  return r;
}

std::vector<TextPairScore> score_text_pairs(std::span<const LabeledTextPair> pairs, const TextRelatedness& rel,
                                            const CorpusStats* corpus, unsigned threads) {
  std::vector<TokenizedText> docs;
  docs.reserve(pairs.size() * 2);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    docs.push_back(rel.tokenize(pairs[i].a, std::to_string(i) + "a"));
    docs.push_back(rel.tokenize(pairs[i].b, std::to_string(i) + "b"));
  }
  CorpusStats own;
  if (!corpus) {
    own = CorpusStats::from_texts(docs);
    corpus = &own;
  }
  std::vector<TextPairScore> out(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) { out[i] = rel.score(docs[2 * i], docs[2 * i + 1], *corpus); });
  return out;
}

EvalReport evaluate_sentence_similarity(std::span<const LabeledTextPair> pairs, const TextRelatedness& rel,
                                        const CorpusStats* corpus, unsigned threads) {
  auto scores = score_text_pairs(pairs, rel, corpus, threads);
  EvalReport r;
  r.task = "sentence";
  std::vector<double> pred, gold;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    pred.push_back(scores[i].omiotis);
    gold.push_back(pairs[i].label);
    ordered_json item;
    item["index"] = i;
    item["gold"] = pairs[i].label;
    item["omiotis"] = scores[i].omiotis;
    item["zeta_ab"] = scores[i].zeta_ab;
    item["zeta_ba"] = scores[i].zeta_ba;
    r.items.push_back(std::move(item));
  }
  r.summary = correlation_summary(pred, gold);
  return r;
}

EvalReport evaluate_paraphrase(std::span<const LabeledTextPair> pairs, const TextRelatedness& rel,
                               const ParaphraseOptions& options, const CorpusStats* corpus, unsigned threads) {
  auto check_binary = [](std::span<const LabeledTextPair> ps) {
    for (const auto& p : ps)
      if (p.label != 0.0 && p.label != 1.0) throw DataError("paraphrase labels must be 0 or 1");
  };
  check_binary(pairs);
  check_binary(options.tuning);

  double threshold = options.threshold;
  bool tuned = false;
  if (!options.tuning.empty()) {
    auto tscores = score_text_pairs(options.tuning, rel, corpus, threads);
    std::vector<double> s;
    auto l = std::make_unique<bool[]>(tscores.size());
    for (std::size_t i = 0; i < tscores.size(); ++i) {
      s.push_back(tscores[i].omiotis);
      l[i] = is_positive(options.tuning[i].label);
    }
    threshold = tune_threshold(s, std::span<const bool>(l.get(), tscores.size()), options.objective);
    tuned = true;
  }

  auto scores = score_text_pairs(pairs, rel, corpus, threads);
  auto pred = std::make_unique<bool[]>(pairs.size());
  auto gold = std::make_unique<bool[]>(pairs.size());
  EvalReport r;
  r.task = "paraphrase";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    pred[i] = paraphrase_decide(scores[i].omiotis, threshold);
    gold[i] = is_positive(pairs[i].label);
    ordered_json item;
    item["index"] = i;
    item["label"] = static_cast<int>(gold[i]);
    item["omiotis"] = scores[i].omiotis;
    item["predicted"] = static_cast<int>(pred[i]);
    r.items.push_back(std::move(item));
  }
  auto m = classification_metrics(std::span<const bool>(pred.get(), pairs.size()),
                                  std::span<const bool>(gold.get(), pairs.size()));
  r.summary["n"] = pairs.size();
  r.summary["threshold"] = threshold;
  r.summary["tuned"] = tuned;
  r.summary["accuracy"] = m.accuracy;
  r.summary["precision"] = m.precision;
  r.summary["recall"] = m.recall;
  r.summary["f_measure"] = m.f_measure;
  r.summary["tp"] = m.tp;
  r.summary["fp"] = m.fp;
  r.summary["tn"] = m.tn;
  r.summary["fn"] = m.fn;
  r.summary["precision_undefined"] = m.precision_undefined;
  r.summary["recall_undefined"] = m.recall_undefined;
  return r;
}

}  // namespace semrel
