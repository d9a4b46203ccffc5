#include "semrel/thesaurus.hpp"

#include <algorithm>
#include <bit>
#include <tuple>
#include <cctype>
#include <deque>
#include <limits>
#include <stdexcept>

#include "semrel/error.hpp"
#include "tsv.hpp"

namespace semrel {
namespace {

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    auto p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  template <typename T>
  void value(T v) {
    bytes(&v, sizeof v);
  }
  std::uint64_t digest() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

DepthTable depths_from(std::span<const Sense> senses, std::span<const std::size_t> offsets,
                       std::span<const Edge> edges, std::span<const int> overrides) {
  const std::size_t n = senses.size();
  auto out_edges = [&](std::size_t s) { return edges.subspan(offsets[s], offsets[s + 1] - offsets[s]); };

  DepthTable table;
  table.depth.assign(n, 0);
  std::deque<SenseIndex> queue;
  for (std::size_t s = 0; s < n; ++s) {
    auto e = out_edges(s);
    bool has_parent = std::any_of(e.begin(), e.end(), [](const Edge& x) { return x.type == Relation::hypernym; });
    if (!has_parent) {
      table.depth[s] = 1;
      queue.push_back(static_cast<SenseIndex>(s));
    }
  }
  // Multi-source BFS down hyponym edges yields 1 + fewest hops to a root.
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    for (const Edge& e : out_edges(s)) {
      if (e.type != Relation::hyponym || table.depth[e.target] != 0) continue;
      table.depth[e.target] = table.depth[s] + 1;
      queue.push_back(e.target);
    }
  }
  // Senses caught in a hypernym cycle never reach a root.
  for (auto& d : table.depth)
    if (d == 0) d = 1;

  for (std::size_t s = 0; s < overrides.size() && s < n; ++s)
    if (overrides[s] > 0) table.depth[s] = overrides[s];

  for (std::size_t s = 0; s < n; ++s) {
    if (senses[s].pos != Pos::adverb || (s < overrides.size() && overrides[s] > 0)) continue;
    int best = std::numeric_limits<int>::max();
    for (const Edge& e : out_edges(s))
      if (e.type == Relation::derived && senses[e.target].pos == Pos::adjective)
        best = std::min(best, table.depth[e.target]);
    if (best != std::numeric_limits<int>::max()) table.depth[s] = best;
  }

  table.max_depth = 1;
  for (int d : table.depth) table.max_depth = std::max(table.max_depth, d);
  return table;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

struct SuffixRule {
  std::string_view suffix;
  std::string_view replacement;
  bool undouble;  // "stopped" -> "stopp" -> "stop"
};

// Noun, then verb, then adjective rules.
constexpr SuffixRule kRules[] = {
    {"ies", "y", false}, {"es", "", false},  {"s", "", false},
    {"ed", "", false},   {"ed", "e", false}, {"ed", "", true},
    {"ing", "", false},  {"ing", "e", false}, {"ing", "", true},
    {"er", "", false},   {"er", "e", false}, {"er", "", true},
    {"est", "", false},  {"est", "e", false}, {"est", "", true},
};

}  // namespace

std::string_view name(Pos p) {
  switch (p) {
    case Pos::noun: return "noun";
    case Pos::verb: return "verb";
    case Pos::adjective: return "adjective";
    case Pos::adverb: return "adverb";
  }
  return "?";
}

std::optional<Pos> parse_pos(std::string_view s) {
  if (s == "noun" || s == "n") return Pos::noun;
  if (s == "verb" || s == "v") return Pos::verb;
  if (s == "adjective" || s == "adj" || s == "a" || s == "s") return Pos::adjective;
  if (s == "adverb" || s == "adv" || s == "r") return Pos::adverb;
  return std::nullopt;
}

std::optional<SenseIndex> Thesaurus::find(std::string_view key) const {
  auto it = key_index_.find(std::string(key));
  if (it == key_index_.end()) return std::nullopt;
  return it->second;
}

std::span<const SenseIndex> Thesaurus::lemma_senses(std::string_view lemma) const {
  auto it = lexicon_.find(std::string(lemma));
  if (it == lexicon_.end()) return {};
  return it->second;
}

bool Thesaurus::has_lemma(std::string_view lemma) const { return lexicon_.contains(std::string(lemma)); }

SenseIndex ThesaurusBuilder::add_sense(const std::string& key, Pos pos) {
  if (auto it = key_index_.find(key); it != key_index_.end()) {
    if (senses_[it->second].pos != pos) throw std::invalid_argument("sense " + key + " declared with two POS");
    return it->second;
  }
  auto idx = static_cast<SenseIndex>(senses_.size());
  senses_.push_back({key, pos});
  key_index_.emplace(key, idx);
  return idx;
}

void ThesaurusBuilder::add_lemma(std::string_view lemma, SenseIndex s) {
  if (s >= senses_.size()) throw std::out_of_range("lemma references unknown sense");
  lexicon_[normalize_lemma(lemma)].push_back(s);
}

void ThesaurusBuilder::add_edge(SenseIndex from, Relation type, SenseIndex to) {
  if (from >= senses_.size() || to >= senses_.size()) throw std::out_of_range("edge references unknown sense");
  if (from == to) return;
  edges_.push_back({from, {type, to}});
}

void ThesaurusBuilder::override_depth(SenseIndex s, int depth) {
  if (s >= senses_.size()) throw std::out_of_range("depth override for unknown sense");
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  depth_overrides_.emplace_back(s, depth);
}

std::optional<SenseIndex> ThesaurusBuilder::find(const std::string& key) const {
  auto it = key_index_.find(key);
  if (it == key_index_.end()) return std::nullopt;
  return it->second;
}

Thesaurus ThesaurusBuilder::build(WeightConfig weights) && {
  Thesaurus g;
  const std::size_t n = senses_.size();

  std::vector<std::pair<SenseIndex, Edge>> all;
  all.reserve(edges_.size() * 2);
  for (const auto& [from, e] : edges_) {
    all.push_back({from, e});
    all.push_back({e.target, {inverse(e.type), from}});
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first, a.second.target, a.second.type) < std::tie(b.first, b.second.target, b.second.type);
  });
  all.erase(std::unique(all.begin(), all.end()), all.end());

  g.offsets_.assign(n + 1, 0);
  g.edges_.reserve(all.size());
  for (const auto& [from, e] : all) {
    ++g.offsets_[from + 1];
    g.edges_.push_back(e);
    if (senses_[from].pos != senses_[e.target].pos) g.crosses_pos_[static_cast<std::size_t>(e.type)] = true;
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];

  std::vector<int> overrides(n, 0);
  for (auto [s, d] : depth_overrides_) overrides[s] = d;
  g.depths_ = depths_from(senses_, g.offsets_, g.edges_, overrides);

  for (auto& [lemma, list] : lexicon_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  g.weights_ = weights;
  g.senses_ = std::move(senses_);
  g.key_index_ = std::move(key_index_);
  g.lexicon_ = std::move(lexicon_);

  Fnv1a h;
  h.value<std::uint64_t>(n);
  for (const auto& s : g.senses_) {
    h.bytes(s.key.data(), s.key.size());
    h.value<std::uint8_t>(static_cast<std::uint8_t>(s.pos));
  }
  for (std::size_t s = 0; s < n; ++s)
    for (const Edge& e : g.edges(static_cast<SenseIndex>(s))) {
      h.value<std::uint32_t>(static_cast<std::uint32_t>(s));
      h.value<std::uint8_t>(static_cast<std::uint8_t>(e.type));
      h.value<std::uint32_t>(e.target);
    }
  for (std::size_t c = 0; c < kCategoryCount; ++c) h.value(std::bit_cast<std::uint64_t>(weights.category_weight(c)));
  for (int d : g.depths_.depth) h.value<std::int32_t>(d);
  g.fingerprint_ = h.digest();
  return g;
}

Thesaurus load_thesaurus(const ThesaurusFiles& files) {
  ThesaurusBuilder b;
  detail::for_each_row(files.lexicon, [&](const auto& f, std::size_t line) {
    if (f.size() != 3) throw DataError(files.lexicon, line, "expected lemma<TAB>pos<TAB>sense_key");
    auto pos = parse_pos(detail::trim(f[1]));
    if (!pos) throw DataError(files.lexicon, line, "unknown POS '" + std::string(f[1]) + "'");
    auto key = std::string(detail::trim(f[2]));
    auto lemma = detail::trim(f[0]);
    if (key.empty() || lemma.empty()) throw DataError(files.lexicon, line, "empty lemma or sense key");
    SenseIndex s;
    try {
      s = b.add_sense(key, *pos);
    } catch (const std::invalid_argument& e) {
      throw DataError(files.lexicon, line, e.what());
    }
    b.add_lemma(lemma, s);
  });

  auto lookup = [&](std::string_view key, const std::string& file, std::size_t line) {
    auto s = b.find(std::string(detail::trim(key)));
    if (!s) throw DataError(file, line, "dangling sense reference '" + std::string(key) + "'");
    return *s;
  };

  detail::for_each_row(files.edges, [&](const auto& f, std::size_t line) {
    if (f.size() != 3) throw DataError(files.edges, line, "expected source<TAB>edge_type<TAB>target");
    auto rel = parse_relation(detail::trim(f[1]));
    if (!rel) throw DataError(files.edges, line, "unknown edge type '" + std::string(f[1]) + "'");
    b.add_edge(lookup(f[0], files.edges, line), *rel, lookup(f[2], files.edges, line));
  });

  if (files.depths) {
    detail::for_each_row(*files.depths, [&](const auto& f, std::size_t line) {
      if (f.size() != 2) throw DataError(*files.depths, line, "expected sense_key<TAB>depth");
      int d = detail::parse_int<int>(f[1], *files.depths, line);
      if (d < 1) throw DataError(*files.depths, line, "depth must be >= 1");
      b.override_depth(lookup(f[0], *files.depths, line), d);
    });
  }

  WeightConfig weights = WeightConfig::defaults();
  if (files.weights) weights = load_weight_overrides(*files.weights);
  return std::move(b).build(weights);
}

DepthTable compute_depths(const Thesaurus& graph) {
  std::vector<Sense> senses;
  std::vector<std::size_t> offsets{0};
  std::vector<Edge> edges;
  senses.reserve(graph.size());
  for (SenseIndex s = 0; s < graph.size(); ++s) {
    senses.push_back(graph.sense(s));
    auto e = graph.edges(s);
    edges.insert(edges.end(), e.begin(), e.end());
    offsets.push_back(edges.size());
  }
  return depths_from(senses, offsets, edges, {});
}

std::string normalize_lemma(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) out += c == ' ' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> morphological_candidates(std::string_view token) {
  std::vector<std::string> out{normalize_lemma(token)};
  const std::string w = out.front();
  auto push = [&](std::string s) {
    if (s.size() >= 2 && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  };
  for (const auto& rule : kRules) {
    if (w.size() <= rule.suffix.size() || !w.ends_with(rule.suffix)) continue;
    std::string stem = w.substr(0, w.size() - rule.suffix.size());
    if (rule.undouble) {
      auto k = stem.size();
      if (k < 3 || stem[k - 1] != stem[k - 2] || is_vowel(stem[k - 1])) continue;
      stem.pop_back();
    }
    push(stem + std::string(rule.replacement));
  }
  return out;
}

std::span<const SenseIndex> senses_of(std::string_view term, const Thesaurus& graph) {
  for (const auto& form : morphological_candidates(term)) {
    auto s = graph.lemma_senses(form);
    if (!s.empty()) return s;
  }
  return {};
}

}  // namespace semrel
