#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semrel/relation.hpp"

namespace semrel {

enum class Pos : std::uint8_t { noun, verb, adjective, adverb };

std::string_view name(Pos p);
/// Accepts full names and WordNet letters (n, v, a, s, r).
std::optional<Pos> parse_pos(std::string_view s);

/// Dense index of a sense within one loaded thesaurus.
using SenseIndex = std::uint32_t;

struct Sense {
  std::string key;  // e.g. "02958343-n"
  Pos pos;
};

struct Edge {
  Relation type;
  SenseIndex target;

  bool operator==(const Edge&) const = default;
};

/// Per-sense depth in the concept hierarchy; roots have depth 1.
struct DepthTable {
  std::vector<int> depth;
  int max_depth = 1;

  int operator[](SenseIndex s) const { return depth[s]; }
};

/// Immutable lexical graph. Adjacency is inverse-closed: for every edge
/// (u, t, v) the edge (v, inverse(t), u) is also present, and both carry the
/// weight of their shared category.
class Thesaurus {
 public:
  std::size_t size() const { return senses_.size(); }
  const Sense& sense(SenseIndex s) const { return senses_.at(s); }
  std::optional<SenseIndex> find(std::string_view key) const;

  std::span<const Edge> edges(SenseIndex s) const {
    return {edges_.data() + offsets_[s], edges_.data() + offsets_[s + 1]};
  }
  std::size_t edge_count() const { return edges_.size(); }

  const WeightConfig& weights() const { return weights_; }
  double weight(Relation r) const { return weights_(r); }

  const DepthTable& depths() const { return depths_; }
  int depth(SenseIndex s) const { return depths_.depth[s]; }
  int max_depth() const { return depths_.max_depth; }

  /// True when some loaded edge of this type joins senses of different POS.
  bool crosses_pos(Relation r) const { return crosses_pos_[static_cast<std::size_t>(r)]; }

  /// Senses of a normalized lemma (lowercase, underscores for spaces), all POS.
  std::span<const SenseIndex> lemma_senses(std::string_view lemma) const;
  bool has_lemma(std::string_view lemma) const;
  std::size_t lemma_count() const { return lexicon_.size(); }

  /// 64-bit digest of senses, edges, weights and depths. Caches built for one
  /// graph are rejected by any graph with a different fingerprint.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  friend class ThesaurusBuilder;

  std::vector<Sense> senses_;
  std::unordered_map<std::string, SenseIndex> key_index_;
  std::vector<std::size_t> offsets_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::vector<SenseIndex>> lexicon_;
  WeightConfig weights_;
  DepthTable depths_;
  std::array<bool, kRelationCount> crosses_pos_{};
  std::uint64_t fingerprint_ = 0;
};

/// Incremental construction, used by the file loader and by tests.
class ThesaurusBuilder {
 public:
  /// Adds a sense if `key` is new; returns its index. Throws if the key was
  /// already added with another POS.
  SenseIndex add_sense(const std::string& key, Pos pos);
  void add_lemma(std::string_view lemma, SenseIndex s);
  /// Self-loops are dropped; duplicates collapse. The inverse edge is added
  /// at build time.
  void add_edge(SenseIndex from, Relation type, SenseIndex to);
  void override_depth(SenseIndex s, int depth);

  std::optional<SenseIndex> find(const std::string& key) const;
  std::size_t size() const { return senses_.size(); }

  Thesaurus build(WeightConfig weights = WeightConfig::defaults()) &&;

 private:
  std::vector<Sense> senses_;
  std::unordered_map<std::string, SenseIndex> key_index_;
  std::vector<std::pair<SenseIndex, Edge>> edges_;
  std::unordered_map<std::string, std::vector<SenseIndex>> lexicon_;
  std::vector<std::pair<SenseIndex, int>> depth_overrides_;
};

struct ThesaurusFiles {
  std::string lexicon;
  std::string edges;
  std::optional<std::string> weights;
  std::optional<std::string> depths;
};

/// Reads the TSV lexicon and edge list. Throws DataError with file and line
/// for malformed rows, unknown edge types, out-of-range weights and edges
/// that reference senses absent from the lexicon.
Thesaurus load_thesaurus(const ThesaurusFiles& files);

/// Depth of every sense: 1 + fewest hypernym hops to a sense without a
/// hypernym. Adverbs take the depth of a `derived` adjective sense when one
/// exists. Depth overrides given at load time are not applied here.
DepthTable compute_depths(const Thesaurus& graph);

/// Lowercases and maps spaces to underscores.
std::string normalize_lemma(std::string_view raw);

/// Candidate base forms of a token, raw form first, then the suffix rules.
std::vector<std::string> morphological_candidates(std::string_view token);

/// Senses of a raw token: the first candidate form present in the lexicon.
/// Empty for out-of-vocabulary tokens.
std::span<const SenseIndex> senses_of(std::string_view term, const Thesaurus& graph);

}  // namespace semrel
