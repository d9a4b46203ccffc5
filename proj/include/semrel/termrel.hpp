#pragma once

#include <list>
#include <optional>
#include <string_view>
#include <utility>

#include "semrel/pathfinder.hpp"
#include "semrel/thesaurus.hpp"

namespace semrel {

class PairCache;

/// Keeps recent single-source searches alive so that term pairs sharing a
/// sense resume one search instead of starting over. Results do not depend on
/// what the pool holds. Not thread-safe.
class SearchPool {
 public:
  SearchPool(const Thesaurus& graph, Measure mode, SearchOptions options, std::size_t capacity = 128);

  RelatednessSearch& search_from(SenseIndex source);
  bool serves(const Thesaurus& graph, Measure mode, const SearchOptions& options) const;

 private:
  const Thesaurus* graph_;
  Measure mode_;
  SearchOptions options_;
  std::size_t capacity_;
  std::list<RelatednessSearch> recent_;  // most recently used first
};

struct TermOptions {
  Measure mode = Measure::sr;
  SearchOptions search;
  /// Identical in-vocabulary terms score 1 instead of max_s depth(s)/d_max.
  bool identical_term_unity = false;
  /// Restricts both sense sets to one POS.
  std::optional<Pos> pos;
  /// Consulted for sense pairs before searching. Only used with the default
  /// SR search; must match the graph's fingerprint.
  const PairCache* cache = nullptr;
  /// Probabilities for the IC-based baseline modes.
  const ICTable* ic = nullptr;
  /// Shared searches; ignored unless built for the same graph, mode and search options.
  SearchPool* pool = nullptr;
};

struct TermPairScore {
  double value = 0.0;
  std::optional<std::pair<SenseIndex, SenseIndex>> best_pair;
  bool t1_in_vocabulary = false;
  bool t2_in_vocabulary = false;
};

/// Term relatedness: the maximum sense-pair relatedness over the senses of
/// both terms. Identical out-of-vocabulary terms score 1; a pair with exactly
/// one out-of-vocabulary term scores 0. Ties keep the first pair in
/// (sense of t1, sense of t2) index order.
TermPairScore sr_terms(std::string_view t1, std::string_view t2, const Thesaurus& graph,
                       const TermOptions& options = {});

/// Throws DataError if the cache was built for another graph.
void check_cache_compatible(const PairCache& cache, const Thesaurus& graph);

}  // namespace semrel
