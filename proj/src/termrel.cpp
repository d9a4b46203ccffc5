#include "semrel/termrel.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "semrel/error.hpp"
#include "semrel/store.hpp"

namespace semrel {
namespace {

std::vector<SenseIndex> sense_set(std::string_view term, const Thesaurus& graph, std::optional<Pos> pos) {
  auto all = senses_of(term, graph);
  std::vector<SenseIndex> out;
  for (SenseIndex s : all)
    if (!pos || graph.sense(s).pos == *pos) out.push_back(s);
  return out;
}

}  // namespace

SearchPool::SearchPool(const Thesaurus& graph, Measure mode, SearchOptions options, std::size_t capacity)
    : graph_(&graph), mode_(mode), options_(std::move(options)), capacity_(std::max<std::size_t>(capacity, 1)) {}

RelatednessSearch& SearchPool::search_from(SenseIndex source) {
  auto it = std::find_if(recent_.begin(), recent_.end(), [&](const auto& s) { return s.source() == source; });
  if (it != recent_.end()) {
    recent_.splice(recent_.begin(), recent_, it);
  } else {
    if (recent_.size() == capacity_) recent_.pop_back();
    recent_.emplace_front(*graph_, source, mode_, options_);
  }
  return recent_.front();
}

bool SearchPool::serves(const Thesaurus& graph, Measure mode, const SearchOptions& options) const {
  return graph_ == &graph && mode_ == mode && options_.max_length == options.max_length &&
         options_.excluded == options.excluded;
}

void check_cache_compatible(const PairCache& cache, const Thesaurus& graph) {
  if (cache.header().fingerprint != graph.fingerprint())
    throw DataError("pair cache was built for a different thesaurus (fingerprint mismatch)");
}

TermPairScore sr_terms(std::string_view t1, std::string_view t2, const Thesaurus& graph, const TermOptions& options) {
  TermPairScore out;
  out.t1_in_vocabulary = !senses_of(t1, graph).empty();
  out.t2_in_vocabulary = !senses_of(t2, graph).empty();
  const bool same = normalize_lemma(t1) == normalize_lemma(t2);

  if (!out.t1_in_vocabulary || !out.t2_in_vocabulary) {
    out.value = (!out.t1_in_vocabulary && !out.t2_in_vocabulary && same) ? 1.0 : 0.0;
    return out;
  }

  const auto x1 = sense_set(t1, graph, options.pos);
  const auto x2 = sense_set(t2, graph, options.pos);
  if (x1.empty() || x2.empty()) return out;

  if (same && options.identical_term_unity) {
    out.value = 1.0;
    out.best_pair = {x1.front(), x1.front()};
    return out;
  }

  const bool use_cache = options.cache && options.mode == Measure::sr && options.search.is_default();
  if (use_cache) check_cache_compatible(*options.cache, graph);

  SearchPool* pool = options.pool && options.pool->serves(graph, options.mode, options.search) ? options.pool : nullptr;
  std::map<SenseIndex, RelatednessSearch> searches;
  auto pair_value = [&](SenseIndex a, SenseIndex b) -> double {
    if (!is_path_measure(options.mode)) return baseline_similarity(options.mode, graph, a, b, options.ic);
    if (a == b) return max_relatedness(graph, a, b, options.mode, options.search).value;
    if (use_cache) {
      if (auto v = options.cache->lookup(a, b)) return *v;
      if (options.cache->absence_means_zero()) return 0.0;
    }
    const SenseIndex lo = std::min(a, b), hi = std::max(a, b);
    if (pool) return pool->search_from(lo).to(hi).value;
    auto it = searches.find(lo);
    if (it == searches.end()) it = searches.emplace(lo, RelatednessSearch(graph, lo, options.mode, options.search)).first;
    return it->second.to(hi).value;
  };

  bool first = true;
  for (SenseIndex a : x1)
    for (SenseIndex b : x2) {
      double v = pair_value(a, b);
      if (first || v > out.value) {
        out.value = v;
        out.best_pair = {a, b};
        first = false;
      }
    }
  return out;
}

}  // namespace semrel
