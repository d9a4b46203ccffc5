#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace semrel::testing {

double brute_force_relatedness(const Thesaurus& graph, SenseIndex s1, SenseIndex s2, Measure mode,
                               const SearchOptions& options) {
  if (graph.size() > kOracleMaxNodes) throw std::length_error("graph too large for exhaustive enumeration");
  if (s1 >= graph.size() || s2 >= graph.size()) throw std::out_of_range("sense not in graph");

  const double dmax = graph.max_depth();
  if (s1 == s2) return mode == Measure::sr ? graph.depth(s1) / dmax : 1.0;

  const std::size_t cap = options.max_length.value_or(graph.size());
  double best = 0.0;
  std::vector<SenseIndex> path{s1};
  std::vector<Relation> types;
  std::vector<bool> used(graph.size(), false);
  used[s1] = true;

  auto objective = [&] {
    double compactness = 1.0, elaboration = 1.0, total = 0.0;
    for (std::size_t i = 0; i < types.size(); ++i) {
      const double w = graph.weight(types[i]);
      const double a = graph.depth(path[i]), b = graph.depth(path[i + 1]);
      compactness *= w;
      elaboration *= (2.0 * a * b / (a + b)) / dmax;
      total += w;
    }
    switch (mode) {
      case Measure::sr: return compactness * elaboration;
      case Measure::pr: return compactness;
      case Measure::nwpl: return total / static_cast<double>(types.size());
      default: throw std::invalid_argument("oracle covers path measures only");
    }
  };

  std::function<void(SenseIndex)> walk = [&](SenseIndex u) {
    if (u == s2) {
      best = std::max(best, objective());
      return;
    }
    if (types.size() == cap) return;
    for (const Edge& e : graph.edges(u)) {
      if (used[e.target] || !options.allows(e.type)) continue;
      used[e.target] = true;
      path.push_back(e.target);
      types.push_back(e.type);
      walk(e.target);
      types.pop_back();
      path.pop_back();
      used[e.target] = false;
    }
  };
  walk(s1);
  return best;
}

Thesaurus GraphRecipe::build() const {
  ThesaurusBuilder b;
  for (const auto& s : senses) b.add_sense(s.key, s.pos);
  for (const auto& [lemma, s] : lemmas) b.add_lemma(lemma, s);
  for (const auto& e : edges) b.add_edge(e.from, e.type, e.to);
  for (std::size_t s = 0; s < depths.size(); ++s) b.override_depth(static_cast<SenseIndex>(s), depths[s]);
  return std::move(b).build(weights);
}

GraphRecipe random_recipe(std::mt19937_64& rng, const RandomGraphSpec& spec) {
  GraphRecipe r;
  std::uniform_int_distribution<std::size_t> nodes(spec.min_nodes, spec.max_nodes);
  std::uniform_int_distribution<int> pos(0, 3);
  std::uniform_int_distribution<int> depth(spec.min_depth, spec.max_depth);
  std::uniform_int_distribution<std::size_t> lemma(0, spec.lemma_pool - 1);
  std::uniform_int_distribution<int> type(0, static_cast<int>(kRelationCount) - 1);
  std::uniform_real_distribution<double> weight(spec.min_weight, spec.max_weight);

  const std::size_t n = nodes(rng);
  for (std::size_t i = 0; i < n; ++i) {
    r.senses.push_back({"s" + std::to_string(i), static_cast<Pos>(pos(rng))});
    r.lemmas.emplace_back("w" + std::to_string(lemma(rng)), static_cast<SenseIndex>(i));
    r.depths.push_back(depth(rng));
  }
  std::uniform_int_distribution<std::size_t> edge_count(0, spec.max_edges);
  std::uniform_int_distribution<SenseIndex> sense(0, static_cast<SenseIndex>(n - 1));
  const std::size_t m = edge_count(rng);
  for (std::size_t i = 0; i < m; ++i) {
    SenseIndex a = sense(rng), b = sense(rng);
    if (a == b) continue;
    r.edges.push_back({a, static_cast<Relation>(type(rng)), b});
  }
  for (std::size_t c = 0; c < kCategoryCount; ++c) r.weights.set(category_representative(c), weight(rng));
  return r;
}

std::string test_data(const std::string& relative) { return std::string(SEMREL_TEST_DATA) + "/" + relative; }

Thesaurus vehicles() {
  return load_thesaurus({test_data("vehicles/lexicon.tsv"), test_data("vehicles/edges.tsv"), std::nullopt, std::nullopt});
}

Thesaurus three_synsets() { return load_thesaurus({test_data("three/lexicon.tsv"), test_data("three/edges.tsv")}); }

OmiotisOracle omiotis_oracle(const TokenizedText& a, const TokenizedText& b, const CorpusStats& corpus,
                             const TermScoreFn& sr, double weight_scale) {
  auto distinct = [](const TokenizedText& t) {
    std::vector<std::string> out;
    for (const auto& term : t.terms)
      if (std::find(out.begin(), out.end(), term) == out.end()) out.push_back(term);
    return out;
  };
  auto weight = [&](const std::string& term, const TokenizedText& t) {
    const double tf = static_cast<double>(std::count(t.terms.begin(), t.terms.end(), term));
    const double n = static_cast<double>(corpus.documents);
    const auto it = corpus.df.find(term);
    const double df = it == corpus.df.end() ? 0.0 : static_cast<double>(it->second);
    return weight_scale * tf * std::log(1.0 + n / (1.0 + df));
  };
  auto direction = [&](const TokenizedText& from, const TokenizedText& to, std::vector<std::string>& partners) {
    const auto xs = distinct(from), ys = distinct(to);
    if (xs.empty() || ys.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& x : xs) {
      double top = -1.0;
      std::string partner;
      for (const auto& y : ys) {
        const double wx = weight(x, from), wy = weight(y, to);
        const double lam = wx + wy > 0 ? 2.0 * wx * wy / (wx + wy) : 0.0;
        const double v = lam * sr(x, y);
        if (v > top) {
          top = v;
          partner = y;
        }
      }
      sum += top;
      partners.push_back(partner);
    }
    return sum / static_cast<double>(xs.size());
  };
  OmiotisOracle o{};
  o.zeta_ab = direction(a, b, o.partners_ab);
  o.zeta_ba = direction(b, a, o.partners_ba);
  o.omiotis = (o.zeta_ab + o.zeta_ba) / 2.0;
  return o;
}

}  // namespace semrel::testing
