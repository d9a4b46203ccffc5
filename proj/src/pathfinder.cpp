#include "semrel/pathfinder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>

#include "semrel/error.hpp"
#include "tsv.hpp"

namespace semrel {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_sense(const Thesaurus& g, SenseIndex s) {
  if (s >= g.size()) throw std::out_of_range("sense index " + std::to_string(s) + " not in graph");
}

SemanticPath finish_path(const Thesaurus& g, std::vector<SenseIndex> senses, std::vector<Relation> edges) {
  SemanticPath p;
  p.senses = std::move(senses);
  p.edges = std::move(edges);
  p.scm = scm(p, g.weights());
  p.spe = spe(p, g.depths());
  return p;
}

SenseRelatedness identity(const Thesaurus& g, SenseIndex s, Measure mode) {
  SenseRelatedness r;
  r.mode = mode;
  r.witness = finish_path(g, {s}, {});
  r.value = mode == Measure::sr ? r.witness->spe : 1.0;
  return r;
}

SemanticPath reversed(const SemanticPath& p) {
  SemanticPath r = p;
  std::reverse(r.senses.begin(), r.senses.end());
  std::reverse(r.edges.begin(), r.edges.end());
  for (auto& e : r.edges) e = inverse(e);
  return r;
}

}  // namespace

std::string_view name(Measure m) {
  switch (m) {
    case Measure::sr: return "sr";
    case Measure::pr: return "pr";
    case Measure::nwpl: return "nwpl";
    case Measure::leacock: return "leacock";
    case Measure::resnik: return "resnik";
    case Measure::jiang_conrath: return "jc";
    case Measure::lin: return "lin";
  }
  return "?";
}

std::optional<Measure> parse_measure(std::string_view s) {
  if (s == "sr") return Measure::sr;
  if (s == "pr") return Measure::pr;
  if (s == "nwpl") return Measure::nwpl;
  if (s == "leacock") return Measure::leacock;
  if (s == "resnik") return Measure::resnik;
  if (s == "jc" || s == "jiang_conrath") return Measure::jiang_conrath;
  if (s == "lin") return Measure::lin;
  return std::nullopt;
}

double scm(std::span<const double> edge_weights) {
  double p = 1.0;
  for (double w : edge_weights) p *= w;
  return p;
}

double scm(const SemanticPath& path, const WeightConfig& weights) {
  double p = 1.0;
  for (Relation r : path.edges) p *= weights(r);
  return p;
}

double spe(std::span<const int> d, int max_depth) {
  if (d.empty()) return 0.0;
  if (max_depth < 1) throw std::invalid_argument("max depth must be >= 1");
  if (d.size() == 1) return static_cast<double>(d[0]) / max_depth;
  double p = 1.0;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    double a = d[i], b = d[i + 1];
    p *= 2.0 * a * b / (a + b) / max_depth;
  }
  return p;
}

double spe(const SemanticPath& path, const DepthTable& depths) {
  std::vector<int> d;
  d.reserve(path.senses.size());
  for (SenseIndex s : path.senses) {
    if (s >= depths.depth.size()) throw std::logic_error("sense without depth");
    d.push_back(depths[s]);
  }
  return spe(d, depths.max_depth);
}

double depth_scaled_weight(double w, int d_from, int d_to, int max_depth) {
  double a = d_from, b = d_to;
  return w * (2.0 * a * b) / (max_depth * (a + b));
}

SearchOptions SearchOptions::without_cross_pos(const Thesaurus& graph) {
  SearchOptions o;
  for (std::size_t i = 0; i < kRelationCount; ++i) o.excluded[i] = graph.crosses_pos(static_cast<Relation>(i));
  return o;
}

bool SearchOptions::is_default() const {
  return !max_length && std::none_of(excluded.begin(), excluded.end(), [](bool b) { return b; });
}

// Dijkstra over (sense, hops) states; hops are tracked only under a length
// cap. Costs are -log of the per-edge factor, so the cheapest path is the one
// with the largest product.
struct RelatednessSearch::State {
  using StateId = std::uint32_t;
  static constexpr StateId kNoState = std::numeric_limits<StateId>::max();
  // Depth pairs up to this bound get their log factor memoized.
  static constexpr int kTableDepth = 64;

  const Thesaurus* graph;
  SenseIndex source;
  Measure mode;
  SearchOptions options;
  std::size_t layers = 1;

  std::vector<double> cost;
  std::vector<StateId> pred;
  std::vector<Relation> pred_edge;
  std::vector<char> settled;
  std::vector<StateId> first_settled;  // per sense: state settled first
  std::vector<double> log_factor;      // by (type, depth, depth); NaN until computed
  using Entry = std::pair<double, StateId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

  State(const Thesaurus& g, SenseIndex s, Measure m, SearchOptions o)
      : graph(&g), source(s), mode(m), options(std::move(o)) {
    if (mode == Measure::nwpl) return;
    if (options.max_length) layers = *options.max_length + 1;
    if (layers > (kNoState - 1) / std::max<std::size_t>(g.size(), 1))
      throw std::length_error("path length cap too large for this graph");
    const std::size_t states = g.size() * layers;
    cost.assign(states, kInf);
    pred.assign(states, kNoState);
    pred_edge.assign(states, Relation::hypernym);
    settled.assign(states, 0);
    first_settled.assign(g.size(), kNoState);
    if (g.max_depth() <= kTableDepth) {
      const std::size_t d = static_cast<std::size_t>(g.max_depth()) + 1;
      log_factor.assign(kRelationCount * d * d, std::numeric_limits<double>::quiet_NaN());
    }
    cost[state_of(s, 0)] = 0.0;
    queue.emplace(0.0, state_of(s, 0));
  }

  StateId state_of(SenseIndex s, std::size_t hops) const { return static_cast<StateId>(s * layers + hops); }

  double factor(SenseIndex u, Relation r, SenseIndex v) const {
    double w = graph->weight(r);
    if (mode == Measure::sr) return depth_scaled_weight(w, graph->depth(u), graph->depth(v), graph->max_depth());
    return w;
  }

  double log_step(SenseIndex u, Relation r, SenseIndex v) {
    if (log_factor.empty()) return std::log(factor(u, r, v));
    const std::size_t d = static_cast<std::size_t>(graph->max_depth()) + 1;
    double& slot = log_factor[(static_cast<std::size_t>(r) * d + graph->depth(u)) * d + graph->depth(v)];
    if (std::isnan(slot)) slot = std::log(factor(u, r, v));
    return slot;
  }

  void run_until(SenseIndex target) {
    while (first_settled[target] == kNoState && !queue.empty()) {
      auto [c, st] = queue.top();
      queue.pop();
      if (settled[st]) continue;
      settled[st] = 1;
      const auto u = static_cast<SenseIndex>(st / layers);
      const std::size_t hops = st % layers;
      if (first_settled[u] == kNoState) first_settled[u] = st;
      if (layers > 1 && hops + 1 >= layers) continue;
      const std::size_t next_hops = layers > 1 ? hops + 1 : 0;
      for (const Edge& e : graph->edges(u)) {
        if (!options.allows(e.type)) continue;
        const StateId vs = state_of(e.target, next_hops);
        if (settled[vs]) continue;
        const double nc = c - log_step(u, e.type, e.target);
        if (nc < cost[vs]) {
          cost[vs] = nc;
          pred[vs] = st;
          pred_edge[vs] = e.type;
          queue.emplace(nc, vs);
        }
      }
    }
  }

  SenseRelatedness dijkstra_to(SenseIndex target) {
    run_until(target);
    SenseRelatedness r;
    r.mode = mode;
    const StateId st = first_settled[target];
    if (st == kNoState) return r;

    std::vector<SenseIndex> senses;
    std::vector<Relation> edges;
    for (StateId cur = st; cur != kNoState; cur = pred[cur]) {
      senses.push_back(static_cast<SenseIndex>(cur / layers));
      if (pred[cur] != kNoState) edges.push_back(pred_edge[cur]);
    }
    std::reverse(senses.begin(), senses.end());
    std::reverse(edges.begin(), edges.end());

    double value = 1.0;
    for (std::size_t i = 0; i < edges.size(); ++i) value *= factor(senses[i], edges[i], senses[i + 1]);
    r.value = value;
    r.witness = finish_path(*graph, std::move(senses), std::move(edges));
    return r;
  }

  // Largest mean edge weight over simple paths. The objective is not
  // prefix-monotone, so this enumerates paths depth-first.
  SenseRelatedness nwpl_to(SenseIndex target) {
    const Thesaurus& g = *graph;
    const std::size_t cap = options.max_length.value_or(g.size() > 0 ? g.size() - 1 : 0);
    double ceiling = 0.0;
    for (std::size_t i = 0; i < kRelationCount; ++i)
      if (options.allows(static_cast<Relation>(i))) ceiling = std::max(ceiling, g.weight(static_cast<Relation>(i)));

    double best = -1.0;
    std::vector<SenseIndex> best_senses;
    std::vector<Relation> best_edges;

    std::vector<char> on_path(g.size(), 0);
    std::vector<SenseIndex> senses{source};
    std::vector<Relation> edges;
    std::vector<std::size_t> next_edge{0};
    std::vector<double> prefix_sum{0.0};
    on_path[source] = 1;

    while (!senses.empty() && best < ceiling) {
      const SenseIndex u = senses.back();
      auto adj = g.edges(u);
      std::size_t& i = next_edge.back();
      if (u == target || edges.size() >= cap || i >= adj.size()) {
        on_path[u] = 0;
        senses.pop_back();
        next_edge.pop_back();
        prefix_sum.pop_back();
        if (!edges.empty()) edges.pop_back();
        continue;
      }
      const Edge e = adj[i++];
      if (!options.allows(e.type) || on_path[e.target]) continue;
      const double sum = prefix_sum.back() + g.weight(e.type);
      senses.push_back(e.target);
      edges.push_back(e.type);
      next_edge.push_back(0);
      prefix_sum.push_back(sum);
      on_path[e.target] = 1;
      if (e.target == target) {
        const double mean = sum / static_cast<double>(edges.size());
        if (mean > best) {
          best = mean;
          best_senses = senses;
          best_edges = edges;
        }
      }
    }

    SenseRelatedness r;
    r.mode = mode;
    if (best < 0.0) return r;
    r.value = best;
    r.witness = finish_path(g, std::move(best_senses), std::move(best_edges));
    return r;
  }
};

RelatednessSearch::RelatednessSearch(const Thesaurus& graph, SenseIndex source, Measure mode, SearchOptions options) {
  check_sense(graph, source);
  if (!is_path_measure(mode)) throw std::invalid_argument("relatedness search needs a path measure");
  state_ = std::make_unique<State>(graph, source, mode, std::move(options));
}

RelatednessSearch::~RelatednessSearch() = default;
RelatednessSearch::RelatednessSearch(RelatednessSearch&&) noexcept = default;
RelatednessSearch& RelatednessSearch::operator=(RelatednessSearch&&) noexcept = default;

SenseIndex RelatednessSearch::source() const { return state_->source; }

SenseRelatedness RelatednessSearch::to(SenseIndex target) {
  check_sense(*state_->graph, target);
  if (target == state_->source) return identity(*state_->graph, target, state_->mode);
  if (state_->mode == Measure::nwpl) return state_->nwpl_to(target);
  return state_->dijkstra_to(target);
}

SenseRelatedness max_relatedness(const Thesaurus& graph, SenseIndex s1, SenseIndex s2, Measure mode,
                                 const SearchOptions& options) {
  check_sense(graph, s1);
  check_sense(graph, s2);
  if (s1 == s2) return identity(graph, s1, mode);
  const SenseIndex lo = std::min(s1, s2), hi = std::max(s1, s2);
  auto r = RelatednessSearch(graph, lo, mode, options).to(hi);
  if (r.witness && s1 != lo) r.witness = reversed(*r.witness);
  return r;
}

double ICTable::ic(SenseIndex s) const {
  if (!has(s)) throw std::out_of_range("no probability for sense " + std::to_string(s));
  return -std::log(probability_[s]);
}

std::size_t ICTable::monotonicity_violations(const Thesaurus& graph) const {
  std::size_t n = 0;
  for (SenseIndex s = 0; s < graph.size(); ++s) {
    if (!has(s)) continue;
    for (const Edge& e : graph.edges(s))
      if (e.type == Relation::hypernym && has(e.target) && probability_[s] > probability_[e.target]) ++n;
  }
  return n;
}

ICTable load_ic_table(const std::string& path, const Thesaurus& graph) {
  std::vector<double> p(graph.size(), 0.0);
  detail::for_each_row(path, [&](const auto& f, std::size_t line) {
    if (f.size() != 2) throw DataError(path, line, "expected sense_key<TAB>probability");
    auto s = graph.find(detail::trim(f[0]));
    if (!s) throw DataError(path, line, "unknown sense '" + std::string(f[0]) + "'");
    double v = detail::parse_double(f[1], path, line);
    if (!(v > 0.0 && v <= 1.0)) throw DataError(path, line, "probability outside (0,1]");
    p[*s] = v;
  });
  return ICTable(std::move(p));
}

std::size_t hierarchy_path_nodes(const Thesaurus& graph, SenseIndex s1, SenseIndex s2) {
  check_sense(graph, s1);
  check_sense(graph, s2);
  if (s1 == s2) return 1;
  std::vector<std::size_t> dist(graph.size(), kNone);
  std::deque<SenseIndex> q{s1};
  dist[s1] = 0;
  while (!q.empty()) {
    auto u = q.front();
    q.pop_front();
    for (const Edge& e : graph.edges(u)) {
      if (!is_hierarchy(e.type) || dist[e.target] != kNone) continue;
      dist[e.target] = dist[u] + 1;
      if (e.target == s2) return dist[e.target] + 1;
      q.push_back(e.target);
    }
  }
  return 0;
}

namespace {

std::vector<char> ancestors(const Thesaurus& graph, SenseIndex s) {
  std::vector<char> seen(graph.size(), 0);
  std::vector<SenseIndex> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (const Edge& e : graph.edges(u))
      if (e.type == Relation::hypernym && !seen[e.target]) {
        seen[e.target] = 1;
        stack.push_back(e.target);
      }
  }
  return seen;
}

}  // namespace

std::optional<SenseIndex> lowest_common_subsumer(const Thesaurus& graph, const ICTable& ic, SenseIndex s1,
                                                 SenseIndex s2) {
  check_sense(graph, s1);
  check_sense(graph, s2);
  auto a = ancestors(graph, s1);
  auto b = ancestors(graph, s2);
  std::optional<SenseIndex> best;
  for (SenseIndex s = 0; s < graph.size(); ++s) {
    if (!a[s] || !b[s] || !ic.has(s)) continue;
    if (!best || ic.ic(s) > ic.ic(*best) || (ic.ic(s) == ic.ic(*best) && graph.depth(s) > graph.depth(*best)))
      best = s;
  }
  return best;
}

double baseline_similarity(Measure measure, const Thesaurus& graph, SenseIndex s1, SenseIndex s2, const ICTable* ic,
                           const BaselineOptions& options) {
  if (measure == Measure::leacock) {
    auto nodes = hierarchy_path_nodes(graph, s1, s2);
    if (nodes == 0) return 0.0;
    return -std::log(static_cast<double>(nodes) / (2.0 * graph.max_depth()));
  }
  if (is_path_measure(measure)) throw std::invalid_argument("not a baseline measure");
  if (!ic) throw std::invalid_argument(std::string(name(measure)) + " needs an information-content table");

  auto lcs = lowest_common_subsumer(graph, *ic, s1, s2);
  switch (measure) {
    case Measure::resnik: return lcs ? ic->ic(*lcs) : 0.0;
    case Measure::jiang_conrath: {
      if (!lcs) return 0.0;
      double denom = ic->ic(s1) + ic->ic(s2) - 2.0 * ic->ic(*lcs);
      if (denom <= 0.0) return options.jc_max;
      return 1.0 / denom;
    }
    case Measure::lin: {
      if (s1 == s2) return 1.0;
      if (!lcs) return 0.0;
      double denom = ic->ic(s1) + ic->ic(s2);
      if (denom <= 0.0) return 0.0;
      return 2.0 * ic->ic(*lcs) / denom;
    }
    default: throw std::invalid_argument("not a baseline measure");
  }
}

}  // namespace semrel
