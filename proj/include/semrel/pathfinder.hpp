#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semrel/relation.hpp"
#include "semrel/thesaurus.hpp"

namespace semrel {

/// Path-based measures (sr, pr, nwpl) and the hierarchy/IC baselines.
enum class Measure { sr, pr, nwpl, leacock, resnik, jiang_conrath, lin };

std::string_view name(Measure m);
/// Accepts "sr", "pr", "nwpl", "leacock", "resnik", "jc"/"jiang_conrath", "lin".
std::optional<Measure> parse_measure(std::string_view s);
constexpr bool is_path_measure(Measure m) { return m == Measure::sr || m == Measure::pr || m == Measure::nwpl; }

/// A walk through the thesaurus. `senses` has one more entry than `edges`;
/// a single sense with no edges is the identity path.
struct SemanticPath {
  std::vector<SenseIndex> senses;
  std::vector<Relation> edges;
  double scm = 0.0;
  double spe = 0.0;

  std::size_t length() const { return edges.size(); }
};

/// Semantic compactness: product of the edge weights, 1 for the empty path.
double scm(std::span<const double> edge_weights);
double scm(const SemanticPath& path, const WeightConfig& weights);

/// Semantic path elaboration: product over consecutive senses of
/// 2*d_i*d_j / (d_i + d_j) / max_depth. One sense gives d / max_depth; no
/// senses (no path) gives 0.
double spe(std::span<const int> path_depths, int max_depth);
double spe(const SemanticPath& path, const DepthTable& depths);

/// Edge weight combined with its depth factor; the quantity Dijkstra
/// maximizes the product of in SR mode.
double depth_scaled_weight(double w, int d_from, int d_to, int max_depth);

struct SearchOptions {
  /// Hop limit. Without it the search is exact; with it the result is the best
  /// path of at most this many edges.
  std::optional<std::size_t> max_length;
  std::array<bool, kRelationCount> excluded{};

  /// Excludes every relation type that joins senses of different POS.
  static SearchOptions without_cross_pos(const Thesaurus& graph);

  bool is_default() const;
  bool allows(Relation r) const { return !excluded[static_cast<std::size_t>(r)]; }
};

struct SenseRelatedness {
  double value = 0.0;
  std::optional<SemanticPath> witness;
  Measure mode = Measure::sr;
};

/// Incremental single-source search. Each `to(target)` resumes the same
/// Dijkstra run until the target is settled, so the result for a target
/// does not depend on which other targets were queried before it.
class RelatednessSearch {
 public:
  RelatednessSearch(const Thesaurus& graph, SenseIndex source, Measure mode, SearchOptions options = {});
  ~RelatednessSearch();
  RelatednessSearch(RelatednessSearch&&) noexcept;
  RelatednessSearch& operator=(RelatednessSearch&&) noexcept;

  /// Witness path runs from the source to `target`.
  SenseRelatedness to(SenseIndex target);

  SenseIndex source() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

/// Best path between two senses under `mode` (sr, pr or nwpl). The search
/// always starts from the lower index, so swapping the arguments returns the
/// same value bit for bit; the witness is oriented from s1 to s2.
SenseRelatedness max_relatedness(const Thesaurus& graph, SenseIndex s1, SenseIndex s2, Measure mode = Measure::sr,
                                 const SearchOptions& options = {});

/// Sense probabilities for the information-content baselines.
class ICTable {
 public:
  ICTable() = default;
  explicit ICTable(std::vector<double> probability) : probability_(std::move(probability)) {}

  bool has(SenseIndex s) const { return s < probability_.size() && probability_[s] > 0.0; }
  double probability(SenseIndex s) const { return probability_.at(s); }
  /// -log P(s). Throws std::out_of_range for senses without a probability.
  double ic(SenseIndex s) const;

  /// Hypernym links whose child is more probable than its parent.
  std::size_t monotonicity_violations(const Thesaurus& graph) const;

 private:
  std::vector<double> probability_;  // 0 marks "absent"
};

/// TSV `sense_key<TAB>probability`, probabilities in (0, 1].
ICTable load_ic_table(const std::string& path, const Thesaurus& graph);

struct BaselineOptions {
  /// Returned by Jiang-Conrath when its denominator is zero.
  double jc_max = 1e9;
};

/// Leacock-Chodorow, Resnik, Jiang-Conrath or Lin similarity. The IC-based
/// measures throw std::invalid_argument without an ICTable.
double baseline_similarity(Measure measure, const Thesaurus& graph, SenseIndex s1, SenseIndex s2,
                           const ICTable* ic = nullptr, const BaselineOptions& options = {});

/// Number of senses on the shortest hypernym/hyponym path, 0 when none.
std::size_t hierarchy_path_nodes(const Thesaurus& graph, SenseIndex s1, SenseIndex s2);

/// Most informative common hypernym ancestor (senses count as their own
/// ancestors), among senses that have a probability.
std::optional<SenseIndex> lowest_common_subsumer(const Thesaurus& graph, const ICTable& ic, SenseIndex s1,
                                                 SenseIndex s2);

}  // namespace semrel
