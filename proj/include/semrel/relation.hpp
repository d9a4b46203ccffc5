#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace semrel {

/// Directed edge types of the lexical graph. Inverse pairs (hypernym and
/// hyponym, the three meronym/holonym pairs) are listed explicitly; every
/// other type is its own inverse.
enum class Relation : std::uint8_t {
  hypernym,
  hyponym,
  nominalization,
  category_domain,
  part_meronym,
  part_holonym,
  region_domain,
  similar,
  usage_domain,
  member_meronym,
  member_holonym,
  antonym,
  verb_group,
  also_see,
  attribute,
  entailment,
  cause,
  substance_meronym,
  substance_holonym,
  derived,
  participle_of,
};

inline constexpr std::size_t kRelationCount = 21;

/// Number of weight categories; an inverse pair shares one category.
inline constexpr std::size_t kCategoryCount = 17;

std::string_view name(Relation r);
std::optional<Relation> parse_relation(std::string_view name);
Relation inverse(Relation r);

/// Category index in [0, kCategoryCount), ordered by descending default weight.
std::size_t category(Relation r);

/// Relation used as the canonical name of a category (the first of its pair).
Relation category_representative(std::size_t category);

constexpr bool is_hierarchy(Relation r) {
  return r == Relation::hypernym || r == Relation::hyponym;
}

/// One weight per relation category; every weight lies strictly in (0, 1).
class WeightConfig {
 public:
  /// Edge-type frequencies of WordNet 2.0.
  static WeightConfig defaults();

  double operator()(Relation r) const { return weights_[category(r)]; }
  double category_weight(std::size_t c) const { return weights_.at(c); }

  /// Sets the weight of `r` and of its inverse. Throws std::invalid_argument
  /// unless 0 < w < 1.
  void set(Relation r, double w);

  bool operator==(const WeightConfig&) const = default;

 private:
  std::array<double, kCategoryCount> weights_{};
};

/// Reads `edge_type<TAB>weight` lines over `base`. Conflicting values for the
/// two members of an inverse pair are rejected.
WeightConfig load_weight_overrides(const std::string& path, WeightConfig base = WeightConfig::defaults());

/// One `edge_type<TAB>weight` line per category, shortest round-trip decimals.
/// The output is itself a valid overrides file.
std::string dump_weights(const WeightConfig& weights);

}  // namespace semrel
