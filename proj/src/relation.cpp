#include "semrel/relation.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "semrel/error.hpp"
#include "tsv.hpp"

namespace semrel {
namespace {

constexpr std::array<std::string_view, kRelationCount> kNames = {
    "hypernym",       "hyponym",        "nominalization",    "category_domain",   "part_meronym",
    "part_holonym",   "region_domain",  "similar",           "usage_domain",      "member_meronym",
    "member_holonym", "antonym",        "verb_group",        "also_see",          "attribute",
    "entailment",     "cause",          "substance_meronym", "substance_holonym", "derived",
    "participle_of",
};

constexpr std::array<std::size_t, kRelationCount> kCategory = {
    0, 0, 1, 2, 3, 3, 4, 5, 6, 7, 7, 8, 9, 10, 11, 12, 13, 14, 14, 15, 16,
};

constexpr std::array<Relation, kCategoryCount> kRepresentative = {
    Relation::hypernym,       Relation::nominalization, Relation::category_domain,   Relation::part_meronym,
    Relation::region_domain,  Relation::similar,        Relation::usage_domain,      Relation::member_meronym,
    Relation::antonym,        Relation::verb_group,     Relation::also_see,          Relation::attribute,
    Relation::entailment,     Relation::cause,          Relation::substance_meronym, Relation::derived,
    Relation::participle_of,
};

// Probability of occurrence of each edge type in WordNet 2.0, by category.
constexpr std::array<double, kCategoryCount> kDefaultWeights = {
    0.61, 0.147, 0.094, 0.0367, 0.0238, 0.02, 0.016, 0.014, 0.0105,
    0.01, 0.0091, 0.00414, 0.00195, 0.00158, 0.00089, 0.0003, 3.4e-06,
};

}  // namespace

std::string_view name(Relation r) { return kNames[static_cast<std::size_t>(r)]; }

std::optional<Relation> parse_relation(std::string_view n) {
  for (std::size_t i = 0; i < kRelationCount; ++i)
    if (kNames[i] == n) return static_cast<Relation>(i);
  return std::nullopt;
}

Relation inverse(Relation r) {
  switch (r) {
    case Relation::hypernym: return Relation::hyponym;
    case Relation::hyponym: return Relation::hypernym;
    case Relation::part_meronym: return Relation::part_holonym;
    case Relation::part_holonym: return Relation::part_meronym;
    case Relation::member_meronym: return Relation::member_holonym;
    case Relation::member_holonym: return Relation::member_meronym;
    case Relation::substance_meronym: return Relation::substance_holonym;
    case Relation::substance_holonym: return Relation::substance_meronym;
    default: return r;
  }
}

std::size_t category(Relation r) { return kCategory[static_cast<std::size_t>(r)]; }

Relation category_representative(std::size_t c) { return kRepresentative.at(c); }

WeightConfig WeightConfig::defaults() {
  WeightConfig w;
  w.weights_ = kDefaultWeights;
  return w;
}

void WeightConfig::set(Relation r, double w) {
  if (!(w > 0.0 && w < 1.0))
    throw std::invalid_argument("weight outside (0,1) for " + std::string(name(r)));
  weights_[category(r)] = w;
}

WeightConfig load_weight_overrides(const std::string& path, WeightConfig base) {
  std::array<bool, kCategoryCount> seen{};
  detail::for_each_row(path, [&](const auto& f, std::size_t line) {
    if (f.size() != 2) throw DataError(path, line, "expected edge_type<TAB>weight");
    auto rel = parse_relation(detail::trim(f[0]));
    if (!rel) throw DataError(path, line, "unknown edge type '" + std::string(f[0]) + "'");
    double w = detail::parse_double(f[1], path, line);
    if (!(w > 0.0 && w < 1.0)) throw DataError(path, line, "weight outside (0,1)");
    auto c = category(*rel);
    if (seen[c] && base.category_weight(c) != w)
      throw DataError(path, line, "conflicting weights for inverse pair of " + std::string(name(*rel)));
    seen[c] = true;
    base.set(*rel, w);
  });
  return base;
}

std::string dump_weights(const WeightConfig& weights) {
  std::string out;
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    // Shortest representation that reads back to the same double.
    out += fmt::format("{}\t{}\n", name(category_representative(c)), weights.category_weight(c));
  }
  return out;
}

}  // namespace semrel
