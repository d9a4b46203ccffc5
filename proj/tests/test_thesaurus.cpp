#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "semrel/error.hpp"
#include "semrel/thesaurus.hpp"

namespace semrel {
namespace {

using testing::test_data;
using testing::three_synsets;

std::string load_error(const ThesaurusFiles& files) {
  try {
    load_thesaurus(files);
  } catch (const DataError& e) {
    return e.what();
  }
  return {};
}

TEST(LoadThesaurus, ThreeSynsetFixture) {
  const auto g = three_synsets();
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  const auto dog = *g.find("d-n"), animal = *g.find("a-n");
  ASSERT_EQ(g.edges(dog).size(), 1u);
  EXPECT_EQ(g.edges(dog)[0], (Edge{Relation::hypernym, animal}));
  ASSERT_EQ(g.edges(animal).size(), 1u);
  EXPECT_EQ(g.edges(animal)[0], (Edge{Relation::hyponym, dog}));
  EXPECT_TRUE(g.edges(*g.find("r-v")).empty());
  EXPECT_EQ(g.sense(*g.find("r-v")).pos, Pos::verb);
  EXPECT_EQ(g.lemma_count(), 3u);
}

TEST(LoadThesaurus, VehiclesWeightsFromDefaults) {
  const auto g = testing::vehicles();
  const auto car = *g.find("02958343-n");
  std::vector<double> weights;
  for (const Edge& e : g.edges(car)) weights.push_back(g.weight(e.type));
  std::sort(weights.begin(), weights.end());
  EXPECT_EQ(weights, (std::vector<double>{0.0367, 0.61}));
  EXPECT_EQ(g.lemma_senses("automobile").size(), 1u);
  EXPECT_EQ(g.lemma_senses("automobile")[0], car);
}

TEST(LoadThesaurus, WeightOverrideAboveOneRejected) {
  auto msg = load_error({test_data("three/lexicon.tsv"), test_data("three/edges.tsv"), test_data("bad/weights_high.tsv")});
  EXPECT_NE(msg.find("weight outside (0,1)"), std::string::npos) << msg;
}

TEST(LoadThesaurus, ErrorsNameFileAndLine) {
  const auto lex = test_data("three/lexicon.tsv");
  auto unknown = load_error({lex, test_data("bad/edges_unknown_type.tsv")});
  EXPECT_NE(unknown.find("edges_unknown_type.tsv:1: unknown edge type"), std::string::npos) << unknown;
  auto dangling = load_error({lex, test_data("bad/edges_dangling.tsv")});
  EXPECT_NE(dangling.find("dangling sense reference"), std::string::npos) << dangling;
  auto short_edge = load_error({lex, test_data("bad/edges_short.tsv")});
  EXPECT_NE(short_edge.find(":1:"), std::string::npos) << short_edge;
  EXPECT_NE(load_error({test_data("bad/lexicon_short.tsv"), test_data("three/edges.tsv")}), "");
  EXPECT_NE(load_error({test_data("bad/lexicon_pos.tsv"), test_data("three/edges.tsv")}).find("unknown POS"),
            std::string::npos);
  EXPECT_NE(load_error({lex, test_data("three/edges.tsv"), std::nullopt, test_data("bad/depths_zero.tsv")}), "");
  EXPECT_NE(load_error({test_data("missing.tsv"), test_data("three/edges.tsv")}).find("cannot open"),
            std::string::npos);
}

TEST(LoadThesaurus, DepthOverrideWins) {
  const auto g = load_thesaurus({test_data("three/lexicon.tsv"), test_data("three/edges.tsv"), std::nullopt,
                                 test_data("three/depths.tsv")});
  EXPECT_EQ(g.depth(*g.find("a-n")), 4);
  EXPECT_EQ(g.depth(*g.find("d-n")), 2);
  EXPECT_EQ(g.max_depth(), 4);
}

TEST(LoadThesaurus, InverseClosedWithEqualWeights) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = testing::random_recipe(rng).build();
    for (SenseIndex u = 0; u < g.size(); ++u)
      for (const Edge& e : g.edges(u)) {
        const auto back = g.edges(e.target);
        EXPECT_NE(std::find(back.begin(), back.end(), Edge{inverse(e.type), u}), back.end());
        EXPECT_EQ(g.weight(e.type), g.weight(inverse(e.type)));
      }
  }
}

TEST(LoadThesaurus, DeterministicDepthsAndFingerprint) {
  const auto a = testing::vehicles(), b = testing::vehicles();
  EXPECT_EQ(a.depths().depth, b.depths().depth);
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
  EXPECT_NE(a.fingerprint(), three_synsets().fingerprint());
}

TEST(LoadThesaurus, FingerprintTracksWeights) {
  testing::GraphRecipe r;
  r.senses = {{"x", Pos::noun}, {"y", Pos::noun}};
  r.edges = {{0, Relation::hypernym, 1}};
  const auto before = r.build().fingerprint();
  r.weights.set(Relation::antonym, 0.5);
  EXPECT_NE(r.build().fingerprint(), before);
}

TEST(LoadThesaurus, CrossPosFlagFromData) {
  testing::GraphRecipe r;
  r.senses = {{"n1", Pos::noun}, {"v1", Pos::verb}, {"n2", Pos::noun}};
  r.edges = {{0, Relation::nominalization, 1}, {0, Relation::antonym, 2}};
  const auto g = r.build();
  EXPECT_TRUE(g.crosses_pos(Relation::nominalization));
  EXPECT_FALSE(g.crosses_pos(Relation::antonym));
  EXPECT_FALSE(g.crosses_pos(Relation::hypernym));
}

TEST(ThesaurusBuilder, SameKeyWithOtherPosRejected) {
  ThesaurusBuilder b;
  b.add_sense("k", Pos::noun);
  EXPECT_EQ(b.add_sense("k", Pos::noun), 0u);
  EXPECT_THROW(b.add_sense("k", Pos::verb), std::invalid_argument);
}

TEST(ComputeDepths, RootAndChain) {
  testing::GraphRecipe r;
  r.senses = {{"root", Pos::noun}, {"a", Pos::noun}, {"b", Pos::noun}, {"lonely", Pos::noun}};
  r.edges = {{0, Relation::hyponym, 1}, {1, Relation::hyponym, 2}};
  const auto g = r.build();
  EXPECT_EQ(g.depth(0), 1);
  EXPECT_EQ(g.depth(1), 2);
  EXPECT_EQ(g.depth(2), 3);
  EXPECT_EQ(g.depth(3), 1);
  EXPECT_EQ(g.max_depth(), 3);
}

// Enumerates every upward path to a root and keeps the shortest.
int shortest_upward(const Thesaurus& g, SenseIndex s) {
  int best = 1 << 20;
  std::function<void(SenseIndex, int, std::vector<SenseIndex>&)> up = [&](SenseIndex u, int hops,
                                                                         std::vector<SenseIndex>& seen) {
    bool parent = false;
    for (const Edge& e : g.edges(u)) {
      if (e.type != Relation::hypernym) continue;
      parent = true;
      if (std::find(seen.begin(), seen.end(), e.target) != seen.end()) continue;
      seen.push_back(e.target);
      up(e.target, hops + 1, seen);
      seen.pop_back();
    }
    if (!parent) best = std::min(best, hops + 1);
  };
  std::vector<SenseIndex> seen{s};
  up(s, 0, seen);
  return best;
}

TEST(ComputeDepths, DiamondTakesShallowerParent) {
  // root <- p1 (depth 2); root <- m1 <- m2 <- p2 (depth 4); child has both.
  testing::GraphRecipe r;
  r.senses = {{"root", Pos::noun}, {"p1", Pos::noun}, {"m1", Pos::noun},
              {"m2", Pos::noun},   {"p2", Pos::noun}, {"child", Pos::noun}};
  r.edges = {{1, Relation::hypernym, 0}, {2, Relation::hypernym, 0}, {3, Relation::hypernym, 2},
             {4, Relation::hypernym, 3}, {5, Relation::hypernym, 1}, {5, Relation::hypernym, 4}};
  const auto g = r.build();
  EXPECT_EQ(g.depth(1), 2);
  EXPECT_EQ(g.depth(4), 4);
  EXPECT_EQ(g.depth(5), 3);
  for (SenseIndex s = 0; s < g.size(); ++s) EXPECT_EQ(g.depth(s), shortest_upward(g, s)) << s;
}

TEST(ComputeDepths, AdverbTakesStemAdjectiveDepth) {
  testing::GraphRecipe r;
  r.senses = {{"top", Pos::adjective}, {"mid", Pos::adjective}, {"quick", Pos::adjective}, {"quickly", Pos::adverb}};
  r.edges = {{1, Relation::hypernym, 0}, {2, Relation::hypernym, 1}, {3, Relation::derived, 2}};
  const auto g = r.build();
  EXPECT_EQ(g.depth(2), 3);
  EXPECT_EQ(g.depth(3), 3);
}

TEST(ComputeDepths, RecomputeIgnoresOverridesAndBoundsHold) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto recipe = testing::random_recipe(rng);
    recipe.depths.clear();
    const auto g = recipe.build();
    const auto fresh = compute_depths(g);
    EXPECT_EQ(fresh.depth, g.depths().depth);
    for (SenseIndex s = 0; s < g.size(); ++s) {
      EXPECT_GE(g.depth(s), 1);
      EXPECT_LE(g.depth(s), g.max_depth());
    }
  }
}

TEST(Morphology, CandidatesInRuleOrder) {
  auto c = morphological_candidates("Cities");
  ASSERT_GE(c.size(), 3u);
  EXPECT_EQ(c[0], "cities");
  EXPECT_EQ(c[1], "city");
  EXPECT_EQ(c[2], "citi");
  auto v = morphological_candidates("stopped");
  EXPECT_NE(std::find(v.begin(), v.end(), "stop"), v.end());
  auto g = morphological_candidates("making");
  EXPECT_NE(std::find(g.begin(), g.end(), "make"), g.end());
  auto a = morphological_candidates("biggest");
  EXPECT_NE(std::find(a.begin(), a.end(), "big"), a.end());
  for (const auto& s : morphological_candidates("is")) EXPECT_GE(s.size(), 2u);
}

TEST(SensesOf, VehiclesLookups) {
  const auto g = testing::vehicles();
  const auto car = senses_of("car", g);
  ASSERT_EQ(car.size(), 1u);
  EXPECT_EQ(g.sense(car[0]).key, "02958343-n");
  EXPECT_TRUE(senses_of("xyzzy", g).empty());
  const auto cars = senses_of("cars", g);
  EXPECT_TRUE(std::equal(car.begin(), car.end(), cars.begin(), cars.end()));
  EXPECT_EQ(senses_of("CAR", g).size(), 1u);
  EXPECT_EQ(senses_of("Gas Pedal", g).size(), 1u);
}

TEST(SensesOf, SpansAllPosOfTheFirstForm) {
  testing::GraphRecipe r;
  r.senses = {{"run-n", Pos::noun}, {"run-v", Pos::verb}};
  r.lemmas = {{"run", 0}, {"run", 1}};
  const auto g = r.build();
  EXPECT_EQ(senses_of("running", g).size(), 2u);
  EXPECT_EQ(senses_of("runs", g).size(), 2u);
}

}  // namespace
}  // namespace semrel
