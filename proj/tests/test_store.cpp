#include <gtest/gtest.h>

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "oracle.hpp"
#include "semrel/error.hpp"
#include "semrel/store.hpp"

namespace semrel {
namespace {

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

template <typename T>
void put_le(std::vector<unsigned char>& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

TEST(Precompute, ThreeSensesMatchLiveSearch) {
  const auto g = testing::three_synsets();
  const auto cache = precompute(g, {}, 1000);
  ASSERT_EQ(cache.size(), 1u);
  const auto dog = *g.find("d-n"), animal = *g.find("a-n"), run = *g.find("r-v");
  EXPECT_EQ(cache.lookup(dog, animal), max_relatedness(g, dog, animal).value);
  EXPECT_EQ(cache.lookup(animal, dog), cache.lookup(dog, animal));
  EXPECT_FALSE(cache.lookup(dog, run));
  EXPECT_FALSE(cache.lookup(dog, dog));
  EXPECT_TRUE(cache.absence_means_zero());
  EXPECT_EQ(cache.header().fingerprint, g.fingerprint());
}

TEST(Precompute, BudgetMustBePositive) {
  const auto g = testing::three_synsets();
  EXPECT_THROW(precompute(g, {}, 0), std::invalid_argument);
}

TEST(Precompute, DisconnectedGraphHasNoRecords) {
  testing::GraphRecipe r;
  r.senses = {{"a", Pos::noun}, {"b", Pos::verb}, {"c", Pos::adverb}};
  const auto cache = precompute(r.build(), {}, 10);
  EXPECT_EQ(cache.size(), 0u);
  EXPECT_TRUE(cache.header().complete);
}

TEST(Precompute, BudgetStopsEarlyAndMarksIncomplete) {
  const auto g = testing::vehicles();
  const auto cache = precompute(g, {}, 3);
  EXPECT_LE(cache.size(), 3u);
  EXPECT_FALSE(cache.header().complete);
  EXPECT_FALSE(cache.absence_means_zero());
}

TEST(Precompute, SeedsLimitScope) {
  const auto g = testing::vehicles();
  const SenseIndex car = *g.find("02958343-n");
  const std::vector<SenseIndex> seeds{car};
  const auto cache = precompute(g, seeds, 1'000'000);
  EXPECT_EQ(cache.size(), g.size() - 1);
  for (const auto& rec : cache.records()) EXPECT_TRUE(rec.lo == car || rec.hi == car);
  EXPECT_TRUE(cache.header().seeded);
  EXPECT_FALSE(cache.absence_means_zero());
}

TEST(PairCache, ByteLayout) {
  const double v = 0.25;
  const PairCache cache({1, 0, 0x0102030405060708ull, 77, 1, false, true}, {{2, 5, v}});
  std::vector<unsigned char> expected;
  for (char c : std::string("SRPAIRS1")) expected.push_back(static_cast<unsigned char>(c));
  put_le<std::uint32_t>(expected, 1);
  put_le<std::uint32_t>(expected, 0);
  put_le<std::uint64_t>(expected, 0x0102030405060708ull);
  put_le<std::uint64_t>(expected, 77);
  put_le<std::uint64_t>(expected, 1);
  expected.push_back(0);
  expected.push_back(1);
  expected.resize(kCacheHeaderSize, 0);
  put_le<std::uint32_t>(expected, 2);
  put_le<std::uint32_t>(expected, 5);
  put_le<std::uint64_t>(expected, std::bit_cast<std::uint64_t>(v));
  EXPECT_EQ(cache.serialize(), expected);
}

TEST(PairCache, RoundTripIsByteIdentical) {
  const auto g = testing::vehicles();
  const auto cache = precompute(g, {}, 1'000'000);
  const auto path = temp_file("semrel_store_roundtrip.bin");
  cache.write(path);
  const auto back = PairCache::read(path);
  EXPECT_EQ(back.serialize(), cache.serialize());
  EXPECT_EQ(std::filesystem::file_size(path), kCacheHeaderSize + kCacheRecordSize * cache.size());
  for (const auto& r : cache.records()) EXPECT_EQ(lookup_in_file(path, g, r.hi, r.lo), r.value);
  EXPECT_FALSE(lookup_in_file(path, g, 0, 0));
  std::remove(path.c_str());
}

TEST(PairCache, RejectsCorruptInput) {
  const auto g = testing::vehicles();
  auto bytes = precompute(g, {}, 1'000'000).serialize();
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(PairCache::deserialize(bad_magic), DataError);
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(PairCache::deserialize(truncated), DataError);
  EXPECT_THROW(PairCache::deserialize(std::span(bytes).first(10)), DataError);
  EXPECT_THROW(PairCache::read(temp_file("semrel_no_such_cache.bin")), DataError);
}

TEST(PairCache, FingerprintMismatchIsAnError) {
  const auto cache = precompute(testing::vehicles(), {}, 100);
  const auto other = testing::three_synsets();
  EXPECT_THROW(cache.lookup(other, 0, 1), DataError);
  EXPECT_THROW(verify_cache(cache, other, 10), DataError);
}

TEST(VerifyCache, CleanCacheAndTamperedRecord) {
  const auto g = testing::vehicles();
  const auto cache = precompute(g, {}, 1'000'000);
  const auto report = verify_cache(cache, g, 10'000);
  EXPECT_EQ(report.sampled, cache.size());
  EXPECT_EQ(report.deviations, 0u);
  EXPECT_EQ(report.max_abs_deviation, 0.0);

  std::vector<CacheRecord> records(cache.records().begin(), cache.records().end());
  records[0].value = std::nextafter(records[0].value, 1.0);
  const PairCache tampered(cache.header(), records);
  const auto bad = verify_cache(tampered, g, 10'000);
  EXPECT_EQ(bad.deviations, 1u);
  EXPECT_GT(bad.max_abs_deviation, 0.0);
}

TEST(VerifyCache, SampleIsClampedAndSeeded) {
  const auto g = testing::vehicles();
  const auto cache = precompute(g, {}, 1'000'000);
  EXPECT_EQ(verify_cache(cache, g, 5, 1).sampled, 5u);
  EXPECT_EQ(verify_cache(PairCache(cache.header(), {}), g, 5).sampled, 0u);
}

}  // namespace
}  // namespace semrel
