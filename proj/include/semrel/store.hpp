#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semrel/thesaurus.hpp"

namespace semrel {

/// On-disk layout (little-endian):
///
///   offset  size  field
///        0     8  magic "SRPAIRS1"
///        8     4  format version (1)
///       12     4  measure (0 = sr)
///       16     8  thesaurus fingerprint
///       24     8  budget (max pairs computed)
///       32     8  record count
///       40     1  seeded (0 = every sense was a seed)
///       41     1  complete (1 = every candidate pair within the seed scope
///                 was computed; absent pairs then have relatedness 0)
///       42     6  reserved, zero
///       48  16*n  records: lo u32, hi u32, value f64, sorted by (lo, hi)
struct CacheHeader {
  std::uint32_t version = 1;
  std::uint32_t measure = 0;
  std::uint64_t fingerprint = 0;
  std::uint64_t budget = 0;
  std::uint64_t record_count = 0;
  bool seeded = false;
  bool complete = false;
};

struct CacheRecord {
  SenseIndex lo;
  SenseIndex hi;
  double value;
};

inline constexpr std::size_t kCacheHeaderSize = 48;
inline constexpr std::size_t kCacheRecordSize = 16;

/// Sorted store of precomputed sense-pair SR values.
class PairCache {
 public:
  PairCache() = default;
  PairCache(CacheHeader header, std::vector<CacheRecord> records);

  static PairCache read(const std::string& path);
  void write(const std::string& path) const;
  std::vector<unsigned char> serialize() const;
  static PairCache deserialize(std::span<const unsigned char> bytes);

  const CacheHeader& header() const { return header_; }
  std::span<const CacheRecord> records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  /// Binary search on (min, max). A miss means "not stored"; identity pairs
  /// are never stored.
  std::optional<double> lookup(SenseIndex s1, SenseIndex s2) const;
  /// As above, after checking the graph fingerprint (DataError on mismatch).
  std::optional<double> lookup(const Thesaurus& graph, SenseIndex s1, SenseIndex s2) const;

  /// True when a miss for a distinct pair means relatedness 0.
  bool absence_means_zero() const { return !header_.seeded && header_.complete; }

 private:
  CacheHeader header_;
  std::vector<CacheRecord> records_;
};

/// Computes SR for connected pairs with at least one sense in `seeds`
/// (every sense when `seeds` is empty), in (lo, hi) order, stopping after
/// `budget` pairs. Unreachable pairs are not stored.
PairCache precompute(const Thesaurus& graph, std::span<const SenseIndex> seeds, std::uint64_t budget);

/// Binary search directly in a cache file, reading only the header and
/// O(log n) records.
std::optional<double> lookup_in_file(const std::string& path, const Thesaurus& graph, SenseIndex s1,
                                     SenseIndex s2);

struct VerifyReport {
  std::size_t sampled = 0;
  std::size_t deviations = 0;  // records whose stored bits differ from a live search
  double max_abs_deviation = 0.0;
};

/// Recomputes a uniform random sample of stored records. The sample is
/// clamped to the record count.
VerifyReport verify_cache(const PairCache& cache, const Thesaurus& graph, std::size_t sample_size,
                          std::uint64_t seed = 0);

}  // namespace semrel
