#include "semrel/store.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>

#include "semrel/error.hpp"
#include "semrel/pathfinder.hpp"

namespace semrel {
namespace {

constexpr char kMagic[8] = {'S', 'R', 'P', 'A', 'I', 'R', 'S', '1'};

template <typename T>
void put(std::vector<unsigned char>& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

template <typename T>
T get(const unsigned char* p) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(p[i]) << (8 * i);
  return v;
}

CacheHeader parse_header(const unsigned char* p) {
  if (std::memcmp(p, kMagic, sizeof kMagic) != 0) throw DataError("not a pair cache (bad magic)");
  CacheHeader h;
  h.version = get<std::uint32_t>(p + 8);
  if (h.version != 1) throw DataError("unsupported pair cache version " + std::to_string(h.version));
  h.measure = get<std::uint32_t>(p + 12);
  h.fingerprint = get<std::uint64_t>(p + 16);
  h.budget = get<std::uint64_t>(p + 24);
  h.record_count = get<std::uint64_t>(p + 32);
  h.seeded = p[40] != 0;
  h.complete = p[41] != 0;
  return h;
}

CacheRecord parse_record(const unsigned char* p) {
  return {get<std::uint32_t>(p), get<std::uint32_t>(p + 4), std::bit_cast<double>(get<std::uint64_t>(p + 8))};
}

bool key_less(const CacheRecord& r, std::pair<SenseIndex, SenseIndex> key) {
  return std::tie(r.lo, r.hi) < std::tie(key.first, key.second);
}

void check_fingerprint(const CacheHeader& h, const Thesaurus& graph) {
  if (h.fingerprint != graph.fingerprint())
    throw DataError("pair cache was built for a different thesaurus (fingerprint mismatch)");
}

}  // namespace

PairCache::PairCache(CacheHeader header, std::vector<CacheRecord> records)
    : header_(header), records_(std::move(records)) {
  header_.record_count = records_.size();
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (r.lo >= r.hi) throw DataError("pair cache record " + std::to_string(i) + " has lo >= hi");
    if (!(r.value >= 0.0 && r.value <= 1.0)) throw DataError("pair cache record " + std::to_string(i) + " outside [0,1]");
    if (i > 0 && !key_less(records_[i - 1], {r.lo, r.hi}))
      throw DataError("pair cache records not strictly sorted at " + std::to_string(i));
  }
}

std::vector<unsigned char> PairCache::serialize() const {
  std::vector<unsigned char> out(std::begin(kMagic), std::end(kMagic));
  out.reserve(kCacheHeaderSize + kCacheRecordSize * records_.size());
  put(out, header_.version);
  put(out, header_.measure);
  put(out, header_.fingerprint);
  put(out, header_.budget);
  put<std::uint64_t>(out, records_.size());
  out.push_back(header_.seeded ? 1 : 0);
  out.push_back(header_.complete ? 1 : 0);
  out.resize(kCacheHeaderSize, 0);
  for (const auto& r : records_) {
    put(out, r.lo);
    put(out, r.hi);
    put(out, std::bit_cast<std::uint64_t>(r.value));
  }
  return out;
}

PairCache PairCache::deserialize(std::span<const unsigned char> bytes) {
  if (bytes.size() < kCacheHeaderSize) throw DataError("pair cache truncated (header)");
  CacheHeader h = parse_header(bytes.data());
  if (bytes.size() != kCacheHeaderSize + kCacheRecordSize * h.record_count)
    throw DataError("pair cache size does not match record count");
  std::vector<CacheRecord> records;
  records.reserve(h.record_count);
  for (std::size_t i = 0; i < h.record_count; ++i)
    records.push_back(parse_record(bytes.data() + kCacheHeaderSize + kCacheRecordSize * i));
  return PairCache(h, std::move(records));
}

void PairCache::write(const std::string& path) const {
  auto bytes = serialize();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed: " + path);
}

PairCache PairCache::read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

std::optional<double> PairCache::lookup(SenseIndex s1, SenseIndex s2) const {
  if (s1 == s2) return std::nullopt;
  const std::pair key{std::min(s1, s2), std::max(s1, s2)};
  auto it = std::lower_bound(records_.begin(), records_.end(), key, key_less);
  if (it == records_.end() || it->lo != key.first || it->hi != key.second) return std::nullopt;
  return it->value;
}

std::optional<double> PairCache::lookup(const Thesaurus& graph, SenseIndex s1, SenseIndex s2) const {
  check_fingerprint(header_, graph);
  return lookup(s1, s2);
}

PairCache precompute(const Thesaurus& graph, std::span<const SenseIndex> seeds, std::uint64_t budget) {
  if (budget < 1) throw std::invalid_argument("precompute budget must be >= 1");
  const std::size_t n = graph.size();

  // Connected components; the graph is inverse-closed, so edges are symmetric.
  std::vector<std::size_t> component(n, n);
  std::vector<std::vector<SenseIndex>> members;
  for (SenseIndex s = 0; s < n; ++s) {
    if (component[s] != n) continue;
    const std::size_t c = members.size();
    members.emplace_back();
    std::vector<SenseIndex> stack{s};
    component[s] = c;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      members[c].push_back(u);
      for (const Edge& e : graph.edges(u))
        if (component[e.target] == n) {
          component[e.target] = c;
          stack.push_back(e.target);
        }
    }
    std::sort(members[c].begin(), members[c].end());
  }

  std::vector<char> is_seed(n, seeds.empty() ? 1 : 0);
  for (SenseIndex s : seeds) {
    if (s >= n) throw std::out_of_range("seed sense not in graph");
    is_seed[s] = 1;
  }
  std::vector<std::vector<SenseIndex>> seeds_in(members.size());
  for (SenseIndex s = 0; s < n; ++s)
    if (is_seed[s]) seeds_in[component[s]].push_back(s);

  CacheHeader header;
  header.fingerprint = graph.fingerprint();
  header.budget = budget;
  header.seeded = !seeds.empty();
  header.complete = true;

  std::vector<CacheRecord> records;
  std::uint64_t computed = 0;
  for (SenseIndex lo = 0; lo < n && header.complete; ++lo) {
    const auto& pool = is_seed[lo] ? members[component[lo]] : seeds_in[component[lo]];
    auto first = std::upper_bound(pool.begin(), pool.end(), lo);
    if (first == pool.end()) continue;
    RelatednessSearch search(graph, lo, Measure::sr);
    for (auto it = first; it != pool.end(); ++it) {
      if (computed == budget) {
        header.complete = false;
        break;
      }
      ++computed;
      double v = search.to(*it).value;
      if (v > 0.0) records.push_back({lo, *it, v});
    }
  }
  return PairCache(header, std::move(records));
}

std::optional<double> lookup_in_file(const std::string& path, const Thesaurus& graph, SenseIndex s1, SenseIndex s2) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  unsigned char head[kCacheHeaderSize];
  if (!in.read(reinterpret_cast<char*>(head), sizeof head)) throw DataError("pair cache truncated (header)");
  CacheHeader h = parse_header(head);
  check_fingerprint(h, graph);
  if (s1 == s2) return std::nullopt;
  const std::pair key{std::min(s1, s2), std::max(s1, s2)};

  std::uint64_t lo = 0, hi = h.record_count;
  unsigned char buf[kCacheRecordSize];
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    in.seekg(static_cast<std::streamoff>(kCacheHeaderSize + kCacheRecordSize * mid));
    if (!in.read(reinterpret_cast<char*>(buf), sizeof buf)) throw DataError("pair cache truncated (records)");
    CacheRecord r = parse_record(buf);
    if (r.lo == key.first && r.hi == key.second) return r.value;
    if (key_less(r, key))
      lo = mid + 1;
    else
      hi = mid;
  }
  return std::nullopt;
}

VerifyReport verify_cache(const PairCache& cache, const Thesaurus& graph, std::size_t sample_size, std::uint64_t seed) {
  check_fingerprint(cache.header(), graph);
  VerifyReport report;
  const auto records = cache.records();
  std::vector<std::size_t> all(records.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::size_t> picked;
  std::mt19937_64 rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(picked), std::min(sample_size, records.size()), rng);

  for (std::size_t i : picked) {
    const auto& r = records[i];
    double live = max_relatedness(graph, r.lo, r.hi, Measure::sr).value;
    ++report.sampled;
    if (std::bit_cast<std::uint64_t>(live) != std::bit_cast<std::uint64_t>(r.value)) ++report.deviations;
    report.max_abs_deviation = std::max(report.max_abs_deviation, std::abs(live - r.value));
  }
  return report;
}

}  // namespace semrel
