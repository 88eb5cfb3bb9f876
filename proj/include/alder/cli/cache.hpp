#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alder/common.hpp"
#include "alder/partition.hpp"
#include "alder/verifier.hpp"

namespace alder::cli {

enum class CountKind : std::uint8_t { Gap = 0, Congruence = 1 };

struct CacheKey {
  CountKind kind = CountKind::Gap;
  Variant variant = Variant::Full;
  Part a = 0;
  Part d = 0;
  auto operator<=>(const CacheKey&) const = default;
};

std::string describe(const CacheKey& key);

/// Cached values disagree with a fresh computation.
class CacheIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CacheLoadResult {
  std::size_t loaded = 0;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

/// Dense count arrays keyed by (kind, variant, a, d), stored as a sequence of
/// self-describing entries:
///
///   "ALDRCACH" | version u32 | kind u8 | variant u8 | a u64 | d u64 |
///   length u64 | payload bytes u64 | payload | FNV-1a checksum u64
///
/// All integers big-endian. The payload holds `length` counts, each as a sign
/// byte, a u32 byte length and the magnitude bytes.
class CountCache {
 public:
  static constexpr std::uint32_t kVersion = 1;

  explicit CountCache(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }

  /// Reads the file if it exists. Corrupt entries are skipped with a warning;
  /// a sampled recomputation that disagrees throws CacheIntegrityError.
  CacheLoadResult load(std::size_t audit_samples = 2);
  /// Writes to a temporary file next to the cache, then renames it over.
  void save() const;

  std::optional<std::vector<Count>> lookup(const CacheKey& key, std::uint64_t max_n) const;
  void store(const CacheKey& key, std::vector<Count> values);

  bool dirty() const { return dirty_; }
  const std::map<CacheKey, std::vector<Count>>& entries() const { return entries_; }

  static std::string encode_entry(const CacheKey& key, const std::vector<Count>& values);

 private:
  std::filesystem::path path_;
  std::map<CacheKey, std::vector<Count>> entries_;
  bool dirty_ = false;
};

/// Recomputes the count for key at n directly.
Count fresh_count(const CacheKey& key, std::uint64_t n);

class CachedCountSource : public CountSource {
 public:
  explicit CachedCountSource(CountCache& cache) : cache_(cache) {}

  std::vector<Count> gap(Part a, Part d, std::uint64_t max_n) const override;
  std::vector<Count> congruence(Part a, Part d, Variant variant, std::uint64_t max_n) const override;

 private:
  std::vector<Count> fetch(const CacheKey& key, std::uint64_t max_n) const;

  CountCache& cache_;
  mutable std::mutex mutex_;
};

}  // namespace alder::cli
