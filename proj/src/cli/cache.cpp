#include "alder/cli/cache.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace alder::cli {

namespace {

constexpr char kMagic[8] = {'A', 'L', 'D', 'R', 'C', 'A', 'C', 'H'};
constexpr std::size_t kHeaderBytes = 8 + 4 + 1 + 1 + 8 + 8 + 8 + 8;

std::uint64_t fnv1a(const char* data, std::size_t len) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 0x100000001b3ULL;
  }
  return h;
}

template <typename T>
void put_be(std::string& out, T v) {
  for (int shift = (sizeof(T) - 1) * 8; shift >= 0; shift -= 8) out.push_back(static_cast<char>((v >> shift) & 0xff));
}

template <typename T>
T get_be(const char* p) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v = static_cast<T>((v << 8) | static_cast<unsigned char>(p[i]));
  return v;
}

void put_count(std::string& out, const Count& c) {
  out.push_back(c < 0 ? 1 : 0);
  std::size_t len = 0;
  std::string bytes;
  if (c != 0) {
    bytes.resize((mpz_sizeinbase(c.get_mpz_t(), 2) + 7) / 8);
    mpz_export(bytes.data(), &len, 1, 1, 1, 0, c.get_mpz_t());
    bytes.resize(len);
  }
  put_be<std::uint32_t>(out, static_cast<std::uint32_t>(bytes.size()));
  out += bytes;
}

// Parses `length` counts from [p, end); returns false on any framing error.
bool get_counts(const char* p, const char* end, std::uint64_t length, std::vector<Count>& out) {
  out.clear();
  out.reserve(length);
  for (std::uint64_t i = 0; i < length; ++i) {
    if (end - p < 5) return false;
    unsigned char sign = static_cast<unsigned char>(*p);
    if (sign > 1) return false;
    auto len = get_be<std::uint32_t>(p + 1);
    p += 5;
    if (static_cast<std::uint64_t>(end - p) < len) return false;
    Count c;
    if (len) mpz_import(c.get_mpz_t(), len, 1, 1, 1, 0, p);
    if (sign) c = -c;
    out.push_back(std::move(c));
    p += len;
  }
  return p == end;
}

}  // namespace

std::string describe(const CacheKey& key) {
  std::ostringstream os;
  os << (key.kind == CountKind::Gap ? "q" : (key.variant == Variant::Full ? "Q" : "Q-minus")) << "(a=" << key.a
     << ", d=" << key.d << ")";
  return os.str();
}

CountCache::CountCache(std::filesystem::path path) : path_(std::move(path)) {}

std::string CountCache::encode_entry(const CacheKey& key, const std::vector<Count>& values) {
  std::string payload;
  for (const auto& c : values) put_count(payload, c);
  std::string out(kMagic, sizeof(kMagic));
  put_be<std::uint32_t>(out, kVersion);
  out.push_back(static_cast<char>(key.kind));
  out.push_back(static_cast<char>(key.variant == Variant::Full ? 0 : 1));
  put_be<std::uint64_t>(out, key.a);
  put_be<std::uint64_t>(out, key.d);
  put_be<std::uint64_t>(out, values.size());
  put_be<std::uint64_t>(out, payload.size());
  out += payload;
  put_be<std::uint64_t>(out, fnv1a(out.data(), out.size()));
  return out;
}

Count fresh_count(const CacheKey& key, std::uint64_t n) {
  if (key.kind == CountKind::Gap) return count_gap(GapSpec(key.a, key.d), n);
  return count_congruence(CongruenceSpec(key.a, key.d, key.variant), n);
}

CacheLoadResult CountCache::load(std::size_t audit_samples) {
  CacheLoadResult res;
  entries_.clear();
  dirty_ = false;
  std::ifstream in(path_, std::ios::binary);
  if (!in) return res;
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const char* p = data.data();
  const char* end = p + data.size();
  std::size_t index = 0;
  auto warn = [&](const std::string& msg) {
    res.warnings.push_back("cache " + path_.string() + ", entry " + std::to_string(index) + ": " + msg);
  };
  while (p < end) {
    if (static_cast<std::size_t>(end - p) < kHeaderBytes || std::memcmp(p, kMagic, sizeof(kMagic)) != 0) {
      warn("unreadable header; ignoring the rest of the file");
      ++res.skipped;
      break;
    }
    const char* h = p + sizeof(kMagic);
    auto version = get_be<std::uint32_t>(h);
    auto kind = static_cast<unsigned char>(h[4]);
    auto variant = static_cast<unsigned char>(h[5]);
    auto a = get_be<std::uint64_t>(h + 6);
    auto d = get_be<std::uint64_t>(h + 14);
    auto length = get_be<std::uint64_t>(h + 22);
    auto payload_bytes = get_be<std::uint64_t>(h + 30);
    if (payload_bytes > static_cast<std::uint64_t>(end - p) - kHeaderBytes ||
        static_cast<std::uint64_t>(end - p) - kHeaderBytes - payload_bytes < 8) {
      warn("truncated entry; ignoring the rest of the file");
      ++res.skipped;
      break;
    }
    const char* start = p;
    const char* payload = p + kHeaderBytes;
    const char* checksum_at = payload + payload_bytes;
    p = checksum_at + 8;
    ++index;
    if (get_be<std::uint64_t>(checksum_at) != fnv1a(start, static_cast<std::size_t>(checksum_at - start))) {
      warn("checksum mismatch; skipped");
      ++res.skipped;
      continue;
    }
    if (version != kVersion) {
      warn("format version " + std::to_string(version) + " not understood; skipped");
      ++res.skipped;
      continue;
    }
    if (kind > 1 || variant > 1 || a < 1 || d < 1) {
      warn("invalid key; skipped");
      ++res.skipped;
      continue;
    }
    CacheKey key{static_cast<CountKind>(kind), variant ? Variant::ExcludeCoResidue : Variant::Full, a, d};
    std::vector<Count> values;
    if (length == 0 || !get_counts(payload, payload + payload_bytes, length, values)) {
      warn("malformed payload; skipped");
      ++res.skipped;
      continue;
    }
    if (key.kind == CountKind::Congruence && 2 * a >= d + 3) {
      warn("invalid key; skipped");
      ++res.skipped;
      continue;
    }
    auto& slot = entries_[key];
    if (values.size() > slot.size()) slot = std::move(values);
    ++res.loaded;
  }
  for (const auto& [key, values] : entries_) {
    const std::uint64_t last = values.size() - 1;
    std::vector<std::uint64_t> samples{last, last / 2, last / 3};
    samples.resize(std::min(samples.size(), audit_samples));
    for (auto n : samples) {
      if (fresh_count(key, n) != values[n])
        throw CacheIntegrityError("cache " + path_.string() + ": " + describe(key) + " disagrees with a fresh count at n=" +
                                  std::to_string(n));
    }
  }
  return res;
}

void CountCache::save() const {
  std::string data;
  for (const auto& [key, values] : entries_) data += encode_entry(key, values);
  auto tmp = path_;
  tmp += ".tmp";
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path_);
}

std::optional<std::vector<Count>> CountCache::lookup(const CacheKey& key, std::uint64_t max_n) const {
  auto it = entries_.find(key);
  if (it == entries_.end() || it->second.size() <= max_n) return std::nullopt;
  return std::vector<Count>(it->second.begin(), it->second.begin() + static_cast<std::ptrdiff_t>(max_n + 1));
}

void CountCache::store(const CacheKey& key, std::vector<Count> values) {
  auto& slot = entries_[key];
  if (values.size() > slot.size()) {
    slot = std::move(values);
    dirty_ = true;
  }
}

std::vector<Count> CachedCountSource::fetch(const CacheKey& key, std::uint64_t max_n) const {
  {
    std::lock_guard lock(mutex_);
    if (auto hit = cache_.lookup(key, max_n)) return *hit;
  }
  auto values = key.kind == CountKind::Gap ? CountSource::gap(key.a, key.d, max_n)
                                           : CountSource::congruence(key.a, key.d, key.variant, max_n);
  std::lock_guard lock(mutex_);
  cache_.store(key, values);
  return values;
}

std::vector<Count> CachedCountSource::gap(Part a, Part d, std::uint64_t max_n) const {
  return fetch({CountKind::Gap, Variant::Full, a, d}, max_n);
}

std::vector<Count> CachedCountSource::congruence(Part a, Part d, Variant variant, std::uint64_t max_n) const {
  return fetch({CountKind::Congruence, variant, a, d}, max_n);
}

}  // namespace alder::cli
