#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace alder {

/// Partition counts and series coefficients. Never truncated.
using Count = mpz_class;

/// A part size or a weight.
using Part = std::uint64_t;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would produce more objects than the configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A map was applied outside the hypotheses under which it is defined.
class HypothesisViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct EnumerationCap {
  std::size_t max_items = 1'000'000;
};

inline std::string to_string(const Count& c) { return c.get_str(); }

inline Count to_count(std::uint64_t v) {
  Count c;
  mpz_import(c.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return c;
}

/// floor(log2(v)) for v >= 1.
inline unsigned floor_log2(std::uint64_t v) {
  unsigned r = 0;
  while (v >>= 1) ++r;
  return r;
}

inline bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace alder
