#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "alder/common.hpp"
#include "alder/periodic_set.hpp"

namespace alder {

/// Formal power series c_0 + c_1 q + ... + c_N q^N, exact signed coefficients.
/// Every operation ignores exponents above N.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t truncation);
  static TruncatedSeries one(std::size_t truncation);
  static TruncatedSeries from_coefficients(std::vector<Count> coefficients);

  std::size_t truncation() const { return coefficients_.size() - 1; }
  const Count& operator[](std::size_t n) const { return coefficients_.at(n); }
  std::span<const Count> coefficients() const { return coefficients_; }

  /// In-place factor updates.
  TruncatedSeries& divide_by_one_minus(Part exponent);  // * 1/(1 - q^e)
  TruncatedSeries& multiply_by_one_plus(Part exponent);  // * (1 + q^e)
  TruncatedSeries& multiply_by_one_minus(Part exponent);  // * (1 - q^e)

  bool is_zero() const;
  bool nonnegative() const;

  bool operator==(const TruncatedSeries&) const = default;

 private:
  std::vector<Count> coefficients_;
};

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);

/// prod over the listed exponents of 1/(1 - q^e). Repeated exponents give
/// repeated factors.
TruncatedSeries inv_product(std::span<const Part> exponents, std::size_t truncation);
TruncatedSeries inv_product(const EventuallyPeriodicSet& parts, std::size_t truncation);

/// prod_{k>=0} (1 + q^(c + k*m)): distinct parts congruent to c mod m.
TruncatedSeries neg_pochhammer(Part c, Part m, std::size_t truncation);

enum class ProductForm {
  /// 1/(q^a, q^(d+3-a); q^(d+3))_inf
  Product,
  /// (1 + q^(d+3-a)) / ((1 - q^(2d+6-2a)) (q^a, q^(2d+6-a); q^(d+3))_inf)
  Rewritten,
};

/// Generating function of Q_d^(a) in either product form.
TruncatedSeries congruence_series(Part a, Part d, std::size_t truncation, ProductForm form = ProductForm::Product);

/// (-q^(d+2^(r-1)); q^(2d))_inf / (q, q^(d+2), ..., q^(d+2^(r-2)); q^(2d))_inf
/// with r = floor(log2(d+1)). Requires r >= 4.
TruncatedSeries mixed_bridge_series(Part d, std::size_t truncation);

/// 1 / (q, q^(d+2), ..., q^(d+2^(r-1)); q^(2d))_inf for d = 2^r - 1, r >= 2.
TruncatedSeries full_bridge_series(Part d, std::size_t truncation);

enum class BridgeKind { Mixed, Full };

/// Full when d + 1 is a power of two, Mixed otherwise.
BridgeKind bridge_kind_for(Part d);
TruncatedSeries bridge_series(Part d, std::size_t truncation);

}  // namespace alder
