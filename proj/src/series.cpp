#include "alder/series.hpp"

#include <algorithm>

#include "alder/part_sets.hpp"

namespace alder {

TruncatedSeries::TruncatedSeries(std::size_t truncation) : coefficients_(truncation + 1, 0) {}

TruncatedSeries TruncatedSeries::one(std::size_t truncation) {
  TruncatedSeries s(truncation);
  s.coefficients_[0] = 1;
  return s;
}

TruncatedSeries TruncatedSeries::from_coefficients(std::vector<Count> coefficients) {
  if (coefficients.empty()) throw InvalidArgument("series needs at least the constant coefficient");
  TruncatedSeries s(0);
  s.coefficients_ = std::move(coefficients);
  return s;
}

TruncatedSeries& TruncatedSeries::divide_by_one_minus(Part e) {
  if (e == 0) throw InvalidArgument("series factor exponent must be positive");
  const std::size_t n_max = truncation();
  for (std::size_t n = e; n <= n_max; ++n) coefficients_[n] += coefficients_[n - e];
  return *this;
}

TruncatedSeries& TruncatedSeries::multiply_by_one_plus(Part e) {
  if (e == 0) throw InvalidArgument("series factor exponent must be positive");
  if (e > truncation()) return *this;
  for (std::size_t n = truncation(); n >= e; --n) coefficients_[n] += coefficients_[n - e];
  return *this;
}

TruncatedSeries& TruncatedSeries::multiply_by_one_minus(Part e) {
  if (e == 0) throw InvalidArgument("series factor exponent must be positive");
  if (e > truncation()) return *this;
  for (std::size_t n = truncation(); n >= e; --n) coefficients_[n] -= coefficients_[n - e];
  return *this;
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(), [](const Count& c) { return c == 0; });
}

bool TruncatedSeries::nonnegative() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(), [](const Count& c) { return c >= 0; });
}

namespace {

void require_same_truncation(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.truncation() != b.truncation())
    throw InvalidArgument("series truncation mismatch: " + std::to_string(a.truncation()) + " vs " +
                          std::to_string(b.truncation()));
}

}  // namespace

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_truncation(a, b);
  const std::size_t n_max = a.truncation();
  std::vector<Count> out(n_max + 1, 0);
  for (std::size_t i = 0; i <= n_max; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= n_max; ++j) {
      if (b[j] == 0) continue;
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return TruncatedSeries::from_coefficients(std::move(out));
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_truncation(a, b);
  std::vector<Count> out(a.coefficients().begin(), a.coefficients().end());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] += b[n];
  return TruncatedSeries::from_coefficients(std::move(out));
}

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_truncation(a, b);
  std::vector<Count> out(a.coefficients().begin(), a.coefficients().end());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] -= b[n];
  return TruncatedSeries::from_coefficients(std::move(out));
}

TruncatedSeries inv_product(std::span<const Part> exponents, std::size_t truncation) {
  auto s = TruncatedSeries::one(truncation);
  for (Part e : exponents) {
    if (e == 0) throw InvalidArgument("inv_product: exponents must be >= 1");
    if (e <= truncation) s.divide_by_one_minus(e);
  }
  return s;
}

TruncatedSeries inv_product(const EventuallyPeriodicSet& parts, std::size_t truncation) {
  auto members = parts.members_up_to(truncation);
  return inv_product(members, truncation);
}

TruncatedSeries neg_pochhammer(Part c, Part m, std::size_t truncation) {
  if (c < 1 || m < 1) throw InvalidArgument("neg_pochhammer: exponent and step must be >= 1");
  auto s = TruncatedSeries::one(truncation);
  for (Part e = c; e <= truncation; e += m) s.multiply_by_one_plus(e);
  return s;
}

namespace {

// Exponents a + k*step and b + k*step up to the truncation.
void push_progression(std::vector<Part>& out, Part start, Part step, std::size_t truncation) {
  for (Part e = start; e <= truncation; e += step) out.push_back(e);
}

std::vector<Part> ladder_exponents(Part d, unsigned top_power, std::size_t truncation) {
  std::vector<Part> exps;
  push_progression(exps, 1, 2 * d, truncation);
  for (unsigned k = 1; k <= top_power; ++k) push_progression(exps, d + (Part{1} << k), 2 * d, truncation);
  return exps;
}

}  // namespace

TruncatedSeries congruence_series(Part a, Part d, std::size_t truncation, ProductForm form) {
  if (a < 1 || d < 1 || 2 * a >= d + 3) throw InvalidArgument("congruence_series: requires a, d >= 1 and 2a < d+3");
  const Part m = d + 3;
  std::vector<Part> exps;
  if (form == ProductForm::Product) {
    push_progression(exps, a, m, truncation);
    push_progression(exps, m - a, m, truncation);
    return inv_product(exps, truncation);
  }
  push_progression(exps, a, m, truncation);
  push_progression(exps, 2 * m - a, m, truncation);
  exps.push_back(2 * (m - a));
  auto s = inv_product(exps, truncation);
  s.multiply_by_one_plus(m - a);
  return s;
}

TruncatedSeries mixed_bridge_series(Part d, std::size_t truncation) {
  unsigned r = shift_exponent(d);
  if (r < 4) throw InvalidArgument("mixed_bridge_series: requires r = floor(log2(d+1)) >= 4");
  auto s = inv_product(ladder_exponents(d, r - 2, truncation), truncation);
  for (Part e = d + (Part{1} << (r - 1)); e <= truncation; e += 2 * d) s.multiply_by_one_plus(e);
  return s;
}

TruncatedSeries full_bridge_series(Part d, std::size_t truncation) {
  if (!is_power_of_two(d + 1) || d < 3) throw InvalidArgument("full_bridge_series: requires d = 2^r - 1 with r >= 2");
  unsigned r = shift_exponent(d);
  return inv_product(ladder_exponents(d, r - 1, truncation), truncation);
}

BridgeKind bridge_kind_for(Part d) { return is_power_of_two(d + 1) ? BridgeKind::Full : BridgeKind::Mixed; }

TruncatedSeries bridge_series(Part d, std::size_t truncation) {
  return bridge_kind_for(d) == BridgeKind::Full ? full_bridge_series(d, truncation)
                                                : mixed_bridge_series(d, truncation);
}

}  // namespace alder
