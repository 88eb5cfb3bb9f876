#include "alder/injection.hpp"

#include <algorithm>
#include <functional>

#include "alder/part_sets.hpp"

namespace alder {

TriangularIndex triangular_decompose(std::uint64_t m) {
  if (m < 1) throw InvalidArgument("triangular_decompose: requires m >= 1");
  std::uint64_t ell = 1;
  while ((ell + 1) * (ell + 2) / 2 <= m) ++ell;
  return {m, ell, m - ell * (ell + 1) / 2};
}

namespace {

std::size_t source_index(const EventuallyPeriodicSet& source, Part v) {
  auto idx = source.index_of(v);
  if (!idx) throw HypothesisViolation("part " + std::to_string(v) + " is not in " + source.describe());
  return *idx;
}

// Replace parts index-wise and pad with `unit` so the weight becomes
// |p| + extra.
Partition replace_indexed(const EventuallyPeriodicSet& source, const EventuallyPeriodicSet& target, Part unit,
                          const Partition& p, std::uint64_t extra) {
  if (unit < 1) throw InvalidArgument("padding unit must be >= 1");
  if (target.element_at(1) != unit)
    throw HypothesisViolation("first target element " + std::to_string(target.element_at(1)) +
                              " differs from the unit " + std::to_string(unit));
  std::vector<Partition::Run> runs;
  std::uint64_t surplus = extra;
  for (const auto& run : p.runs()) {
    std::size_t i = source_index(source, run.value);
    Part y = target.element_at(i);
    if (y % unit != 0)
      throw HypothesisViolation("target element " + std::to_string(y) + " at index " + std::to_string(i) +
                                " is not a multiple of " + std::to_string(unit));
    if (run.value < y)
      throw HypothesisViolation("source element " + std::to_string(run.value) + " is below target element " +
                                std::to_string(y) + " at index " + std::to_string(i));
    surplus += (run.value - y) * run.multiplicity;
    runs.push_back({y, run.multiplicity});
  }
  if (surplus % unit != 0)
    throw HypothesisViolation("weight surplus " + std::to_string(surplus) + " is not a multiple of " +
                              std::to_string(unit));
  Partition out = Partition::from_runs(std::move(runs));
  if (surplus > 0) out = out.with(unit, surplus / unit);
  return out;
}

Partition with_copies(Partition p, Part value, std::uint64_t copies) {
  return copies == 0 ? p : p.with(value, copies);
}

}  // namespace

Partition replace_and_pad(const EventuallyPeriodicSet& source, const EventuallyPeriodicSet& target, Part unit,
                          const Partition& p) {
  if (unit < 1) throw InvalidArgument("replace_and_pad: unit must be >= 1");
  if (p.weight() % unit != 0)
    throw InvalidArgument("replace_and_pad: weight " + std::to_string(p.weight()) + " is not a multiple of " +
                          std::to_string(unit));
  return replace_indexed(source, target, unit, p, 0);
}

// ---------------------------------------------------------------------------

bool BridgeUniverse::admits(const Partition& p) const { return rejection(p).empty(); }

std::string BridgeUniverse::rejection(const Partition& p) const {
  for (const auto& run : p.runs()) {
    if (free_parts.contains(run.value)) continue;
    if (distinct_residue && run.value % (2 * d) == *distinct_residue % (2 * d)) {
      if (run.multiplicity > 1) return "part " + std::to_string(run.value) + " repeated but must be distinct";
      continue;
    }
    return "part " + std::to_string(run.value) + " is outside the bridge universe";
  }
  return {};
}

BridgeUniverse bridge_universe(Part d) {
  unsigned r = shift_exponent(d);
  if (bridge_kind_for(d) == BridgeKind::Full) {
    if (r < 2) throw InvalidArgument("bridge_universe: requires d >= 3");
    return {d, r, BridgeKind::Full, build_ladder(d, r - 1, {}), std::nullopt};
  }
  if (r < 4) throw InvalidArgument("bridge_universe: requires floor(log2(d+1)) >= 4");
  return {d, r, BridgeKind::Mixed, build_ladder(d, r - 2, {}), d + (Part{1} << (r - 1))};
}

const char* to_string(ShiftBranch b) {
  switch (b) {
    case ShiftBranch::Direct: return "direct";
    case ShiftBranch::AllOnes: return "all-ones";
    case ShiftBranch::Marked: return "marked";
    case ShiftBranch::PairAllOnes: return "pair-all-ones";
    case ShiftBranch::PairMarked: return "pair-marked";
  }
  return "?";
}

namespace {

void require_dominated(const EventuallyPeriodicSet& source, const EventuallyPeriodicSet& target) {
  auto dom = dominates_all(source, target);
  if (!dom.holds || !dom.gain_ok) {
    std::string where = dom.first_failure ? " (first failure at index " + std::to_string(*dom.first_failure) + ")"
                                          : " (per-period gain too small)";
    throw HypothesisViolation("target " + target.describe() + " is not dominated by " + source.describe() + where);
  }
}

Part shift_guard(Part d) {
  bool full = is_power_of_two(d + 1);
  if (full ? d < 127 : d <= 127)
    throw HypothesisViolation("shift injection: requires d > 127, or d = 2^r - 1 >= 127; got d = " +
                              std::to_string(d));
  return d;
}

}  // namespace

ShiftInjector::ShiftInjector(Part d)
    : d_(shift_guard(d)),
      r_(shift_exponent(d)),
      source_(build_S_shift2(d)),
      target_(build_T_r(d, r_, {d + 4, d + 8})),
      universe_(bridge_universe(d)) {
  require_dominated(source_, target_);
}

std::int64_t ShiftInjector::padding_for_index(std::size_t m) const {
  auto t = triangular_decompose(m);
  auto x = static_cast<std::int64_t>(source_.element_at(m));
  auto dd = static_cast<std::int64_t>(d_);
  return dd + x - (dd + 4) * static_cast<std::int64_t>(t.ell) - 4 * static_cast<std::int64_t>(t.j);
}

ShiftImage ShiftInjector::apply(const PairDecomposition& pair) const {
  const Partition& mu = pair.mu;
  for (const auto& run : mu.runs()) source_index(source_, run.value);
  if (pair.pi.empty()) return {replace_and_pad(source_, target_, 1, mu), ShiftBranch::Direct};
  if (pair.pi != Partition::from_parts({d_}))
    throw HypothesisViolation("shift injection: pi must be empty or (" + std::to_string(d_) + "), got " +
                              pair.pi.to_string());
  const std::uint64_t n = pair.weight();
  Part smallest = mu.smallest_above(1);
  if (smallest == 0) {
    if (n < d_ + 4)
      throw HypothesisViolation("shift injection: weight " + std::to_string(n) + " is below d+4");
    return {with_copies(Partition::from_parts({d_ + 4}), 1, n - d_ - 4), ShiftBranch::AllOnes};
  }
  std::size_t m = source_index(source_, smallest);
  auto t = triangular_decompose(m);
  std::int64_t pad = padding_for_index(m);
  if (pad < 0)
    throw HypothesisViolation("shift injection: negative padding " + std::to_string(pad) + " at index " +
                              std::to_string(m));
  Partition out = replace_and_pad(source_, target_, 1, mu.without(smallest));
  out = with_copies(out, high_marker(), t.j);
  out = with_copies(out, low_marker(), t.ell - t.j);
  out = with_copies(out, 1, static_cast<std::uint64_t>(pad));
  return {out, ShiftBranch::Marked};
}

Partition shift_injection(Part d, const PairDecomposition& pair) { return ShiftInjector(d)(pair); }

// ---------------------------------------------------------------------------

namespace {

Part alpha_guard(Part d, Part alpha, AlphaShiftInjector::Bounds bounds) {
  if (alpha < 3) throw HypothesisViolation("alpha shift injection: requires alpha >= 3");
  if (d < 4 * alpha) throw HypothesisViolation("alpha shift injection: requires d >= 4 alpha");
  if (bounds == AlphaShiftInjector::Bounds::Theorem && d < 4095)
    throw HypothesisViolation("alpha shift injection: requires d >= 2^12 - 1; got d = " + std::to_string(d));
  if (shift_exponent(d) < 6)
    throw HypothesisViolation("alpha shift injection: d+16 must lie on the residue ladder (d >= 63)");
  return d;
}

}  // namespace

AlphaShiftInjector::AlphaShiftInjector(Part d, Part alpha, Bounds bounds)
    : d_(alpha_guard(d, alpha, bounds)),
      alpha_(alpha),
      r_(shift_exponent(d)),
      source_(build_S_shift_alpha(d, alpha)),
      target_(build_T_r(d, r_, {d + 2, d + 4, d + 8, d + 16})),
      universe_(bridge_universe(d)) {
  require_dominated(source_, target_);
}

std::pair<Part, Part> AlphaShiftInjector::markers_for_single(Part special_part) const {
  if (special_part == low_special()) return {d_ + 2, d_ + 8};
  if (special_part == high_special()) return {d_ + 4, d_ + 16};
  throw HypothesisViolation("alpha shift injection: " + std::to_string(special_part) + " is not a special part");
}

std::pair<Part, Part> AlphaShiftInjector::markers_for_pair_index(std::size_t m) const {
  return m % 2 == 0 ? std::pair<Part, Part>{d_ + 2, d_ + 8} : std::pair<Part, Part>{d_ + 4, d_ + 16};
}

namespace {

std::int64_t marker_padding(std::int64_t budget, std::uint64_t tri_index, std::pair<Part, Part> lambda) {
  auto t = triangular_decompose(tri_index);
  return budget - static_cast<std::int64_t>(t.j * lambda.second) -
         static_cast<std::int64_t>((t.ell - t.j) * lambda.first);
}

}  // namespace

std::int64_t AlphaShiftInjector::pair_padding_for_index(std::size_t m) const {
  if (m < 2) throw HypothesisViolation("alpha shift injection: pair index must be >= 2");
  auto budget = static_cast<std::int64_t>(low_special() + high_special() + source_.element_at(m)) -
                static_cast<std::int64_t>(universe_.top_marker());
  return marker_padding(budget, m / 2, markers_for_pair_index(m));
}

std::int64_t AlphaShiftInjector::single_padding_for_index(Part special_part, std::size_t m) const {
  auto budget = static_cast<std::int64_t>(special_part + source_.element_at(m));
  return marker_padding(budget, m, markers_for_single(special_part));
}

ShiftImage AlphaShiftInjector::apply(const PairDecomposition& pair) const {
  const Partition& mu = pair.mu;
  for (const auto& run : mu.runs()) source_index(source_, run.value);
  if (pair.pi.empty()) return {replace_and_pad(source_, target_, 1, mu), ShiftBranch::Direct};

  const std::uint64_t n = pair.weight();
  const Partition both = Partition::from_parts({high_special(), low_special()});
  Part smallest = mu.smallest_above(1);

  auto finish = [&](Partition head, std::size_t m, std::uint64_t tri_index, std::pair<Part, Part> lambda,
                    std::int64_t pad) {
    if (pad < 0)
      throw HypothesisViolation("alpha shift injection: negative padding " + std::to_string(pad) + " at index " +
                                std::to_string(m));
    auto t = triangular_decompose(tri_index);
    Partition out = replace_and_pad(source_, target_, 1, mu.without(smallest)).merged(head);
    out = with_copies(out, lambda.second, t.j);
    out = with_copies(out, lambda.first, t.ell - t.j);
    return with_copies(out, 1, static_cast<std::uint64_t>(pad));
  };

  if (pair.pi == both) {
    Part marker = universe_.top_marker();
    if (smallest == 0) {
      if (n < marker) throw HypothesisViolation("alpha shift injection: weight is below d+2^(r-1)");
      return {with_copies(Partition::from_parts({marker}), 1, n - marker), ShiftBranch::PairAllOnes};
    }
    std::size_t m = source_index(source_, smallest);
    if (m / 2 == 0) throw HypothesisViolation("alpha shift injection: pair index m' = 0");
    return {finish(Partition::from_parts({marker}), m, m / 2, markers_for_pair_index(m), pair_padding_for_index(m)),
            ShiftBranch::PairMarked};
  }

  if (pair.pi.num_parts() != 1)
    throw HypothesisViolation("alpha shift injection: pi " + pair.pi.to_string() + " is not on the menu");
  Part special = pair.pi.largest();
  auto lambda = markers_for_single(special);
  if (smallest == 0) {
    if (n < lambda.first) throw HypothesisViolation("alpha shift injection: weight is below the marker part");
    return {with_copies(Partition::from_parts({lambda.first}), 1, n - lambda.first), ShiftBranch::AllOnes};
  }
  std::size_t m = source_index(source_, smallest);
  return {finish(Partition{}, m, m, lambda, single_padding_for_index(special, m)), ShiftBranch::Marked};
}

Partition alpha_shift_injection(Part d, Part alpha, const PairDecomposition& pair) {
  return AlphaShiftInjector(d, alpha)(pair);
}

// ---------------------------------------------------------------------------

namespace {

void require_lift_params(Part d) {
  if (d < 4 || d % 2 != 0) throw InvalidArgument("odd-to-even lift: requires even d >= 4");
}

}  // namespace

Partition odd_to_even_lift(Part d, const Partition& p) {
  require_lift_params(d);
  if (p.weight() % 2 == 0) throw InvalidArgument("odd-to-even lift: weight must be odd");
  auto source = CongruenceSpec(2, d).universe();
  auto target = CongruenceSpec(2, d - 1).universe();
  return replace_indexed(source, target, 2, p, 1);
}

std::vector<ReplacePadInstance> replace_pad_instances() {
  return {
      {"two-mod-three", EventuallyPeriodicSet(3, {2}), EventuallyPeriodicSet(2, {0}), 2},
      {"andrews-15", EventuallyPeriodicSet(18, {1, 17}), EventuallyPeriodicSet(30, {1, 17, 19, 23}), 1},
      {"level2-d10", CongruenceSpec(2, 10).universe(), CongruenceSpec(2, 9).universe(), 2},
  };
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

constexpr std::size_t kMaxRecorded = 16;

void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

std::string key_of(const Partition& p) {
  std::string k;
  for (const auto& run : p.runs()) {
    put_varint(k, run.value);
    put_varint(k, run.multiplicity);
  }
  return k;
}

void record(InjectionCertificate& cert, std::string reason, std::string input, std::string image) {
  if (cert.counterexamples.size() < kMaxRecorded)
    cert.counterexamples.push_back({std::move(reason), std::move(input), std::move(image)});
}

void check_distinct(InjectionCertificate& cert, std::vector<std::string>& keys) {
  std::sort(keys.begin(), keys.end());
  auto dup = std::adjacent_find(keys.begin(), keys.end());
  if (dup != keys.end()) {
    cert.images_distinct = false;
    std::size_t repeats = 0;
    for (std::size_t i = 1; i < keys.size(); ++i) repeats += keys[i] == keys[i - 1];
    record(cert, std::to_string(repeats) + " image(s) repeat an earlier image", "", "");
  }
}

void check_target_count(InjectionCertificate& cert) {
  if (cert.target_count && to_count(cert.domain_size) > *cert.target_count)
    record(cert, "domain size " + std::to_string(cert.domain_size) + " exceeds target count " +
                     to_string(*cert.target_count),
           "", "");
}

// Index-wise replace-and-pad over every partition of `weight` into source
// parts, without materializing Partition objects.
void certify_indexed(InjectionCertificate& cert, const EventuallyPeriodicSet& source,
                     const EventuallyPeriodicSet& target, Part unit, std::uint64_t weight, std::uint64_t extra,
                     EnumerationCap cap) {
  std::vector<Part> xs = source.members_up_to(weight);
  const std::size_t k = xs.size();
  std::vector<Part> ys(k);
  std::vector<std::string> index_problem(k);
  for (std::size_t i = 0; i < k; ++i) {
    ys[i] = target.element_at(i + 1);
    if (ys[i] % unit != 0)
      index_problem[i] = "target element " + std::to_string(ys[i]) + " at index " + std::to_string(i + 1) +
                         " is not a multiple of the unit";
    else if (xs[i] < ys[i])
      index_problem[i] = "source element " + std::to_string(xs[i]) + " is below target element " +
                         std::to_string(ys[i]) + " at index " + std::to_string(i + 1);
    else if (!target.contains(ys[i]))
      index_problem[i] = "image part " + std::to_string(ys[i]) + " outside target";
  }
  if (target.element_at(1) != unit) {
    cert.image_valid = false;
    record(cert, "first target element differs from the padding unit", "", "");
    return;
  }

  std::vector<std::uint64_t> counts(k, 0);
  std::vector<std::string> keys;
  auto describe = [&](bool image, std::uint64_t pad) {
    std::vector<Partition::Run> runs;
    for (std::size_t i = k; i-- > 0;) {
      std::uint64_t c = counts[i] + (image && i == 0 ? pad : 0);
      if (c) runs.push_back({image ? ys[i] : xs[i], c});
    }
    return Partition::from_runs(std::move(runs)).to_string();
  };
  auto leaf = [&]() {
    if (++cert.domain_size > cap.max_items)
      throw CapExceeded("injection domain exceeded cap of " + std::to_string(cap.max_items));
    std::uint64_t sum_y = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!counts[i]) continue;
      if (!index_problem[i].empty()) {
        cert.image_valid = false;
        record(cert, index_problem[i], describe(false, 0), "");
        return;
      }
      sum_y += counts[i] * ys[i];
    }
    std::uint64_t total = weight + extra;
    if (sum_y > total || (total - sum_y) % unit != 0) {
      cert.weight_ok = false;
      record(cert, "image weight cannot be padded to " + std::to_string(total), describe(false, 0), "");
      return;
    }
    std::uint64_t pad = (total - sum_y) / unit;
    std::string key;
    std::size_t last = 0;
    for (std::size_t i = 0; i < k; ++i) {
      std::uint64_t c = counts[i] + (i == 0 ? pad : 0);
      if (!c) continue;
      put_varint(key, i - last);
      put_varint(key, c);
      last = i;
    }
    keys.push_back(std::move(key));
  };
  std::function<void(std::size_t, std::uint64_t)> descend = [&](std::size_t i, std::uint64_t rem) {
    if (i == 0) {
      if (rem % xs[0] != 0) return;
      counts[0] = rem / xs[0];
      leaf();
      counts[0] = 0;
      return;
    }
    for (std::uint64_t c = rem / xs[i];; --c) {
      counts[i] = c;
      descend(i - 1, rem - c * xs[i]);
      if (c == 0) break;
    }
    counts[i] = 0;
  };
  if (weight == 0 || k == 0) {
    if (weight == 0) leaf();
  } else {
    descend(k - 1, weight);
  }
  check_distinct(cert, keys);
}

template <typename Injector>
void certify_pairs(InjectionCertificate& cert, const Injector& inj, const std::vector<PairDecomposition>& pairs,
                   const std::function<std::string(const ShiftImage&)>& separation) {
  std::vector<std::string> keys;
  keys.reserve(pairs.size());
  for (const auto& pair : pairs) {
    ++cert.domain_size;
    std::string input = pair.pi.to_string() + " + " + pair.mu.to_string();
    ShiftImage img;
    try {
      img = inj.apply(pair);
    } catch (const HypothesisViolation& e) {
      cert.image_valid = false;
      record(cert, e.what(), input, "");
      continue;
    }
    ++cert.branch_counts[to_string(img.branch)];
    if (img.image.weight() != pair.weight()) {
      cert.weight_ok = false;
      record(cert, "weight changed", input, img.image.to_string());
    }
    std::string why = inj.universe().rejection(img.image);
    if (why.empty()) why = separation(img);
    if (!why.empty()) {
      cert.image_valid = false;
      record(cert, why, input, img.image.to_string());
    }
    keys.push_back(key_of(img.image));
  }
  check_distinct(cert, keys);
}

bool has_any(const Partition& p, std::initializer_list<Part> values) {
  for (Part v : values)
    if (p.multiplicity(v) > 0) return true;
  return false;
}

}  // namespace

InjectionCertificate certify_replace_and_pad(const EventuallyPeriodicSet& source, const EventuallyPeriodicSet& target,
                                             Part unit, std::uint64_t weight, EnumerationCap cap) {
  if (unit < 1 || weight % unit != 0)
    throw InvalidArgument("certify_replace_and_pad: weight must be a multiple of the unit");
  InjectionCertificate cert;
  cert.kind = "phi";
  cert.parameters = {{"unit", static_cast<std::int64_t>(unit)}};
  cert.n = weight;
  certify_indexed(cert, source, target, unit, weight, 0, cap);
  cert.target_count = count_from_set(target, weight);
  check_target_count(cert);
  return cert;
}

InjectionCertificate certify_shift(Part d, std::uint64_t n, EnumerationCap cap) {
  ShiftInjector inj(d);
  InjectionCertificate cert;
  cert.kind = "psi-shift2";
  cert.parameters = {{"d", static_cast<std::int64_t>(d)}, {"r", inj.r()}};
  cert.n = n;
  auto pairs = enumerate_pairs(LevelPairs{1, d - 2}, n, cap);
  certify_pairs(cert, inj, pairs, [&](const ShiftImage& img) -> std::string {
    bool marked = has_any(img.image, {inj.low_marker(), inj.high_marker()});
    if (img.branch == ShiftBranch::Direct && marked) return "direct image carries a marker part";
    if (img.branch != ShiftBranch::Direct && !marked) return "special-part image carries no marker part";
    return {};
  });
  cert.target_count = bridge_series(d, n)[n];
  check_target_count(cert);
  return cert;
}

InjectionCertificate certify_alpha_shift(Part d, Part alpha, std::uint64_t n, EnumerationCap cap,
                                         AlphaShiftInjector::Bounds bounds) {
  AlphaShiftInjector inj(d, alpha, bounds);
  InjectionCertificate cert;
  cert.kind = "psi-shift-alpha";
  cert.parameters = {{"d", static_cast<std::int64_t>(d)},
                     {"alpha", static_cast<std::int64_t>(alpha)},
                     {"r", inj.r()}};
  cert.n = n;
  auto pairs = enumerate_pairs(AlphaShiftPairs{d, alpha}, n, cap);
  const Part top = inj.universe().top_marker();
  certify_pairs(cert, inj, pairs, [&](const ShiftImage& img) -> std::string {
    bool lambda = has_any(img.image, {d + 2, d + 4, d + 8, d + 16});
    bool marker = img.image.multiplicity(top) > 0;
    switch (img.branch) {
      case ShiftBranch::Direct:
        if (lambda || marker) return "direct image carries a marker part";
        break;
      case ShiftBranch::AllOnes:
      case ShiftBranch::Marked:
        if (!lambda) return "single special part image carries no marker part";
        if (marker) return "single special part image carries the top marker";
        break;
      case ShiftBranch::PairAllOnes:
      case ShiftBranch::PairMarked:
        if (!marker) return "pair image carries no top marker";
        break;
    }
    return {};
  });
  cert.target_count = bridge_series(d, n)[n];
  check_target_count(cert);
  return cert;
}

InjectionCertificate certify_odd_to_even_lift(Part d, std::uint64_t odd_weight, EnumerationCap cap) {
  require_lift_params(d);
  if (odd_weight % 2 == 0) throw InvalidArgument("certify_odd_to_even_lift: weight must be odd");
  InjectionCertificate cert;
  cert.kind = "beta-lift";
  cert.parameters = {{"d", static_cast<std::int64_t>(d)}};
  cert.n = odd_weight;
  auto source = CongruenceSpec(2, d).universe();
  auto target = CongruenceSpec(2, d - 1).universe();
  certify_indexed(cert, source, target, 2, odd_weight, 1, cap);
  cert.target_count = count_from_set(target, odd_weight + 1);
  check_target_count(cert);
  return cert;
}

}  // namespace alder
