#include "alder/partition.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace alder {

// ---------------------------------------------------------------------------
// Partition

Partition Partition::from_parts(std::vector<Part> parts) {
  std::map<Part, std::uint64_t, std::greater<>> tally;
  for (Part p : parts) {
    if (p == 0) throw InvalidArgument("partition parts must be positive");
    ++tally[p];
  }
  std::vector<Run> runs;
  runs.reserve(tally.size());
  for (auto [value, mult] : tally) runs.push_back({value, mult});
  return from_runs(std::move(runs));
}

Partition Partition::from_runs(std::vector<Run> runs) {
  std::sort(runs.begin(), runs.end(), [](const Run& x, const Run& y) { return x.value > y.value; });
  Partition out;
  for (const Run& r : runs) {
    if (r.value == 0) throw InvalidArgument("partition parts must be positive");
    if (r.multiplicity == 0) continue;
    if (!out.runs_.empty() && out.runs_.back().value == r.value) {
      out.runs_.back().multiplicity += r.multiplicity;
    } else {
      out.runs_.push_back(r);
    }
    out.weight_ += r.value * r.multiplicity;
  }
  return out;
}

std::vector<Part> Partition::parts() const {
  std::vector<Part> out;
  out.reserve(num_parts());
  for (const Run& r : runs_) out.insert(out.end(), r.multiplicity, r.value);
  return out;
}

std::uint64_t Partition::num_parts() const {
  std::uint64_t k = 0;
  for (const Run& r : runs_) k += r.multiplicity;
  return k;
}

std::uint64_t Partition::multiplicity(Part value) const {
  for (const Run& r : runs_)
    if (r.value == value) return r.multiplicity;
  return 0;
}

Part Partition::largest() const { return runs_.empty() ? 0 : runs_.front().value; }
Part Partition::smallest() const { return runs_.empty() ? 0 : runs_.back().value; }

Part Partition::smallest_above(Part floor) const {
  for (auto it = runs_.rbegin(); it != runs_.rend(); ++it)
    if (it->value > floor) return it->value;
  return 0;
}

Partition Partition::with(Part value, std::uint64_t copies) const {
  std::vector<Run> runs = runs_;
  runs.push_back({value, copies});
  return from_runs(std::move(runs));
}

Partition Partition::without(Part value, std::uint64_t copies) const {
  std::vector<Run> runs = runs_;
  for (Run& r : runs) {
    if (r.value != value) continue;
    if (r.multiplicity < copies) break;
    r.multiplicity -= copies;
    return from_runs(std::move(runs));
  }
  throw InvalidArgument("partition does not contain " + std::to_string(copies) + " copies of " +
                        std::to_string(value));
}

Partition Partition::merged(const Partition& other) const {
  std::vector<Run> runs = runs_;
  runs.insert(runs.end(), other.runs_.begin(), other.runs_.end());
  return from_runs(std::move(runs));
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (const Run& r : runs_) {
    if (!first) os << ',';
    first = false;
    os << r.value;
    if (r.multiplicity > 1) os << '^' << r.multiplicity;
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// Specs

GapSpec::GapSpec(Part level, Part gap) : level(level), gap(gap) {
  if (level < 1) throw InvalidArgument("gap spec: level a must be >= 1");
  if (gap < 1) throw InvalidArgument("gap spec: difference d must be >= 1");
}

bool GapSpec::admits(const Partition& p) const {
  Part previous = 0;
  for (const auto& r : p.runs()) {
    if (r.multiplicity > 1) return false;
    if (previous != 0 && previous - r.value < gap) return false;
    previous = r.value;
  }
  return p.empty() || p.smallest() >= level;
}

CongruenceSpec::CongruenceSpec(Part residue, Part d, Variant variant) : residue(residue), d(d), variant(variant) {
  if (residue < 1) throw InvalidArgument("congruence spec: residue a must be >= 1");
  if (d < 1) throw InvalidArgument("congruence spec: d must be >= 1");
  if (2 * residue >= d + 3) throw InvalidArgument("congruence spec: requires 2a < d+3");
}

bool CongruenceSpec::allows(Part part) const {
  if (part == 0) return false;
  Part r = part % modulus();
  if (r != residue && r != co_residue()) return false;
  return !(variant == Variant::ExcludeCoResidue && part == co_residue());
}

EventuallyPeriodicSet CongruenceSpec::universe() const {
  std::vector<Part> excludes;
  if (variant == Variant::ExcludeCoResidue) excludes.push_back(co_residue());
  return EventuallyPeriodicSet(modulus(), {residue, co_residue()}, {}, excludes);
}

// ---------------------------------------------------------------------------
// Counting

std::vector<Count> parts_at_most_counts(std::uint64_t k, std::uint64_t max_n) {
  std::vector<Count> c(max_n + 1, 0);
  c[0] = 1;
  for (std::uint64_t part = 1; part <= k && part <= max_n; ++part)
    for (std::uint64_t n = part; n <= max_n; ++n) c[n] += c[n - part];
  return c;
}

Count count_parts_at_most(std::uint64_t k, std::uint64_t n) {
  if (k < 1) throw InvalidArgument("count_parts_at_most: k must be >= 1");
  return parts_at_most_counts(k, n)[n];
}

std::vector<Count> gap_counts(const GapSpec& spec, std::uint64_t max_n) {
  // A k-part gap partition minus the staircase (a+(k-1)d, ..., a+d, a) is a
  // partition into at most k parts, i.e. into parts <= k. Sweep k upward,
  // keeping the parts-<=-k table current.
  std::vector<Count> out(max_n + 1, 0);
  std::vector<Count> at_most(max_n + 1, 0);
  at_most[0] = 1;
  for (std::uint64_t k = 0;; ++k) {
    if (k > 0)
      for (std::uint64_t n = k; n <= max_n; ++n) at_most[n] += at_most[n - k];
    // offset = k*a + d*k(k-1)/2; stop once it exceeds max_n.
    unsigned __int128 offset = static_cast<unsigned __int128>(k) * spec.level +
                               static_cast<unsigned __int128>(spec.gap) * k * (k == 0 ? 0 : k - 1) / 2;
    if (offset > max_n) break;
    auto off = static_cast<std::uint64_t>(offset);
    for (std::uint64_t n = off; n <= max_n; ++n) out[n] += at_most[n - off];
  }
  return out;
}

Count count_gap(const GapSpec& spec, std::uint64_t n) { return gap_counts(spec, n)[n]; }

std::vector<Count> counts_over_parts(std::span<const Part> parts, std::uint64_t max_n) {
  std::vector<Count> c(max_n + 1, 0);
  c[0] = 1;
  for (Part p : parts) {
    if (p == 0) throw InvalidArgument("counts_over_parts: parts must be positive");
    for (std::uint64_t n = p; n <= max_n; ++n) c[n] += c[n - p];
  }
  return c;
}

std::vector<Count> set_counts(const EventuallyPeriodicSet& universe, std::uint64_t max_n) {
  auto parts = universe.members_up_to(max_n);
  return counts_over_parts(parts, max_n);
}

Count count_from_set(const EventuallyPeriodicSet& universe, std::uint64_t n) { return set_counts(universe, n)[n]; }

std::vector<Count> congruence_counts(const CongruenceSpec& spec, std::uint64_t max_n) {
  return set_counts(spec.universe(), max_n);
}

Count count_congruence(const CongruenceSpec& spec, std::uint64_t n) { return congruence_counts(spec, n)[n]; }

// ---------------------------------------------------------------------------
// Enumeration

namespace {

class Enumerator {
 public:
  Enumerator(std::vector<Part> allowed_desc, EnumerationCap cap, const PartitionVisitor& visit)
      : allowed_(std::move(allowed_desc)), cap_(cap), visit_(visit) {}

  std::size_t run(std::uint64_t n) {
    recurse(0, n);
    return produced_;
  }

 private:
  void emit() {
    if (++produced_ > cap_.max_items)
      throw CapExceeded("enumeration exceeded cap of " + std::to_string(cap_.max_items) + " partitions");
    visit_(Partition::from_runs(stack_));
  }

  void recurse(std::size_t idx, std::uint64_t remaining) {
    if (remaining == 0) {
      emit();
      return;
    }
    for (std::size_t i = idx; i < allowed_.size(); ++i) {
      Part p = allowed_[i];
      if (p > remaining) continue;
      std::uint64_t max_copies = remaining / p;
      for (std::uint64_t c = max_copies; c >= 1; --c) {
        stack_.push_back({p, c});
        recurse(i + 1, remaining - c * p);
        stack_.pop_back();
      }
    }
  }

  std::vector<Part> allowed_;
  EnumerationCap cap_;
  const PartitionVisitor& visit_;
  std::vector<Partition::Run> stack_;
  std::size_t produced_ = 0;
};

}  // namespace

std::size_t for_each_partition(std::span<const Part> allowed, std::uint64_t n, EnumerationCap cap,
                               const PartitionVisitor& visit) {
  std::vector<Part> desc(allowed.begin(), allowed.end());
  std::sort(desc.begin(), desc.end(), std::greater<>());
  desc.erase(std::unique(desc.begin(), desc.end()), desc.end());
  if (!desc.empty() && desc.back() == 0) throw InvalidArgument("for_each_partition: parts must be positive");
  Enumerator e(std::move(desc), cap, visit);
  return e.run(n);
}

std::vector<Partition> enumerate_from_set(const EventuallyPeriodicSet& universe, std::uint64_t n,
                                          EnumerationCap cap) {
  std::vector<Partition> out;
  auto parts = universe.members_up_to(n);
  for_each_partition(parts, n, cap, [&](const Partition& p) { out.push_back(p); });
  return out;
}

std::vector<Partition> enumerate_all(std::uint64_t n, EnumerationCap cap) {
  std::vector<Part> parts;
  for (Part p = 1; p <= n; ++p) parts.push_back(p);
  std::vector<Partition> out;
  for_each_partition(parts, n, cap, [&](const Partition& p) { out.push_back(p); });
  return out;
}

std::vector<Partition> enumerate_gap(const GapSpec& spec, std::uint64_t n, EnumerationCap cap) {
  std::vector<Partition> out;
  std::vector<Part> chosen;  // increasing
  auto recurse = [&](auto&& self, Part min_next, std::uint64_t remaining) -> void {
    if (remaining == 0) {
      if (out.size() >= cap.max_items)
        throw CapExceeded("enumerate_gap exceeded cap of " + std::to_string(cap.max_items) + " partitions");
      out.push_back(Partition::from_parts(chosen));
      return;
    }
    for (Part p = min_next; p <= remaining; ++p) {
      chosen.push_back(p);
      self(self, p + spec.gap, remaining - p);
      chosen.pop_back();
    }
  };
  recurse(recurse, spec.level, n);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// ---------------------------------------------------------------------------
// Pair decompositions

namespace {

struct PairShape {
  EventuallyPeriodicSet universe;
  std::vector<Partition> menu;
  Part replacement;  // 0 when the kind has no collision-prone replacement part
  bool replacement_is_periodic;
};

PairShape shape_of(const PairKind& kind) {
  return std::visit(
      [](const auto& k) -> PairShape {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, LevelPairs>) {
          CongruenceSpec spec(k.level, k.d);  // validates 2a < d+3
          Part co = spec.co_residue();
          Part replacement = 2 * co;
          EventuallyPeriodicSet base(spec.modulus(), {spec.residue, co});
          bool periodic = base.contains(replacement);
          EventuallyPeriodicSet universe(spec.modulus(), {spec.residue, co}, {replacement}, {co});
          return {universe, {Partition{}, Partition::from_parts({co})}, replacement, periodic};
        } else {
          if (k.alpha < 1 || k.d <= k.alpha) throw InvalidArgument("alpha-shift pairs: need 1 <= alpha < d");
          Part D = k.d - k.alpha;  // Q_D^(1), modulus D+3
          Part low = D + 2, high = D + 4;
          EventuallyPeriodicSet universe(D + 3, {1, D + 2}, {2 * low, 2 * high}, {low, high});
          std::vector<Partition> menu{Partition{}, Partition::from_parts({low}), Partition::from_parts({high}),
                                      Partition::from_parts({high, low})};
          return {universe, std::move(menu), 0, false};
        }
      },
      kind);
}

}  // namespace

EventuallyPeriodicSet pair_universe(const PairKind& kind) { return shape_of(kind).universe; }

std::vector<Partition> pair_menu(const PairKind& kind) { return shape_of(kind).menu; }

std::vector<PairDecomposition> enumerate_pairs(const PairKind& kind, std::uint64_t n, EnumerationCap cap) {
  PairShape shape = shape_of(kind);
  std::vector<PairDecomposition> out;
  auto push = [&](PairDecomposition pd) {
    if (out.size() >= cap.max_items)
      throw CapExceeded("enumerate_pairs exceeded cap of " + std::to_string(cap.max_items) + " pairs");
    out.push_back(std::move(pd));
  };
  auto parts = shape.universe.members_up_to(n);
  for (const Partition& pi : shape.menu) {
    if (pi.weight() > n) continue;
    for_each_partition(parts, n - pi.weight(), cap, [&](const Partition& mu) {
      std::uint64_t copies = shape.replacement ? mu.multiplicity(shape.replacement) : 0;
      if (shape.replacement_is_periodic) {
        // Each copy may come from the residue class or from the extra factor.
        for (std::uint64_t c = 0; c <= copies; ++c) push({pi, mu, c});
      } else {
        push({pi, mu, copies});
      }
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace alder
