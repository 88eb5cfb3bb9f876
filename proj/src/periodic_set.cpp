#include "alder/periodic_set.hpp"

#include <algorithm>
#include <sstream>

namespace alder {

namespace {

void sort_unique(std::vector<Part>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

EventuallyPeriodicSet::EventuallyPeriodicSet(Part modulus, std::vector<Part> residues,
                                             std::vector<Part> includes, std::vector<Part> excludes)
    : modulus_(modulus) {
  if (modulus == 0) throw InvalidArgument("periodic set: modulus must be positive");
  for (Part& r : residues) r %= modulus;
  sort_unique(residues);
  if (residues.empty()) throw InvalidArgument("periodic set: at least one residue is required");
  residues_ = std::move(residues);

  sort_unique(includes);
  sort_unique(excludes);
  for (Part v : includes) {
    if (v == 0) throw InvalidArgument("periodic set: included values must be positive");
    if (std::binary_search(excludes.begin(), excludes.end(), v))
      throw InvalidArgument("periodic set: " + std::to_string(v) + " is both included and excluded");
  }
  for (Part v : includes)
    if (!periodic_member(v)) includes_.push_back(v);
  for (Part v : excludes)
    if (v != 0 && periodic_member(v)) excludes_.push_back(v);
}

bool EventuallyPeriodicSet::periodic_member(Part v) const {
  return v > 0 && std::binary_search(residues_.begin(), residues_.end(), v % modulus_);
}

bool EventuallyPeriodicSet::contains(Part v) const {
  if (v == 0) return false;
  if (std::binary_search(includes_.begin(), includes_.end(), v)) return true;
  return periodic_member(v) && !std::binary_search(excludes_.begin(), excludes_.end(), v);
}

std::size_t EventuallyPeriodicSet::periodic_count_up_to(Part v) const {
  std::size_t total = 0;
  for (Part r : residues_) {
    if (r == 0) {
      total += v / modulus_;
    } else if (v >= r) {
      total += (v - r) / modulus_ + 1;
    }
  }
  return total;
}

std::size_t EventuallyPeriodicSet::count_up_to(Part v) const {
  std::size_t total = periodic_count_up_to(v);
  total += static_cast<std::size_t>(std::upper_bound(includes_.begin(), includes_.end(), v) - includes_.begin());
  total -= static_cast<std::size_t>(std::upper_bound(excludes_.begin(), excludes_.end(), v) - excludes_.begin());
  return total;
}

Part EventuallyPeriodicSet::element_at(std::size_t i) const {
  if (i == 0) throw InvalidArgument("element_at: index is 1-based");
  Part hi = modulus_;
  while (count_up_to(hi) < i) hi *= 2;
  Part lo = 1;
  while (lo < hi) {
    Part mid = lo + (hi - lo) / 2;
    if (count_up_to(mid) >= i) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::optional<std::size_t> EventuallyPeriodicSet::index_of(Part v) const {
  if (!contains(v)) return std::nullopt;
  return count_up_to(v);
}

std::vector<Part> EventuallyPeriodicSet::members_up_to(Part limit) const {
  std::vector<Part> out;
  for (Part base = 0; base <= limit; base += modulus_) {
    for (Part r : residues_) {
      Part v = base + r;
      if (v == 0 || v > limit) continue;
      if (!std::binary_search(excludes_.begin(), excludes_.end(), v)) out.push_back(v);
    }
    if (limit - base < modulus_) break;
  }
  for (Part v : includes_)
    if (v <= limit) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

Part EventuallyPeriodicSet::perturbation_bound() const {
  Part bound = 0;
  if (!includes_.empty()) bound = std::max(bound, includes_.back());
  if (!excludes_.empty()) bound = std::max(bound, excludes_.back());
  return bound;
}

std::size_t EventuallyPeriodicSet::periodic_from() const {
  // Past the last perturbation plus one full period, shifting by one period
  // maps members to members without crossing a perturbed value.
  return count_up_to(perturbation_bound() + modulus_) + 1;
}

std::string EventuallyPeriodicSet::describe() const {
  std::ostringstream os;
  os << "{v : v mod " << modulus_ << " in {";
  for (std::size_t i = 0; i < residues_.size(); ++i) os << (i ? "," : "") << residues_[i];
  os << "}}";
  if (!includes_.empty()) {
    os << " + {";
    for (std::size_t i = 0; i < includes_.size(); ++i) os << (i ? "," : "") << includes_[i];
    os << "}";
  }
  if (!excludes_.empty()) {
    os << " - {";
    for (std::size_t i = 0; i < excludes_.size(); ++i) os << (i ? "," : "") << excludes_[i];
    os << "}";
  }
  return os.str();
}

}  // namespace alder
