#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "alder/common.hpp"

namespace alder {

/// Positive integers v with (v mod M in residues or v in includes) and v not in
/// excludes. Residue 0 stands for the positive multiples of M.
///
/// Elements are indexed from 1 in increasing order. element_at and index_of
/// work by counting, so neither walks the set.
class EventuallyPeriodicSet {
 public:
  EventuallyPeriodicSet(Part modulus, std::vector<Part> residues, std::vector<Part> includes = {},
                        std::vector<Part> excludes = {});

  Part modulus() const { return modulus_; }
  const std::vector<Part>& residues() const { return residues_; }
  const std::vector<Part>& includes() const { return includes_; }
  const std::vector<Part>& excludes() const { return excludes_; }

  bool contains(Part v) const;
  /// Number of members <= v.
  std::size_t count_up_to(Part v) const;
  /// i-th smallest member, i >= 1.
  Part element_at(std::size_t i) const;
  /// 1-based index of v, or nullopt if v is not a member.
  std::optional<std::size_t> index_of(Part v) const;
  std::vector<Part> members_up_to(Part limit) const;

  /// Largest value at which includes/excludes still perturb the periodic
  /// pattern (0 if none).
  Part perturbation_bound() const;
  /// First index i such that element_at(i + residues().size()) ==
  /// element_at(i) + modulus() for every later i.
  std::size_t periodic_from() const;

  std::string describe() const;

 private:
  bool periodic_member(Part v) const;
  std::size_t periodic_count_up_to(Part v) const;

  Part modulus_;
  std::vector<Part> residues_;
  std::vector<Part> includes_;  // only values outside the periodic part
  std::vector<Part> excludes_;  // only values inside the periodic part
};

}  // namespace alder
