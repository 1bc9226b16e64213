#pragma once

#include <cstddef>
#include <vector>

#include "curvelim/exactpoly/polynomial.hpp"

namespace curvelim {

// Restriction of a large VarTable to the variables actually used by a set of
// polynomials; heavy kernels run on the compact table and map results back.
class Compaction {
 public:
  Compaction(const VarTablePtr& full, const std::vector<bool>& used);
  static Compaction of(const std::vector<const Polynomial*>& polys, const VarTablePtr& full,
                       const std::vector<std::size_t>& extra = {});

  const VarTablePtr& table() const { return compact_; }
  const VarTablePtr& full() const { return full_; }
  std::size_t to_full(std::size_t compact_index) const { return to_full_[compact_index]; }
  // Compact index of a full-table variable; throws if not retained.
  std::size_t to_compact(std::size_t full_index) const;
  bool retains(std::size_t full_index) const;

  MonomialOrder compact_order(const MonomialOrder& full_order) const;
  Polynomial down(const Polynomial& p, const MonomialOrder& order) const;
  Polynomial up(const Polynomial& p, const MonomialOrder& order) const;

 private:
  VarTablePtr full_;
  VarTablePtr compact_;
  std::vector<std::size_t> to_full_;
  std::vector<std::size_t> to_compact_;
};

}  // namespace curvelim
