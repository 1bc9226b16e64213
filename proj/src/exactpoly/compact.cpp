#include "curvelim/exactpoly/compact.hpp"

#include "curvelim/exactpoly/errors.hpp"

namespace curvelim {

namespace {
constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
}

Compaction::Compaction(const VarTablePtr& full, const std::vector<bool>& used)
    : full_(full), to_compact_(full->size(), kAbsent) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < full->size(); ++i) {
    if (i < used.size() && used[i]) {
      to_compact_[i] = names.size();
      to_full_.push_back(i);
      names.push_back(full->name(i));
    }
  }
  compact_ = VarTable::make(std::move(names));
}

Compaction Compaction::of(const std::vector<const Polynomial*>& polys, const VarTablePtr& full,
                          const std::vector<std::size_t>& extra) {
  std::vector<bool> used(full->size(), false);
  for (const Polynomial* p : polys) {
    auto s = p->support();
    for (std::size_t i = 0; i < s.size(); ++i) used[i] = used[i] || s[i];
  }
  for (std::size_t i : extra) used.at(i) = true;
  return Compaction(full, used);
}

std::size_t Compaction::to_compact(std::size_t full_index) const {
  if (!retains(full_index)) throw StructuralError("variable not retained by compaction");
  return to_compact_[full_index];
}

bool Compaction::retains(std::size_t full_index) const {
  return full_index < to_compact_.size() && to_compact_[full_index] != kAbsent;
}

MonomialOrder Compaction::compact_order(const MonomialOrder& full_order) const {
  if (full_order.kind() != MonomialOrder::Kind::kBlock) return full_order;
  std::vector<bool> f(to_full_.size(), false);
  for (std::size_t k = 0; k < to_full_.size(); ++k) f[k] = full_order.is_front(to_full_[k]);
  return MonomialOrder::block(std::move(f), full_order.back_kind());
}

Polynomial Compaction::down(const Polynomial& p, const MonomialOrder& order) const {
  const std::size_t m = to_full_.size();
  const std::size_t n = p.nvars();
  std::vector<Exponent> exps(p.size() * m);
  for (std::size_t t = 0; t < p.size(); ++t) {
    const Exponent* e = p.exps(t);
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] != 0 && to_compact_[i] == kAbsent) {
        throw StructuralError("polynomial uses variable '" + full_->name(i) +
                              "' outside the compaction");
      }
    }
    for (std::size_t k = 0; k < m; ++k) exps[t * m + k] = e[to_full_[k]];
  }
  return Polynomial::from_terms(compact_, order, std::move(exps), p.coeff_data());
}

Polynomial Compaction::up(const Polynomial& p, const MonomialOrder& order) const {
  const std::size_t m = to_full_.size();
  const std::size_t n = full_->size();
  std::vector<Exponent> exps(p.size() * n, 0);
  for (std::size_t t = 0; t < p.size(); ++t) {
    const Exponent* e = p.exps(t);
    for (std::size_t k = 0; k < m; ++k) exps[t * n + to_full_[k]] = e[k];
  }
  return Polynomial::from_terms(full_, order, std::move(exps), p.coeff_data());
}

}  // namespace curvelim
