#include "curvelim/exactpoly/var_table.hpp"

#include <cctype>

#include "curvelim/exactpoly/errors.hpp"

namespace curvelim {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s[0]);
  if (!(std::isalpha(head) || head == '_')) return false;
  for (char ch : s) {
    auto u = static_cast<unsigned char>(ch);
    if (!(std::isalnum(u) || u == '_')) return false;
  }
  return true;
}

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
  lookup_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!is_identifier(names_[i])) {
      throw StructuralError("invalid variable name '" + names_[i] + "'");
    }
    if (!lookup_.emplace(names_[i], i).second) {
      throw StructuralError("duplicate variable name '" + names_[i] + "'");
    }
  }
}

VarTablePtr VarTable::make(std::vector<std::string> names) {
  return std::make_shared<const VarTable>(std::move(names));
}

std::optional<std::size_t> VarTable::index(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t VarTable::require(std::string_view name) const {
  auto i = index(name);
  if (!i) throw StructuralError("unknown variable '" + std::string(name) + "'");
  return *i;
}

}  // namespace curvelim
