#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace curvelim {

class VarTable;
using VarTablePtr = std::shared_ptr<const VarTable>;

// Ordered, immutable list of variable names.
class VarTable {
 public:
  explicit VarTable(std::vector<std::string> names);

  static VarTablePtr make(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index(std::string_view name) const;
  // Throws StructuralError for unknown names.
  std::size_t require(std::string_view name) const;
  bool contains(std::string_view name) const { return index(name).has_value(); }

  bool same_as(const VarTable& other) const {
    return this == &other || names_ == other.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

bool is_identifier(std::string_view s);

}  // namespace curvelim
