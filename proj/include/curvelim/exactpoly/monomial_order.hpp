#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace curvelim {

using Exponent = std::uint16_t;

class MonomialOrder {
 public:
  enum class Kind { kLex, kDegRevLex, kBlock };

  MonomialOrder() = default;

  static MonomialOrder lex() { return MonomialOrder(Kind::kLex); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::kDegRevLex); }
  // Front variables (front[i] == true) are compared first by degrevlex on the
  // front block; ties are broken by `back` on the remaining variables.
  static MonomialOrder block(std::vector<bool> front, Kind back = Kind::kDegRevLex);

  Kind kind() const { return kind_; }
  Kind back_kind() const { return back_; }
  const std::vector<bool>& front() const { return front_; }
  bool is_front(std::size_t var) const { return var < front_.size() && front_[var]; }

  // <0, 0, >0 as a is smaller, equal, larger than b.
  int compare(const Exponent* a, const Exponent* b, std::size_t n) const;

  // Same order expressed for a table where old variable i sits at map[i].
  MonomialOrder remapped(const std::vector<std::size_t>& map, std::size_t new_size) const;

  std::string describe() const;

  bool operator==(const MonomialOrder& o) const {
    return kind_ == o.kind_ && (kind_ != Kind::kBlock || (back_ == o.back_ && front_ == o.front_));
  }
  bool operator!=(const MonomialOrder& o) const { return !(*this == o); }

 private:
  explicit MonomialOrder(Kind k) : kind_(k) {}

  Kind kind_ = Kind::kDegRevLex;
  Kind back_ = Kind::kDegRevLex;
  std::vector<bool> front_;
};

}  // namespace curvelim
