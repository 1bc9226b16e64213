#include "curvelim/exactpoly/monomial_order.hpp"

namespace curvelim {

namespace {

int cmp_lex(const Exponent* a, const Exponent* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

int cmp_grevlex(const Exponent* a, const Exponent* b, std::size_t n) {
  unsigned long da = 0, db = 0;
  for (std::size_t i = 0; i < n; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = n; i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

template <bool kFront>
int cmp_block_part(const Exponent* a, const Exponent* b, std::size_t n,
                   const std::vector<bool>& front, MonomialOrder::Kind kind) {
  auto in_part = [&](std::size_t i) { return (i < front.size() && front[i]) == kFront; };
  if (kind == MonomialOrder::Kind::kLex) {
    for (std::size_t i = 0; i < n; ++i) {
      if (in_part(i) && a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
  }
  unsigned long da = 0, db = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_part(i)) {
      da += a[i];
      db += b[i];
    }
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = n; i-- > 0;) {
    if (in_part(i) && a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

MonomialOrder MonomialOrder::block(std::vector<bool> front, Kind back) {
  MonomialOrder o(Kind::kBlock);
  o.front_ = std::move(front);
  o.back_ = back == Kind::kBlock ? Kind::kDegRevLex : back;
  return o;
}

int MonomialOrder::compare(const Exponent* a, const Exponent* b, std::size_t n) const {
  switch (kind_) {
    case Kind::kLex:
      return cmp_lex(a, b, n);
    case Kind::kDegRevLex:
      return cmp_grevlex(a, b, n);
    case Kind::kBlock: {
      int c = cmp_block_part<true>(a, b, n, front_, Kind::kDegRevLex);
      if (c != 0) return c;
      return cmp_block_part<false>(a, b, n, front_, back_);
    }
  }
  return 0;
}

MonomialOrder MonomialOrder::remapped(const std::vector<std::size_t>& map,
                                      std::size_t new_size) const {
  if (kind_ != Kind::kBlock) return *this;
  std::vector<bool> f(new_size, false);
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (is_front(i)) f[map[i]] = true;
  }
  return block(std::move(f), back_);
}

std::string MonomialOrder::describe() const {
  auto name = [](Kind k) {
    switch (k) {
      case Kind::kLex:
        return std::string("lex");
      case Kind::kDegRevLex:
        return std::string("grevlex");
      case Kind::kBlock:
        return std::string("block");
    }
    return std::string();
  };
  if (kind_ != Kind::kBlock) return name(kind_);
  std::string s = "block(";
  bool first = true;
  for (std::size_t i = 0; i < front_.size(); ++i) {
    if (!front_[i]) continue;
    if (!first) s += ',';
    s += std::to_string(i);
    first = false;
  }
  return s + ";" + name(back_) + ")";
}

}  // namespace curvelim
