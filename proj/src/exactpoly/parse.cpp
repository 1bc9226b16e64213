#include "curvelim/exactpoly/parse.hpp"

#include <cctype>
#include <set>

#include "curvelim/exactpoly/errors.hpp"

namespace curvelim {

namespace {

enum class Tok { kIdent, kInt, kPlus, kMinus, kStar, kSlash, kCaret, kLParen, kRParen, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    auto ch = static_cast<unsigned char>(s[i]);
    if (std::isspace(ch)) {
      ++i;
      continue;
    }
    std::size_t col = i + 1;
    if (std::isalpha(ch) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::kIdent, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (std::isdigit(ch)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::kInt, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    Tok k;
    switch (ch) {
      case '+': k = Tok::kPlus; break;
      case '-': k = Tok::kMinus; break;
      case '*': k = Tok::kStar; break;
      case '/': k = Tok::kSlash; break;
      case '^': k = Tok::kCaret; break;
      case '(': k = Tok::kLParen; break;
      case ')': k = Tok::kRParen; break;
      default:
        throw ParseError("unexpected character '" + std::string(1, s[i]) + "' at column " +
                             std::to_string(col),
                         1, col);
    }
    out.push_back({k, std::string(1, s[i]), col});
    ++i;
  }
  out.push_back({Tok::kEnd, "", s.size() + 1});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const VarTablePtr& vars, const MonomialOrder& order)
      : toks_(tokenize(text)), vars_(vars), order_(order) {}

  Polynomial run() {
    if (toks_.front().kind == Tok::kEnd) fail("empty polynomial");
    Polynomial p = expr();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at column " + std::to_string(peek().column), 1, peek().column);
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      bool minus = take().kind == Tok::kMinus;
      Polynomial rhs = term();
      if (minus) {
        acc -= rhs;
      } else {
        acc += rhs;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      Tok k = peek().kind;
      if (k == Tok::kStar) {
        take();
        acc = acc * unary();
      } else if (k == Tok::kSlash) {
        take();
        std::size_t col = peek().column;
        Polynomial d = unary();
        if (!d.is_constant() || d.is_zero()) {
          throw ParseError("divisor must be a nonzero constant at column " + std::to_string(col),
                           1, col);
        }
        acc = acc.divided(d.coeff(0));
      } else if (k == Tok::kIdent || k == Tok::kInt || k == Tok::kLParen) {
        fail("implicit multiplication is not allowed before '" + peek().text + "'");
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (peek().kind == Tok::kMinus) {
      take();
      return -unary();
    }
    if (peek().kind == Tok::kPlus) {
      take();
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek().kind == Tok::kCaret) {
      take();
      if (peek().kind != Tok::kInt) fail("exponent must be a non-negative integer");
      const std::string& digits = take().text;
      if (digits.size() > 5 || std::stoul(digits) > 0xFFFFu) fail("exponent too large");
      base = pow(base, static_cast<unsigned>(std::stoul(digits)));
      if (peek().kind == Tok::kCaret) fail("chained '^' is ambiguous; use parentheses");
    }
    return base;
  }

  Polynomial atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kIdent: {
        auto idx = vars_->index(t.text);
        if (!idx) fail("unknown variable '" + t.text + "'");
        take();
        return Polynomial::variable(vars_, *idx, order_);
      }
      case Tok::kInt: {
        Scalar v(take().text);
        return Polynomial::constant(vars_, v, order_);
      }
      case Tok::kLParen: {
        take();
        Polynomial inner = expr();
        if (peek().kind != Tok::kRParen) fail("expected ')'");
        take();
        return inner;
      }
      default:
        fail(t.kind == Tok::kEnd ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const VarTablePtr& vars_;
  const MonomialOrder& order_;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const VarTablePtr& vars,
                            const MonomialOrder& order) {
  return Parser(text, vars, order).run();
}

std::vector<std::string> collect_identifiers(std::string_view text) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const Token& t : tokenize(text)) {
    if (t.kind == Tok::kIdent && seen.insert(t.text).second) out.push_back(t.text);
  }
  return out;
}

std::vector<Polynomial> parse_with_fresh_table(const std::vector<std::string>& texts,
                                               const MonomialOrder& order) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& t : texts) {
    for (auto& id : collect_identifiers(t)) {
      if (seen.insert(id).second) names.push_back(id);
    }
  }
  VarTablePtr table = VarTable::make(names);
  std::vector<Polynomial> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_polynomial(t, table, order));
  return out;
}

}  // namespace curvelim
