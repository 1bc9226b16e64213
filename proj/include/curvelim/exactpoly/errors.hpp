#pragma once

#include <stdexcept>
#include <string>

namespace curvelim {

// Operand or reference inconsistency (VarTable mismatch, unknown variable, dangling id).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mathematically undefined request (degree-0 resultant, division by zero).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configured resource ceiling was hit.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(std::string stage, const std::string& what)
      : std::runtime_error("resource ceiling exceeded in stage '" + stage + "': " + what),
        stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace curvelim
