#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "simred/expr.hpp"

namespace simred {

/// Syntax error with the byte offset where parsing stopped and the set of
/// tokens that would have been accepted there.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t offset, std::vector<std::string> expected);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Parses the expression grammar
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := unary ('^' factor)?
///   unary  := '-' unary | atom
///   atom   := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'
///
/// into a raw tree (no simplification). Integers become exact constants,
/// decimals (with '.' or an exponent) become floats. `a/b` is Mul(a, Pow(b, -1)).
Expr parse(std::string_view text);

}  // namespace simred
