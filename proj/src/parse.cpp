#include "simred/parse.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace simred {

ParseError::ParseError(std::string message, std::size_t offset, std::vector<std::string> expected)
    : std::runtime_error([&] {
        std::string m = message + " at offset " + std::to_string(offset);
        if (!expected.empty()) {
          m += " (expected one of:";
          for (const auto& e : expected) m += " " + e;
          m += ")";
        }
        return m;
      }()),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
};

const std::vector<std::string> kAtomStart{"NUMBER", "IDENT", "'('", "'-'"};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) { advance(); }

  Expr parse_all() {
    Expr e = expr();
    if (cur_.kind != Tok::End) {
      std::vector<std::string> exp{"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"};
      if (depth_ > 0) exp.emplace_back("')'");
      throw ParseError("unexpected token '" + std::string(cur_.text) + "'", cur_.offset, exp);
    }
    return e;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      cur_ = {Tok::End, start, {}};
      return;
    }
    char c = src_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      cur_ = {k, start, src_.substr(start, 1)};
    };
    switch (c) {
      case '+': return single(Tok::Plus);
      case '-': return single(Tok::Minus);
      case '*': return single(Tok::Star);
      case '/': return single(Tok::Slash);
      case '^': return single(Tok::Caret);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t save = pos_;
        ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
        if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      cur_ = {Tok::Number, start, src_.substr(start, pos_ - start)};
      if (cur_.text == ".") throw ParseError("malformed number", start, {"NUMBER"});
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      cur_ = {Tok::Ident, start, src_.substr(start, pos_ - start)};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start, kAtomStart);
  }

  bool accept(Tok k) {
    if (cur_.kind != k) return false;
    advance();
    return true;
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      bool minus = cur_.kind == Tok::Minus;
      advance();
      Expr t = term();
      terms.push_back(minus ? Expr::neg(t) : t);
    }
    return Expr::add(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> factors{factor()};
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      bool div = cur_.kind == Tok::Slash;
      advance();
      Expr f = factor();
      factors.push_back(div ? Expr::pow(f, Expr(-1)) : f);
    }
    return Expr::mul(std::move(factors));
  }

  Expr factor() {
    Expr base = unary();
    if (accept(Tok::Caret)) return Expr::pow(base, factor());
    return base;
  }

  Expr unary() {
    if (accept(Tok::Minus)) return Expr::neg(unary());
    return atom();
  }

  Expr number(const Token& t) {
    bool decimal = t.text.find_first_of(".eE") != std::string_view::npos;
    if (!decimal) {
      std::int64_t v = 0;
      auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec == std::errc() && p == t.text.data() + t.text.size()) return Expr(v);
    }
    std::string s(t.text);
    return Expr(std::strtod(s.c_str(), nullptr));
  }

  Expr atom() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::Number:
        advance();
        return number(t);
      case Tok::LParen: {
        advance();
        ++depth_;
        Expr e = expr();
        --depth_;
        if (!accept(Tok::RParen)) throw ParseError("missing ')'", cur_.offset, {"')'", "'+'", "'-'", "'*'", "'/'", "'^'"});
        return e;
      }
      case Tok::Ident: {
        advance();
        if (cur_.kind != Tok::LParen) return Expr::variable(std::string(t.text));
        Kind fn;
        if (t.text == "exp") {
          fn = Kind::Exp;
        } else if (t.text == "log") {
          fn = Kind::Log;
        } else if (t.text == "sin") {
          fn = Kind::Sin;
        } else if (t.text == "cos") {
          fn = Kind::Cos;
        } else if (t.text == "sqrt") {
          fn = Kind::Sqrt;
        } else {
          throw ParseError("unknown function '" + std::string(t.text) + "'", t.offset,
                           {"exp", "log", "sin", "cos", "sqrt"});
        }
        advance();
        ++depth_;
        Expr arg = expr();
        --depth_;
        if (!accept(Tok::RParen)) throw ParseError("missing ')'", cur_.offset, {"')'"});
        return Expr::apply(fn, arg);
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.offset, kAtomStart);
      default:
        throw ParseError("unexpected token '" + std::string(t.text) + "'", t.offset, kAtomStart);
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  Token cur_{Tok::End, 0, {}};
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace simred
