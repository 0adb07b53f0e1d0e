#include <optional>
#include <string>

#include "simred/expr.hpp"

namespace simred {

namespace {

// Binding strength of the printed form; 5 prints as an atom.
int precedence(const Expr& e) {
  switch (e.kind()) {
    case Kind::Constant: {
      const Number& n = e.value();
      if (n.is_exact() && !n.exact().is_integer()) return 2;
      return n.is_negative() ? 3 : 5;
    }
    case Kind::Variable: return 5;
    case Kind::Add: return 1;
    case Kind::Mul: return 2;
    case Kind::Neg: return 3;
    case Kind::Pow: return 4;
    default: return 5;
  }
}

std::string print(const Expr& e);

std::string paren(const std::string& s) { return "(" + s + ")"; }

std::string wrap_below(const Expr& e, int min_prec) {
  std::string s = print(e);
  return precedence(e) < min_prec ? paren(s) : s;
}

bool is_exact_minus_one(const Expr& e) { return e.is_constant() && e.value().is_exact() && e.value().is_minus_one(); }

bool negative_exact_exponent(const Expr& f) {
  return f.kind() == Kind::Pow && f.arg(1).is_constant() && f.arg(1).value().is_exact() &&
         f.arg(1).value().is_negative();
}

// True when printing "-" directly before e would let the grammar re-associate
// the minus into a power base ("-x^2" parses as (-x)^2).
bool unsafe_after_minus(const Expr& e) {
  if (e.kind() == Kind::Pow || e.kind() == Kind::Add || e.kind() == Kind::Neg) return true;
  if (e.kind() == Kind::Mul) return unsafe_after_minus(e.arg(0)) || e.arg(0).kind() == Kind::Mul;
  if (e.is_constant()) return precedence(e) < 5;
  return false;
}

std::string print_negated(const Expr& e) {
  std::string s = print(e);
  return unsafe_after_minus(e) ? "-" + paren(s) : "-" + s;
}

// For Add children: canonical negative terms print as "- |term|".
std::optional<Expr> negated_term(const Expr& t) {
  if (t.is_constant() && t.value().is_negative()) return Expr(-t.value());
  if (t.kind() == Kind::Mul && t.arg(0).is_constant() && t.arg(0).value().is_negative()) {
    Number c = -t.arg(0).value();
    std::vector<Expr> rest(t.args().begin() + 1, t.args().end());
    if (!c.is_one()) rest.insert(rest.begin(), Expr(c));
    return Expr::mul(std::move(rest));
  }
  return std::nullopt;
}

std::string print_add(const Expr& e) {
  std::string out;
  bool first = true;
  for (const auto& t : e.args()) {
    if (first) {
      out += t.kind() == Kind::Add ? paren(print(t)) : print(t);
      first = false;
      continue;
    }
    if (t.kind() == Kind::Neg) {
      out += " - " + wrap_below(t.arg(0), 2);
    } else if (auto n = negated_term(t)) {
      out += " - " + wrap_below(*n, 2);
    } else {
      out += " + " + (t.kind() == Kind::Add ? paren(print(t)) : print(t));
    }
  }
  return out;
}

std::string mul_factor(const Expr& f) {
  if (f.kind() == Kind::Mul || f.kind() == Kind::Add || f.kind() == Kind::Neg) return paren(print(f));
  if (f.is_constant() && precedence(f) < 5) return paren(print(f));
  return print(f);
}

std::string print_mul(const Expr& e) {
  const auto& fs = e.args();
  // Canonical leading -1: print as a negation of the remaining product.
  if (is_exact_minus_one(fs[0]) && fs.size() >= 2) {
    return print_negated(Expr::mul(std::vector<Expr>(fs.begin() + 1, fs.end())));
  }
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Expr& f = fs[i];
    if (i == 0) {
      out += (f.kind() == Kind::Add || f.kind() == Kind::Mul) ? paren(print(f)) : print(f);
    } else if (negative_exact_exponent(f)) {
      const Expr& base = f.arg(0);
      Number flipped = -f.arg(1).value();
      if (flipped.is_one()) {
        out += "/" + (precedence(base) >= 4 ? print(base) : paren(print(base)));
      } else {
        out += "/" + print(Expr::pow(base, Expr(flipped)));
      }
    } else {
      out += "*" + mul_factor(f);
    }
  }
  return out;
}

std::string print_pow(const Expr& e) {
  const Expr& b = e.arg(0);
  const Expr& x = e.arg(1);
  std::string bs = precedence(b) < 5 ? paren(print(b)) : print(b);
  std::string xs = precedence(x) < 5 ? paren(print(x)) : print(x);
  return bs + "^" + xs;
}

std::string print(const Expr& e) {
  switch (e.kind()) {
    case Kind::Constant: return e.value().to_string();
    case Kind::Variable: return e.name();
    case Kind::Add: return print_add(e);
    case Kind::Mul: return print_mul(e);
    case Kind::Pow: return print_pow(e);
    case Kind::Neg: {
      const Expr& c = e.arg(0);
      bool wrap = c.kind() == Kind::Mul || c.kind() == Kind::Add || c.kind() == Kind::Pow ||
                  (c.is_constant() && precedence(c) < 5);
      return "-" + (wrap ? paren(print(c)) : print(c));
    }
    default: return std::string(function_name(e.kind())) + "(" + print(e.arg(0)) + ")";
  }
}

}  // namespace

std::string Expr::str() const { return print(*this); }

}  // namespace simred
