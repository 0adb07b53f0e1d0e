#include "simred/expr.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace simred {

struct Node {
  Kind kind;
  Number value;
  std::string name;
  std::vector<Expr> args;
  std::size_t hash = 0;
  std::size_t size = 1;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) { return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)); }

std::shared_ptr<const Node> make_node(Kind kind, Number value, std::string name, std::vector<Expr> args) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->value = value;
  n->name = std::move(name);
  n->args = std::move(args);
  std::size_t h = std::hash<int>{}(static_cast<int>(kind));
  if (kind == Kind::Constant) {
    h = mix(h, std::hash<std::string>{}(n->value.to_string()));
    h = mix(h, n->value.is_exact() ? 1 : 2);
  } else if (kind == Kind::Variable) {
    h = mix(h, std::hash<std::string>{}(n->name));
  }
  for (const auto& a : n->args) {
    h = mix(h, a.hash());
    n->size += a.size();
  }
  n->hash = h;
  return n;
}

int kind_rank(Kind k) {
  switch (k) {
    case Kind::Constant: return 0;
    case Kind::Variable: return 1;
    case Kind::Pow: return 2;
    case Kind::Mul: return 3;
    case Kind::Add: return 4;
    case Kind::Neg: return 5;
    case Kind::Exp: return 6;
    case Kind::Log: return 7;
    case Kind::Sin: return 8;
    case Kind::Cos: return 9;
    case Kind::Sqrt: return 10;
  }
  return 11;
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

void collect_free(const Expr& e, std::set<std::string>& out) {
  if (e.is_variable()) {
    out.insert(e.name());
    return;
  }
  for (const auto& a : e.args()) collect_free(a, out);
}

}  // namespace

Expr::Expr() : node_(make_node(Kind::Constant, Number(0), {}, {})) {}
Expr::Expr(std::int64_t n) : node_(make_node(Kind::Constant, Number(n), {}, {})) {}
Expr::Expr(double d) : node_(make_node(Kind::Constant, Number(d), {}, {})) {}
Expr::Expr(Number n) : node_(make_node(Kind::Constant, n, {}, {})) {}

Expr Expr::variable(std::string name) {
  if (!valid_identifier(name)) throw std::invalid_argument("invalid variable name '" + name + "'");
  return Expr(make_node(Kind::Variable, Number(0), std::move(name), {}));
}

Expr Expr::add(std::vector<Expr> terms) {
  if (terms.empty()) return Expr(0);
  if (terms.size() == 1) return terms.front();
  return Expr(make_node(Kind::Add, Number(0), {}, std::move(terms)));
}

Expr Expr::mul(std::vector<Expr> factors) {
  if (factors.empty()) return Expr(1);
  if (factors.size() == 1) return factors.front();
  return Expr(make_node(Kind::Mul, Number(0), {}, std::move(factors)));
}

Expr Expr::pow(Expr base, Expr exponent) {
  return Expr(make_node(Kind::Pow, Number(0), {}, {std::move(base), std::move(exponent)}));
}

Expr Expr::neg(Expr child) { return Expr(make_node(Kind::Neg, Number(0), {}, {std::move(child)})); }

Expr Expr::apply(Kind fn, Expr arg) {
  switch (fn) {
    case Kind::Exp:
    case Kind::Log:
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Sqrt:
      return Expr(make_node(fn, Number(0), {}, {std::move(arg)}));
    default:
      throw std::invalid_argument("Expr::apply: not a unary function kind");
  }
}

Kind Expr::kind() const { return node_->kind; }
const Number& Expr::value() const {
  assert(kind() == Kind::Constant);
  return node_->value;
}
const std::string& Expr::name() const {
  assert(kind() == Kind::Variable);
  return node_->name;
}
const std::vector<Expr>& Expr::args() const { return node_->args; }
std::size_t Expr::hash() const { return node_->hash; }
std::size_t Expr::size() const { return node_->size; }

bool Expr::is_zero() const { return is_constant() && value().is_zero(); }
bool Expr::is_one() const { return is_constant() && value().is_one(); }
bool Expr::is_function() const {
  switch (kind()) {
    case Kind::Exp:
    case Kind::Log:
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Sqrt:
      return true;
    default:
      return false;
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return Expr::compare(a, b) == 0;
}

int Expr::compare(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return 0;
  int ra = kind_rank(a.kind());
  int rb = kind_rank(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case Kind::Constant: {
      int c = Number::compare(a.value(), b.value());
      if (c != 0) return c;
      // Same numeric value: distinguish exactness already handled by compare.
      return 0;
    }
    case Kind::Variable:
      return a.name() < b.name() ? -1 : (a.name() > b.name() ? 1 : 0);
    default:
      break;
  }
  const auto& xa = a.args();
  const auto& xb = b.args();
  // Compare from the last child: for Mul/Add the leading constant matters least.
  std::size_t n = std::min(xa.size(), xb.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(xa[xa.size() - 1 - i], xb[xb.size() - 1 - i]);
    if (c != 0) return c;
  }
  if (xa.size() != xb.size()) return xa.size() < xb.size() ? -1 : 1;
  return 0;
}

std::set<std::string> Expr::free_variables() const {
  std::set<std::string> out;
  collect_free(*this, out);
  return out;
}

bool Expr::depends_on(std::string_view var) const {
  if (is_variable()) return name() == var;
  return std::any_of(args().begin(), args().end(), [&](const Expr& a) { return a.depends_on(var); });
}

std::string_view function_name(Kind k) {
  switch (k) {
    case Kind::Exp: return "exp";
    case Kind::Log: return "log";
    case Kind::Sin: return "sin";
    case Kind::Cos: return "cos";
    case Kind::Sqrt: return "sqrt";
    default: return "";
  }
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::add({a, Expr::neg(b)}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::mul({a, Expr::pow(b, Expr(-1))}); }
Expr operator-(const Expr& a) { return Expr::neg(a); }

Expr exp(const Expr& e) { return Expr::apply(Kind::Exp, e); }
Expr log(const Expr& e) { return Expr::apply(Kind::Log, e); }
Expr sin(const Expr& e) { return Expr::apply(Kind::Sin, e); }
Expr cos(const Expr& e) { return Expr::apply(Kind::Cos, e); }
Expr sqrt(const Expr& e) { return Expr::apply(Kind::Sqrt, e); }
Expr pow(const Expr& base, const Expr& exponent) { return Expr::pow(base, exponent); }

Expr substitute(const Expr& e, const Substitution& bindings) {
  if (bindings.empty()) return e;
  switch (e.kind()) {
    case Kind::Constant:
      return e;
    case Kind::Variable: {
      auto it = bindings.find(e.name());
      return it == bindings.end() ? e : it->second;
    }
    case Kind::Add:
    case Kind::Mul: {
      std::vector<Expr> out;
      out.reserve(e.args().size());
      for (const auto& a : e.args()) out.push_back(substitute(a, bindings));
      return e.kind() == Kind::Add ? Expr::add(std::move(out)) : Expr::mul(std::move(out));
    }
    case Kind::Pow:
      return Expr::pow(substitute(e.arg(0), bindings), substitute(e.arg(1), bindings));
    case Kind::Neg:
      return Expr::neg(substitute(e.arg(0), bindings));
    default:
      return Expr::apply(e.kind(), substitute(e.arg(0), bindings));
  }
}

}  // namespace simred
