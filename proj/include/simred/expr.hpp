#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "simred/number.hpp"

namespace simred {

enum class Kind { Constant, Variable, Add, Mul, Pow, Neg, Exp, Log, Sin, Cos, Sqrt };

class Expr;

/// Name -> Expr map for substitution.
using Substitution = std::map<std::string, Expr>;
/// Name -> value map for numeric evaluation.
using NumericBindings = std::map<std::string, double>;

struct Node;

/// Immutable expression tree. Copies share structure; all operations return
/// new trees. The arithmetic operators build raw (unsimplified) nodes.
class Expr {
 public:
  Expr();  // the exact constant 0
  Expr(std::int64_t n);  // NOLINT(google-explicit-constructor)
  Expr(int n) : Expr(static_cast<std::int64_t>(n)) {}  // NOLINT(google-explicit-constructor)
  explicit Expr(double d);
  explicit Expr(Number n);

  static Expr constant(Number n) { return Expr(n); }
  static Expr rational(std::int64_t num, std::int64_t den) { return Expr(Number::rational(num, den)); }
  static Expr variable(std::string name);
  static Expr add(std::vector<Expr> terms);
  static Expr mul(std::vector<Expr> factors);
  static Expr pow(Expr base, Expr exponent);
  static Expr neg(Expr child);
  static Expr apply(Kind fn, Expr arg);

  Kind kind() const;
  const Number& value() const;        // Constant only
  const std::string& name() const;    // Variable only
  const std::vector<Expr>& args() const;
  const Expr& arg(std::size_t i) const { return args()[i]; }

  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_variable() const { return kind() == Kind::Variable; }
  bool is_zero() const;
  bool is_one() const;
  bool is_function() const;

  std::size_t hash() const;
  std::size_t size() const;  // node count

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  /// Canonical total order: -1, 0, 1.
  static int compare(const Expr& a, const Expr& b);

  std::set<std::string> free_variables() const;
  bool depends_on(std::string_view var) const;

  /// Parseable text form.
  std::string str() const;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return Expr::compare(a, b) < 0; }
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

Expr exp(const Expr& e);
Expr log(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr sqrt(const Expr& e);
Expr pow(const Expr& base, const Expr& exponent);

/// Function name for Exp/Log/Sin/Cos/Sqrt ("exp", ...).
std::string_view function_name(Kind k);

// ---------------------------------------------------------------------------
// Kernel operations

/// Terminating rewrite to canonical form: constant folding, identities,
/// flattening and sorting of Add/Mul, merging like terms and like bases,
/// exp/log cancellation. Idempotent.
Expr simplify(const Expr& e);

/// Distributes products over sums and expands positive integer powers of sums,
/// then simplifies. Used where coefficients must be collected term by term.
Expr expand(const Expr& e);

/// Exact symbolic derivative, simplified.
Expr diff(const Expr& e, std::string_view var);
Expr diff(const Expr& e, std::string_view var, int order);

/// Simultaneous substitution of variables. Unbound variables pass through.
/// The result is not simplified.
Expr substitute(const Expr& e, const Substitution& bindings);

class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& what, std::string subtree)
      : std::runtime_error(what + " in `" + subtree + "`"), subtree_(std::move(subtree)) {}
  const std::string& subtree() const { return subtree_; }

 private:
  std::string subtree_;
};

/// IEEE evaluation with natural recursive semantics. Throws EvalError for an
/// unbound variable or a domain error (log/sqrt of a negative, 0^negative,
/// negative^non-integer, non-finite result).
double eval_numeric(const Expr& e, const NumericBindings& b);
long double eval_numeric_ld(const Expr& e, const NumericBindings& b);

/// Magnitude of the largest additive term of e at a point, distributing one
/// level of products over sums. Used as the relative scale for zero tests.
double term_scale(const Expr& e, const NumericBindings& b);

}  // namespace simred
