#include <algorithm>
#include <cmath>

#include "simred/expr.hpp"

namespace simred {

namespace {

Expr d(const Expr& e, std::string_view v) {
  if (!e.depends_on(v)) return Expr(0);
  switch (e.kind()) {
    case Kind::Constant:
      return Expr(0);
    case Kind::Variable:
      return Expr(1);
    case Kind::Add: {
      std::vector<Expr> out;
      for (const auto& t : e.args())
        if (t.depends_on(v)) out.push_back(d(t, v));
      return Expr::add(std::move(out));
    }
    case Kind::Mul: {
      const auto& fs = e.args();
      std::vector<Expr> out;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        if (!fs[i].depends_on(v)) continue;
        std::vector<Expr> term = fs;
        term[i] = d(fs[i], v);
        out.push_back(Expr::mul(std::move(term)));
      }
      return Expr::add(std::move(out));
    }
    case Kind::Pow: {
      const Expr& b = e.arg(0);
      const Expr& x = e.arg(1);
      if (!x.depends_on(v)) return Expr::mul({x, Expr::pow(b, x + Expr(-1)), d(b, v)});
      if (!b.depends_on(v)) return Expr::mul({e, log(b), d(x, v)});
      return e * (d(x, v) * log(b) + x * d(b, v) / b);
    }
    case Kind::Neg:
      return Expr::neg(d(e.arg(0), v));
    case Kind::Exp:
      return e * d(e.arg(0), v);
    case Kind::Log:
      return d(e.arg(0), v) / e.arg(0);
    case Kind::Sin:
      return cos(e.arg(0)) * d(e.arg(0), v);
    case Kind::Cos:
      return Expr::neg(sin(e.arg(0)) * d(e.arg(0), v));
    case Kind::Sqrt:
      return Expr::mul({Expr::rational(1, 2), d(e.arg(0), v), Expr::pow(e, Expr(-1))});
  }
  return Expr(0);
}

template <class Real>
Real ev(const Expr& e, const NumericBindings& b) {
  auto domain_error = [&](const std::string& what) -> Real { throw EvalError("domain error: " + what, e.str()); };
  switch (e.kind()) {
    case Kind::Constant: {
      const Number& n = e.value();
      if (n.is_exact()) return static_cast<Real>(n.exact().num) / static_cast<Real>(n.exact().den);
      return static_cast<Real>(n.to_double());
    }
    case Kind::Variable: {
      auto it = b.find(e.name());
      if (it == b.end()) throw EvalError("unbound variable '" + e.name() + "'", e.str());
      return static_cast<Real>(it->second);
    }
    case Kind::Add: {
      Real s = 0;
      for (const auto& t : e.args()) s += ev<Real>(t, b);
      return s;
    }
    case Kind::Mul: {
      Real p = 1;
      for (const auto& f : e.args()) p *= ev<Real>(f, b);
      return p;
    }
    case Kind::Neg:
      return -ev<Real>(e.arg(0), b);
    case Kind::Pow: {
      Real base = ev<Real>(e.arg(0), b);
      Real x = ev<Real>(e.arg(1), b);
      if (base == 0 && x < 0) return domain_error("0 raised to a negative power");
      if (base < 0 && std::floor(x) != x) return domain_error("negative base with non-integer exponent");
      Real r = std::pow(base, x);
      if (!std::isfinite(r)) return domain_error("non-finite power");
      return r;
    }
    case Kind::Exp: {
      Real r = std::exp(ev<Real>(e.arg(0), b));
      if (!std::isfinite(r)) return domain_error("exp overflow");
      return r;
    }
    case Kind::Log: {
      Real a = ev<Real>(e.arg(0), b);
      if (!(a > 0)) return domain_error("log of a nonpositive value");
      return std::log(a);
    }
    case Kind::Sin:
      return std::sin(ev<Real>(e.arg(0), b));
    case Kind::Cos:
      return std::cos(ev<Real>(e.arg(0), b));
    case Kind::Sqrt: {
      Real a = ev<Real>(e.arg(0), b);
      if (a < 0) return domain_error("sqrt of a negative value");
      return std::sqrt(a);
    }
  }
  return 0;
}

double magnitude(const Expr& e, const NumericBindings& b) {
  switch (e.kind()) {
    case Kind::Add: {
      double m = 0.0;
      for (const auto& t : e.args()) m = std::max(m, magnitude(t, b));
      return m;
    }
    case Kind::Mul: {
      double p = 1.0;
      for (const auto& f : e.args()) p *= magnitude(f, b);
      return p;
    }
    case Kind::Neg:
      return magnitude(e.arg(0), b);
    default:
      return std::fabs(ev<double>(e, b));
  }
}

}  // namespace

Expr diff(const Expr& e, std::string_view var) { return simplify(d(simplify(e), var)); }

Expr diff(const Expr& e, std::string_view var, int order) {
  Expr r = simplify(e);
  for (int i = 0; i < order; ++i) r = diff(r, var);
  return r;
}

double eval_numeric(const Expr& e, const NumericBindings& b) { return ev<double>(e, b); }
long double eval_numeric_ld(const Expr& e, const NumericBindings& b) { return ev<long double>(e, b); }

double term_scale(const Expr& e, const NumericBindings& b) { return magnitude(e, b); }

}  // namespace simred
