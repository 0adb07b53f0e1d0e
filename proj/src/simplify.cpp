#include <algorithm>
#include <cmath>

#include "simred/expr.hpp"

namespace simred {

namespace {

Expr simp_add(const std::vector<Expr>& terms);
Expr simp_mul(const std::vector<Expr>& factors);
Expr simp_pow(const Expr& base, const Expr& exponent);
Expr simp_fn(Kind k, const Expr& a);

const Expr& one() {
  static const Expr kOne(1);
  return kOne;
}

// term = coefficient * rest, rest never carries a numeric factor.
std::pair<Number, Expr> split_term(const Expr& t) {
  if (t.is_constant()) return {t.value(), one()};
  if (t.kind() == Kind::Mul && t.arg(0).is_constant()) {
    std::vector<Expr> rest(t.args().begin() + 1, t.args().end());
    return {t.arg(0).value(), Expr::mul(std::move(rest))};
  }
  return {Number(1), t};
}

Expr with_coefficient(const Number& c, const Expr& rest) {
  if (rest.is_one()) return Expr(c);
  if (c.is_one()) return rest;
  std::vector<Expr> f{Expr(c)};
  if (rest.kind() == Kind::Mul) {
    f.insert(f.end(), rest.args().begin(), rest.args().end());
  } else {
    f.push_back(rest);
  }
  return Expr::mul(std::move(f));
}

Expr simp_add(const std::vector<Expr>& terms) {
  std::vector<Expr> flat;
  flat.reserve(terms.size());
  for (const auto& t : terms) {
    if (t.kind() == Kind::Add) {
      flat.insert(flat.end(), t.args().begin(), t.args().end());
    } else {
      flat.push_back(t);
    }
  }
  Number constant(0);
  bool has_constant = false;
  std::map<Expr, Number, ExprLess> acc;
  for (const auto& t : flat) {
    if (t.is_constant()) {
      constant = constant + t.value();
      has_constant = true;
      continue;
    }
    auto [c, rest] = split_term(t);
    auto it = acc.find(rest);
    if (it == acc.end()) {
      acc.emplace(rest, c);
    } else {
      it->second = it->second + c;
    }
  }
  std::vector<Expr> out;
  if (has_constant && !constant.is_zero()) out.emplace_back(constant);
  for (const auto& [rest, c] : acc) {
    if (c.is_zero()) continue;
    out.push_back(with_coefficient(c, rest));
  }
  if (out.empty()) return has_constant ? Expr(constant) : Expr(0);
  if (out.size() == 1) return out.front();
  return Expr::add(std::move(out));
}

Expr simp_mul(const std::vector<Expr>& factors) {
  std::vector<Expr> flat;
  flat.reserve(factors.size());
  for (const auto& f : factors) {
    if (f.kind() == Kind::Mul) {
      flat.insert(flat.end(), f.args().begin(), f.args().end());
    } else {
      flat.push_back(f);
    }
  }
  Number coef(1);
  std::vector<Expr> exp_args;
  std::map<Expr, std::vector<Expr>, ExprLess> bases;
  for (const auto& f : flat) {
    if (f.is_constant()) {
      coef = coef * f.value();
    } else if (f.kind() == Kind::Exp) {
      exp_args.push_back(f.arg(0));
    } else if (f.kind() == Kind::Pow) {
      bases[f.arg(0)].push_back(f.arg(1));
    } else {
      bases[f].push_back(one());
    }
  }
  if (coef.is_zero()) return Expr(coef);

  std::vector<Expr> out;
  std::vector<Expr> redo;
  auto place = [&](const Expr& p) {
    if (p.is_constant()) {
      coef = coef * p.value();
    } else if (p.kind() == Kind::Mul) {
      redo.push_back(p);
    } else if (!p.is_one()) {
      out.push_back(p);
    }
  };
  for (const auto& [base, exps] : bases) place(simp_pow(base, simp_add(exps)));
  if (!exp_args.empty()) place(simp_fn(Kind::Exp, simp_add(exp_args)));
  if (coef.is_zero()) return Expr(coef);

  if (!redo.empty()) {
    std::vector<Expr> again = out;
    again.insert(again.end(), redo.begin(), redo.end());
    again.emplace_back(coef);
    return simp_mul(again);
  }
  std::sort(out.begin(), out.end(), ExprLess{});
  if (out.empty()) return Expr(coef);
  if (coef.is_one() && out.size() == 1) return out.front();
  if (!coef.is_one()) out.insert(out.begin(), Expr(coef));
  return Expr::mul(std::move(out));
}

bool is_integer_constant(const Expr& e) { return e.is_constant() && e.value().is_integer(); }

Expr simp_pow(const Expr& base, const Expr& exponent) {
  if (exponent.is_zero()) return Expr(1);
  if (exponent.is_one()) return base;
  if (base.is_constant() && exponent.is_constant()) {
    if (auto r = Number::pow(base.value(), exponent.value())) return Expr(*r);
    return Expr::pow(base, exponent);
  }
  if (base.is_one()) return Expr(1);
  if (base.is_zero() && exponent.is_constant() && !exponent.value().is_negative()) return base;
  if (base.kind() == Kind::Pow && is_integer_constant(exponent)) {
    return simp_pow(base.arg(0), simp_mul({base.arg(1), exponent}));
  }
  if (base.kind() == Kind::Mul && is_integer_constant(exponent)) {
    std::vector<Expr> parts;
    parts.reserve(base.args().size());
    for (const auto& f : base.args()) parts.push_back(simp_pow(f, exponent));
    return simp_mul(parts);
  }
  if (base.kind() == Kind::Exp) return simp_fn(Kind::Exp, simp_mul({exponent, base.arg(0)}));
  if (base.kind() == Kind::Sqrt && is_integer_constant(exponent) && exponent.value().exact().num % 2 == 0) {
    return simp_pow(base.arg(0), Expr(exponent.value().exact().num / 2));
  }
  return Expr::pow(base, exponent);
}

// c*log(y) -> (y, c); log(y) -> (y, 1)
std::optional<std::pair<Expr, Expr>> as_scaled_log(const Expr& t) {
  if (t.kind() == Kind::Log) return std::make_pair(t.arg(0), one());
  if (t.kind() == Kind::Mul && t.args().size() == 2 && t.arg(0).is_constant() && t.arg(1).kind() == Kind::Log) {
    return std::make_pair(t.arg(1).arg(0), t.arg(0));
  }
  return std::nullopt;
}

Expr fold_float(Kind k, const Expr& a) {
  double v = a.value().to_double();
  double r = 0.0;
  switch (k) {
    case Kind::Exp: r = std::exp(v); break;
    case Kind::Log:
      if (v <= 0.0) return Expr::apply(k, a);
      r = std::log(v);
      break;
    case Kind::Sin: r = std::sin(v); break;
    case Kind::Cos: r = std::cos(v); break;
    case Kind::Sqrt:
      if (v < 0.0) return Expr::apply(k, a);
      r = std::sqrt(v);
      break;
    default: break;
  }
  if (!std::isfinite(r)) return Expr::apply(k, a);
  return Expr(r);
}

Expr simp_fn(Kind k, const Expr& a) {
  if (a.is_constant() && !a.value().is_exact()) return fold_float(k, a);
  switch (k) {
    case Kind::Exp: {
      if (a.is_zero()) return Expr(1);
      if (a.kind() == Kind::Log) return a.arg(0);
      if (auto sl = as_scaled_log(a)) return simp_pow(sl->first, sl->second);
      if (a.kind() == Kind::Add) {
        std::vector<Expr> pulled;
        std::vector<Expr> rest;
        for (const auto& t : a.args()) {
          if (auto sl = as_scaled_log(t)) {
            pulled.push_back(simp_pow(sl->first, sl->second));
          } else {
            rest.push_back(t);
          }
        }
        if (!pulled.empty()) {
          pulled.push_back(simp_fn(Kind::Exp, simp_add(rest)));
          return simp_mul(pulled);
        }
      }
      return Expr::apply(k, a);
    }
    case Kind::Log:
      if (a.is_one()) return Expr(0);
      if (a.kind() == Kind::Exp) return a.arg(0);
      return Expr::apply(k, a);
    case Kind::Sin:
      if (a.is_zero()) return Expr(0);
      return Expr::apply(k, a);
    case Kind::Cos:
      if (a.is_zero()) return Expr(1);
      return Expr::apply(k, a);
    case Kind::Sqrt:
      if (a.is_constant()) {
        if (auto r = Number::pow(a.value(), Number::rational(1, 2))) return Expr(*r);
      }
      return Expr::apply(k, a);
    default:
      return Expr::apply(k, a);
  }
}

Expr step(const Expr& e) {
  switch (e.kind()) {
    case Kind::Constant:
    case Kind::Variable:
      return e;
    case Kind::Add:
    case Kind::Mul: {
      std::vector<Expr> kids;
      kids.reserve(e.args().size());
      for (const auto& a : e.args()) kids.push_back(step(a));
      return e.kind() == Kind::Add ? simp_add(kids) : simp_mul(kids);
    }
    case Kind::Pow:
      return simp_pow(step(e.arg(0)), step(e.arg(1)));
    case Kind::Neg:
      return simp_mul({Expr(-1), step(e.arg(0))});
    default:
      return simp_fn(e.kind(), step(e.arg(0)));
  }
}

// Distribute over sums bottom-up. Children are already expanded.
Expr expand_rec(const Expr& e) {
  switch (e.kind()) {
    case Kind::Constant:
    case Kind::Variable:
      return e;
    case Kind::Add: {
      std::vector<Expr> kids;
      for (const auto& a : e.args()) kids.push_back(expand_rec(a));
      return simp_add(kids);
    }
    case Kind::Neg:
      return expand_rec(simp_mul({Expr(-1), e.arg(0)}));
    case Kind::Mul: {
      std::vector<Expr> terms{one()};
      for (const auto& f : e.args()) {
        Expr ef = expand_rec(f);
        std::vector<Expr> next;
        const std::vector<Expr> parts = ef.kind() == Kind::Add ? ef.args() : std::vector<Expr>{ef};
        next.reserve(terms.size() * parts.size());
        for (const auto& t : terms)
          for (const auto& p : parts) next.push_back(simp_mul({t, p}));
        Expr merged = simp_add(next);
        terms = merged.kind() == Kind::Add ? merged.args() : std::vector<Expr>{merged};
      }
      return simp_add(terms);
    }
    case Kind::Pow: {
      Expr b = expand_rec(e.arg(0));
      Expr x = expand_rec(e.arg(1));
      if (b.kind() == Kind::Add && x.is_constant() && x.value().is_exact() && x.value().exact().is_integer()) {
        auto n = x.value().exact().num;
        if (n >= 2 && n <= 8) {
          std::vector<Expr> factors(static_cast<std::size_t>(n), b);
          return expand_rec(Expr::mul(factors));
        }
      }
      return simp_pow(b, x);
    }
    default:
      return simp_fn(e.kind(), expand_rec(e.arg(0)));
  }
}

}  // namespace

Expr simplify(const Expr& e) {
  Expr s = step(e);
  for (int i = 0; i < 16; ++i) {
    Expr t = step(s);
    if (t == s) break;
    s = t;
  }
  return s;
}

Expr expand(const Expr& e) { return simplify(expand_rec(simplify(e))); }

}  // namespace simred
