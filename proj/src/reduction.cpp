#include "simred/reduction.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace simred {

namespace {

constexpr int kScanPoints = 257;

void require_only(const Expr& e, const char* var, const char* what) {
  for (const auto& name : e.free_variables())
    if (name != var) throw std::invalid_argument(std::string(what) + " must depend on " + var + " only: " + e.str());
}

// Throws unless f keeps a strict sign on [lo, hi], scanning a uniform grid.
void require_definite(const Expr& f, const char* var, double lo, double hi, const std::string& what) {
  double first_sign = 0.0;
  for (int i = 0; i < kScanPoints; ++i) {
    const double s = lo + (hi - lo) * i / (kScanPoints - 1);
    double value = 0.0;
    try {
      value = eval_numeric(f, {{var, s}});
    } catch (const EvalError& e) {
      throw std::invalid_argument(what + " cannot be evaluated at " + var + " = " + std::to_string(s) + ": " +
                                  e.what());
    }
    const double sign = value > 0 ? 1.0 : (value < 0 ? -1.0 : 0.0);
    if (sign == 0.0 || (first_sign != 0.0 && sign != first_sign)) {
      std::ostringstream os;
      os.precision(17);
      os << what << " vanishes or changes sign at " << var << " = " << s;
      throw std::invalid_argument(os.str());
    }
    first_sign = sign;
  }
}

Expr num(double d) {
  if (std::nearbyint(d) == d && std::fabs(d) < 1e15) return Expr(static_cast<std::int64_t>(d));
  return Expr(d);
}

// Total x- or t-derivative of an expression in (x, t, Phi0, Phi1) where
// Phi_k are derivatives of Phi(z) and z = z(x, t).
Expr total_d(const Expr& f, const char* var, const Expr& z) {
  const Expr dz = diff(z, var);
  return simplify(Expr::add({diff(f, var), Expr::variable(ode::kPhi1) * dz * diff(f, ode::kPhi0),
                             Expr::variable(ode::kPhi2) * dz * diff(f, ode::kPhi1)}));
}

}  // namespace

void SeparableAnsatz::validate(const Domain& d) const {
  require_only(phi, "t", "phi");
  require_only(P, "x", "P");
  require_only(R, "x", "R");
  if (!std::isfinite(q) || q == 0.0) throw std::invalid_argument("q must be finite and nonzero");
  if (!std::isfinite(v)) throw std::invalid_argument("v must be finite");
  require_definite(simplify(phi), "t", d.t.lo, d.t.hi, "phi");
  require_definite(diff(P, "x"), "x", d.x.lo, d.x.hi, "P'");
}

Generator SeparableAnsatz::generator() const {
  const Expr dP = diff(P, "x");
  const Expr xi = simplify(num(q) * phi / dP);
  const Expr M = simplify(num(q) * num(v) * phi * diff(R, "x") / dP);
  return {simplify(phi), xi, M};
}

std::pair<Expr, Expr> invariants(const SeparableAnsatz& a) {
  const Expr I1 = simplify(exp(a.P - num(a.q) * Expr::variable("t")));
  const Expr I2 = simplify(Expr::variable("u") * exp(-(num(a.v) * a.R)));
  return {I1, I2};
}

Expr generator_action(const SeparableAnsatz& a, const Expr& I) {
  const Generator g = a.generator();
  return simplify(Expr::add(
      {g.phi * diff(I, "t"), g.xi * diff(I, "x"), g.M * Expr::variable("u") * diff(I, "u")}));
}

bool generator_annihilation_check(const SeparableAnsatz& a, const Domain& d, const SampleOptions& opt) {
  a.validate(d);
  const auto [I1, I2] = invariants(a);
  Box box = d.box();
  box.push_back({"u", -2.0, 2.0});
  return is_zero_sampled(generator_action(a, I1), box, opt).zero &&
         is_zero_sampled(generator_action(a, I2), box, opt).zero;
}

ReductionResult similarity_reduce(const PdeSpec& p, const SeparableAnsatz& a) {
  p.validate();
  a.validate(p.domain);
  const auto [z, i2] = invariants(a);

  const Expr u = simplify(exp(num(a.v) * a.R) * Expr::variable(ode::kPhi0));
  const Expr u_x = total_d(u, "x", z);
  const Expr u_xx = total_d(u_x, "x", z);
  const Expr u_t = total_d(u, "t", z);
  const Expr residual = Expr::add({p.A * u_xx, p.B * u_x, p.C * u, -u_t});
  const Expr reduced = expand(exp(-(num(a.v) * a.R)) * residual);

  ReductionResult r;
  r.z_expr = z;
  r.i2_expr = i2;
  r.c2 = diff(reduced, ode::kPhi2);
  r.c1 = diff(reduced, ode::kPhi1);
  r.c0 = diff(reduced, ode::kPhi0);
  r.ode = reduced;
  r.domain = p.domain;
  r.phase = simplify(a.P - num(a.q) * Expr::variable("t"));
  r.q = a.q;
  return r;
}

ClosureReport z_closure_check(const ReductionResult& r, std::size_t pairs, std::uint64_t seed) {
  ClosureReport rep;
  const Domain& d = r.domain;
  HaltonSequence seq(3, seed);
  const Expr P = simplify(substitute(r.phase, {{"t", Expr(0)}}));
  const std::size_t max_draws = 200 * pairs + 1000;
  for (std::size_t draw = 0; draw < max_draws && rep.pairs_checked < pairs; ++draw) {
    const auto h = seq.next();
    const double x1 = d.x.lo + (d.x.hi - d.x.lo) * h[0];
    const double t1 = d.t.lo + (d.t.hi - d.t.lo) * h[1];
    const double x2 = d.x.lo + (d.x.hi - d.x.lo) * h[2];
    double t2 = 0.0;
    try {
      t2 = t1 + (eval_numeric(P, {{"x", x2}}) - eval_numeric(P, {{"x", x1}})) / r.q;
    } catch (const EvalError&) {
      continue;
    }
    if (!(t2 >= d.t.lo && t2 <= d.t.hi)) continue;
    const NumericBindings b1{{"x", x1}, {"t", t1}};
    const NumericBindings b2{{"x", x2}, {"t", t2}};
    try {
      const double c2a = eval_numeric(r.c2, b1);
      const double c2b = eval_numeric(r.c2, b2);
      if (c2a == 0.0 || c2b == 0.0) continue;
      for (const Expr* c : {&r.c1, &r.c0}) {
        const double va = eval_numeric(*c, b1) / c2a;
        const double vb = eval_numeric(*c, b2) / c2b;
        const double rel = std::fabs(va - vb) / std::max({1.0, std::fabs(va), std::fabs(vb)});
        rep.max_rel_diff = std::max(rep.max_rel_diff, rel);
      }
    } catch (const EvalError&) {
      continue;
    }
    ++rep.pairs_checked;
  }
  return rep;
}

std::string to_string(Target t) {
  switch (t) {
    case Target::Wave: return "WAVE";
    case Target::Oscillator: return "OSCILLATOR";
    case Target::Identity: return "IDENTITY";
    case Target::Other: return "OTHER";
  }
  return "OTHER";
}

Classification classify_target(const ReductionResult& r, const SampleOptions& opt) {
  const Box box = r.domain.box();
  const bool z2 = is_zero_sampled(r.c2, box, opt).zero;
  const bool z1 = is_zero_sampled(r.c1, box, opt).zero;
  const bool z0 = is_zero_sampled(r.c0, box, opt).zero;
  if (z2 && z1 && z0) return {Target::Identity, std::nullopt};
  if (z2 || !z1) return {Target::Other, std::nullopt};
  if (z0) return {Target::Wave, std::nullopt};

  std::vector<double> ratios;
  try {
    for (const auto& b : sample_box(box, opt.samples, opt.seed)) {
      const double c2 = eval_numeric(r.c2, b);
      if (c2 == 0.0) return {Target::Other, std::nullopt};
      ratios.push_back(eval_numeric(r.c0, b) / c2);
    }
  } catch (const EvalError&) {
    return {Target::Other, std::nullopt};
  }
  double mean = 0.0;
  for (double v : ratios) mean += v;
  mean /= static_cast<double>(ratios.size());
  if (!(mean > 0.0)) return {Target::Other, std::nullopt};
  for (double v : ratios)
    if (std::fabs(v - mean) > 1e-9 * std::max(1.0, mean)) return {Target::Other, std::nullopt};
  return {Target::Oscillator, std::sqrt(mean)};
}

}  // namespace simred
