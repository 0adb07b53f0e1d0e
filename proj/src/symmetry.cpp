#include "simred/symmetry.hpp"

#include <cmath>
#include <stdexcept>

namespace simred {

namespace {

Expr var(const char* name) { return Expr::variable(name); }

void require_vars(const Expr& e, std::initializer_list<const char*> allowed, const std::string& what) {
  for (const auto& v : e.free_variables()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || v == a;
    if (!ok) throw std::invalid_argument(what + " must not depend on '" + v + "': " + e.str());
  }
}

void require_second_order_jet(const Expr& e) {
  for (const char* bad : {jet::kUxt, jet::kU2t, jet::kU3x})
    if (e.depends_on(bad)) throw std::logic_error(std::string("prolongation produced ") + bad + ": " + e.str());
}

}  // namespace

void PdeSpec::validate() const {
  require_vars(A, {"x", "t"}, "A");
  require_vars(B, {"x", "t"}, "B");
  require_vars(C, {"x", "t"}, "C");
  if (!(domain.x.hi > domain.x.lo) || !(domain.t.hi > domain.t.lo))
    throw std::invalid_argument("PDE domain is degenerate");
}

Expr pde_residual(const PdeSpec& p, const Expr& u) {
  return simplify(diff(u, "t") - p.A * diff(u, "x", 2) - p.B * diff(u, "x") - p.C * u);
}

void Generator::validate() const {
  require_vars(phi, {"t"}, "phi");
  require_vars(xi, {"x", "t"}, "xi");
  require_vars(M, {"x", "t"}, "M");
}

Generator operator+(const Generator& a, const Generator& b) {
  return {simplify(a.phi + b.phi), simplify(a.xi + b.xi), simplify(a.M + b.M)};
}

NumericBindings JetPoint::bindings() const {
  return {{"x", x}, {"t", t}, {jet::kU, u}, {jet::kUx, u_x}, {jet::kU2x, u_2x}};
}

Expr total_dx(const Expr& f) {
  return simplify(Expr::add({diff(f, "x"), var(jet::kUx) * diff(f, jet::kU), var(jet::kU2x) * diff(f, jet::kUx),
                             var(jet::kUxt) * diff(f, jet::kUt), var(jet::kU3x) * diff(f, jet::kU2x)}));
}

Expr total_dt(const Expr& f) {
  return simplify(Expr::add({diff(f, "t"), var(jet::kUt) * diff(f, jet::kU), var(jet::kUxt) * diff(f, jet::kUx),
                             var(jet::kU2t) * diff(f, jet::kUt)}));
}

Prolongation2 prolong2(const Generator& g) {
  g.validate();
  const Expr u = var(jet::kU);
  const Expr ux = var(jet::kUx);
  const Expr ut = var(jet::kUt);
  const Expr uxx = var(jet::kU2x);
  const Expr uxt = var(jet::kUxt);
  const Expr eta = g.M * u;

  Prolongation2 p;
  p.eta_x = simplify(total_dx(eta) - ut * total_dx(g.phi) - ux * total_dx(g.xi));
  p.eta_t = simplify(total_dt(eta) - ut * total_dt(g.phi) - ux * total_dt(g.xi));
  p.eta_2x = simplify(total_dx(p.eta_x) - uxt * total_dx(g.phi) - uxx * total_dx(g.xi));
  require_second_order_jet(p.eta_x);
  require_second_order_jet(p.eta_t);
  require_second_order_jet(p.eta_2x);
  return p;
}

Expr invariance_residual(const PdeSpec& p, const Generator& g) {
  p.validate();
  const Prolongation2 pr = prolong2(g);
  const Expr u = var(jet::kU);
  const Expr ux = var(jet::kUx);
  const Expr uxx = var(jet::kU2x);
  const Expr eta = g.M * u;
  // Prolonged generator applied to A u_2x + B u_x + C u - u_t.
  Expr raw = Expr::add({
      (g.phi * diff(p.A, "t") + g.xi * diff(p.A, "x")) * uxx,
      (g.phi * diff(p.B, "t") + g.xi * diff(p.B, "x")) * ux,
      g.phi * diff(p.C, "t") * u,
      g.xi * diff(p.C, "x") * u,
      p.C * eta,
      p.B * pr.eta_x,
      -pr.eta_t,
      p.A * pr.eta_2x,
  });
  Expr on_shell = substitute(raw, {{jet::kUt, p.A * uxx + p.B * ux + p.C * u}});
  return expand(on_shell);
}

std::array<Expr, 3> determining_residuals(const PdeSpec& p, const Generator& g) {
  p.validate();
  g.validate();
  const Expr& A = p.A;
  const Expr& B = p.B;
  const Expr& C = p.C;
  const Expr phi_t = diff(g.phi, "t");
  const Expr xi_x = diff(g.xi, "x");
  const Expr xi_t = diff(g.xi, "t");
  const Expr xi_2x = diff(g.xi, "x", 2);
  const Expr M_x = diff(g.M, "x");
  const Expr M_t = diff(g.M, "t");
  const Expr M_2x = diff(g.M, "x", 2);

  Expr r1 = Expr::add({g.phi * diff(A, "t"), g.xi * diff(A, "x"), A * phi_t, Expr(-2) * A * xi_x});
  Expr r2 = Expr::add({-(g.phi * diff(B, "t")), -(g.xi * diff(B, "x")), B * xi_x, -xi_t, -(B * phi_t),
                       Expr(-2) * A * M_x, A * xi_2x});
  Expr r3 = Expr::add({-(g.phi * diff(C, "t")), -(g.xi * diff(C, "x")), -(B * M_x), M_t, -(phi_t * C), -(A * M_2x)});
  return {simplify(r1), simplify(r2), simplify(r3)};
}

std::array<Expr, 3> collect_jet_coefficients(const Expr& invariance) {
  return {diff(invariance, jet::kU2x), diff(invariance, jet::kUx), diff(invariance, jet::kU)};
}

bool monomial_collect_check(const PdeSpec& p, const Generator& g, const std::vector<JetPoint>& jets, double tol) {
  const Expr inv = invariance_residual(p, g);
  const auto r = determining_residuals(p, g);
  const Expr assembled = r[0] * var(jet::kU2x) - r[1] * var(jet::kUx) - r[2] * var(jet::kU);
  for (const auto& j : jets) {
    const auto b = j.bindings();
    double lhs = eval_numeric(inv, b);
    double rhs = eval_numeric(assembled, b);
    double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs), term_scale(inv, b), term_scale(assembled, b)});
    if (!(std::fabs(lhs - rhs) <= tol * scale)) return false;
  }
  return true;
}

std::vector<JetPoint> sample_jets(const Domain& d, std::size_t n, std::uint64_t seed) {
  Box box{{"x", d.x.lo, d.x.hi}, {"t", d.t.lo, d.t.hi}, {jet::kU, -2, 2}, {jet::kUx, -2, 2}, {jet::kU2x, -2, 2}};
  std::vector<JetPoint> out;
  for (const auto& b : sample_box(box, n, seed))
    out.push_back({b.at("x"), b.at("t"), b.at(jet::kU), b.at(jet::kUx), b.at(jet::kU2x)});
  return out;
}

}  // namespace simred
