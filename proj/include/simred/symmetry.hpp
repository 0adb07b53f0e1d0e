#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "simred/expr.hpp"
#include "simred/sampling.hpp"

namespace simred {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Rectangle [x.lo, x.hi] x [t.lo, t.hi].
struct Domain {
  Interval x{0.0, 1.0};
  Interval t{0.0, 1.0};

  Box box() const { return {{"x", x.lo, x.hi}, {"t", t.lo, t.hi}}; }
};

/// u_t = A(x,t) u_xx + B(x,t) u_x + C(x,t) u on a rectangle.
struct PdeSpec {
  Expr A;
  Expr B;
  Expr C;
  Domain domain;

  /// Throws std::invalid_argument if a coefficient has free variables other
  /// than x, t or the domain is degenerate.
  void validate() const;
};

/// u_t - A u_xx - B u_x - C u for a candidate solution u(x, t).
Expr pde_residual(const PdeSpec& p, const Expr& u);

/// Point-symmetry infinitesimals with the reduced dependences
/// phi = phi(t), xi = xi(x,t), eta = M(x,t) u.
struct Generator {
  Expr phi;
  Expr xi;
  Expr M;

  static Generator zero() { return {Expr(0), Expr(0), Expr(0)}; }
  void validate() const;
};

Generator operator+(const Generator& a, const Generator& b);

/// Second-prolongation coefficients over the jet (x, t, u, u_x, u_t, u_2x).
struct Prolongation2 {
  Expr eta_x;
  Expr eta_t;
  Expr eta_2x;
};

/// Jet sample with u_t eliminated through the PDE.
struct JetPoint {
  double x = 0.0;
  double t = 0.0;
  double u = 0.0;
  double u_x = 0.0;
  double u_2x = 0.0;

  NumericBindings bindings() const;
};

namespace jet {
inline const char* const kU = "u";
inline const char* const kUx = "u_x";
inline const char* const kUt = "u_t";
inline const char* const kU2x = "u_2x";
inline const char* const kUxt = "u_xt";
inline const char* const kU2t = "u_2t";
inline const char* const kU3x = "u_3x";
}  // namespace jet

/// Total x- and t-derivatives on jet-space expressions (truncated at the
/// third-order symbols, which never survive for second-order prolongation).
Expr total_dx(const Expr& f);
Expr total_dt(const Expr& f);

Prolongation2 prolong2(const Generator& g);

/// Invariance condition of the PDE under g with u_t replaced through the PDE.
/// Vanishes identically in (u, u_x, u_2x) iff g is a symmetry.
Expr invariance_residual(const PdeSpec& p, const Generator& g);

/// The three determining equations in x, t, as printed in the classical
/// form: r1 is the u_2x coefficient of the invariance residual, r2 and r3 are
/// the negated u_x and u coefficients.
std::array<Expr, 3> determining_residuals(const PdeSpec& p, const Generator& g);

/// Coefficients of (u_2x, u_x, u) in the invariance residual, extracted by
/// differentiation (the residual is affine in these jets).
std::array<Expr, 3> collect_jet_coefficients(const Expr& invariance);

/// Cross-checks the collection step: at every jet point the invariance
/// residual equals r1*u_2x - r2*u_x - r3*u to relative `tol`.
bool monomial_collect_check(const PdeSpec& p, const Generator& g, const std::vector<JetPoint>& jets,
                            double tol = 1e-9);

/// Quasi-random jets over the PDE domain with u, u_x, u_2x in [-2, 2].
std::vector<JetPoint> sample_jets(const Domain& d, std::size_t n, std::uint64_t seed);

}  // namespace simred
