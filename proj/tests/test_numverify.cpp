#include <cmath>
#include <numbers>

#include "doctest.h"
#include "simred/numverify.hpp"
#include "simred/parse.hpp"

using namespace simred;

namespace {

Expr P(const char* s) { return simplify(parse(s)); }

PdeSpec pde(const char* A, const char* B, const char* C) { return {P(A), P(B), P(C), {}}; }

// Two-layer column: N on the top La meters, zero on the Lb meters below.
// phi = z + H below, matched at the interface to the sine/cosine pair above;
// eigenvalues solve sin(k La) + k Lb cos(k La) = 0 with C = N / k.
double two_layer_root(double N, double La, double Lb, int m) {
  auto g = [&](double k) { return std::sin(k * La) + k * Lb * std::cos(k * La); };
  double lo = (m - 0.5) * std::numbers::pi / La, hi = m * std::numbers::pi / La;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    ((g(mid) > 0) == (g(lo) > 0) ? lo : hi) = mid;
  }
  return N / (0.5 * (lo + hi));
}

}  // namespace

TEST_CASE("residual_on_grid") {
  Grid1D g{0, 1, 21, 0, 1, 20};
  CHECK(residual_on_grid(pde("1", "-2", "0"), P("exp(x - t)"), g).max_abs <= 1e-12);
  CHECK(residual_on_grid(pde("0", "-1", "1"), P("sin(exp(x - t))*exp(x)"), g).max_abs <= 1e-12);
  auto heat = residual_on_grid(pde("1", "0", "0"), P("exp(x - t)"), g);
  CHECK(heat.max_abs == doctest::Approx(2 * std::exp(1.0)).epsilon(1e-14));
  CHECK(heat.x == 1.0);
  CHECK(heat.t == 0.0);
  try {
    residual_on_grid(pde("1", "0", "0"), P("log(x - 0.5)"), g);
    FAIL("expected GridEvalError");
  } catch (const GridEvalError& e) {
    CHECK(e.x() <= 0.5);
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid1D({0, 1, 2, 0, 1, 1}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D({1, 1, 5, 0, 1, 1}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D({0, 1, 5, 0, 1, 0}).validate(), std::invalid_argument);
}

TEST_CASE("fd_solve examples") {
  const Expr exact = P("exp(x - t)");
  Grid1D g{0, 1, 41, 0, 0.1, 400};
  auto f = fd_solve(pde("1", "-2", "0"), P("exp(x)"), exact, g);
  CHECK(final_error(f, exact) <= 1e-3);
  CHECK(f.values.size() == 41 * 401);

  // Stability bound: dt = 0.1/100 > dx^2/2 = 3.125e-4.
  try {
    fd_solve(pde("1", "-2", "0"), P("exp(x)"), exact, Grid1D{0, 1, 41, 0, 0.1, 100});
    FAIL("expected StabilityError");
  } catch (const StabilityError& e) {
    CHECK(e.required_dt() == doctest::Approx(3.125e-4));
  }
  CHECK_THROWS_AS(fd_solve(pde("0", "-1", "0"), P("x"), P("x - t"), Grid1D{0, 1, 11, 0, 1, 5}), StabilityError);

  // Zero PDE keeps the initial data exactly.
  Grid1D z{0, 1, 11, 0, 1, 7};
  auto c = fd_solve(pde("0", "0", "0"), P("sin(3*x) + x^2"), P("sin(3*x) + x^2"), z);
  for (std::size_t n = 0; n <= z.nt; ++n)
    for (std::size_t i = 0; i < z.nx; ++i) CHECK(c.at(i, n) == c.at(i, 0));

  // Upwind advection error shrinks with refinement.
  const Expr adv = P("sin(exp(x - t))");
  double prev = 1e9;
  for (std::size_t nx : {21, 41, 81}) {
    Grid1D ga{0, 1, nx, 0, 0.5, (nx - 1)};
    double e = final_error(fd_solve(pde("0", "-1", "0"), P("sin(exp(x))"), adv, ga), adv);
    CHECK(e < prev);
    prev = e;
  }

  // Explicit blow-up is reported with the step index.
  Grid1D big{0, 1, 11, 0, 1, 10};
  CHECK_THROWS_WITH_AS(fd_solve(pde("0", "0", "1e300"), P("1e10"), P("1e10"), big), doctest::Contains("step"),
                       std::runtime_error);
}

TEST_CASE("convergence_order") {
  auto diffusive = convergence_order(pde("1", "-2", "0"), P("exp(x - t)"), Grid1D{0, 1, 11, 0, 0.1, 40}, 4);
  REQUIRE(diffusive.size() == 4);
  CHECK_FALSE(diffusive[0].order);
  for (std::size_t i = 1; i < 4; ++i) {
    REQUIRE(diffusive[i].order);
    CHECK(*diffusive[i].order >= 1.7);
    CHECK(*diffusive[i].order <= 2.3);
  }
  CHECK(diffusive[3].nt == 40 * 64);

  auto upwind = convergence_order(pde("0", "-1", "0"), P("sin(exp(x - t))"), Grid1D{0, 1, 11, 0, 0.5, 10}, 4);
  CHECK(upwind[3].nt == 80);
  for (std::size_t i = 1; i < 4; ++i) {
    REQUIRE(upwind[i].order);
    CHECK(*upwind[i].order >= 0.7);
    CHECK(*upwind[i].order <= 1.3);
  }

  auto flat = convergence_order(pde("1", "0", "0"), P("3"), Grid1D{0, 1, 11, 0, 0.1, 40}, 3);
  for (const auto& l : flat) {
    CHECK(l.error <= 1e-14);
    CHECK_FALSE(l.order);
  }
  CHECK_THROWS_AS(convergence_order(pde("1", "0", "0"), P("3"), Grid1D{}, 2), std::invalid_argument);
}

TEST_CASE("mode_solve with constant N") {
  const double N = 2e-4, H = 300;
  auto modes = mode_solve(ModeProblem::constant(N, H), 5);
  REQUIRE(modes.size() == 5);
  CHECK(modes[0].C == doctest::Approx(0.06 / std::numbers::pi).epsilon(1e-9));
  for (std::size_t m = 1; m <= 5; ++m) {
    const auto& md = modes[m - 1];
    INFO("m = ", m);
    CHECK(md.m == m);
    CHECK(std::fabs(md.C - N * H / (m * std::numbers::pi)) <= 1e-6 * md.C);
    CHECK(md.k == doctest::Approx(m * std::numbers::pi / H).epsilon(1e-6));
    CHECK(md.interior_zeros == m - 1);
    CHECK(md.shape.size() == 201);
    if (m > 1) CHECK(md.C < modes[m - 2].C);
  }
  // Slightly off an eigenvalue the surface condition fails.
  const ModeProblem prob = ModeProblem::constant(N, H);
  CHECK(std::fabs(shoot(prob, modes[0].C * 1.01)) > 1.0);
  CHECK(std::fabs(shoot(prob, modes[0].C)) < 1e-6);
}

TEST_CASE("mode_solve with a two-layer profile") {
  const double N = 2e-4;
  ModeProblem m;
  m.H = 1000;
  m.layers = {{-1000, -300, Expr(0)}, {-300, 0, Expr(N)}};
  auto modes = mode_solve(m, 4);
  for (int i = 1; i <= 4; ++i) {
    const double oracle = two_layer_root(N, 300, 700, i);
    INFO("m = ", i);
    CHECK(std::fabs(modes[i - 1].C - oracle) <= 1e-6 * oracle);
    CHECK(modes[i - 1].interior_zeros == static_cast<std::size_t>(i - 1));
  }
}

TEST_CASE("mode problem validation") {
  ModeProblem m = ModeProblem::constant(2e-4, 300);
  m.layers[0].z_from = -200;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m = ModeProblem::constant(-1, 300);
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m = ModeProblem::constant(2e-4, 300);
  m.c_min = 1;
  m.c_max = 2;
  CHECK_THROWS_WITH_AS(mode_solve(m, 1), doctest::Contains("[1, 2]"), std::runtime_error);
  CHECK_THROWS_AS(mode_solve(ModeProblem::constant(0, 300), 1), std::invalid_argument);
}
