#include "doctest.h"
#include "simred/parse.hpp"
#include "simred/symmetry.hpp"

using namespace simred;

namespace {

Expr P(const char* s) { return simplify(parse(s)); }

PdeSpec heat() { return {Expr(1), Expr(0), Expr(0), {}}; }

Generator gen(const char* phi, const char* xi, const char* M) { return {P(phi), P(xi), P(M)}; }

Box jet_box() {
  return {{"x", 0, 1}, {"t", 0, 1}, {"u", -2, 2}, {"u_x", -2, 2}, {"u_t", -2, 2}, {"u_2x", -2, 2}};
}

bool zero(const Expr& e, double tol = 1e-12) { return is_zero_sampled(e, jet_box(), {100, tol, 3}).zero; }

double max_abs(const Expr& e, const Box& box) { return is_zero_sampled(e, box, {100, 1e-12, 42}).max_abs; }

const char* kHeatSymmetries[][3] = {
    {"1", "0", "0"},                           // time translation
    {"0", "1", "0"},                           // space translation
    {"0", "0", "1"},                           // scaling of u
    {"0", "2*t", "-x"},                        // Galilean boost
    {"2*t", "x", "0"},                         // dilation
    {"4*t^2", "4*t*x", "-(x^2 + 2*t)"},        // projective
};

}  // namespace

TEST_CASE("prolong2 examples") {
  auto p = prolong2(gen("0", "0", "1"));
  CHECK(p.eta_x == P("u_x"));
  CHECK(p.eta_t == P("u_t"));
  CHECK(p.eta_2x == P("u_2x"));

  p = prolong2(gen("1", "0", "0"));
  CHECK(p.eta_x.is_zero());
  CHECK(p.eta_t.is_zero());
  CHECK(p.eta_2x.is_zero());

  p = prolong2(gen("0", "x", "0"));
  CHECK(p.eta_x == P("-u_x"));
  CHECK(p.eta_t.is_zero());
  CHECK(p.eta_2x == P("-2*u_2x"));
}

TEST_CASE("prolong2 matches the closed-form coefficients for eta = M u") {
  const char* cases[][3] = {
      {"t^2 + 1", "x*t + sin(x)", "exp(x - t)"},
      {"exp(t)", "x^3/(1 + t^2)", "cos(x*t)"},
      {"2*t + 3", "4*t*x", "-(x^2 + 2*t)"},
  };
  for (const auto& c : cases) {
    Generator g = gen(c[0], c[1], c[2]);
    auto pr = prolong2(g);
    const Expr u = Expr::variable("u"), ux = Expr::variable("u_x"), ut = Expr::variable("u_t"),
               uxx = Expr::variable("u_2x");
    Expr Mx = diff(g.M, "x"), Mt = diff(g.M, "t"), Mxx = diff(g.M, "x", 2);
    Expr xix = diff(g.xi, "x"), xit = diff(g.xi, "t"), xixx = diff(g.xi, "x", 2), phit = diff(g.phi, "t");
    Expr ex = Mx * u + (g.M - xix) * ux;
    Expr et = Mt * u + g.M * ut - xit * ux - phit * ut;
    Expr exx = Mxx * u + (Expr(2) * Mx - xixx) * ux + (g.M - Expr(2) * xix) * uxx;
    INFO(c[0], " | ", c[1], " | ", c[2]);
    CHECK(zero(pr.eta_x - ex));
    CHECK(zero(pr.eta_t - et));
    CHECK(zero(pr.eta_2x - exx));
  }
}

TEST_CASE("generator dependences are enforced") {
  CHECK_THROWS_AS(prolong2(gen("x", "0", "0")), std::invalid_argument);
  CHECK_THROWS_AS(prolong2(gen("0", "u", "0")), std::invalid_argument);
  CHECK_THROWS_AS(prolong2(gen("0", "0", "u")), std::invalid_argument);
  PdeSpec bad{P("q*x"), Expr(0), Expr(0), {}};
  CHECK_THROWS_AS(determining_residuals(bad, Generator::zero()), std::invalid_argument);
}

TEST_CASE("invariance_residual examples") {
  CHECK(invariance_residual(heat(), gen("1", "0", "0")).is_zero());
  CHECK(zero(invariance_residual(heat(), gen("0", "2*t", "-x"))));
  Expr r = invariance_residual(heat(), gen("0", "0", "x"));
  Box b{{"x", 0, 1}, {"t", 0, 1}, {"u", -2, 2}, {"u_x", -2, 2}, {"u_2x", -2, 2}};
  CHECK(max_abs(r, b) > 0.1);
  CHECK(zero(r - P("2*u_x")));
  CHECK_FALSE(r.depends_on("u_t"));
}

TEST_CASE("determining_residuals examples") {
  auto r = determining_residuals(heat(), gen("2*t", "x", "0"));
  CHECK(r[0].is_zero());
  CHECK(r[1].is_zero());
  CHECK(r[2].is_zero());

  PdeSpec cc{Expr(1), P("-(1 + 1)"), Expr(0), {}};
  r = determining_residuals(cc, gen("1", "1", "0"));
  CHECK(r[0].is_zero());
  CHECK(r[1].is_zero());
  CHECK(r[2].is_zero());

  r = determining_residuals(heat(), gen("t", "0", "0"));
  CHECK(r[0].is_one());
}

TEST_CASE("classical heat symmetries satisfy the determining system") {
  Box unit = heat().domain.box();
  for (const auto& s : kHeatSymmetries) {
    auto r = determining_residuals(heat(), gen(s[0], s[1], s[2]));
    INFO(s[0], " | ", s[1], " | ", s[2]);
    for (const auto& ri : r) CHECK(max_abs(ri, unit) <= 1e-12);
  }
}

TEST_CASE("determining residuals are additive in the generator") {
  PdeSpec p{P("1 + x^2"), P("x*t"), P("sin(x) + t"), {}};
  Generator g1 = gen("t^2", "x*t", "exp(x)");
  Generator g2 = gen("1 + t", "x^2", "t*x");
  auto r1 = determining_residuals(p, g1);
  auto r2 = determining_residuals(p, g2);
  auto r12 = determining_residuals(p, g1 + g2);
  for (int i = 0; i < 3; ++i) CHECK(is_zero_sampled(r12[i] - r1[i] - r2[i], p.domain.box()).zero);
}

TEST_CASE("collected jet coefficients agree with the printed determining system") {
  PdeSpec p{P("1 + x^2*t"), P("x - t"), P("exp(-x)*t"), {}};
  Generator g = gen("t^2 + 1", "x*t + 1", "x^2 - t");
  auto coeffs = collect_jet_coefficients(invariance_residual(p, g));
  auto r = determining_residuals(p, g);
  Box box = p.domain.box();
  CHECK(is_zero_sampled(coeffs[0] - r[0], box).zero);
  CHECK(is_zero_sampled(coeffs[1] + r[1], box).zero);
  CHECK(is_zero_sampled(coeffs[2] + r[2], box).zero);
}

TEST_CASE("monomial_collect_check") {
  auto jets = sample_jets(heat().domain, 50, 1);
  CHECK(monomial_collect_check(heat(), gen("0", "2*t", "-x"), jets));
  CHECK(monomial_collect_check(heat(), gen("t", "0", "0"), jets));
  CHECK(monomial_collect_check(PdeSpec{P("x + 2"), P("t"), P("x*t"), {}}, Generator::zero(), jets));
  CHECK(monomial_collect_check(heat(), gen("0", "0", "x"), jets));

  // Random instances: polynomial/exponential coefficient fields.
  const char* coeffs[][3] = {{"1 + x^2", "x*t", "sin(x)"}, {"exp(x - t)", "t^2", "1"}, {"2", "-3", "x^3 - t"}};
  const char* gens[][3] = {{"t", "x*t", "x"}, {"exp(t)", "x^2 + t", "cos(x)"}, {"1 + t^2", "sin(x*t)", "t*x^2"}};
  for (const auto& c : coeffs)
    for (const auto& g : gens) CHECK(monomial_collect_check(PdeSpec{P(c[0]), P(c[1]), P(c[2]), {}}, gen(g[0], g[1], g[2]), jets));
}
