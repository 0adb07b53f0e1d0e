#include <cmath>
#include <random>

#include "doctest.h"
#include "simred/parse.hpp"
#include "simred/synth.hpp"

using namespace simred;

namespace {

Expr P(const char* s) { return simplify(parse(s)); }

bool zero(const Expr& e, const Domain& d, double tol = 1e-9) { return is_zero_sampled(e, d.box(), {100, tol, 5}).zero; }
bool same(const Expr& a, const Expr& b, const Domain& d = {}) { return zero(a - b, d, 1e-12); }

WaveFamilyInput wave(const char* p, const char* r, double q, double v, const char* F = "1") {
  WaveFamilyInput in;
  in.P = P(p);
  in.R = P(r);
  in.q = q;
  in.v = v;
  in.F = P(F);
  return in;
}

OscFamilyInput osc(const char* p, const char* r, double q, double v, double k = 1) {
  OscFamilyInput in;
  in.P = P(p);
  in.R = P(r);
  in.q = q;
  in.v = v;
  in.k = k;
  return in;
}

}  // namespace

TEST_CASE("synth_wave examples") {
  auto p = synth_wave(wave("x", "0", 1, 0));
  CHECK(p.A == Expr(1));
  CHECK(p.B == Expr(-2));
  CHECK(p.C.is_zero());

  for (double q : {0.5, 1.0, 2.0})
    for (double v : {-1.0, 0.5}) {
      p = synth_wave(wave("x", "x", q, v));
      CHECK(same(p.A, Expr(1)));
      CHECK(same(p.B, Expr(-(1 + 2 * v + q))));
      CHECK(same(p.C, Expr(v * (v + 1 + q))));
    }

  p = synth_wave(wave("2*x", "0", 2, 0));
  CHECK(same(p.A, Expr::rational(1, 4)));
  CHECK(same(p.B, Expr::rational(-3, 2)));
  CHECK(p.C.is_zero());

  CHECK_THROWS_AS(synth_wave(wave("x", "0", 1, 0, "x")), std::invalid_argument);
  auto bad = wave("x^2", "0", 1, 0);
  bad.domain = {{-1, 1}, {0, 1}};
  CHECK_THROWS_AS(synth_wave(bad), std::invalid_argument);
  CHECK_THROWS_AS(synth_wave(wave("x", "0", 1, 0, "log(s)")), std::invalid_argument);
}

TEST_CASE("wave_solution examples") {
  CHECK(wave_solution(wave("x", "0", 1, 0)) == P("exp(x - t)"));
  auto in = wave("x", "x", 1, 1);
  in.a = 0;
  in.b = 1;
  CHECK(wave_solution(in) == P("exp(x)"));
  in.a = 1;
  CHECK(same(wave_solution(in), P("(exp(x - t) + 1)*exp(x)")));
}

TEST_CASE("wave_consistency_residuals") {
  auto in = wave("x + x^2/10", "x", 1.3, -0.7, "1 + s^2");
  auto p = synth_wave(in);
  for (const auto& r : wave_consistency_residuals(p, in.ansatz())) CHECK(zero(r, p.domain));

  PdeSpec heat{Expr(1), Expr(0), Expr(0), {}};
  auto r = wave_consistency_residuals(heat, wave("x", "0", 1, 0).ansatz());
  CHECK(same(r[0], Expr(2)));

  auto good = wave("x", "0", 1, 0);
  auto shifted = good.ansatz();
  shifted.q += 1;
  r = wave_consistency_residuals(synth_wave(good), shifted);
  CHECK(same(r[0], Expr(1)));
}

TEST_CASE("rewritten determining equations equal the scaled general system") {
  // Generic coefficients, generic separable ansatz, phi depending on t.
  Domain d{{0.3, 1.2}, {0.0, 1.0}};
  PdeSpec p{P("1 + x*t"), P("sin(x) - t"), P("exp(-x)*t^2"), d};
  SeparableAnsatz a{P("1 + t^2"), P("x + x^3"), P("cos(x)"), 0.8, 1.4};
  auto r = determining_residuals(p, a.generator());
  auto w = wave_consistency_residuals(p, a);
  Expr Px = diff(a.P, "x");
  CHECK(zero(w[2] - r[0] * Px * Px, d));
  CHECK(zero(w[3] + r[1] * Expr::pow(Px, Expr(4)), d));
  CHECK(zero(w[4] + r[2] * Expr::pow(Px, Expr(4)), d));

  PdeSpec p0{Expr(0), p.B, p.C, d};
  auto o = oscillator_system_residuals(p0, a);
  auto r0 = determining_residuals(p0, a.generator());
  CHECK(zero(o[3] + r0[1] * Expr::pow(Px, Expr(4)), d));
  CHECK(zero(o[4] + r0[2] * Expr::pow(Px, Expr(4)), d));
}

TEST_CASE("wave family closure over random draws") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> qd(0.5, 2.0), vd(-1.0, 1.0), ab(-2.0, 2.0);
  const char* Ps[] = {"x", "2*x", "x + x^2/10"};
  const char* Rs[] = {"0", "x"};
  const char* Fs[] = {"1", "s", "s^2"};
  for (int n = 0; n < 10; ++n) {
    auto in = wave(Ps[rng() % 3], Rs[rng() % 2], qd(rng), vd(rng), Fs[rng() % 3]);
    in.domain = {{0.5, 1.5}, {0.0, 1.0}};
    INFO("P=", in.P.str(), " R=", in.R.str(), " F=", in.F.str(), " q=", in.q, " v=", in.v);
    auto p = synth_wave(in);
    for (auto [a, b] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}, std::pair{ab(rng), ab(rng)}}) {
      in.a = a;
      in.b = b;
      CHECK(zero(pde_residual(p, wave_solution(in)), p.domain, 1e-10));
    }
    for (const auto& r : wave_consistency_residuals(p, in.ansatz())) CHECK(zero(r, p.domain));
    for (const auto& r : determining_residuals(p, in.ansatz().generator())) CHECK(zero(r, p.domain));
    auto red = similarity_reduce(p, in.ansatz());
    CHECK(classify_target(red).target == Target::Wave);
    CHECK(z_closure_check(red).closed());
  }
}

TEST_CASE("synth_oscillator examples") {
  auto p = synth_oscillator(osc("x", "x", 1, 1));
  CHECK(p.A.is_zero());
  CHECK(p.B == Expr(-1));
  CHECK(p.C == Expr(1));
  p = synth_oscillator(osc("x", "x", 2, 0));
  CHECK(p.B == Expr(-2));
  CHECK(p.C.is_zero());
  p = synth_oscillator(osc("2*x", "x", 2, 3));
  CHECK(p.B == Expr(-1));
  CHECK(p.C == Expr(3));

  auto bad = osc("x^2", "x", 1, 1);
  bad.domain = {{-1, 1}, {0, 1}};
  try {
    synth_oscillator(bad);
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("x = 0") != std::string::npos);
  }
  CHECK_THROWS_AS(synth_oscillator(osc("x", "x", 1, 1, 0)), std::invalid_argument);
}

TEST_CASE("oscillator_solution examples") {
  CHECK(oscillator_solution(osc("x", "0", 1, 0)) == P("sin(exp(x - t))"));
  auto in = osc("x", "x", 1, 1, 2);
  in.b = 1;
  CHECK(same(oscillator_solution(in), P("(sin(2*exp(x - t)) + cos(2*exp(x - t)))*exp(x)")));
  in.a = 0;
  // Far in time the argument tends to zero and u to b*exp(vR).
  CHECK(eval_numeric(oscillator_solution(in), {{"x", 0.5}, {"t", 60}}) == doctest::Approx(std::exp(0.5)));
}

TEST_CASE("oscillator family closure over random draws") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> qd(0.5, 2.0), vd(-1.0, 1.0), ab(-2.0, 2.0);
  const char* Ps[] = {"x", "2*x", "x + x^2/10"};
  const char* Rs[] = {"0", "x"};
  for (int n = 0; n < 10; ++n) {
    auto in = osc(Ps[rng() % 3], Rs[rng() % 2], qd(rng), vd(rng), 1.0 + static_cast<double>(rng() % 2));
    INFO("P=", in.P.str(), " R=", in.R.str(), " q=", in.q, " v=", in.v, " k=", in.k);
    auto p = synth_oscillator(in);
    for (auto [a, b] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}, std::pair{ab(rng), ab(rng)}}) {
      in.a = a;
      in.b = b;
      CHECK(zero(pde_residual(p, oscillator_solution(in)), p.domain, 1e-10));
    }
    for (const char* phi : {"1", "t + 2", "exp(t)"}) {
      auto a = in.ansatz(P(phi));
      for (const auto& r : oscillator_system_residuals(p, a)) CHECK(zero(r, p.domain));
      for (const auto& r : determining_residuals(p, a.generator())) CHECK(zero(r, p.domain));
    }
    CHECK(classify_target(similarity_reduce(p, in.ansatz())).target == Target::Identity);
  }
}

TEST_CASE("synth_rossby examples") {
  RossbyFamilyInput in;
  in.F = P("w^2");
  in.G = P("1 + w");
  in.H = P("sin(w)");
  for (auto mode : {RossbyMode::Derived, RossbyMode::AsPrinted}) {
    in.mode = mode;
    auto p = synth_rossby(in);
    CHECK(p.A == P("x^2"));
    CHECK(p.B == P("1 + x"));
    CHECK(p.C == P("sin(x)"));
  }
  auto rep = rossby_residual_report(in);
  CHECK(rep.derived.passed);
  CHECK(rep.as_printed.passed);

  RossbyFamilyInput id;
  id.c = 1;
  id.c1 = 0;
  auto p = synth_rossby(id);
  CHECK(same(p.A, P("x"), id.domain));
  CHECK(same(p.B, P("x/t"), id.domain));
  CHECK(same(p.C, P("x/t^2"), id.domain));

  id.mode = RossbyMode::AsPrinted;
  p = synth_rossby(id);
  CHECK(same(p.A, P("x/t^2"), id.domain));
  auto r = determining_residuals(p, id.generator());
  CHECK(same(r[0], P("-2*x/t^2"), id.domain));
  rep = rossby_residual_report(id);
  CHECK(rep.derived.passed);
  CHECK_FALSE(rep.as_printed.passed);
  CHECK(rep.as_printed.residuals[0].max_abs >= 0.1);

  RossbyFamilyInput zero_phi;
  zero_phi.c = 1;
  zero_phi.c1 = -1.5;
  CHECK_THROWS_AS(synth_rossby(zero_phi), std::invalid_argument);
  zero_phi.c1 = 0;
  zero_phi.c = 0;
  CHECK_THROWS_AS(synth_rossby(zero_phi), std::invalid_argument);
}

TEST_CASE("derived Rossby family satisfies the determining system for random draws") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> cd(0.5, 2.0), cc(-1.0, 1.0), coef(-2.0, 2.0);
  auto poly = [&] {
    Expr e(0);
    const Expr w = Expr::variable("w");
    for (int i = 0; i <= 3; ++i) e = e + Expr(coef(rng)) * Expr::pow(w, Expr(i));
    return simplify(e);
  };
  for (int n = 0; n < 10; ++n) {
    RossbyFamilyInput in;
    in.F = poly();
    in.G = poly();
    in.H = poly();
    in.c = cd(rng);
    do {
      in.c1 = cc(rng);
      in.c2 = cc(rng);
      // Keep c*t + c1 away from zero on t in [1, 2].
    } while ((in.c + in.c1) * (2 * in.c + in.c1) <= 0 ||
             std::min(std::fabs(in.c + in.c1), std::fabs(2 * in.c + in.c1)) < 0.25);
    auto rep = rossby_residual_report(in);
    INFO("c=", in.c, " c1=", in.c1, " c2=", in.c2);
    CHECK(rep.derived.passed);
    for (const auto& s : rep.derived.residuals) CHECK(s.max_normalized <= 1e-9);
  }
}
