#include "simred/synth.hpp"

#include <cmath>
#include <stdexcept>

namespace simred {

namespace {

Expr num(double d) {
  if (std::nearbyint(d) == d && std::fabs(d) < 1e15) return Expr(static_cast<std::int64_t>(d));
  return Expr(d);
}

Expr X() { return Expr::variable("x"); }
Expr T() { return Expr::variable("t"); }

void require_placeholder(const Expr& f, const char* placeholder, const char* what) {
  for (const auto& v : f.free_variables())
    if (v != placeholder)
      throw std::invalid_argument(std::string(what) + " must be an expression in " + placeholder + ": " + f.str());
}

void require_evaluable(const PdeSpec& p) {
  for (const Expr* e : {&p.A, &p.B, &p.C}) {
    auto rep = is_zero_sampled(*e, p.domain.box(), {64, 0.0, 0});
    if (rep.error) throw std::invalid_argument("coefficient not defined on the domain: " + *rep.error);
  }
}

struct Jets {
  Expr Px, P2, P3, Rx, R2, R3;
  explicit Jets(const SeparableAnsatz& a)
      : Px(diff(a.P, "x")),
        P2(diff(a.P, "x", 2)),
        P3(diff(a.P, "x", 3)),
        Rx(diff(a.R, "x")),
        R2(diff(a.R, "x", 2)),
        R3(diff(a.R, "x", 3)) {}
};

Expr sq(const Expr& e) { return e * e; }
Expr pw(const Expr& e, int n) { return Expr::pow(e, Expr(n)); }

}  // namespace

PdeSpec synth_wave(const WaveFamilyInput& in) {
  require_placeholder(in.F, kWavePlaceholder, "F");
  const SeparableAnsatz a = in.ansatz();
  a.validate(in.domain);
  const Jets j(a);
  const Expr q = num(in.q), v = num(in.v);
  const Expr F = substitute(in.F, {{kWavePlaceholder, T() - a.P / q}});
  const Expr A = simplify(F / sq(j.Px));
  const Expr B = simplify(-(q + A * (sq(j.Px) + j.P2 + Expr(2) * v * j.Rx * j.Px)) / j.Px);
  const Expr C = simplify(-(v * (A * (v * sq(j.Rx) + j.R2) + B * j.Rx)));
  PdeSpec p{A, B, C, in.domain};
  require_evaluable(p);
  return p;
}

Expr wave_solution(const WaveFamilyInput& in) {
  return simplify((num(in.a) * exp(in.P - num(in.q) * T()) + num(in.b)) * exp(num(in.v) * in.R));
}

std::array<Expr, 5> wave_consistency_residuals(const PdeSpec& p, const SeparableAnsatz& a) {
  const Jets j(a);
  const Expr q = num(a.q), v = num(a.v);
  const Expr &A = p.A, &B = p.B, &C = p.C, &phi = a.phi;
  const Expr phit = diff(phi, "t");
  const Expr &Px = j.Px, &P2 = j.P2, &P3 = j.P3, &Rx = j.Rx, &R2 = j.R2, &R3 = j.R3;
  const Expr two(2);

  Expr e1 = Expr::add({q, two * v * A * Rx * Px, v * v * A * sq(Rx), A * P2, A * sq(Px), v * A * R2, B * Px,
                       v * B * Rx, C});
  Expr e2 = Expr::add({v * v * A * sq(Rx), v * A * R2, v * B * Rx, C});
  Expr d1 = Expr::add({phi * diff(A, "t") * sq(Px), q * phi * diff(A, "x") * Px, phit * A * sq(Px),
                       two * q * phi * A * P2});
  Expr d2 = Expr::add({phi * diff(B, "t") * pw(Px, 4), q * phi * diff(B, "x") * pw(Px, 3),
                       q * phi * B * P2 * sq(Px), q * phit * pw(Px, 3), phit * B * pw(Px, 4),
                       two * v * q * phi * A * R2 * pw(Px, 3), -(two * v * q * phi * A * Rx * P2 * sq(Px)),
                       q * phi * A * P3 * sq(Px), -(two * q * phi * A * Px * sq(P2))});
  Expr d3 = Expr::add({phi * diff(C, "t") * pw(Px, 4), q * phi * diff(C, "x") * pw(Px, 3),
                       q * v * phi * B * R2 * pw(Px, 3), -(q * v * phi * B * Rx * P2 * sq(Px)),
                       phit * C * pw(Px, 4), v * q * phi * A * R3 * pw(Px, 3),
                       -(v * q * phi * A * Rx * P3 * sq(Px)), -(two * v * q * phi * A * R2 * P2 * sq(Px)),
                       two * q * v * phi * A * Rx * Px * sq(P2), -(q * v * phit * Rx * pw(Px, 3))});
  return {simplify(e1), simplify(e2), simplify(d1), simplify(d2), simplify(d3)};
}

PdeSpec synth_oscillator(const OscFamilyInput& in) {
  if (!(in.k > 0.0)) throw std::invalid_argument("k must be positive");
  const SeparableAnsatz a = in.ansatz();
  a.validate(in.domain);
  const Expr q = num(in.q), v = num(in.v);
  const Expr Px = diff(in.P, "x");
  PdeSpec p{Expr(0), simplify(-q / Px), simplify(v * q * diff(in.R, "x") / Px), in.domain};
  require_evaluable(p);
  return p;
}

Expr oscillator_solution(const OscFamilyInput& in) {
  const Expr arg = num(in.k) * exp(in.P - num(in.q) * T());
  return simplify((num(in.a) * sin(arg) + num(in.b) * cos(arg)) * exp(num(in.v) * in.R));
}

std::array<Expr, 5> oscillator_system_residuals(const PdeSpec& p, const SeparableAnsatz& a) {
  const Jets j(a);
  const Expr q = num(a.q), v = num(a.v);
  const Expr &B = p.B, &C = p.C, &phi = a.phi;
  const Expr phit = diff(phi, "t");
  const Expr &Px = j.Px, &P2 = j.P2, &Rx = j.Rx, &R2 = j.R2;

  Expr s2 = Expr::add({phi * diff(B, "t") * pw(Px, 4), q * phi * diff(B, "x") * pw(Px, 3),
                       q * phi * B * P2 * sq(Px), q * phit * pw(Px, 3), phit * B * pw(Px, 4)});
  Expr s3 = Expr::add({phi * diff(C, "t") * pw(Px, 4), q * phi * diff(C, "x") * pw(Px, 3),
                       q * v * phi * B * R2 * pw(Px, 3), -(q * v * phi * B * Rx * P2 * sq(Px)),
                       phit * C * pw(Px, 4), -(q * v * phit * Rx * pw(Px, 3))});
  return {p.A, simplify(q + B * Px), simplify(v * B * Rx + C), simplify(s2), simplify(s3)};
}

Generator RossbyFamilyInput::generator() const {
  return {simplify(num(c) * T() + num(c1)), simplify(num(c) * X() + num(c2)), num(-3 * c)};
}

void RossbyFamilyInput::validate() const {
  require_placeholder(F, kRossbyPlaceholder, "F");
  require_placeholder(G, kRossbyPlaceholder, "G");
  require_placeholder(H, kRossbyPlaceholder, "H");
  if (c == 0.0 && c1 == 0.0) throw std::invalid_argument("(c, c1) must not both vanish");
  const double lo = c * domain.t.lo + c1;
  const double hi = c * domain.t.hi + c1;
  if (!(lo * hi > 0.0)) throw std::invalid_argument("c*t + c1 vanishes on the t-interval");
}

PdeSpec synth_rossby(const RossbyFamilyInput& in) {
  in.validate();
  const Expr phi = simplify(num(in.c) * T() + num(in.c1));
  Expr w;
  Expr A, B, C;
  auto at = [&](const Expr& f) { return substitute(f, {{kRossbyPlaceholder, w}}); };
  if (in.mode == RossbyMode::AsPrinted) {
    w = X() * phi - num(in.c2) * T();
    A = at(in.F) / pw(phi, 3);
    B = at(in.G) / sq(phi);
    C = at(in.H) / phi;
  } else if (in.c != 0.0) {
    w = (num(in.c) * X() + num(in.c2)) / phi;
    A = phi * at(in.F);
    B = at(in.G);
    C = at(in.H) / phi;
  } else {
    w = num(in.c1) * X() - num(in.c2) * T();
    A = at(in.F);
    B = at(in.G);
    C = at(in.H);
  }
  PdeSpec p{simplify(A), simplify(B), simplify(C), in.domain};
  require_evaluable(p);
  return p;
}

std::string to_string(RossbyMode m) { return m == RossbyMode::Derived ? "DERIVED" : "AS_PRINTED"; }

RossbyReport rossby_residual_report(const RossbyFamilyInput& in, const SampleOptions& opt) {
  const Generator g = in.generator();
  auto run = [&](RossbyMode mode) {
    RossbyFamilyInput copy = in;
    copy.mode = mode;
    const PdeSpec p = synth_rossby(copy);
    const auto r = determining_residuals(p, g);
    RossbyModeReport rep;
    rep.mode = mode;
    rep.passed = true;
    for (int i = 0; i < 3; ++i) {
      rep.residuals[i] = is_zero_sampled(r[i], p.domain.box(), opt);
      rep.passed = rep.passed && rep.residuals[i].zero;
    }
    return rep;
  };
  return {run(RossbyMode::Derived), run(RossbyMode::AsPrinted)};
}

}  // namespace simred
