#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "simred/symmetry.hpp"

namespace simred {

/// Separable generator data: phi(t), P(x), R(x) and the constants q, v that
/// make the characteristic equations integrable in closed form.
struct SeparableAnsatz {
  Expr phi;
  Expr P;
  Expr R;
  double q = 1.0;
  double v = 0.0;

  /// Throws std::invalid_argument on wrong dependences, q == 0, phi vanishing
  /// on the t-interval or P' vanishing / changing sign on the x-interval.
  void validate(const Domain& d) const;

  /// xi = q phi / P', M = q v phi R' / P'.
  Generator generator() const;
};

/// I1 = exp(P - q t), I2 = u exp(-v R).
std::pair<Expr, Expr> invariants(const SeparableAnsatz& a);

/// phi I_t + xi I_x + M u I_u for a single invariant.
Expr generator_action(const SeparableAnsatz& a, const Expr& invariant);

bool generator_annihilation_check(const SeparableAnsatz& a, const Domain& d, const SampleOptions& opt = {});

namespace ode {
inline const char* const kPhi0 = "Phi0";
inline const char* const kPhi1 = "Phi1";
inline const char* const kPhi2 = "Phi2";
}  // namespace ode

struct ReductionResult {
  Expr z_expr;
  Expr i2_expr;
  Expr c2;
  Expr c1;
  Expr c0;
  /// Full reduced residual c2 Phi2 + c1 Phi1 + c0 Phi0 (u factored out).
  Expr ode;
  Domain domain;
  /// P(x) - q t; equal phase means equal z.
  Expr phase;
  double q = 1.0;
};

ReductionResult similarity_reduce(const PdeSpec& p, const SeparableAnsatz& a);

/// Worst disagreement of c1/c2 and c0/c2 over `pairs` point pairs with equal
/// z, measured relative to max(1, |value|). Pairs where c2 vanishes are skipped.
struct ClosureReport {
  std::size_t pairs_checked = 0;
  double max_rel_diff = 0.0;
  bool closed(double tol = 1e-8) const { return max_rel_diff <= tol; }
};

ClosureReport z_closure_check(const ReductionResult& r, std::size_t pairs = 20, std::uint64_t seed = 0);

enum class Target { Wave, Oscillator, Identity, Other };

struct Classification {
  Target target = Target::Other;
  std::optional<double> k;
};

std::string to_string(Target t);

Classification classify_target(const ReductionResult& r, const SampleOptions& opt = {});

}  // namespace simred
