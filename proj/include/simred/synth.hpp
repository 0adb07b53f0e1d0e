#pragma once

#include <array>

#include "simred/reduction.hpp"

namespace simred {

/// Wave family: F is an expression in the placeholder `s`, bound to t - P/q.
struct WaveFamilyInput {
  Expr P;
  Expr R;
  double q = 1.0;
  double v = 0.0;
  Expr F{Expr(1)};
  double a = 1.0;
  double b = 0.0;
  Domain domain;

  /// The family's ansatz with phi = 1.
  SeparableAnsatz ansatz() const { return {Expr(1), P, R, q, v}; }
};

struct OscFamilyInput {
  Expr P;
  Expr R;
  double q = 1.0;
  double v = 0.0;
  double a = 1.0;
  double b = 0.0;
  double k = 1.0;
  Domain domain;

  SeparableAnsatz ansatz(const Expr& phi = Expr(1)) const { return {phi, P, R, q, v}; }
};

enum class RossbyMode { Derived, AsPrinted };

/// F, G, H are expressions in the placeholder `w`.
struct RossbyFamilyInput {
  Expr F{Expr::variable("w")};
  Expr G{Expr::variable("w")};
  Expr H{Expr::variable("w")};
  double c = 0.0;
  double c1 = 1.0;
  double c2 = 0.0;
  RossbyMode mode = RossbyMode::Derived;
  Domain domain{{1.0, 2.0}, {1.0, 2.0}};

  /// phi = c t + c1, xi = c x + c2, M = -3c.
  Generator generator() const;
  void validate() const;
};

inline const char* const kWavePlaceholder = "s";
inline const char* const kRossbyPlaceholder = "w";

PdeSpec synth_wave(const WaveFamilyInput& in);
Expr wave_solution(const WaveFamilyInput& in);

/// Two solution-compatibility residuals followed by the three determining
/// equations rewritten in terms of P and R (scaled by P'^2, P'^4, P'^4).
std::array<Expr, 5> wave_consistency_residuals(const PdeSpec& p, const SeparableAnsatz& a);

PdeSpec synth_oscillator(const OscFamilyInput& in);
Expr oscillator_solution(const OscFamilyInput& in);

/// A, q + B P', v B R' + C, then the two remaining determining equations
/// with A = 0 (scaled by P'^4).
std::array<Expr, 5> oscillator_system_residuals(const PdeSpec& p, const SeparableAnsatz& a);

PdeSpec synth_rossby(const RossbyFamilyInput& in);

struct RossbyModeReport {
  RossbyMode mode = RossbyMode::Derived;
  std::array<SampleReport, 3> residuals;
  bool passed = false;
};

struct RossbyReport {
  RossbyModeReport derived;
  RossbyModeReport as_printed;
};

/// Determining residuals of both families against the shared generator.
RossbyReport rossby_residual_report(const RossbyFamilyInput& in, const SampleOptions& opt = {});

std::string to_string(RossbyMode m);

}  // namespace simred
