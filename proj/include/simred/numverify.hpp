#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "simred/symmetry.hpp"

namespace simred {

/// Uniform space-time grid: nx nodes in x (ends included), nt steps in t.
struct Grid1D {
  double x0 = 0.0;
  double x1 = 1.0;
  std::size_t nx = 41;
  double t0 = 0.0;
  double t1 = 0.1;
  std::size_t nt = 100;

  void validate() const;
  double dx() const { return (x1 - x0) / static_cast<double>(nx - 1); }
  double dt() const { return (t1 - t0) / static_cast<double>(nt); }
  double x(std::size_t i) const { return x0 + dx() * static_cast<double>(i); }
  double t(std::size_t n) const { return t0 + dt() * static_cast<double>(n); }
};

/// Space-time samples, one row of nx values per time level (nt + 1 rows).
struct Field {
  Grid1D grid;
  std::vector<double> values;

  double at(std::size_t i, std::size_t n) const { return values[n * grid.nx + i]; }
  double& at(std::size_t i, std::size_t n) { return values[n * grid.nx + i]; }
};

struct GridResidual {
  double max_abs = 0.0;
  double x = 0.0;
  double t = 0.0;
};

/// Evaluation failure at a grid node.
class GridEvalError : public std::runtime_error {
 public:
  GridEvalError(const std::string& what, double x, double t) : std::runtime_error(what), x_(x), t_(t) {}
  double x() const { return x_; }
  double t() const { return t_; }

 private:
  double x_, t_;
};

/// max |u_t - A u_xx - B u_x - C u| over every node of the grid.
GridResidual residual_on_grid(const PdeSpec& p, const Expr& u, const Grid1D& g);

/// Time step violates the explicit stability bound.
class StabilityError : public std::invalid_argument {
 public:
  StabilityError(const std::string& what, double required_dt) : std::invalid_argument(what), required_(required_dt) {}
  double required_dt() const { return required_; }

 private:
  double required_;
};

/// Forward Euler in t. Centered differences in x, or first-order upwind for
/// u_x when A vanishes on the whole grid. Boundary values come from `bc`.
Field fd_solve(const PdeSpec& p, const Expr& ic, const Expr& bc, const Grid1D& g);

/// True when |A| < 1e-14 at every node, i.e. the upwind scheme is used.
bool is_advective(const PdeSpec& p, const Grid1D& g);

/// L-infinity error of `f` against `exact` at the final time level.
double final_error(const Field& f, const Expr& exact);

struct ConvergenceLevel {
  std::size_t nx = 0;
  std::size_t nt = 0;
  double dx = 0.0;
  double dt = 0.0;
  double error = 0.0;
  /// log2(e_prev / e) against the previous level; empty on the first level
  /// or when either error is at rounding level.
  std::optional<double> order;
};

/// Refines g0 `levels - 1` times, halving dx and scaling dt by 1/4
/// (diffusive) or 1/2 (advective).
std::vector<ConvergenceLevel> convergence_order(const PdeSpec& p, const Expr& exact, const Grid1D& g0,
                                                std::size_t levels);

/// N(z) on [z_from, z_to] as an expression in z.
struct Layer {
  double z_from = 0.0;
  double z_to = 0.0;
  Expr N;
};

/// phi'' + (N(z)/C)^2 phi = 0 on [-H, 0], phi(-H) = phi(0) = 0.
struct ModeProblem {
  double H = 300.0;
  std::vector<Layer> layers;
  double c_min = 1e-6;
  double c_max = 1e2;
  std::size_t brackets = 400;
  std::size_t shape_samples = 201;

  static ModeProblem constant(double N, double H);
  void validate() const;
};

struct Mode {
  std::size_t m = 0;
  double C = 0.0;
  /// N_ref / C with N_ref the largest sampled N.
  double k = 0.0;
  std::vector<double> z;
  /// Normalized to max |phi| = 1.
  std::vector<double> shape;
  std::size_t interior_zeros = 0;
};

/// Surface value phi(0; C) of the shot from the floor with phi'(-H) = 1.
double shoot(const ModeProblem& m, double C);

/// Largest `modes` eigenvalues C, descending.
std::vector<Mode> mode_solve(const ModeProblem& m, std::size_t modes);

}  // namespace simred
