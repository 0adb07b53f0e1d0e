#include "simred/numverify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace simred {

namespace {

constexpr double kAdvectiveA = 1e-14;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double eval_at(const Expr& e, double x, double t) {
  try {
    return eval_numeric(e, {{"x", x}, {"t", t}});
  } catch (const EvalError& err) {
    throw GridEvalError("evaluation failed at x = " + fmt(x) + ", t = " + fmt(t) + ": " + err.what(), x, t);
  }
}

// Coefficient values on one time level.
struct Row {
  std::vector<double> A, B, C;
};

Row coefficients(const PdeSpec& p, const Grid1D& g, double t) {
  Row r;
  r.A.resize(g.nx);
  r.B.resize(g.nx);
  r.C.resize(g.nx);
  for (std::size_t i = 0; i < g.nx; ++i) {
    r.A[i] = eval_at(p.A, g.x(i), t);
    r.B[i] = eval_at(p.B, g.x(i), t);
    r.C[i] = eval_at(p.C, g.x(i), t);
  }
  return r;
}

}  // namespace

void Grid1D::validate() const {
  if (!(x1 > x0) || !(t1 > t0)) throw std::invalid_argument("grid requires x1 > x0 and t1 > t0");
  if (nx < 3) throw std::invalid_argument("grid requires nx >= 3");
  if (nt < 1) throw std::invalid_argument("grid requires nt >= 1");
}

GridResidual residual_on_grid(const PdeSpec& p, const Expr& u, const Grid1D& g) {
  g.validate();
  const Expr r = pde_residual(p, u);
  GridResidual out;
  out.max_abs = -1.0;
  for (std::size_t n = 0; n <= g.nt; ++n)
    for (std::size_t i = 0; i < g.nx; ++i) {
      const double v = std::fabs(eval_at(r, g.x(i), g.t(n)));
      if (!std::isfinite(v))
        throw GridEvalError("non-finite residual at x = " + fmt(g.x(i)) + ", t = " + fmt(g.t(n)), g.x(i), g.t(n));
      if (v > out.max_abs) out = {v, g.x(i), g.t(n)};
    }
  return out;
}

bool is_advective(const PdeSpec& p, const Grid1D& g) {
  g.validate();
  for (std::size_t n = 0; n <= g.nt; ++n)
    for (std::size_t i = 0; i < g.nx; ++i)
      if (!(std::fabs(eval_at(p.A, g.x(i), g.t(n))) < kAdvectiveA)) return false;
  return true;
}

Field fd_solve(const PdeSpec& p, const Expr& ic, const Expr& bc, const Grid1D& g) {
  g.validate();
  const double dx = g.dx();
  const double dt = g.dt();

  std::vector<Row> rows;
  rows.reserve(g.nt);
  double max_a = 0.0, max_b = 0.0;
  for (std::size_t n = 0; n < g.nt; ++n) {
    rows.push_back(coefficients(p, g, g.t(n)));
    for (std::size_t i = 0; i < g.nx; ++i) {
      max_a = std::max(max_a, std::fabs(rows.back().A[i]));
      max_b = std::max(max_b, std::fabs(rows.back().B[i]));
    }
  }
  const bool upwind = max_a < kAdvectiveA;
  double limit = 0.0;
  if (!upwind)
    limit = dx * dx / (2.0 * max_a);
  else if (max_b > 0.0)
    limit = dx / max_b;
  if (limit > 0.0 && dt > limit * (1.0 + 1e-12))
    throw StabilityError("time step " + fmt(dt) + " exceeds the stability bound " + fmt(limit), limit);

  Field f{g, std::vector<double>(g.nx * (g.nt + 1))};
  for (std::size_t i = 0; i < g.nx; ++i) {
    try {
      f.at(i, 0) = eval_numeric(ic, {{"x", g.x(i)}});
    } catch (const EvalError& err) {
      throw GridEvalError("initial condition failed at x = " + fmt(g.x(i)) + ": " + err.what(), g.x(i), g.t0);
    }
  }

  for (std::size_t n = 0; n < g.nt; ++n) {
    const Row& r = rows[n];
    for (std::size_t i = 1; i + 1 < g.nx; ++i) {
      const double um = f.at(i - 1, n), u0 = f.at(i, n), up = f.at(i + 1, n);
      double ux;
      if (upwind)
        ux = r.B[i] > 0.0 ? (up - u0) / dx : (u0 - um) / dx;
      else
        ux = (up - um) / (2.0 * dx);
      const double uxx = (up - 2.0 * u0 + um) / (dx * dx);
      const double next = u0 + dt * (r.A[i] * uxx + r.B[i] * ux + r.C[i] * u0);
      if (!std::isfinite(next))
        throw std::runtime_error("solution blew up at step " + std::to_string(n + 1) + ", x = " + fmt(g.x(i)));
      f.at(i, n + 1) = next;
    }
    const double t = g.t(n + 1);
    f.at(0, n + 1) = eval_at(bc, g.x0, t);
    f.at(g.nx - 1, n + 1) = eval_at(bc, g.x1, t);
  }
  return f;
}

double final_error(const Field& f, const Expr& exact) {
  double err = 0.0;
  const std::size_t n = f.grid.nt;
  for (std::size_t i = 0; i < f.grid.nx; ++i)
    err = std::max(err, std::fabs(f.at(i, n) - eval_at(exact, f.grid.x(i), f.grid.t1)));
  return err;
}

std::vector<ConvergenceLevel> convergence_order(const PdeSpec& p, const Expr& exact, const Grid1D& g0,
                                                std::size_t levels) {
  if (levels < 3) throw std::invalid_argument("convergence study needs at least 3 levels");
  g0.validate();
  const bool advective = is_advective(p, g0);
  const Expr ic = simplify(substitute(exact, {{"t", Expr(g0.t0)}}));

  std::vector<ConvergenceLevel> out;
  double scale = 1.0;
  for (std::size_t l = 0; l < levels; ++l) {
    Grid1D g = g0;
    g.nx = (g0.nx - 1) * (std::size_t{1} << l) + 1;
    g.nt = g0.nt * (std::size_t{1} << (advective ? l : 2 * l));
    const Field f = fd_solve(p, ic, exact, g);
    for (double v : f.values) scale = std::max(scale, std::fabs(v));
    ConvergenceLevel lev{g.nx, g.nt, g.dx(), g.dt(), final_error(f, exact), std::nullopt};
    if (!out.empty()) {
      const double floor = 1e-12 * scale;
      const double prev = out.back().error;
      if (prev > floor && lev.error > floor) lev.order = std::log2(prev / lev.error);
    }
    out.push_back(lev);
  }
  return out;
}

ModeProblem ModeProblem::constant(double N, double H) {
  ModeProblem m;
  m.H = H;
  m.layers = {{-H, 0.0, Expr(N)}};
  return m;
}

void ModeProblem::validate() const {
  if (!(H > 0.0)) throw std::invalid_argument("depth H must be positive");
  if (layers.empty()) throw std::invalid_argument("N profile has no layers");
  if (!(c_min > 0.0) || !(c_max > c_min)) throw std::invalid_argument("sweep requires 0 < c_min < c_max");
  if (brackets < 2) throw std::invalid_argument("sweep requires at least 2 brackets");
  double z = -H;
  for (const auto& l : layers) {
    if (std::fabs(l.z_from - z) > 1e-9 * H || !(l.z_to > l.z_from))
      throw std::invalid_argument("layers must tile [-H, 0] from the floor up");
    for (const auto& v : l.N.free_variables())
      if (v != "z") throw std::invalid_argument("N must be an expression in z: " + l.N.str());
    for (int i = 0; i <= 32; ++i) {
      const double zi = l.z_from + (l.z_to - l.z_from) * i / 32.0;
      double n = 0.0;
      try {
        n = eval_numeric(l.N, {{"z", zi}});
      } catch (const EvalError& e) {
        throw std::invalid_argument("N undefined at z = " + fmt(zi) + ": " + e.what());
      }
      if (!(n >= 0.0) || !std::isfinite(n)) throw std::invalid_argument("N must be nonnegative, fails at z = " + fmt(zi));
    }
    z = l.z_to;
  }
  if (std::fabs(z) > 1e-9 * H) throw std::invalid_argument("layers must end at the surface z = 0");
}

namespace {

struct Profile {
  std::vector<double> layer_max;
  double n_ref = 0.0;
};

Profile profile_of(const ModeProblem& m) {
  Profile p;
  for (const auto& l : m.layers) {
    double mx = 0.0;
    for (int i = 0; i <= 32; ++i)
      mx = std::max(mx, eval_numeric(l.N, {{"z", l.z_from + (l.z_to - l.z_from) * i / 32.0}}));
    p.layer_max.push_back(mx);
    p.n_ref = std::max(p.n_ref, mx);
  }
  return p;
}

// RK4 over each layer with steps resolving the local phase; optionally
// records (z, phi) after every step.
double integrate(const ModeProblem& m, const Profile& prof, double C, std::vector<double>* zs,
                 std::vector<double>* phis) {
  double phi = 0.0, dphi = 1.0;
  if (zs) {
    zs->push_back(-m.H);
    phis->push_back(0.0);
  }
  for (std::size_t li = 0; li < m.layers.size(); ++li) {
    const Layer& l = m.layers[li];
    const double len = l.z_to - l.z_from;
    const double phase = prof.layer_max[li] * len / C;
    const double steps_d = std::max({100.0 * phase, 2000.0 * len / m.H, 1.0});
    const auto steps = static_cast<std::size_t>(std::min(std::ceil(steps_d), 2e6));
    const double h = len / static_cast<double>(steps);
    auto k2 = [&](double z) {
      const double n = eval_numeric(l.N, {{"z", z}}) / C;
      return n * n;
    };
    for (std::size_t s = 0; s < steps; ++s) {
      const double z = l.z_from + h * static_cast<double>(s);
      const double w0 = k2(z), wm = k2(z + 0.5 * h), w1 = k2(z + h);
      const double a1 = dphi, b1 = -w0 * phi;
      const double a2 = dphi + 0.5 * h * b1, b2 = -wm * (phi + 0.5 * h * a1);
      const double a3 = dphi + 0.5 * h * b2, b3 = -wm * (phi + 0.5 * h * a2);
      const double a4 = dphi + h * b3, b4 = -w1 * (phi + h * a3);
      phi += h / 6.0 * (a1 + 2 * a2 + 2 * a3 + a4);
      dphi += h / 6.0 * (b1 + 2 * b2 + 2 * b3 + b4);
      if (zs) {
        zs->push_back(z + h);
        phis->push_back(phi);
      }
    }
  }
  return phi;
}

}  // namespace

double shoot(const ModeProblem& m, double C) {
  m.validate();
  return integrate(m, profile_of(m), C, nullptr, nullptr);
}

std::vector<Mode> mode_solve(const ModeProblem& m, std::size_t modes) {
  m.validate();
  const Profile prof = profile_of(m);
  if (!(prof.n_ref > 0.0)) throw std::invalid_argument("N vanishes everywhere; no oscillating modes");

  std::vector<Mode> out;
  const double ratio = std::log(m.c_max / m.c_min) / static_cast<double>(m.brackets);
  double c_hi = m.c_max;
  double f_hi = integrate(m, prof, c_hi, nullptr, nullptr);
  for (std::size_t b = 1; b <= m.brackets && out.size() < modes; ++b) {
    const double c_lo = m.c_max * std::exp(-ratio * static_cast<double>(b));
    const double f_lo = integrate(m, prof, c_lo, nullptr, nullptr);
    if ((f_lo > 0) != (f_hi > 0) || f_lo == 0.0) {
      double lo = c_lo, hi = c_hi, flo = f_lo;
      for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = integrate(m, prof, mid, nullptr, nullptr);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm > 0) == (flo > 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      Mode mode;
      mode.m = out.size() + 1;
      mode.C = 0.5 * (lo + hi);
      mode.k = prof.n_ref / mode.C;

      std::vector<double> zs, phis;
      integrate(m, prof, mode.C, &zs, &phis);
      const std::size_t ns = std::max<std::size_t>(m.shape_samples, 3);
      double peak = 0.0;
      std::size_t j = 0;
      for (std::size_t s = 0; s < ns; ++s) {
        const double z = -m.H + m.H * static_cast<double>(s) / static_cast<double>(ns - 1);
        while (j + 2 < zs.size() && zs[j + 1] < z) ++j;
        const double w = (z - zs[j]) / (zs[j + 1] - zs[j]);
        const double v = phis[j] + std::clamp(w, 0.0, 1.0) * (phis[j + 1] - phis[j]);
        mode.z.push_back(z);
        mode.shape.push_back(v);
        peak = std::max(peak, std::fabs(v));
      }
      for (double& v : mode.shape) v /= peak;
      for (std::size_t s = 1; s + 2 < ns; ++s)
        if ((mode.shape[s] > 0) != (mode.shape[s + 1] > 0)) ++mode.interior_zeros;
      out.push_back(std::move(mode));
    }
    c_hi = c_lo;
    f_hi = f_lo;
  }
  if (out.empty())
    throw std::runtime_error("no sign change of phi(0; C) for C in [" + fmt(m.c_min) + ", " + fmt(m.c_max) + "]");
  if (out.size() < modes)
    throw std::runtime_error("found only " + std::to_string(out.size()) + " modes for C in [" + fmt(m.c_min) + ", " +
                             fmt(m.c_max) + "]");
  return out;
}

}  // namespace simred
