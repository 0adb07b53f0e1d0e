#include "simred/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "simred/parse.hpp"

namespace simred::cmd {

using io::json;

namespace {

const char* status(bool passed) { return passed ? "PASS" : "FAIL"; }

json load(RunReport& r, const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  r.inputs[path.filename().string()] = io::sha256_hex(text);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw io::InputError(path.string() + ": " + e.what());
  }
}

void add_flag(RunReport& r, const std::string& name, bool passed, double residual, const std::string& note = {}) {
  r.checks.push_back({name, passed, residual, {}, note});
}

void add_residuals(RunReport& r, const std::string& prefix, const std::array<Expr, 3>& res, const Box& box,
                   const SampleOptions& o) {
  for (int i = 0; i < 3; ++i) add_sampled(r, prefix + std::to_string(i + 1), is_zero_sampled(res[i], box, o));
}

void add_system(RunReport& r, const std::string& prefix, const std::array<Expr, 5>& res, const Box& box,
                const SampleOptions& o) {
  for (int i = 0; i < 5; ++i) add_sampled(r, prefix + std::to_string(i + 1), is_zero_sampled(res[i], box, o));
}

void write_outputs(const RunOptions& opt, const PdeSpec& p, const Generator& g) {
  io::write_file(opt.out / "pde.json", io::to_json(p).dump(2) + "\n");
  io::write_file(opt.out / "gen.json", io::to_json(g).dump(2) + "\n");
}

void add_classification(RunReport& r, const PdeSpec& p, const SeparableAnsatz& a, Target expected,
                        const RunOptions& opt) {
  const Classification c = classify_target(similarity_reduce(p, a), opt.sym());
  r.data["classification"] = to_string(c.target);
  add_flag(r, "classification", c.target == expected, 0.0, "expected " + to_string(expected));
}

Expr solution_expr(const std::string& text) {
  const Expr u = simplify(parse(text));
  for (const auto& v : u.free_variables())
    if (v != "x" && v != "t") throw io::InputError("solution must depend on x, t only: " + text);
  return u;
}

}  // namespace

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

json RunReport::to_json() const {
  json j;
  j["command"] = command;
  j["args"] = args;
  j["inputs"] = inputs;
  json cs = json::array();
  for (const auto& c : checks) {
    json e{{"name", c.name}, {"status", status(c.passed)}, {"max_residual", c.max_residual}};
    if (!c.witness.empty()) e["witness"] = io::to_json(c.witness);
    if (!c.note.empty()) e["note"] = c.note;
    cs.push_back(std::move(e));
  }
  j["checks"] = std::move(cs);
  j["status"] = status(passed());
  if (!data.empty()) j["data"] = data;
  if (wall_seconds) j["wall_seconds"] = *wall_seconds;
  return j;
}

std::string RunReport::to_csv() const {
  std::ostringstream os;
  os << "name,status,max_residual\n";
  for (const auto& c : checks) os << c.name << ',' << status(c.passed) << ',' << io::format_double(c.max_residual) << '\n';
  os << "overall," << status(passed()) << ",\n";
  return os.str();
}

void add_sampled(RunReport& r, const std::string& name, const SampleReport& s) {
  Check c{name, s.zero, s.max_abs, s.witness, {}};
  if (s.error) c.note = *s.error;
  r.checks.push_back(std::move(c));
}

RunReport synth(const std::filesystem::path& family, const RunOptions& opt) {
  RunReport r;
  r.command = "synth";
  const io::FamilySpec spec = io::family_from_json(load(r, family));
  try {
    if (const auto* w = std::get_if<WaveFamilyInput>(&spec)) {
      const PdeSpec p = synth_wave(*w);
      const SeparableAnsatz a = w->ansatz();
      const Expr u = wave_solution(*w);
      const Box box = p.domain.box();
      write_outputs(opt, p, a.generator());
      io::write_file(opt.out / "ansatz.json", io::to_json(a).dump(2) + "\n");
      io::write_file(opt.out / "solution.txt", u.str() + "\n");
      r.data["family"] = "wave";
      r.data["solution"] = u.str();
      add_sampled(r, "solution_residual", is_zero_sampled(pde_residual(p, u), box, opt.sol()));
      add_system(r, "system_", wave_consistency_residuals(p, a), box, opt.sym());
      add_residuals(r, "determining_r", determining_residuals(p, a.generator()), box, opt.sym());
      add_classification(r, p, a, Target::Wave, opt);
    } else if (const auto* o = std::get_if<OscFamilyInput>(&spec)) {
      const PdeSpec p = synth_oscillator(*o);
      const SeparableAnsatz a = o->ansatz();
      const Expr u = oscillator_solution(*o);
      const Box box = p.domain.box();
      write_outputs(opt, p, a.generator());
      io::write_file(opt.out / "ansatz.json", io::to_json(a).dump(2) + "\n");
      io::write_file(opt.out / "solution.txt", u.str() + "\n");
      r.data["family"] = "oscillator";
      r.data["solution"] = u.str();
      add_sampled(r, "solution_residual", is_zero_sampled(pde_residual(p, u), box, opt.sol()));
      add_system(r, "system_", oscillator_system_residuals(p, a), box, opt.sym());
      add_residuals(r, "determining_r", determining_residuals(p, a.generator()), box, opt.sym());
      add_classification(r, p, a, Target::Identity, opt);
    } else {
      const auto& in = std::get<RossbyFamilyInput>(spec);
      const PdeSpec p = synth_rossby(in);
      write_outputs(opt, p, in.generator());
      r.data["family"] = "rossby";
      r.data["mode"] = to_string(in.mode);
      add_residuals(r, "determining_r", determining_residuals(p, in.generator()), p.domain.box(), opt.sym());
      const RossbyReport both = rossby_residual_report(in, opt.sym());
      for (const auto* m : {&both.derived, &both.as_printed}) {
        json maxima = json::array();
        for (const auto& s : m->residuals) maxima.push_back(s.max_abs);
        r.data["modes"][to_string(m->mode)] = {{"max_residual", maxima}, {"status", status(m->passed)}};
      }
    }
  } catch (const std::invalid_argument& e) {
    throw io::InputError(e.what());
  }
  return r;
}

RunReport check(const std::filesystem::path& pde, const std::optional<std::filesystem::path>& gen,
                const std::optional<std::string>& solution, const RunOptions& opt) {
  RunReport r;
  r.command = "check";
  if (!gen && !solution) throw io::InputError("check needs a generator file and/or a solution expression");
  const PdeSpec p = io::pde_from_json(load(r, pde));
  const Box box = p.domain.box();
  if (gen) {
    const Generator g = io::generator_from_json(load(r, *gen));
    add_residuals(r, "determining_r", determining_residuals(p, g), box, opt.sym());
  }
  if (solution) {
    Expr u;
    try {
      u = solution_expr(*solution);
    } catch (const ParseError& e) {
      throw io::InputError(std::string("solution: ") + e.what());
    }
    r.data["solution"] = u.str();
    add_sampled(r, "solution_residual", is_zero_sampled(pde_residual(p, u), box, opt.sol()));
  }
  return r;
}

RunReport reduce(const std::filesystem::path& pde, const std::filesystem::path& ansatz, const RunOptions& opt) {
  RunReport r;
  r.command = "reduce";
  const PdeSpec p = io::pde_from_json(load(r, pde));
  const SeparableAnsatz a = io::ansatz_from_json(load(r, ansatz));
  ReductionResult red;
  try {
    red = similarity_reduce(p, a);
  } catch (const std::invalid_argument& e) {
    throw io::InputError(e.what());
  }
  const Classification c = classify_target(red, opt.sym());
  r.data["z"] = red.z_expr.str();
  r.data["I2"] = red.i2_expr.str();
  r.data["c2"] = red.c2.str();
  r.data["c1"] = red.c1.str();
  r.data["c0"] = red.c0.str();
  r.data["classification"] = to_string(c.target);
  if (c.k) r.data["k"] = *c.k;

  const auto [I1, I2] = invariants(a);
  Box box = p.domain.box();
  box.push_back({"u", -2.0, 2.0});
  add_sampled(r, "annihilation_I1", is_zero_sampled(generator_action(a, I1), box, opt.sym()));
  add_sampled(r, "annihilation_I2", is_zero_sampled(generator_action(a, I2), box, opt.sym()));
  if (c.target == Target::Wave || c.target == Target::Oscillator) {
    const ClosureReport z = z_closure_check(red, 20, opt.seed);
    add_flag(r, "z_closure", z.closed() && z.pairs_checked > 0, z.max_rel_diff,
             std::to_string(z.pairs_checked) + " equal-z pairs");
  }
  return r;
}

RunReport solve(const std::filesystem::path& pde, const std::string& exact_text, const SolveOptions& s,
                const RunOptions& opt) {
  RunReport r;
  r.command = "solve";
  const PdeSpec p = io::pde_from_json(load(r, pde));
  Expr exact;
  try {
    exact = solution_expr(exact_text);
  } catch (const ParseError& e) {
    throw io::InputError(std::string("--ic: ") + e.what());
  }

  Grid1D g;
  g.x0 = s.x0.value_or(p.domain.x.lo);
  g.x1 = s.x1.value_or(p.domain.x.hi);
  g.t0 = s.t0.value_or(p.domain.t.lo);
  g.t1 = s.t1.value_or(p.domain.t.hi);
  g.nx = s.nx.value_or(41);
  try {
    if (s.nt) {
      g.nt = *s.nt;
    } else {
      // Half the explicit stability bound, from coefficients on a coarse lattice.
      Grid1D probe = g;
      probe.nt = 100;
      probe.validate();
      double max_a = 0.0, max_b = 0.0;
      for (std::size_t n = 0; n <= probe.nt; ++n)
        for (std::size_t i = 0; i < probe.nx; ++i) {
          const NumericBindings b{{"x", probe.x(i)}, {"t", probe.t(n)}};
          max_a = std::max(max_a, std::fabs(eval_numeric(p.A, b)));
          max_b = std::max(max_b, std::fabs(eval_numeric(p.B, b)));
        }
      double limit = max_a >= 1e-14 ? probe.dx() * probe.dx() / (2 * max_a) : (max_b > 0 ? probe.dx() / max_b : 0.0);
      g.nt = limit > 0 ? static_cast<std::size_t>(std::ceil((g.t1 - g.t0) / (0.5 * limit))) : 1;
    }
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw io::InputError(e.what());
  } catch (const EvalError& e) {
    throw io::InputError(e.what());
  }

  const Expr ic = simplify(substitute(exact, {{"t", Expr(g.t0)}}));
  Field f;
  try {
    f = fd_solve(p, ic, exact, g);
  } catch (const std::invalid_argument& e) {
    throw io::InputError(e.what());
  }
  std::ostringstream csv;
  csv << "x,t,u_numeric,u_closed,abs_err\n";
  for (std::size_t n = 0; n <= g.nt; ++n)
    for (std::size_t i = 0; i < g.nx; ++i) {
      const double x = g.x(i), t = g.t(n);
      const double un = f.at(i, n), uc = eval_numeric(exact, {{"x", x}, {"t", t}});
      csv << io::format_double(x) << ',' << io::format_double(t) << ',' << io::format_double(un) << ','
          << io::format_double(uc) << ',' << io::format_double(std::fabs(un - uc)) << '\n';
    }
  io::write_file(opt.out / "solution.csv", csv.str());

  const bool advective = is_advective(p, g);
  r.data["grid"] = {{"x", {g.x0, g.x1}}, {"t", {g.t0, g.t1}}, {"nx", g.nx}, {"nt", g.nt}};
  r.data["scheme"] = advective ? "upwind" : "centered";
  r.data["final_error"] = final_error(f, exact);

  const GridResidual gr = residual_on_grid(p, exact, g);
  r.checks.push_back({"closed_form_residual", gr.max_abs <= opt.tol_sol, gr.max_abs, {{"x", gr.x}, {"t", gr.t}}, {}});

  if (s.levels > 0) {
    std::vector<ConvergenceLevel> levels;
    try {
      levels = convergence_order(p, exact, g, s.levels);
    } catch (const std::invalid_argument& e) {
      throw io::InputError(e.what());
    }
    const double lo = advective ? 0.7 : 1.7, hi = advective ? 1.3 : 2.3;
    json rows = json::array();
    bool ok = true, any = false;
    double worst = 0.0;
    for (const auto& l : levels) {
      json row{{"nx", l.nx}, {"nt", l.nt}, {"dx", l.dx}, {"dt", l.dt}, {"error", l.error}};
      if (l.order) {
        row["order"] = *l.order;
        any = true;
        ok = ok && *l.order >= lo && *l.order <= hi;
        worst = std::max(worst, std::max(lo - *l.order, *l.order - hi));
      } else {
        row["order"] = nullptr;
      }
      rows.push_back(std::move(row));
    }
    r.data["convergence"] = rows;
    std::ostringstream note;
    note << "expected order in [" << lo << ", " << hi << "]";
    if (!any) {
      const double e = levels.back().error;
      ok = e <= 1e-12 * std::max(1.0, std::fabs(eval_numeric(exact, {{"x", g.x0}, {"t", g.t1}})));
      note.str("errors at rounding level; order undefined");
    }
    add_flag(r, "convergence_order", ok, worst, note.str());
  }
  return r;
}

RunReport modes(const std::filesystem::path& profile, std::size_t count, const RunOptions& opt) {
  RunReport r;
  r.command = "modes";
  const ModeProblem m = io::profile_from_json(load(r, profile));
  if (count == 0) throw io::InputError("--modes must be positive");
  std::vector<Mode> found;
  try {
    found = mode_solve(m, count);
  } catch (const std::runtime_error& e) {
    add_flag(r, "mode_search", false, 0.0, e.what());
    return r;
  }
  std::ostringstream table, shapes;
  table << "m,C_m,k_m\n";
  shapes << "m,z,phi\n";
  json rows = json::array();
  for (const auto& md : found) {
    table << md.m << ',' << io::format_double(md.C) << ',' << io::format_double(md.k) << '\n';
    for (std::size_t i = 0; i < md.z.size(); ++i)
      shapes << md.m << ',' << io::format_double(md.z[i]) << ',' << io::format_double(md.shape[i]) << '\n';
    rows.push_back({{"m", md.m}, {"C", md.C}, {"k", md.k}, {"interior_zeros", md.interior_zeros}});
    const double expected = static_cast<double>(md.m - 1);
    add_flag(r, "sturm_m" + std::to_string(md.m), md.interior_zeros == md.m - 1,
             std::fabs(static_cast<double>(md.interior_zeros) - expected),
             "interior zeros " + std::to_string(md.interior_zeros));
  }
  r.data["modes"] = rows;
  io::write_file(opt.out / "modes.csv", table.str());
  io::write_file(opt.out / "mode_shapes.csv", shapes.str());
  return r;
}

std::filesystem::path write_report(const RunReport& r, const RunOptions& opt) {
  const auto path = opt.out / (opt.format == Format::Json ? "report.json" : "report.csv");
  io::write_file(path, opt.format == Format::Json ? r.to_json().dump(2) + "\n" : r.to_csv());
  return path;
}

}  // namespace simred::cmd
