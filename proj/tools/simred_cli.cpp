#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "simred/commands.hpp"
#include "simred/parse.hpp"

using namespace simred;

namespace {

// Echo of the invocation without the output directory, so reports written to
// different directories compare equal.
std::vector<std::string> echo_args(int argc, char** argv) {
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--out") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0) continue;
    out.push_back(a);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie-symmetry and similarity-reduction workbench for u_t = A u_xx + B u_x + C u"};
  app.require_subcommand(1);

  cmd::RunOptions opt;
  std::string format = "json";
  std::string out = ".";
  app.add_option("--seed", opt.seed, "Offset of the quasi-random sample sequence");
  app.add_option("--samples", opt.samples, "Sample points per zero test")->check(CLI::PositiveNumber);
  app.add_option("--tol-sym", opt.tol_sym, "Tolerance for symmetry and system residuals");
  app.add_option("--tol-sol", opt.tol_sol, "Tolerance for solution residuals");
  app.add_option("--out", out, "Output directory");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--timing", opt.timing, "Record wall time in the report");

  std::string family, pde, gen, ansatz, profile, exact;
  std::optional<std::string> solution;
  cmd::SolveOptions solve_opt;
  std::size_t mode_count = 5;

  auto* synth = app.add_subcommand("synth", "Build a coefficient family, its generator and solution");
  synth->add_option("family", family, "Family JSON")->required();

  auto* check = app.add_subcommand("check", "Determining-system and solution residuals");
  check->add_option("pde", pde, "PDE JSON")->required();
  check->add_option("--gen", gen, "Generator JSON");
  check->add_option("--solution", solution, "Candidate solution expression in x, t");

  auto* reduce = app.add_subcommand("reduce", "Similarity reduction with a separable ansatz");
  reduce->add_option("pde", pde, "PDE JSON")->required();
  reduce->add_option("ansatz", ansatz, "Ansatz JSON")->required();

  auto* solve = app.add_subcommand("solve", "Finite-difference run against a closed form");
  solve->add_option("pde", pde, "PDE JSON")->required();
  solve->add_option("--ic", exact, "Closed-form solution in x, t (initial and boundary data)")->required();
  solve->add_option("--nx", solve_opt.nx, "Grid nodes in x");
  solve->add_option("--nt", solve_opt.nt, "Time steps");
  solve->add_option("--x0", solve_opt.x0);
  solve->add_option("--x1", solve_opt.x1);
  solve->add_option("--t0", solve_opt.t0);
  solve->add_option("--t1", solve_opt.t1);
  solve->add_option("--levels", solve_opt.levels, "Refinement levels for the convergence study (>= 3)");

  auto* modes = app.add_subcommand("modes", "Vertical modes of a buoyancy profile");
  modes->add_option("profile", profile, "Profile JSON")->required();
  modes->add_option("--modes", mode_count, "Number of modes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opt.out = out;
  opt.format = format == "csv" ? cmd::Format::Csv : cmd::Format::Json;

  const auto start = std::chrono::steady_clock::now();
  cmd::RunReport report;
  try {
    if (*synth) {
      report = cmd::synth(family, opt);
    } else if (*check) {
      std::optional<std::filesystem::path> g;
      if (!gen.empty()) g = gen;
      report = cmd::check(pde, g, solution, opt);
    } else if (*reduce) {
      report = cmd::reduce(pde, ansatz, opt);
    } else if (*solve) {
      report = cmd::solve(pde, exact, solve_opt, opt);
    } else {
      report = cmd::modes(profile, mode_count, opt);
    }
  } catch (const io::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << " (offset " << e.offset() << ")\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  report.args = echo_args(argc, argv);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (opt.timing) report.wall_seconds = seconds;

  const auto path = cmd::write_report(report, opt);
  for (const auto& c : report.checks)
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " max_residual=" << io::format_double(c.max_residual)
              << "\n";
  std::cout << (report.passed() ? "PASS" : "FAIL") << " " << report.command << " -> " << path.string() << "\n";
  std::cerr << "wall time " << seconds << " s\n";
  return report.passed() ? 0 : 1;
}
