#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simred/io.hpp"

namespace simred::cmd {

enum class Format { Json, Csv };

struct RunOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  double tol_sym = 1e-9;
  double tol_sol = 1e-10;
  std::filesystem::path out = ".";
  Format format = Format::Json;
  bool timing = false;

  SampleOptions sym() const { return {samples, tol_sym, seed}; }
  SampleOptions sol() const { return {samples, tol_sol, seed}; }
};

struct Check {
  std::string name;
  bool passed = false;
  double max_residual = 0.0;
  NumericBindings witness;
  std::string note;
};

struct RunReport {
  std::string command;
  std::vector<std::string> args;
  std::map<std::string, std::string> inputs;  // file name -> SHA-256
  std::vector<Check> checks;
  io::json data = io::json::object();
  std::optional<double> wall_seconds;

  bool passed() const;
  io::json to_json() const;
  std::string to_csv() const;
};

/// Appends a sampled zero check.
void add_sampled(RunReport& r, const std::string& name, const SampleReport& s);

struct SolveOptions {
  std::optional<std::size_t> nx;
  std::optional<std::size_t> nt;
  std::optional<double> x0, x1, t0, t1;
  std::size_t levels = 0;
};

RunReport synth(const std::filesystem::path& family, const RunOptions& opt);
RunReport check(const std::filesystem::path& pde, const std::optional<std::filesystem::path>& gen,
                const std::optional<std::string>& solution, const RunOptions& opt);
RunReport reduce(const std::filesystem::path& pde, const std::filesystem::path& ansatz, const RunOptions& opt);
RunReport solve(const std::filesystem::path& pde, const std::string& exact, const SolveOptions& s,
                const RunOptions& opt);
RunReport modes(const std::filesystem::path& profile, std::size_t count, const RunOptions& opt);

/// Writes report.json or report.csv into opt.out and returns the path.
std::filesystem::path write_report(const RunReport& r, const RunOptions& opt);

}  // namespace simred::cmd
