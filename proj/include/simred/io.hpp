#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"

#include "simred/numverify.hpp"
#include "simred/synth.hpp"

namespace simred::io {

using nlohmann::json;

/// Malformed or invalid user input (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// JSON number or string to Expr. Integral numbers become exact constants.
Expr expr_from_json(const json& j, const std::string& what);
double number_from_json(const json& j, const std::string& what);

/// {"A", "B", "C", "domain": {"x": [lo, hi], "t": [lo, hi]}, "params": {...}}.
/// Parameters are substituted into the coefficients.
PdeSpec pde_from_json(const json& j);
json to_json(const PdeSpec& p);

/// {"phi", "xi", "M"}.
Generator generator_from_json(const json& j);
json to_json(const Generator& g);

/// {"phi", "P", "R", "q", "v"}; phi defaults to 1.
SeparableAnsatz ansatz_from_json(const json& j);
json to_json(const SeparableAnsatz& a);

using FamilySpec = std::variant<WaveFamilyInput, OscFamilyInput, RossbyFamilyInput>;

/// {"family": "wave" | "oscillator" | "rossby", ...}.
FamilySpec family_from_json(const json& j);

/// {"H", "layers": [{"from", "to", "N"}]} or {"H", "N"} for a constant
/// profile; optional "c_min", "c_max", "brackets".
ModeProblem profile_from_json(const json& j);

Domain domain_from_json(const json& j, const Domain& fallback);
json to_json(const Domain& d);

/// Bindings as a JSON object with sorted keys.
json to_json(const NumericBindings& b);

/// %.17g formatting for CSV output.
std::string format_double(double v);

}  // namespace simred::io
