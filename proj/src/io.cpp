#include "simred/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "simred/parse.hpp"

namespace simred::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

Expr expr_field(const json& j, const char* key, const char* fallback = nullptr) {
  if (fallback && !j.contains(key)) return simplify(parse(fallback));
  return expr_from_json(field(j, key), key);
}

double number_field(const json& j, const char* key, std::optional<double> fallback = std::nullopt) {
  if (fallback && !j.contains(key)) return *fallback;
  return number_from_json(field(j, key), key);
}

Interval interval_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw InputError(std::string(what) + " must be a [lo, hi] pair");
  return {number_from_json(j[0], what), number_from_json(j[1], what)};
}

// Wraps validation failures from the core library as input errors.
template <class F>
auto guarded(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const ParseError& e) {
    throw InputError(what + ": parse error at offset " + std::to_string(e.offset()) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(what + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

Expr expr_from_json(const json& j, const std::string& what) {
  return guarded(what, [&] {
    if (j.is_number_integer()) return Expr(j.get<std::int64_t>());
    if (j.is_number()) {
      const double d = j.get<double>();
      if (std::nearbyint(d) == d && std::fabs(d) < 1e15) return Expr(static_cast<std::int64_t>(d));
      return Expr(d);
    }
    if (j.is_string()) return simplify(parse(j.get<std::string>()));
    throw InputError(what + " must be an expression string or a number");
  });
}

double number_from_json(const json& j, const std::string& what) {
  if (!j.is_number()) throw InputError(what + " must be a number");
  const double d = j.get<double>();
  if (!std::isfinite(d)) throw InputError(what + " must be finite");
  return d;
}

Domain domain_from_json(const json& j, const Domain& fallback) {
  Domain d = fallback;
  if (!j.is_object()) throw InputError("domain must be an object");
  if (j.contains("x")) d.x = interval_from_json(j["x"], "domain.x");
  if (j.contains("t")) d.t = interval_from_json(j["t"], "domain.t");
  return d;
}

json to_json(const Domain& d) { return {{"x", {d.x.lo, d.x.hi}}, {"t", {d.t.lo, d.t.hi}}}; }

PdeSpec pde_from_json(const json& j) {
  return guarded("pde", [&] {
    PdeSpec p{expr_field(j, "A"), expr_field(j, "B"), expr_field(j, "C"), {}};
    if (j.contains("domain")) p.domain = domain_from_json(j["domain"], p.domain);
    if (j.contains("params")) {
      const json& params = j["params"];
      if (!params.is_object()) throw InputError("params must be an object");
      Substitution s;
      for (auto it = params.begin(); it != params.end(); ++it) s[it.key()] = expr_from_json(it.value(), it.key());
      p.A = simplify(substitute(p.A, s));
      p.B = simplify(substitute(p.B, s));
      p.C = simplify(substitute(p.C, s));
    }
    p.validate();
    return p;
  });
}

json to_json(const PdeSpec& p) {
  return {{"A", p.A.str()}, {"B", p.B.str()}, {"C", p.C.str()}, {"domain", to_json(p.domain)}};
}

Generator generator_from_json(const json& j) {
  return guarded("generator", [&] {
    Generator g{expr_field(j, "phi", "0"), expr_field(j, "xi", "0"), expr_field(j, "M", "0")};
    g.validate();
    return g;
  });
}

json to_json(const Generator& g) { return {{"phi", g.phi.str()}, {"xi", g.xi.str()}, {"M", g.M.str()}}; }

SeparableAnsatz ansatz_from_json(const json& j) {
  return guarded("ansatz", [&] {
    return SeparableAnsatz{expr_field(j, "phi", "1"), expr_field(j, "P"), expr_field(j, "R", "0"),
                           number_field(j, "q"), number_field(j, "v", 0.0)};
  });
}

json to_json(const SeparableAnsatz& a) {
  return {{"phi", a.phi.str()}, {"P", a.P.str()}, {"R", a.R.str()}, {"q", a.q}, {"v", a.v}};
}

FamilySpec family_from_json(const json& j) {
  return guarded("family", [&]() -> FamilySpec {
    const std::string family = field(j, "family").get<std::string>();
    if (family == "wave") {
      WaveFamilyInput in;
      in.P = expr_field(j, "P");
      in.R = expr_field(j, "R", "0");
      in.q = number_field(j, "q");
      in.v = number_field(j, "v", 0.0);
      in.F = expr_field(j, "F", "1");
      in.a = number_field(j, "a", 1.0);
      in.b = number_field(j, "b", 0.0);
      if (j.contains("domain")) in.domain = domain_from_json(j["domain"], in.domain);
      return in;
    }
    if (family == "oscillator") {
      OscFamilyInput in;
      in.P = expr_field(j, "P");
      in.R = expr_field(j, "R", "0");
      in.q = number_field(j, "q");
      in.v = number_field(j, "v", 0.0);
      in.a = number_field(j, "a", 1.0);
      in.b = number_field(j, "b", 0.0);
      in.k = number_field(j, "k", 1.0);
      if (j.contains("domain")) in.domain = domain_from_json(j["domain"], in.domain);
      return in;
    }
    if (family == "rossby") {
      RossbyFamilyInput in;
      in.F = expr_field(j, "F", "w");
      in.G = expr_field(j, "G", "w");
      in.H = expr_field(j, "H", "w");
      in.c = number_field(j, "c", 0.0);
      in.c1 = number_field(j, "c1", 1.0);
      in.c2 = number_field(j, "c2", 0.0);
      const std::string mode = j.value("mode", std::string("DERIVED"));
      if (mode == "DERIVED")
        in.mode = RossbyMode::Derived;
      else if (mode == "AS_PRINTED")
        in.mode = RossbyMode::AsPrinted;
      else
        throw InputError("mode must be DERIVED or AS_PRINTED, got '" + mode + "'");
      if (j.contains("domain")) in.domain = domain_from_json(j["domain"], in.domain);
      return in;
    }
    throw InputError("family must be wave, oscillator or rossby, got '" + family + "'");
  });
}

ModeProblem profile_from_json(const json& j) {
  return guarded("profile", [&] {
    ModeProblem m;
    m.H = number_field(j, "H");
    if (j.contains("layers")) {
      const json& layers = j["layers"];
      if (!layers.is_array()) throw InputError("layers must be an array");
      for (const auto& l : layers)
        m.layers.push_back({number_field(l, "from"), number_field(l, "to"), expr_field(l, "N")});
    } else {
      m.layers = {{-m.H, 0.0, expr_field(j, "N")}};
    }
    m.c_min = number_field(j, "c_min", m.c_min);
    m.c_max = number_field(j, "c_max", m.c_max);
    m.brackets = static_cast<std::size_t>(number_field(j, "brackets", static_cast<double>(m.brackets)));
    m.validate();
    return m;
  });
}

json to_json(const NumericBindings& b) {
  json out = json::object();
  for (const auto& [k, v] : b) out[k] = v;
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace simred::io
