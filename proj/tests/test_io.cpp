#include "doctest.h"
#include "simred/commands.hpp"
#include "simred/parse.hpp"

using namespace simred;
using io::json;

TEST_CASE("sha256") {
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("expressions from JSON values") {
  CHECK(io::expr_from_json(json(3), "A") == Expr(3));
  CHECK(io::expr_from_json(json(2.0), "A") == Expr(2));
  CHECK(io::expr_from_json(json(0.5), "A") == Expr(0.5));
  CHECK(io::expr_from_json(json("x^2 + 1"), "A") == simplify(parse("x^2 + 1")));
  CHECK_THROWS_AS(io::expr_from_json(json("x +"), "A"), io::InputError);
  CHECK_THROWS_AS(io::expr_from_json(json::array(), "A"), io::InputError);
}

TEST_CASE("pde loader") {
  auto p = io::pde_from_json(json::parse(R"j({"A": 1, "B": "-(1 + q)", "C": 0, "params": {"q": 2},
                                             "domain": {"x": [0, 2], "t": [0, 0.5]}})j"));
  CHECK(p.B == Expr(-3));
  CHECK(p.domain.x.hi == 2.0);
  CHECK(p.domain.t.hi == 0.5);
  auto back = io::pde_from_json(io::to_json(p));
  CHECK(back.A == p.A);
  CHECK(back.B == p.B);
  CHECK(back.domain.t.hi == 0.5);
  CHECK_THROWS_AS(io::pde_from_json(json::parse(R"j({"A": 1, "B": "q"})j")), io::InputError);
  CHECK_THROWS_AS(io::pde_from_json(json::parse(R"j({"A": 1, "B": "q", "C": 0})j")), io::InputError);
  CHECK_THROWS_AS(io::pde_from_json(json::parse(R"j({"A": 1, "B": 0, "C": 0, "domain": {"x": [1, 1]}})j")),
                  io::InputError);
}

TEST_CASE("generator, ansatz and family loaders") {
  auto g = io::generator_from_json(json::parse(R"j({"phi": "4*t^2", "xi": "4*t*x", "M": "-(x^2 + 2*t)"})j"));
  CHECK(g.phi == simplify(parse("4*t^2")));
  CHECK_THROWS_AS(io::generator_from_json(json::parse(R"j({"phi": "x"})j")), io::InputError);

  auto a = io::ansatz_from_json(json::parse(R"j({"P": "x", "q": 1.5})j"));
  CHECK(a.phi.is_one());
  CHECK(a.R.is_zero());
  CHECK(a.q == 1.5);
  CHECK_THROWS_AS(io::ansatz_from_json(json::parse(R"j({"P": "x"})j")), io::InputError);

  auto w = io::family_from_json(json::parse(R"j({"family": "wave", "P": "x", "q": 1, "F": "s^2"})j"));
  REQUIRE(std::holds_alternative<WaveFamilyInput>(w));
  CHECK(std::get<WaveFamilyInput>(w).F == simplify(parse("s^2")));
  auto r = io::family_from_json(json::parse(R"j({"family": "rossby", "c": 1, "c1": 0, "mode": "AS_PRINTED"})j"));
  CHECK(std::get<RossbyFamilyInput>(r).mode == RossbyMode::AsPrinted);
  CHECK_THROWS_AS(io::family_from_json(json::parse(R"j({"family": "rossby", "mode": "GUESS"})j")), io::InputError);
  CHECK_THROWS_AS(io::family_from_json(json::parse(R"j({"family": "soliton"})j")), io::InputError);
}

TEST_CASE("profile loader") {
  auto c = io::profile_from_json(json::parse(R"j({"H": 300, "N": 2e-4})j"));
  REQUIRE(c.layers.size() == 1);
  CHECK(c.layers[0].z_from == -300.0);
  auto two = io::profile_from_json(
      json::parse(R"j({"H": 1000, "layers": [{"from": -1000, "to": -300, "N": 0}, {"from": -300, "to": 0, "N": "2e-4"}]})j"));
  CHECK(two.layers.size() == 2);
  CHECK_THROWS_AS(io::profile_from_json(json::parse(R"j({"H": 1000, "layers": [{"from": -900, "to": 0, "N": 1}]})j")),
                  io::InputError);
}

TEST_CASE("report rendering") {
  cmd::RunReport r;
  r.command = "check";
  r.checks.push_back({"determining_r1", false, 1.0, {{"x", 0.5}, {"t", 0.25}}, {}});
  r.checks.push_back({"determining_r2", true, 0.0, {}, {}});
  CHECK_FALSE(r.passed());
  auto j = r.to_json();
  CHECK(j["status"] == "FAIL");
  CHECK(j["checks"][0]["witness"]["x"] == 0.5);
  CHECK_FALSE(j.contains("wall_seconds"));
  CHECK(r.to_csv() == "name,status,max_residual\ndetermining_r1,FAIL,1\ndetermining_r2,PASS,0\noverall,FAIL,\n");
  CHECK(io::format_double(0.1) == "0.10000000000000001");
}
