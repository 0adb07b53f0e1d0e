#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "simred/commands.hpp"
#include "simred/parse.hpp"

namespace py = pybind11;
using namespace simred;

namespace {

Expr to_expr(const py::handle& h) {
  if (py::isinstance<Expr>(h)) return h.cast<Expr>();
  if (py::isinstance<py::str>(h)) return simplify(parse(h.cast<std::string>()));
  if (py::isinstance<py::bool_>(h)) throw py::type_error("expected an expression, got bool");
  if (py::isinstance<py::int_>(h)) return Expr(h.cast<std::int64_t>());
  if (py::isinstance<py::float_>(h)) return simplify(Expr(h.cast<double>()));
  throw py::type_error("expected an Expr, str or number");
}

io::json to_json(const py::handle& obj) {
  auto dumps = py::module_::import("json").attr("dumps");
  return io::json::parse(dumps(obj).cast<std::string>());
}

py::dict sample_dict(const SampleReport& s) {
  py::dict d;
  d["zero"] = s.zero;
  d["max_abs"] = s.max_abs;
  d["max_normalized"] = s.max_normalized;
  d["witness"] = s.witness;
  d["error"] = s.error;
  d["failed_points"] = s.failed_points;
  return d;
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const io::InputError& e) {
    throw py::value_error(e.what());
  }
}

py::array_t<double> vec_array(const std::vector<double>& v) {
  py::array_t<double> a(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

py::array_t<double> field_array(const Field& f) {
  py::array_t<double> a({f.grid.nt + 1, f.grid.nx});
  std::copy(f.values.begin(), f.values.end(), a.mutable_data());
  return a;
}

}  // namespace

PYBIND11_MODULE(_simred, m) {
  m.doc() = "Lie symmetries and similarity reductions of u_t = A u_xx + B u_x + C u";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<EvalError>(m, "EvalError", PyExc_ArithmeticError);
  py::register_exception<StabilityError>(m, "StabilityError", PyExc_ValueError);

  py::class_<Expr>(m, "Expr")
      .def(py::init([](const py::handle& h) { return to_expr(h); }), py::arg("value"))
      .def("__str__", &Expr::str)
      .def("__repr__", [](const Expr& e) { return "Expr('" + e.str() + "')"; })
      .def("__eq__", [](const Expr& a, const py::handle& b) { return a == to_expr(b); })
      .def("__hash__", &Expr::hash)
      .def("__add__", [](const Expr& a, const py::handle& b) { return simplify(a + to_expr(b)); })
      .def("__radd__", [](const Expr& a, const py::handle& b) { return simplify(to_expr(b) + a); })
      .def("__sub__", [](const Expr& a, const py::handle& b) { return simplify(a - to_expr(b)); })
      .def("__rsub__", [](const Expr& a, const py::handle& b) { return simplify(to_expr(b) - a); })
      .def("__mul__", [](const Expr& a, const py::handle& b) { return simplify(a * to_expr(b)); })
      .def("__rmul__", [](const Expr& a, const py::handle& b) { return simplify(to_expr(b) * a); })
      .def("__truediv__", [](const Expr& a, const py::handle& b) { return simplify(a / to_expr(b)); })
      .def("__pow__", [](const Expr& a, const py::handle& b) { return simplify(pow(a, to_expr(b))); })
      .def("__neg__", [](const Expr& a) { return simplify(-a); })
      .def("is_zero", &Expr::is_zero)
      .def("free_variables", &Expr::free_variables)
      .def("depends_on", &Expr::depends_on)
      .def("size", &Expr::size)
      .def("simplify", [](const Expr& e) { return simplify(e); })
      .def("expand", [](const Expr& e) { return expand(e); })
      .def("diff", [](const Expr& e, const std::string& var, int order) { return diff(e, var, order); },
           py::arg("var"), py::arg("order") = 1)
      .def("subs", [](const Expr& e, const py::dict& b) {
        Substitution s;
        for (auto [k, v] : b) s.emplace(k.cast<std::string>(), to_expr(v));
        return simplify(substitute(e, s));
      })
      .def("eval", [](const Expr& e, const py::kwargs& kw) {
        NumericBindings b;
        for (auto [k, v] : kw) b.emplace(k.cast<std::string>(), v.cast<double>());
        return eval_numeric(e, b);
      });

  m.def("parse", [](const std::string& s) { return parse(s); }, py::arg("text"),
        "Parse without simplifying.");
  m.def("simplify", [](const py::handle& e) { return simplify(to_expr(e)); });
  m.def("diff", [](const py::handle& e, const std::string& var, int order) { return diff(to_expr(e), var, order); },
        py::arg("expr"), py::arg("var"), py::arg("order") = 1);

  py::class_<Domain>(m, "Domain")
      .def(py::init([](std::pair<double, double> x, std::pair<double, double> t) {
             return Domain{{x.first, x.second}, {t.first, t.second}};
           }),
           py::arg("x") = std::pair{0.0, 1.0}, py::arg("t") = std::pair{0.0, 1.0})
      .def_property_readonly("x", [](const Domain& d) { return std::pair{d.x.lo, d.x.hi}; })
      .def_property_readonly("t", [](const Domain& d) { return std::pair{d.t.lo, d.t.hi}; })
      .def("__repr__", [](const Domain& d) { return io::to_json(d).dump(); });

  py::class_<PdeSpec>(m, "Pde")
      .def(py::init([](const py::handle& A, const py::handle& B, const py::handle& C, const Domain& d) {
             PdeSpec p{to_expr(A), to_expr(B), to_expr(C), d};
             p.validate();
             return p;
           }),
           py::arg("A"), py::arg("B"), py::arg("C"), py::arg("domain") = Domain{})
      .def_static("from_dict", [](const py::dict& d) { return guarded([&] { return io::pde_from_json(to_json(d)); }); })
      .def_readonly("A", &PdeSpec::A)
      .def_readonly("B", &PdeSpec::B)
      .def_readonly("C", &PdeSpec::C)
      .def_readonly("domain", &PdeSpec::domain)
      .def("residual", [](const PdeSpec& p, const py::handle& u) { return pde_residual(p, to_expr(u)); },
           "u_t - A u_xx - B u_x - C u")
      .def("__repr__", [](const PdeSpec& p) { return io::to_json(p).dump(); });

  py::class_<Generator>(m, "Generator")
      .def(py::init([](const py::handle& phi, const py::handle& xi, const py::handle& M) {
             Generator g{to_expr(phi), to_expr(xi), to_expr(M)};
             g.validate();
             return g;
           }),
           py::arg("phi") = 0, py::arg("xi") = 0, py::arg("M") = 0)
      .def_static("from_dict",
                  [](const py::dict& d) { return guarded([&] { return io::generator_from_json(to_json(d)); }); })
      .def_readonly("phi", &Generator::phi)
      .def_readonly("xi", &Generator::xi)
      .def_readonly("M", &Generator::M)
      .def("__add__", [](const Generator& a, const Generator& b) { return a + b; })
      .def("__repr__", [](const Generator& g) { return io::to_json(g).dump(); });

  py::class_<SeparableAnsatz>(m, "Ansatz")
      .def(py::init([](const py::handle& P, const py::handle& R, double q, double v, const py::handle& phi) {
             return SeparableAnsatz{to_expr(phi), to_expr(P), to_expr(R), q, v};
           }),
           py::arg("P"), py::arg("R") = 0, py::arg("q") = 1.0, py::arg("v") = 0.0, py::arg("phi") = 1)
      .def_static("from_dict",
                  [](const py::dict& d) { return guarded([&] { return io::ansatz_from_json(to_json(d)); }); })
      .def_readonly("phi", &SeparableAnsatz::phi)
      .def_readonly("P", &SeparableAnsatz::P)
      .def_readonly("R", &SeparableAnsatz::R)
      .def_readonly("q", &SeparableAnsatz::q)
      .def_readonly("v", &SeparableAnsatz::v)
      .def("validate", &SeparableAnsatz::validate)
      .def("generator", &SeparableAnsatz::generator)
      .def("invariants", [](const SeparableAnsatz& a) { return invariants(a); })
      .def("__repr__", [](const SeparableAnsatz& a) { return io::to_json(a).dump(); });

  m.def("is_zero",
        [](const py::handle& e, const Domain& d, std::size_t samples, double tol, std::uint64_t seed) {
          return sample_dict(is_zero_sampled(to_expr(e), d.box(), {samples, tol, seed}));
        },
        py::arg("expr"), py::arg("domain") = Domain{}, py::arg("samples") = 100, py::arg("tol") = 1e-9,
        py::arg("seed") = 0);

  m.def("invariance_residual", &invariance_residual, py::arg("pde"), py::arg("gen"));
  m.def("determining_residuals",
        [](const PdeSpec& p, const Generator& g) {
          auto r = determining_residuals(p, g);
          return std::vector<Expr>(r.begin(), r.end());
        },
        py::arg("pde"), py::arg("gen"));

  py::class_<ReductionResult>(m, "Reduction")
      .def_readonly("z", &ReductionResult::z_expr)
      .def_readonly("I2", &ReductionResult::i2_expr)
      .def_readonly("c2", &ReductionResult::c2)
      .def_readonly("c1", &ReductionResult::c1)
      .def_readonly("c0", &ReductionResult::c0)
      .def_readonly("ode", &ReductionResult::ode)
      .def("classify",
           [](const ReductionResult& r, std::size_t samples, double tol, std::uint64_t seed) {
             auto c = classify_target(r, {samples, tol, seed});
             return py::make_tuple(to_string(c.target), c.k);
           },
           py::arg("samples") = 100, py::arg("tol") = 1e-9, py::arg("seed") = 0)
      .def("closure", [](const ReductionResult& r, std::size_t pairs, std::uint64_t seed) {
             return z_closure_check(r, pairs, seed).max_rel_diff;
           },
           py::arg("pairs") = 20, py::arg("seed") = 0, "Worst relative spread of c1/c2, c0/c2 at equal z.");

  m.def("similarity_reduce", [](const PdeSpec& p, const SeparableAnsatz& a) { return similarity_reduce(p, a); },
        py::arg("pde"), py::arg("ansatz"));

  m.def("synth",
        [](const py::dict& family) {
          auto spec = guarded([&] { return io::family_from_json(to_json(family)); });
          py::dict out;
          std::visit(
              [&](const auto& in) {
                using T = std::decay_t<decltype(in)>;
                if constexpr (std::is_same_v<T, WaveFamilyInput>) {
                  out["pde"] = synth_wave(in);
                  out["ansatz"] = in.ansatz();
                  out["generator"] = in.ansatz().generator();
                  out["solution"] = wave_solution(in);
                } else if constexpr (std::is_same_v<T, OscFamilyInput>) {
                  out["pde"] = synth_oscillator(in);
                  out["ansatz"] = in.ansatz();
                  out["generator"] = in.ansatz().generator();
                  out["solution"] = oscillator_solution(in);
                } else {
                  out["pde"] = synth_rossby(in);
                  out["generator"] = in.generator();
                  auto rep = rossby_residual_report(in);
                  for (const auto* r : {&rep.derived, &rep.as_printed}) {
                    py::list res;
                    for (const auto& s : r->residuals) res.append(sample_dict(s));
                    out[py::str(to_string(r->mode))] = py::dict(py::arg("passed") = r->passed,
                                                                py::arg("residuals") = res);
                  }
                }
              },
              spec);
          return out;
        },
        py::arg("family"), "Build a coefficient family from its JSON-style description.");

  py::class_<Grid1D>(m, "Grid")
      .def(py::init([](double x0, double x1, std::size_t nx, double t0, double t1, std::size_t nt) {
             Grid1D g{x0, x1, nx, t0, t1, nt};
             g.validate();
             return g;
           }),
           py::arg("x0") = 0.0, py::arg("x1") = 1.0, py::arg("nx") = 41, py::arg("t0") = 0.0, py::arg("t1") = 0.1,
           py::arg("nt") = 100)
      .def_readonly("nx", &Grid1D::nx)
      .def_readonly("nt", &Grid1D::nt)
      .def_property_readonly("dx", &Grid1D::dx)
      .def_property_readonly("dt", &Grid1D::dt)
      .def_property_readonly("x", [](const Grid1D& g) {
        std::vector<double> x(g.nx);
        for (std::size_t i = 0; i < g.nx; ++i) x[i] = g.x(i);
        return vec_array(x);
      });

  m.def("residual_on_grid",
        [](const PdeSpec& p, const py::handle& u, const Grid1D& g) {
          auto r = residual_on_grid(p, to_expr(u), g);
          return py::make_tuple(r.max_abs, r.x, r.t);
        },
        py::arg("pde"), py::arg("u"), py::arg("grid"));

  m.def("fd_solve",
        [](const PdeSpec& p, const py::handle& exact, const Grid1D& g) {
          const Expr e = to_expr(exact);
          Field f;
          {
            py::gil_scoped_release nogil;
            f = fd_solve(p, simplify(substitute(e, {{"t", Expr(g.t0)}})), e, g);
          }
          return field_array(f);
        },
        py::arg("pde"), py::arg("exact"), py::arg("grid"),
        "Explicit solve with initial and boundary data from `exact`; returns (nt + 1, nx).");

  m.def("convergence_order",
        [](const PdeSpec& p, const py::handle& exact, const Grid1D& g, std::size_t levels) {
          const Expr e = to_expr(exact);
          std::vector<ConvergenceLevel> lv;
          {
            py::gil_scoped_release nogil;
            lv = convergence_order(p, e, g, levels);
          }
          py::list out;
          for (const auto& l : lv)
            out.append(py::dict(py::arg("nx") = l.nx, py::arg("nt") = l.nt, py::arg("dx") = l.dx,
                                py::arg("dt") = l.dt, py::arg("error") = l.error, py::arg("order") = l.order));
          return out;
        },
        py::arg("pde"), py::arg("exact"), py::arg("grid"), py::arg("levels") = 3);

  m.def("mode_solve",
        [](const py::dict& profile, std::size_t count) {
          auto problem = guarded([&] { return io::profile_from_json(to_json(profile)); });
          std::vector<Mode> modes;
          {
            py::gil_scoped_release nogil;
            modes = mode_solve(problem, count);
          }
          py::list out;
          for (const auto& md : modes)
            out.append(py::dict(py::arg("m") = md.m, py::arg("C") = md.C, py::arg("k") = md.k,
                                py::arg("z") = vec_array(md.z),
                                py::arg("shape") = vec_array(md.shape),
                                py::arg("interior_zeros") = md.interior_zeros));
          return out;
        },
        py::arg("profile"), py::arg("modes") = 5, "Profile as {'H', 'N'} or {'H', 'layers': [...]}.");
}
