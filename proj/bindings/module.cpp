#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "algspray/builtin.hpp"
#include "algspray/curvature.hpp"
#include "algspray/runner.hpp"
#include "algspray/symmetry.hpp"

namespace py = pybind11;
using namespace algspray;

namespace {

RunOptions make_options(std::optional<int> points, std::optional<uint64_t> seed,
                        std::optional<double> tol, bool denominators_use_base_dim) {
  RunOptions opt;
  opt.points = points;
  opt.seed = seed;
  opt.tol = tol;
  opt.denominators_use_base_dim = denominators_use_base_dim;
  return opt;
}

std::string run_checks_text(const std::string& text, std::optional<int> points,
                            std::optional<uint64_t> seed, std::optional<double> tol,
                            bool denominators_use_base_dim) {
  Scenario sc = load_scenario_text(text);
  return run_checks(sc, make_options(points, seed, tol, denominators_use_base_dim)).to_json();
}

std::string run_checks_file(const std::string& path, std::optional<int> points,
                            std::optional<uint64_t> seed, std::optional<double> tol,
                            bool denominators_use_base_dim) {
  Scenario sc = load_scenario_file(path);
  return run_checks(sc, make_options(points, seed, tol, denominators_use_base_dim)).to_json();
}

py::dict eval_tensor(const std::string& text, const std::string& tensor,
                     std::vector<double> x, std::vector<double> y,
                     bool denominators_use_base_dim) {
  Scenario sc = load_scenario_text(text);
  if (static_cast<int>(x.size()) != sc.n || static_cast<int>(y.size()) != sc.m)
    throw std::invalid_argument("eval_tensor: point arity does not match the scenario");
  AlgebroidStructure A = sc.build_algebroid();
  CurvatureOptions copt;
  copt.denominators_use_base_dim = denominators_use_base_dim;
  CurvatureSuite cs(A, sc.build_spray(), copt);
  EvalContext ctx(sc.n, sc.m, x, y);

  py::dict out;
  out["tensor"] = tensor;
  auto fill = [&](const Tensor1k& T) {
    py::list comps;
    for (const auto& f : T.components()) comps.append(f.eval(ctx, 0).value());
    out["rank_args"] = T.rank_args();
    out["m"] = T.m();
    out["components"] = comps;
  };
  if (tensor == "Berwald-coeffs") {
    const BerwaldConnection& bc = cs.connection();
    py::list comps;
    for (int g = 0; g < sc.m; ++g)
      for (int a = 0; a < sc.m; ++a) comps.append(bc.coeff(g, a).eval(ctx, 0).value());
    out["rank_args"] = 1;
    out["m"] = sc.m;
    out["components"] = comps;
    return out;
  }
  auto key = parse_tensor_key(tensor);
  if (!key) throw std::invalid_argument("unknown tensor '" + tensor + "'");
  switch (*key) {
    case TensorKey::K: fill(cs.K()); break;
    case TensorKey::R: fill(cs.R_affine()); break;
    case TensorKey::H: fill(cs.H_affine()); break;
    case TensorKey::W0: fill(cs.W0()); break;
    case TensorKey::W: fill(cs.W()); break;
    case TensorKey::Wstar: fill(cs.Wstar()); break;
    case TensorKey::B: fill(cs.Bt()); break;
    case TensorKey::D: fill(cs.Dt()); break;
  }
  return out;
}

py::dict structure_residuals(const std::string& text, std::optional<int> points) {
  Scenario sc = load_scenario_text(text);
  AlgebroidStructure A = sc.build_algebroid();
  SamplingConfig cfg = sc.sampling;
  if (points) cfg.points = *points;
  auto pts = sample_points(sc.n, sc.m, cfg);
  auto mx = [&](const std::vector<ScalarField>& fields) {
    double worst = 0.0;
    for (const auto& p : pts) {
      EvalContext ctx(sc.n, sc.m, p.x, p.y);
      for (const auto& f : fields)
        worst = std::max(worst, std::abs(f.eval(ctx, 0).value()));
    }
    return worst;
  };
  py::dict out;
  out["digest"] = sc.digest();
  out["anchor_compatibility"] = mx(A.structure_residual_i());
  out["cyclic_identity"] = mx(A.structure_residual_ii());
  return out;
}

py::list jet_partials(const std::string& expr, int n, int m, std::vector<double> x,
                      std::vector<double> y, int order) {
  ScalarField f = ScalarField::from_expr(n, m, expr);
  Jet jet = f.eval_jet(x, y, order);
  auto space = JetSpace::get(n + m, order);
  py::list out;
  for (int pos = 0; pos < space->total_count(); ++pos) {
    auto exps = space->exponents(pos);
    py::tuple key(exps.size());
    for (size_t i = 0; i < exps.size(); ++i) key[i] = exps[i];
    out.append(py::make_tuple(key, jet.partial(exps)));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "residual checks for spray geometry on Lie algebroid prolongations";
  mod.attr("__version__") = kEngineVersion;

  py::register_exception<ScenarioError>(mod, "ScenarioError", PyExc_ValueError);

  mod.def("run_checks_text", &run_checks_text, py::arg("text"), py::arg("points") = py::none(),
          py::arg("seed") = py::none(), py::arg("tol") = py::none(),
          py::arg("denominators_use_base_dim") = false,
          "Run the full check battery on a scenario given as text; returns the JSON report.");
  mod.def("run_checks_file", &run_checks_file, py::arg("path"), py::arg("points") = py::none(),
          py::arg("seed") = py::none(), py::arg("tol") = py::none(),
          py::arg("denominators_use_base_dim") = false,
          "Run the full check battery on a scenario file; returns the JSON report.");
  mod.def("scenario_digest",
          [](const std::string& text) { return load_scenario_text(text).digest(); },
          py::arg("text"), "Canonical digest of a scenario, stable under comments and spacing.");
  mod.def("builtin_scenario_names", [] {
    std::vector<std::string> names;
    for (const auto& b : builtin_scenarios()) names.push_back(b.name);
    return names;
  });
  mod.def("builtin_scenario_text",
          [](const std::string& name) {
            for (const auto& b : builtin_scenarios())
              if (name == b.name) return std::string(b.text);
            throw ScenarioError("unknown builtin scenario '" + name + "'");
          },
          py::arg("name"));
  mod.def("eval_tensor", &eval_tensor, py::arg("text"), py::arg("tensor"), py::arg("x"),
          py::arg("y"), py::arg("denominators_use_base_dim") = false,
          "Evaluate a derived tensor of a scenario at one point; returns components in "
          "row-major order over [out, args...].");
  mod.def("structure_residuals", &structure_residuals, py::arg("text"),
          py::arg("points") = py::none(),
          "Max residuals of the two structure equations at sampled points.");
  mod.def("jet_partials", &jet_partials, py::arg("expr"), py::arg("n"), py::arg("m"),
          py::arg("x"), py::arg("y"), py::arg("order") = 2,
          "All partial derivatives of an expression up to the given order at a point, "
          "as (exponent tuple, value) pairs.");
}
