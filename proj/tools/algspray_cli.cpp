#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "algspray/curvature.hpp"
#include "algspray/runner.hpp"
#include "algspray/symmetry.hpp"

namespace {

using namespace algspray;

// "x=0.1,-0.2;y=1,0.5" -> coordinates of a point on E; the x part may be
// omitted when the base is zero-dimensional
SamplePoint parse_point(const std::string& text, int n, int m) {
  SamplePoint pt;
  pt.x.assign(n, 0.0);
  pt.y.assign(m, 0.0);
  bool have_x = n == 0, have_y = false;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find(';', pos);
    if (end == std::string::npos) end = text.size();
    const std::string part = text.substr(pos, end - pos);
    pos = end + 1;
    if (part.empty()) continue;
    const size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("--at expects 'x=...;y=...', got '" + part + "'");
    const std::string key = part.substr(0, eq);
    std::vector<double>* dst = nullptr;
    size_t want = 0;
    if (key == "x") {
      dst = &pt.x;
      want = static_cast<size_t>(n);
      have_x = true;
    } else if (key == "y") {
      dst = &pt.y;
      want = static_cast<size_t>(m);
      have_y = true;
    } else {
      throw std::runtime_error("--at expects components 'x' or 'y', got '" + key + "'");
    }
    std::vector<double> vals;
    size_t vpos = eq + 1;
    // "x=" with nothing after it declares an empty list (zero-dimensional base)
    while (vpos < part.size()) {
      size_t vend = part.find(',', vpos);
      if (vend == std::string::npos) vend = part.size();
      const std::string tok = part.substr(vpos, vend - vpos);
      if (tok.empty()) throw std::runtime_error("--at has an empty coordinate");
      size_t used = 0;
      vals.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::runtime_error("bad coordinate '" + tok + "' in --at");
      vpos = vend + 1;
      if (vend == part.size()) break;
    }
    if (vals.size() != want)
      throw std::runtime_error("--at gives " + std::to_string(vals.size()) + " " + key +
                               " coordinates, scenario needs " + std::to_string(want));
    *dst = std::move(vals);
  }
  if (!have_x || !have_y) throw std::runtime_error("--at must give both x and y (x only if n > 0)");
  return pt;
}

void print_tensor(const std::string& label, const Tensor1k& T, EvalContext& ctx) {
  const int m = T.m();
  for (int out = 0; out < m; ++out) {
    for (const auto& args : index_tuples(m, T.rank_args())) {
      std::string line = label + "[" + std::to_string(out + 1) + "]";
      for (int a : args) line += "[" + std::to_string(a + 1) + "]";
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", T.at(out, args).eval(ctx, 0).value());
      std::cout << line << " = " << buf << "\n";
    }
  }
}

int cmd_check(const std::string& path, const RunOptions& opt, const std::string& format) {
  const Scenario sc = load_scenario_file(path);
  const auto t0 = std::chrono::steady_clock::now();
  const Report rep = run_checks(sc, opt);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (format == "json")
    std::cout << rep.to_json();
  else
    std::cout << rep.to_text(wall);
  return rep.all_pass() ? 0 : 1;
}

int cmd_validate(const std::string& path) {
  const Scenario sc = load_scenario_file(path);
  const AlgebroidStructure A = sc.build_algebroid();
  const auto pts = sample_points(sc.n, sc.m, sc.sampling);
  double worst_i = 0.0, worst_ii = 0.0;
  const auto res_i = A.structure_residual_i();
  const auto res_ii = A.structure_residual_ii();
  for (const auto& pt : pts) {
    EvalContext ctx(sc.n, sc.m, pt.x, pt.y);
    for (const auto& f : res_i) worst_i = std::max(worst_i, std::abs(f.eval(ctx, 0).value()));
    for (const auto& f : res_ii) worst_ii = std::max(worst_ii, std::abs(f.eval(ctx, 0).value()));
  }
  const double tol = sc.tolerances.count("structure_tol") ? sc.tolerances.at("structure_tol")
                                                          : 1e-12;
  const bool ok = worst_i <= tol && worst_ii <= tol;
  std::printf("scenario digest     %s\n", sc.digest().c_str());
  std::printf("structure residual  (i) %.3e  (ii) %.3e  [tol %.1e]\n", worst_i, worst_ii, tol);
  std::printf("verdict             %s\n", ok ? "pass" : "fail");
  return ok ? 0 : 1;
}

int cmd_eval(const std::string& path, const std::string& tensor, const std::string& at,
             bool denom_base) {
  const Scenario sc = load_scenario_file(path);
  const SamplePoint pt = parse_point(at, sc.n, sc.m);
  const AlgebroidStructure A = sc.build_algebroid();
  CurvatureOptions copts;
  copts.denominators_use_base_dim = denom_base;
  const CurvatureSuite cs(A, sc.build_spray(), copts);
  EvalContext ctx(sc.n, sc.m, pt.x, pt.y);

  if (tensor == "Berwald-coeffs") {
    const BerwaldConnection& bc = cs.connection();
    for (int g = 0; g < sc.m; ++g) {
      for (int a = 0; a < sc.m; ++a) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", bc.coeff(g, a).eval(ctx, 0).value());
        std::cout << "Berwald-coeffs[" << g + 1 << "][" << a + 1 << "] = " << buf << "\n";
      }
    }
    return 0;
  }
  const auto key = parse_tensor_key(tensor);
  if (!key) throw std::runtime_error("unknown tensor '" + tensor + "'");
  const Tensor1k* T = nullptr;
  switch (*key) {
    case TensorKey::K: T = &cs.K(); break;
    case TensorKey::R: T = &cs.R_affine(); break;
    case TensorKey::H: T = &cs.H_affine(); break;
    case TensorKey::W0: T = &cs.W0(); break;
    case TensorKey::W: T = &cs.W(); break;
    case TensorKey::Wstar: T = &cs.Wstar(); break;
    case TensorKey::B: T = &cs.Bt(); break;
    case TensorKey::D: T = &cs.Dt(); break;
  }
  print_tensor(tensor, *T, ctx);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"residual checker for spray geometry on Lie algebroid prolongations"};
  app.require_subcommand(1);

  std::string path, format = "text", at, tensor, denom = "rank";
  int points = 0;
  uint64_t seed = 0;
  double tol = 0.0;
  bool has_points = false, has_seed = false, has_tol = false;

  auto* c = app.add_subcommand("check", "run the full check battery on a scenario file");
  c->add_option("file", path, "scenario file")->required();
  c->add_option("--points", points, "number of sample points")->check(CLI::PositiveNumber);
  c->add_option("--seed", seed, "sampling seed");
  c->add_option("--tol", tol, "generic tolerance override")->check(CLI::PositiveNumber);
  c->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  c->add_option("--projective-denom", denom, "trace denominators use bundle rank or base dim")
      ->check(CLI::IsMember({"rank", "base"}));

  auto* v = app.add_subcommand("validate", "parse a scenario and check the structure equations");
  v->add_option("file", path, "scenario file")->required();

  auto* e = app.add_subcommand("eval", "print tensor components at a point");
  e->add_option("file", path, "scenario file")->required();
  e->add_option("--tensor", tensor, "K|R|H|W0|W|Wstar|B|D|Berwald-coeffs")->required();
  e->add_option("--at", at, "point, e.g. \"x=0.1,0.2;y=1,-1\"")->required();
  e->add_option("--projective-denom", denom, "trace denominators use bundle rank or base dim")
      ->check(CLI::IsMember({"rank", "base"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : 2;
  }
  has_points = c->count("--points") > 0;
  has_seed = c->count("--seed") > 0;
  has_tol = c->count("--tol") > 0;

  try {
    if (app.got_subcommand(c)) {
      RunOptions opt;
      if (has_points) opt.points = points;
      if (has_seed) opt.seed = seed;
      if (has_tol) opt.tol = tol;
      opt.denominators_use_base_dim = denom == "base";
      return cmd_check(path, opt, format);
    }
    if (app.got_subcommand(v)) return cmd_validate(path);
    return cmd_eval(path, tensor, at, denom == "base");
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}
