// Acceptance gate: one line per criterion, nonzero exit if any fails.
// argv[1] = path to the CLI binary (for the determinism criterion),
// argv[2] = directory holding the scenario files.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "algspray/builtin.hpp"
#include "algspray/curvature.hpp"
#include "algspray/derivation.hpp"
#include "algspray/runner.hpp"
#include "algspray/symmetry.hpp"

using namespace algspray;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("criterion %d %-4s %s\n", criterion, ok ? "PASS" : "FAIL", what.c_str());
  if (!ok) ++g_failures;
}

double now_s() {
  using clk = std::chrono::steady_clock;
  static const clk::time_point t0 = clk::now();
  return std::chrono::duration<double>(clk::now() - t0).count();
}

std::vector<SamplePoint> pts_for(const Scenario& sc, int points, uint64_t seed) {
  SamplingConfig cfg = sc.sampling;
  cfg.points = points;
  cfg.seed = seed;
  return sample_points(sc.n, sc.m, cfg);
}

double max_abs(const AlgebroidStructure& A, const std::vector<ScalarField>& fields,
               const std::vector<SamplePoint>& pts) {
  double mx = 0.0;
  for (const auto& p : pts) {
    EvalContext ctx(A.base_dim(), A.rank(), p.x, p.y);
    for (const auto& f : fields) mx = std::max(mx, std::abs(f.eval(ctx, 0).value()));
  }
  return mx;
}

double max_abs(const AlgebroidStructure& A, const ProlongSection& s,
               const std::vector<SamplePoint>& pts) {
  return std::max(max_abs(A, s.Z, pts), max_abs(A, s.V, pts));
}

double max_abs(const AlgebroidStructure& A, const PullbackSection& s,
               const std::vector<SamplePoint>& pts) {
  return max_abs(A, s.comp, pts);
}

// deterministic nontrivial sections for a given shape: base-dependent when
// the base exists, constant otherwise
BaseSection synth_section(const AlgebroidStructure& A, int variant) {
  const int n = A.base_dim(), m = A.rank();
  BaseSection s;
  for (int a = 0; a < m; ++a) {
    double c = 0.25 * ((variant + a) % 5) - 0.5;
    ScalarField f = ScalarField::constant(n, m, 1.0 + c);
    if (n >= 1) {
      ScalarField x = ScalarField::coord_x(n, m, (variant + a) % n);
      f = f + (((variant + a) % 2) ? x : x * x);
    }
    s.comp.push_back(f);
  }
  return s;
}

PullbackSection synth_pullback(const AlgebroidStructure& A, int variant) {
  const int n = A.base_dim(), m = A.rank();
  PullbackSection s;
  for (int a = 0; a < m; ++a) {
    ScalarField f = A.y((variant + a) % m) * ScalarField::constant(n, m, 1.0 + 0.5 * a);
    if (n >= 1) f = f + A.y(a) * ScalarField::coord_x(n, m, (variant + a) % n);
    s.comp.push_back(f);
  }
  return s;
}

ScalarField synth_function(const AlgebroidStructure& A) {
  const int n = A.base_dim(), m = A.rank();
  ScalarField f = A.y(0) * A.y(0);
  if (m >= 2) f = f + A.y(1) * A.y(m - 1);
  if (n >= 1) f = f + ScalarField::coord_x(n, m, 0) * A.y(0);
  return f;
}

double sec_gap(const AlgebroidStructure& A, const PullbackSection& a, const PullbackSection& b,
               const std::vector<SamplePoint>& pts) {
  double mx = 0.0;
  for (size_t k = 0; k < a.comp.size(); ++k)
    mx = std::max(mx, max_abs(A, {a.comp[k] - b.comp[k]}, pts));
  return mx;
}

double tensor_gap(const AlgebroidStructure& A, const Tensor1k& a, const Tensor1k& b,
                  const std::vector<SamplePoint>& pts) {
  double mx = 0.0;
  for (size_t k = 0; k < a.components().size(); ++k)
    mx = std::max(mx, max_abs(A, {a.components()[k] - b.components()[k]}, pts));
  return mx;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  std::string name;
  Scenario sc;
  AlgebroidStructure A;
  Spray S;
};

std::vector<Loaded> load_all(const std::string& dir) {
  std::vector<Loaded> out;
  for (const auto& b : builtin_scenarios()) {
    Scenario sc = load_scenario_file(dir + "/" + b.name + ".scn");
    AlgebroidStructure A = sc.build_algebroid();
    Spray S = sc.build_spray();
    out.push_back({b.name, std::move(sc), std::move(A), std::move(S)});
  }
  return out;
}

// the commutation-identity battery at the given points; returns the worst residual
double derivation_battery(const AlgebroidStructure& A, const Spray& Sp,
                          const std::vector<SamplePoint>& pts) {
  BerwaldConnection bc(A, Sp);
  BaseSection eta = synth_section(A, 1);
  BaseSection xi = synth_section(A, 2);
  BaseSection sigma = synth_section(A, 3);
  PullbackSection sbar = synth_pullback(A, 1);
  ScalarField F = synth_function(A);

  ProlongSection etaC = complete_lift_P(A, eta);
  LieDerivation L(A, etaC);
  PullbackSection xihat = A.hat_lift(xi);
  double worst = 0.0;
  auto upd = [&](double v) { worst = std::max(worst, v); };

  // lift of the bracket
  upd(sec_gap(A, L.apply(A.hat_lift(xi)), A.hat_lift(A.bracket(eta, xi)), pts));
  // vertical-lift derivation is the fiber derivative
  {
    LieDerivation Lv(A, vertical_lift_P(A, eta));
    upd(sec_gap(A, Lv.apply(sbar), nabla_v_sec(A.hat_lift(eta), sbar), pts));
  }
  // horizontal-lift derivation is the horizontal derivative
  {
    LieDerivation Lh(A, bc.horizontal(eta));
    upd(sec_gap(A, Lh.apply(sbar), nabla_h_sec(bc, A.hat_lift(eta), sbar), pts));
  }
  // compatibility with the frame projection
  {
    ProlongSection wild = p_add(p_scale(A.y(0), basis_X(A, A.rank() - 1)),
                                p_scale(synth_function(A), basis_V(A, 0)));
    upd(sec_gap(A, L.apply(map_j(wild)), map_j(prolong_bracket(A, etaC, wild)), pts));
  }
  // commutator with the vertical derivative
  {
    PullbackSection l1 = L.apply(nabla_v_sec(xihat, sbar));
    PullbackSection l2 = nabla_v_sec(xihat, L.apply(sbar));
    PullbackSection lhs;
    for (size_t k = 0; k < l1.comp.size(); ++k) lhs.comp.push_back(l1.comp[k] - l2.comp[k]);
    LieDerivation Lv(A, vertical_lift_P(A, A.bracket(eta, xi)));
    upd(sec_gap(A, lhs, Lv.apply(sbar), pts));
  }
  // commutator with the horizontal derivative
  {
    PullbackSection l1 = L.apply(nabla_h_sec(bc, xihat, sbar));
    PullbackSection l2 = nabla_h_sec(bc, xihat, L.apply(sbar));
    PullbackSection lhs;
    for (size_t k = 0; k < l1.comp.size(); ++k) lhs.comp.push_back(l1.comp[k] - l2.comp[k]);
    LieDerivation Lm(A, prolong_bracket(A, etaC, bc.horizontal(xi)));
    upd(sec_gap(A, lhs, Lm.apply(sbar), pts));
  }
  // derivative of a basic section stays basic
  {
    PullbackSection moved = L.apply(A.hat_lift(sigma));
    upd(max_abs(A, nabla_v_sec(xihat, moved).comp, pts));
  }
  // action on the vertical differential of a function
  {
    Tensor0k dvF(A.rank(), 1, nabla_v_fn(F, A.rank()));
    Tensor0k moved = L.apply(dvF);
    ScalarField lhs = moved.evaluate(std::span<const PullbackSection>(&xihat, 1));
    ScalarField rhs =
        rho_L_apply(A, vertical_lift_P(A, xi), rho_L_apply(A, etaC, F));
    upd(max_abs(A, {lhs - rhs}, pts));
  }
  return worst;
}

// relative agreement of first-order jet slots with a Richardson central
// difference; returns the worst relative error over fields, slots and points
double fd_worst(const AlgebroidStructure& A, const std::vector<ScalarField>& fields,
                const std::vector<SamplePoint>& pts) {
  const int n = A.base_dim(), m = A.rank();
  double worst = 0.0;
  for (const auto& p : pts) {
    for (const auto& f : fields) {
      Jet jet = f.eval_jet(p.x, p.y, 1);
      for (int slot = 0; slot < n + m; ++slot) {
        auto at = [&](double d) {
          std::vector<double> xx(p.x), yy(p.y);
          if (slot < n)
            xx[slot] += d;
          else
            yy[slot - n] += d;
          return f.eval_value(xx, yy);
        };
        const double h = 1e-3;
        const double d1 = (at(h) - at(-h)) / (2 * h);
        const double d2 = (at(h / 2) - at(-h / 2)) / h;
        const double fd = (4 * d2 - d1) / 3;
        const int s[] = {slot};
        const double ad = jet.partial_slots(s);
        worst = std::max(worst, std::abs(ad - fd) / std::max(1.0, std::abs(ad)));
      }
    }
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <cli-binary> <scenario-dir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::string dir = argv[2];
  std::vector<Loaded> all = load_all(dir);
  auto by_name = [&](const std::string& name) -> Loaded& {
    for (auto& l : all)
      if (l.name == name) return l;
    std::fprintf(stderr, "missing scenario %s\n", name.c_str());
    std::exit(2);
  };

  // 1: structure equations at 1e-12, 100 seeded points, under a second each
  {
    bool ok = true;
    std::ostringstream what;
    what << "structure equations <= 1e-12 on flat_r2/so3/anchor12:";
    for (const char* name : {"flat_r2", "so3", "anchor12"}) {
      Loaded& l = by_name(name);
      double t0 = now_s();
      auto pts = pts_for(l.sc, 100, 42);
      double ri = max_abs(l.A, l.A.structure_residual_i(), pts);
      double rii = max_abs(l.A, l.A.structure_residual_ii(), pts);
      double dt = now_s() - t0;
      ok = ok && ri <= 1e-12 && rii <= 1e-12 && dt < 1.0;
      what << " " << name << " max " << std::max(ri, rii) << " in " << dt << "s";
    }
    report(1, ok, what.str());
  }

  // 2: frame and adapted bracket tables plus the Jacobi identity at 1e-10
  {
    bool ok = true;
    double worst = 0.0;
    for (auto& l : all) {
      auto pts = pts_for(l.sc, 100, 42);
      const int m = l.A.rank();
      BerwaldConnection bc(l.A, l.S);
      std::vector<ScalarField> fields;
      auto push_sec = [&](const ProlongSection& s) {
        for (const auto& f : s.Z) fields.push_back(f);
        for (const auto& f : s.V) fields.push_back(f);
      };
      for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
          ProlongSection r = prolong_bracket(l.A, basis_X(l.A, a), basis_X(l.A, b));
          for (int g = 0; g < m; ++g) r = p_sub(r, p_scale(l.A.L(g, a, b), basis_X(l.A, g)));
          push_sec(r);
          push_sec(prolong_bracket(l.A, basis_V(l.A, a), basis_V(l.A, b)));
          ProlongSection d = prolong_bracket(l.A, bc.adapted_delta(a), bc.adapted_delta(b));
          for (int g = 0; g < m; ++g) d = p_sub(d, p_scale(l.A.L(g, a, b), bc.adapted_delta(g)));
          PullbackSection curv;
          for (int g = 0; g < m; ++g) curv.comp.push_back(bc.curvature(g, a, b));
          d = p_sub(d, map_i(l.A, curv));
          push_sec(d);
        }
        for (int b = 0; b < m; ++b)
          push_sec(prolong_bracket(l.A, basis_X(l.A, a), basis_V(l.A, b)));
      }
      // Jacobi identity over a mixed family including the spray section
      std::vector<ProlongSection> fam = {basis_X(l.A, 0), basis_V(l.A, 0),
                                         spray_section(l.A, l.S)};
      if (m >= 2) fam.push_back(basis_X(l.A, 1));
      for (size_t i = 0; i < fam.size(); ++i)
        for (size_t j = i + 1; j < fam.size(); ++j)
          for (size_t k = j + 1; k < fam.size(); ++k) {
            ProlongSection cyc = prolong_bracket(l.A, fam[i], prolong_bracket(l.A, fam[j], fam[k]));
            cyc = p_add(cyc, prolong_bracket(l.A, fam[j], prolong_bracket(l.A, fam[k], fam[i])));
            cyc = p_add(cyc, prolong_bracket(l.A, fam[k], prolong_bracket(l.A, fam[i], fam[j])));
            push_sec(cyc);
          }
      worst = std::max(worst, max_abs(l.A, fields, pts));
    }
    ok = worst <= 1e-10;
    std::ostringstream what;
    what << "bracket tables and Jacobi identity <= 1e-10 on all scenarios, worst " << worst;
    report(2, ok, what.str());
  }

  // 3: structure-operator identities at 1e-12 for every scenario spray
  {
    double worst = 0.0;
    for (auto& l : all) {
      auto pts = pts_for(l.sc, 100, 42);
      BerwaldConnection bc(l.A, l.S);
      ProlongSection s = p_add(p_scale(l.A.y(0), basis_X(l.A, 0)),
                               p_scale(synth_function(l.A), basis_V(l.A, l.A.rank() - 1)));
      auto J = [&](const ProlongSection& q) { return vertical_endomorphism(l.A, q); };
      worst = std::max(worst, max_abs(l.A, J(J(s)), pts));
      worst = std::max(worst, max_abs(l.A, p_sub(J(bc.h(s)), J(s)), pts));
      worst = std::max(worst, max_abs(l.A, bc.h(J(s)), pts));
      worst = std::max(worst, max_abs(l.A, p_sub(bc.v(J(s)), J(s)), pts));
      worst = std::max(worst, max_abs(l.A, J(bc.v(s)), pts));
      ProlongSection spr = spray_section(l.A, l.S);
      worst = std::max(worst, max_abs(l.A, p_sub(J(spr), liouville(l.A)), pts));
      worst = std::max(worst,
                       max_abs(l.A, p_sub(prolong_bracket(l.A, liouville(l.A), spr), spr), pts));
    }
    std::ostringstream what;
    what << "endomorphism and homogeneity identities <= 1e-12, worst " << worst;
    report(3, worst <= 1e-12, what.str());
  }

  // 4: both curvature routes agree at 1e-10 everywhere
  {
    double worst = 0.0;
    for (auto& l : all) {
      auto pts = pts_for(l.sc, 100, 42);
      CurvatureSuite cs(l.A, l.S);
      worst = std::max(worst, tensor_gap(l.A, cs.K(), cs.K_bracket(), pts));
      if (cs.projective_defined())
        worst = std::max(worst, tensor_gap(l.A, cs.W0(), cs.W0_alt(), pts));
    }
    std::ostringstream what;
    what << "dual-path endomorphism and deviation tensors <= 1e-10, worst " << worst;
    report(4, worst <= 1e-10, what.str());
  }

  // 5: commutation-identity battery at 1e-9, 100 points, every scenario
  {
    double worst = 0.0;
    for (auto& l : all)
      worst = std::max(worst, derivation_battery(l.A, l.S, pts_for(l.sc, 100, 42)));
    std::ostringstream what;
    what << "derivation identities <= 1e-9 at 100 points on all scenarios, worst " << worst;
    report(5, worst <= 1e-9, what.str());
  }

  // 6: full battery on the flat rotation and a curved verified symmetry
  {
    double t0 = now_s();
    bool ok = true;
    double sym_worst = 0.0, col_worst = 0.0;
    for (const char* name : {"flat_r2", "so3_spray", "rotsym"}) {
      Loaded& l = by_name(name);
      Report r = run_checks(l.sc);
      ok = ok && r.all_pass();
      for (const auto& c : r.checks) {
        if (c.name.rfind("lie_symmetry:", 0) == 0)
          sym_worst = std::max(sym_worst, c.residual_max);
        if (c.name.rfind("collineation:", 0) == 0)
          col_worst = std::max(col_worst, c.residual_max);
      }
    }
    double dt = now_s() - t0;
    ok = ok && sym_worst <= 1e-10 && col_worst <= 1e-8 && dt < 60.0;
    std::ostringstream what;
    what << "symmetry <= 1e-10 and eight collineation residuals <= 1e-8 "
         << "(worst " << sym_worst << ", " << col_worst << ") in " << dt << "s";
    report(6, ok, what.str());
  }

  // 7: negative control with the known analytic residual
  {
    Loaded& l = by_name("flat_r2");
    auto pts = pts_for(l.sc, 100, 42);
    BaseSection bad{{ScalarField::from_expr(2, 2, "x1^2"), l.A.zero()}};
    SymmetryResiduals res = lie_symmetry_residuals(l.A, l.S, bad);
    ScalarField want = 2.0 * (l.A.y(0) * l.A.y(0));
    double match = std::max(max_abs(l.A, {res.direct_V[0] - want, res.direct_V[1]}, pts),
                            max_abs(l.A, {res.bracket_V[0] - want, res.bracket_V[1]}, pts));
    Scenario neg = load_scenario_text(
        "[algebroid]\nn = 2\nm = 2\nrho[1][1] = \"1\"\nrho[2][2] = \"1\"\n"
        "[section bad]\ncomp[1] = \"x1^2\"\ncomp[2] = \"0\"\n"
        "[check]\nlie_symmetry = \"bad\"\n");
    Report r = run_checks(neg);
    bool fails_as_expected = false;
    for (const auto& c : r.checks)
      if (c.name == "lie_symmetry:bad") fails_as_expected = (c.verdict == Verdict::Fail);
    bool ok = match <= 1e-10 && fails_as_expected && !r.all_pass();
    std::ostringstream what;
    what << "negative control: residual matches 2*y1^2 to " << match
         << " and the verdict is fail";
    report(7, ok, what.str());
  }

  // 8: jet partials against the finite-difference oracle, 50 points
  {
    double worst = 0.0;
    for (auto& l : all) {
      auto pts = pts_for(l.sc, 50, 2024);
      BerwaldConnection bc(l.A, l.S);
      CurvatureSuite cs(l.A, l.S);
      std::vector<ScalarField> fields;
      for (const auto& f : l.A.structure_residual_i()) fields.push_back(f);
      for (const auto& f : l.A.structure_residual_ii()) fields.push_back(f);
      for (int g = 0; g < l.A.rank(); ++g) fields.push_back(bc.coeff(g, 0));
      fields.push_back(cs.K().components().front());
      fields.push_back(cs.K().components().back());
      fields.push_back(cs.R_affine().components().front());
      SymmetryResiduals res = lie_symmetry_residuals(l.A, l.S, synth_section(l.A, 1));
      fields.push_back(res.direct_V[0]);
      worst = std::max(worst, fd_worst(l.A, fields, pts));
    }
    std::ostringstream what;
    what << "jet partials vs central differences, relative <= 1e-6, worst " << worst;
    report(8, worst <= 1e-6, what.str());
  }

  // 9: byte-identical JSON across two CLI runs
  {
    const std::string scn = dir + "/so3_spray.scn";
    const std::string o1 = "/tmp/algspray_accept_1.json";
    const std::string o2 = "/tmp/algspray_accept_2.json";
    int rc1 = std::system((cli + " check " + scn + " --format json > " + o1).c_str());
    int rc2 = std::system((cli + " check " + scn + " --format json > " + o2).c_str());
    std::string a = slurp(o1), b = slurp(o2);
    bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
    std::ostringstream what;
    what << "repeated check produces byte-identical JSON (" << a.size() << " bytes)";
    report(9, ok, what.str());
  }

  if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures ? 1 : 0;
}
