#include "algspray/runner.hpp"

#include <algorithm>
#include <cmath>

#include "algspray/symmetry.hpp"

namespace algspray {

namespace {

struct PendingCheck {
  std::string name;
  std::vector<ScalarField> fields;
  double tol = 0.0;
  bool pre_skipped = false;
};

double tol_for(const Scenario& sc, const RunOptions& opt, const std::string& key, double dflt) {
  auto it = sc.tolerances.find(key);
  if (it != sc.tolerances.end()) return it->second;
  if (opt.tol) return *opt.tol;
  it = sc.tolerances.find("tol");
  if (it != sc.tolerances.end()) return it->second;
  return dflt;
}

std::vector<CheckResult> evaluate(const std::vector<PendingCheck>& pending,
                                  const std::vector<SamplePoint>& pts, int n, int m) {
  struct Acc {
    double mx = 0.0, sum = 0.0;
    int eval = 0, skip = 0;
  };
  std::vector<Acc> acc(pending.size());
  for (const auto& pt : pts) {
    EvalContext ctx(n, m, pt.x, pt.y);
    for (size_t k = 0; k < pending.size(); ++k) {
      if (pending[k].pre_skipped) continue;
      double local = 0.0;
      bool ok = true;
      try {
        for (const auto& f : pending[k].fields)
          local = std::max(local, std::abs(f.eval(ctx, 0).value()));
      } catch (const EvalError&) {
        ok = false;
      }
      if (!ok) {
        ++acc[k].skip;
        continue;
      }
      ++acc[k].eval;
      acc[k].sum += local;
      acc[k].mx = std::max(acc[k].mx, local);
    }
  }

  std::vector<CheckResult> out;
  out.reserve(pending.size());
  const int total = static_cast<int>(pts.size());
  for (size_t k = 0; k < pending.size(); ++k) {
    CheckResult r;
    r.name = pending[k].name;
    r.tolerance = pending[k].tol;
    if (pending[k].pre_skipped) {
      r.verdict = Verdict::Skipped;
      out.push_back(std::move(r));
      continue;
    }
    r.residual_max = acc[k].mx;
    r.residual_mean = acc[k].eval ? acc[k].sum / acc[k].eval : 0.0;
    r.points_evaluated = acc[k].eval;
    r.points_skipped = acc[k].skip;
    if (acc[k].eval == 0 || acc[k].skip * 10 > total)
      r.verdict = Verdict::Inconclusive;
    else
      r.verdict = acc[k].mx <= r.tolerance ? Verdict::Pass : Verdict::Fail;
    out.push_back(std::move(r));
  }
  return out;
}

void append_fields(std::vector<ScalarField>& out, const std::vector<ScalarField>& in) {
  out.insert(out.end(), in.begin(), in.end());
}

void append_section(std::vector<ScalarField>& out, const ProlongSection& s) {
  append_fields(out, s.Z);
  append_fields(out, s.V);
}

}  // namespace

Report run_checks(const Scenario& sc, const RunOptions& opt) {
  Report rep;
  rep.scenario_digest = sc.digest();

  SamplingConfig cfg = sc.sampling;
  if (opt.points) cfg.points = *opt.points;
  if (opt.seed) cfg.seed = *opt.seed;
  rep.points = cfg.points;
  rep.seed = cfg.seed;
  const std::vector<SamplePoint> pts = sample_points(sc.n, sc.m, cfg);

  const AlgebroidStructure A = sc.build_algebroid();
  const int m = sc.m;

  // structure equations come first: everything after is meaningless when
  // the input data is not an algebroid
  {
    std::vector<PendingCheck> head;
    head.push_back({"structure_equations_i", A.structure_residual_i(),
                    tol_for(sc, opt, "structure_tol", 1e-12), false});
    head.push_back({"structure_equations_ii", A.structure_residual_ii(),
                    tol_for(sc, opt, "structure_tol", 1e-12), false});
    rep.checks = evaluate(head, pts, sc.n, sc.m);
  }
  const bool failfast = rep.checks[0].verdict == Verdict::Fail ||
                        rep.checks[1].verdict == Verdict::Fail;

  std::optional<CurvatureSuite> cs;
  if (!failfast) {
    CurvatureOptions copts;
    copts.denominators_use_base_dim = opt.denominators_use_base_dim;
    cs.emplace(A, sc.build_spray(), copts);
  }

  std::vector<PendingCheck> pending;
  auto emit = [&](std::string name, double tol, auto&& make_fields) {
    PendingCheck pc;
    pc.name = std::move(name);
    pc.tol = tol;
    pc.pre_skipped = failfast;
    if (!failfast) pc.fields = make_fields();
    pending.push_back(std::move(pc));
  };

  emit("spray_homogeneity", tol_for(sc, opt, "spray_tol", 1e-12), [&] {
    return spray_homogeneity_defect(A, cs->connection().spray());
  });

  emit("bracket_frame", tol_for(sc, opt, "bracket_tol", 1e-12), [&] {
    std::vector<ScalarField> fields;
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        ProlongSection r = prolong_bracket(A, basis_X(A, a), basis_X(A, b));
        for (int g = 0; g < m; ++g) r = p_sub(r, p_scale(A.L(g, a, b), basis_X(A, g)));
        append_section(fields, r);
        append_section(fields, prolong_bracket(A, basis_V(A, a), basis_V(A, b)));
      }
      for (int b = 0; b < m; ++b)
        append_section(fields, prolong_bracket(A, basis_X(A, a), basis_V(A, b)));
    }
    return fields;
  });

  emit("bracket_adapted", tol_for(sc, opt, "bracket_tol", 1e-10), [&] {
    const BerwaldConnection& bc = cs->connection();
    std::vector<ScalarField> fields;
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        ProlongSection r = prolong_bracket(A, bc.adapted_delta(a), bc.adapted_delta(b));
        for (int g = 0; g < m; ++g) {
          r = p_sub(r, p_scale(A.L(g, a, b), bc.adapted_delta(g)));
          r = p_sub(r, p_scale(bc.curvature(g, a, b), basis_V(A, g)));
        }
        append_section(fields, r);
      }
      for (int b = 0; b < m; ++b) {
        ProlongSection r = prolong_bracket(A, bc.adapted_delta(a), basis_V(A, b));
        for (int g = 0; g < m; ++g) r = p_add(r, p_scale(bc.coeff(g, a).dy(b), basis_V(A, g)));
        append_section(fields, r);
      }
    }
    return fields;
  });

  emit("bracket_jacobi", tol_for(sc, opt, "bracket_tol", 1e-10), [&] {
    std::vector<ProlongSection> fam;
    for (int a = 0; a < std::min(m, 3); ++a) fam.push_back(basis_X(A, a));
    for (int a = 0; a < std::min(m, 2); ++a) fam.push_back(basis_V(A, a));
    fam.push_back(spray_section(A, cs->connection().spray()));
    std::vector<ScalarField> fields;
    for (size_t i = 0; i < fam.size(); ++i) {
      for (size_t j = i + 1; j < fam.size(); ++j) {
        for (size_t k = j + 1; k < fam.size(); ++k) {
          ProlongSection jac =
              p_add(prolong_bracket(A, fam[i], prolong_bracket(A, fam[j], fam[k])),
                    p_add(prolong_bracket(A, fam[j], prolong_bracket(A, fam[k], fam[i])),
                          prolong_bracket(A, fam[k], prolong_bracket(A, fam[i], fam[j]))));
          append_section(fields, jac);
        }
      }
    }
    return fields;
  });

  const double symtol = tol_for(sc, opt, "symmetry_tol", 1e-10);
  const double coltol = tol_for(sc, opt, "collineation_tol", 1e-8);
  for (const auto& req : sc.checks) {
    if (req.kind == CheckRequest::Kind::LieSymmetry) {
      // three views of [[S, eta^C]]: vertical part, the identically-zero
      // horizontal part, and agreement with the closed-form vertical part
      emit("lie_symmetry:" + req.section, symtol, [&] {
        return lie_symmetry_residuals(A, cs->connection().spray(), sc.build_section(req.section))
            .bracket_V;
      });
      emit("lie_symmetry_xresidual:" + req.section, symtol, [&] {
        return lie_symmetry_residuals(A, cs->connection().spray(), sc.build_section(req.section))
            .bracket_Z;
      });
      emit("lie_symmetry_agreement:" + req.section, symtol, [&] {
        const SymmetryResiduals r =
            lie_symmetry_residuals(A, cs->connection().spray(), sc.build_section(req.section));
        std::vector<ScalarField> fields;
        for (size_t k = 0; k < r.bracket_V.size(); ++k)
          fields.push_back(r.bracket_V[k] - r.direct_V[k]);
        return fields;
      });
    } else {
      static constexpr TensorKey keys[] = {TensorKey::K, TensorKey::R,  TensorKey::H,
                                           TensorKey::W0, TensorKey::W, TensorKey::Wstar,
                                           TensorKey::B, TensorKey::D};
      for (const TensorKey key : keys) {
        const bool projective =
            key == TensorKey::W0 || key == TensorKey::W || key == TensorKey::Wstar;
        const std::string name =
            "collineation:" + req.section + ":" + tensor_key_name(key);
        if (failfast || (projective && !cs->projective_defined())) {
          PendingCheck pc;
          pc.name = name;
          pc.tol = coltol;
          pc.pre_skipped = true;
          pending.push_back(std::move(pc));
          continue;
        }
        emit(name, coltol,
             [&] { return collineation_residual(*cs, sc.build_section(req.section), key); });
      }
    }
  }

  const double dualtol = tol_for(sc, opt, "dual_tol", 1e-10);
  emit("dual_path_K", dualtol, [&] { return (cs->K() - cs->K_bracket()).components(); });
  const int den_guess = opt.denominators_use_base_dim ? sc.n : sc.m;
  if (failfast ? den_guess > 1 : cs->projective_defined()) {
    emit("dual_path_W0", dualtol, [&] { return (cs->W0() - cs->W0_alt()).components(); });
  }

  const std::vector<CheckResult> tail = evaluate(pending, pts, sc.n, sc.m);
  rep.checks.insert(rep.checks.end(), tail.begin(), tail.end());
  return rep;
}

}  // namespace algspray
