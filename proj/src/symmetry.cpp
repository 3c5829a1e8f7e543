#include "algspray/symmetry.hpp"

namespace algspray {

SymmetryResiduals lie_symmetry_residuals(const AlgebroidStructure& A, const Spray& S,
                                         const BaseSection& eta) {
  const int m = A.rank();
  const int n = A.base_dim();
  const ProlongSection br =
      prolong_bracket(A, spray_section(A, S), complete_lift_P(A, eta));

  SymmetryResiduals out;
  out.bracket_Z = br.Z;
  out.bracket_V = br.V;

  // closed-form vertical part, built without the prolongation bracket
  out.direct_V.reserve(m);
  for (int al = 0; al < m; ++al) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(0.0, A.zero());
    for (int b = 0; b < m; ++b) {
      const ScalarField lc = A.lift_coeff(eta, al, b);
      for (int l = 0; l < m; ++l)
        for (int i = 0; i < n; ++i)
          terms.emplace_back(1.0, A.y(b) * A.y(l) * A.rho(i, l) * lc.dx(i));
      terms.emplace_back(1.0, S.coeff[b] * A.lift_coeff(eta, al, b));
      for (int l = 0; l < m; ++l)
        terms.emplace_back(-1.0, A.y(b) * A.lift_coeff(eta, l, b) * S.coeff[al].dy(l));
    }
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < n; ++i)
        terms.emplace_back(-1.0, eta.comp[l] * A.rho(i, l) * S.coeff[al].dx(i));
    out.direct_V.push_back(ScalarField::lincomb(terms));
  }
  return out;
}

ATensorValue a_tensor(const BerwaldConnection& bc, const BaseSection& eta,
                      const BaseSection& xi) {
  const AlgebroidStructure& A = bc.algebroid();
  const ProlongSection lhs = bc.horizontal(A.bracket(eta, xi));
  const ProlongSection rhs =
      prolong_bracket(A, complete_lift_P(A, eta), bc.horizontal(xi));
  const ProlongSection d = p_sub(lhs, rhs);
  return {d.V, d.Z};
}

std::vector<ScalarField> a_tensor_direct(const BerwaldConnection& bc, const BaseSection& eta,
                                         const BaseSection& xi) {
  const AlgebroidStructure& A = bc.algebroid();
  const int m = A.rank();
  const int n = A.base_dim();
  std::vector<ScalarField> out;
  out.reserve(m);
  for (int al = 0; al < m; ++al) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(0.0, A.zero());
    for (int b = 0; b < m; ++b) {
      const ScalarField& xb = xi.comp[b];
      for (int l = 0; l < m; ++l)
        for (int i = 0; i < n; ++i)
          terms.emplace_back(1.0, xb * eta.comp[l] * A.rho(i, l) * bc.coeff(al, b).dx(i));
      for (int g = 0; g < m; ++g) {
        const ScalarField lc = A.lift_coeff(eta, al, g);
        for (int i = 0; i < n; ++i)
          terms.emplace_back(-1.0, xb * A.y(g) * A.rho(i, b) * lc.dx(i));
        for (int l = 0; l < m; ++l)
          terms.emplace_back(1.0, xb * A.y(g) * A.lift_coeff(eta, l, g) * bc.coeff(al, b).dy(l));
        terms.emplace_back(1.0, xb * A.lift_coeff(eta, g, b) * bc.coeff(al, g));
      }
      for (int l = 0; l < m; ++l)
        terms.emplace_back(-1.0, xb * bc.coeff(l, b) * A.lift_coeff(eta, al, l));
    }
    out.push_back(ScalarField::lincomb(terms));
  }
  return out;
}

ProlongSection fn_bracket_J(const AlgebroidStructure& A, const ProlongSection& dir,
                            const ProlongSection& arg) {
  return p_sub(prolong_bracket(A, vertical_endomorphism(A, arg), dir),
               vertical_endomorphism(A, prolong_bracket(A, arg, dir)));
}

ProlongSection fn_bracket_v(const BerwaldConnection& bc, const BaseSection& eta,
                            const ProlongSection& arg) {
  const AlgebroidStructure& A = bc.algebroid();
  const ProlongSection etaC = complete_lift_P(A, eta);
  return p_sub(prolong_bracket(A, bc.v(arg), etaC),
               bc.v(prolong_bracket(A, arg, etaC)));
}

std::optional<TensorKey> parse_tensor_key(std::string_view name) {
  if (name == "K") return TensorKey::K;
  if (name == "R") return TensorKey::R;
  if (name == "H") return TensorKey::H;
  if (name == "W0") return TensorKey::W0;
  if (name == "W") return TensorKey::W;
  if (name == "Wstar") return TensorKey::Wstar;
  if (name == "B") return TensorKey::B;
  if (name == "D") return TensorKey::D;
  return std::nullopt;
}

const char* tensor_key_name(TensorKey key) {
  switch (key) {
    case TensorKey::K: return "K";
    case TensorKey::R: return "R";
    case TensorKey::H: return "H";
    case TensorKey::W0: return "W0";
    case TensorKey::W: return "W";
    case TensorKey::Wstar: return "Wstar";
    case TensorKey::B: return "B";
    case TensorKey::D: return "D";
  }
  return "?";
}

std::vector<ScalarField> collineation_residual(const CurvatureSuite& cs,
                                               const BaseSection& eta, TensorKey key) {
  const AlgebroidStructure& A = cs.algebroid();
  const LieDerivation ld(A, complete_lift_P(A, eta));
  const Tensor1k* T = nullptr;
  switch (key) {
    case TensorKey::K: T = &cs.K(); break;
    case TensorKey::R: T = &cs.R_affine(); break;
    case TensorKey::H: T = &cs.H_affine(); break;
    case TensorKey::W0: T = &cs.W0(); break;
    case TensorKey::W: T = &cs.W(); break;
    case TensorKey::Wstar: T = &cs.Wstar(); break;
    case TensorKey::B: T = &cs.Bt(); break;
    case TensorKey::D: T = &cs.Dt(); break;
  }
  return ld.apply(*T).components();
}

}  // namespace algspray
