#include "algspray/prolong.hpp"

namespace algspray {

namespace {
std::vector<ScalarField> zeros(const AlgebroidStructure& A) {
  return std::vector<ScalarField>(A.rank(), A.zero());
}
}  // namespace

ProlongSection basis_X(const AlgebroidStructure& A, int alpha) {
  ProlongSection s{zeros(A), zeros(A)};
  s.Z[alpha] = A.one();
  return s;
}

ProlongSection basis_V(const AlgebroidStructure& A, int alpha) {
  ProlongSection s{zeros(A), zeros(A)};
  s.V[alpha] = A.one();
  return s;
}

ProlongSection p_add(const ProlongSection& a, const ProlongSection& b) {
  ProlongSection out;
  for (size_t g = 0; g < a.Z.size(); ++g) {
    out.Z.push_back(a.Z[g] + b.Z[g]);
    out.V.push_back(a.V[g] + b.V[g]);
  }
  return out;
}

ProlongSection p_sub(const ProlongSection& a, const ProlongSection& b) {
  ProlongSection out;
  for (size_t g = 0; g < a.Z.size(); ++g) {
    out.Z.push_back(a.Z[g] - b.Z[g]);
    out.V.push_back(a.V[g] - b.V[g]);
  }
  return out;
}

ProlongSection p_scale(double s, const ProlongSection& a) {
  ProlongSection out;
  for (size_t g = 0; g < a.Z.size(); ++g) {
    out.Z.push_back(s * a.Z[g]);
    out.V.push_back(s * a.V[g]);
  }
  return out;
}

ProlongSection p_scale(const ScalarField& f, const ProlongSection& a) {
  ProlongSection out;
  for (size_t g = 0; g < a.Z.size(); ++g) {
    out.Z.push_back(f * a.Z[g]);
    out.V.push_back(f * a.V[g]);
  }
  return out;
}

ScalarField rho_L_apply(const AlgebroidStructure& A, const ProlongSection& s,
                        const ScalarField& F) {
  std::vector<std::pair<double, ScalarField>> terms;
  terms.emplace_back(1.0, A.zero());
  for (int a = 0; a < A.rank(); ++a) {
    for (int i = 0; i < A.base_dim(); ++i)
      terms.emplace_back(1.0, s.Z[a] * A.rho(i, a) * F.dx(i));
    terms.emplace_back(1.0, s.V[a] * F.dy(a));
  }
  return ScalarField::lincomb(terms);
}

VectorFieldOnE rho_L(const AlgebroidStructure& A, const ProlongSection& s) {
  VectorFieldOnE out;
  for (int i = 0; i < A.base_dim(); ++i) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(1.0, A.zero());
    for (int a = 0; a < A.rank(); ++a) terms.emplace_back(1.0, s.Z[a] * A.rho(i, a));
    out.comp.push_back(ScalarField::lincomb(terms));
  }
  for (int a = 0; a < A.rank(); ++a) out.comp.push_back(s.V[a]);
  return out;
}

ProlongSection prolong_bracket(const AlgebroidStructure& A, const ProlongSection& a,
                               const ProlongSection& b) {
  const int m = A.rank();
  ProlongSection out;
  out.Z.reserve(m);
  out.V.reserve(m);
  for (int g = 0; g < m; ++g) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(1.0, rho_L_apply(A, a, b.Z[g]));
    terms.emplace_back(-1.0, rho_L_apply(A, b, a.Z[g]));
    for (int al = 0; al < m; ++al) {
      for (int be = 0; be < m; ++be) {
        terms.emplace_back(1.0, a.Z[al] * b.Z[be] * A.L(g, al, be));
      }
    }
    out.Z.push_back(ScalarField::lincomb(terms));
  }
  for (int g = 0; g < m; ++g) {
    out.V.push_back(rho_L_apply(A, a, b.V[g]) - rho_L_apply(A, b, a.V[g]));
  }
  return out;
}

ProlongSection map_i(const AlgebroidStructure& A, const PullbackSection& s) {
  return ProlongSection{zeros(A), s.comp};
}

PullbackSection map_j(const ProlongSection& s) { return PullbackSection{s.Z}; }

ProlongSection vertical_endomorphism(const AlgebroidStructure& A, const ProlongSection& s) {
  return ProlongSection{zeros(A), s.Z};
}

ProlongSection vertical_lift_P(const AlgebroidStructure& A, const BaseSection& eta) {
  return ProlongSection{zeros(A), eta.comp};
}

ProlongSection complete_lift_P(const AlgebroidStructure& A, const BaseSection& eta) {
  const int m = A.rank();
  ProlongSection out;
  out.Z = eta.comp;
  out.V.reserve(m);
  for (int a = 0; a < m; ++a) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(1.0, A.zero());
    for (int b = 0; b < m; ++b) terms.emplace_back(1.0, A.y(b) * A.lift_coeff(eta, a, b));
    out.V.push_back(ScalarField::lincomb(terms));
  }
  return out;
}

ProlongSection liouville(const AlgebroidStructure& A) {
  ProlongSection out;
  out.Z = zeros(A);
  for (int a = 0; a < A.rank(); ++a) out.V.push_back(A.y(a));
  return out;
}

PullbackSection canonical_delta(const AlgebroidStructure& A) {
  PullbackSection out;
  for (int a = 0; a < A.rank(); ++a) out.comp.push_back(A.y(a));
  return out;
}

ProlongSection homogeneity_defect(const AlgebroidStructure& A, const ProlongSection& s, int r) {
  return p_sub(prolong_bracket(A, liouville(A), s), p_scale(r - 1.0, s));
}

}  // namespace algspray
