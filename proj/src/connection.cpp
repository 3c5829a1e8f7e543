#include "algspray/connection.hpp"

namespace algspray {

ProlongSection spray_section(const AlgebroidStructure& A, const Spray& S) {
  ProlongSection out;
  for (int a = 0; a < A.rank(); ++a) out.Z.push_back(A.y(a));
  out.V = S.coeff;
  return out;
}

std::vector<ScalarField> spray_homogeneity_defect(const AlgebroidStructure& A, const Spray& S) {
  std::vector<ScalarField> out;
  for (int a = 0; a < A.rank(); ++a) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(-2.0, S.coeff[a]);
    for (int b = 0; b < A.rank(); ++b) terms.emplace_back(1.0, A.y(b) * S.coeff[a].dy(b));
    out.push_back(ScalarField::lincomb(terms));
  }
  return out;
}

BerwaldConnection::BerwaldConnection(const AlgebroidStructure& A, const Spray& S)
    : A_(A), S_(S), m_(A.rank()) {
  if (static_cast<int>(S.coeff.size()) != m_)
    throw std::invalid_argument("BerwaldConnection: spray arity mismatch");
  B_.reserve(static_cast<size_t>(m_) * m_);
  for (int g = 0; g < m_; ++g) {
    for (int a = 0; a < m_; ++a) {
      std::vector<std::pair<double, ScalarField>> terms;
      terms.emplace_back(0.5, S.coeff[g].dy(a));
      for (int b = 0; b < m_; ++b) terms.emplace_back(-0.5, A.y(b) * A.L(g, a, b));
      B_.push_back(ScalarField::lincomb(terms));
    }
  }
}

ProlongSection BerwaldConnection::adapted_delta(int alpha) const {
  ProlongSection out = basis_X(A_, alpha);
  for (int b = 0; b < m_; ++b) out.V[b] = coeff(b, alpha);
  return out;
}

ProlongSection BerwaldConnection::horizontal(const PullbackSection& s) const {
  ProlongSection out;
  out.Z = s.comp;
  for (int b = 0; b < m_; ++b) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(1.0, A_.zero());
    for (int a = 0; a < m_; ++a) terms.emplace_back(1.0, s.comp[a] * coeff(b, a));
    out.V.push_back(ScalarField::lincomb(terms));
  }
  return out;
}

ProlongSection BerwaldConnection::horizontal(const BaseSection& s) const {
  return horizontal(A_.hat_lift(s));
}

PullbackSection BerwaldConnection::vertical_project(const ProlongSection& s) const {
  PullbackSection out;
  for (int b = 0; b < m_; ++b) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(1.0, s.V[b]);
    for (int a = 0; a < m_; ++a) terms.emplace_back(-1.0, s.Z[a] * coeff(b, a));
    out.comp.push_back(ScalarField::lincomb(terms));
  }
  return out;
}

ProlongSection BerwaldConnection::h(const ProlongSection& s) const {
  return horizontal(map_j(s));
}

ProlongSection BerwaldConnection::v(const ProlongSection& s) const {
  return map_i(A_, vertical_project(s));
}

const std::vector<ScalarField>& BerwaldConnection::curvature() const {
  if (!R_.empty()) return R_;
  R_.reserve(static_cast<size_t>(m_) * m_ * m_);
  for (int g = 0; g < m_; ++g) {
    for (int a = 0; a < m_; ++a) {
      for (int b = 0; b < m_; ++b) {
        std::vector<std::pair<double, ScalarField>> terms;
        terms.emplace_back(1.0, A_.zero());
        for (int i = 0; i < A_.base_dim(); ++i) {
          terms.emplace_back(1.0, A_.rho(i, a) * coeff(g, b).dx(i));
          terms.emplace_back(-1.0, A_.rho(i, b) * coeff(g, a).dx(i));
        }
        for (int l = 0; l < m_; ++l) {
          terms.emplace_back(1.0, coeff(l, a) * coeff(g, b).dy(l));
          terms.emplace_back(-1.0, coeff(l, b) * coeff(g, a).dy(l));
          terms.emplace_back(1.0, A_.L(l, b, a) * coeff(g, l));
        }
        R_.push_back(ScalarField::lincomb(terms));
      }
    }
  }
  return R_;
}

const ScalarField& BerwaldConnection::curvature(int gamma, int alpha, int beta) const {
  return curvature()[(static_cast<size_t>(gamma) * m_ + alpha) * m_ + beta];
}

}  // namespace algspray
