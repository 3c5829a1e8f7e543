#include "algspray/algebroid.hpp"

#include <cmath>
#include <stdexcept>

namespace algspray {

ScalarField vf_apply(const VectorFieldOnE& X, const ScalarField& f) {
  const int n = f.base_dim(), m = f.fiber_dim();
  std::vector<std::pair<double, ScalarField>> terms;
  for (int i = 0; i < n; ++i) terms.emplace_back(1.0, X.comp[i] * f.dx(i));
  for (int a = 0; a < m; ++a) terms.emplace_back(1.0, X.comp[n + a] * f.dy(a));
  return ScalarField::lincomb(terms);
}

VectorFieldOnE vf_commutator(const VectorFieldOnE& X, const VectorFieldOnE& Y) {
  VectorFieldOnE out;
  const size_t dim = X.comp.size();
  out.comp.reserve(dim);
  for (size_t k = 0; k < dim; ++k) {
    out.comp.push_back(vf_apply(X, Y.comp[k]) - vf_apply(Y, X.comp[k]));
  }
  return out;
}

AlgebroidStructure::AlgebroidStructure(int n, int m,
                                       std::vector<std::vector<ScalarField>> rho,
                                       const std::vector<UpperEntry>& entries)
    : n_(n), m_(m), rho_(std::move(rho)) {
  if (m < 1) throw std::invalid_argument("AlgebroidStructure: rank must be at least 1");
  if (n < 0) throw std::invalid_argument("AlgebroidStructure: negative base dimension");
  if (static_cast<int>(rho_.size()) != n)
    throw std::invalid_argument("AlgebroidStructure: anchor row count mismatch");
  for (const auto& row : rho_) {
    if (static_cast<int>(row.size()) != m)
      throw std::invalid_argument("AlgebroidStructure: anchor column count mismatch");
  }
  L_.assign(static_cast<size_t>(m) * m * m, zero());
  for (const auto& e : entries) {
    if (e.gamma < 0 || e.gamma >= m || e.alpha < 0 || e.alpha >= m || e.beta < 0 || e.beta >= m)
      throw std::invalid_argument("AlgebroidStructure: structure index out of range");
    if (e.alpha >= e.beta)
      throw std::invalid_argument(
          "AlgebroidStructure: structure entries must have alpha < beta");
    L_[(static_cast<size_t>(e.gamma) * m + e.alpha) * m + e.beta] = e.value;
    L_[(static_cast<size_t>(e.gamma) * m + e.beta) * m + e.alpha] = -e.value;
  }
}

BaseSection AlgebroidStructure::basis_section(int alpha) const {
  BaseSection s;
  s.comp.reserve(m_);
  for (int a = 0; a < m_; ++a)
    s.comp.push_back(ScalarField::constant(n_, m_, a == alpha ? 1.0 : 0.0));
  return s;
}

ScalarField AlgebroidStructure::anchor_apply(const BaseSection& xi, const ScalarField& f) const {
  std::vector<std::pair<double, ScalarField>> terms;
  terms.emplace_back(1.0, zero());
  for (int a = 0; a < m_; ++a) {
    for (int i = 0; i < n_; ++i) {
      terms.emplace_back(1.0, xi.comp[a] * rho_[i][a] * f.dx(i));
    }
  }
  return ScalarField::lincomb(terms);
}

BaseSection AlgebroidStructure::bracket(const BaseSection& xi, const BaseSection& eta) const {
  BaseSection out;
  out.comp.reserve(m_);
  for (int g = 0; g < m_; ++g) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(1.0, anchor_apply(xi, eta.comp[g]));
    terms.emplace_back(-1.0, anchor_apply(eta, xi.comp[g]));
    for (int a = 0; a < m_; ++a) {
      for (int b = 0; b < m_; ++b) {
        terms.emplace_back(1.0, xi.comp[a] * eta.comp[b] * L(g, a, b));
      }
    }
    out.comp.push_back(ScalarField::lincomb(terms));
  }
  return out;
}

ScalarField AlgebroidStructure::lift_coeff(const BaseSection& xi, int alpha, int beta) const {
  std::vector<std::pair<double, ScalarField>> terms;
  terms.emplace_back(1.0, zero());
  for (int j = 0; j < n_; ++j)
    terms.emplace_back(1.0, rho_[j][beta] * xi.comp[alpha].dx(j));
  for (int g = 0; g < m_; ++g)
    terms.emplace_back(-1.0, xi.comp[g] * L(alpha, g, beta));
  return ScalarField::lincomb(terms);
}

ScalarField AlgebroidStructure::complete_lift_fn(const ScalarField& f) const {
  std::vector<std::pair<double, ScalarField>> terms;
  terms.emplace_back(1.0, zero());
  for (int a = 0; a < m_; ++a) {
    for (int i = 0; i < n_; ++i) {
      terms.emplace_back(1.0, y(a) * rho_[i][a] * f.dx(i));
    }
  }
  return ScalarField::lincomb(terms);
}

VectorFieldOnE AlgebroidStructure::vertical_lift_vf(const BaseSection& xi) const {
  VectorFieldOnE out;
  out.comp.assign(n_, zero());
  for (int a = 0; a < m_; ++a) out.comp.push_back(xi.comp[a]);
  return out;
}

VectorFieldOnE AlgebroidStructure::complete_lift_vf(const BaseSection& xi) const {
  VectorFieldOnE out;
  out.comp.reserve(n_ + m_);
  for (int i = 0; i < n_; ++i) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(1.0, zero());
    for (int a = 0; a < m_; ++a) terms.emplace_back(1.0, xi.comp[a] * rho_[i][a]);
    out.comp.push_back(ScalarField::lincomb(terms));
  }
  for (int a = 0; a < m_; ++a) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(1.0, zero());
    for (int b = 0; b < m_; ++b) terms.emplace_back(1.0, y(b) * lift_coeff(xi, a, b));
    out.comp.push_back(ScalarField::lincomb(terms));
  }
  return out;
}

PullbackSection AlgebroidStructure::hat_lift(const BaseSection& xi) const {
  PullbackSection out;
  out.comp = xi.comp;
  return out;
}

std::vector<ScalarField> AlgebroidStructure::structure_residual_i() const {
  std::vector<ScalarField> out;
  for (int a = 0; a < m_; ++a) {
    for (int b = a + 1; b < m_; ++b) {
      for (int i = 0; i < n_; ++i) {
        std::vector<std::pair<double, ScalarField>> terms;
        terms.emplace_back(1.0, zero());
        for (int j = 0; j < n_; ++j) {
          terms.emplace_back(1.0, rho_[j][a] * rho_[i][b].dx(j));
          terms.emplace_back(-1.0, rho_[j][b] * rho_[i][a].dx(j));
        }
        for (int g = 0; g < m_; ++g) terms.emplace_back(-1.0, rho_[i][g] * L(g, a, b));
        out.push_back(ScalarField::lincomb(terms));
      }
    }
  }
  return out;
}

std::vector<ScalarField> AlgebroidStructure::structure_residual_ii() const {
  std::vector<ScalarField> out;
  for (int a = 0; a < m_; ++a) {
    for (int b = a + 1; b < m_; ++b) {
      for (int g = b + 1; g < m_; ++g) {
        const int cyc[3][3] = {{a, b, g}, {b, g, a}, {g, a, b}};
        for (int nu = 0; nu < m_; ++nu) {
          std::vector<std::pair<double, ScalarField>> terms;
          terms.emplace_back(1.0, zero());
          for (const auto& p : cyc) {
            for (int i = 0; i < n_; ++i)
              terms.emplace_back(1.0, rho_[i][p[0]] * L(nu, p[1], p[2]).dx(i));
            for (int mu = 0; mu < m_; ++mu)
              terms.emplace_back(1.0, L(nu, p[0], mu) * L(mu, p[1], p[2]));
          }
          out.push_back(ScalarField::lincomb(terms));
        }
      }
    }
  }
  return out;
}

double max_fiber_dependence(const std::vector<ScalarField>& comps,
                            const std::vector<SamplePoint>& points) {
  double worst = 0.0;
  std::vector<ScalarField> derivs;
  for (const auto& f : comps) {
    for (int a = 0; a < f.fiber_dim(); ++a) derivs.push_back(f.dy(a));
  }
  for (const auto& pt : points) {
    if (comps.empty()) break;
    EvalContext ctx(comps[0].base_dim(), comps[0].fiber_dim(), pt.x, pt.y);
    for (const auto& d : derivs) {
      const double v = std::abs(d.eval(ctx, 0).value());
      if (v > worst) worst = v;
    }
  }
  return worst;
}

}  // namespace algspray
