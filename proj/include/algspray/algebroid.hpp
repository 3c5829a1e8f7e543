#pragma once

#include <string>
#include <vector>

#include "algspray/sampling.hpp"
#include "algspray/scalar_field.hpp"

namespace algspray {

// Section of the vector bundle over the base: components are functions of
// the base variables only.
struct BaseSection {
  std::vector<ScalarField> comp;
};

// Section of the pullback bundle over the total space: components may depend
// on base and fiber variables.
struct PullbackSection {
  std::vector<ScalarField> comp;
};

// Vector field on the total space, components ordered (x1..xn, y1..ym).
struct VectorFieldOnE {
  std::vector<ScalarField> comp;
};

ScalarField vf_apply(const VectorFieldOnE& X, const ScalarField& f);
VectorFieldOnE vf_commutator(const VectorFieldOnE& X, const VectorFieldOnE& Y);

// Anchored bracket structure in local data: an anchor matrix rho[i][alpha]
// and antisymmetric structure functions L[gamma][alpha][beta], all functions
// of the base variables.  Construction takes only the entries with
// alpha < beta and fills the rest by antisymmetry.
class AlgebroidStructure {
public:
  struct UpperEntry {
    int gamma, alpha, beta;  // zero-based, alpha < beta
    ScalarField value;
  };

  AlgebroidStructure(int n, int m, std::vector<std::vector<ScalarField>> rho,
                     const std::vector<UpperEntry>& entries);

  int base_dim() const { return n_; }
  int rank() const { return m_; }

  const ScalarField& rho(int i, int alpha) const { return rho_[i][alpha]; }
  const ScalarField& L(int gamma, int alpha, int beta) const {
    return L_[(static_cast<size_t>(gamma) * m_ + alpha) * m_ + beta];
  }

  ScalarField zero() const { return ScalarField::constant(n_, m_, 0.0); }
  ScalarField one() const { return ScalarField::constant(n_, m_, 1.0); }
  ScalarField y(int a) const { return ScalarField::coord_y(n_, m_, a); }
  ScalarField x(int i) const { return ScalarField::coord_x(n_, m_, i); }

  BaseSection basis_section(int alpha) const;

  // rho(xi) acting on a function of the base variables
  ScalarField anchor_apply(const BaseSection& xi, const ScalarField& f) const;

  // [xi, eta]^gamma = xi^a rho^i_a d_eta^gamma/dx^i - eta^b rho^i_b dxi^gamma/dx^i
  //                 + xi^a eta^b L^gamma_{ab}
  BaseSection bracket(const BaseSection& xi, const BaseSection& eta) const;

  // xi^alpha_{|beta} = rho^j_beta dxi^alpha/dx^j - xi^gamma L^alpha_{gamma beta};
  // these are the fiber-linear coefficients of the complete lift
  ScalarField lift_coeff(const BaseSection& xi, int alpha, int beta) const;

  // f^c = y^alpha (rho^i_alpha df/dx^i)
  ScalarField complete_lift_fn(const ScalarField& f) const;

  VectorFieldOnE vertical_lift_vf(const BaseSection& xi) const;
  VectorFieldOnE complete_lift_vf(const BaseSection& xi) const;

  PullbackSection hat_lift(const BaseSection& xi) const;

  // residual fields of the two compatibility identities the structure data
  // must satisfy; both are empty collections when trivially satisfied
  std::vector<ScalarField> structure_residual_i() const;
  std::vector<ScalarField> structure_residual_ii() const;

private:
  int n_, m_;
  std::vector<std::vector<ScalarField>> rho_;  // rho_[i][alpha]
  std::vector<ScalarField> L_;                 // full antisymmetrized table
};

// Largest |d comp / dy| over all components and fiber slots at the sampled
// points; zero means the section data is honestly base-only there.
double max_fiber_dependence(const std::vector<ScalarField>& comps,
                            const std::vector<SamplePoint>& points);

}  // namespace algspray
