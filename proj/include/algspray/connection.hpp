#pragma once

#include "algspray/prolong.hpp"

namespace algspray {

// Second-order section: the full section is y^alpha X_alpha + S^alpha V_alpha.
// Genuine sprays have fiber-quadratic coefficients; non-homogeneous ones are
// accepted for computation, with the defect observable via
// spray_homogeneity_defect.
struct Spray {
  std::vector<ScalarField> coeff;  // the vertical-frame components S^alpha
};

ProlongSection spray_section(const AlgebroidStructure& A, const Spray& S);

// y^beta dS^alpha/dy^beta - 2 S^alpha, componentwise
std::vector<ScalarField> spray_homogeneity_defect(const AlgebroidStructure& A, const Spray& S);

// Connection induced by a spray: coefficients
//   2 B^gamma_alpha = dS^gamma/dy^alpha - y^beta L^gamma_{alpha beta}.
class BerwaldConnection {
public:
  BerwaldConnection(const AlgebroidStructure& A, const Spray& S);

  const AlgebroidStructure& algebroid() const { return A_; }
  const Spray& spray() const { return S_; }
  const ScalarField& coeff(int gamma, int alpha) const {
    return B_[static_cast<size_t>(gamma) * m_ + alpha];
  }

  // adapted horizontal frame section delta_alpha = X_alpha + B^beta_alpha V_beta
  ProlongSection adapted_delta(int alpha) const;

  // horizontal lift of a pullback section
  ProlongSection horizontal(const PullbackSection& s) const;
  ProlongSection horizontal(const BaseSection& s) const;

  // vertical component map: V^beta - Z^alpha B^beta_alpha against the hat frame
  PullbackSection vertical_project(const ProlongSection& s) const;

  ProlongSection h(const ProlongSection& s) const;  // horizontal projector
  ProlongSection v(const ProlongSection& s) const;  // vertical projector

  // curvature R[gamma][alpha][beta] of the horizontal distribution,
  // antisymmetric in (alpha, beta)
  const std::vector<ScalarField>& curvature() const;
  const ScalarField& curvature(int gamma, int alpha, int beta) const;

private:
  AlgebroidStructure A_;
  Spray S_;
  int m_;
  std::vector<ScalarField> B_;
  mutable std::vector<ScalarField> R_;  // built on first use
};

}  // namespace algspray
