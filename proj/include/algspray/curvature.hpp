#pragma once

#include <optional>

#include "algspray/derivation.hpp"

namespace algspray {

// y^a df/dy^a - degree * f; vanishes iff f is fiber-homogeneous of the
// given degree
ScalarField euler_defect(const AlgebroidStructure& A, const ScalarField& f, int degree);

// Two computation paths for the same object disagreed beyond tolerance:
// a transcription bug, not a property failure of the input data.
class InternalConsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct CurvatureOptions {
  // The trace-normalization denominators divide by (rank - 1) etc. by
  // default; this switches them to the base dimension instead.
  bool denominators_use_base_dim = false;
};

// All curvature-type tensors induced by a spray, materialized on the hat
// frame.  The endomorphism K is built twice (bracket definition and closed
// coordinate form) and both are kept; verify_consistency compares them, and
// the closed form feeds the derived tensors.
class CurvatureSuite {
public:
  CurvatureSuite(const AlgebroidStructure& A, const Spray& S, CurvatureOptions opts = {});

  const AlgebroidStructure& algebroid() const { return A_; }
  const BerwaldConnection& connection() const { return bc_; }
  int denominator_dim() const { return den_; }

  const Tensor1k& K() const { return *K_; }
  const Tensor1k& K_bracket() const { return *K_bracket_; }
  const Tensor1k& R_affine() const { return *R_; }
  const Tensor1k& H_affine() const { return *H_; }

  bool projective_defined() const { return den_ > 1; }
  const ScalarField& K_ring() const;
  const Tensor1k& W0() const;      // raw trace-corrected form
  const Tensor1k& W0_alt() const;  // rewritten form, algebraically equal
  const Tensor1k& W() const;
  const Tensor1k& Wstar() const;

  const Tensor1k& Bt() const { return *Bt_; }  // fiber-Hessian of the connection
  const Tensor1k& Dt() const { return *Dt_; }  // its trace-corrected companion

  // max |K - K_bracket| and |W0 - W0_alt| over components and points;
  // throws InternalConsistencyError when either exceeds tol
  void verify_consistency(const std::vector<SamplePoint>& points, double tol) const;

private:
  AlgebroidStructure A_;
  BerwaldConnection bc_;
  int den_;
  std::optional<Tensor1k> K_, K_bracket_, R_, H_, W0_, W0_alt_, W_, Wstar_, Bt_, Dt_;
  std::optional<ScalarField> trK_, K_ring_;
};

}  // namespace algspray
