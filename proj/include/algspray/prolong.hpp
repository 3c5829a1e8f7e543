#pragma once

#include "algspray/algebroid.hpp"

namespace algspray {

// Section of the prolongation bundle in the standard frame: Z are the
// horizontal-frame components, V the vertical-frame components; both may
// depend on base and fiber variables.
struct ProlongSection {
  std::vector<ScalarField> Z, V;
};

ProlongSection basis_X(const AlgebroidStructure& A, int alpha);
ProlongSection basis_V(const AlgebroidStructure& A, int alpha);

ProlongSection p_add(const ProlongSection& a, const ProlongSection& b);
ProlongSection p_sub(const ProlongSection& a, const ProlongSection& b);
ProlongSection p_scale(double s, const ProlongSection& a);
ProlongSection p_scale(const ScalarField& f, const ProlongSection& a);

// anchor of the prolongation applied to a function on the total space
ScalarField rho_L_apply(const AlgebroidStructure& A, const ProlongSection& s,
                        const ScalarField& F);
// the same action materialized as a vector field on the total space
VectorFieldOnE rho_L(const AlgebroidStructure& A, const ProlongSection& s);

// bracket of the prolongation: the unique extension of the frame-bracket
// table that is function-linear-by-Leibniz in both slots
ProlongSection prolong_bracket(const AlgebroidStructure& A, const ProlongSection& a,
                               const ProlongSection& b);

// vertical inclusion and horizontal projection of the short exact sequence
ProlongSection map_i(const AlgebroidStructure& A, const PullbackSection& s);
PullbackSection map_j(const ProlongSection& s);
// vertical endomorphism J = i after j
ProlongSection vertical_endomorphism(const AlgebroidStructure& A, const ProlongSection& s);

ProlongSection vertical_lift_P(const AlgebroidStructure& A, const BaseSection& eta);
ProlongSection complete_lift_P(const AlgebroidStructure& A, const BaseSection& eta);

// Liouville section C = y^alpha V_alpha
ProlongSection liouville(const AlgebroidStructure& A);
// canonical pullback section (the fiber coordinates themselves)
PullbackSection canonical_delta(const AlgebroidStructure& A);

// [[C, s]] - (r - 1) s; vanishes iff s is homogeneous of degree r
ProlongSection homogeneity_defect(const AlgebroidStructure& A, const ProlongSection& s, int r);

}  // namespace algspray
