#pragma once

#include <optional>
#include <string_view>

#include "algspray/curvature.hpp"

namespace algspray {

// Residual fields certifying [[S, eta^C]] = 0.  The horizontal part of the
// bracket vanishes identically for any section, so bracket_Z is a pure
// transcription check; bracket_V and direct_V are two routes to the same
// vertical part and both must vanish for eta to be a symmetry.
struct SymmetryResiduals {
  std::vector<ScalarField> bracket_Z;
  std::vector<ScalarField> bracket_V;
  std::vector<ScalarField> direct_V;
};

SymmetryResiduals lie_symmetry_residuals(const AlgebroidStructure& A, const Spray& S,
                                         const BaseSection& eta);

// A(eta, xi) = [eta, xi]^h - [[eta^C, xi^h]].  Vertical for any pair; the
// horizontal components are kept as a transcription check.
struct ATensorValue {
  std::vector<ScalarField> V;
  std::vector<ScalarField> Z_defect;
};

ATensorValue a_tensor(const BerwaldConnection& bc, const BaseSection& eta,
                      const BaseSection& xi);

// Closed coordinate form of the same map.  The two routes differ by an
// overall sign: a_tensor_direct = -(a_tensor vertical part).
std::vector<ScalarField> a_tensor_direct(const BerwaldConnection& bc, const BaseSection& eta,
                                         const BaseSection& xi);

// Froelicher-Nijenhuis bracket of an endomorphism with a section, evaluated
// on an argument section: [L, dir](arg) = [[L arg, dir]] - L [[arg, dir]].
ProlongSection fn_bracket_J(const AlgebroidStructure& A, const ProlongSection& dir,
                            const ProlongSection& arg);
ProlongSection fn_bracket_v(const BerwaldConnection& bc, const BaseSection& eta,
                            const ProlongSection& arg);

// Keys for the derived curvature tensors a collineation can be checked on.
enum class TensorKey { K, R, H, W0, W, Wstar, B, D };

std::optional<TensorKey> parse_tensor_key(std::string_view name);
const char* tensor_key_name(TensorKey key);

// Components of the Lie derivative of the keyed tensor along eta^C.  Throws
// std::domain_error for the projective family when the trace denominators
// degenerate (rank 1).
std::vector<ScalarField> collineation_residual(const CurvatureSuite& cs,
                                               const BaseSection& eta, TensorKey key);

}  // namespace algspray
