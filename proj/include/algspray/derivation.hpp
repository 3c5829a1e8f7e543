#pragma once

#include "algspray/connection.hpp"

namespace algspray {

// (1,k) tensor on the pullback bundle, materialized on the hat frame.
// Storage index order is (output, arg1, ..., argk).  The derivative slot of
// a covariant derivative is always the FIRST argument slot.
class Tensor1k {
public:
  Tensor1k(int m, int k, std::vector<ScalarField> comp)
      : m_(m), k_(k), comp_(std::move(comp)) {}

  static Tensor1k zero(const AlgebroidStructure& A, int k);
  static Tensor1k identity(const AlgebroidStructure& A);  // (1,1)

  int rank_args() const { return k_; }
  int m() const { return m_; }

  const ScalarField& at(int out, std::span<const int> args) const {
    return comp_[flat(out, args)];
  }
  ScalarField& at(int out, std::span<const int> args) { return comp_[flat(out, args)]; }
  const std::vector<ScalarField>& components() const { return comp_; }

  PullbackSection evaluate(std::span<const PullbackSection> args) const;

  friend Tensor1k operator+(const Tensor1k& a, const Tensor1k& b);
  friend Tensor1k operator-(const Tensor1k& a, const Tensor1k& b);
  friend Tensor1k operator*(double s, const Tensor1k& a);
  friend Tensor1k operator*(const ScalarField& f, const Tensor1k& a);

  size_t flat(int out, std::span<const int> args) const;

private:
  int m_, k_;
  std::vector<ScalarField> comp_;
};

// (0,k) tensor (scalar-valued multilinear map) on the pullback bundle.
class Tensor0k {
public:
  Tensor0k(int m, int k, std::vector<ScalarField> comp)
      : m_(m), k_(k), comp_(std::move(comp)) {}

  int rank_args() const { return k_; }
  int m() const { return m_; }

  const ScalarField& at(std::span<const int> args) const { return comp_[flat(args)]; }
  ScalarField& at(std::span<const int> args) { return comp_[flat(args)]; }
  const std::vector<ScalarField>& components() const { return comp_; }

  ScalarField evaluate(std::span<const PullbackSection> args) const;

  size_t flat(std::span<const int> args) const;

private:
  int m_, k_;
  std::vector<ScalarField> comp_;
};

// --- vertical covariant derivative ---

// components of nabla^v F against the hat frame: dF/dy^alpha
std::vector<ScalarField> nabla_v_fn(const ScalarField& F, int m);
// (nabla^v_xi eta)^beta = xi^alpha d eta^beta / dy^alpha
PullbackSection nabla_v_sec(const PullbackSection& xi, const PullbackSection& eta);
// componentwise fiber derivative, new direction slot first
Tensor1k nabla_v_tensor(const Tensor1k& T);
Tensor0k nabla_v_tensor(const Tensor0k& T);

// --- horizontal covariant derivative of the induced connection ---

std::vector<ScalarField> nabla_h_fn(const BerwaldConnection& bc, const ScalarField& F);
PullbackSection nabla_h_sec(const BerwaldConnection& bc, const PullbackSection& xi,
                            const PullbackSection& eta);

// --- contractions and frame tensors ---

// contract the output with the first argument slot
Tensor0k trace(const Tensor1k& T);
// (0,k) tensor times the canonical section: comp * y^out
Tensor1k tensor_delta(const AlgebroidStructure& A, const Tensor0k& T);

// thrown when a section required to be projectable is not
class NonProjectableError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Checks that the horizontal-frame components are fiber-independent at the
// sampled points and throws NonProjectableError naming the worst component
// otherwise.
void require_projectable(const AlgebroidStructure& A, const ProlongSection& s,
                         const std::vector<SamplePoint>& points, double tol);

// Lie derivation along a projectable section of the prolongation.  On
// functions it is the anchor action; on pullback sections the vertical part
// of the bracket against the inclusion; on tensors the Leibniz extension.
class LieDerivation {
public:
  LieDerivation(const AlgebroidStructure& A, ProlongSection s);

  // validates projectability numerically before constructing
  static LieDerivation checked(const AlgebroidStructure& A, const ProlongSection& s,
                               const std::vector<SamplePoint>& points, double tol);

  ScalarField apply(const ScalarField& F) const;
  PullbackSection apply(const PullbackSection& s) const;
  Tensor1k apply(const Tensor1k& T) const;
  Tensor0k apply(const Tensor0k& T) const;

  const ProlongSection& direction() const { return s_; }

private:
  const PullbackSection& basis_image(int a) const;

  AlgebroidStructure A_;
  ProlongSection s_;
  mutable std::vector<PullbackSection> basis_images_;  // lazily built L(e_a-hat)
};

// all index tuples of length k with entries in [0, m)
std::vector<std::vector<int>> index_tuples(int m, int k);

}  // namespace algspray
