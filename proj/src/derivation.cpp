#include "algspray/derivation.hpp"

#include <algorithm>
#include <cmath>

namespace algspray {

std::vector<std::vector<int>> index_tuples(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(k, 0);
  while (true) {
    out.push_back(current);
    int pos = k - 1;
    while (pos >= 0 && current[pos] == m - 1) {
      current[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++current[pos];
  }
  return out;
}

size_t Tensor1k::flat(int out, std::span<const int> args) const {
  size_t idx = static_cast<size_t>(out);
  for (int a : args) idx = idx * m_ + a;
  return idx;
}

size_t Tensor0k::flat(std::span<const int> args) const {
  size_t idx = 0;
  for (int a : args) idx = idx * m_ + a;
  return idx;
}

Tensor1k Tensor1k::zero(const AlgebroidStructure& A, int k) {
  size_t count = A.rank();
  for (int i = 0; i < k; ++i) count *= A.rank();
  return Tensor1k(A.rank(), k, std::vector<ScalarField>(count, A.zero()));
}

Tensor1k Tensor1k::identity(const AlgebroidStructure& A) {
  const int m = A.rank();
  std::vector<ScalarField> comp;
  comp.reserve(static_cast<size_t>(m) * m);
  for (int out = 0; out < m; ++out)
    for (int a = 0; a < m; ++a)
      comp.push_back(ScalarField::constant(A.base_dim(), m, out == a ? 1.0 : 0.0));
  return Tensor1k(m, 1, std::move(comp));
}

PullbackSection Tensor1k::evaluate(std::span<const PullbackSection> args) const {
  if (static_cast<int>(args.size()) != k_)
    throw std::invalid_argument("Tensor1k::evaluate: argument count mismatch");
  PullbackSection out;
  const auto tuples = index_tuples(m_, k_);
  for (int o = 0; o < m_; ++o) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(0.0, comp_[0]);
    for (const auto& t : tuples) {
      ScalarField prod = comp_[flat(o, t)];
      for (int s = 0; s < k_; ++s) prod = prod * args[s].comp[t[s]];
      terms.emplace_back(1.0, prod);
    }
    out.comp.push_back(ScalarField::lincomb(terms));
  }
  return out;
}

ScalarField Tensor0k::evaluate(std::span<const PullbackSection> args) const {
  if (static_cast<int>(args.size()) != k_)
    throw std::invalid_argument("Tensor0k::evaluate: argument count mismatch");
  std::vector<std::pair<double, ScalarField>> terms;
  terms.emplace_back(0.0, comp_[0]);
  for (const auto& t : index_tuples(m_, k_)) {
    ScalarField prod = comp_[flat(t)];
    for (int s = 0; s < k_; ++s) prod = prod * args[s].comp[t[s]];
    terms.emplace_back(1.0, prod);
  }
  return ScalarField::lincomb(terms);
}

Tensor1k operator+(const Tensor1k& a, const Tensor1k& b) {
  std::vector<ScalarField> comp;
  comp.reserve(a.comp_.size());
  for (size_t i = 0; i < a.comp_.size(); ++i) comp.push_back(a.comp_[i] + b.comp_[i]);
  return Tensor1k(a.m_, a.k_, std::move(comp));
}

Tensor1k operator-(const Tensor1k& a, const Tensor1k& b) {
  std::vector<ScalarField> comp;
  comp.reserve(a.comp_.size());
  for (size_t i = 0; i < a.comp_.size(); ++i) comp.push_back(a.comp_[i] - b.comp_[i]);
  return Tensor1k(a.m_, a.k_, std::move(comp));
}

Tensor1k operator*(double s, const Tensor1k& a) {
  std::vector<ScalarField> comp;
  comp.reserve(a.comp_.size());
  for (const auto& c : a.comp_) comp.push_back(s * c);
  return Tensor1k(a.m_, a.k_, std::move(comp));
}

Tensor1k operator*(const ScalarField& f, const Tensor1k& a) {
  std::vector<ScalarField> comp;
  comp.reserve(a.comp_.size());
  for (const auto& c : a.comp_) comp.push_back(f * c);
  return Tensor1k(a.m_, a.k_, std::move(comp));
}

std::vector<ScalarField> nabla_v_fn(const ScalarField& F, int m) {
  std::vector<ScalarField> out;
  out.reserve(m);
  for (int a = 0; a < m; ++a) out.push_back(F.dy(a));
  return out;
}

PullbackSection nabla_v_sec(const PullbackSection& xi, const PullbackSection& eta) {
  const int m = static_cast<int>(eta.comp.size());
  PullbackSection out;
  for (int b = 0; b < m; ++b) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(0.0, eta.comp[b]);
    for (int a = 0; a < m; ++a) terms.emplace_back(1.0, xi.comp[a] * eta.comp[b].dy(a));
    out.comp.push_back(ScalarField::lincomb(terms));
  }
  return out;
}

Tensor1k nabla_v_tensor(const Tensor1k& T) {
  const int m = T.m(), k = T.rank_args();
  std::vector<ScalarField> comp;
  const auto tuples = index_tuples(m, k);
  comp.reserve(static_cast<size_t>(m) * m * tuples.size());
  for (int out = 0; out < m; ++out) {
    for (int d = 0; d < m; ++d) {
      for (const auto& t : tuples) comp.push_back(T.at(out, t).dy(d));
    }
  }
  return Tensor1k(m, k + 1, std::move(comp));
}

Tensor0k nabla_v_tensor(const Tensor0k& T) {
  const int m = T.m(), k = T.rank_args();
  std::vector<ScalarField> comp;
  const auto tuples = index_tuples(m, k);
  comp.reserve(static_cast<size_t>(m) * tuples.size());
  for (int d = 0; d < m; ++d) {
    for (const auto& t : tuples) comp.push_back(T.at(t).dy(d));
  }
  return Tensor0k(m, k + 1, std::move(comp));
}

std::vector<ScalarField> nabla_h_fn(const BerwaldConnection& bc, const ScalarField& F) {
  const AlgebroidStructure& A = bc.algebroid();
  std::vector<ScalarField> out;
  for (int a = 0; a < A.rank(); ++a) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(1.0, A.zero());
    for (int i = 0; i < A.base_dim(); ++i) terms.emplace_back(1.0, A.rho(i, a) * F.dx(i));
    for (int g = 0; g < A.rank(); ++g) terms.emplace_back(1.0, bc.coeff(g, a) * F.dy(g));
    out.push_back(ScalarField::lincomb(terms));
  }
  return out;
}

PullbackSection nabla_h_sec(const BerwaldConnection& bc, const PullbackSection& xi,
                            const PullbackSection& eta) {
  const AlgebroidStructure& A = bc.algebroid();
  const int m = A.rank();
  PullbackSection out;
  for (int g = 0; g < m; ++g) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(1.0, A.zero());
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b)
        terms.emplace_back(-1.0, xi.comp[a] * eta.comp[b] * bc.coeff(g, a).dy(b));
      for (int i = 0; i < A.base_dim(); ++i)
        terms.emplace_back(1.0, xi.comp[a] * A.rho(i, a) * eta.comp[g].dx(i));
      for (int b = 0; b < m; ++b)
        terms.emplace_back(1.0, xi.comp[a] * bc.coeff(b, a) * eta.comp[g].dy(b));
    }
    out.comp.push_back(ScalarField::lincomb(terms));
  }
  return out;
}

Tensor0k trace(const Tensor1k& T) {
  const int m = T.m(), k = T.rank_args();
  if (k < 1) throw std::invalid_argument("trace: tensor has no argument slot");
  std::vector<ScalarField> comp;
  const auto rest = index_tuples(m, k - 1);
  comp.reserve(rest.size());
  for (const auto& t : rest) {
    std::vector<std::pair<double, ScalarField>> terms;
    std::vector<int> full(k);
    std::copy(t.begin(), t.end(), full.begin() + 1);
    terms.emplace_back(0.0, T.components()[0]);
    for (int a = 0; a < m; ++a) {
      full[0] = a;
      terms.emplace_back(1.0, T.at(a, full));
    }
    comp.push_back(ScalarField::lincomb(terms));
  }
  return Tensor0k(m, k - 1, std::move(comp));
}

Tensor1k tensor_delta(const AlgebroidStructure& A, const Tensor0k& T) {
  const int m = T.m(), k = T.rank_args();
  std::vector<ScalarField> comp;
  const auto tuples = index_tuples(m, k);
  comp.reserve(static_cast<size_t>(m) * tuples.size());
  for (int out = 0; out < m; ++out) {
    for (const auto& t : tuples) comp.push_back(T.at(t) * A.y(out));
  }
  return Tensor1k(m, k, std::move(comp));
}

void require_projectable(const AlgebroidStructure& A, const ProlongSection& s,
                         const std::vector<SamplePoint>& points, double tol) {
  for (int g = 0; g < A.rank(); ++g) {
    for (int b = 0; b < A.rank(); ++b) {
      const ScalarField d = s.Z[g].dy(b);
      for (size_t p = 0; p < points.size(); ++p) {
        EvalContext ctx(A.base_dim(), A.rank(), points[p].x, points[p].y);
        const double v = std::abs(d.eval(ctx, 0).value());
        if (v > tol) {
          throw NonProjectableError(
              "section is not projectable: horizontal component " + std::to_string(g + 1) +
              " depends on fiber variable y" + std::to_string(b + 1) + " (derivative " +
              std::to_string(v) + " at sample point " + std::to_string(p) + ")");
        }
      }
    }
  }
}

LieDerivation::LieDerivation(const AlgebroidStructure& A, ProlongSection s)
    : A_(A), s_(std::move(s)) {}

LieDerivation LieDerivation::checked(const AlgebroidStructure& A, const ProlongSection& s,
                                     const std::vector<SamplePoint>& points, double tol) {
  require_projectable(A, s, points, tol);
  return LieDerivation(A, s);
}

ScalarField LieDerivation::apply(const ScalarField& F) const {
  return rho_L_apply(A_, s_, F);
}

PullbackSection LieDerivation::apply(const PullbackSection& p) const {
  return PullbackSection{prolong_bracket(A_, s_, map_i(A_, p)).V};
}

const PullbackSection& LieDerivation::basis_image(int a) const {
  if (basis_images_.empty()) {
    basis_images_.reserve(A_.rank());
    for (int b = 0; b < A_.rank(); ++b)
      basis_images_.push_back(apply(A_.hat_lift(A_.basis_section(b))));
  }
  return basis_images_[a];
}

Tensor1k LieDerivation::apply(const Tensor1k& T) const {
  const int m = T.m(), k = T.rank_args();
  const auto tuples = index_tuples(m, k);
  const auto flat = [m](int out, const std::vector<int>& args) {
    size_t idx = static_cast<size_t>(out);
    for (int a : args) idx = idx * m + a;
    return idx;
  };
  std::vector<ScalarField> comp(static_cast<size_t>(m) * tuples.size(), A_.zero());
  for (const auto& t : tuples) {
    // L(T(e_a1, ..., e_ak)) as a column of m output components
    PullbackSection col;
    for (int o = 0; o < m; ++o) col.comp.push_back(T.at(o, t));
    PullbackSection led = apply(col);
    for (int o = 0; o < m; ++o) {
      std::vector<std::pair<double, ScalarField>> terms;
      terms.emplace_back(1.0, led.comp[o]);
      std::vector<int> mod(t);
      for (int slot = 0; slot < k; ++slot) {
        const PullbackSection& img = basis_image(t[slot]);
        for (int b = 0; b < m; ++b) {
          mod[slot] = b;
          terms.emplace_back(-1.0, img.comp[b] * T.at(o, mod));
        }
        mod[slot] = t[slot];
      }
      comp[flat(o, t)] = ScalarField::lincomb(terms);
    }
  }
  return Tensor1k(m, k, std::move(comp));
}

Tensor0k LieDerivation::apply(const Tensor0k& T) const {
  const int m = T.m(), k = T.rank_args();
  const auto tuples = index_tuples(m, k);
  const auto flat = [m](const std::vector<int>& args) {
    size_t idx = 0;
    for (int a : args) idx = idx * m + a;
    return idx;
  };
  std::vector<ScalarField> comp(tuples.size(), A_.zero());
  for (const auto& t : tuples) {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(1.0, apply(T.at(t)));
    std::vector<int> mod(t);
    for (int slot = 0; slot < k; ++slot) {
      const PullbackSection& img = basis_image(t[slot]);
      for (int b = 0; b < m; ++b) {
        mod[slot] = b;
        terms.emplace_back(-1.0, img.comp[b] * T.at(mod));
      }
      mod[slot] = t[slot];
    }
    comp[flat(t)] = ScalarField::lincomb(terms);
  }
  return Tensor0k(m, k, std::move(comp));
}

}  // namespace algspray
