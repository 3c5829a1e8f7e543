#include "algspray/curvature.hpp"

#include <cmath>
#include <string>

namespace algspray {

namespace {

// componentwise fiber derivative with the new slot appended LAST
Tensor1k fiber_derivative_last(const Tensor1k& T) {
  const int m = T.m();
  const int k = T.rank_args();
  std::vector<ScalarField> comp;
  comp.reserve(T.components().size() * m);
  for (int out = 0; out < m; ++out) {
    for (const auto& args : index_tuples(m, k)) {
      const ScalarField& f = T.at(out, args);
      for (int c = 0; c < m; ++c) comp.push_back(f.dy(c));
    }
  }
  return Tensor1k(m, k + 1, std::move(comp));
}

}  // namespace

ScalarField euler_defect(const AlgebroidStructure& A, const ScalarField& f, int degree) {
  std::vector<std::pair<double, ScalarField>> terms;
  terms.emplace_back(-static_cast<double>(degree), f);
  for (int a = 0; a < A.rank(); ++a) terms.emplace_back(1.0, A.y(a) * f.dy(a));
  return ScalarField::lincomb(terms);
}

CurvatureSuite::CurvatureSuite(const AlgebroidStructure& A, const Spray& S,
                               CurvatureOptions opts)
    : A_(A), bc_(A, S),
      den_(opts.denominators_use_base_dim ? A.base_dim() : A.rank()) {
  const int m = A_.rank();

  // endomorphism, closed coordinate form
  {
    std::vector<ScalarField> comp;
    comp.reserve(static_cast<size_t>(m) * m);
    for (int out = 0; out < m; ++out) {
      for (int c = 0; c < m; ++c) {
        std::vector<std::pair<double, ScalarField>> terms;
        terms.emplace_back(0.0, A_.zero());
        for (int b = 0; b < m; ++b) {
          for (int th = 0; th < m; ++th)
            terms.emplace_back(-1.0, A_.y(b) * A_.L(th, b, c) * bc_.coeff(out, th));
          terms.emplace_back(1.0, bc_.coeff(b, c) * bc_.coeff(out, b));
          for (int i = 0; i < A_.base_dim(); ++i)
            terms.emplace_back(1.0, A_.y(b) * A_.rho(i, b) * bc_.coeff(out, c).dx(i));
          terms.emplace_back(1.0, S.coeff[b] * bc_.coeff(out, c).dy(b));
          terms.emplace_back(-1.0, bc_.coeff(b, c) * S.coeff[out].dy(b));
        }
        for (int i = 0; i < A_.base_dim(); ++i)
          terms.emplace_back(-1.0, A_.rho(i, c) * S.coeff[out].dx(i));
        comp.push_back(ScalarField::lincomb(terms));
      }
    }
    K_.emplace(m, 1, std::move(comp));
  }

  // endomorphism, bracket definition
  {
    const ProlongSection Ssec = spray_section(A_, S);
    std::vector<ScalarField> comp(static_cast<size_t>(m) * m, A_.zero());
    for (int c = 0; c < m; ++c) {
      PullbackSection col = bc_.vertical_project(prolong_bracket(A_, Ssec, bc_.adapted_delta(c)));
      for (int out = 0; out < m; ++out) comp[static_cast<size_t>(out) * m + c] = col.comp[out];
    }
    K_bracket_.emplace(m, 1, std::move(comp));
  }

  // affine deviation tensor and its fiber derivative
  {
    std::vector<ScalarField> comp;
    comp.reserve(static_cast<size_t>(m) * m * m);
    for (int out = 0; out < m; ++out) {
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          const int ka[2] = {out, a}, kb[2] = {out, b};
          std::pair<double, ScalarField> terms[2] = {
              {1.0 / 3.0, K_->at(ka[0], std::span<const int>(&ka[1], 1)).dy(b)},
              {-1.0 / 3.0, K_->at(kb[0], std::span<const int>(&kb[1], 1)).dy(a)},
          };
          comp.push_back(ScalarField::lincomb(terms));
        }
      }
    }
    R_.emplace(m, 2, std::move(comp));
    H_.emplace(fiber_derivative_last(*R_));
  }

  // fiber-Hessian family
  {
    std::vector<ScalarField> comp;
    comp.reserve(static_cast<size_t>(m) * m * m * m);
    for (int out = 0; out < m; ++out)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          for (int c = 0; c < m; ++c)
            comp.push_back(-(bc_.coeff(out, b).dy(a).dy(c)));
    Bt_.emplace(m, 3, std::move(comp));

    const Tensor0k trB = trace(*Bt_);
    const Tensor0k dtrB = nabla_v_tensor(trB);
    std::vector<ScalarField> dcomp;
    dcomp.reserve(Bt_->components().size());
    const double f = 1.0 / (den_ + 1);
    for (int out = 0; out < m; ++out) {
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          for (int c = 0; c < m; ++c) {
            const int iabc[3] = {a, b, c};
            std::vector<std::pair<double, ScalarField>> terms;
            terms.emplace_back(1.0, Bt_->at(out, iabc));
            const int ab[2] = {a, b}, bcp[2] = {b, c}, ca[2] = {c, a};
            if (out == c) terms.emplace_back(-f, trB.at(ab));
            if (out == a) terms.emplace_back(-f, trB.at(bcp));
            if (out == b) terms.emplace_back(-f, trB.at(ca));
            terms.emplace_back(-f, dtrB.at(iabc) * A_.y(out));
            dcomp.push_back(ScalarField::lincomb(terms));
          }
        }
      }
    }
    Dt_.emplace(m, 3, std::move(dcomp));
  }

  // trace of K and the projective family
  {
    std::vector<std::pair<double, ScalarField>> terms;
    terms.emplace_back(0.0, A_.zero());
    for (int a = 0; a < m; ++a) {
      const int ia[1] = {a};
      terms.emplace_back(1.0, K_->at(a, ia));
    }
    trK_.emplace(ScalarField::lincomb(terms));
  }
  if (den_ > 1) {
    K_ring_.emplace(1.0 / (den_ - 1) * (*trK_));

    // trace of R_affine: one-form
    std::vector<ScalarField> trR(m, A_.zero());
    for (int b = 0; b < m; ++b) {
      std::vector<std::pair<double, ScalarField>> terms;
      terms.emplace_back(0.0, A_.zero());
      for (int a = 0; a < m; ++a) {
        const int iab[2] = {a, b};
        terms.emplace_back(1.0, R_->at(a, iab));
      }
      trR[b] = ScalarField::lincomb(terms);
    }

    // trace of nabla^v K: one-form c -> sum_a dK^a_c/dy^a
    std::vector<ScalarField> trdK(m, A_.zero());
    for (int c = 0; c < m; ++c) {
      std::vector<std::pair<double, ScalarField>> terms;
      terms.emplace_back(0.0, A_.zero());
      for (int a = 0; a < m; ++a) {
        const int ic[1] = {c};
        terms.emplace_back(1.0, K_->at(a, ic).dy(a));
      }
      trdK[c] = ScalarField::lincomb(terms);
    }

    const double dm = den_;
    std::vector<ScalarField> w0, w0alt;
    w0.reserve(static_cast<size_t>(m) * m);
    w0alt.reserve(static_cast<size_t>(m) * m);
    for (int out = 0; out < m; ++out) {
      for (int a = 0; a < m; ++a) {
        const int ia[1] = {a};
        std::vector<std::pair<double, ScalarField>> terms;
        terms.emplace_back(1.0, K_->at(out, ia));
        if (out == a) terms.emplace_back(-1.0 / (dm - 1.0), *trK_);
        terms.emplace_back(3.0 / (dm + 1.0), trR[a] * A_.y(out));
        terms.emplace_back((2.0 - dm) / (dm * dm - 1.0), trK_->dy(a) * A_.y(out));
        w0.push_back(ScalarField::lincomb(terms));

        std::vector<std::pair<double, ScalarField>> alt;
        alt.emplace_back(1.0, K_->at(out, ia));
        if (out == a) alt.emplace_back(-1.0, *K_ring_);
        alt.emplace_back(1.0 / (dm + 1.0), (K_ring_->dy(a) - trdK[a]) * A_.y(out));
        w0alt.push_back(ScalarField::lincomb(alt));
      }
    }
    W0_.emplace(m, 1, std::move(w0));
    W0_alt_.emplace(m, 1, std::move(w0alt));

    std::vector<ScalarField> w;
    w.reserve(static_cast<size_t>(m) * m * m);
    for (int out = 0; out < m; ++out) {
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          const int ia[1] = {a}, ib[1] = {b};
          std::pair<double, ScalarField> terms[2] = {
              {1.0 / 3.0, W0_->at(out, ia).dy(b)},
              {-1.0 / 3.0, W0_->at(out, ib).dy(a)},
          };
          w.push_back(ScalarField::lincomb(terms));
        }
      }
    }
    W_.emplace(m, 2, std::move(w));
    Wstar_.emplace(fiber_derivative_last(*W_));
  }
}

const ScalarField& CurvatureSuite::K_ring() const {
  if (!K_ring_) throw std::domain_error("projective family undefined: denominator dimension is 1");
  return *K_ring_;
}
const Tensor1k& CurvatureSuite::W0() const {
  if (!W0_) throw std::domain_error("projective family undefined: denominator dimension is 1");
  return *W0_;
}
const Tensor1k& CurvatureSuite::W0_alt() const {
  if (!W0_alt_) throw std::domain_error("projective family undefined: denominator dimension is 1");
  return *W0_alt_;
}
const Tensor1k& CurvatureSuite::W() const {
  if (!W_) throw std::domain_error("projective family undefined: denominator dimension is 1");
  return *W_;
}
const Tensor1k& CurvatureSuite::Wstar() const {
  if (!Wstar_) throw std::domain_error("projective family undefined: denominator dimension is 1");
  return *Wstar_;
}

void CurvatureSuite::verify_consistency(const std::vector<SamplePoint>& points,
                                        double tol) const {
  const Tensor1k dK = *K_ - *K_bracket_;
  double worst = 0.0;
  const char* what = "";
  for (const auto& pt : points) {
    EvalContext ctx(A_.base_dim(), A_.rank(), pt.x, pt.y);
    for (const auto& c : dK.components()) {
      const double v = std::abs(c.eval(ctx, 0).value());
      if (v > worst) { worst = v; what = "endomorphism paths"; }
    }
    if (W0_) {
      const Tensor1k dW = *W0_ - *W0_alt_;
      for (const auto& c : dW.components()) {
        const double v = std::abs(c.eval(ctx, 0).value());
        if (v > worst) { worst = v; what = "trace-corrected endomorphism paths"; }
      }
    }
  }
  if (worst > tol) {
    throw InternalConsistencyError(std::string("dual-path disagreement (") + what + "): " +
                                   std::to_string(worst));
  }
}

}  // namespace algspray
