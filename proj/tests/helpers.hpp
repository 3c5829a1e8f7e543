#pragma once

// Shared fixtures for the unit tests: canned algebroids and sprays built
// straight from the core API (no scenario files), plus evaluation and
// finite-difference helpers.

#include <cmath>
#include <span>
#include <vector>

#include "algspray/algebroid.hpp"
#include "algspray/connection.hpp"
#include "algspray/prolong.hpp"
#include "algspray/sampling.hpp"
#include "algspray/scalar_field.hpp"

namespace algspray::test {

inline ScalarField sf(int n, int m, const std::string& text) {
  return ScalarField::from_expr(n, m, text);
}

// identity anchor on the plane, no structure functions
inline AlgebroidStructure make_flat() {
  std::vector<std::vector<ScalarField>> rho(2, std::vector<ScalarField>(2));
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a < 2; ++a)
      rho[i][a] = ScalarField::constant(2, 2, i == a ? 1.0 : 0.0);
  return AlgebroidStructure(2, 2, rho, {});
}

// so(3) over a point: zero anchor, constant antisymmetric structure functions
inline AlgebroidStructure make_so3() {
  std::vector<std::vector<ScalarField>> rho;  // n = 0
  auto c = [](double v) { return ScalarField::constant(0, 3, v); };
  std::vector<AlgebroidStructure::UpperEntry> L = {
      {2, 0, 1, c(1.0)},   // [e1, e2] = e3
      {0, 1, 2, c(1.0)},   // [e2, e3] = e1
      {1, 0, 2, c(-1.0)},  // [e1, e3] = -e2
  };
  return AlgebroidStructure(0, 3, {}, L);
}

// rank 2 over a line, anchor rho(e1) = d/dx, rho(e2) = x d/dx, [e1,e2] = e1
inline AlgebroidStructure make_anchor12() {
  std::vector<std::vector<ScalarField>> rho(1, std::vector<ScalarField>(2));
  rho[0][0] = ScalarField::constant(1, 2, 1.0);
  rho[0][1] = sf(1, 2, "x1");
  std::vector<AlgebroidStructure::UpperEntry> L = {{0, 0, 1, ScalarField::constant(1, 2, 1.0)}};
  return AlgebroidStructure(1, 2, rho, L);
}

// quadratic spray on so(3) invariant under ad(e1)
inline Spray make_so3_spray() {
  return Spray{{sf(0, 3, "y2^2 + y3^2"), sf(0, 3, "y1*y2"), sf(0, 3, "y1*y3")}};
}

// generic quadratic spray on the rank-2 anchor example
inline Spray make_anchor12_spray() {
  return Spray{{sf(1, 2, "x1*y1*y2 + y2^2"), sf(1, 2, "y1^2 - x1*y2^2")}};
}

inline std::vector<SamplePoint> sample(const AlgebroidStructure& A, int points = 40,
                                       uint64_t seed = 7) {
  SamplingConfig cfg;
  cfg.points = points;
  cfg.seed = seed;
  return sample_points(A.base_dim(), A.rank(), cfg);
}

// max |f(p)| over all fields and points
inline double max_abs(const AlgebroidStructure& A, std::span<const ScalarField> fields,
                      const std::vector<SamplePoint>& pts) {
  double mx = 0.0;
  for (const auto& p : pts) {
    EvalContext ctx(A.base_dim(), A.rank(), p.x, p.y);
    for (const auto& f : fields) mx = std::max(mx, std::abs(f.eval(ctx, 0).value()));
  }
  return mx;
}

inline double max_abs(const AlgebroidStructure& A, const std::vector<ScalarField>& fields,
                      const std::vector<SamplePoint>& pts) {
  return max_abs(A, std::span<const ScalarField>(fields), pts);
}

inline double max_abs(const AlgebroidStructure& A, const ScalarField& f,
                      const std::vector<SamplePoint>& pts) {
  return max_abs(A, std::span<const ScalarField>(&f, 1), pts);
}

inline double max_abs(const AlgebroidStructure& A, const PullbackSection& s,
                      const std::vector<SamplePoint>& pts) {
  return max_abs(A, s.comp, pts);
}

inline double max_abs(const AlgebroidStructure& A, const ProlongSection& s,
                      const std::vector<SamplePoint>& pts) {
  return std::max(max_abs(A, s.Z, pts), max_abs(A, s.V, pts));
}

// Richardson-extrapolated central difference of f along one slot
// (slot < n moves x, otherwise y); error O(h^4)
inline double fd_slot(const ScalarField& f, std::span<const double> x,
                      std::span<const double> y, int slot, double h = 1e-3) {
  auto at = [&](double d) {
    std::vector<double> xx(x.begin(), x.end()), yy(y.begin(), y.end());
    const int n = static_cast<int>(x.size());
    if (slot < n)
      xx[slot] += d;
    else
      yy[slot - n] += d;
    return f.eval_value(xx, yy);
  };
  const double d1 = (at(h) - at(-h)) / (2 * h);
  const double d2 = (at(h / 2) - at(-h / 2)) / h;
  return (4 * d2 - d1) / 3;
}

}  // namespace algspray::test
