#include "algspray/sampling.hpp"

namespace algspray {

std::vector<SamplePoint> sample_points(int n, int m, const SamplingConfig& cfg) {
  SplitMix64 rng(cfg.seed);
  std::vector<SamplePoint> points;
  points.reserve(cfg.points);
  for (int p = 0; p < cfg.points; ++p) {
    SamplePoint pt;
    pt.x.resize(n);
    pt.y.resize(m);
    for (int i = 0; i < n; ++i) pt.x[i] = (2.0 * rng.next_unit() - 1.0) * cfg.x_range;
    for (int a = 0; a < m; ++a) {
      const double mag = cfg.y_abs_min + (cfg.y_abs_max - cfg.y_abs_min) * rng.next_unit();
      const double sign = (rng.next_unit() < 0.5) ? -1.0 : 1.0;
      pt.y[a] = sign * mag;
    }
    points.push_back(std::move(pt));
  }
  return points;
}

}  // namespace algspray
