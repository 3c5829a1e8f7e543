#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace algspray {

// splitmix64: tiny, well-known, and identical on every platform, which keeps
// sampled points (and therefore reports) byte-for-byte reproducible.
class SplitMix64 {
public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  uint64_t state_;
};

struct SamplePoint {
  std::vector<double> x;
  std::vector<double> y;
};

struct SamplingConfig {
  int points = 100;
  uint64_t seed = 42;
  double x_range = 1.0;    // x components uniform in [-x_range, x_range]
  double y_abs_min = 0.5;  // |y| components uniform in [y_abs_min, y_abs_max],
  double y_abs_max = 2.0;  // random sign; keeps fibers away from the zero section
};

// Draw order is fixed: per point, x1..xn, then per fiber slot a magnitude
// draw followed by a sign draw.
std::vector<SamplePoint> sample_points(int n, int m, const SamplingConfig& cfg);

}  // namespace algspray
