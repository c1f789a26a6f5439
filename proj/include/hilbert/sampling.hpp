#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hilbert/geometry.hpp"

namespace hilbert {

/// Seeded generator with portable uniform/normal draws, so a seed gives the
/// same stream with every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in the open interval (0, 1).
  double open_uniform() {
    double u = 0.0;
    while (u == 0.0) u = uniform();
    return u;
  }
  double normal();
  int index(int n) { return static_cast<int>(uniform() * n) % n; }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Random interior point. Exact uniform sampling for simplices (flat
/// Dirichlet) and ellipsoids; hit-and-run from the witness otherwise.
Point sample_interior(const ConvexBody& body, Rng& rng);

std::vector<Point> sample_interior(const ConvexBody& body, int count, std::uint64_t seed);

/// Random direction in the linear span of the body's affine hull.
Point random_direction(const ConvexBody& body, Rng& rng);

}  // namespace hilbert
