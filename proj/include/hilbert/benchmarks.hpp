#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hilbert/geometry.hpp"
#include "hilbert/maps.hpp"
#include "hilbert/metric.hpp"

namespace hilbert {

struct Benchmark {
  std::string id;
  ConvexBody body;
  SemicontractionSpec map;
  Point start;
  MetricConvention conv;
};

/// Ten seeded nonexpansive maps of the square, triangle, pentagon and disk:
/// contractions toward interior points, boundary points and vertices,
/// hyperbolic translations and an elliptic rotation.
std::vector<Benchmark> planar_benchmarks(std::uint64_t seed = 2024);

/// Projective-linear and topical maps of the simplices of dimensions 1 and 2.
std::vector<Benchmark> cone_benchmarks(std::uint64_t seed = 2024);

/// cone_benchmarks followed by planar_benchmarks.
std::vector<Benchmark> benchmark_suite(std::uint64_t seed = 2024);

}  // namespace hilbert
