#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hilbert {

struct SuiteResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationOptions {
  std::uint64_t seed = 1;
  /// Compares the simplex closed form (scale 1) against chord distances at
  /// scale 1/2; a negative control that must fail.
  bool inject_scale_mismatch = false;
};

/// Built-in oracle suites: disk metric, simplex closed form against chords,
/// metric axioms, Poincare horofunctions, Birkhoff contraction, escape
/// certificates and the benchmark property sweep.
std::vector<SuiteResult> run_validation(const ValidationOptions& options = {});

/// One line per suite, fixed formatting.
std::string format_results(const std::vector<SuiteResult>& results);

}  // namespace hilbert
