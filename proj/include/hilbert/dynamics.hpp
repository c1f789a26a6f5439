#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hilbert/geometry.hpp"
#include "hilbert/horo.hpp"
#include "hilbert/maps.hpp"
#include "hilbert/metric.hpp"

namespace hilbert {

enum class StopReason { MaxIter, BoundaryProximity, Converged };

std::string_view to_string(StopReason reason) noexcept;

/// x, f(x), ..., f^n(x) with cached step lengths and distances from x.
struct Orbit {
  std::vector<Point> points;
  /// displacements[k] = d(f^k x, f^{k+1} x).
  std::vector<double> displacements;
  /// from_start[k] = d(x, f^k x); from_start[0] = 0.
  std::vector<double> from_start;
  std::string map_id;
  StopReason stop_reason = StopReason::MaxIter;
  MetricConvention conv;

  /// Number of iterates after the start point.
  int length() const noexcept { return static_cast<int>(points.size()) - 1; }
};

inline constexpr double kConvergedDisplacement = 1e-14;

/// Interior slack below which an orbit stops with BoundaryProximity. 1e-12 on
/// the simplex, whose coordinates are the slacks themselves; 1e-8 on bodies
/// whose slacks come from cancellation b - a.x, where the map's rounding
/// error relative to the slack would otherwise dominate distances.
double default_proximity_threshold(const ConvexBody& body);

Orbit iterate(const SemicontractionSpec& map, const PointRef& x0, const ConvexBody& body,
              int max_iter, const MetricConvention& conv = {},
              std::optional<double> proximity = std::nullopt);

struct DriftEstimates {
  /// Least-squares slope of from_start over the trailing quarter, clamped to
  /// [0, tau_upper].
  double tau_hat = 0.0;
  /// min over m of a_m / m.
  double tau_upper = 0.0;
  /// Last displacement.
  double delta_hat = 0.0;
  /// Smallest d(p, f(p)) found by the probe search.
  double D_upper = 0.0;
  int window = 0;
  int probe_evaluations = 0;
};

DriftEstimates drift_estimates(const Orbit& orbit, const SemicontractionSpec& map,
                               const ConvexBody& body, int probes = 400, std::uint64_t seed = 1);

struct OrbitClassification {
  enum class Kind { Bounded, Escaping, Undetermined };
  Kind kind = Kind::Undetermined;
  double radius = 0.0;
  double min_boundary_gap = 0.0;
  std::string note;
};

std::string_view to_string(OrbitClassification::Kind kind) noexcept;

OrbitClassification classify_orbit(const Orbit& orbit, const ConvexBody& body);

bool is_monotone_escape(const Orbit& orbit, const ConvexBody& body);

struct GvGap {
  double d_tau_gap = 0.0;
  /// inf over the checked range of h(x) - h(f(x)).
  double horo_payoff = 0.0;
  bool witnesses_max = false;
  double certificate_slack = 0.0;
};

/// Compares D_upper with tau_hat and measures the payoff of the certificate
/// horofunction. Converged orbits use the approximant anchored at the fixed
/// point when no certificate is given; escaping orbits require one.
GvGap gv_gap(const DriftEstimates& estimates, const Orbit& orbit, const ConvexBody& body,
             const std::optional<KarlssonCertificate>& certificate, double tol = 1e-2);

}  // namespace hilbert
