#pragma once

#include <cmath>
#include <concepts>
#include <vector>

#include "hilbert/geometry.hpp"
#include "hilbert/metric.hpp"

namespace hilbert {

struct Orbit;

/// h_z(x) = d(z, x) - d(z, x0) for an interior anchor z. Horofunctions proper
/// are limits of these as the anchor runs to the boundary.
class HorofunctionApproximant {
 public:
  HorofunctionApproximant(ConvexBody body, Point anchor, Point basepoint,
                          MetricConvention conv = {});

  const ConvexBody& body() const noexcept { return body_; }
  const Point& anchor() const noexcept { return anchor_; }
  const Point& basepoint() const noexcept { return basepoint_; }
  const MetricConvention& convention() const noexcept { return conv_; }
  /// d(anchor, basepoint).
  double offset() const noexcept { return offset_; }

 private:
  ConvexBody body_;
  Point anchor_;
  Point basepoint_;
  MetricConvention conv_;
  double offset_ = 0.0;
};

double evaluate(const HorofunctionApproximant& h, const PointRef& x);

/// Sublevel set {h <= level}.
bool horoball_contains(const HorofunctionApproximant& h, const PointRef& x, double level);

struct BusemannResult {
  /// d(g_k, x) - d(g_k, basepoint) at the last ray point.
  double value = 0.0;
  /// |value_k - value_{k-1}| over the last two ray points.
  double gap = 0.0;
  /// Whether d(g_k, x) - d(g_k, g_0) is nonincreasing within 1e-9.
  bool monotone = true;
  std::vector<double> sequence;
  std::vector<double> normalized;
};

/// Busemann evaluation along an ordered ray, for any distance callable
/// `dist(const Point&, const Point&) -> double`.
template <typename Distance>
  requires std::invocable<Distance&, const Point&, const Point&>
BusemannResult busemann_along(const std::vector<Point>& ray, const PointRef& x,
                              const PointRef& basepoint, Distance&& dist) {
  if (ray.size() < 3) throw Error(ErrorCode::RayTooShort, "ray needs at least 3 points");
  const Point xp = x;
  const Point bp = basepoint;
  double previous = -1.0;
  for (const auto& g : ray) {
    const double r = dist(bp, g);
    if (!(r > previous)) {
      throw Error(ErrorCode::NotEscaping, "ray distances from the basepoint must increase");
    }
    previous = r;
  }
  BusemannResult out;
  for (const auto& g : ray) {
    const double dx = dist(g, xp);
    out.sequence.push_back(dx - dist(g, bp));
    out.normalized.push_back(dx - dist(g, ray.front()));
  }
  for (std::size_t k = 1; k < out.normalized.size(); ++k) {
    out.monotone = out.monotone && out.normalized[k] <= out.normalized[k - 1] + 1e-9;
  }
  out.value = out.sequence.back();
  out.gap = std::abs(out.sequence.back() - out.sequence[out.sequence.size() - 2]);
  return out;
}

BusemannResult busemann_along(const std::vector<Point>& ray, const PointRef& x,
                              const PointRef& basepoint, const ConvexBody& body,
                              const MetricConvention& conv = {});

/// Points on the segment from `start` toward the boundary point `target`
/// at Hilbert distances 0, spacing, 2 spacing, ... from `start`.
std::vector<Point> geodesic_ray(const ConvexBody& body, const PointRef& start,
                                const PointRef& target, int count, double spacing,
                                const MetricConvention& conv = {});

struct RecordSelection {
  double epsilon = 0.0;
  double tau = 0.0;
  std::vector<int> records;
  /// b(n) = a_n - (tau - epsilon) n for every index n.
  std::vector<double> b_values;
  /// No record in the second half of the data.
  bool bounded_suspected = false;
};

/// Indices n >= 1 where b(n) strictly exceeds every earlier b(m).
RecordSelection select_records(const std::vector<double>& distances_from_start, double tau,
                               double epsilon);

/// eps_i = 2^-i, i = 1..8.
std::vector<double> default_epsilon_schedule();

struct KarlssonCertificate {
  HorofunctionApproximant h;
  /// max over 1 <= k <= K of h(f^k x) + tau k.
  double slack = 0.0;
  double tau = 0.0;
  int anchor_index = 0;
  int checkable = 0;
  RecordSelection selection;
};

/// Anchors h at the last record of the smallest epsilon and measures how far
/// h(f^k x) <= -tau k is from holding on the checkable range.
KarlssonCertificate karlsson_certificate(const Orbit& orbit, const ConvexBody& body, double tau,
                                         const std::vector<double>& epsilons = default_epsilon_schedule());

}  // namespace hilbert
