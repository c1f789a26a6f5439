#include "hilbert/horo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hilbert/dynamics.hpp"

namespace hilbert {

HorofunctionApproximant::HorofunctionApproximant(ConvexBody body, Point anchor, Point basepoint,
                                                 MetricConvention conv)
    : body_(std::move(body)), anchor_(std::move(anchor)), basepoint_(std::move(basepoint)), conv_(conv) {
  offset_ = hilbert_distance(body_, anchor_, basepoint_, conv_);
}

double evaluate(const HorofunctionApproximant& h, const PointRef& x) {
  return hilbert_distance(h.body(), h.anchor(), x, h.convention()) - h.offset();
}

bool horoball_contains(const HorofunctionApproximant& h, const PointRef& x, double level) {
  return evaluate(h, x) <= level;
}

BusemannResult busemann_along(const std::vector<Point>& ray, const PointRef& x, const PointRef& basepoint,
                              const ConvexBody& body, const MetricConvention& conv) {
  return busemann_along(ray, x, basepoint, [&](const Point& a, const Point& b) {
    return hilbert_distance(body, a, b, conv);
  });
}

std::vector<Point> geodesic_ray(const ConvexBody& body, const PointRef& start, const PointRef& target,
                                int count, double spacing, const MetricConvention& conv) {
  if (count < 1 || !(spacing > 0.0)) throw Error(ErrorCode::InvalidArgument, "ray needs count >= 1, spacing > 0");
  const Point d = target - start;
  const LineInterval li = line_interval(body, start, d);
  const double back = -li.t_min;
  std::vector<Point> ray;
  ray.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    // Invert d(start, start + l d) = scale * log((l + back) t_max / (back (t_max - l))).
    const double grow = std::expm1(k * spacing / conv.scale);
    const double lambda = back * li.t_max * grow / (li.t_max + (grow + 1.0) * back);
    Point p = start + lambda * d;
    if (!(interior_slack(body, p) > 0.0)) {
      throw Error(ErrorCode::DistanceOverflow, "ray point indistinguishable from the boundary");
    }
    ray.push_back(std::move(p));
  }
  return ray;
}

RecordSelection select_records(const std::vector<double>& distances_from_start, double tau, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (distances_from_start.empty()) throw Error(ErrorCode::InsufficientLength, "no distances");
  RecordSelection sel;
  sel.epsilon = epsilon;
  sel.tau = tau;
  const double rate = tau - epsilon;
  double best = 0.0;
  for (std::size_t n = 0; n < distances_from_start.size(); ++n) {
    const double b = distances_from_start[n] - rate * static_cast<double>(n);
    sel.b_values.push_back(b);
    if (n == 0) {
      best = b;
    } else if (b > best) {
      best = b;
      sel.records.push_back(static_cast<int>(n));
    }
  }
  const auto half = static_cast<int>(distances_from_start.size() / 2);
  sel.bounded_suspected = sel.records.empty() || sel.records.back() < half;
  return sel;
}

std::vector<double> default_epsilon_schedule() {
  std::vector<double> eps;
  for (int i = 1; i <= 8; ++i) eps.push_back(std::ldexp(1.0, -i));
  return eps;
}

KarlssonCertificate karlsson_certificate(const Orbit& orbit, const ConvexBody& body, double tau,
                                         const std::vector<double>& epsilons) {
  if (epsilons.empty()) throw Error(ErrorCode::InvalidArgument, "empty epsilon schedule");
  if (orbit.length() < 8) throw Error(ErrorCode::InsufficientLength, "certificate needs >= 8 iterates");
  if (classify_orbit(orbit, body).kind == OrbitClassification::Kind::Bounded) {
    throw Error(ErrorCode::BoundedOrbitSuspected, "orbit is bounded; no escaping certificate exists");
  }
  const double smallest = *std::min_element(epsilons.begin(), epsilons.end());
  RecordSelection sel = select_records(orbit.from_start, tau, smallest);
  if (sel.bounded_suspected) {
    throw Error(ErrorCode::BoundedOrbitSuspected, "no record in the second half of the orbit");
  }
  const int anchor = sel.records.back();
  const int checkable = std::min(anchor, orbit.length() / 2);
  if (checkable < 1) throw Error(ErrorCode::InsufficientLength, "empty checkable range");

  HorofunctionApproximant h(body, orbit.points[static_cast<std::size_t>(anchor)], orbit.points.front(),
                            orbit.conv);
  double slack = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= checkable; ++k) {
    slack = std::max(slack, evaluate(h, orbit.points[static_cast<std::size_t>(k)]) + tau * k);
  }
  return KarlssonCertificate{std::move(h), slack, tau, anchor, checkable, std::move(sel)};
}

}  // namespace hilbert
