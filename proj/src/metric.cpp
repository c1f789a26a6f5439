#include "hilbert/metric.hpp"

#include <cmath>
#include <limits>

namespace hilbert {

namespace detail {
void throw_not_in_simplex(const char* why) { throw Error(ErrorCode::NotInSimplex, why); }
}  // namespace detail

namespace {

void require_interior(const ConvexBody& body, const PointRef& p) {
  if (p.size() != body.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension");
  if (contains(body, p) == Location::Outside) {
    throw Error(ErrorCode::OutsideDomain, "point lies outside the body");
  }
  if (!(interior_slack(body, p) > 0.0)) {
    throw Error(ErrorCode::DistanceOverflow, "point lies on the boundary");
  }
}

bool lexicographically_less(const PointRef& a, const PointRef& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace

double hilbert_distance(const ConvexBody& body, const PointRef& x, const PointRef& y,
                        const MetricConvention& conv) {
  require_interior(body, x);
  require_interior(body, y);
  const double degeneracy = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + x.norm());
  if ((x - y).norm() <= degeneracy) return 0.0;

  // Canonical orientation makes d(x, y) and d(y, x) bitwise identical.
  const bool swap = lexicographically_less(y, x);
  const Chord c = swap ? chord(body, y, x) : chord(body, x, y);
  const double d = conv.scale * (std::log1p(1.0 / -c.t_min) + std::log1p(1.0 / c.t_max_excess));
  if (!std::isfinite(d) || d > conv.cap) {
    throw Error(ErrorCode::DistanceOverflow, "distance exceeds the configured cap");
  }
  return d;
}

double gromov_product(const ConvexBody& body, const PointRef& x, const PointRef& xp,
                      const PointRef& basept, const MetricConvention& conv) {
  return 0.5 * (hilbert_distance(body, x, basept, conv) + hilbert_distance(body, xp, basept, conv) -
                hilbert_distance(body, x, xp, conv));
}

double poincare_distance(PoincarePoint z, PoincarePoint w) {
  if (!(std::abs(z) < 1.0) || !(std::abs(w) < 1.0)) {
    throw Error(ErrorCode::OutsideDisk, "Poincare points must lie in the open unit disk");
  }
  if (z == w) return 0.0;
  // 2 atanh(rho) = 2 log(1 + rho) - log(1 - rho^2), with 1 - rho^2 in product
  // form so that points near the circle keep their precision.
  const double q = std::abs(1.0 - z * std::conj(w));
  const double rho = std::abs(z - w) / q;
  const double az = std::abs(z), aw = std::abs(w);
  const double one_minus_rho2 = (1.0 - az) * (1.0 + az) * (1.0 - aw) * (1.0 + aw) / (q * q);
  return 2.0 * std::log1p(rho) - std::log(one_minus_rho2);
}

double poincare_horofunction(PoincarePoint zeta, PoincarePoint z) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::OutsideDisk, "z must lie in the open disk");
  return std::log(std::norm(zeta - z) / (1.0 - std::norm(z)));
}

PoincarePoint klein_to_poincare(const Eigen::Vector2d& k) {
  const double r2 = k.squaredNorm();
  if (!(r2 < 1.0)) throw Error(ErrorCode::OutsideDisk, "Klein point outside the disk");
  const double s = 1.0 / (1.0 + std::sqrt(1.0 - r2));
  return {s * k.x(), s * k.y()};
}

Eigen::Vector2d poincare_to_klein(PoincarePoint p) {
  const double r2 = std::norm(p);
  if (!(r2 < 1.0)) throw Error(ErrorCode::OutsideDisk, "Poincare point outside the disk");
  return Eigen::Vector2d(p.real(), p.imag()) * (2.0 / (1.0 + r2));
}

}  // namespace hilbert
