#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "hilbert/geometry.hpp"

namespace hilbert {

/// Multiplicative constant in front of the log cross-ratio. Scale 1 is the
/// cone convention (simplex closed form, Birkhoff coefficient tanh(D/4));
/// scale 1/2 makes the Klein disk the curvature -1 hyperbolic plane.
struct MetricConvention {
  double scale = 1.0;
  double cap = 1e6;

  static MetricConvention one() { return {1.0, 1e6}; }
  static MetricConvention half() { return {0.5, 1e6}; }
};

/// Hilbert's cross-ratio distance. Throws OutsideDomain for points outside
/// the body and DistanceOverflow for points on the boundary or distances
/// beyond conv.cap. Exactly symmetric in x and y.
double hilbert_distance(const ConvexBody& body, const PointRef& x, const PointRef& y,
                        const MetricConvention& conv = {});

/// (x, xp)_basept = (d(x,b) + d(xp,b) - d(x,xp)) / 2.
double gromov_product(const ConvexBody& body, const PointRef& x, const PointRef& xp,
                      const PointRef& basept, const MetricConvention& conv = {});

namespace detail {
[[noreturn]] void throw_not_in_simplex(const char* why);
}

/// Closed form log(max_i(x_i/y_i) / min_i(x_i/y_i)) on the open simplex.
template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar simplex_distance(const Eigen::MatrixBase<DerivedX>& x,
                                           const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  using std::abs;
  using std::log;
  if (x.size() != y.size() || x.size() < 2) detail::throw_not_in_simplex("size mismatch");
  const Scalar tol = Scalar(1e-8) * Scalar(x.size());
  if (!(x.array() > Scalar(0)).all() || !(y.array() > Scalar(0)).all()) {
    detail::throw_not_in_simplex("coordinates must be positive");
  }
  if (abs(x.sum() - Scalar(1)) > tol || abs(y.sum() - Scalar(1)) > tol) {
    detail::throw_not_in_simplex("coordinates must sum to one");
  }
  const auto log_ratio = (x.array().log() - y.array().log()).eval();
  return log_ratio.maxCoeff() - log_ratio.minCoeff();
}

using PoincarePoint = std::complex<double>;

/// Curvature -1 distance on the unit disk, log((1+r)/(1-r)) with
/// r = |z - w| / |1 - z conj(w)|.
double poincare_distance(PoincarePoint z, PoincarePoint w);

/// Closed-form Busemann function of the Poincare disk for a boundary point
/// zeta, log(|zeta - z|^2 / (1 - |z|^2)), normalized to vanish at 0.
double poincare_horofunction(PoincarePoint zeta, PoincarePoint z);

/// Isometry between the Klein (Hilbert, scale 1/2) and Poincare disks.
PoincarePoint klein_to_poincare(const Eigen::Vector2d& k);
Eigen::Vector2d poincare_to_klein(PoincarePoint p);

}  // namespace hilbert
