#include <cmath>
#include <limits>

#include "doctest.h"
#include "hilbert/benchmarks.hpp"
#include "hilbert/dynamics.hpp"
#include "hilbert/sampling.hpp"

using namespace hilbert;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

const Eigen::Matrix2d kPerron = (Eigen::Matrix2d() << 1, 1, 1, 2).finished();

// Invariant tolerance: 1e-9 plus the rounding floor of points stored in double
// at interior slack s, about eps / s in distance. Negligible on the simplex,
// whose coordinates are the slacks.
double floor_tol(const Benchmark& b, std::initializer_list<const Point*> pts) {
  if (b.body.kind() == ConvexBody::Kind::Simplex) return 1e-9;
  double s = 1.0;
  for (const Point* p : pts) s = std::min(s, interior_slack(b.body, *p));
  return 1e-9 + std::numeric_limits<double>::epsilon() / s;
}

SemicontractionSpec diag21() {
  return SemicontractionSpec::projective_linear(Eigen::Vector2d(2, 1).asDiagonal().toDenseMatrix());
}

// Perron eigenvector of a positive matrix, normalized to the simplex.
Point perron_vector(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(a);
  Eigen::Index best = 0;
  es.eigenvalues().real().maxCoeff(&best);
  Point v = es.eigenvectors().col(best).real();
  return v / v.sum();
}

}  // namespace

TEST_CASE("iterate: identity converges at step 1") {
  const auto orbit = iterate(SemicontractionSpec::identity(2), Eigen::Vector2d(0.3, 0.7), ConvexBody::simplex(2), 10);
  CHECK(orbit.stop_reason == StopReason::Converged);
  CHECK(orbit.length() == 1);
  for (double d : orbit.displacements) CHECK(d == 0.0);
}

TEST_CASE("iterate: Perron fixed point") {
  const auto orbit = iterate(SemicontractionSpec::projective_linear(kPerron), Eigen::Vector2d(0.5, 0.5),
                             ConvexBody::simplex(2), 60);
  CHECK((orbit.points.back() - perron_vector(kPerron)).norm() < 1e-6);
}

TEST_CASE("iterate: diag(2,1) closed-form orbit") {
  const auto orbit = iterate(diag21(), Eigen::Vector2d(0.5, 0.5), ConvexBody::simplex(2), 40);
  CHECK(orbit.stop_reason == StopReason::BoundaryProximity);
  for (int k = 0; k <= orbit.length(); ++k) {
    const double p = std::ldexp(1.0, k);
    const Eigen::Vector2d expect(p / (p + 1), 1 / (p + 1));
    CHECK((orbit.points[static_cast<std::size_t>(k)] - expect).norm() < 1e-14);
    CHECK(std::abs(orbit.from_start[static_cast<std::size_t>(k)] - k * std::log(2.0)) < 1e-12);
  }
}

TEST_CASE("iterate: errors") {
  const auto s = ConvexBody::simplex(2);
  CHECK(code_of([&] { iterate(diag21(), Eigen::Vector2d(0, 1), s, 10); }) == ErrorCode::OutsideDomain);
  CHECK(code_of([&] { iterate(diag21(), Eigen::Vector3d(0.2, 0.3, 0.5), s, 10); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { iterate(diag21(), Eigen::Vector2d(0, 0), ConvexBody::unit_ball(2), 10); }) ==
        ErrorCode::InvalidMap);
}

TEST_CASE("orbit invariants on the benchmark suite") {
  for (const auto& b : benchmark_suite()) {
    CAPTURE(b.id);
    const auto orbit = iterate(b.map, b.start, b.body, 120, b.conv);
    const auto& p = orbit.points;
    for (std::size_t k = 1; k < orbit.displacements.size(); ++k) {
      CHECK(orbit.displacements[k] <= orbit.displacements[k - 1] + floor_tol(b, {&p[k + 1]}));
    }
    const auto& a = orbit.from_start;
    const std::size_t n = a.size();
    for (std::size_t k = 1; k < n; ++k) CHECK(a[k] <= k * a[1] + floor_tol(b, {&p[k]}));
    for (std::size_t k = 1; k < n; ++k) {
      for (std::size_t m = 1; k + m < n; ++m) CHECK(a[k + m] <= a[k] + a[m] + floor_tol(b, {&p[k + m]}));
    }
  }
}

TEST_CASE("paired orbits do not separate") {
  for (const auto& b : benchmark_suite()) {
    CAPTURE(b.id);
    Rng rng(5);
    const Point y = sample_interior(b.body, rng);
    const auto ox = iterate(b.map, b.start, b.body, 60, b.conv);
    const auto oy = iterate(b.map, y, b.body, 60, b.conv);
    const double d0 = hilbert_distance(b.body, b.start, y, b.conv);
    const std::size_t n = std::min(ox.points.size(), oy.points.size());
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(hilbert_distance(b.body, ox.points[k], oy.points[k], b.conv) <=
            d0 + floor_tol(b, {&ox.points[k], &oy.points[k]}));
    }
  }
}

TEST_CASE("drift_estimates: examples") {
  const auto s = ConvexBody::simplex(2);
  const auto orbit = iterate(diag21(), Eigen::Vector2d(0.5, 0.5), s, 40);
  const auto e = drift_estimates(orbit, diag21(), s);
  CHECK(std::abs(e.tau_hat - std::log(2.0)) <= 1e-6);
  CHECK(std::abs(e.D_upper - std::log(2.0)) <= 1e-6);
  CHECK(std::abs(e.delta_hat - std::log(2.0)) <= 1e-9);

  const auto id = SemicontractionSpec::identity(2);
  const auto ie = drift_estimates(iterate(id, Eigen::Vector2d(0.3, 0.7), s, 10), id, s);
  CHECK(ie.tau_hat == 0.0);
  CHECK(ie.tau_upper == 0.0);
  CHECK(ie.delta_hat == 0.0);
  CHECK(ie.D_upper == 0.0);

  const auto disk = ConvexBody::unit_ball(2);
  const auto boost = SemicontractionSpec::klein_boost(2, 0.5);
  const auto bo = iterate(boost, Eigen::Vector2d(0, 0), disk, 40, MetricConvention::half());
  const auto be = drift_estimates(bo, boost, disk);
  CHECK(std::abs(be.tau_hat - 0.5) <= 1e-6);
  CHECK(std::abs(be.delta_hat - 0.5) <= 1e-6);
  CHECK(std::abs(be.D_upper - 0.5) <= 1e-6);
}

TEST_CASE("drift_estimates: short orbit") {
  const auto s = ConvexBody::simplex(2);
  const auto orbit = iterate(diag21(), Eigen::Vector2d(0.5, 0.5), s, 5);
  CHECK(code_of([&] { drift_estimates(orbit, diag21(), s); }) == ErrorCode::OrbitTooShort);
}

TEST_CASE("drift_estimates: subadditive sandwich on the benchmark suite") {
  for (const auto& b : benchmark_suite()) {
    CAPTURE(b.id);
    const auto orbit = iterate(b.map, b.start, b.body, 200, b.conv);
    const auto e = drift_estimates(orbit, b.map, b.body);
    CHECK(e.tau_hat >= 0.0);
    CHECK(e.tau_hat <= e.tau_upper + 1e-9);
    CHECK(e.tau_hat >= e.tau_upper - 0.05 * (1 + e.tau_upper));
  }
}

TEST_CASE("classify_orbit: examples") {
  const auto s = ConvexBody::simplex(2);
  const auto perron = iterate(SemicontractionSpec::projective_linear(kPerron), Eigen::Vector2d(0.5, 0.5), s, 60);
  CHECK(classify_orbit(perron, s).kind == OrbitClassification::Kind::Bounded);
  const auto esc = iterate(diag21(), Eigen::Vector2d(0.5, 0.5), s, 60);
  CHECK(classify_orbit(esc, s).kind == OrbitClassification::Kind::Escaping);

  const auto disk = ConvexBody::unit_ball(2);
  const auto rot = iterate(SemicontractionSpec::disk_rotation(std::sqrt(2.0)), Eigen::Vector2d(0, 0), disk, 50,
                           MetricConvention::half());
  const auto c = classify_orbit(rot, disk);
  CHECK(c.kind == OrbitClassification::Kind::Bounded);
  CHECK(c.radius == 0.0);

  const auto off = iterate(SemicontractionSpec::disk_rotation(std::sqrt(2.0)), Eigen::Vector2d(0.4, 0), disk, 50,
                           MetricConvention::half());
  CHECK(classify_orbit(off, disk).kind == OrbitClassification::Kind::Bounded);

  const auto shortish = iterate(diag21(), Eigen::Vector2d(0.5, 0.5), s, 4);
  CHECK(classify_orbit(shortish, s).kind == OrbitClassification::Kind::Undetermined);
}

TEST_CASE("is_monotone_escape: examples") {
  const auto s = ConvexBody::simplex(2);
  CHECK(is_monotone_escape(iterate(diag21(), Eigen::Vector2d(0.5, 0.5), s, 40), s));
  CHECK_FALSE(is_monotone_escape(iterate(SemicontractionSpec::identity(2), Eigen::Vector2d(0.5, 0.5), s, 10), s));
  CHECK_FALSE(is_monotone_escape(
      iterate(SemicontractionSpec::projective_linear(kPerron), Eigen::Vector2d(0.5, 0.5), s, 60), s));
}

TEST_CASE("gv_gap: examples") {
  const auto s = ConvexBody::simplex(2);
  const auto orbit = iterate(diag21(), Eigen::Vector2d(0.5, 0.5), s, 40);
  const auto e = drift_estimates(orbit, diag21(), s);
  const auto cert = karlsson_certificate(orbit, s, e.tau_hat);
  const auto g = gv_gap(e, orbit, s, cert);
  CHECK(g.d_tau_gap <= 1e-6);
  CHECK(g.horo_payoff == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(g.witnesses_max);
  CHECK(code_of([&] { gv_gap(e, orbit, s, std::nullopt); }) == ErrorCode::MissingCertificate);

  const auto id = SemicontractionSpec::identity(2);
  const auto io = iterate(id, Eigen::Vector2d(0.3, 0.7), s, 10);
  const auto ig = gv_gap(drift_estimates(io, id, s), io, s, std::nullopt);
  CHECK(ig.d_tau_gap == 0.0);
  CHECK(ig.horo_payoff == 0.0);

  const auto disk = ConvexBody::unit_ball(2);
  const auto boost = SemicontractionSpec::klein_boost(2, 0.5);
  const auto bo = iterate(boost, Eigen::Vector2d(0, 0), disk, 40, MetricConvention::half());
  const auto be = drift_estimates(bo, boost, disk);
  const auto bg = gv_gap(be, bo, disk, karlsson_certificate(bo, disk, be.tau_hat));
  CHECK(bg.d_tau_gap <= 1e-6);
  CHECK(std::abs(bg.horo_payoff - 0.5) <= 1e-3);
}
