#include <cmath>

#include "doctest.h"
#include "hilbert/maps.hpp"
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

}  // namespace

TEST_CASE("apply: examples") {
  const Eigen::Vector3d x(0.2, 0.3, 0.5);
  CHECK(apply(SemicontractionSpec::identity(3), x) == x);

  const Point y = apply(SemicontractionSpec::projective_linear(kPerron), Eigen::Vector2d(0.5, 0.5));
  CHECK((y - Eigen::Vector2d(0.4, 0.6)).norm() < 1e-15);

  const double t = 0.5;
  const Eigen::Matrix2d boost = (Eigen::Matrix2d() << std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t)).finished();
  const auto segment = ConvexBody::unit_ball(1);
  const auto klein = SemicontractionSpec::klein(boost, segment);
  CHECK(apply(klein, Eigen::VectorXd::Zero(1))[0] == doctest::Approx(std::tanh(0.5)).epsilon(1e-15));
  CHECK(apply(SemicontractionSpec::klein_boost(1, 0.5), Eigen::VectorXd::Zero(1))[0] ==
        doctest::Approx(std::tanh(0.5)).epsilon(1e-15));
}

TEST_CASE("apply: boost adds rapidity on the axis") {
  const auto map = SemicontractionSpec::klein_boost(2, 0.5);
  for (double u : {-0.9, -0.3, 0.0, 0.4, 0.8}) {
    const Point y = apply(map, Eigen::Vector2d(u, 0));
    CHECK(y[0] == doctest::Approx(std::tanh(std::atanh(u) + 0.5)).epsilon(1e-13));
    CHECK(std::abs(y[1]) < 1e-15);
  }
}

TEST_CASE("apply: topical rows") {
  TopicalRow r1{TopicalRow::Op::Max, Eigen::Vector2d(2, 1)};
  TopicalRow r2{TopicalRow::Op::Min, Eigen::Vector2d(1, 1)};
  const auto map = SemicontractionSpec::topical({r1, r2});
  const Point y = apply(map, Eigen::Vector2d(0.25, 0.75));
  // max(0.5, 0.75) = 0.75, min(0.25, 0.75) = 0.25, renormalized.
  CHECK((y - Eigen::Vector2d(0.75, 0.25)).norm() < 1e-15);
}

TEST_CASE("apply: errors") {
  CHECK(code_of([] { apply(SemicontractionSpec::identity(2), Eigen::Vector3d(0, 0, 0)); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([] { SemicontractionSpec::projective_linear((Eigen::Matrix2d() << 1, -1, 0, 1).finished()); }) ==
        ErrorCode::InvalidMap);
  CHECK(code_of([] { SemicontractionSpec::projective_linear((Eigen::Matrix2d() << 1, 1, 0, 0).finished()); }) ==
        ErrorCode::InvalidMap);
  // A translation pushes the disk out of itself.
  CHECK(code_of([] {
          SemicontractionSpec::affine(Eigen::Matrix2d::Identity(), Eigen::Vector2d(0.5, 0), ConvexBody::unit_ball(2));
        }) == ErrorCode::InvalidMap);
}

TEST_CASE("certify_nonexpansive: examples") {
  const auto s = ConvexBody::simplex(2);
  const auto perron = certify_nonexpansive(SemicontractionSpec::projective_linear(kPerron), s, 10000, 1);
  CHECK(perron.pairs_tested == 10000);
  CHECK(perron.max_ratio <= std::tanh(birkhoff_diameter(kPerron) / 4.0) + 1e-9);
  CHECK(perron.max_ratio < 1.0);
  CHECK_FALSE(perron.witness);

  CHECK(certify_nonexpansive(SemicontractionSpec::identity(2), s, 500, 1).max_ratio == 1.0);

  const auto square = certify_nonexpansive(SemicontractionSpec::cone_power(2, 2.0), s, 500, 1);
  CHECK(square.max_ratio == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(square.witness);
}

TEST_CASE("certify_nonexpansive: disk isometries") {
  const auto disk = ConvexBody::unit_ball(2);
  const auto half = MetricConvention::half();
  const auto boost = certify_nonexpansive(SemicontractionSpec::klein_boost(2, 0.7), disk, 2000, 3, half);
  CHECK(boost.max_ratio == doctest::Approx(1.0).epsilon(1e-8));
  const auto rot = certify_nonexpansive(SemicontractionSpec::disk_rotation(1.0), disk, 2000, 3, half);
  CHECK(rot.max_ratio == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("certify_on_pairs") {
  const std::vector<std::pair<Point, Point>> pairs{{Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(0.25, 0.75)}};
  const auto c = certify_on_pairs(SemicontractionSpec::cone_power(2, 2.0), ConvexBody::simplex(2), pairs);
  CHECK(c.max_ratio == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("birkhoff_diameter: examples") {
  CHECK(birkhoff_diameter(kPerron) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(birkhoff_diameter(Eigen::Matrix2d::Ones()) == 0.0);
  CHECK(birkhoff_diameter((Eigen::Matrix2d() << 2, 1, 1, 2).finished()) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(code_of([] { birkhoff_diameter(Eigen::Matrix2d::Identity()); }) == ErrorCode::NonPositiveEntry);
}

TEST_CASE("beardon_approximant: identity fixes the basepoint") {
  const Point base = Eigen::Vector3d(0.2, 0.3, 0.5);
  for (int k : {1, 9, 99}) {
    const auto fk = beardon_approximant(SemicontractionSpec::identity(3), base, k);
    CHECK(fk.experimental());
    const auto fixed = banach_fixed_point(fk, Eigen::Vector3d(0.6, 0.2, 0.2));
    CHECK(fixed.converged);
    // Banach stops at step tol (1 + |x|), so the error is at most that over 1 - k/(k+1).
    CHECK((fixed.point - base).norm() < 2e-14 * (k + 1));
  }
}

TEST_CASE("beardon_approximant: diag(2,1) fixed points move toward e1") {
  const auto map = SemicontractionSpec::projective_linear(Eigen::Vector2d(2, 1).asDiagonal().toDenseMatrix());
  const Point base = Eigen::Vector2d(0.5, 0.5);
  double previous = 0.5;
  for (int k : {9, 99, 999}) {
    const auto fk = beardon_approximant(map, base, k);
    const auto fixed = banach_fixed_point(fk, base);
    CHECK(fixed.converged);
    CHECK(contains(ConvexBody::simplex(2), fixed.point) == Location::Interior);
    CHECK(fixed.point[0] > previous);
    previous = fixed.point[0];
  }
  CHECK(previous > 0.99);
}

TEST_CASE("beardon_approximant: positive matrix approaches the Perron point") {
  const auto fk = beardon_approximant(SemicontractionSpec::projective_linear(kPerron), Eigen::Vector2d(0.5, 0.5), 99);
  const auto fixed = banach_fixed_point(fk, Eigen::Vector2d(0.5, 0.5));
  CHECK(fixed.converged);
  const Eigen::Vector2d perron((3 - std::sqrt(5.0)) / 2, (std::sqrt(5.0) - 1) / 2);
  CHECK((fixed.point - perron).norm() < 1e-2);
}

TEST_CASE("beardon_approximant: argument errors") {
  CHECK(code_of([] { beardon_approximant(SemicontractionSpec::identity(2), Eigen::Vector2d(0.5, 0.5), 0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("Birkhoff bound: near-attained by close pairs, not by opposite extremes") {
  const auto map = SemicontractionSpec::projective_linear(kPerron);
  const auto s2 = ConvexBody::simplex(2);
  const double bound = std::tanh(birkhoff_diameter(kPerron) / 4.0);
  // In u = log(x2/x1) the map has slope e^u / ((1 + 2e^u)(1 + e^u)), largest at e^u = 1/sqrt(2).
  auto at = [](double u) { return Point(Eigen::Vector2d(1.0, std::exp(u)) / (1.0 + std::exp(u))); };
  const double u0 = -0.5 * std::log(2.0);
  const auto close = certify_on_pairs(map, s2, {{at(u0 - 1e-4), at(u0 + 1e-4)}});
  CHECK(close.max_ratio >= bound - 1e-2);
  CHECK(close.max_ratio <= bound + 1e-9);
  const auto extremes = certify_on_pairs(map, s2, {{at(-12.0), at(12.0)}});
  CHECK(extremes.max_ratio < 0.05);
}
