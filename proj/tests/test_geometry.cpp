#include <cmath>

#include "doctest.h"
#include "hilbert/geometry.hpp"
#include "hilbert/sampling.hpp"

using namespace hilbert;

namespace {

ConvexBody square() { return ConvexBody::box(Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1)); }

ConvexBody half_plane() {
  return ConvexBody::polytope(Eigen::RowVector2d(-1, 0), Eigen::VectorXd::Zero(1), Point(Eigen::Vector2d(1, 0)));
}

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

}  // namespace

TEST_CASE("contains: examples") {
  CHECK(contains(ConvexBody::unit_ball(2), Eigen::Vector2d(0, 0), 1e-9) == Location::Interior);
  CHECK(contains(square(), Eigen::Vector2d(1, 0.3)) == Location::Boundary);
  CHECK(contains(ConvexBody::simplex(3), Eigen::Vector3d(0.2, 0.3, 0.5)) == Location::Interior);
  CHECK(contains(square(), Eigen::Vector2d(1.5, 0)) == Location::Outside);
  CHECK(contains(ConvexBody::simplex(3), Eigen::Vector3d(0.2, 0.3, 0.6)) == Location::Outside);
  CHECK(contains(ConvexBody::unit_ball(2), Eigen::Vector2d(0.6, 0.8)) == Location::Boundary);
}

TEST_CASE("contains: dimension mismatch") {
  CHECK(code_of([] { contains(square(), Eigen::Vector3d(0, 0, 0)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("chord: examples") {
  const auto c = chord(ConvexBody::unit_ball(2), Eigen::Vector2d(0, 0), Eigen::Vector2d(0.5, 0));
  CHECK(c.t_min == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(c.t_max == doctest::Approx(2.0).epsilon(1e-12));
  CHECK((c.a - Eigen::Vector2d(-1, 0)).norm() < 1e-12);
  CHECK((c.b - Eigen::Vector2d(1, 0)).norm() < 1e-12);
  CHECK(c.t_max_excess == doctest::Approx(1.0).epsilon(1e-12));

  const auto s = chord(square(), Eigen::Vector2d(0, 0), Eigen::Vector2d(0.5, 0));
  CHECK(s.t_min == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(s.t_max == doctest::Approx(2.0).epsilon(1e-12));

  CHECK(code_of([] { chord(half_plane(), Eigen::Vector2d(1, 0), Eigen::Vector2d(2, 1)); }) == ErrorCode::Unbounded);
  CHECK(code_of([] { chord(square(), Eigen::Vector2d(0, 0), Eigen::Vector2d(0, 0)); }) ==
        ErrorCode::DegenerateChord);
  CHECK(code_of([] { chord(square(), Eigen::Vector2d(0, 0), Eigen::Vector2d(2, 0)); }) == ErrorCode::OutsideDomain);
}

TEST_CASE("chord: endpoints lie on the boundary and bracket the segment") {
  const ConvexBody bodies[] = {ConvexBody::unit_ball(2), square(), ConvexBody::regular_polygon(5),
                               ConvexBody::simplex(3)};
  for (const auto& body : bodies) {
    const auto pts = sample_interior(body, 200, 11);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
      const auto c = chord(body, pts[i], pts[i + 1]);
      CHECK(c.t_min < 0.0);
      CHECK(c.t_max > 1.0);
      CHECK(contains(body, c.a, 1e-9) == Location::Boundary);
      CHECK(contains(body, c.b, 1e-9) == Location::Boundary);
    }
  }
}

TEST_CASE("minimal_face: examples") {
  const auto edge = minimal_face(square(), Eigen::Vector2d(1, 0.3));
  const auto* pf = std::get_if<PolytopeFace>(&edge);
  REQUIRE(pf != nullptr);
  CHECK(pf->active.size() == 1);
  REQUIRE(pf->vertices.size() == 2);
  const bool v0 = (pf->vertices[0] - Eigen::Vector2d(1, -1)).norm() < 1e-12 ||
                  (pf->vertices[1] - Eigen::Vector2d(1, -1)).norm() < 1e-12;
  const bool v1 = (pf->vertices[0] - Eigen::Vector2d(1, 1)).norm() < 1e-12 ||
                  (pf->vertices[1] - Eigen::Vector2d(1, 1)).norm() < 1e-12;
  CHECK(v0);
  CHECK(v1);

  const auto corner = minimal_face(square(), Eigen::Vector2d(1, 1));
  REQUIRE(std::holds_alternative<PolytopeFace>(corner));
  CHECK(std::get<PolytopeFace>(corner).active.size() == 2);
  CHECK(std::get<PolytopeFace>(corner).vertices.size() == 1);

  const auto exposed = minimal_face(ConvexBody::unit_ball(2), Eigen::Vector2d(1, 0));
  REQUIRE(std::holds_alternative<ExposedPoint>(exposed));
  CHECK((std::get<ExposedPoint>(exposed).p - Eigen::Vector2d(1, 0)).norm() < 1e-12);

  CHECK(code_of([] { minimal_face(square(), Eigen::Vector2d(0, 0)); }) == ErrorCode::NotOnBoundary);
}

TEST_CASE("minimal_face: simplex edge") {
  const auto f = minimal_face(ConvexBody::simplex(3), Eigen::Vector3d(0.5, 0.5, 0));
  REQUIRE(std::holds_alternative<PolytopeFace>(f));
  CHECK(std::get<PolytopeFace>(f).vertices.size() == 2);
}

TEST_CASE("segment_in_boundary: examples") {
  CHECK(segment_in_boundary(square(), Eigen::Vector2d(1, -0.5), Eigen::Vector2d(1, 0.5)));
  CHECK_FALSE(segment_in_boundary(ConvexBody::unit_ball(2), Eigen::Vector2d(1, 0), Eigen::Vector2d(-1, 0)));
  CHECK(segment_in_boundary(square(), Eigen::Vector2d(1, 1), Eigen::Vector2d(-1, 1)));
  CHECK_FALSE(segment_in_boundary(square(), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)));
}

TEST_CASE("bodies: construction errors") {
  CHECK(code_of([] { ConvexBody::simplex(1); }) == ErrorCode::InvalidBody);
  CHECK(code_of([] { ConvexBody::regular_polygon(2); }) == ErrorCode::InvalidBody);
  CHECK(code_of([] { ConvexBody::box(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)); }) == ErrorCode::InvalidBody);
}

TEST_CASE("is_bounded") {
  CHECK(is_bounded(square()));
  CHECK(is_bounded(ConvexBody::unit_ball(3)));
  CHECK(is_bounded(ConvexBody::simplex(4)));
  CHECK(is_bounded(ConvexBody::regular_polygon(7)));
  CHECK_FALSE(is_bounded(half_plane()));
  const Eigen::Matrix<double, 3, 2> strip_normals = (Eigen::Matrix<double, 3, 2>() << 1, 0, -1, 0, 0, 1).finished();
  CHECK_FALSE(is_bounded(ConvexBody::polytope(strip_normals, Eigen::Vector3d(1, 1, 1), Point(Eigen::Vector2d(0, 0)))));
  CHECK(is_bounded(ConvexBody::intersection({half_plane(), ConvexBody::unit_ball(2)}, Point(Eigen::Vector2d(0.5, 0)))));
}

TEST_CASE("sampling: interior and seeded") {
  const ConvexBody bodies[] = {ConvexBody::unit_ball(2), square(), ConvexBody::regular_polygon(5),
                               ConvexBody::simplex(4)};
  for (const auto& body : bodies) {
    const auto a = sample_interior(body, 100, 5);
    const auto b = sample_interior(body, 100, 5);
    REQUIRE(a.size() == 100);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(contains(body, a[i]) == Location::Interior);
      CHECK(a[i] == b[i]);
    }
  }
}

TEST_CASE("project_to_boundary") {
  const Point p = project_to_boundary(ConvexBody::unit_ball(2), Eigen::Vector2d(0, 0), Eigen::Vector2d(0.3, 0.4));
  CHECK((p - Eigen::Vector2d(0.6, 0.8)).norm() < 1e-12);
}
