#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "hilbert/benchmarks.hpp"
#include "hilbert/conjecture.hpp"

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

ConvexBody square() { return ConvexBody::box(Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1)); }

SemicontractionSpec diag(std::initializer_list<double> d) {
  const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(d.begin(), static_cast<Eigen::Index>(d.size()));
  return SemicontractionSpec::projective_linear(v.asDiagonal().toDenseMatrix());
}

bool has_vertex(const std::vector<Point>& vs, const Point& v) {
  return std::any_of(vs.begin(), vs.end(), [&](const Point& w) { return (w - v).norm() < 1e-9; });
}

ReportSettings quick() {
  ReportSettings s;
  s.beardon = false;
  return s;
}

}  // namespace

TEST_CASE("limit_set: examples") {
  const auto s2 = ConvexBody::simplex(2);
  const auto o1 = iterate(diag({2, 1}), Eigen::Vector2d(0.5, 0.5), s2, 200);
  const auto c1 = limit_set(o1, s2);
  REQUIRE(c1.size() == 1);
  CHECK((c1[0] - Eigen::Vector2d(1, 0)).norm() < 1e-6);

  const auto s3 = ConvexBody::simplex(3);
  const auto o2 = iterate(diag({2, 2, 1}), Eigen::Vector3d(1, 1, 1) / 3, s3, 200);
  const auto c2 = limit_set(o2, s3);
  REQUIRE(c2.size() == 1);
  CHECK((c2[0] - Eigen::Vector3d(0.5, 0.5, 0)).norm() < 1e-6);

  const auto disk = ConvexBody::unit_ball(2);
  const auto o3 = iterate(SemicontractionSpec::klein_boost(2, 0.5), Eigen::Vector2d(0, 0), disk, 200,
                          MetricConvention::half());
  const auto c3 = limit_set(o3, disk);
  REQUIRE(c3.size() == 1);
  CHECK((c3[0] - Eigen::Vector2d(1, 0)).norm() < 1e-6);
}

TEST_CASE("limit_set: errors") {
  const auto s2 = ConvexBody::simplex(2);
  const auto bounded = iterate(SemicontractionSpec::projective_linear((Eigen::Matrix2d() << 1, 1, 1, 2).finished()),
                               Eigen::Vector2d(0.5, 0.5), s2, 60);
  CHECK(code_of([&] { limit_set(bounded, s2); }) == ErrorCode::NotEscaping);
  const auto esc = iterate(diag({2, 1}), Eigen::Vector2d(0.5, 0.5), s2, 60);
  CHECK(code_of([&] { limit_set(esc, s2, 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("attractor_face: examples") {
  const auto s3 = ConvexBody::simplex(3);
  const auto edge = attractor_face({Eigen::Vector3d(0.5, 0.5, 0)}, s3);
  CHECK(edge.single_face);
  REQUIRE(edge.face);
  const auto& pf = std::get<PolytopeFace>(*edge.face);
  CHECK(pf.vertices.size() == 2);
  CHECK(has_vertex(pf.vertices, Eigen::Vector3d(1, 0, 0)));
  CHECK(has_vertex(pf.vertices, Eigen::Vector3d(0, 1, 0)));

  const auto disk = attractor_face({Eigen::Vector2d(1, 0)}, ConvexBody::unit_ball(2));
  CHECK(disk.single_face);
  REQUIRE(disk.face);
  CHECK(std::holds_alternative<ExposedPoint>(*disk.face));

  const auto two = attractor_face({Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0)}, s3);
  CHECK(two.single_face);
  REQUIRE(two.face);
  CHECK(std::get<PolytopeFace>(*two.face).vertices.size() == 2);

  const auto three =
      attractor_face({Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(0, 1, 0)}, s3);
  CHECK_FALSE(three.single_face);
  CHECK_FALSE(three.face);

  const auto disk_two = attractor_face({Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)}, ConvexBody::unit_ball(2));
  CHECK_FALSE(disk_two.single_face);

  CHECK(code_of([&] { attractor_face({Eigen::Vector3d(0.2, 0.3, 0.5)}, s3); }) == ErrorCode::NotOnBoundary);
}

TEST_CASE("star_witness: examples") {
  const auto z1 = star_witness({Eigen::Vector2d(1, 0)}, ConvexBody::unit_ball(2));
  REQUIRE(z1);
  CHECK((*z1 - Eigen::Vector2d(1, 0)).norm() < 1e-12);

  const auto s3 = ConvexBody::simplex(3);
  const auto z2 = star_witness({Eigen::Vector3d(0.5, 0.5, 0)}, s3);
  REQUIRE(z2);
  CHECK(segment_in_boundary(s3, *z2, Eigen::Vector3d(0.5, 0.5, 0)));

  const auto z3 = star_witness({Eigen::Vector2d(1, 0.5), Eigen::Vector2d(0.5, 1)}, square());
  REQUIRE(z3);
  CHECK((*z3 - Eigen::Vector2d(1, 1)).norm() < 1e-12);

  CHECK_FALSE(star_witness({Eigen::Vector2d(1, 0), Eigen::Vector2d(-1, 0)}, ConvexBody::unit_ball(2)));
}

TEST_CASE("same_face") {
  const auto s3 = ConvexBody::simplex(3);
  const auto a = attractor_face({Eigen::Vector3d(0.5, 0.5, 0)}, s3).face;
  const auto b = attractor_face({Eigen::Vector3d(0.3, 0.7, 0)}, s3).face;
  const auto c = attractor_face({Eigen::Vector3d(0.3, 0, 0.7)}, s3).face;
  CHECK(same_face(a, b));
  CHECK_FALSE(same_face(a, c));
  CHECK(same_face(std::nullopt, std::nullopt));
  CHECK_FALSE(same_face(a, std::nullopt));
}

TEST_CASE("conjecture_report: diag(2,1)") {
  const auto s2 = ConvexBody::simplex(2);
  const auto r = conjecture_report(diag({2, 1}), s2, Eigen::Vector2d(0.5, 0.5));
  CHECK(r.verdict == Verdict::SingleFace);
  REQUIRE(r.face);
  const auto& pf = std::get<PolytopeFace>(*r.face);
  REQUIRE(pf.vertices.size() == 1);
  CHECK((pf.vertices[0] - Eigen::Vector2d(1, 0)).norm() < 1e-12);
  REQUIRE(r.estimates);
  CHECK(std::abs(r.estimates->tau_hat - std::log(2.0)) <= 1e-6);
  CHECK(r.chain_holds);
  CHECK(r.faces_coincide);
  REQUIRE(r.certificate);
  CHECK(r.certificate->slack <= 1e-6);
  REQUIRE(r.beardon_steps.size() == 3);
  CHECK(r.beardon_steps[2].fixed.point[0] > r.beardon_steps[0].fixed.point[0]);
}

TEST_CASE("conjecture_report: fixed points") {
  const auto s2 = ConvexBody::simplex(2);
  const auto r = conjecture_report(SemicontractionSpec::projective_linear((Eigen::Matrix2d() << 1, 1, 1, 2).finished()),
                                   s2, Eigen::Vector2d(0.5, 0.5));
  CHECK(r.verdict == Verdict::FixedPoint);
  CHECK((r.orbit.points.back() - Eigen::Vector2d((3 - std::sqrt(5.0)) / 2, (std::sqrt(5.0) - 1) / 2)).norm() < 1e-6);
  REQUIRE(r.beardon_point);
  CHECK((*r.beardon_point - r.orbit.points.back()).norm() < 1e-2);

  ReportSettings s = quick();
  s.conv = MetricConvention::half();
  const auto rot = conjecture_report(SemicontractionSpec::disk_rotation(std::sqrt(2.0)), ConvexBody::unit_ball(2),
                                     Eigen::Vector2d(0, 0), s);
  CHECK(rot.verdict == Verdict::FixedPoint);
  CHECK(rot.gromov_sup < 10.0);
}

TEST_CASE("report invariants across the benchmark suite") {
  for (const auto& b : benchmark_suite()) {
    CAPTURE(b.id);
    ReportSettings s = quick();
    s.conv = b.conv;
    const auto r = conjecture_report(b.map, b.body, b.start, s);
    const bool bounded_converged = r.classification.kind == OrbitClassification::Kind::Bounded &&
                                   r.orbit.stop_reason == StopReason::Converged;
    CHECK((r.verdict == Verdict::FixedPoint) == bounded_converged);
    if (r.single_face) {
      REQUIRE(r.face);
      for (const auto& c : r.clusters) {
        if (const auto* pf = std::get_if<PolytopeFace>(&*r.face)) {
          const auto active = active_constraints(b.body, c, s.cluster_tol);
          CHECK(std::includes(active.begin(), active.end(), pf->active.begin(), pf->active.end()));
        } else {
          CHECK((std::get<ExposedPoint>(*r.face).p - c).norm() <= 1e-3);
        }
      }
    }
    if (r.verdict == Verdict::StarOnly) {
      REQUIRE(r.star_witness);
      for (const auto& c : r.clusters) CHECK(segment_in_boundary(b.body, *r.star_witness, c));
    }
  }
}

TEST_CASE("projective-linear cluster counts are stable when doubling the run") {
  for (const auto& b : cone_benchmarks()) {
    if (!b.map.as<ProjectiveLinear>()) continue;
    CAPTURE(b.id);
    const auto o200 = iterate(b.map, b.start, b.body, 200, b.conv);
    const auto o400 = iterate(b.map, b.start, b.body, 400, b.conv);
    const auto k200 = classify_orbit(o200, b.body).kind;
    CHECK(k200 == classify_orbit(o400, b.body).kind);
    if (k200 == OrbitClassification::Kind::Escaping) {
      CHECK(limit_set(o200, b.body).size() == limit_set(o400, b.body).size());
    }
  }
}
