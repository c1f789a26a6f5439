#include "hilbert/benchmarks.hpp"

#include <cmath>
#include <numbers>

#include "hilbert/sampling.hpp"

namespace hilbert {

namespace {

using std::numbers::pi;

SemicontractionSpec toward(const ConvexBody& body, const Point& target, double lambda) {
  const Eigen::MatrixXd linear = lambda * Eigen::MatrixXd::Identity(body.dim(), body.dim());
  return SemicontractionSpec::affine(linear, (1.0 - lambda) * target, body);
}

Point random_boundary_point(const ConvexBody& body, Rng& rng) {
  const double phi = rng.uniform(0.0, 2.0 * pi);
  const Point& w = body.witness();
  return project_to_boundary(body, w, w + Eigen::Vector2d(std::cos(phi), std::sin(phi)));
}

Point random_vertex(const ConvexBody& body, Rng& rng) {
  const auto outline = outline_2d(body);
  const auto& v = outline[static_cast<std::size_t>(rng.index(static_cast<int>(outline.size())))];
  return Eigen::Vector2d(v.x(), v.y());
}

SemicontractionSpec rotated_boost(double rapidity, double theta, const ConvexBody& disk) {
  Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
  rot.topLeftCorner<2, 2>() << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  Eigen::Matrix3d boost = Eigen::Matrix3d::Identity();
  boost(0, 0) = boost(2, 2) = std::cosh(rapidity);
  boost(0, 2) = boost(2, 0) = std::sinh(rapidity);
  return SemicontractionSpec::klein(rot * boost * rot.transpose(), disk);
}

}  // namespace

std::vector<Benchmark> planar_benchmarks(std::uint64_t seed) {
  Rng rng(seed);
  const ConvexBody bodies[] = {
      ConvexBody::box(Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1)),
      ConvexBody::regular_polygon(3),
      ConvexBody::regular_polygon(5),
      ConvexBody::unit_ball(2),
  };
  const MetricConvention half = MetricConvention::half();
  constexpr int kBody[10] = {0, 1, 2, 3, 0, 1, 2, 3, 0, 3};
  std::vector<Benchmark> out;
  for (int i = 0; i < 10; ++i) {
    const ConvexBody& body = bodies[kBody[i]];
    const bool disk = body.kind() == ConvexBody::Kind::Ellipsoid;
    const MetricConvention conv = disk ? half : MetricConvention::one();
    const double lambda = rng.uniform(0.4, 0.8);
    const std::string tag = body.label() + "_" + std::to_string(i);
    // Central starts keep the transient a_n - n tau small against the few
    // dozen iterates an escaping orbit gets before the proximity stop.
    Point start = body.witness() + 0.5 * (sample_interior(body, rng) - body.witness());
    switch (i) {
      case 0:
      case 5: {
        const Point target = sample_interior(body, rng);
        out.push_back({tag + "_interior", body, toward(body, target, lambda), start, conv});
        break;
      }
      case 1:
      case 4:
      case 6:
      case 7: {
        const Point target = random_boundary_point(body, rng);
        out.push_back({tag + "_boundary", body, toward(body, target, lambda), start, conv});
        break;
      }
      case 2:
      case 8: {
        const Point target = random_vertex(body, rng);
        out.push_back({tag + "_vertex", body, toward(body, target, lambda), start, conv});
        break;
      }
      case 3: {
        const double theta = rng.uniform(0.0, 2.0 * pi);
        out.push_back({tag + "_boost", body, rotated_boost(rng.uniform(0.3, 0.8), theta, body),
                       Point(Point::Zero(2)), conv});
        break;
      }
      default: {
        out.push_back({tag + "_rotation", body, SemicontractionSpec::disk_rotation(rng.uniform(0.5, 3.0)),
                       Point(Point::Zero(2)), conv});
        break;
      }
    }
    out.back().map = out.back().map.with_id(out.back().id);
  }
  return out;
}

std::vector<Benchmark> cone_benchmarks(std::uint64_t seed) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const ConvexBody s2 = ConvexBody::simplex(2);
  const ConvexBody s3 = ConvexBody::simplex(3);
  const Point mid2 = Eigen::Vector2d(0.5, 0.5);
  const Point mid3 = Eigen::Vector3d::Constant(1.0 / 3.0);
  const MetricConvention one = MetricConvention::one();

  Eigen::MatrixXd positive(3, 3);
  for (Eigen::Index i = 0; i < 9; ++i) positive.data()[i] = rng.uniform(0.5, 2.0);

  std::vector<TopicalRow> rows{
      {TopicalRow::Op::Max, Eigen::Vector3d(2.0, 1.0, 0.0)},
      {TopicalRow::Op::Max, Eigen::Vector3d(1.0, 1.0, 0.0)},
      {TopicalRow::Op::Min, Eigen::Vector3d(0.0, 1.0, 1.0)},
  };

  std::vector<Benchmark> out{
      {"diag_2_1", s2, SemicontractionSpec::projective_linear(Eigen::Vector2d(2, 1).asDiagonal().toDenseMatrix()),
       mid2, one},
      {"perron_1_1_1_2", s2, SemicontractionSpec::projective_linear((Eigen::Matrix2d() << 1, 1, 1, 2).finished()),
       mid2, one},
      {"identity", s2, SemicontractionSpec::identity(2), mid2, one},
      {"diag_2_2_1", s3,
       SemicontractionSpec::projective_linear(Eigen::Vector3d(2, 2, 1).asDiagonal().toDenseMatrix()), mid3, one},
      {"diag_3_2_1", s3,
       SemicontractionSpec::projective_linear(Eigen::Vector3d(3, 2, 1).asDiagonal().toDenseMatrix()), mid3, one},
      {"positive_3x3", s3, SemicontractionSpec::projective_linear(positive), mid3, one},
      {"topical_max_min", s3, SemicontractionSpec::topical(rows), mid3, one},
  };
  for (auto& b : out) b.map = b.map.with_id(b.id);
  return out;
}

std::vector<Benchmark> benchmark_suite(std::uint64_t seed) {
  auto out = cone_benchmarks(seed);
  for (auto& b : planar_benchmarks(seed)) out.push_back(std::move(b));
  return out;
}

}  // namespace hilbert
