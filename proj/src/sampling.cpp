#include "hilbert/sampling.hpp"

#include <cmath>
#include <numbers>

namespace hilbert {

namespace {

constexpr int kHitAndRunSteps = 24;
constexpr double kMinSlack = 1e-12;

bool lives_in_simplex_plane(const ConvexBody& body) {
  if (body.kind() == ConvexBody::Kind::Simplex) return true;
  if (const auto* inter = body.as<Intersection>()) {
    for (const auto& part : inter->parts) {
      if (lives_in_simplex_plane(part)) return true;
    }
  }
  return false;
}

Point sample_simplex(int n, Rng& rng) {
  Point x(n);
  for (int i = 0; i < n; ++i) x[i] = -std::log(rng.open_uniform());
  return x / x.sum();
}

Point sample_ellipsoid(const Ellipsoid& e, Rng& rng) {
  const auto n = e.center.size();
  Point dir(n);
  for (Eigen::Index i = 0; i < n; ++i) dir[i] = rng.normal();
  dir.normalize();
  const double radius = std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
  // Q = L L^T, so the ball point v maps to c + L^{-T} v.
  const Eigen::LLT<Eigen::MatrixXd> llt(e.shape);
  const Point w = llt.matrixU().solve(radius * dir);
  return e.center + w;
}

}  // namespace

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u = open_uniform();
  const double v = uniform();
  const double r = std::sqrt(-2.0 * std::log(u));
  spare_ = r * std::sin(2.0 * std::numbers::pi * v);
  has_spare_ = true;
  return r * std::cos(2.0 * std::numbers::pi * v);
}

Point random_direction(const ConvexBody& body, Rng& rng) {
  Point d(body.dim());
  do {
    for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = rng.normal();
    if (lives_in_simplex_plane(body)) d.array() -= d.mean();
  } while (d.norm() < 1e-8);
  return d.normalized();
}

Point sample_interior(const ConvexBody& body, Rng& rng) {
  while (true) {
    Point x;
    if (const auto* s = body.as<StandardSimplex>()) {
      x = sample_simplex(s->n, rng);
    } else if (const auto* e = body.as<Ellipsoid>()) {
      x = sample_ellipsoid(*e, rng);
    } else {
      x = body.witness();
      for (int step = 0; step < kHitAndRunSteps; ++step) {
        const Point d = random_direction(body, rng);
        const LineInterval li = line_interval(body, x, d);
        x += rng.uniform(li.t_min, li.t_max) * d;
      }
    }
    if (interior_slack(body, x) > kMinSlack && contains(body, x) != Location::Outside) return x;
  }
}

std::vector<Point> sample_interior(const ConvexBody& body, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) out.push_back(sample_interior(body, rng));
  return out;
}

}  // namespace hilbert
