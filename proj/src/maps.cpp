#include "hilbert/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hilbert/sampling.hpp"

namespace hilbert {

namespace {

constexpr double kMinPairSeparation = 1e-6;

void check_cone_matrix(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() < 2) {
    throw Error(ErrorCode::InvalidMap, "cone matrix must be square with n >= 2");
  }
  if (!a.allFinite() || (a.array() < 0.0).any()) {
    throw Error(ErrorCode::InvalidMap, "cone matrix must be finite and nonnegative");
  }
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (!(a.row(i).maxCoeff() > 0.0)) {
      throw Error(ErrorCode::InvalidMap, "row " + std::to_string(i) + " has no positive entry");
    }
  }
}

void require_positive(const PointRef& x) {
  if (!x.allFinite() || !(x.array() > 0.0).all()) {
    throw Error(ErrorCode::OutsideDomain, "cone maps need strictly positive input");
  }
}

Point normalize_cone_image(const Point& y) {
  if (!y.allFinite()) throw Error(ErrorCode::MapLeftDomain, "non-finite image");
  if ((y.array() == 0.0).all()) throw Error(ErrorCode::ZeroImage, "map sent a positive vector to 0");
  if (!(y.array() > 0.0).all()) throw Error(ErrorCode::MapLeftDomain, "image left the open cone");
  return y / y.sum();
}

using Rep = SemicontractionSpec::Rep;

}  // namespace

SemicontractionSpec SemicontractionSpec::identity(int dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidMap, "identity needs a dimension");
  return SemicontractionSpec(std::make_shared<const Rep>(Rep{IdentityMap{dim}, dim, "identity", false}));
}

SemicontractionSpec SemicontractionSpec::projective_linear(Eigen::MatrixXd matrix) {
  check_cone_matrix(matrix);
  const int n = static_cast<int>(matrix.rows());
  return SemicontractionSpec(
      std::make_shared<const Rep>(Rep{ProjectiveLinear{std::move(matrix)}, n, "projective_linear", false}));
}

SemicontractionSpec SemicontractionSpec::topical(std::vector<TopicalRow> rows) {
  const int n = static_cast<int>(rows.size());
  if (n < 2) throw Error(ErrorCode::InvalidMap, "topical map needs n >= 2 rows");
  for (const auto& row : rows) {
    if (row.coeffs.size() != n) throw Error(ErrorCode::InvalidMap, "topical row length");
    if (!row.coeffs.allFinite() || (row.coeffs.array() < 0.0).any() || !(row.coeffs.maxCoeff() > 0.0)) {
      throw Error(ErrorCode::InvalidMap, "topical coefficients must be nonnegative with a positive entry");
    }
  }
  return SemicontractionSpec(std::make_shared<const Rep>(Rep{Topical{std::move(rows)}, n, "topical", false}));
}

SemicontractionSpec SemicontractionSpec::cone_power(int n, double exponent) {
  if (n < 2 || !std::isfinite(exponent)) throw Error(ErrorCode::InvalidMap, "cone power");
  return SemicontractionSpec(
      std::make_shared<const Rep>(Rep{ConePower{n, exponent}, n, "cone_power", std::abs(exponent) > 1.0}));
}

SemicontractionSpec SemicontractionSpec::klein(Eigen::MatrixXd matrix, const ConvexBody& body,
                                               std::uint64_t seed, int samples) {
  const auto n = matrix.rows() - 1;
  if (matrix.rows() != matrix.cols() || n < 1 || !matrix.allFinite()) {
    throw Error(ErrorCode::InvalidMap, "Klein map needs a finite (N+1)x(N+1) matrix");
  }
  if (n != body.dim()) throw Error(ErrorCode::DimensionMismatch, "Klein map vs body dimension");
  SemicontractionSpec spec(std::make_shared<const Rep>(
      Rep{KleinProjective{std::move(matrix)}, static_cast<int>(n), "klein", false}));
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const Point x = sample_interior(body, rng);
    Point y;
    try {
      y = apply(spec, x);
    } catch (const Error&) {
      throw Error(ErrorCode::InvalidMap, "Klein map sends an interior point to infinity");
    }
    if (contains(body, y) == Location::Outside || !(interior_slack(body, y) > 0.0)) {
      throw Error(ErrorCode::InvalidMap, "Klein map sends an interior point outside the body");
    }
  }
  return spec;
}

SemicontractionSpec SemicontractionSpec::affine(const Eigen::MatrixXd& linear, const Point& offset,
                                                const ConvexBody& body, std::uint64_t seed) {
  const auto n = linear.rows();
  if (linear.cols() != n || offset.size() != n) throw Error(ErrorCode::InvalidMap, "affine map shape");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  m.topLeftCorner(n, n) = linear;
  m.topRightCorner(n, 1) = offset;
  m(n, n) = 1.0;
  return klein(std::move(m), body, seed).with_id("affine");
}

SemicontractionSpec SemicontractionSpec::klein_boost(int dim, double rapidity, int axis) {
  if (dim < 1 || axis < 0 || axis >= dim) throw Error(ErrorCode::InvalidMap, "boost axis");
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim + 1, dim + 1);
  m(axis, axis) = std::cosh(rapidity);
  m(axis, dim) = std::sinh(rapidity);
  m(dim, axis) = std::sinh(rapidity);
  m(dim, dim) = std::cosh(rapidity);
  return klein(std::move(m), ConvexBody::unit_ball(dim)).with_id("boost");
}

SemicontractionSpec SemicontractionSpec::disk_rotation(double angle) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
  m(0, 0) = std::cos(angle);
  m(0, 1) = -std::sin(angle);
  m(1, 0) = std::sin(angle);
  m(1, 1) = std::cos(angle);
  return klein(std::move(m), ConvexBody::unit_ball(2)).with_id("rotation");
}

SemicontractionSpec SemicontractionSpec::composition(std::vector<SemicontractionSpec> maps) {
  if (maps.empty()) throw Error(ErrorCode::InvalidMap, "empty composition");
  const int n = maps.front().dim();
  bool experimental = false;
  for (const auto& m : maps) {
    if (m.dim() != n) throw Error(ErrorCode::InvalidMap, "composition dimensions do not chain");
    if (m.is_cone_map() != maps.front().is_cone_map() && m.as<IdentityMap>() == nullptr &&
        maps.front().as<IdentityMap>() == nullptr) {
      throw Error(ErrorCode::InvalidMap, "composition mixes cone maps and Klein maps");
    }
    experimental |= m.experimental();
  }
  return SemicontractionSpec(
      std::make_shared<const Rep>(Rep{Composition{std::move(maps)}, n, "composition", experimental}));
}

SemicontractionSpec SemicontractionSpec::averaged(SemicontractionSpec inner, Point basepoint, double weight) {
  if (basepoint.size() != inner.dim()) throw Error(ErrorCode::DimensionMismatch, "averaging basepoint");
  if (!(weight > 0.0 && weight < 1.0)) throw Error(ErrorCode::InvalidMap, "averaging weight in (0,1)");
  const int n = inner.dim();
  std::vector<SemicontractionSpec> wrapped{std::move(inner)};
  return SemicontractionSpec(std::make_shared<const Rep>(
      Rep{Averaged{std::move(wrapped), std::move(basepoint), weight}, n, "averaged", true}));
}

int SemicontractionSpec::dim() const noexcept { return rep_->dim; }

const std::string& SemicontractionSpec::id() const noexcept { return rep_->id; }

SemicontractionSpec SemicontractionSpec::with_id(std::string id) const {
  auto rep = std::make_shared<Rep>(*rep_);
  rep->id = std::move(id);
  return SemicontractionSpec(std::move(rep));
}

bool SemicontractionSpec::experimental() const noexcept { return rep_->experimental; }

bool SemicontractionSpec::is_cone_map() const noexcept {
  return std::visit(
      [](const auto& m) -> bool {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ProjectiveLinear> || std::is_same_v<T, Topical> ||
                      std::is_same_v<T, ConePower>) {
          return true;
        } else if constexpr (std::is_same_v<T, Composition>) {
          return std::any_of(m.maps.begin(), m.maps.end(), [](const auto& f) { return f.is_cone_map(); });
        } else if constexpr (std::is_same_v<T, Averaged>) {
          return m.inner.front().is_cone_map();
        } else {
          return false;
        }
      },
      rep_->variant);
}

Point apply(const SemicontractionSpec& map, const PointRef& x) {
  if (x.size() != map.dim()) throw Error(ErrorCode::DimensionMismatch, "map input dimension");
  if (map.as<IdentityMap>() != nullptr) return x;
  if (const auto* pl = map.as<ProjectiveLinear>()) {
    require_positive(x);
    return normalize_cone_image(pl->matrix * x);
  }
  if (const auto* top = map.as<Topical>()) {
    require_positive(x);
    Point y(x.size());
    for (std::size_t i = 0; i < top->rows.size(); ++i) {
      const auto& row = top->rows[i];
      const bool is_max = row.op == TopicalRow::Op::Max;
      double v = is_max ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (row.coeffs[j] > 0.0) {
          const double term = row.coeffs[j] * x[j];
          v = is_max ? std::max(v, term) : std::min(v, term);
        }
      }
      y[static_cast<Eigen::Index>(i)] = v;
    }
    return normalize_cone_image(y);
  }
  if (const auto* pw = map.as<ConePower>()) {
    require_positive(x);
    return normalize_cone_image(x.array().pow(pw->exponent).matrix());
  }
  if (const auto* kl = map.as<KleinProjective>()) {
    const auto n = x.size();
    const Eigen::VectorXd h = kl->matrix.leftCols(n) * x + kl->matrix.col(n);
    if (!(h[n] > 0.0) || !h.allFinite()) {
      throw Error(ErrorCode::MapLeftDomain, "projective image at or beyond infinity");
    }
    return h.head(n) / h[n];
  }
  if (const auto* comp = map.as<Composition>()) {
    Point y = x;
    for (const auto& f : comp->maps) y = apply(f, y);
    return y;
  }
  const auto& avg = *map.as<Averaged>();
  return (1.0 - avg.weight) * apply(avg.inner.front(), x) + avg.weight * avg.basepoint;
}

NonexpansivenessCertificate certify_on_pairs(const SemicontractionSpec& map, const ConvexBody& body,
                                             const std::vector<std::pair<Point, Point>>& pairs,
                                             const MetricConvention& conv) {
  NonexpansivenessCertificate cert;
  std::pair<Point, Point> worst;
  for (const auto& [x, y] : pairs) {
    if ((x - y).norm() < kMinPairSeparation) continue;
    double ratio = 0.0;
    try {
      const double before = hilbert_distance(body, x, y, conv);
      if (!(before > 0.0)) continue;
      ratio = hilbert_distance(body, apply(map, x), apply(map, y), conv) / before;
    } catch (const Error&) {
      continue;
    }
    ++cert.pairs_tested;
    if (ratio > cert.max_ratio) {
      cert.max_ratio = ratio;
      worst = {x, y};
    }
  }
  if (cert.max_ratio > 1.0 + 1e-9) cert.witness = worst;
  return cert;
}

NonexpansivenessCertificate certify_nonexpansive(const SemicontractionSpec& map, const ConvexBody& body,
                                                 int pairs, std::uint64_t seed,
                                                 const MetricConvention& conv) {
  Rng rng(seed);
  std::vector<std::pair<Point, Point>> sample;
  sample.reserve(static_cast<std::size_t>(std::max(pairs, 0)));
  for (int i = 0; i < pairs; ++i) {
    Point x = sample_interior(body, rng);
    Point y = sample_interior(body, rng);
    sample.emplace_back(std::move(x), std::move(y));
  }
  return certify_on_pairs(map, body, sample, conv);
}

double birkhoff_diameter(const Eigen::MatrixXd& matrix) {
  if (matrix.size() == 0 || !(matrix.array() > 0.0).all() || !matrix.allFinite()) {
    throw Error(ErrorCode::NonPositiveEntry, "Birkhoff diameter needs a strictly positive matrix");
  }
  double diameter = 0.0;
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    const Eigen::VectorXd cj = matrix.col(j) / matrix.col(j).sum();
    for (Eigen::Index l = j + 1; l < matrix.cols(); ++l) {
      const Eigen::VectorXd cl = matrix.col(l) / matrix.col(l).sum();
      diameter = std::max(diameter, simplex_distance(cj, cl));
    }
  }
  return diameter;
}

SemicontractionSpec beardon_approximant(const SemicontractionSpec& map, const Point& basepoint, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "Beardon approximant index must be >= 1");
  return SemicontractionSpec::averaged(map, basepoint, 1.0 / (k + 1.0))
      .with_id(map.id() + "_beardon_k" + std::to_string(k));
}

BanachResult banach_fixed_point(const SemicontractionSpec& map, const Point& start, int max_steps,
                                double tol) {
  BanachResult out{start, 0, false};
  for (int step = 1; step <= max_steps; ++step) {
    Point next = apply(map, out.point);
    const double moved = (next - out.point).norm();
    out.point = std::move(next);
    out.steps = step;
    if (moved <= tol * (1.0 + out.point.norm())) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace hilbert
