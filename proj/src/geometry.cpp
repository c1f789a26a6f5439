#include "hilbert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hilbert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dim(const ConvexBody& body, const PointRef& p) {
  if (p.size() != body.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point has dimension " + std::to_string(p.size()) +
                                                  ", body has " + std::to_string(body.dim()));
  }
}

void require_finite(const PointRef& p) {
  if (!p.allFinite()) throw Error(ErrorCode::OutsideDomain, "non-finite coordinate");
}

// Slacks are accumulated in extended precision; near the boundary they are
// the small differences the cross-ratio depends on.
Eigen::VectorXd polytope_slacks(const HPolytope& poly, const PointRef& p) {
  Eigen::VectorXd s(poly.offsets.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    long double acc = poly.offsets[i];
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      acc -= static_cast<long double>(poly.normals(i, j)) * p[j];
    }
    s[i] = static_cast<double>(acc);
  }
  return s;
}

// 1 - (p - c)^T Q (p - c), together with q itself.
std::pair<double, double> ellipsoid_gap(const Ellipsoid& e, const PointRef& p) {
  const Eigen::Index n = p.size();
  long double q = 0.0L;
  for (Eigen::Index i = 0; i < n; ++i) {
    const long double wi = static_cast<long double>(p[i]) - e.center[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      const long double wj = static_cast<long double>(p[j]) - e.center[j];
      q += wi * static_cast<long double>(e.shape(i, j)) * wj;
    }
  }
  return {static_cast<double>(1.0L - q), static_cast<double>(q)};
}

double simplex_sum_error(const PointRef& p) {
  long double sum = 0.0L;
  for (Eigen::Index i = 0; i < p.size(); ++i) sum += p[i];
  return static_cast<double>(sum - 1.0L);
}

Location combine(bool any_outside, bool all_interior) {
  if (any_outside) return Location::Outside;
  return all_interior ? Location::Interior : Location::Boundary;
}

// Interval of the line x + t d given slacks at x and at x + d and the rates
// r_i = s_i(x) - s_i(x + d) computed from d directly.
LineInterval slack_interval(const Eigen::VectorXd& sx, const Eigen::VectorXd& sy,
                            const Eigen::VectorXd& rate) {
  LineInterval out{-kInf, kInf, kInf};
  for (Eigen::Index i = 0; i < sx.size(); ++i) {
    const double r = rate[i];
    if (r > 0.0) {
      const double t = sx[i] / r;
      if (t < out.t_max) {
        out.t_max = t;
        out.t_max_excess = sy[i] / r;
      }
    } else if (r < 0.0) {
      const double t = sx[i] / r;
      out.t_min = std::max(out.t_min, t);
    }
  }
  return out;
}

LineInterval ellipsoid_interval(const Ellipsoid& e, const PointRef& x, const PointRef& y, const PointRef& d) {
  const Eigen::VectorXd qd = e.shape * d;
  const double a = d.dot(qd);
  if (!(a > 0.0)) throw Error(ErrorCode::DegenerateChord, "zero direction");
  const double b = qd.dot(x - e.center);
  const double by = qd.dot(y - e.center);
  const double gx = ellipsoid_gap(e, x).first;
  const double gy = ellipsoid_gap(e, y).first;

  LineInterval out;
  const double disc = std::sqrt(b * b + a * gx);
  if (b >= 0.0) {
    out.t_min = (-b - disc) / a;
    out.t_max = gx / (b + disc);
  } else {
    out.t_max = (-b + disc) / a;
    out.t_min = -gx / (-b + disc);
  }
  // Same quadratic re-centred at y = x + d, so that t_max - 1 is a root.
  const double disc_y = std::sqrt(std::max(0.0, by * by + a * gy));
  out.t_max_excess = by >= 0.0 ? gy / (by + disc_y) : (-by + disc_y) / a;
  return out;
}

// `y` is the point at t = 1. Callers that own y pass it directly rather than
// x + d, whose rounding swamps small slacks.
LineInterval interval_impl(const ConvexBody& body, const PointRef& x, const PointRef& y, const PointRef& d) {
  if (const auto* poly = body.as<HPolytope>()) {
    const Eigen::VectorXd rate = poly->normals * d;
    return slack_interval(polytope_slacks(*poly, x), polytope_slacks(*poly, y), rate);
  }
  if (const auto* e = body.as<Ellipsoid>()) return ellipsoid_interval(*e, x, y, d);
  if (body.as<StandardSimplex>() != nullptr) return slack_interval(x, y, -d);
  const auto& parts = body.as<Intersection>()->parts;
  LineInterval out{-kInf, kInf, kInf};
  for (const auto& part : parts) {
    const LineInterval li = interval_impl(part, x, y, d);
    out.t_min = std::max(out.t_min, li.t_min);
    if (li.t_max < out.t_max) {
      out.t_max = li.t_max;
      out.t_max_excess = li.t_max_excess;
    }
  }
  return out;
}

LineInterval checked_interval(const ConvexBody& body, const PointRef& x, const PointRef& y, const PointRef& direction) {
  LineInterval li = interval_impl(body, x, y, direction);
  if (!std::isfinite(li.t_min) || !std::isfinite(li.t_max)) {
    throw Error(ErrorCode::Unbounded, "line meets the domain in an infinite interval");
  }
  return li;
}

std::vector<Point> polytope_vertices(const HPolytope& poly, const std::vector<int>& active,
                                     double tol) {
  const int n = static_cast<int>(poly.normals.cols());
  const int m = static_cast<int>(poly.normals.rows());
  std::vector<Point> out;
  if (n > 3 || m < n) return out;

  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  while (true) {
    Eigen::MatrixXd a(n, n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
      a.row(i) = poly.normals.row(pick[i]);
      b[i] = poly.offsets[pick[i]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.rank() == n) {
      const Point v = lu.solve(b);
      const Eigen::VectorXd s = polytope_slacks(poly, v);
      bool ok = true;
      for (int i = 0; i < m && ok; ++i) {
        ok = s[i] >= -tol * (1.0 + std::abs(poly.offsets[i]));
      }
      for (int idx : active) {
        if (!ok) break;
        ok = std::abs(s[idx]) <= tol * (1.0 + std::abs(poly.offsets[idx]));
      }
      const bool dup = std::any_of(out.begin(), out.end(),
                                   [&](const Point& w) { return (w - v).norm() <= 1e3 * tol; });
      if (ok && !dup) out.push_back(v);
    }
    int k = n - 1;
    while (k >= 0 && pick[k] == m - n + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

// A nonzero d with a_i . d <= 0 for every row exists iff the polyhedron is
// unbounded. If one exists, one exists on an extreme ray of that cone, which
// is cut out by dim - 1 independent rows (or the rows have a common kernel).
bool has_recession_direction(const Eigen::MatrixXd& normals) {
  const int m = static_cast<int>(normals.rows());
  const int n = static_cast<int>(normals.cols());
  constexpr double kTol = 1e-12;
  Eigen::FullPivLU<Eigen::MatrixXd> full(normals);
  if (full.rank() < n) return true;
  auto recedes = [&](const Eigen::VectorXd& d) {
    for (double sign : {1.0, -1.0}) {
      if (((sign * normals * d).array() <= kTol * d.norm()).all()) return true;
    }
    return false;
  };
  if (n == 1) return recedes(Eigen::VectorXd::Ones(1));
  const int r = n - 1;
  if (m < r) return true;
  std::vector<int> pick(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    Eigen::MatrixXd a(r, n);
    for (int i = 0; i < r; ++i) a.row(i) = normals.row(pick[static_cast<std::size_t>(i)]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.rank() == r && recedes(lu.kernel().col(0))) return true;
    int k = r - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == m - r + k) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < r; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return false;
}

void collect_normals(const ConvexBody& body, std::vector<Eigen::MatrixXd>& rows, bool& curved) {
  if (const auto* poly = body.as<HPolytope>()) {
    rows.push_back(poly->normals);
  } else if (const auto* inter = body.as<Intersection>()) {
    for (const auto& part : inter->parts) collect_normals(part, rows, curved);
  } else {
    curved = true;
  }
}

bool strictly_inside(const ConvexBody& body, const PointRef& p) {
  return contains(body, p, kDefaultTolerance) == Location::Interior;
}

std::string default_label(const ConvexBody::Rep& rep) {
  return std::visit(
      [&](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HPolytope>) return "polytope" + std::to_string(rep.dim);
        if constexpr (std::is_same_v<T, Ellipsoid>) return "ellipsoid" + std::to_string(rep.dim);
        if constexpr (std::is_same_v<T, StandardSimplex>) return "simplex" + std::to_string(s.n);
        if constexpr (std::is_same_v<T, Intersection>) return "intersection" + std::to_string(rep.dim);
      },
      rep.shape);
}

void check_dimension(int dim) {
  if (dim < 1 || dim > kMaxDimension) {
    throw Error(ErrorCode::InvalidBody, "dimension must be in [1, 16], got " + std::to_string(dim));
  }
}

}  // namespace

std::string_view to_string(Location loc) noexcept {
  switch (loc) {
    case Location::Interior: return "Interior";
    case Location::Boundary: return "Boundary";
    case Location::Outside: return "Outside";
  }
  return "?";
}

ConvexBody ConvexBody::polytope(Eigen::MatrixXd normals, Eigen::VectorXd offsets,
                                std::optional<Point> witness) {
  const int dim = static_cast<int>(normals.cols());
  check_dimension(dim);
  if (normals.rows() != offsets.size() || normals.rows() == 0) {
    throw Error(ErrorCode::InvalidBody, "normals and offsets must have the same nonzero length");
  }
  if (!normals.allFinite() || !offsets.allFinite()) {
    throw Error(ErrorCode::InvalidBody, "non-finite constraint data");
  }
  for (Eigen::Index i = 0; i < normals.rows(); ++i) {
    const double norm = normals.row(i).norm();
    if (!(norm > 0.0)) {
      throw Error(ErrorCode::InvalidBody, "constraint row " + std::to_string(i) + " is zero");
    }
    normals.row(i) /= norm;
    offsets[i] /= norm;
  }

  auto rep = std::make_shared<Rep>();
  rep->shape = HPolytope{std::move(normals), std::move(offsets)};
  rep->dim = dim;
  const auto& poly = std::get<HPolytope>(rep->shape);
  ConvexBody probe(rep);

  std::vector<Point> candidates;
  if (witness) {
    if (witness->size() != dim) throw Error(ErrorCode::DimensionMismatch, "witness dimension");
    candidates.push_back(*witness);
  } else {
    const auto verts = polytope_vertices(poly, {}, kDefaultTolerance);
    if (!verts.empty()) {
      Point mean = Point::Zero(dim);
      for (const auto& v : verts) mean += v;
      candidates.push_back(mean / static_cast<double>(verts.size()));
    }
    candidates.push_back(Point::Zero(dim));
    const Point inward = -poly.normals.colwise().sum().transpose();
    for (double s : {1.0, 0.1, 10.0}) candidates.push_back(s * inward);
  }
  for (const auto& c : candidates) {
    rep->witness = c;
    if (strictly_inside(probe, c)) {
      rep->label = default_label(*rep);
      return probe;
    }
  }
  throw Error(ErrorCode::InvalidBody,
              witness ? "witness is not interior" : "could not find an interior point; supply a witness");
}

ConvexBody ConvexBody::box(const Point& lower, const Point& upper) {
  const int n = static_cast<int>(lower.size());
  if (upper.size() != n) throw Error(ErrorCode::DimensionMismatch, "box bounds");
  if (!((upper - lower).array() > 0.0).all()) {
    throw Error(ErrorCode::InvalidBody, "box needs lower < upper in every coordinate");
  }
  Eigen::MatrixXd normals(2 * n, n);
  Eigen::VectorXd offsets(2 * n);
  normals.setZero();
  for (int i = 0; i < n; ++i) {
    normals(2 * i, i) = 1.0;
    offsets[2 * i] = upper[i];
    normals(2 * i + 1, i) = -1.0;
    offsets[2 * i + 1] = -lower[i];
  }
  auto body = polytope(std::move(normals), std::move(offsets), Point((lower + upper) / 2.0));
  return body.with_label(n == 2 ? "square" : "box" + std::to_string(n));
}

ConvexBody ConvexBody::regular_polygon(int sides, double circumradius) {
  if (sides < 3 || !(circumradius > 0.0)) {
    throw Error(ErrorCode::InvalidBody, "regular polygon needs >= 3 sides and positive radius");
  }
  Eigen::MatrixXd normals(sides, 2);
  Eigen::VectorXd offsets(sides);
  const double apothem = circumradius * std::cos(std::numbers::pi / sides);
  for (int k = 0; k < sides; ++k) {
    const double theta = 2.0 * std::numbers::pi * (k + 0.5) / sides;
    normals(k, 0) = std::cos(theta);
    normals(k, 1) = std::sin(theta);
    offsets[k] = apothem;
  }
  auto body = polytope(std::move(normals), std::move(offsets), Point(Point::Zero(2)));
  if (sides == 3) return body.with_label("triangle");
  if (sides == 5) return body.with_label("pentagon");
  return body.with_label("polygon" + std::to_string(sides));
}

ConvexBody ConvexBody::ellipsoid(Point center, Eigen::MatrixXd shape) {
  const int dim = static_cast<int>(center.size());
  check_dimension(dim);
  if (shape.rows() != dim || shape.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "ellipsoid shape matrix");
  }
  if (!shape.isApprox(shape.transpose(), 1e-12) || !shape.allFinite() || !center.allFinite()) {
    throw Error(ErrorCode::InvalidBody, "ellipsoid shape must be finite and symmetric");
  }
  if (Eigen::LLT<Eigen::MatrixXd>(shape).info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidBody, "ellipsoid shape must be positive definite");
  }
  auto rep = std::make_shared<Rep>();
  rep->witness = center;
  rep->shape = Ellipsoid{std::move(center), std::move(shape)};
  rep->dim = dim;
  rep->label = default_label(*rep);
  return ConvexBody(rep);
}

ConvexBody ConvexBody::unit_ball(int dim) {
  check_dimension(dim);
  auto body = ellipsoid(Point::Zero(dim), Eigen::MatrixXd::Identity(dim, dim));
  return body.with_label(dim == 2 ? "disk" : "ball" + std::to_string(dim));
}

ConvexBody ConvexBody::simplex(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidBody, "simplex needs n >= 2 coordinates");
  check_dimension(n);
  auto rep = std::make_shared<Rep>();
  rep->shape = StandardSimplex{n};
  rep->dim = n;
  rep->witness = Point::Constant(n, 1.0 / n);
  rep->label = default_label(*rep);
  return ConvexBody(rep);
}

ConvexBody ConvexBody::intersection(std::vector<ConvexBody> parts, std::optional<Point> witness) {
  if (parts.empty()) throw Error(ErrorCode::InvalidBody, "empty intersection");
  const int dim = parts.front().dim();
  for (const auto& p : parts) {
    if (p.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "intersection parts");
  }
  std::vector<Point> candidates;
  if (witness) {
    if (witness->size() != dim) throw Error(ErrorCode::DimensionMismatch, "witness dimension");
    candidates.push_back(*witness);
  } else {
    Point mean = Point::Zero(dim);
    for (const auto& p : parts) {
      candidates.push_back(p.witness());
      mean += p.witness();
    }
    candidates.push_back(mean / static_cast<double>(parts.size()));
  }
  auto rep = std::make_shared<Rep>();
  rep->shape = Intersection{std::move(parts)};
  rep->dim = dim;
  rep->label = default_label(*rep);
  ConvexBody body(rep);
  for (const auto& c : candidates) {
    rep->witness = c;
    if (strictly_inside(body, c)) return body;
  }
  throw Error(ErrorCode::InvalidBody, "intersection has no certified interior point");
}

ConvexBody::Kind ConvexBody::kind() const noexcept {
  switch (rep_->shape.index()) {
    case 0: return Kind::Polytope;
    case 1: return Kind::Ellipsoid;
    case 2: return Kind::Simplex;
    default: return Kind::Intersection;
  }
}

int ConvexBody::dim() const noexcept { return rep_->dim; }

int ConvexBody::intrinsic_dim() const noexcept {
  if (kind() == Kind::Simplex) return rep_->dim - 1;
  if (kind() == Kind::Intersection) return as<Intersection>()->parts.front().intrinsic_dim();
  return rep_->dim;
}

const Point& ConvexBody::witness() const noexcept { return rep_->witness; }

const std::string& ConvexBody::label() const noexcept { return rep_->label; }

ConvexBody ConvexBody::with_label(std::string label) const {
  auto rep = std::make_shared<Rep>(*rep_);
  rep->label = std::move(label);
  return ConvexBody(rep);
}

Location contains(const ConvexBody& body, const PointRef& p, double tol) {
  require_dim(body, p);
  if (!p.allFinite()) return Location::Outside;
  if (const auto* poly = body.as<HPolytope>()) {
    const Eigen::VectorXd s = polytope_slacks(*poly, p);
    bool outside = false;
    bool interior = true;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      const double band = tol * (1.0 + std::abs(poly->offsets[i]));
      outside |= s[i] < -band;
      interior &= s[i] > band;
    }
    return combine(outside, interior);
  }
  if (const auto* e = body.as<Ellipsoid>()) {
    const auto [gap, q] = ellipsoid_gap(*e, p);
    const double radial = gap / (1.0 + std::sqrt(std::max(q, 0.0)));
    const double band = tol * (1.0 + p.norm());
    return combine(radial < -band, radial > band);
  }
  if (body.as<StandardSimplex>() != nullptr) {
    if (std::abs(simplex_sum_error(p)) > 2.0 * tol) return Location::Outside;
    const double m = p.minCoeff();
    return combine(m < -tol, m > tol);
  }
  bool outside = false;
  bool interior = true;
  for (const auto& part : body.as<Intersection>()->parts) {
    const Location loc = contains(part, p, tol);
    outside |= loc == Location::Outside;
    interior &= loc == Location::Interior;
  }
  return combine(outside, interior);
}

double interior_slack(const ConvexBody& body, const PointRef& p) {
  require_dim(body, p);
  if (const auto* poly = body.as<HPolytope>()) return polytope_slacks(*poly, p).minCoeff();
  if (const auto* e = body.as<Ellipsoid>()) {
    const auto [gap, q] = ellipsoid_gap(*e, p);
    return gap / (1.0 + std::sqrt(std::max(q, 0.0)));
  }
  if (body.as<StandardSimplex>() != nullptr) return p.minCoeff();
  double s = kInf;
  for (const auto& part : body.as<Intersection>()->parts) s = std::min(s, interior_slack(part, p));
  return s;
}

LineInterval line_interval(const ConvexBody& body, const PointRef& x, const PointRef& direction) {
  require_dim(body, x);
  require_dim(body, direction);
  if (!direction.allFinite() || direction.norm() == 0.0) {
    throw Error(ErrorCode::DegenerateChord, "zero direction");
  }
  return checked_interval(body, x, x + direction, direction);
}

Chord chord(const ConvexBody& body, const PointRef& x, const PointRef& y) {
  require_dim(body, x);
  require_dim(body, y);
  require_finite(x);
  require_finite(y);
  for (const PointRef& p : {x, y}) {
    if (contains(body, p) == Location::Outside || !(interior_slack(body, p) > 0.0)) {
      throw Error(ErrorCode::OutsideDomain, "chord endpoints must be interior");
    }
  }
  const Point d = y - x;
  const double degeneracy = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + x.norm());
  if (d.norm() <= degeneracy) throw Error(ErrorCode::DegenerateChord, "x and y coincide");

  const LineInterval li = checked_interval(body, x, y, d);
  Chord c;
  c.t_min = li.t_min;
  c.t_max = li.t_max;
  c.t_max_excess = li.t_max_excess;
  c.a = x + li.t_min * d;
  c.b = y + li.t_max_excess * d;
  return c;
}

bool is_bounded(const ConvexBody& body) {
  std::vector<Eigen::MatrixXd> rows;
  bool curved = false;
  collect_normals(body, rows, curved);
  if (curved) return true;
  Eigen::Index total = 0;
  for (const auto& r : rows) total += r.rows();
  Eigen::MatrixXd all(total, body.dim());
  Eigen::Index at = 0;
  for (const auto& r : rows) {
    all.middleRows(at, r.rows()) = r;
    at += r.rows();
  }
  return !has_recession_direction(all);
}

Point project_to_boundary(const ConvexBody& body, const PointRef& from, const PointRef& through) {
  const Point d = through - from;
  const LineInterval li = line_interval(body, from, d);
  return from + li.t_max * d;
}

std::vector<int> active_constraints(const ConvexBody& body, const PointRef& p, double tol) {
  require_dim(body, p);
  std::vector<int> active;
  if (const auto* poly = body.as<HPolytope>()) {
    const Eigen::VectorXd s = polytope_slacks(*poly, p);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (std::abs(s[i]) <= tol * (1.0 + std::abs(poly->offsets[i]))) active.push_back(static_cast<int>(i));
    }
  } else if (body.as<StandardSimplex>() != nullptr) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      if (std::abs(p[i]) <= tol) active.push_back(static_cast<int>(i));
    }
  }
  return active;
}

std::vector<Point> face_vertices(const ConvexBody& body, const std::vector<int>& active, double tol) {
  if (const auto* poly = body.as<HPolytope>()) return polytope_vertices(*poly, active, tol);
  std::vector<Point> out;
  if (const auto* s = body.as<StandardSimplex>()) {
    for (int j = 0; j < s->n; ++j) {
      if (std::find(active.begin(), active.end(), j) == active.end()) {
        out.push_back(Point::Unit(s->n, j));
      }
    }
  }
  return out;
}

Face minimal_face(const ConvexBody& body, const PointRef& p, double tol) {
  if (contains(body, p, tol) != Location::Boundary) {
    throw Error(ErrorCode::NotOnBoundary, "minimal_face needs a boundary point");
  }
  if (body.kind() == ConvexBody::Kind::Polytope || body.kind() == ConvexBody::Kind::Simplex) {
    PolytopeFace face;
    face.active = active_constraints(body, p, tol);
    if (face.active.empty()) throw Error(ErrorCode::NotOnBoundary, "no tight constraint");
    face.vertices = face_vertices(body, face.active, tol);
    return face;
  }
  return ExposedPoint{p};
}

bool segment_in_boundary(const ConvexBody& body, const PointRef& p, const PointRef& q, double tol,
                         int samples) {
  if (contains(body, p, tol) != Location::Boundary || contains(body, q, tol) != Location::Boundary) {
    throw Error(ErrorCode::NotOnBoundary, "segment endpoints must lie on the boundary");
  }
  if (body.kind() == ConvexBody::Kind::Polytope || body.kind() == ConvexBody::Kind::Simplex) {
    const auto ap = active_constraints(body, p, tol);
    const auto aq = active_constraints(body, q, tol);
    return std::any_of(ap.begin(), ap.end(), [&](int i) {
      return std::find(aq.begin(), aq.end(), i) != aq.end();
    });
  }
  const int n = std::max(samples, 2);
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / (n - 1);
    const Point r = (1.0 - s) * p + s * q;
    if (contains(body, r, tol) != Location::Boundary) return false;
  }
  return true;
}

Eigen::Vector2d planar_coordinates(const ConvexBody& body, const PointRef& p) {
  if (body.kind() == ConvexBody::Kind::Simplex && body.dim() == 3) {
    return Eigen::Vector2d(p[1] + 0.5 * p[2], 0.5 * std::sqrt(3.0) * p[2]);
  }
  if (body.dim() == 2) return Eigen::Vector2d(p[0], p[1]);
  throw Error(ErrorCode::DimensionMismatch, "planar coordinates need a 2-dimensional body");
}

std::vector<Eigen::Vector2d> outline_2d(const ConvexBody& body, int ellipse_samples) {
  std::vector<Eigen::Vector2d> out;
  if (body.kind() == ConvexBody::Kind::Simplex && body.dim() == 3) {
    for (int j = 0; j < 3; ++j) out.push_back(planar_coordinates(body, Point::Unit(3, j)));
    return out;
  }
  if (body.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "outline needs a planar body");
  if (const auto* poly = body.as<HPolytope>()) {
    const auto verts = polytope_vertices(*poly, {}, kDefaultTolerance);
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (const auto& v : verts) {
      out.emplace_back(v[0], v[1]);
      centroid += out.back();
    }
    centroid /= static_cast<double>(std::max<std::size_t>(out.size(), 1));
    std::sort(out.begin(), out.end(), [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
      return std::atan2(a.y() - centroid.y(), a.x() - centroid.x()) <
             std::atan2(b.y() - centroid.y(), b.x() - centroid.x());
    });
    return out;
  }
  for (int k = 0; k < ellipse_samples; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / ellipse_samples;
    const Point dir = Eigen::Vector2d(std::cos(theta), std::sin(theta));
    const Point b = project_to_boundary(body, body.witness(), body.witness() + dir);
    out.emplace_back(b[0], b[1]);
  }
  return out;
}

}  // namespace hilbert
