#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hilbert/error.hpp"

namespace hilbert {

using Point = Eigen::VectorXd;
using PointRef = Eigen::Ref<const Eigen::VectorXd>;

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr int kMaxDimension = 16;

enum class Location { Interior, Boundary, Outside };

std::string_view to_string(Location loc) noexcept;

class ConvexBody;

/// {x : a_i . x <= b_i}. Rows are stored with unit Euclidean norm so that the
/// slack b_i - a_i . x is the distance to the supporting hyperplane.
struct HPolytope {
  Eigen::MatrixXd normals;
  Eigen::VectorXd offsets;
};

/// {x : (x - c)^T Q (x - c) < 1} with Q symmetric positive definite.
struct Ellipsoid {
  Point center;
  Eigen::MatrixXd shape;
};

/// Open standard simplex {x in R^n : x_i > 0, sum x_i = 1}, kept in ambient
/// coordinates. Its geometric dimension is n - 1.
struct StandardSimplex {
  int n = 0;
};

struct Intersection {
  std::vector<ConvexBody> parts;
};

/// A bounded convex domain with a certified interior point. Cheap to copy:
/// the representation is shared and immutable.
class ConvexBody {
 public:
  enum class Kind { Polytope, Ellipsoid, Simplex, Intersection };

  static ConvexBody polytope(Eigen::MatrixXd normals, Eigen::VectorXd offsets,
                             std::optional<Point> witness = std::nullopt);
  static ConvexBody box(const Point& lower, const Point& upper);
  static ConvexBody regular_polygon(int sides, double circumradius = 1.0);
  static ConvexBody ellipsoid(Point center, Eigen::MatrixXd shape);
  static ConvexBody unit_ball(int dim);
  static ConvexBody simplex(int n);
  static ConvexBody intersection(std::vector<ConvexBody> parts,
                                 std::optional<Point> witness = std::nullopt);

  Kind kind() const noexcept;
  /// Ambient dimension: length of the coordinate vectors.
  int dim() const noexcept;
  /// Dimension of the affine hull (dim() - 1 for the simplex).
  int intrinsic_dim() const noexcept;
  const Point& witness() const noexcept;
  const std::string& label() const noexcept;
  ConvexBody with_label(std::string label) const;

  template <typename T>
  const T* as() const noexcept;

  struct Rep;

 private:
  explicit ConvexBody(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

struct ConvexBody::Rep {
  std::variant<HPolytope, Ellipsoid, StandardSimplex, Intersection> shape;
  int dim = 0;
  Point witness;
  std::string label;
};

template <typename T>
const T* ConvexBody::as() const noexcept {
  return std::get_if<T>(&rep_->shape);
}

/// Boundary points cut by the line p(t) = x + t (y - x).
/// `t_max_excess` is t_max - 1 evaluated without cancellation; it is what the
/// cross-ratio needs when y sits close to the boundary.
struct Chord {
  Point a;
  Point b;
  double t_min = 0.0;
  double t_max = 0.0;
  double t_max_excess = 0.0;
};

struct PolytopeFace {
  std::vector<int> active;
  std::vector<Point> vertices;
};

struct ExposedPoint {
  Point p;
};

using Face = std::variant<PolytopeFace, ExposedPoint>;

Location contains(const ConvexBody& body, const PointRef& p, double tol = kDefaultTolerance);

/// Smallest normalized slack over the defining constraints; positive inside.
/// Polytopes and simplices report Euclidean distance to the nearest facet,
/// ellipsoids the radial gap 1 - sqrt(q(p)).
double interior_slack(const ConvexBody& body, const PointRef& p);

Chord chord(const ConvexBody& body, const PointRef& x, const PointRef& y);

/// Parameter interval of the line x + t d inside the body. x must be interior.
/// Throws Unbounded when either side of the interval is infinite.
struct LineInterval {
  double t_min = 0.0;
  double t_max = 0.0;
  double t_max_excess = 0.0;
};
LineInterval line_interval(const ConvexBody& body, const PointRef& x, const PointRef& direction);

/// Up-front boundedness test. Bodies with an ellipsoid or simplex part are
/// bounded; polyhedral ones are bounded iff no direction d has a_i . d <= 0
/// for every constraint. Chord queries detect the same failure lazily.
bool is_bounded(const ConvexBody& body);

/// Boundary point hit by the ray from `from` through `through`.
Point project_to_boundary(const ConvexBody& body, const PointRef& from, const PointRef& through);

Face minimal_face(const ConvexBody& body, const PointRef& p, double tol = kDefaultTolerance);

/// Indices of constraints tight at p (polytopes and simplices only; empty otherwise).
std::vector<int> active_constraints(const ConvexBody& body, const PointRef& p,
                                    double tol = kDefaultTolerance);

/// Vertices of the polytope face cut out by `active` (ambient dim <= 3 for
/// H-polytopes; any dimension for the simplex).
std::vector<Point> face_vertices(const ConvexBody& body, const std::vector<int>& active,
                                 double tol = kDefaultTolerance);

bool segment_in_boundary(const ConvexBody& body, const PointRef& p, const PointRef& q,
                         double tol = kDefaultTolerance, int samples = 33);

/// Polygon outline for 2D drawing (vertices in order, or a sampled ellipse).
std::vector<Eigen::Vector2d> outline_2d(const ConvexBody& body, int ellipse_samples = 128);

/// Planar coordinates used to draw points of bodies with intrinsic dimension 2.
Eigen::Vector2d planar_coordinates(const ConvexBody& body, const PointRef& p);

}  // namespace hilbert
