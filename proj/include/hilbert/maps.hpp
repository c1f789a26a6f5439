#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hilbert/geometry.hpp"
#include "hilbert/metric.hpp"

namespace hilbert {

class SemicontractionSpec;

struct IdentityMap {
  int dim = 0;
};

/// x -> A x / |A x|_1 on the open simplex; A nonnegative without zero rows.
struct ProjectiveLinear {
  Eigen::MatrixXd matrix;
};

struct TopicalRow {
  enum class Op { Max, Min };
  Op op = Op::Max;
  Eigen::VectorXd coeffs;
};

/// (T x)_i = max_j or min_j of c_ij x_j over c_ij > 0, then renormalized.
struct Topical {
  std::vector<TopicalRow> rows;
};

/// x -> x^p / |x^p|_1 coordinatewise. Nonexpansive only for |p| <= 1; kept as
/// a negative control for certification.
struct ConePower {
  int n = 0;
  double exponent = 1.0;
};

/// Projective action of an (N+1)x(N+1) matrix on homogeneous coordinates [x; 1].
struct KleinProjective {
  Eigen::MatrixXd matrix;
};

/// Applied front to back: maps[0] first.
struct Composition {
  std::vector<SemicontractionSpec> maps;
};

/// x -> (1 - w) f(x) + w x0: Euclidean averaging toward a basepoint.
struct Averaged {
  std::vector<SemicontractionSpec> inner;  // exactly one element
  Point basepoint;
  double weight = 0.0;
};

class SemicontractionSpec {
 public:
  static SemicontractionSpec identity(int dim);
  static SemicontractionSpec projective_linear(Eigen::MatrixXd matrix);
  static SemicontractionSpec topical(std::vector<TopicalRow> rows);
  static SemicontractionSpec cone_power(int n, double exponent);
  /// Certifies on `samples` seeded interior points of `body` that images stay interior.
  static SemicontractionSpec klein(Eigen::MatrixXd matrix, const ConvexBody& body,
                                   std::uint64_t seed = 7, int samples = 1000);
  /// x -> A x + c as a Klein map.
  static SemicontractionSpec affine(const Eigen::MatrixXd& linear, const Point& offset,
                                    const ConvexBody& body, std::uint64_t seed = 7);
  /// Lorentz boost of rapidity t along coordinate `axis` of the unit ball.
  static SemicontractionSpec klein_boost(int dim, double rapidity, int axis = 0);
  /// Rotation of the unit disk by `angle` radians.
  static SemicontractionSpec disk_rotation(double angle);
  static SemicontractionSpec composition(std::vector<SemicontractionSpec> maps);
  static SemicontractionSpec averaged(SemicontractionSpec inner, Point basepoint, double weight);

  int dim() const noexcept;
  const std::string& id() const noexcept;
  SemicontractionSpec with_id(std::string id) const;
  /// True for maps whose contraction is not guaranteed by construction.
  bool experimental() const noexcept;
  /// Cone maps live on the standard simplex.
  bool is_cone_map() const noexcept;

  template <typename T>
  const T* as() const noexcept {
    return std::get_if<T>(&rep_->variant);
  }

  struct Rep {
    std::variant<IdentityMap, ProjectiveLinear, Topical, ConePower, KleinProjective, Composition,
                 Averaged>
        variant;
    int dim = 0;
    std::string id;
    bool experimental = false;
  };

 private:
  explicit SemicontractionSpec(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

Point apply(const SemicontractionSpec& map, const PointRef& x);

struct NonexpansivenessCertificate {
  int pairs_tested = 0;
  double max_ratio = 0.0;
  std::optional<std::pair<Point, Point>> witness;
};

/// Largest d(f x, f y) / d(x, y) over seeded random interior pairs.
NonexpansivenessCertificate certify_nonexpansive(const SemicontractionSpec& map,
                                                 const ConvexBody& body, int pairs,
                                                 std::uint64_t seed,
                                                 const MetricConvention& conv = {});

/// Same measurement on a caller-supplied list of pairs.
NonexpansivenessCertificate certify_on_pairs(const SemicontractionSpec& map, const ConvexBody& body,
                                             const std::vector<std::pair<Point, Point>>& pairs,
                                             const MetricConvention& conv = {});

/// Projective diameter of the image of the positive orthant under A.
double birkhoff_diameter(const Eigen::MatrixXd& matrix);

/// Averaging toward the basepoint with weight 1/(k+1). Flagged experimental.
SemicontractionSpec beardon_approximant(const SemicontractionSpec& map, const Point& basepoint,
                                        int k);

struct BanachResult {
  Point point;
  int steps = 0;
  bool converged = false;
};

/// Picard iteration until successive iterates agree to `tol` (Euclidean,
/// relative to 1 + |x|) or `max_steps` is reached.
BanachResult banach_fixed_point(const SemicontractionSpec& map, const Point& start,
                                int max_steps = 100000, double tol = 1e-14);

}  // namespace hilbert
