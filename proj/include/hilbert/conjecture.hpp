#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hilbert/dynamics.hpp"
#include "hilbert/geometry.hpp"
#include "hilbert/horo.hpp"
#include "hilbert/maps.hpp"

namespace hilbert {

enum class Verdict { FixedPoint, SingleFace, StarOnly, Inconclusive };

std::string_view to_string(Verdict verdict) noexcept;

struct ReportSettings {
  int max_iter = 200;
  MetricConvention conv;
  std::uint64_t seed = 1;
  /// BoundaryProximity slack; the body's default when absent.
  std::optional<double> boundary;
  double tail_fraction = 0.25;
  double cluster_tol = 1e-4;
  double chain_tol = 1e-6;
  double gv_tol = 1e-2;
  int probes = 400;
  /// Offset of the second start point used for the orbit-independence check.
  double perturbation = 1e-2;
  bool beardon = true;
};

/// Euclidean accumulation points of the tail, projected to the boundary along
/// rays from the body's witness.
std::vector<Point> limit_set(const Orbit& orbit, const ConvexBody& body, double tail_fraction = 0.25,
                             double cluster_tol = 1e-4);

struct AttractorFace {
  std::optional<Face> face;
  bool single_face = false;
};

/// Smallest closed face containing every cluster. Polytopes intersect active
/// sets at `tol`; strictly convex bodies accept exactly one cluster.
AttractorFace attractor_face(const std::vector<Point>& clusters, const ConvexBody& body,
                             double tol = 1e-4);

/// A boundary point z with [z, w] in the boundary for every cluster w.
std::optional<Point> star_witness(const std::vector<Point>& clusters, const ConvexBody& body,
                                  double tol = 1e-4);

/// Two faces agree when their active sets match (polytopes) or their
/// exposed points are within `tol`.
bool same_face(const std::optional<Face>& a, const std::optional<Face>& b, double tol = 1e-3);

struct BeardonStep {
  int k = 0;
  double max_ratio = 0.0;
  BanachResult fixed;
};

struct LimitSetReport {
  std::vector<Point> clusters;
  std::optional<Face> face;
  bool single_face = false;
  std::optional<Point> star_witness;
  std::optional<Point> beardon_point;
  Verdict verdict = Verdict::Inconclusive;
  double gromov_sup = 0.0;

  Orbit orbit;
  OrbitClassification classification;
  std::optional<DriftEstimates> estimates;
  bool monotone_escape = false;
  std::optional<KarlssonCertificate> certificate;
  std::optional<GvGap> gv;
  bool chain_holds = false;

  Point perturbed_start;
  Orbit perturbed_orbit;
  std::vector<Point> perturbed_clusters;
  std::optional<Face> perturbed_face;
  bool faces_coincide = false;

  std::vector<BeardonStep> beardon_steps;
  std::vector<std::string> notes;
};

LimitSetReport conjecture_report(const SemicontractionSpec& map, const ConvexBody& body,
                                 const PointRef& x0, const ReportSettings& settings = {});

}  // namespace hilbert
