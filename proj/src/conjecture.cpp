#include "hilbert/conjecture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hilbert/sampling.hpp"

namespace hilbert {

namespace {

bool is_polyhedral(const ConvexBody& body) {
  return body.kind() == ConvexBody::Kind::Polytope || body.kind() == ConvexBody::Kind::Simplex;
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Union-find single linkage over a small point set.
std::vector<std::vector<std::size_t>> single_linkage(const std::vector<Point>& pts, double tol) {
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if ((pts[i] - pts[j]).norm() <= tol) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> slot(pts.size(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return groups;
}

Point perturbed_start(const ConvexBody& body, const PointRef& x0, double offset, std::uint64_t seed) {
  Rng rng(seed);
  const Point u = random_direction(body, rng);
  double step = offset;
  for (int i = 0; i < 60; ++i, step *= 0.5) {
    Point x1 = x0 + step * u;
    if (contains(body, x1) == Location::Interior) return x1;
  }
  return x0;
}

struct FaceSummary {
  std::vector<Point> clusters;
  std::optional<Face> face;
  bool single_face = false;
};

FaceSummary summarize(const Orbit& orbit, const ConvexBody& body, const OrbitClassification& cls,
                      const ReportSettings& s) {
  FaceSummary out;
  if (cls.kind == OrbitClassification::Kind::Escaping) {
    out.clusters = limit_set(orbit, body, s.tail_fraction, s.cluster_tol);
    auto af = attractor_face(out.clusters, body, s.cluster_tol);
    out.face = std::move(af.face);
    out.single_face = af.single_face;
  } else if (cls.kind == OrbitClassification::Kind::Bounded && orbit.stop_reason == StopReason::Converged) {
    out.clusters.push_back(orbit.points.back());
  }
  return out;
}

}  // namespace

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::FixedPoint: return "FixedPoint";
    case Verdict::SingleFace: return "SingleFace";
    case Verdict::StarOnly: return "StarOnly";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<Point> limit_set(const Orbit& orbit, const ConvexBody& body, double tail_fraction,
                             double cluster_tol) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "tail_fraction must lie in (0, 1]");
  }
  if (classify_orbit(orbit, body).kind != OrbitClassification::Kind::Escaping) {
    throw Error(ErrorCode::NotEscaping, "limit sets are computed for escaping orbits only");
  }
  const auto total = orbit.points.size();
  const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(tail_fraction * total)));
  const std::vector<Point> tail(orbit.points.end() - static_cast<long>(std::min(count, total)), orbit.points.end());

  std::vector<Point> reps;
  for (const auto& group : single_linkage(tail, cluster_tol)) {
    Point mean = Point::Zero(body.dim());
    for (auto i : group) mean += tail[i];
    mean /= static_cast<double>(group.size());
    reps.push_back(project_to_boundary(body, body.witness(), mean));
  }
  return reps;
}

AttractorFace attractor_face(const std::vector<Point>& clusters, const ConvexBody& body, double tol) {
  if (clusters.empty()) throw Error(ErrorCode::InvalidArgument, "no clusters");
  for (const auto& c : clusters) {
    if (contains(body, c, tol) != Location::Boundary) {
      throw Error(ErrorCode::NotOnBoundary, "cluster is not a boundary point");
    }
  }
  AttractorFace out;
  if (is_polyhedral(body)) {
    std::vector<int> common = active_constraints(body, clusters.front(), tol);
    for (std::size_t i = 1; i < clusters.size(); ++i) {
      common = intersect_sorted(common, active_constraints(body, clusters[i], tol));
    }
    if (common.empty()) return out;
    out.face = PolytopeFace{common, face_vertices(body, common, tol)};
    out.single_face = true;
    return out;
  }
  if (clusters.size() == 1) {
    out.face = ExposedPoint{clusters.front()};
    out.single_face = true;
  }
  return out;
}

std::optional<Point> star_witness(const std::vector<Point>& clusters, const ConvexBody& body, double tol) {
  if (clusters.empty()) return std::nullopt;
  std::vector<Point> candidates = clusters;
  if (is_polyhedral(body)) {
    for (const auto& c : clusters) {
      for (auto& v : face_vertices(body, active_constraints(body, c, tol), tol)) candidates.push_back(std::move(v));
    }
  }
  for (const auto& z : candidates) {
    const bool star = std::all_of(clusters.begin(), clusters.end(), [&](const Point& w) {
      try {
        return segment_in_boundary(body, z, w, tol);
      } catch (const Error&) {
        return false;
      }
    });
    if (star) return z;
  }
  return std::nullopt;
}

bool same_face(const std::optional<Face>& a, const std::optional<Face>& b, double tol) {
  if (!a || !b) return !a && !b;
  if (const auto* pa = std::get_if<PolytopeFace>(&*a)) {
    const auto* pb = std::get_if<PolytopeFace>(&*b);
    return pb != nullptr && pa->active == pb->active;
  }
  const auto* ea = std::get_if<ExposedPoint>(&*a);
  const auto* eb = std::get_if<ExposedPoint>(&*b);
  return ea != nullptr && eb != nullptr && (ea->p - eb->p).norm() <= tol;
}

LimitSetReport conjecture_report(const SemicontractionSpec& map, const ConvexBody& body, const PointRef& x0,
                                 const ReportSettings& s) {
  LimitSetReport r;
  r.orbit = iterate(map, x0, body, s.max_iter, s.conv, s.boundary);
  r.classification = classify_orbit(r.orbit, body);
  const bool escaping = r.classification.kind == OrbitClassification::Kind::Escaping;
  const bool converged = r.orbit.stop_reason == StopReason::Converged;

  try {
    r.estimates = drift_estimates(r.orbit, map, body, s.probes, s.seed);
    const auto& e = *r.estimates;
    r.chain_holds = e.tau_hat >= 0.0 && e.tau_hat <= e.D_upper + s.chain_tol &&
                    e.D_upper <= e.delta_hat + s.chain_tol;
  } catch (const Error& err) {
    r.notes.emplace_back(err.what());
  }
  r.monotone_escape = is_monotone_escape(r.orbit, body);

  auto primary = summarize(r.orbit, body, r.classification, s);
  r.clusters = std::move(primary.clusters);
  r.face = std::move(primary.face);
  r.single_face = primary.single_face;
  if (escaping) {
    r.star_witness = star_witness(r.clusters, body, s.cluster_tol);
    if (r.estimates) {
      try {
        r.certificate = karlsson_certificate(r.orbit, body, r.estimates->tau_hat);
      } catch (const Error& err) {
        r.notes.emplace_back(err.what());
      }
    }
  }
  if (r.estimates && (r.certificate || converged)) {
    r.gv = gv_gap(*r.estimates, r.orbit, body, r.certificate, s.gv_tol);
  }
  if (escaping && r.estimates && r.estimates->delta_hat < 1e-6) {
    r.notes.emplace_back("escaping with vanishing step displacement");
  }

  r.perturbed_start = perturbed_start(body, x0, s.perturbation, s.seed);
  r.perturbed_orbit = iterate(map, r.perturbed_start, body, s.max_iter, s.conv, s.boundary);
  const auto cls2 = classify_orbit(r.perturbed_orbit, body);
  auto second = summarize(r.perturbed_orbit, body, cls2, s);
  r.perturbed_clusters = std::move(second.clusters);
  r.perturbed_face = std::move(second.face);
  // Limit faces exist only for escaping orbits; a bounded orbit has none.
  const bool escaping2 = cls2.kind == OrbitClassification::Kind::Escaping;
  r.faces_coincide = escaping == escaping2 && same_face(r.face, r.perturbed_face);
  {
    const auto n1 = r.orbit.points.size();
    const auto n2 = r.perturbed_orbit.points.size();
    const auto n = std::min(n1, n2);
    const auto from = n - std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(s.tail_fraction * n)));
    for (auto k = from; k < n; ++k) {
      try {
        r.gromov_sup = std::max(r.gromov_sup, gromov_product(body, r.orbit.points[k], r.perturbed_orbit.points[k],
                                                             x0, s.conv));
      } catch (const Error&) {
      }
    }
  }

  if (s.beardon) {
    const Point base = x0;
    for (int k : {9, 99, 999}) {
      BeardonStep step;
      step.k = k;
      const auto fk = beardon_approximant(map, base, k);
      step.max_ratio = certify_nonexpansive(fk, body, 200, s.seed, s.conv).max_ratio;
      if (step.max_ratio < 1.0) {
        try {
          step.fixed = banach_fixed_point(fk, base);
        } catch (const Error& err) {
          r.notes.emplace_back(err.what());
        }
      } else {
        r.notes.emplace_back("approximant k=" + std::to_string(k) + " failed contraction certification");
      }
      r.beardon_steps.push_back(std::move(step));
    }
    // Fixed points of f_k drift toward the limit at rate O(1/k); report the
    // largest certified k.
    for (auto it = r.beardon_steps.rbegin(); it != r.beardon_steps.rend(); ++it) {
      if (it->max_ratio < 1.0 && it->fixed.converged) {
        r.beardon_point = it->fixed.point;
        break;
      }
    }
  }

  if (r.classification.kind == OrbitClassification::Kind::Bounded && converged) {
    r.verdict = Verdict::FixedPoint;
  } else if (escaping && r.single_face) {
    r.verdict = Verdict::SingleFace;
  } else if (escaping && r.star_witness) {
    r.verdict = Verdict::StarOnly;
  } else {
    r.verdict = Verdict::Inconclusive;
  }
  return r;
}

}  // namespace hilbert
