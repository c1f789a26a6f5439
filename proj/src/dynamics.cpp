#include "hilbert/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hilbert/sampling.hpp"

namespace hilbert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEscapeSlack = 1e-6;
constexpr int kRandomRestarts = 8;
constexpr int kTailSeeds = 4;

bool has_exact_slacks(const ConvexBody& body) { return body.kind() == ConvexBody::Kind::Simplex; }

bool in_simplex_plane(const ConvexBody& body) {
  if (body.kind() == ConvexBody::Kind::Simplex) return true;
  if (const auto* inter = body.as<Intersection>()) {
    return std::any_of(inter->parts.begin(), inter->parts.end(), in_simplex_plane);
  }
  return false;
}

std::vector<Point> hull_directions(const ConvexBody& body) {
  std::vector<Point> dirs;
  const int n = body.dim();
  if (in_simplex_plane(body)) {
    for (int i = 0; i + 1 < n; ++i) {
      Point u = Point::Zero(n);
      u[i] = 1.0;
      u[i + 1] = -1.0;
      dirs.push_back(u.normalized());
    }
  } else {
    for (int i = 0; i < n; ++i) dirs.push_back(Point::Unit(n, i));
  }
  return dirs;
}

double least_squares_slope(const std::vector<double>& a, std::size_t first) {
  const std::size_t last = a.size() - 1;
  if (last <= first) return 0.0;
  const double count = static_cast<double>(last - first + 1);
  double kmean = 0.0;
  double amean = 0.0;
  for (std::size_t k = first; k <= last; ++k) {
    kmean += static_cast<double>(k);
    amean += a[k];
  }
  kmean /= count;
  amean /= count;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = first; k <= last; ++k) {
    const double dk = static_cast<double>(k) - kmean;
    num += dk * (a[k] - amean);
    den += dk * dk;
  }
  return num / den;
}

// Derivative-free minimization of p -> d(p, f(p)) under a budget of
// displacement evaluations. Every evaluated value is an upper bound for D_f.
class DisplacementSearch {
 public:
  DisplacementSearch(const SemicontractionSpec& map, const ConvexBody& body, const MetricConvention& conv,
                     int budget)
      : map_(map), body_(body), conv_(conv), budget_(budget), dirs_(hull_directions(body)) {}

  double best() const noexcept { return best_; }
  int used() const noexcept { return used_; }
  bool exhausted() const noexcept { return used_ >= budget_; }

  void offer(double value) { best_ = std::min(best_, value); }

  double displacement(const Point& p) {
    if (exhausted()) return kInf;
    ++used_;
    try {
      const Point fp = apply(map_, p);
      if (contains(body_, fp) == Location::Outside || !(interior_slack(body_, fp) > 0.0)) return kInf;
      const double d = hilbert_distance(body_, p, fp, conv_);
      best_ = std::min(best_, d);
      return d;
    } catch (const Error&) {
      return kInf;
    }
  }

  void local_search(Point p, int budget) {
    const int stop_at = std::min(budget_, used_ + budget);
    double value = displacement(p);
    double shrink = 0.5;
    while (used_ < stop_at && shrink > 1e-9) {
      for (const auto& u : dirs_) {
        if (used_ >= stop_at) break;
        LineInterval li;
        try {
          li = line_interval(body_, p, u);
        } catch (const Error&) {
          continue;
        }
        const auto [t, v] = golden_section(p, u, shrink * li.t_min, shrink * li.t_max, stop_at);
        if (v < value) {
          value = v;
          p += t * u;
        }
      }
      shrink *= 0.5;
    }
  }

 private:
  std::pair<double, double> golden_section(const Point& p, const Point& u, double lo, double hi, int stop_at) {
    constexpr double kRatio = 0.6180339887498949;
    constexpr int kSteps = 10;
    double a = lo;
    double b = hi;
    double c = b - kRatio * (b - a);
    double d = a + kRatio * (b - a);
    double fc = displacement(p + c * u);
    double fd = displacement(p + d * u);
    for (int i = 0; i < kSteps && used_ < stop_at; ++i) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kRatio * (b - a);
        fc = displacement(p + c * u);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kRatio * (b - a);
        fd = displacement(p + d * u);
      }
    }
    return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
  }

  const SemicontractionSpec& map_;
  const ConvexBody& body_;
  MetricConvention conv_;
  int budget_;
  int used_ = 0;
  double best_ = kInf;
  std::vector<Point> dirs_;
};

}  // namespace

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::MaxIter: return "MaxIter";
    case StopReason::BoundaryProximity: return "BoundaryProximity";
    case StopReason::Converged: return "Converged";
  }
  return "?";
}

std::string_view to_string(OrbitClassification::Kind kind) noexcept {
  switch (kind) {
    case OrbitClassification::Kind::Bounded: return "Bounded";
    case OrbitClassification::Kind::Escaping: return "Escaping";
    case OrbitClassification::Kind::Undetermined: return "Undetermined";
  }
  return "?";
}

double default_proximity_threshold(const ConvexBody& body) {
  return has_exact_slacks(body) ? 1e-12 : 1e-8;
}

Orbit iterate(const SemicontractionSpec& map, const PointRef& x0, const ConvexBody& body, int max_iter,
              const MetricConvention& conv, std::optional<double> proximity) {
  if (map.dim() != body.dim()) throw Error(ErrorCode::DimensionMismatch, "map and body dimensions differ");
  if (x0.size() != body.dim()) throw Error(ErrorCode::DimensionMismatch, "start point dimension");
  if (map.is_cone_map() && body.kind() != ConvexBody::Kind::Simplex) {
    throw Error(ErrorCode::InvalidMap, "cone maps act on the standard simplex");
  }
  if (contains(body, x0) != Location::Interior) {
    throw Error(ErrorCode::OutsideDomain, "start point must be interior");
  }
  const double threshold = proximity.value_or(default_proximity_threshold(body));

  Orbit orbit;
  orbit.map_id = map.id();
  orbit.conv = conv;
  orbit.points.push_back(x0);
  orbit.from_start.push_back(0.0);
  orbit.stop_reason = StopReason::MaxIter;
  for (int k = 1; k <= max_iter; ++k) {
    Point y = apply(map, orbit.points.back());
    if (contains(body, y) == Location::Outside) {
      throw Error(ErrorCode::MapLeftDomain, "iterate " + std::to_string(k) + " left the domain");
    }
    const double slack = interior_slack(body, y);
    if (!(slack > 0.0)) {
      orbit.stop_reason = StopReason::BoundaryProximity;
      break;
    }
    const double step = hilbert_distance(body, orbit.points.back(), y, conv);
    const double reach = hilbert_distance(body, orbit.points.front(), y, conv);
    orbit.points.push_back(std::move(y));
    orbit.displacements.push_back(step);
    orbit.from_start.push_back(reach);
    if (slack < threshold) {
      orbit.stop_reason = StopReason::BoundaryProximity;
      break;
    }
    if (step < kConvergedDisplacement) {
      orbit.stop_reason = StopReason::Converged;
      break;
    }
  }
  return orbit;
}

DriftEstimates drift_estimates(const Orbit& orbit, const SemicontractionSpec& map, const ConvexBody& body,
                               int probes, std::uint64_t seed) {
  const int n = orbit.length();
  if (n < 1 || (n < 8 && orbit.stop_reason != StopReason::Converged)) {
    throw Error(ErrorCode::OrbitTooShort, "drift estimates need >= 8 iterates or a converged orbit");
  }
  DriftEstimates est;
  const std::size_t first = static_cast<std::size_t>(n - std::max(1, n / 4));
  est.window = n - static_cast<int>(first) + 1;
  est.tau_upper = kInf;
  for (int m = 1; m <= n; ++m) est.tau_upper = std::min(est.tau_upper, orbit.from_start[m] / m);
  // A converged orbit stays put, so a_m / m -> 0 along its continuation.
  if (orbit.stop_reason == StopReason::Converged) est.tau_upper = 0.0;
  // tau = inf a_m / m, so any slope above tau_upper is a known overestimate.
  est.tau_hat = std::clamp(least_squares_slope(orbit.from_start, first), 0.0, est.tau_upper);
  est.delta_hat = orbit.displacements.back();

  DisplacementSearch search(map, body, orbit.conv, std::max(probes, 0));
  const int tail = std::min(kTailSeeds, n);
  for (int i = 0; i < tail; ++i) search.offer(orbit.displacements[static_cast<std::size_t>(n - 1 - i)]);

  const int per_start = std::max(1, std::max(probes, 0) / (kRandomRestarts + 1));
  search.local_search(orbit.points[static_cast<std::size_t>(n - 1)], per_start);
  Rng rng(seed);
  for (int r = 0; r < kRandomRestarts && !search.exhausted(); ++r) {
    search.local_search(sample_interior(body, rng), per_start);
  }
  est.D_upper = search.best();
  est.probe_evaluations = search.used();
  return est;
}

OrbitClassification classify_orbit(const Orbit& orbit, const ConvexBody& body) {
  OrbitClassification out;
  const auto& a = orbit.from_start;
  const int n = orbit.length();
  if (orbit.stop_reason == StopReason::Converged) {
    out.kind = OrbitClassification::Kind::Bounded;
    out.radius = *std::max_element(a.begin(), a.end());
    out.note = "converged to a fixed point";
    return out;
  }
  if (n < 8) {
    out.note = "orbit shorter than 8 iterates; rerun with a larger max_iter";
    return out;
  }
  const int quarter_start = n - std::max(1, n / 4);
  double min_gap = kInf;
  bool increasing = a[static_cast<std::size_t>(n)] > a[static_cast<std::size_t>(quarter_start)];
  for (int k = quarter_start; k <= n; ++k) {
    min_gap = std::min(min_gap, interior_slack(body, orbit.points[static_cast<std::size_t>(k)]));
    if (k > quarter_start) increasing = increasing && a[k] >= a[k - 1] - 1e-12;
  }
  if (min_gap < kEscapeSlack && increasing) {
    out.kind = OrbitClassification::Kind::Escaping;
    out.min_boundary_gap = min_gap;
    out.note = "tail approaches the boundary with growing distance";
    return out;
  }
  const auto mid = a.begin() + (n + 1) / 2;
  const double first_half = *std::max_element(a.begin(), mid);
  const double second_half = *std::max_element(mid, a.end());
  if (second_half <= first_half + 1e-9) {
    out.kind = OrbitClassification::Kind::Bounded;
    out.radius = std::max(first_half, second_half);
    out.note = "distance from start stopped growing";
    return out;
  }
  out.note = "neither bounded nor escaping yet; rerun with a larger max_iter";
  return out;
}

bool is_monotone_escape(const Orbit& orbit, const ConvexBody& body) {
  const auto& a = orbit.from_start;
  for (std::size_t k = 1; k < a.size(); ++k) {
    if (a[k] < a[k - 1] - 1e-12) return false;
  }
  return a.size() >= 2 && classify_orbit(orbit, body).kind == OrbitClassification::Kind::Escaping;
}

GvGap gv_gap(const DriftEstimates& estimates, const Orbit& orbit, const ConvexBody& body,
             const std::optional<KarlssonCertificate>& certificate, double tol) {
  GvGap out;
  out.d_tau_gap = std::abs(estimates.D_upper - estimates.tau_hat);

  std::size_t begin = 0;
  std::size_t end = 0;
  std::optional<HorofunctionApproximant> h;
  if (certificate) {
    h = certificate->h;
    out.certificate_slack = certificate->slack;
    end = static_cast<std::size_t>(certificate->checkable);
    begin = end / 2;
  } else if (orbit.stop_reason == StopReason::Converged) {
    // A fixed point p gives the payoff-zero witness h_p.
    h.emplace(body, orbit.points.back(), orbit.points.front(), orbit.conv);
    end = orbit.points.size() - 1;
  } else {
    throw Error(ErrorCode::MissingCertificate, "escaping orbit needs a Karlsson certificate");
  }
  out.horo_payoff = kInf;
  for (std::size_t k = begin; k < end; ++k) {
    out.horo_payoff = std::min(out.horo_payoff, evaluate(*h, orbit.points[k]) - evaluate(*h, orbit.points[k + 1]));
  }
  if (!std::isfinite(out.horo_payoff)) out.horo_payoff = 0.0;
  out.witnesses_max = out.horo_payoff >= estimates.tau_hat - tol;
  return out;
}

}  // namespace hilbert
