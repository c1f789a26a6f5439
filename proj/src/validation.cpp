#include "hilbert/validation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "hilbert/benchmarks.hpp"
#include "hilbert/conjecture.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/sampling.hpp"

namespace hilbert {

namespace {

SuiteResult at_most(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured <= tol, measured, tol, std::move(detail)};
}

SuiteResult disk_metric() {
  const auto disk = ConvexBody::unit_ball(2);
  const double d = hilbert_distance(disk, Eigen::Vector2d(0, 0), Eigen::Vector2d(0.5, 0), MetricConvention::half());
  return at_most("disk_metric", std::abs(d - std::atanh(0.5)), 1e-9, "d(0,(0.5,0)) at scale 1/2 vs atanh(0.5)");
}

SuiteResult simplex_vs_chord(std::uint64_t seed, bool mismatch) {
  const MetricConvention conv = mismatch ? MetricConvention::half() : MetricConvention::one();
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n) {
    const auto body = ConvexBody::simplex(n);
    const auto xs = sample_interior(body, 1000, seed + static_cast<std::uint64_t>(n));
    const auto ys = sample_interior(body, 1000, seed + 100 + static_cast<std::uint64_t>(n));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      worst = std::max(worst, std::abs(simplex_distance(xs[i], ys[i]) - hilbert_distance(body, xs[i], ys[i], conv)));
    }
  }
  return at_most("simplex_vs_chord", worst, 1e-8, "1000 pairs on each of the simplices of dimension 1, 2, 3");
}

SuiteResult metric_axioms(std::uint64_t seed) {
  const auto square = ConvexBody::box(Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1));
  const auto disk = ConvexBody::unit_ball(2);
  const auto lens = ConvexBody::intersection(
      {square, ConvexBody::ellipsoid(Eigen::Vector2d(0.3, 0.0), Eigen::Matrix2d::Identity() / 1.44)});
  const ConvexBody bodies[] = {disk, square, ConvexBody::simplex(3), lens};
  double worst = 0.0;
  bool symmetric = true;
  std::uint64_t s = seed;
  for (const auto& body : bodies) {
    const auto pts = sample_interior(body, 3 * 2500, ++s);
    for (std::size_t i = 0; i + 2 < pts.size(); i += 3) {
      const double xy = hilbert_distance(body, pts[i], pts[i + 1]);
      const double yz = hilbert_distance(body, pts[i + 1], pts[i + 2]);
      const double xz = hilbert_distance(body, pts[i], pts[i + 2]);
      worst = std::max(worst, xz - xy - yz);
      symmetric = symmetric && xy == hilbert_distance(body, pts[i + 1], pts[i]) &&
                  hilbert_distance(body, pts[i], pts[i]) == 0.0;
    }
  }
  auto r = at_most("metric_axioms", std::max(worst, 0.0), 1e-9, "10000 triples: disk, square, 2-simplex, lens");
  if (!symmetric) {
    r.passed = false;
    r.detail += "; symmetry or identity failed";
  }
  return r;
}

SuiteResult poincare_horofunctions() {
  const auto disk = ConvexBody::unit_ball(2);
  const MetricConvention half = MetricConvention::half();
  double worst = 0.0;
  bool origin_zero = true;
  for (double angle : {0.0, 2.0, 4.0}) {
    const PoincarePoint zeta = std::polar(1.0, angle);
    const Eigen::Vector2d anchor = poincare_to_klein(0.9999 * zeta);
    const double offset = hilbert_distance(disk, anchor, Eigen::Vector2d(0, 0), half);
    origin_zero = origin_zero && poincare_horofunction(zeta, 0.0) == 0.0;
    for (int i = 0; i < 21; ++i) {
      for (int j = 0; j < 21; ++j) {
        const PoincarePoint z(-0.63 + 0.063 * i, -0.63 + 0.063 * j);
        const double phi = hilbert_distance(disk, anchor, poincare_to_klein(z), half) - offset;
        worst = std::max(worst, std::abs(phi - poincare_horofunction(zeta, z)));
      }
    }
  }
  auto r = at_most("poincare_horofunction", worst, 1e-3, "21x21 grid, anchors at radius 0.9999");
  if (!origin_zero) {
    r.passed = false;
    r.detail += "; h(0) != 0";
  }
  return r;
}

SuiteResult birkhoff(std::uint64_t seed) {
  const Eigen::Matrix2d a = (Eigen::Matrix2d() << 1, 1, 1, 2).finished();
  const auto map = SemicontractionSpec::projective_linear(a);
  const double bound = std::tanh(birkhoff_diameter(a) / 4.0);
  const auto cert = certify_nonexpansive(map, ConvexBody::simplex(2), 10000, seed);
  SuiteResult r{"birkhoff_contraction", cert.max_ratio <= bound + 1e-9 && cert.max_ratio >= 0.16, cert.max_ratio,
                bound + 1e-9, "max ratio over 10000 pairs must lie in [0.16, tanh(diameter/4)]"};
  return r;
}

SuiteResult escape_certificates() {
  const auto body = ConvexBody::simplex(2);
  const auto map = SemicontractionSpec::projective_linear(Eigen::Vector2d(2, 1).asDiagonal().toDenseMatrix());
  const auto orbit = iterate(map, Eigen::Vector2d(0.5, 0.5), body, 200);
  const double tau = std::log(2.0);
  const auto cert = karlsson_certificate(orbit, body, tau);
  // On the escaping orbit the certificate horofunction is log(x2/x1) up to a constant.
  double drift = 0.0;
  for (int k = 1; k <= cert.checkable; ++k) {
    const auto& x = orbit.points[static_cast<std::size_t>(k)];
    drift = std::max(drift, std::abs(evaluate(cert.h, x) - std::log(x[1] / x[0])));
  }
  return at_most("escape_certificate", std::max(cert.slack, drift), 1e-6,
                 "diag(2,1): slack of h(f^k x) <= -k tau and distance of h from log(x2/x1)");
}

SuiteResult benchmark_properties(std::uint64_t seed) {
  int failures = 0;
  double worst_gap = 0.0;
  std::string first;
  const auto suite = benchmark_suite(2024);
  for (const auto& b : suite) {
    ReportSettings s;
    s.conv = b.conv;
    s.seed = seed;
    s.beardon = false;
    const auto r = conjecture_report(b.map, b.body, b.start, s);
    const bool planar = b.body.intrinsic_dim() == 2 && b.body.kind() != ConvexBody::Kind::Simplex;
    const double tau = r.estimates ? r.estimates->tau_hat : 0.0;
    bool ok = r.chain_holds && r.gv && r.gv->d_tau_gap <= 1e-2 && r.faces_coincide;
    if (planar) ok = ok && (r.verdict == Verdict::FixedPoint || r.verdict == Verdict::SingleFace);
    if (tau > 0.01 || r.monotone_escape) ok = ok && r.verdict == Verdict::SingleFace;
    if (r.gv) worst_gap = std::max(worst_gap, r.gv->d_tau_gap);
    if (!ok && failures++ == 0) first = b.id;
  }
  SuiteResult r{"benchmark_properties", failures == 0, worst_gap, 1e-2,
                std::to_string(suite.size()) + " maps: chain, GV gap, verdicts, orbit independence"};
  if (failures > 0) r.detail += "; " + std::to_string(failures) + " failing, first " + first;
  return r;
}

template <typename F>
SuiteResult guarded(const char* name, F&& suite) {
  try {
    return suite();
  } catch (const Error& e) {
    return {name, false, 0.0, 0.0, std::string("error: ") + e.what()};
  }
}

}  // namespace

std::vector<SuiteResult> run_validation(const ValidationOptions& o) {
  return {
      guarded("disk_metric", [] { return disk_metric(); }),
      guarded("simplex_vs_chord", [&] { return simplex_vs_chord(o.seed, o.inject_scale_mismatch); }),
      guarded("metric_axioms", [&] { return metric_axioms(o.seed); }),
      guarded("poincare_horofunction", [] { return poincare_horofunctions(); }),
      guarded("birkhoff_contraction", [&] { return birkhoff(o.seed); }),
      guarded("escape_certificate", [] { return escape_certificates(); }),
      guarded("benchmark_properties", [&] { return benchmark_properties(o.seed); }),
  };
}

std::string format_results(const std::vector<SuiteResult>& results) {
  std::string out;
  char buf[256];
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "%-4s %-22s measured=%.6e tolerance=%.6e  %s\n", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.measured, r.tolerance, r.detail.c_str());
    out += buf;
  }
  return out;
}

}  // namespace hilbert
