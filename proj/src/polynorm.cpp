#include "lss/polynorm.hpp"

#include <algorithm>
#include <cmath>

#include "lss/errors.hpp"
#include "lss/family.hpp"

namespace lss {

namespace {

double cross(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

// Andrew's monotone chain, CCW order.
std::vector<Vec> convex_hull(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec& a, const Vec& b) {
                          return std::fabs(a[0] - b[0]) < 1e-14 && std::fabs(a[1] - b[1]) < 1e-14;
                        }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vec> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

PolytopeNorm::PolytopeNorm(std::vector<Vec> vertices) {
  if (vertices.empty()) throw invalid_input("PolytopeNorm: no vertices");
  std::vector<Vec> pts;
  for (const auto& v : vertices) {
    if (v.size() != 2 || !v.finite()) throw invalid_input("PolytopeNorm: vertices must be finite 2-vectors");
    pts.push_back(v);
    pts.push_back(-1.0 * v);  // enforce central symmetry
  }
  hull_ = convex_hull(std::move(pts));
  if (hull_.size() < 4)
    throw invalid_input("PolytopeNorm: degenerate polytope (origin not strictly interior)");
  for (std::size_t i = 0; i < hull_.size(); ++i) {
    const Vec& v1 = hull_[i];
    const Vec& v2 = hull_[(i + 1) % hull_.size()];
    const double det = cross(v1, v2);
    if (std::fabs(det) < 1e-14)
      throw invalid_input("PolytopeNorm: origin lies on a facet");
    // g with <g, v1> = <g, v2> = 1
    facets_.push_back(Vec{(v2[1] - v1[1]) / det, (v1[0] - v2[0]) / det});
  }
}

double PolytopeNorm::gauge(const Vec& x) const {
  if (x.size() != 2) throw invalid_input("gauge: expected a 2-vector");
  double g = 0;
  for (const auto& f : facets_) g = std::max(g, f[0] * x[0] + f[1] * x[1]);
  return g;
}

Vec PolytopeNorm::boundary_point(double angle) const {
  const Vec d{std::cos(angle), std::sin(angle)};
  return (1.0 / gauge(d)) * d;
}

double PolytopeNorm::operator_gauge_norm(const Matrix& m) const {
  double best = 0;
  for (const auto& v : hull_) best = std::max(best, gauge(m * v));
  return best;
}

PolytopeNorm build_parallelotope(double a) {
  if (!(a > 0)) throw invalid_input("build_parallelotope: a must be positive");
  return PolytopeNorm({Vec{1.0, 0.0}, Vec{1.0, -2.0 / a}});
}

namespace {

template <typename MapGauge>
GaugeCheckReport run_check(const PolytopeNorm& p, int samples, double tol, MapGauge mapped) {
  GaugeCheckReport rep;
  rep.ok = true;
  std::vector<Vec> pts = p.vertices();
  for (int i = 0; i < samples; ++i)
    pts.push_back(p.boundary_point(2.0 * 3.14159265358979323846 * i / std::max(samples, 1)));
  rep.samples_checked = static_cast<int>(pts.size());
  for (const auto& x : pts) {
    const double dev = std::fabs(mapped(x) - p.gauge(x));
    if (dev > rep.max_deviation) {
      rep.max_deviation = dev;
      rep.worst_point = x;
    }
  }
  rep.ok = rep.max_deviation <= tol;
  return rep;
}

}  // namespace

GaugeCheckReport is_invariant_isometry(const PolytopeNorm& p, const Matrix& m, int samples,
                                       double tol) {
  if (m.rows() != 2 || m.cols() != 2) throw invalid_input("is_invariant_isometry: 2x2 matrix required");
  return run_check(p, samples, tol, [&](const Vec& x) { return p.gauge(m * x); });
}

GaugeCheckReport is_barabanov(const PolytopeNorm& p, const MatrixFamily& fam, int samples,
                              double tol) {
  fam.validate();
  if (fam.dim() != 2) throw invalid_input("is_barabanov: 2x2 family required");
  return run_check(p, samples, tol, [&](const Vec& x) {
    double best = 0;
    for (const auto& a : fam.matrices) best = std::max(best, p.gauge(a * x));
    return best;
  });
}

}  // namespace lss
