#pragma once

// Planar centrally symmetric polytope norms (Minkowski gauges). The gauge is
// evaluated through facet functionals, so it is exact and cheap for the
// small polygons this project needs. Includes the invariance / Barabanov
// property checks on sampled boundary points.

#include <vector>

#include "lss/matrix.hpp"

namespace lss {

struct MatrixFamily;  // family.hpp

class PolytopeNorm {
 public:
  // Vertices of a centrally symmetric polygon; negations are added when
  // missing. The origin must be strictly interior.
  explicit PolytopeNorm(std::vector<Vec> vertices);

  // min{ lambda > 0 : x/lambda in polytope } = max over facets of <g, x>.
  double gauge(const Vec& x) const;

  // Point of the boundary in direction angle (radians).
  Vec boundary_point(double angle) const;

  const std::vector<Vec>& vertices() const { return hull_; }          // CCW order
  const std::vector<Vec>& facet_functionals() const { return facets_; }

  // Induced operator norm of a 2x2 matrix: max over vertices of gauge(m v).
  double operator_gauge_norm(const Matrix& m) const;

 private:
  std::vector<Vec> hull_;
  std::vector<Vec> facets_;  // one functional per facet, gauge = max <g,x>
};

// Parallelotope with vertices +-(1,0), +-(1,-2/a).
PolytopeNorm build_parallelotope(double a);

struct GaugeCheckReport {
  bool ok = false;
  double max_deviation = 0.0;
  Vec worst_point;
  int samples_checked = 0;
};

// Does m preserve the gauge on the sampled boundary (vertices always
// included)?
GaugeCheckReport is_invariant_isometry(const PolytopeNorm& p, const Matrix& m, int samples,
                                       double tol);

// Barabanov property: max over the family of gauge(A x) equals gauge(x) on
// every sampled boundary point.
GaugeCheckReport is_barabanov(const PolytopeNorm& p, const MatrixFamily& fam, int samples,
                              double tol);

}  // namespace lss
