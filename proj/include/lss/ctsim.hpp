#pragma once

// Continuous-time switching simulation with piecewise-constant laws.
// Propagation is exact at every sample (matrix exponentials per segment), so
// there is no ODE-stepping error beyond the exponential itself.

#include <functional>
#include <string>
#include <vector>

#include "lss/family.hpp"
#include "lss/matrix.hpp"

namespace lss {

struct SwitchingLaw {
  struct Segment {
    double duration;     // seconds, positive
    std::size_t letter;  // index into the family
  };
  std::vector<Segment> segments;

  double total_duration() const;
  void validate(std::size_t alphabet) const;

  // "0:3.5,1:2" -> segments {letter 0 for 3.5s, letter 1 for 2s}
  static SwitchingLaw parse(const std::string& text);
  std::string str() const;
};

struct Trajectory {
  struct Sample {
    double t;
    Vec x;
  };
  std::vector<Sample> samples;
};

// Piecewise-exact propagation with intra-segment samples every dt. dt must
// not exceed the shortest segment duration.
Trajectory propagate(const MatrixFamily& fam, const SwitchingLaw& law, const Vec& x0, double dt);

// max over the grid {0, dt, ..., t_max} of ||e^{t a1} x||. For generators
// whose exponential is periodic (the 4x4 fixture below is 2pi-periodic) a
// grid covering one period captures the supremum up to grid error.
double lyapunov_f(const Matrix& a1, const Vec& x, double t_max, double dt);

struct CtReport {
  double sup_norm = 0.0;
  double sigma_estimate = 0.0;  // max over sampled t >= t_max/2 of log||x||/t
  int f_monotone_violations = 0;
};

struct CtOptions {
  std::size_t f_letter = 0;     // the letter whose generator defines f
  double f_tmax = 4.0 * 3.14159265358979323846;
  double f_dt = 2e-3;
  double tol_scale = 1e-6;      // violation tolerance = tol_scale * f(x0)
};

// Evaluates f at segment boundaries and counts increases across segments of
// letters other than f_letter; sigma is estimated from the trajectory tail.
CtReport check_f_decreasing(const MatrixFamily& fam, const SwitchingLaw& law, const Vec& x0,
                            double t_max, double dt, const CtOptions& opts = {});

// rows: t,x1,...,xd[,f]
std::string trajectory_csv(const Trajectory& traj,
                           const std::function<double(const Vec&)>& f = {});

// The marginally stable continuous-time fixture: letter 0 couples a plane of
// rest to a rotation plane (bounded flow), letter 1 is B - s*I (strongly
// contracting for large s).
MatrixFamily example2_family(const Matrix& c = Matrix{{1, 1}, {1, 1}},
                             const Matrix& b = Matrix{{1, 1, 1, 1},
                                                      {0, 1, 1, 1},
                                                      {0, 0, 1, 1},
                                                      {0, 0, 0, 1}},
                             double s = 10.0);

}  // namespace lss
