#include "lss/ctsim.hpp"

#include <cmath>
#include <sstream>

#include "lss/eig.hpp"
#include "lss/errors.hpp"

namespace lss {

double SwitchingLaw::total_duration() const {
  double t = 0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

void SwitchingLaw::validate(std::size_t alphabet) const {
  for (const auto& s : segments) {
    if (!(s.duration > 0) || !std::isfinite(s.duration))
      throw invalid_input("SwitchingLaw: durations must be positive and finite");
    if (s.letter >= alphabet) throw invalid_input("SwitchingLaw: letter out of range");
  }
}

SwitchingLaw SwitchingLaw::parse(const std::string& text) {
  SwitchingLaw law;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw invalid_input("SwitchingLaw: expected letter:duration");
    law.segments.push_back(
        {std::stod(item.substr(colon + 1)), static_cast<std::size_t>(std::stoul(item.substr(0, colon)))});
  }
  return law;
}

std::string SwitchingLaw::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i) os << ",";
    os << segments[i].letter << ":" << segments[i].duration;
  }
  return os.str();
}

Trajectory propagate(const MatrixFamily& fam, const SwitchingLaw& law, const Vec& x0, double dt) {
  fam.validate();
  law.validate(fam.size());
  if (x0.size() != fam.dim()) throw invalid_input("propagate: x0 dimension mismatch");
  if (!(dt > 0)) throw invalid_input("propagate: dt must be positive");
  for (const auto& s : law.segments)
    if (dt > s.duration + 1e-12) throw invalid_input("propagate: dt exceeds a segment duration");

  Trajectory traj;
  traj.samples.push_back({0.0, x0});
  Vec x = x0;
  double t = 0.0;
  for (const auto& seg : law.segments) {
    const Matrix& gen = fam[seg.letter];
    const Matrix step = matrix_exp(gen, dt);
    const long long nsteps = static_cast<long long>(std::floor(seg.duration / dt - 1e-12));
    Vec xs = x;
    for (long long i = 1; i <= nsteps; ++i) {
      xs = step * xs;
      traj.samples.push_back({t + static_cast<double>(i) * dt, xs});
    }
    // exact jump to the segment boundary
    x = matrix_exp(gen, seg.duration) * x;
    t += seg.duration;
    traj.samples.push_back({t, x});
  }
  return traj;
}

double lyapunov_f(const Matrix& a1, const Vec& x, double t_max, double dt) {
  if (!a1.square() || a1.rows() != x.size()) throw invalid_input("lyapunov_f: dimension mismatch");
  if (!(t_max > 0) || !(dt > 0)) throw invalid_input("lyapunov_f: t_max and dt must be positive");
  const Matrix step = matrix_exp(a1, dt);
  Vec y = x;
  double best = y.norm2();
  const long long n = static_cast<long long>(std::floor(t_max / dt));
  for (long long i = 0; i < n; ++i) {
    y = step * y;
    best = std::max(best, y.norm2());
  }
  return best;
}

CtReport check_f_decreasing(const MatrixFamily& fam, const SwitchingLaw& law, const Vec& x0,
                            double t_max, double dt, const CtOptions& opts) {
  CtReport rep;
  const Trajectory traj = propagate(fam, law, x0, dt);
  for (const auto& s : traj.samples) rep.sup_norm = std::max(rep.sup_norm, s.x.norm2());

  rep.sigma_estimate = -std::numeric_limits<double>::infinity();
  for (const auto& s : traj.samples) {
    if (s.t >= t_max / 2 && s.t > 0) {
      const double nn = s.x.norm2();
      if (nn > 0) rep.sigma_estimate = std::max(rep.sigma_estimate, std::log(nn) / s.t);
    }
  }
  if (!std::isfinite(rep.sigma_estimate)) rep.sigma_estimate = 0.0;  // nothing sampled in the tail

  const Matrix& fgen = fam[opts.f_letter];
  const auto f_of = [&](const Vec& x) { return lyapunov_f(fgen, x, opts.f_tmax, opts.f_dt); };
  const double f0 = f_of(x0);
  double fprev = f0;
  Vec x = x0;
  for (const auto& seg : law.segments) {
    x = matrix_exp(fam[seg.letter], seg.duration) * x;
    const double fcur = f_of(x);
    if (seg.letter != opts.f_letter && fcur > fprev + opts.tol_scale * f0)
      ++rep.f_monotone_violations;
    fprev = fcur;
  }
  return rep;
}

std::string trajectory_csv(const Trajectory& traj, const std::function<double(const Vec&)>& f) {
  std::ostringstream os;
  os.precision(17);
  os << "t";
  const int d = traj.samples.empty() ? 0 : traj.samples.front().x.size();
  for (int i = 1; i <= d; ++i) os << ",x" << i;
  if (f) os << ",f";
  os << "\n";
  for (const auto& s : traj.samples) {
    os << s.t;
    for (int i = 0; i < d; ++i) os << "," << s.x[i];
    if (f) os << "," << f(s.x);
    os << "\n";
  }
  return os.str();
}

MatrixFamily example2_family(const Matrix& c, const Matrix& b, double s) {
  if (c.rows() != 2 || c.cols() != 2) throw invalid_input("example2_family: C must be 2x2");
  if (b.rows() != 4 || b.cols() != 4) throw invalid_input("example2_family: B must be 4x4");
  if (!(s > 0)) throw invalid_input("example2_family: s must be positive");
  Matrix a1(4, 4);
  a1.set_block(0, 2, c);
  a1(2, 3) = -1.0;
  a1(3, 2) = 1.0;
  Matrix a2 = b - s * Matrix::identity(4);
  return MatrixFamily({a1, a2}, {"A1", "A2"});
}

}  // namespace lss
