#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lss/ctsim.hpp"
#include "lss/eig.hpp"
#include "lss/errors.hpp"

using namespace lss;

namespace {

// independent RK4 integrator for cross-checking the exact propagation
Vec rk4(const Matrix& a, Vec x, double duration, int steps) {
  const double h = duration / steps;
  for (int i = 0; i < steps; ++i) {
    const Vec k1 = a * x;
    const Vec k2 = a * (x + (h / 2) * k1);
    const Vec k3 = a * (x + (h / 2) * k2);
    const Vec k4 = a * (x + h * k3);
    x = x + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

SwitchingLaw alternating_law(std::mt19937& rng, int segments, double total) {
  std::uniform_real_distribution<double> dur(2.0, 8.0);
  std::vector<double> durs(static_cast<std::size_t>(segments));
  double tot = 0;
  for (auto& d : durs) {
    d = dur(rng);
    tot += d;
  }
  SwitchingLaw law;
  const std::size_t first = rng() & 1u;
  for (int i = 0; i < segments; ++i)
    law.segments.push_back({durs[static_cast<std::size_t>(i)] * total / tot,
                            (first + static_cast<std::size_t>(i)) % 2});
  return law;
}

Vec unit_random(std::mt19937& rng, int d) {
  std::normal_distribution<double> g;
  Vec v(d);
  double n = 0;
  for (int i = 0; i < d; ++i) {
    v[i] = g(rng);
    n += v[i] * v[i];
  }
  n = std::sqrt(n);
  for (int i = 0; i < d; ++i) v[i] /= n;
  return v;
}

}  // namespace

TEST_CASE("propagation fixtures") {
  const auto fam = example2_family();
  const auto empty = propagate(fam, SwitchingLaw{}, Vec{1, 0, 0, 0}, 0.1);
  REQUIRE(empty.samples.size() == 1);
  CHECK(empty.samples[0].t == 0.0);
  CHECK(empty.samples[0].x == Vec{1, 0, 0, 0});

  // scalar decay
  const MatrixFamily scalar({Matrix{{-1.0}}});
  SwitchingLaw one;
  one.segments = {{1.0, 0}};
  const auto traj = propagate(scalar, one, Vec{1.0}, 0.25);
  CHECK(traj.samples.back().t == doctest::Approx(1.0));
  CHECK(traj.samples.back().x[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("sample times increase strictly from zero") {
  const auto fam = example2_family();
  SwitchingLaw law;
  law.segments = {{1.0, 0}, {0.75, 1}, {2.0, 0}};  // durations on and off the dt grid
  const auto traj = propagate(fam, law, Vec{1, 0, 0, 0}, 0.25);
  REQUIRE(traj.samples.front().t == 0.0);
  for (std::size_t i = 1; i < traj.samples.size(); ++i)
    CHECK(traj.samples[i].t > traj.samples[i - 1].t);
  CHECK(traj.samples.back().t == doctest::Approx(3.75));
}

TEST_CASE("propagation validates its inputs") {
  const auto fam = example2_family();
  SwitchingLaw law;
  law.segments = {{0.5, 0}};
  CHECK_THROWS_AS(propagate(fam, law, Vec{1, 0}, 0.1), invalid_input);  // dim mismatch
  CHECK_THROWS_AS(propagate(fam, law, Vec{1, 0, 0, 0}, 0.8), invalid_input);  // dt too big
  law.segments = {{0.5, 7}};
  CHECK_THROWS_AS(propagate(fam, law, Vec{1, 0, 0, 0}, 0.1), invalid_input);  // bad letter
}

TEST_CASE("propagation agrees with an independent integrator") {
  const auto fam = example2_family();
  std::mt19937 rng(17);
  SwitchingLaw law;
  law.segments = {{1.5, 0}, {0.8, 1}, {2.1, 0}};
  const Vec x0 = unit_random(rng, 4);
  const auto traj = propagate(fam, law, x0, 0.1);
  Vec xr = x0;
  for (const auto& seg : law.segments) xr = rk4(fam[seg.letter], xr, seg.duration, 4000);
  const Vec xe = traj.samples.back().x;
  CHECK((xe - xr).norm2() <= 1e-6);
}

TEST_CASE("propagation over concatenated laws composes") {
  const auto fam = example2_family();
  std::mt19937 rng(23);
  const Vec x0 = unit_random(rng, 4);
  SwitchingLaw first, second, both;
  first.segments = {{1.0, 0}, {2.0, 1}};
  second.segments = {{0.7, 1}, {1.4, 0}};
  both.segments = first.segments;
  both.segments.insert(both.segments.end(), second.segments.begin(), second.segments.end());
  const Vec mid = propagate(fam, first, x0, 0.1).samples.back().x;
  const Vec two = propagate(fam, second, mid, 0.1).samples.back().x;
  const Vec one = propagate(fam, both, x0, 0.1).samples.back().x;
  CHECK((one - two).norm2() <= 1e-8);
}

TEST_CASE("the bounded generator has a bounded flow") {
  const auto fam = example2_family();
  SwitchingLaw law;
  law.segments = {{100.0, 0}};
  const auto traj = propagate(fam, law, Vec{0, 0, 1, 0}, 0.05);
  double sup20 = 0, sup100 = 0;
  for (const auto& s : traj.samples) {
    if (s.t <= 20.0) sup20 = std::max(sup20, s.x.norm2());
    sup100 = std::max(sup100, s.x.norm2());
  }
  CHECK(sup100 <= 1.1 * sup20);
}

TEST_CASE("lyapunov gauge fixtures") {
  const Vec x{0.3, -1.2};
  CHECK(lyapunov_f(Matrix::zero(2, 2), x, 1.0, 0.1) == doctest::Approx(x.norm2()).epsilon(1e-14));
  const Matrix rot{{0, -1}, {1, 0}};
  CHECK(lyapunov_f(rot, x, 2 * std::numbers::pi, 1e-3) ==
        doctest::Approx(x.norm2()).epsilon(1e-6));
  const auto fam = example2_family();
  const double f3 = lyapunov_f(fam[0], Vec{0, 0, 1, 0}, 4 * std::numbers::pi, 1e-3);
  CHECK(f3 >= 1.0);
  CHECK(std::isfinite(f3));
}

TEST_CASE("lyapunov gauge is homogeneous") {
  const auto fam = example2_family();
  std::mt19937 rng(5);
  for (int i = 0; i < 10; ++i) {
    const Vec x = unit_random(rng, 4);
    const double f1 = lyapunov_f(fam[0], x, 4 * std::numbers::pi, 2e-3);
    const double f3 = lyapunov_f(fam[0], 3.0 * x, 4 * std::numbers::pi, 2e-3);
    CHECK(f3 == doctest::Approx(3.0 * f1).epsilon(1e-9));
  }
}

TEST_CASE("pure contracting laws never raise the gauge") {
  const auto fam = example2_family();
  std::mt19937 rng(9);
  SwitchingLaw law;
  law.segments = {{2.0, 1}, {3.0, 1}, {1.5, 1}};
  const auto rep = check_f_decreasing(fam, law, unit_random(rng, 4), law.total_duration(), 0.05);
  CHECK(rep.f_monotone_violations == 0);
  CHECK(rep.sigma_estimate < 0);
}

TEST_CASE("the bounded law has Lyapunov exponent near zero") {
  const auto fam = example2_family();
  SwitchingLaw law;
  law.segments = {{100.0, 0}};
  const auto rep = check_f_decreasing(fam, law, Vec{0, 0, 1, 0}, 100.0, 0.05);
  CHECK(std::fabs(rep.sigma_estimate) <= 0.05);
}

TEST_CASE("random alternating laws stay bounded") {
  const auto fam = example2_family();
  std::mt19937 rng(2025);
  for (int trial = 0; trial < 10; ++trial) {
    const auto law = alternating_law(rng, 20, 100.0);
    const auto rep = check_f_decreasing(fam, law, unit_random(rng, 4), 100.0, 0.05);
    CHECK(rep.sup_norm <= 10.0);
    CHECK(rep.f_monotone_violations == 0);
    CHECK(rep.sigma_estimate <= 0.02);
  }
}

TEST_CASE("law parsing round-trips") {
  const auto law = SwitchingLaw::parse("0:3.5,1:2");
  REQUIRE(law.segments.size() == 2);
  CHECK(law.segments[0].letter == 0);
  CHECK(law.segments[0].duration == doctest::Approx(3.5));
  CHECK(SwitchingLaw::parse(law.str()).str() == law.str());
}

TEST_CASE("trajectory csv emits one row per sample") {
  const MatrixFamily scalar({Matrix{{-1.0}}});
  SwitchingLaw law;
  law.segments = {{1.0, 0}};
  const auto traj = propagate(scalar, law, Vec{1.0}, 0.5);
  const auto csv = trajectory_csv(traj);
  CHECK(csv.rfind("t,x1\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(traj.samples.size()) + 1);
}
