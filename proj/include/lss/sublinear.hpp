#pragma once

// The projection/rotation 3x3 pair with N^{1/3} worst-case growth: closed
// coupling forms, the sin/cos majorization recursion and its cube-root bound,
// continued-fraction search for integers n with {n*alpha/(2pi)} <= 1/n,
// growth witnesses (A0 A1^n)^{n^2}, the fitted growth exponent, and the
// infinite-product prefix construction whose log-norm ratio climbs to 1/3.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lss/growth.hpp"
#include "lss/matrix.hpp"

namespace lss {

struct CubicPair {
  double alpha;
  Matrix a0;     // diag(1, 1, 0)
  Matrix a1;     // [[1, sin a, cos a - 1], [0, cos a, -sin a], [0, sin a, cos a]]
  Matrix p;      // [[1, 0], [0, 0]]
  Matrix r;      // rotation by alpha
  Vec a_vec;     // (sin a, cos a - 1)
};

// Irrationality of alpha/pi is the caller's responsibility; floating point
// cannot verify it.
CubicPair build_pair(double alpha);

// n*alpha reduced into [0, 2pi) with double-double accuracy.
double reduce_angle(double alpha, std::int64_t n);

// sin(n*alpha): the coupling row of a1^n applied to e1.
double qn_e1(double alpha, std::int64_t n);

// sin(n_k a) + sin(n_{k-1} a) cos(n_k a) + ... + sin(n_1 a) cos(n_2 a)...cos(n_k a),
// the top-right coupling of A1^{n_1} A0 ... A1^{n_k} A0 applied to e1.
double coupling_closed_form(double alpha, std::span<const std::int64_t> ns);

struct SRecursion {
  double alpha;
  std::vector<std::int64_t> ns;
  std::vector<double> s_values;  // S_0 = 0, S_r = |sin n_r a| + S_{r-1} |cos n_r a|
  double final_value() const { return s_values.back(); }
};

SRecursion s_recursion(double alpha, std::span<const std::int64_t> ns);

// sin t + p cos t <= (p^3 + 20/sin t)^{1/3} for p >= 2, t in (0, pi/2].
bool sincos_cube_inequality(double p, double t);

struct Convergent {
  long long p, q;
};

struct ConvergentTable {
  double x;
  std::vector<long long> partial_quotients;  // starts with a0 = 0
  std::vector<Convergent> convergents;
  double m_alpha_estimate;  // min over convergents of q^2 |x - p/q|
  bool truncated = false;   // x rational (or indistinguishable) before depth
};

// Standard continued-fraction expansion of the fractional part of x.
ConvergentTable continued_fraction(double x, int depth);

struct GoodN {
  std::vector<std::int64_t> ns;
  bool precision_limited = false;
};

// Increasing integers n >= 2 with {n * alpha/(2pi)} <= 1/n, searched among
// from-below convergent denominators of alpha/(2pi) and verified in
// double-double before inclusion. (q = 1 satisfies the inequality vacuously
// and is skipped.)
GoodN good_n_sequence(double alpha, int count);

struct GrowthWitness {
  std::int64_t n;
  std::int64_t big_n;     // n^3 + n^2
  double norm;            // operator norm of (A0 A1^n)^{n^2}, or |lower_formula|
  double lower_formula;   // sin(na) (1 - cos^{n^2}(na)) / (1 - cos(na))
  bool direct;            // true when the norm came from the actual product
};

GrowthWitness growth_witness(double alpha, std::int64_t n, std::int64_t direct_cap = 1'000'000);

// One witness per n, computed in parallel (each is pure).
std::vector<GrowthWitness> growth_witnesses(double alpha, std::span<const std::int64_t> ns,
                                            std::int64_t direct_cap = 1'000'000, int threads = 0);

// Least-squares slope of log(norm) against log(N) over the witnesses.
SlopeFit fit_cubic_exponent(double alpha, std::span<const std::int64_t> ns,
                            std::int64_t direct_cap = 1'000'000);

struct PrefixEntry {
  int j;
  std::int64_t n;
  std::int64_t length;   // M_j, total letters so far
  double log_norm;       // log of the closed-form lower bound on the norm
  double ratio;          // log_norm / log(length)
  double cos_pow;        // (cos t_j)^{n_j^2}, must stay >= e^{-4 pi^2}
};

struct PrefixTable {
  std::vector<PrefixEntry> entries;
  bool truncated = false;  // no admissible next n within precision
  double c0_estimate = 0.0;
  double c1 = 0.0;         // e^{-4 pi^2}
};

// Greedy block selection: the next good n must satisfy the length-selection
// inequality c0 * sum_i c1^{i-1} N_i^{1/3} >= (sum_i N_i)^{1/3 - 2^{-j}} and
// must strictly increase the ratio. Blocks are scored by the closed-form
// coupling recursion, so astronomically long blocks cost nothing to add.
PrefixTable infinite_product_prefixes(double alpha, int j_max);

std::string witness_csv(std::span<const GrowthWitness> ws);
std::string prefix_csv(const PrefixTable& table);

}  // namespace lss
