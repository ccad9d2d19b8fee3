#include "lss/sublinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lss/dd.hpp"
#include "lss/eig.hpp"
#include "lss/errors.hpp"

namespace lss {

namespace {

constexpr double kTwoPiD = 2.0 * std::numbers::pi;

// sign-aware c^e for integral e via exp/log; underflows cleanly to 0
double ipow_signed(double c, double e) {
  if (c == 0.0) return 0.0;
  const double mag = std::exp(e * std::log(std::fabs(c)));
  const bool odd = std::fmod(e, 2.0) != 0.0;
  return (c < 0.0 && odd) ? -mag : mag;
}

}  // namespace

CubicPair build_pair(double alpha) {
  if (!std::isfinite(alpha)) throw invalid_input("build_pair: alpha must be finite");
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  CubicPair cp;
  cp.alpha = alpha;
  cp.a0 = Matrix::diag({1.0, 1.0, 0.0});
  cp.a1 = Matrix{{1.0, sa, ca - 1.0}, {0.0, ca, -sa}, {0.0, sa, ca}};
  cp.p = Matrix{{1.0, 0.0}, {0.0, 0.0}};
  cp.r = Matrix::rotation2(alpha);
  cp.a_vec = Vec{sa, ca - 1.0};
  return cp;
}

double reduce_angle(double alpha, std::int64_t n) {
  if (n < 0) throw invalid_input("reduce_angle: n must be nonnegative");
  return dd::reduce_mod_2pi(alpha, n);
}

double qn_e1(double alpha, std::int64_t n) {
  if (n < 0) throw invalid_input("qn_e1: n must be nonnegative");
  if (n == 0) return 0.0;
  return std::sin(reduce_angle(alpha, n));
}

double coupling_closed_form(double alpha, std::span<const std::int64_t> ns) {
  if (ns.empty()) throw invalid_input("coupling_closed_form: ns must be nonempty");
  double f = 0.0;
  for (std::int64_t n : ns) {
    if (n <= 0) throw invalid_input("coupling_closed_form: exponents must be positive");
    const double t = reduce_angle(alpha, n);
    f = f * std::cos(t) + std::sin(t);
  }
  return f;
}

SRecursion s_recursion(double alpha, std::span<const std::int64_t> ns) {
  if (ns.empty()) throw invalid_input("s_recursion: ns must be nonempty");
  SRecursion sr;
  sr.alpha = alpha;
  sr.ns.assign(ns.begin(), ns.end());
  sr.s_values.push_back(0.0);
  double s = 0.0;
  for (std::int64_t n : ns) {
    if (n <= 0) throw invalid_input("s_recursion: exponents must be positive");
    const double t = reduce_angle(alpha, n);
    s = std::fabs(std::sin(t)) + s * std::fabs(std::cos(t));
    sr.s_values.push_back(s);
  }
  return sr;
}

bool sincos_cube_inequality(double p, double t) {
  if (!(p >= 2.0) || !(t > 0.0) || !(t <= std::numbers::pi / 2.0))
    throw invalid_input("sincos_cube_inequality: need p >= 2 and t in (0, pi/2]");
  const double lhs = std::sin(t) + p * std::cos(t);
  const double rhs = std::cbrt(p * p * p + 20.0 / std::sin(t));
  return lhs <= rhs + 1e-12;
}

ConvergentTable continued_fraction(double x, int depth) {
  if (!std::isfinite(x)) throw invalid_input("continued_fraction: x must be finite");
  if (depth <= 0 || depth > 40) throw invalid_input("continued_fraction: depth must be in 1..40");
  ConvergentTable table;
  table.x = x - std::floor(x);
  table.partial_quotients.push_back(0);
  table.convergents.push_back({0, 1});
  if (table.x <= 0.0) {
    table.truncated = true;
    table.m_alpha_estimate = 0.0;
    return table;
  }

  dd::Double2 frac{table.x, 0.0};
  long long pm1 = 1, qm1 = 0;  // p_{-1}, q_{-1}
  long long p0 = 0, q0 = 1;
  dd::Double2 y = frac;
  double m_est = table.x;  // q=1, p=0 convergent contributes x itself
  for (int i = 1; i < depth; ++i) {
    if (std::fabs(dd::to_double(y)) < 1e-28) {
      table.truncated = true;  // rational within working precision
      break;
    }
    y = dd::div({1.0, 0.0}, y);
    const double af = std::floor(dd::to_double(y));
    if (!(af >= 1.0) || af > 9e17) {
      table.truncated = true;
      break;
    }
    const long long a = static_cast<long long>(af);
    y = dd::sub(y, {af, 0.0});
    const long long p = a * p0 + pm1;
    const long long q = a * q0 + qm1;
    if (q < q0 || q > (1LL << 60)) {  // overflow guard
      table.truncated = true;
      break;
    }
    table.partial_quotients.push_back(a);
    table.convergents.push_back({p, q});
    // q^2 |x - p/q| = q |q x - p|, evaluated in double-double
    const dd::Double2 resid = dd::sub(dd::mul(frac, static_cast<double>(q)), {static_cast<double>(p), 0.0});
    const double resid_abs = std::fabs(dd::to_double(resid));
    // Beyond this point the expansion tracks the rational double input, not
    // the real number it rounds: keep the exact convergent but stop before
    // the Liouville estimate collapses.
    if (resid_abs < 2e-14 * static_cast<double>(q)) {
      table.truncated = true;
      break;
    }
    m_est = std::min(m_est, resid_abs * static_cast<double>(q));
    pm1 = p0;
    qm1 = q0;
    p0 = p;
    q0 = q;
  }
  table.m_alpha_estimate = m_est;
  return table;
}

GoodN good_n_sequence(double alpha, int count) {
  if (count <= 0) throw invalid_input("good_n_sequence: count must be positive");
  GoodN out;
  const dd::Double2 x_dd = dd::div({alpha, 0.0}, dd::kTwoPi);
  double x = dd::to_double(x_dd);
  x -= std::floor(x);

  const auto table = continued_fraction(x, 40);
  for (const auto& cv : table.convergents) {
    if (static_cast<int>(out.ns.size()) >= count) break;
    if (cv.q < 2) continue;  // n = 1 satisfies {x} <= 1 vacuously
    // one-sided: keep denominators of convergents approaching from below
    const dd::Double2 resid =
        dd::sub(dd::mul(x_dd, static_cast<double>(cv.q)), {static_cast<double>(cv.p), 0.0});
    if (!(dd::to_double(resid) > 0.0)) continue;
    const auto frac = dd::fractional_part(dd::to_double(x_dd), cv.q);
    const double bound = 1.0 / static_cast<double>(cv.q);
    if (frac.value + frac.err_bound <= bound) {
      out.ns.push_back(cv.q);
    } else if (frac.value - frac.err_bound > bound) {
      continue;  // verified not good
    } else {
      out.precision_limited = true;  // cannot decide at this precision
      break;
    }
  }
  if (static_cast<int>(out.ns.size()) < count) out.precision_limited = true;
  return out;
}

namespace {

struct BlockNumbers {
  double t;         // n alpha reduced mod 2pi
  double lower;     // sin t (1 - cos^{n^2} t)/(1 - cos t)
  double cos_pow;   // cos^{n^2} t
};

BlockNumbers block_numbers(double alpha, std::int64_t n) {
  BlockNumbers b;
  b.t = reduce_angle(alpha, n);
  const double st = std::sin(b.t), ct = std::cos(b.t);
  const double nsq = static_cast<double>(n) * static_cast<double>(n);
  b.cos_pow = ipow_signed(ct, nsq);
  if (std::fabs(1.0 - ct) < 1e-300) {
    b.lower = st * nsq;  // degenerate limit, unreachable for irrational alpha/pi
  } else {
    b.lower = st * (1.0 - b.cos_pow) / (1.0 - ct);
  }
  return b;
}

}  // namespace

GrowthWitness growth_witness(double alpha, std::int64_t n, std::int64_t direct_cap) {
  if (n <= 0) throw invalid_input("growth_witness: n must be positive");
  if (n > 2'000'000) throw invalid_input("growth_witness: n too large (n^3 overflows)");
  GrowthWitness w;
  w.n = n;
  w.big_n = n * n * n + n * n;
  const auto b = block_numbers(alpha, n);
  w.lower_formula = b.lower;
  if (w.big_n <= direct_cap) {
    const CubicPair cp = build_pair(alpha);
    Matrix a1n = Matrix::identity(3);
    for (std::int64_t i = 0; i < n; ++i) a1n = a1n * cp.a1;
    const Matrix f = cp.a0 * a1n;
    const Matrix pi = matrix_power(f, n * n);
    w.norm = operator_norm(pi);
    w.direct = true;
  } else {
    w.norm = std::fabs(b.lower);
    w.direct = false;
  }
  return w;
}

std::vector<GrowthWitness> growth_witnesses(double alpha, std::span<const std::int64_t> ns,
                                            std::int64_t direct_cap, int threads) {
  std::vector<GrowthWitness> out(ns.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ns.size()); ++i)
    out[static_cast<std::size_t>(i)] = growth_witness(alpha, ns[static_cast<std::size_t>(i)], direct_cap);
  return out;
}

SlopeFit fit_cubic_exponent(double alpha, std::span<const std::int64_t> ns,
                            std::int64_t direct_cap) {
  std::vector<double> xs, ys;
  std::vector<std::int64_t> seen;
  for (const auto& w : growth_witnesses(alpha, ns, direct_cap)) {
    if (std::find(seen.begin(), seen.end(), w.big_n) != seen.end()) continue;
    seen.push_back(w.big_n);
    if (!(w.norm > 0)) continue;
    xs.push_back(std::log(static_cast<double>(w.big_n)));
    ys.push_back(std::log(w.norm));
  }
  const int npts = static_cast<int>(xs.size());
  if (npts < 2) throw insufficient_data("fit_cubic_exponent: need at least two distinct witnesses");
  double mx = 0, my = 0;
  for (int i = 0; i < npts; ++i) mx += xs[static_cast<std::size_t>(i)], my += ys[static_cast<std::size_t>(i)];
  mx /= npts;
  my /= npts;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < npts; ++i) {
    sxx += (xs[static_cast<std::size_t>(i)] - mx) * (xs[static_cast<std::size_t>(i)] - mx);
    sxy += (xs[static_cast<std::size_t>(i)] - mx) * (ys[static_cast<std::size_t>(i)] - my);
  }
  if (sxx == 0) throw insufficient_data("fit_cubic_exponent: degenerate abscissa");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.points = npts;
  const double icept = my - fit.slope * mx;
  double rss = 0;
  for (int i = 0; i < npts; ++i) {
    const double r = ys[static_cast<std::size_t>(i)] - (fit.slope * xs[static_cast<std::size_t>(i)] + icept);
    rss += r * r;
  }
  fit.stderr_ = npts > 2 ? std::sqrt(rss / ((npts - 2) * sxx)) : 0.0;
  return fit;
}

PrefixTable infinite_product_prefixes(double alpha, int j_max) {
  if (j_max <= 0 || j_max > 5)
    throw invalid_input("infinite_product_prefixes: j_max must be in 1..5");
  PrefixTable table;
  table.c1 = std::exp(-4.0 * std::numbers::pi * std::numbers::pi);

  const auto good = good_n_sequence(alpha, 12);
  if (good.ns.empty()) {
    table.truncated = true;
    return table;
  }
  // observed witness constant: smallest coupling/N^{1/3} over the first few
  // good n (the paper's C0 with the estimated Liouville constant behind it)
  double c0 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < std::min<std::size_t>(3, good.ns.size()); ++i) {
    const std::int64_t n = good.ns[i];
    const double bign = static_cast<double>(n) * n * n + static_cast<double>(n) * n;
    c0 = std::min(c0, std::fabs(block_numbers(alpha, n).lower) / std::cbrt(bign));
  }
  table.c0_estimate = c0;

  double sum_len = 0.0;       // sum of N_i
  double sum_weighted = 0.0;  // sum of c1^{i-1} N_i^{1/3}
  double g = 0.0;             // closed-form coupling lower bound of the prefix
  double prev_ratio = -std::numeric_limits<double>::infinity();
  std::size_t next_idx = 0;
  std::int64_t total_len = 0;

  for (int j = 1; j <= j_max; ++j) {
    bool placed = false;
    for (std::size_t ci = next_idx; ci < good.ns.size(); ++ci) {
      const std::int64_t n = good.ns[ci];
      if (n > 2'000'000) break;  // length would overflow
      const std::int64_t bign = n * n * n + n * n;
      const auto b = block_numbers(alpha, n);
      const double cand_sum_len = sum_len + static_cast<double>(bign);
      const double cand_weighted =
          sum_weighted + std::pow(table.c1, j - 1) * std::cbrt(static_cast<double>(bign));
      const double exponent = 1.0 / 3.0 - std::pow(2.0, -j);
      const bool selection_ok = c0 * cand_weighted >= std::pow(cand_sum_len, exponent);
      const double cand_g = b.lower + g * b.cos_pow;
      const double cand_log_norm = std::log(std::sqrt(1.0 + cand_g * cand_g));
      const double cand_ratio = cand_log_norm / std::log(cand_sum_len);
      const bool ratio_ok = j == 1 || cand_ratio > prev_ratio;
      if (selection_ok && ratio_ok) {
        sum_len = cand_sum_len;
        sum_weighted = cand_weighted;
        g = cand_g;
        total_len += bign;
        table.entries.push_back({j, n, total_len, cand_log_norm, cand_ratio, b.cos_pow});
        prev_ratio = cand_ratio;
        next_idx = ci + 1;
        placed = true;
        break;
      }
    }
    if (!placed) {
      table.truncated = true;
      break;
    }
  }
  if (good.precision_limited && table.entries.size() < static_cast<std::size_t>(j_max))
    table.truncated = true;
  return table;
}

std::string witness_csv(std::span<const GrowthWitness> ws) {
  std::ostringstream os;
  os << "n,N,norm,lower_formula,ratio\n";
  os.precision(17);
  for (const auto& w : ws)
    os << w.n << "," << w.big_n << "," << w.norm << "," << w.lower_formula << ","
       << w.norm / std::cbrt(static_cast<double>(w.big_n)) << "\n";
  return os.str();
}

std::string prefix_csv(const PrefixTable& table) {
  std::ostringstream os;
  os << "j,Mk,log_norm,ratio\n";
  os.precision(17);
  for (const auto& e : table.entries)
    os << e.j << "," << e.length << "," << e.log_norm << "," << e.ratio << "\n";
  return os.str();
}

}  // namespace lss
