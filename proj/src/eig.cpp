#include "lss/eig.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

#include "lss/errors.hpp"

namespace lss {

namespace {

using cd = std::complex<double>;

// ---------------------------------------------------------------------------
// Symmetric Jacobi eigenvalues on a flat row-major buffer (any small n).
// ---------------------------------------------------------------------------

std::vector<double> jacobi_sym_eigenvalues(std::vector<double> a, int n) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i * n + j)]; };
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    double diag = 0;
    for (int i = 0; i < n; ++i) diag += at(i, i) * at(i, i);
    if (off <= 1e-30 * (diag + off) || off == 0.0) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = 0.5 * std::atan2(2.0 * apq, at(q, q) - at(p, p));
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = at(i, i);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

std::vector<double> singular_values_flat(const std::vector<double>& m, int rows, int cols) {
  // sqrt of eigenvalues of m^T m
  std::vector<double> g(static_cast<std::size_t>(cols * cols), 0.0);
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < cols; ++j) {
      double s = 0;
      for (int k = 0; k < rows; ++k)
        s += m[static_cast<std::size_t>(k * cols + i)] * m[static_cast<std::size_t>(k * cols + j)];
      g[static_cast<std::size_t>(i * cols + j)] = s;
    }
  auto ev = jacobi_sym_eigenvalues(std::move(g), cols);
  for (auto& v : ev) v = std::sqrt(std::max(0.0, v));
  return ev;
}

// ---------------------------------------------------------------------------
// Characteristic roots.
// ---------------------------------------------------------------------------

// Monic characteristic polynomial coefficients by Faddeev-LeVerrier:
// p(x) = x^d + c[0] x^{d-1} + ... + c[d-1].
std::vector<double> char_poly(const Matrix& m) {
  const int d = m.rows();
  std::vector<double> c(static_cast<std::size_t>(d));
  Matrix mk = m;
  for (int k = 1; k <= d; ++k) {
    const double ck = -mk.trace() / k;
    c[static_cast<std::size_t>(k - 1)] = ck;
    if (k < d) {
      Matrix shifted = mk;
      for (int i = 0; i < d; ++i) shifted(i, i) += ck;
      mk = m * shifted;
    }
  }
  return c;
}

cd horner(const std::vector<double>& c, cd x) {
  cd v = 1.0;
  for (double ck : c) v = v * x + ck;
  return v;
}

cd horner_deriv(const std::vector<double>& c, cd x) {
  const int d = static_cast<int>(c.size());
  cd v = static_cast<double>(d);
  for (int k = 0; k < d - 1; ++k) v = v * x + static_cast<double>(d - 1 - k) * c[static_cast<std::size_t>(k)];
  return v;
}

void newton_polish(const std::vector<double>& c, cd& z, double scale) {
  for (int it = 0; it < 3; ++it) {
    const cd p = horner(c, z);
    const cd dp = horner_deriv(c, z);
    if (std::abs(dp) < 1e-12 * std::max(1.0, scale)) break;
    const cd step = p / dp;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    z -= step;
  }
}

std::vector<cd> roots_quadratic(double b, double c) {
  // x^2 + b x + c
  const cd disc = cd(b * b - 4.0 * c, 0.0);
  const cd sq = std::sqrt(disc);
  cd r1, r2;
  if (disc.real() >= 0.0) {
    // avoid cancellation: pick the large-magnitude root first
    const double q = -(b + std::copysign(std::abs(sq), b)) / 2.0;
    r1 = q;
    r2 = (q != 0.0) ? cd(c / q, 0.0) : cd(0.0, 0.0);
  } else {
    r1 = (-b + sq.real()) / 2.0 + cd(0, 1) * (sq.imag() / 2.0);
    r2 = std::conj(r1);
  }
  return {r1, r2};
}

std::vector<cd> roots_cubic(const std::vector<double>& c) {
  // x^3 + a x^2 + b x + cc, depressed via x = t - a/3
  const double a = c[0], b = c[1], cc = c[2];
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + cc;
  const double shift = -a / 3.0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  std::vector<cd> out;
  const double scale = std::max({std::fabs(p), std::fabs(q), 1.0});
  if (disc > 1e-14 * scale * scale) {
    // one real root, conjugate complex pair
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + sq);
    const double v = std::cbrt(-q / 2.0 - sq);
    const double t1 = u + v;
    out.push_back(cd(t1 + shift, 0.0));
    const double re = -t1 / 2.0 + shift;
    const double im = std::sqrt(3.0) / 2.0 * std::fabs(u - v);
    out.push_back(cd(re, im));
    out.push_back(cd(re, -im));
  } else {
    // three real roots (trigonometric form); clamp handles disc ~ 0
    const double mp = std::max(0.0, -p);
    const double r = 2.0 * std::sqrt(mp / 3.0);
    double arg = 0.0;
    if (r > 0.0) {
      arg = -3.0 * q / (mp * r);  // cos(3 theta) = -4q / r^3
      arg = std::clamp(arg, -1.0, 1.0);
    }
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const double t = r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
      out.push_back(cd(t + shift, 0.0));
    }
  }
  for (auto& z : out) newton_polish(c, z, scale);
  return out;
}

std::vector<cd> roots_durand_kerner(const std::vector<double>& c) {
  const int d = static_cast<int>(c.size());
  double radius = 1.0;
  for (double ck : c) radius = std::max(radius, 1.0 + std::fabs(ck));
  std::vector<cd> z(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const double ang = 2.0 * std::numbers::pi * j / d + 0.4;
    z[static_cast<std::size_t>(j)] = radius * cd(std::cos(ang), std::sin(ang));
  }
  for (int it = 0; it < 300; ++it) {
    double moved = 0;
    for (int j = 0; j < d; ++j) {
      cd denom = 1.0;
      for (int k = 0; k < d; ++k)
        if (k != j) denom *= z[static_cast<std::size_t>(j)] - z[static_cast<std::size_t>(k)];
      if (std::abs(denom) == 0.0) {
        z[static_cast<std::size_t>(j)] += cd(1e-8 * radius, 1e-8 * radius);
        continue;
      }
      const cd step = horner(c, z[static_cast<std::size_t>(j)]) / denom;
      z[static_cast<std::size_t>(j)] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-15 * radius) break;
  }
  for (auto& zj : z) newton_polish(c, zj, radius);
  return z;
}

std::vector<cd> char_roots(const Matrix& m);

// Exact zero-pattern splitting: if the matrix is block triangular with the
// split after row k (either the lower-left or the upper-right block being
// exactly zero), recurse on the diagonal blocks. Products of structured
// families keep their zero pattern bit-exactly, so this path returns exact
// eigenvalues for every construction in this project.
bool try_split(const Matrix& m, std::vector<cd>& out) {
  const int d = m.rows();
  for (int k = 1; k < d; ++k) {
    bool lower_zero = true, upper_zero = true;
    for (int i = k; i < d && lower_zero; ++i)
      for (int j = 0; j < k; ++j)
        if (m(i, j) != 0.0) {
          lower_zero = false;
          break;
        }
    for (int i = 0; i < k && upper_zero; ++i)
      for (int j = k; j < d; ++j)
        if (m(i, j) != 0.0) {
          upper_zero = false;
          break;
        }
    if (lower_zero || upper_zero) {
      auto r1 = char_roots(m.block(0, 0, k, k));
      auto r2 = char_roots(m.block(k, k, d - k, d - k));
      out.insert(out.end(), r1.begin(), r1.end());
      out.insert(out.end(), r2.begin(), r2.end());
      return true;
    }
  }
  return false;
}

std::vector<cd> char_roots(const Matrix& m) {
  const int d = m.rows();
  if (d == 1) return {cd(m(0, 0), 0.0)};
  std::vector<cd> split;
  if (try_split(m, split)) return split;
  const auto c = char_poly(m);
  if (d == 2) return roots_quadratic(c[0], c[1]);
  if (d == 3) return roots_cubic(c);
  return roots_durand_kerner(c);
}

}  // namespace

Spectrum spectrum(const Matrix& m) {
  if (!m.square()) throw invalid_input("spectrum: matrix must be square");
  if (!m.finite()) throw invalid_input("spectrum: non-finite entries");
  Spectrum sp;
  sp.roots = char_roots(m);
  double scale = 0;
  for (const auto& z : sp.roots) scale = std::max(scale, std::abs(z));
  // cluster raw roots into eigenvalues with algebraic multiplicity
  const double ctol = 1e-7 * std::max(1.0, scale);
  std::vector<cd> pending = sp.roots;
  std::sort(pending.begin(), pending.end(), [](cd a, cd b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<bool> used(pending.size(), false);
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (used[i]) continue;
    cd sum = pending[i];
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < pending.size(); ++j) {
      if (!used[j] && std::abs(pending[j] - sum / static_cast<double>(count)) <= ctol) {
        sum += pending[j];
        ++count;
        used[j] = true;
      }
    }
    cd mean = sum / static_cast<double>(count);
    if (std::fabs(mean.imag()) <= ctol) mean = cd(mean.real(), 0.0);
    sp.eigenvalues.push_back({mean, count});
  }
  std::sort(sp.eigenvalues.begin(), sp.eigenvalues.end(), [](const auto& a, const auto& b) {
    return std::abs(a.value) > std::abs(b.value);
  });
  sp.spectral_radius = 0;
  for (const auto& e : sp.eigenvalues) sp.spectral_radius = std::max(sp.spectral_radius, std::abs(e.value));
  return sp;
}

double spectral_radius(const Matrix& m) { return spectrum(m).spectral_radius; }

std::vector<double> singular_values(const Matrix& m) {
  if (!m.finite()) throw invalid_input("singular_values: non-finite entries");
  return singular_values_flat(m.row_major(), m.rows(), m.cols());
}

double operator_norm(const Matrix& m) {
  auto sv = singular_values(m);
  return sv.empty() ? 0.0 : sv.front();
}

namespace {

// rank of a complex matrix at relative threshold tol, via the realification
// [[Re, -Im], [Im, Re]] whose singular values are those of the input, each
// doubled in multiplicity.
int rank_complex(const std::vector<cd>& b, int d, double tol) {
  const int n = 2 * d;
  std::vector<double> r(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const cd v = b[static_cast<std::size_t>(i * d + j)];
      r[static_cast<std::size_t>(i * n + j)] = v.real();
      r[static_cast<std::size_t>(i * n + (j + d))] = -v.imag();
      r[static_cast<std::size_t>((i + d) * n + j)] = v.imag();
      r[static_cast<std::size_t>((i + d) * n + (j + d))] = v.real();
    }
  auto sv = singular_values_flat(r, n, n);
  const double smax = sv.empty() ? 0.0 : sv.front();
  if (smax == 0.0) return 0;
  int count = 0;
  for (double s : sv)
    if (s > tol * smax) ++count;
  return count / 2;
}

std::vector<cd> cmul(const std::vector<cd>& x, const std::vector<cd>& y, int d) {
  std::vector<cd> r(static_cast<std::size_t>(d * d), cd(0, 0));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const cd v = x[static_cast<std::size_t>(i * d + k)];
      if (v == cd(0, 0)) continue;
      for (int j = 0; j < d; ++j) r[static_cast<std::size_t>(i * d + j)] += v * y[static_cast<std::size_t>(k * d + j)];
    }
  return r;
}

}  // namespace

int jordan_order(const Matrix& m, std::complex<double> lambda, double tol) {
  if (!m.square()) throw invalid_input("jordan_order: matrix must be square");
  if (!(tol > 0.0)) throw invalid_input("jordan_order: tol must be positive");
  const int d = m.rows();
  std::vector<cd> b(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      b[static_cast<std::size_t>(i * d + j)] = cd(m(i, j), 0.0) - (i == j ? lambda : cd(0, 0));
  int prev = d;
  int largest = 0;
  std::vector<cd> power = b;
  for (int j = 1; j <= d; ++j) {
    const int r = rank_complex(power, d, tol);
    if (r < prev) largest = j;
    if (r == prev || r == 0) break;
    prev = r;
    if (j < d) power = cmul(power, b, d);
  }
  return largest;
}

Matrix solve_linear(const Matrix& a, const Matrix& b) {
  if (!a.square() || a.rows() != b.rows()) throw invalid_input("solve_linear: shape mismatch");
  const int n = a.rows(), m = b.cols();
  Matrix lu = a, x = b;
  std::array<int, kMaxDim> perm{};
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::fabs(lu(i, col)) > std::fabs(lu(piv, col))) piv = i;
    if (lu(piv, col) == 0.0) throw invalid_input("solve_linear: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(lu(col, j), lu(piv, j));
      for (int j = 0; j < m; ++j) std::swap(x(col, j), x(piv, j));
    }
    for (int i = col + 1; i < n; ++i) {
      const double f = lu(i, col) / lu(col, col);
      lu(i, col) = 0.0;
      for (int j = col + 1; j < n; ++j) lu(i, j) -= f * lu(col, j);
      for (int j = 0; j < m; ++j) x(i, j) -= f * x(col, j);
    }
  }
  for (int col = n - 1; col >= 0; --col) {
    for (int j = 0; j < m; ++j) x(col, j) /= lu(col, col);
    for (int i = 0; i < col; ++i)
      for (int j = 0; j < m; ++j) x(i, j) -= lu(i, col) * x(col, j);
  }
  return x;
}

Matrix matrix_exp(const Matrix& m, double t) {
  if (!m.square()) throw invalid_input("matrix_exp: matrix must be square");
  if (!m.finite() || !std::isfinite(t)) throw invalid_input("matrix_exp: non-finite input");
  const int d = m.rows();
  Matrix a = t * m;

  double norm1 = 0;  // max column sum
  for (int j = 0; j < d; ++j) {
    double s = 0;
    for (int i = 0; i < d; ++i) s += std::fabs(a(i, j));
    norm1 = std::max(norm1, s);
  }
  constexpr double theta13 = 5.371920351148152;
  int s = 0;
  if (norm1 > theta13) {
    s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    a = std::ldexp(1.0, -s) * a;
  }

  static constexpr std::array<double, 14> bc = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};

  const Matrix id = Matrix::identity(d);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u = a * (a6 * (bc[13] * a6 + bc[11] * a4 + bc[9] * a2) +
                        bc[7] * a6 + bc[5] * a4 + bc[3] * a2 + bc[1] * id);
  const Matrix v = a6 * (bc[12] * a6 + bc[10] * a4 + bc[8] * a2) +
                   bc[6] * a6 + bc[4] * a4 + bc[2] * a2 + bc[0] * id;
  Matrix r = solve_linear(v - u, v + u);
  for (int i = 0; i < s; ++i) {
    r = r * r;
    if (!r.finite() || r.max_abs() > 1e150)
      throw numeric_overflow("matrix_exp: overflow during repeated squaring");
  }
  return r;
}

}  // namespace lss
