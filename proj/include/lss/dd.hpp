#pragma once

// Double-double arithmetic (Dekker/Knuth error-free transforms), just enough
// for reducing n*alpha mod 2*pi without losing the low bits when n*alpha is
// of order 1e6. sin/cos of the reduced representative are then accurate to
// ~1e-25 absolute, far below every tolerance used downstream.

#include <cmath>

namespace lss::dd {

struct Double2 {
  double hi = 0.0;
  double lo = 0.0;
};

inline Double2 two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline Double2 quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline Double2 two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline Double2 add(Double2 a, Double2 b) {
  Double2 s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline Double2 sub(Double2 a, Double2 b) { return add(a, {-b.hi, -b.lo}); }

inline Double2 mul(Double2 a, Double2 b) {
  Double2 p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline Double2 mul(Double2 a, double d) {
  Double2 p = two_prod(a.hi, d);
  p.lo += a.lo * d;
  return quick_two_sum(p.hi, p.lo);
}

inline Double2 div(Double2 a, Double2 b) {
  const double q1 = a.hi / b.hi;
  Double2 r = sub(a, mul(b, q1));
  const double q2 = r.hi / b.hi;
  r = sub(r, mul(b, q2));
  const double q3 = r.hi / b.hi;
  Double2 q = quick_two_sum(q1, q2);
  return add(q, {q3, 0.0});
}

inline double to_double(Double2 a) { return a.hi + a.lo; }

inline Double2 sqrt(double a) {
  Double2 y{std::sqrt(a), 0.0};
  for (int i = 0; i < 2; ++i) {  // Newton in double-double
    const Double2 err = sub(mul(y, y), {a, 0.0});
    y = sub(y, div(err, mul(y, 2.0)));
  }
  return y;
}

inline constexpr Double2 kPi{3.141592653589793116, 1.2246467991473531772e-16};
inline const Double2 kTwoPi = mul(kPi, 2.0);

// n*alpha reduced into [0, 2*pi). alpha is taken at face value as a double,
// so the result is consistent with products of matrices built from the same
// double (the reduction itself carries ~1e-26 absolute error for n <= 1e12).
inline double reduce_mod_2pi(double alpha, long long n) {
  Double2 u = mul(Double2{alpha, 0.0}, static_cast<double>(n));
  const double k = std::floor(to_double(u) / to_double(kTwoPi));
  Double2 r = sub(u, mul(kTwoPi, k));
  while (to_double(r) < 0.0) r = add(r, kTwoPi);
  while (to_double(r) >= to_double(kTwoPi)) r = sub(r, kTwoPi);
  return to_double(r);
}

// Fractional part of n*x for x in (0,1), with the absolute error of the
// computation as a second output so callers can tell "verified" from
// "beyond double-double precision".
struct Frac {
  double value;
  double err_bound;
};

inline Frac fractional_part(double x, long long n) {
  Double2 u = mul(Double2{x, 0.0}, static_cast<double>(n));
  const double k = std::floor(to_double(u));
  Double2 r = sub(u, {k, 0.0});
  while (to_double(r) < 0.0) r = add(r, {1.0, 0.0});
  while (to_double(r) >= 1.0) r = sub(r, {1.0, 0.0});
  // one rounding per operation on the ~1e-32 tail
  const double err = 8e-32 * static_cast<double>(n > 0 ? n : 1);
  return {to_double(r), err};
}

}  // namespace lss::dd
