#pragma once

// Spectral data for small dense matrices: eigenvalues with algebraic
// multiplicities, spectral radius, Euclidean operator norm, Jordan-structure
// probing by numerical rank, and the matrix exponential.

#include <complex>
#include <vector>

#include "lss/matrix.hpp"

namespace lss {

struct Spectrum {
  struct Value {
    std::complex<double> value;
    int multiplicity;
  };
  std::vector<Value> eigenvalues;            // clustered, modulus-descending
  std::vector<std::complex<double>> roots;   // raw characteristic roots, size dim
  double spectral_radius = 0.0;
};

// Characteristic roots via exact structural splitting (block-triangular zero
// patterns), closed forms for dim <= 3, and a polished Durand-Kerner
// iteration above that.
Spectrum spectrum(const Matrix& m);

double spectral_radius(const Matrix& m);

// Largest singular value (Euclidean operator norm). Works for rectangular
// blocks as well.
double operator_norm(const Matrix& m);

// All singular values, descending.
std::vector<double> singular_values(const Matrix& m);

// Size of the largest Jordan block of m at eigenvalue lambda, from the rank
// sequence of (m - lambda*I)^j. Singular values below tol * sigma_max count
// as zero. Returns 0 when lambda is not an eigenvalue at that threshold.
int jordan_order(const Matrix& m, std::complex<double> lambda, double tol);

// e^{t m} by Pade-13 scaling and squaring.
Matrix matrix_exp(const Matrix& m, double t = 1.0);

// Solve a x = b for small square a (partial pivoting). Used by matrix_exp
// and exposed for tests.
Matrix solve_linear(const Matrix& a, const Matrix& b);

}  // namespace lss
