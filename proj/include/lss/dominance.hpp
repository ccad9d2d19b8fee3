#pragma once

// Candidate dominant-product search and finite-horizon dominance
// certification. A certificate here is an exhaustive check of every cyclic
// class of words up to the stated horizon -- NOT a proof over all products;
// reports carry the horizon so the two cannot be confused.

#include <complex>
#include <string>
#include <vector>

#include "lss/family.hpp"
#include "lss/growth.hpp"
#include "lss/words.hpp"

namespace lss {

struct LeadingEigenvalue {
  std::complex<double> value{0.0, 0.0};
  bool unique = false;  // only this value (or its conjugate pair) attains the max modulus
  bool simple = false;  // algebraic multiplicity 1 (per conjugate member)
};

// Eigenvalue of maximal modulus with uniqueness/simplicity qualification at
// relative tolerance tol.
LeadingEigenvalue leading_eigenvalue(const Matrix& prod, double tol);

struct CandidateDominant {
  Word pi;               // lexicographically least in its cyclic class
  double rho_estimate;   // max of spectral_radius(product)^{1/length}
  bool complete = true;  // false when the budget cut the sweep short
};

// Best simple word of length <= lmax by normalized spectral radius.
CandidateDominant candidate_dominant(const MatrixFamily& fam, int lmax,
                                     const EnumOptions& opts = {});

struct DominanceCertificate {
  Word pi;
  int horizon = 0;
  double q = 0.0;
  double rho_estimate = 0.0;
  LeadingEigenvalue leading;
  std::vector<Word> violations;     // canonical representatives, at most 64 kept
  std::size_t violation_count = 0;  // full count
  bool certified() const { return violation_count == 0; }
};

// Checks that every cyclic class of words of length <= horizon that is not a
// power of a cyclic permutation of pi has spectral radius of the normalized
// product strictly below q. The family is normalized by rho_estimate; when
// NaN it defaults to spectral_radius(pi(A))^{1/|pi|}.
DominanceCertificate verify_dominance(const MatrixFamily& fam, const Word& pi, int horizon,
                                      double q,
                                      double rho_estimate = std::numeric_limits<double>::quiet_NaN(),
                                      const EnumOptions& opts = {});

std::string certificate_report(const DominanceCertificate& cert);

}  // namespace lss
