#pragma once

// Marginal-instability classification of two-block upper-triangular families
// whose diagonal blocks have certified dominant words: the system is
// marginally unstable exactly when the dominant words match up to rotation,
// the leading eigenvalues are equal, and the assembled dominant product has a
// nontrivial Jordan block there -- and then the growth is linear.

#include <complex>
#include <string>
#include <vector>

#include "lss/dominance.hpp"
#include "lss/family.hpp"
#include "lss/matrix.hpp"

namespace lss {

struct BlockFamily {
  MatrixFamily block1;             // d1 x d1, one per letter
  MatrixFamily block2;             // d2 x d2, one per letter
  std::vector<Matrix> couplings;   // d1 x d2, one per letter

  int d1() const { return block1.dim(); }
  int d2() const { return block2.dim(); }
  std::size_t size() const { return block1.size(); }
  void validate() const;
};

// Full (d1+d2)-dimensional family with block1 top-left, couplings top-right,
// block2 bottom-right, zeros bottom-left.
MatrixFamily assemble(const BlockFamily& bf);

enum class Verdict { MarginallyStable, MarginallyUnstable };

struct Classification {
  Verdict verdict = Verdict::MarginallyStable;
  bool linear_growth = false;  // MarginallyUnstable <=> M_k grows linearly

  Word pi1, pi2;
  bool cyclic_match = false;
  std::complex<double> lambda1{0, 0}, lambda2{0, 0};
  bool eigen_match = false;
  double eigen_residual = 0.0;  // distance between the leading eigenvalues
  bool jordan_nontrivial = false;
  int jordan_order_at_lambda = 0;

  DominanceCertificate cert1, cert2;
};

// Throws hypotheses_unmet when a block's dominant word cannot be certified at
// the given horizon or its leading eigenvalue is not unique and simple; the
// verdict is conditional on those finite-horizon certificates.
Classification classify(const BlockFamily& bf, int horizon = 12, double q = 0.95,
                        double tol = 1e-8);

// Top-right block of the product over the concatenated segments, computed as
// the sum over r of P1_1 ... P1_{r-1} Q_r P2_{r+1} ... P2_k.
Matrix coupling_sum(const BlockFamily& bf, const std::vector<Word>& segment_words);

std::string classification_report(const Classification& c);

// Two-block view of the marginally stable 2x2 fixture, letters ordered like
// example1_family: 0 -> s*B, 1 -> [[1, a], [0, -1]]. B must be upper
// triangular.
BlockFamily example1_blocks(double a = 2.0, const Matrix& b = Matrix{{1, 1}, {0, 1}},
                            double s = 0.1);

}  // namespace lss
