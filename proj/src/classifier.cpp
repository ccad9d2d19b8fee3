#include "lss/classifier.hpp"

#include <cmath>
#include <sstream>

#include "lss/eig.hpp"
#include "lss/errors.hpp"

namespace lss {

void BlockFamily::validate() const {
  block1.validate();
  block2.validate();
  if (block1.size() != block2.size() || block1.size() != couplings.size())
    throw invalid_input("BlockFamily: blocks and couplings must share the alphabet");
  for (const auto& c : couplings) {
    if (c.rows() != d1() || c.cols() != d2())
      throw invalid_input("BlockFamily: coupling blocks must be d1 x d2");
    if (!c.finite()) throw invalid_input("BlockFamily: non-finite coupling");
  }
  if (d1() + d2() > kMaxDim) throw invalid_input("BlockFamily: assembled dimension exceeds 8");
}

MatrixFamily assemble(const BlockFamily& bf) {
  bf.validate();
  const int d = bf.d1() + bf.d2();
  std::vector<Matrix> out;
  out.reserve(bf.size());
  for (std::size_t i = 0; i < bf.size(); ++i) {
    Matrix m(d, d);
    m.set_block(0, 0, bf.block1[i]);
    m.set_block(0, bf.d1(), bf.couplings[i]);
    m.set_block(bf.d1(), bf.d1(), bf.block2[i]);
    out.push_back(std::move(m));
  }
  return MatrixFamily(std::move(out), bf.block1.labels);
}

namespace {

struct BlockEvidence {
  Word pi;
  DominanceCertificate cert;
  LeadingEigenvalue lead;
};

BlockEvidence certify_block(const MatrixFamily& block, int which, int horizon, double q,
                            double tol) {
  const int lmax = std::min(horizon, 8);
  const auto cand = candidate_dominant(block, lmax);
  auto cert = verify_dominance(block, cand.pi, horizon, q, cand.rho_estimate);
  if (!cert.certified()) {
    std::ostringstream os;
    os << "classify: block " << which << " dominance-uncertified at horizon " << horizon
       << " (candidate " << cand.pi.str() << ", " << cert.violation_count << " violations)";
    throw hypotheses_unmet(os.str(), which);
  }
  auto lead = leading_eigenvalue(word_product(block, cand.pi), tol);
  if (!lead.unique || !lead.simple) {
    std::ostringstream os;
    os << "classify: block " << which << " leading eigenvalue of " << cand.pi.str()
       << " is not unique and simple";
    throw hypotheses_unmet(os.str(), which);
  }
  return {cand.pi, std::move(cert), lead};
}

}  // namespace

Classification classify(const BlockFamily& bf, int horizon, double q, double tol) {
  bf.validate();
  if (!(tol > 0)) throw invalid_input("classify: tol must be positive");
  Classification c;

  auto e1 = certify_block(bf.block1, 1, horizon, q, tol);
  auto e2 = certify_block(bf.block2, 2, horizon, q, tol);
  c.pi1 = e1.pi;
  c.pi2 = e2.pi;
  c.lambda1 = e1.lead.value;
  c.lambda2 = e2.lead.value;
  c.cert1 = std::move(e1.cert);
  c.cert2 = std::move(e2.cert);

  c.cyclic_match = cyclically_equal(c.pi1, c.pi2);
  const double scale = std::max({std::abs(c.lambda1), std::abs(c.lambda2), 1e-300});
  c.eigen_residual = std::min(std::abs(c.lambda1 - c.lambda2),
                              std::abs(c.lambda1 - std::conj(c.lambda2)));
  c.eigen_match = c.eigen_residual <= tol * scale;

  if (c.cyclic_match && c.eigen_match) {
    // condition 2, second half: nontrivial Jordan block of the assembled
    // dominant product at the common leading eigenvalue (rotation of pi is a
    // similarity, so checking pi1 suffices)
    const Matrix prod = word_product(assemble(bf), c.pi1);
    c.jordan_order_at_lambda = jordan_order(prod, c.lambda1, tol);
    c.jordan_nontrivial = c.jordan_order_at_lambda >= 2;
  }

  const bool unstable = c.cyclic_match && c.eigen_match && c.jordan_nontrivial;
  c.verdict = unstable ? Verdict::MarginallyUnstable : Verdict::MarginallyStable;
  c.linear_growth = unstable;
  return c;
}

Matrix coupling_sum(const BlockFamily& bf, const std::vector<Word>& segment_words) {
  bf.validate();
  if (segment_words.empty()) throw invalid_input("coupling_sum: need at least one segment");
  const auto full = assemble(bf);
  const int d1 = bf.d1(), d2 = bf.d2();
  const std::size_t k = segment_words.size();

  std::vector<Matrix> p1(k), p2(k), qr(k);
  for (std::size_t j = 0; j < k; ++j) {
    const Matrix w = word_product(full, segment_words[j]);
    p1[j] = w.block(0, 0, d1, d1);
    qr[j] = w.block(0, d1, d1, d2);
    p2[j] = w.block(d1, d1, d2, d2);
  }

  // prefix[r] = P1_1 ... P1_r, suffix[r] = P2_r ... P2_k
  std::vector<Matrix> prefix(k + 1), suffix(k + 2);
  prefix[0] = Matrix::identity(d1);
  for (std::size_t j = 0; j < k; ++j) prefix[j + 1] = prefix[j] * p1[j];
  suffix[k + 1] = Matrix::identity(d2);
  suffix[k] = p2[k - 1];
  for (std::size_t j = k - 1; j >= 1; --j) suffix[j] = p2[j - 1] * suffix[j + 1];

  Matrix sum(d1, d2);
  for (std::size_t r = 1; r <= k; ++r) sum = sum + prefix[r - 1] * qr[r - 1] * suffix[r + 1];
  return sum;
}

std::string classification_report(const Classification& c) {
  std::ostringstream os;
  os.precision(12);
  const auto cx = [&](std::complex<double> z) {
    std::ostringstream t;
    t.precision(12);
    t << z.real();
    if (z.imag() != 0) t << (z.imag() > 0 ? "+" : "") << z.imag() << "i";
    return t.str();
  };
  os << "classification (conditional on finite-horizon dominance certificates)\n";
  os << "  verdict:        "
     << (c.verdict == Verdict::MarginallyUnstable ? "MarginallyUnstable" : "MarginallyStable")
     << "\n";
  os << "  growth:         " << (c.linear_growth ? "linear (M_k ~ k)" : "bounded") << "\n";
  os << "  dominant words: pi1=" << c.pi1.str() << "  pi2=" << c.pi2.str()
     << "  cyclic_match=" << (c.cyclic_match ? "yes" : "no") << "\n";
  os << "  leading eigenvalues: lambda1=" << cx(c.lambda1) << "  lambda2=" << cx(c.lambda2)
     << "  eigen_match=" << (c.eigen_match ? "yes" : "no") << " (residual " << c.eigen_residual
     << ")\n";
  os << "  jordan block:   "
     << (c.jordan_nontrivial ? "nontrivial" : "trivial or not applicable")
     << " (order " << c.jordan_order_at_lambda << ")\n";
  os << "  block 1 " << certificate_report(c.cert1);
  os << "  block 2 " << certificate_report(c.cert2);
  return os.str();
}

BlockFamily example1_blocks(double a, const Matrix& b, double s) {
  if (!(a > 0) || !(s > 0)) throw invalid_input("example1_blocks: a and s must be positive");
  if (b.rows() != 2 || b.cols() != 2 || b(1, 0) != 0.0)
    throw invalid_input("example1_blocks: B must be 2x2 upper triangular");
  BlockFamily bf;
  bf.block1 = MatrixFamily({Matrix{{s * b(0, 0)}}, Matrix{{1.0}}}, {"A2", "A1"});
  bf.block2 = MatrixFamily({Matrix{{s * b(1, 1)}}, Matrix{{-1.0}}}, {"A2", "A1"});
  bf.couplings = {Matrix{{s * b(0, 1)}}, Matrix{{a}}};
  return bf;
}

}  // namespace lss
