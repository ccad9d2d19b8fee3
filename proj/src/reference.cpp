#include "lss/reference.hpp"

#include "lss/eig.hpp"
#include "lss/errors.hpp"

namespace lss::reference {

namespace {

template <typename Leaf>
void scan_all(const MatrixFamily& fam, int k, const Matrix& prod, Word& word, MkResult& best,
              const Leaf& leaf_value) {
  if (static_cast<int>(word.size()) == k) {
    const double v = leaf_value(prod);
    if (v > best.mk) {
      best.mk = v;
      best.witness = word;
    }
    return;
  }
  for (std::size_t j = 0; j < fam.size(); ++j) {
    word.letters.push_back(static_cast<Letter>(j));
    scan_all(fam, k, prod * fam[j], word, best, leaf_value);
    word.letters.pop_back();
  }
}

}  // namespace

MkResult exact_mk_exhaustive(const MatrixFamily& fam, int k, const MatrixNorm& norm) {
  fam.validate();
  if (k <= 0) throw invalid_input("exact_mk_exhaustive: k must be positive");
  MkResult best;
  best.mk = -1.0;
  Word w;
  if (norm) {
    scan_all(fam, k, Matrix::identity(fam.dim()), w, best, [&](const Matrix& p) { return norm(p); });
  } else {
    scan_all(fam, k, Matrix::identity(fam.dim()), w, best,
             [](const Matrix& p) { return operator_norm(p); });
  }
  return best;
}

MkResult max_rho_exhaustive(const MatrixFamily& fam, int k) {
  fam.validate();
  if (k <= 0) throw invalid_input("max_rho_exhaustive: k must be positive");
  MkResult best;
  best.mk = -1.0;
  Word w;
  scan_all(fam, k, Matrix::identity(fam.dim()), w, best,
           [](const Matrix& p) { return spectral_radius(p); });
  return best;
}

}  // namespace lss::reference
