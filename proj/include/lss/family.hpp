#pragma once

// A finite indexed set of same-size square matrices and the word -> product
// map. Products follow the word left to right: product("01") = A0 * A1.

#include <string>
#include <vector>

#include "lss/errors.hpp"
#include "lss/matrix.hpp"
#include "lss/words.hpp"

namespace lss {

struct MatrixFamily {
  std::vector<Matrix> matrices;
  std::vector<std::string> labels;  // optional; empty or matching size

  MatrixFamily() = default;
  explicit MatrixFamily(std::vector<Matrix> ms, std::vector<std::string> ls = {})
      : matrices(std::move(ms)), labels(std::move(ls)) {
    validate();
  }

  int dim() const { return matrices.empty() ? 0 : matrices.front().rows(); }
  std::size_t size() const { return matrices.size(); }
  const Matrix& operator[](std::size_t i) const { return matrices[i]; }

  void validate() const {
    if (matrices.empty()) throw invalid_input("MatrixFamily: family must be nonempty");
    const int d = matrices.front().rows();
    for (const auto& m : matrices) {
      if (!m.square() || m.rows() != d) throw invalid_input("MatrixFamily: uniform square dimension required");
      if (!m.finite()) throw invalid_input("MatrixFamily: non-finite entries");
    }
    if (!labels.empty() && labels.size() != matrices.size())
      throw invalid_input("MatrixFamily: label count mismatch");
  }
};

inline Matrix word_product(const MatrixFamily& fam, const Word& w) {
  Matrix p = Matrix::identity(fam.dim());
  for (Letter l : w.letters) {
    if (l >= fam.size()) throw invalid_input("word_product: letter out of range");
    p = p * fam[l];
  }
  return p;
}

// The marginally stable 2x2 fixture: letter 0 is the contracting s*B, letter
// 1 is the involution [[1, a], [0, -1]].
inline MatrixFamily example1_family(double a = 2.0, const Matrix& b = Matrix{{1, 1}, {0, 1}},
                                    double s = 0.1) {
  if (!(a > 0) || !(s > 0)) throw invalid_input("example1_family: a and s must be positive");
  Matrix a1{{1.0, a}, {0.0, -1.0}};
  return MatrixFamily({s * b, a1}, {"A2", "A1"});
}

}  // namespace lss
