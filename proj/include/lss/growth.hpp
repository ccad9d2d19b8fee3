#pragma once

// Worst-case product-norm growth M_k = max over length-k products of the
// operator norm, joint-spectral-radius bounds from finite products, and
// log-log growth-exponent fitting.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lss/family.hpp"
#include "lss/matrix.hpp"
#include "lss/words.hpp"

namespace lss {

// Any submultiplicative operator norm; defaults to the Euclidean one.
// Gauge-norm variants plug in here for invariant-norm experiments.
using MatrixNorm = std::function<double(const Matrix&)>;

struct EnumOptions {
  std::uint64_t budget = 20'000'000;  // maximum number of length-k words
  int threads = 0;                    // 0 = library default
  MatrixNorm norm;                    // empty = Euclidean operator norm
};

struct MkResult {
  double mk = 0.0;
  Word witness;  // lexicographically least maximizer
};

// Exact maximum by depth-first enumeration with safe pruning
// (norm(prefix) * maxnorm^remaining <= incumbent). Parallelized over word
// prefixes; the value and the witness are independent of the thread count.
// Throws budget_exceeded when m^k would exceed the budget.
MkResult exact_mk(const MatrixFamily& fam, int k, const EnumOptions& opts = {});

struct GrowthEntry {
  int k;
  double mk;
  Word witness;
};

struct GrowthSeries {
  std::vector<GrowthEntry> entries;
  bool budget_hit = false;
  int achieved_k = 0;  // largest exact k computed
};

GrowthSeries mk_series(const MatrixFamily& fam, int kmax, const EnumOptions& opts = {});

struct JsrBounds {
  double lower = 0.0;
  double upper = 0.0;
  Word witness_word_lower;
  int k_used = 0;
  bool complete = true;  // false when the budget stopped the sweep early
};

// lower = max over k <= kmax, words w of spectral_radius(product(w))^{1/k};
// upper = min over k of exact_mk^{1/k}.
JsrBounds jsr_bounds(const MatrixFamily& fam, int kmax, const EnumOptions& opts = {});

struct SlopeFit {
  double slope = 0.0;
  double stderr_ = 0.0;
  int points = 0;
};

// Least-squares slope of log(mk) against log(k) over entries with k >= k_min.
SlopeFit growth_exponent(const GrowthSeries& series, int k_min);

std::string growth_csv(const GrowthSeries& series);

}  // namespace lss
