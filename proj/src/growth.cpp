#include "lss/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lss/eig.hpp"
#include "lss/errors.hpp"

namespace lss {

namespace {

// number of length-k words, clamped above cap
std::uint64_t pow_count(std::size_t m, int k, std::uint64_t cap) {
  std::uint64_t c = 1;
  for (int i = 0; i < k; ++i) {
    if (c > cap / m) return cap + 1;
    c *= m;
  }
  return c;
}

int largest_k_in_budget(std::size_t m, std::uint64_t budget) {
  if (m <= 1) return 64;
  int k = 0;
  std::uint64_t c = 1;
  while (c <= budget / m) {
    c *= m;
    ++k;
  }
  return k;
}

MatrixNorm resolve_norm(const EnumOptions& opts) {
  if (opts.norm) return opts.norm;
  return [](const Matrix& m) { return operator_norm(m); };
}

int resolve_threads(const EnumOptions& opts) {
#ifdef _OPENMP
  return opts.threads > 0 ? opts.threads : omp_get_max_threads();
#else
  return 1;
#endif
}

struct TaskBest {
  double value = -1.0;
  Word witness;
};

// Depth-first scan of all completions of the current word; the objective is
// evaluated at the leaves. prefix_bound(prod) * bound_pow[remaining]
// majorizes every leaf below the node (submultiplicativity), so the
// incumbent test is a safe prune with no effect on the maximum. The
// incumbent is task-local, updated on strict improvement only, which keeps
// the first maximizer in lexicographic order.
template <typename Bound, typename Leaf>
void dfs_scan(const MatrixFamily& fam, int k, const Matrix& prod, Word& word,
              const std::vector<double>& bound_pow, const Bound& prefix_bound, TaskBest& best,
              const Leaf& leaf_value) {
  const int depth = static_cast<int>(word.size());
  if (depth == k) {
    const double v = leaf_value(prod);
    if (v > best.value) {
      best.value = v;
      best.witness = word;
    }
    return;
  }
  if (prefix_bound(prod) * bound_pow[static_cast<std::size_t>(k - depth)] <= best.value) return;
  for (std::size_t j = 0; j < fam.size(); ++j) {
    word.letters.push_back(static_cast<Letter>(j));
    dfs_scan(fam, k, prod * fam[j], word, bound_pow, prefix_bound, best, leaf_value);
    word.letters.pop_back();
  }
}

// Deterministic parallel maximum over all length-k words: tasks are the
// words of a fixed prefix length in lexicographic order, each task runs an
// independent serial scan, and the merge prefers the earlier task on value
// ties. The result is identical for every thread count.
template <typename Leaf>
MkResult parallel_scan(const MatrixFamily& fam, int k, const EnumOptions& opts,
                       const Leaf& leaf_value) {
  const std::size_t m = fam.size();
  const MatrixNorm norm = resolve_norm(opts);
  double bound_factor = 0;
  for (const auto& a : fam.matrices) bound_factor = std::max(bound_factor, norm(a));
  std::vector<double> bound_pow(static_cast<std::size_t>(k) + 1, 1.0);
  for (int i = 1; i <= k; ++i)
    bound_pow[static_cast<std::size_t>(i)] = bound_pow[static_cast<std::size_t>(i - 1)] * bound_factor;

  // prefix bound: the Frobenius norm dominates the Euclidean operator norm
  // and is far cheaper per node; a caller-supplied norm is its own bound
  const MatrixNorm prefix_bound =
      opts.norm ? opts.norm : MatrixNorm([](const Matrix& p) { return p.frobenius(); });

  const int threads = resolve_threads(opts);
  int prefix_len = 0;
  std::uint64_t tasks = 1;
  while (prefix_len < k && tasks < static_cast<std::uint64_t>(4 * threads) && tasks * m <= 4096) {
    tasks *= m;
    ++prefix_len;
  }

  std::vector<Word> prefixes;
  prefixes.reserve(static_cast<std::size_t>(tasks));
  Word cur;
  const auto gen = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == prefix_len) {
      prefixes.push_back(cur);
      return;
    }
    for (std::size_t j = 0; j < m; ++j) {
      cur.letters.push_back(static_cast<Letter>(j));
      self(self);
      cur.letters.pop_back();
    }
  };
  gen(gen);

  std::vector<TaskBest> results(prefixes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(prefixes.size()); ++t) {
    Word w = prefixes[static_cast<std::size_t>(t)];
    TaskBest local;
    dfs_scan(fam, k, word_product(fam, w), w, bound_pow, prefix_bound, local, leaf_value);
    results[static_cast<std::size_t>(t)] = std::move(local);
  }

  MkResult out;
  out.mk = -1.0;
  for (const auto& r : results) {
    if (r.value > out.mk) {
      out.mk = r.value;
      out.witness = r.witness;
    }
  }
  return out;
}

}  // namespace

MkResult exact_mk(const MatrixFamily& fam, int k, const EnumOptions& opts) {
  fam.validate();
  if (k <= 0) throw invalid_input("exact_mk: k must be positive");
  if (pow_count(fam.size(), k, opts.budget) > opts.budget)
    throw budget_exceeded("exact_mk: m^k exceeds the product budget",
                          largest_k_in_budget(fam.size(), opts.budget), opts.budget);
  const MatrixNorm norm = resolve_norm(opts);
  return parallel_scan(fam, k, opts, [&](const Matrix& p) { return norm(p); });
}

GrowthSeries mk_series(const MatrixFamily& fam, int kmax, const EnumOptions& opts) {
  GrowthSeries s;
  for (int k = 1; k <= kmax; ++k) {
    try {
      auto r = exact_mk(fam, k, opts);
      s.entries.push_back({k, r.mk, std::move(r.witness)});
      s.achieved_k = k;
    } catch (const budget_exceeded&) {
      s.budget_hit = true;
      break;
    }
  }
  return s;
}

JsrBounds jsr_bounds(const MatrixFamily& fam, int kmax, const EnumOptions& opts) {
  fam.validate();
  if (kmax <= 0) throw invalid_input("jsr_bounds: kmax must be positive");
  JsrBounds b;
  b.upper = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kmax; ++k) {
    if (pow_count(fam.size(), k, opts.budget) > opts.budget) {
      b.complete = false;
      break;
    }
    const auto mk = exact_mk(fam, k, opts);
    b.upper = std::min(b.upper, std::pow(mk.mk, 1.0 / k));

    // Spectral radius is rotation-invariant, so the lexicographically first
    // maximizer is automatically the least representative of its cyclic
    // class. rho(P) <= ||P|| keeps the norm-based prune safe here.
    const auto rho = parallel_scan(fam, k, opts, [](const Matrix& p) { return spectral_radius(p); });
    const double lower_k = std::pow(std::max(rho.mk, 0.0), 1.0 / k);
    if (b.k_used == 0 || lower_k > b.lower) {
      b.lower = lower_k;
      b.witness_word_lower = rho.witness;
    }
    b.k_used = k;
  }
  if (b.upper == std::numeric_limits<double>::infinity()) b.upper = 0.0;
  return b;
}

SlopeFit growth_exponent(const GrowthSeries& series, int k_min) {
  std::vector<double> xs, ys;
  for (const auto& e : series.entries) {
    if (e.k >= k_min) {
      if (!(e.mk > 0)) throw invalid_input("growth_exponent: mk must be positive");
      xs.push_back(std::log(static_cast<double>(e.k)));
      ys.push_back(std::log(e.mk));
    }
  }
  const int n = static_cast<int>(xs.size());
  if (n < 3) throw insufficient_data("growth_exponent: need at least 3 entries with k >= k_min");
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) mx += xs[static_cast<std::size_t>(i)], my += ys[static_cast<std::size_t>(i)];
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[static_cast<std::size_t>(i)] - mx) * (xs[static_cast<std::size_t>(i)] - mx);
    sxy += (xs[static_cast<std::size_t>(i)] - mx) * (ys[static_cast<std::size_t>(i)] - my);
  }
  if (sxx == 0) throw insufficient_data("growth_exponent: degenerate abscissa");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.points = n;
  const double icept = my - fit.slope * mx;
  double rss = 0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[static_cast<std::size_t>(i)] - (fit.slope * xs[static_cast<std::size_t>(i)] + icept);
    rss += r * r;
  }
  fit.stderr_ = std::sqrt(rss / ((n - 2) * sxx));
  return fit;
}

std::string growth_csv(const GrowthSeries& series) {
  std::ostringstream os;
  os << "k,mk,witness\n";
  os.precision(17);
  for (const auto& e : series.entries) os << e.k << "," << e.mk << "," << e.witness.str() << "\n";
  return os.str();
}

}  // namespace lss
