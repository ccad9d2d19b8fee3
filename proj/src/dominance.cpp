#include "lss/dominance.hpp"

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

std::vector<Spectrum::Value> cluster_roots(const std::vector<std::complex<double>>& roots,
                                           double tol) {
  std::vector<std::complex<double>> pending = roots;
  std::sort(pending.begin(), pending.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<bool> used(pending.size(), false);
  std::vector<Spectrum::Value> out;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (used[i]) continue;
    std::complex<double> sum = pending[i];
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < pending.size(); ++j) {
      if (!used[j] && std::abs(pending[j] - sum / static_cast<double>(count)) <= tol) {
        sum += pending[j];
        ++count;
        used[j] = true;
      }
    }
    out.push_back({sum / static_cast<double>(count), count});
  }
  return out;
}

Word decode_word(std::size_t m, int len, std::uint64_t idx) {
  Word w;
  w.letters.resize(static_cast<std::size_t>(len));
  for (int i = len - 1; i >= 0; --i) {
    w.letters[static_cast<std::size_t>(i)] = static_cast<Letter>(idx % m);
    idx /= m;
  }
  return w;
}

int threads_of(const EnumOptions& opts) {
#ifdef _OPENMP
  return opts.threads > 0 ? opts.threads : omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

LeadingEigenvalue leading_eigenvalue(const Matrix& prod, double tol) {
  if (!prod.square()) throw invalid_input("leading_eigenvalue: matrix must be square");
  if (!(tol > 0)) tol = 1e-8;
  const auto sp = spectrum(prod);
  const double rho = sp.spectral_radius;
  const double band = tol * std::max(1.0, rho);
  const auto clusters = cluster_roots(sp.roots, band);

  std::vector<Spectrum::Value> attaining;
  for (const auto& c : clusters)
    if (std::abs(c.value) >= rho - band) attaining.push_back(c);

  LeadingEigenvalue lead;
  // deterministic pick: largest real part, then nonnegative imaginary part
  std::sort(attaining.begin(), attaining.end(), [](const auto& a, const auto& b) {
    if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
    return a.value.imag() > b.value.imag();
  });
  if (attaining.empty()) return lead;  // zero matrix: rho = 0 cluster always attains, not reachable
  lead.value = attaining.front().value;
  if (attaining.size() == 1) {
    lead.unique = true;
    lead.simple = attaining.front().multiplicity == 1;
  } else if (attaining.size() == 2) {
    const auto& a = attaining[0];
    const auto& b = attaining[1];
    const bool conjugate_pair =
        std::abs(a.value - std::conj(b.value)) <= band && std::fabs(a.value.imag()) > band;
    lead.unique = conjugate_pair;
    lead.simple = conjugate_pair && a.multiplicity == 1 && b.multiplicity == 1;
    if (conjugate_pair && lead.value.imag() < 0) lead.value = std::conj(lead.value);
  }
  return lead;
}

CandidateDominant candidate_dominant(const MatrixFamily& fam, int lmax, const EnumOptions& opts) {
  fam.validate();
  if (lmax <= 0) throw invalid_input("candidate_dominant: lmax must be positive");
  const std::size_t m = fam.size();
  CandidateDominant best;
  best.rho_estimate = -1.0;

  std::uint64_t words_seen = 0;
  for (int len = 1; len <= lmax; ++len) {
    std::uint64_t count = 1;
    bool over = false;
    for (int i = 0; i < len; ++i) {
      if (count > opts.budget / m) {
        over = true;
        break;
      }
      count *= m;
    }
    words_seen += over ? opts.budget + 1 : count;
    if (over || words_seen > opts.budget) {
      best.complete = false;
      break;
    }

    const int threads = threads_of(opts);
    std::vector<CandidateDominant> locals(static_cast<std::size_t>(threads));
    for (auto& l : locals) l.rho_estimate = -1.0;
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
#endif
    {
#ifdef _OPENMP
      const int tid = omp_get_thread_num();
#else
      const int tid = 0;
#endif
      auto& local = locals[static_cast<std::size_t>(tid)];
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
      for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(count); ++idx) {
        Word w = decode_word(m, len, static_cast<std::uint64_t>(idx));
        if (canonical_rotation(w) != w || !is_simple(w)) continue;
        const double v =
            std::pow(spectral_radius(word_product(fam, w)), 1.0 / static_cast<double>(len));
        if (v > local.rho_estimate ||
            (v == local.rho_estimate && w.letters < local.pi.letters)) {
          local.rho_estimate = v;
          local.pi = std::move(w);
        }
      }
    }
    // merge this length deterministically: larger value first, then
    // lexicographic; across lengths a tie keeps the shorter, earlier word
    CandidateDominant lenbest;
    lenbest.rho_estimate = -1.0;
    for (const auto& local : locals) {
      if (local.rho_estimate > lenbest.rho_estimate ||
          (local.rho_estimate == lenbest.rho_estimate && !local.pi.empty() &&
           local.pi.letters < lenbest.pi.letters)) {
        lenbest = local;
      }
    }
    if (lenbest.rho_estimate > best.rho_estimate) {
      best.rho_estimate = lenbest.rho_estimate;
      best.pi = lenbest.pi;
    }
  }
  if (best.rho_estimate < 0) throw invalid_input("candidate_dominant: no candidate found");
  return best;
}

DominanceCertificate verify_dominance(const MatrixFamily& fam, const Word& pi, int horizon,
                                      double q, double rho_estimate, const EnumOptions& opts) {
  fam.validate();
  if (!(q > 0.0 && q < 1.0)) throw invalid_input("verify_dominance: q must lie in (0,1)");
  if (pi.empty() || !is_simple(pi)) throw invalid_input("verify_dominance: pi must be simple");
  if (horizon <= 0) throw invalid_input("verify_dominance: horizon must be positive");
  for (Letter l : pi.letters)
    if (l >= fam.size()) throw invalid_input("verify_dominance: pi uses letters outside the family");

  DominanceCertificate cert;
  cert.pi = pi;
  cert.horizon = horizon;
  cert.q = q;
  if (std::isnan(rho_estimate))
    rho_estimate = std::pow(spectral_radius(word_product(fam, pi)),
                            1.0 / static_cast<double>(pi.size()));
  if (!(rho_estimate > 0)) throw invalid_input("verify_dominance: rho_estimate must be positive");
  cert.rho_estimate = rho_estimate;
  cert.leading = leading_eigenvalue(word_product(fam, pi), 1e-8);

  const std::size_t m = fam.size();
  const Word canon_pi = canonical_rotation(pi);
  const std::size_t n = pi.size();

  for (int len = 1; len <= horizon; ++len) {
    std::uint64_t count = 1;
    for (int i = 0; i < len; ++i) {
      if (count > opts.budget / m)
        throw budget_exceeded("verify_dominance: horizon exceeds the budget", len - 1, opts.budget);
      count *= m;
    }
    const double denom = std::pow(rho_estimate, static_cast<double>(len));
    const int threads = threads_of(opts);
    std::vector<std::vector<Word>> found(static_cast<std::size_t>(threads));
    std::vector<std::size_t> counts(static_cast<std::size_t>(threads), 0);
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
#endif
    {
#ifdef _OPENMP
      const int tid = omp_get_thread_num();
#else
      const int tid = 0;
#endif
      auto& local = found[static_cast<std::size_t>(tid)];
      auto& local_count = counts[static_cast<std::size_t>(tid)];
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
      for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(count); ++idx) {
        Word w = decode_word(m, len, static_cast<std::uint64_t>(idx));
        if (canonical_rotation(w) != w) continue;  // one representative per cyclic class
        if (static_cast<std::size_t>(len) % n == 0 &&
            w == canon_pi.repeated(static_cast<std::size_t>(len) / n))
          continue;  // powers of cyclic permutations of pi are exempt
        const double value = spectral_radius(word_product(fam, w)) / denom;
        if (value >= q) {
          ++local_count;
          // each thread keeps its first 64, which is enough to reconstruct
          // the lexicographically first 64 of the whole length after merging
          if (local.size() < 64) local.push_back(std::move(w));
        }
      }
    }
    std::vector<Word> merged;
    for (std::size_t t = 0; t < found.size(); ++t) {
      cert.violation_count += counts[t];
      merged.insert(merged.end(), found[t].begin(), found[t].end());
    }
    std::sort(merged.begin(), merged.end(),
              [](const Word& a, const Word& b) { return a.letters < b.letters; });
    for (auto& w : merged)
      if (cert.violations.size() < 64) cert.violations.push_back(std::move(w));
  }
  return cert;
}

std::string certificate_report(const DominanceCertificate& cert) {
  std::ostringstream os;
  os.precision(12);
  os << "dominance certificate\n";
  os << "  word:         " << cert.pi.str() << "\n";
  os << "  horizon:      " << cert.horizon << " (finite-horizon check, not a proof over all products)\n";
  os << "  q:            " << cert.q << "\n";
  os << "  rho estimate: " << cert.rho_estimate << "\n";
  os << "  leading:      " << cert.leading.value.real();
  if (cert.leading.value.imag() != 0) os << (cert.leading.value.imag() > 0 ? "+" : "") << cert.leading.value.imag() << "i";
  os << "  unique=" << (cert.leading.unique ? "yes" : "no")
     << " simple=" << (cert.leading.simple ? "yes" : "no") << "\n";
  os << "  violations:   " << cert.violation_count;
  if (!cert.violations.empty()) {
    os << " [";
    for (std::size_t i = 0; i < cert.violations.size(); ++i)
      os << (i ? " " : "") << cert.violations[i].str();
    os << (cert.violation_count > cert.violations.size() ? " ...]" : "]");
  }
  os << "\n  status:       " << (cert.certified() ? "CERTIFIED (up to horizon)" : "NOT dominant at this horizon") << "\n";
  return os.str();
}

}  // namespace lss
