// Command-line front end: family-file ingestion, subcommand dispatch, and
// CSV / structured-text emission.
//
// Exit codes: 0 success, 2 invalid input, 3 budget exceeded,
//             4 theorem hypotheses unmet.

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif
#include <sstream>
#include <string>

#include "lss/classifier.hpp"
#include "lss/ctsim.hpp"
#include "lss/dd.hpp"
#include "lss/dominance.hpp"
#include "lss/eig.hpp"
#include "lss/errors.hpp"
#include "lss/growth.hpp"
#include "lss/io.hpp"
#include "lss/polynorm.hpp"
#include "lss/sublinear.hpp"
#include "lss/words.hpp"

namespace {

struct Common {
  int threads = 0;
  std::string out;
  std::string format = "text";
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty())
    std::cout << text;
  else
    lss::write_text_file(c.out, text);
}

lss::Matrix parse_matrix_csl(const std::string& csl, int rows, int cols) {
  std::vector<double> entries;
  std::istringstream is(csl);
  std::string item;
  while (std::getline(is, item, ',')) entries.push_back(std::stod(item));
  return lss::Matrix::from_row_major(rows, cols, entries);
}

lss::Vec parse_vec_csl(const std::string& csl) {
  std::vector<double> entries;
  std::istringstream is(csl);
  std::string item;
  while (std::getline(is, item, ',')) entries.push_back(std::stod(item));
  lss::Vec v(static_cast<int>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) v[static_cast<int>(i)] = entries[i];
  return v;
}

std::vector<std::int64_t> parse_int_list(const std::string& csl) {
  std::vector<std::int64_t> out;
  std::istringstream is(csl);
  std::string item;
  while (std::getline(is, item, ',')) out.push_back(std::stoll(item));
  return out;
}

// ---------------------------------------------------------------------------

int run_mk(const Common& c, const std::string& family_path, int kmax, std::uint64_t budget,
           int fit_kmin) {
  const auto ff = lss::load_family_file(family_path);
  lss::EnumOptions opts;
  opts.budget = budget;
  opts.threads = c.threads;
  const auto series = lss::mk_series(ff.family, kmax, opts);
  if (c.format == "csv") {
    emit(c, lss::growth_csv(series));
  } else {
    std::ostringstream os;
    os.precision(12);
    os << "k   M_k             witness\n";
    for (const auto& e : series.entries)
      os << e.k << "   " << e.mk << "   " << e.witness.str() << "\n";
    if (fit_kmin > 0) {
      const auto fit = lss::growth_exponent(series, fit_kmin);
      os << "growth exponent (k >= " << fit_kmin << "): " << fit.slope << " +/- " << fit.stderr_
         << " over " << fit.points << " points\n";
    }
    emit(c, os.str());
  }
  if (series.budget_hit) {
    std::cerr << "budget exceeded after k = " << series.achieved_k << "\n";
    return 3;
  }
  return 0;
}

int run_jsr(const Common& c, const std::string& family_path, int kmax, std::uint64_t budget) {
  const auto ff = lss::load_family_file(family_path);
  lss::EnumOptions opts;
  opts.budget = budget;
  opts.threads = c.threads;
  const auto b = lss::jsr_bounds(ff.family, kmax, opts);
  std::ostringstream os;
  os.precision(12);
  os << "jsr bounds (k up to " << b.k_used << ")\n";
  os << "  lower:   " << b.lower << "  (witness " << b.witness_word_lower.str() << ")\n";
  os << "  upper:   " << b.upper << "\n";
  if (!b.complete) os << "  note: budget stopped the sweep before kmax\n";
  emit(c, os.str());
  return b.complete ? 0 : 3;
}

int run_dominance(const Common& c, const std::string& family_path, const std::string& pi_str,
                  int lmax, int horizon, double q, double rho) {
  const auto ff = lss::load_family_file(family_path);
  lss::EnumOptions opts;
  opts.threads = c.threads;
  lss::Word pi;
  double rho_est = rho;
  std::ostringstream os;
  os.precision(12);
  if (pi_str.empty()) {
    const auto cand = lss::candidate_dominant(ff.family, lmax, opts);
    pi = cand.pi;
    if (std::isnan(rho_est)) rho_est = cand.rho_estimate;
    os << "candidate dominant word: " << pi.str() << "  rho estimate " << cand.rho_estimate
       << (cand.complete ? "" : "  (budget-limited sweep)") << "\n";
  } else {
    pi = lss::Word::parse(pi_str);
  }
  const auto cert = lss::verify_dominance(ff.family, pi, horizon, q, rho_est, opts);
  os << lss::certificate_report(cert);
  emit(c, os.str());
  return 0;
}

int run_classify(const Common& c, const std::string& family_path, int horizon, double q,
                 double tol) {
  const auto ff = lss::load_family_file(family_path);
  if (!ff.blocks)
    throw lss::invalid_input("classify: family file must carry a blocks section (d1, d2)");
  const auto cls = lss::classify(*ff.blocks, horizon, q, tol);
  emit(c, lss::classification_report(cls));
  return 0;
}

int run_partition(const Common& c, std::string word_str, const std::string& pi_str, int m_param,
                  long long random_len, unsigned seed) {
  if (word_str.empty() && random_len > 0) {
    std::mt19937 rng(seed);
    std::ostringstream w;
    for (long long i = 0; i < random_len; ++i) w << (rng() & 1u);
    word_str = w.str();
  }
  const auto w = lss::Word::parse(word_str);
  const auto pi = lss::Word::parse(pi_str);
  const auto part = lss::partition(w, pi, static_cast<std::size_t>(m_param));
  std::ostringstream os;
  os << "partition: |w| = " << w.size() << "  pi = " << pi.str() << "  M = " << m_param
     << "  (l = " << part.l << ", N = " << part.N << ")\n";
  std::size_t whites = 0, blacks = 0;
  for (const auto& s : part.segments) (s.color == lss::SegmentColor::White ? whites : blacks)++;
  os << "segments: " << part.segments.size() << " (" << whites << " white, " << blacks
     << " black)\n";
  const std::size_t show = std::min<std::size_t>(part.segments.size(), 40);
  for (std::size_t i = 0; i < show; ++i) {
    const auto& s = part.segments[i];
    os << "  [" << (s.color == lss::SegmentColor::White ? "white" : "black") << "] len "
       << s.word.size();
    if (s.word.size() <= 40) os << "  " << s.word.str();
    os << "\n";
  }
  if (show < part.segments.size()) os << "  ... (" << part.segments.size() - show << " more)\n";
  os << "reassembles to input: " << (part.reassembled() == w ? "yes" : "NO") << "\n";

  // condition summary: (a) short or white first segment, (b) white segments
  // are powers of pi and never adjacent, (c) interior black lengths within
  // [n+M, 2N]
  bool a_ok = true, b_ok = true, c_ok = true;
  const auto& segs = part.segments;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    if (s.color == lss::SegmentColor::White) {
      b_ok = b_ok && s.word.size() % pi.size() == 0 &&
             s.word == pi.repeated(s.word.size() / pi.size());
      if (i + 1 < segs.size()) b_ok = b_ok && segs[i + 1].color == lss::SegmentColor::Black;
    } else {
      c_ok = c_ok && s.word.size() <= 2 * part.N;
      const bool exempt = i == 0 || s.origin == lss::SegmentOrigin::Trailing;
      if (!exempt) c_ok = c_ok && s.word.size() >= pi.size() + part.M;
    }
  }
  if (!segs.empty() && segs.front().color == lss::SegmentColor::Black)
    a_ok = segs.front().word.size() <= 2 * part.N;
  os << "conditions: first-segment " << (a_ok ? "ok" : "VIOLATED") << ", white-powers "
     << (b_ok ? "ok" : "VIOLATED") << ", black-lengths " << (c_ok ? "ok" : "VIOLATED") << "\n";
  emit(c, os.str());
  return a_ok && b_ok && c_ok && part.reassembled() == w ? 0 : 1;
}

int run_cubic(const Common& c, const std::string& alpha_str, int count, const std::string& ns_csl,
              std::int64_t direct_cap, int prefixes) {
  const double alpha = lss::parse_alpha_token(alpha_str);
  std::vector<std::int64_t> ns;
  if (!ns_csl.empty()) {
    ns = parse_int_list(ns_csl);
  } else {
    const auto good = lss::good_n_sequence(alpha, count);
    ns = good.ns;
    if (good.precision_limited && static_cast<int>(ns.size()) < count)
      std::cerr << "note: good-n search stopped at " << ns.size() << " (precision limit)\n";
  }
  if (ns.empty()) throw lss::invalid_input("cubic: no usable n values");

  const auto ws = lss::growth_witnesses(alpha, ns, direct_cap, c.threads);

  if (c.format == "csv") {
    emit(c, lss::witness_csv(ws));
    return 0;
  }
  std::ostringstream os;
  os.precision(12);
  os << "alpha = " << alpha << "\n";
  os << "m_alpha estimate (from alpha/pi convergents): "
     << lss::continued_fraction(alpha / 3.14159265358979323846, 30).m_alpha_estimate << "\n";
  os << "good n (fractional parts of n*alpha/2pi):\n";
  for (auto n : ns) {
    const auto f = lss::dd::fractional_part(
        lss::dd::to_double(lss::dd::div({alpha, 0.0}, lss::dd::kTwoPi)), n);
    os << "  n = " << n << "  {n a/2pi} = " << f.value << "  bound 1/n = " << 1.0 / static_cast<double>(n)
       << "\n";
  }
  os << "witnesses:\n  n        N            norm          lower         norm/N^(1/3)\n";
  for (const auto& w : ws)
    os << "  " << w.n << "  " << w.big_n << "  " << w.norm << "  " << w.lower_formula << "  "
       << w.norm / std::cbrt(static_cast<double>(w.big_n)) << (w.direct ? "  (direct)" : "  (closed form)")
       << "\n";
  if (ws.size() >= 2) {
    const auto fit = lss::fit_cubic_exponent(alpha, ns, direct_cap);
    os << "fitted growth exponent: " << fit.slope << " +/- " << fit.stderr_ << "  (target 1/3)\n";
  }
  if (prefixes > 0) {
    const auto pt = lss::infinite_product_prefixes(alpha, prefixes);
    os << "infinite-product prefixes (C0 ~ " << pt.c0_estimate << ", C1 = " << pt.c1 << "):\n";
    for (const auto& e : pt.entries)
      os << "  j = " << e.j << "  n = " << e.n << "  length = " << e.length
         << "  log_norm >= " << e.log_norm << "  ratio = " << e.ratio << "\n";
    if (pt.truncated) os << "  (truncated: no admissible next block within precision)\n";
  }
  emit(c, os.str());
  return 0;
}

int run_ct(const Common& c, const std::string& family_path, const std::string& law_str,
           const std::string& x0_str, double dt, std::size_t f_letter) {
  const auto ff = lss::load_family_file(family_path);
  const auto law = lss::SwitchingLaw::parse(law_str);
  const auto x0 = parse_vec_csl(x0_str);
  const auto traj = lss::propagate(ff.family, law, x0, dt);
  if (c.format == "csv") {
    const lss::Matrix fgen = ff.family[f_letter];
    emit(c, lss::trajectory_csv(traj, [&](const lss::Vec& x) {
           return lss::lyapunov_f(fgen, x, 4.0 * 3.14159265358979323846, 2e-3);
         }));
    return 0;
  }
  lss::CtOptions opts;
  opts.f_letter = f_letter;
  const auto rep = lss::check_f_decreasing(ff.family, law, x0, law.total_duration(), dt, opts);
  std::ostringstream os;
  os.precision(12);
  os << "trajectory over " << law.total_duration() << " s, " << traj.samples.size() << " samples\n";
  os << "  sup norm:            " << rep.sup_norm << "\n";
  os << "  sigma estimate:      " << rep.sigma_estimate << "\n";
  os << "  f violations (non-f segments): " << rep.f_monotone_violations << "\n";
  emit(c, os.str());
  return 0;
}

int run_example1(const Common& c, double a, double s, const std::string& b_csl, int kmax,
                 int samples, double tol, int horizon, double q) {
  const lss::Matrix b = parse_matrix_csl(b_csl, 2, 2);
  const auto fam = lss::example1_family(a, b, s);
  const auto bf = lss::example1_blocks(a, b, s);
  const auto norm = lss::build_parallelotope(a);

  std::ostringstream os;
  os.precision(12);
  os << "two-matrix fixture: a = " << a << ", s = " << s << "\n\n";

  const auto iso = lss::is_invariant_isometry(norm, fam[1], samples, tol);
  os << "A1 isometry of the parallelotope gauge: " << (iso.ok ? "yes" : "NO")
     << " (max deviation " << iso.max_deviation << ")\n";
  os << "gauge norm of A2: " << norm.operator_gauge_norm(fam[0]) << " (must be < 1)\n";
  const auto bar = lss::is_barabanov(norm, fam, samples, tol);
  os << "Barabanov property on " << bar.samples_checked << " boundary points: "
     << (bar.ok ? "yes" : "NO") << " (max deviation " << bar.max_deviation << ")\n\n";

  const auto cls = lss::classify(bf, horizon, q, 1e-8);
  os << lss::classification_report(cls) << "\n";

  lss::EnumOptions opts;
  opts.threads = c.threads;
  const auto series = lss::mk_series(fam, kmax, opts);
  os << "k   M_k\n";
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (const auto& e : series.entries) {
    os << e.k << "   " << e.mk << "\n";
    lo = std::min(lo, e.mk);
    hi = std::max(hi, e.mk);
  }
  os << "M_k spread max/min = " << hi / lo << " (bounded at desk scale when small)\n";
  emit(c, os.str());
  return 0;
}

int run_example2(const Common& c, double s, int trials, int segments, double total, double dt,
                 unsigned seed) {
  const auto fam = lss::example2_family(lss::Matrix{{1, 1}, {1, 1}},
                                        lss::Matrix{{1, 1, 1, 1}, {0, 1, 1, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}},
                                        s);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dur(2.0, 8.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // draw all laws and initial states up front, then run the pure trials in
  // parallel with order-independent reductions
  std::vector<lss::SwitchingLaw> laws(static_cast<std::size_t>(trials));
  std::vector<lss::Vec> x0s(static_cast<std::size_t>(trials));
  for (int trial = 0; trial < trials; ++trial) {
    double tot = 0;
    std::vector<double> durs(static_cast<std::size_t>(segments));
    for (auto& d : durs) {
      d = dur(rng);
      tot += d;
    }
    const std::size_t first = rng() & 1u;
    for (int i = 0; i < segments; ++i)
      laws[static_cast<std::size_t>(trial)].segments.push_back(
          {durs[static_cast<std::size_t>(i)] * total / tot,
           (first + static_cast<std::size_t>(i)) % 2});
    lss::Vec x0(4);
    double nrm = 0;
    for (int i = 0; i < 4; ++i) {
      x0[i] = gauss(rng);
      nrm += x0[i] * x0[i];
    }
    nrm = std::sqrt(nrm);
    for (int i = 0; i < 4; ++i) x0[i] /= nrm;
    x0s[static_cast<std::size_t>(trial)] = x0;
  }

  double worst_sup = 0, worst_sigma = -std::numeric_limits<double>::infinity();
  int violations = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) reduction(max : worst_sup, worst_sigma) \
    reduction(+ : violations)
#endif
  for (int trial = 0; trial < trials; ++trial) {
    const auto rep = lss::check_f_decreasing(fam, laws[static_cast<std::size_t>(trial)],
                                             x0s[static_cast<std::size_t>(trial)], total, dt);
    worst_sup = std::max(worst_sup, rep.sup_norm);
    worst_sigma = std::max(worst_sigma, rep.sigma_estimate);
    violations += rep.f_monotone_violations;
  }
  std::ostringstream os;
  os.precision(12);
  os << "four-dimensional continuous fixture: s = " << s << ", " << trials
     << " random alternating laws of " << segments << " segments over " << total << " s\n";
  os << "  worst sup |x| / |x0|:  " << worst_sup << "\n";
  os << "  worst sigma estimate:  " << worst_sigma << "\n";
  os << "  f monotonicity violations on contracting segments: " << violations << "\n";
  os << "  verdict: " << ((violations == 0 && worst_sigma <= 0.02) ? "marginally stable at this s"
                                                                   : "INCONCLUSIVE")
     << "\n";
  emit(c, os.str());
  return violations == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear switching systems: growth, dominance, marginal-instability analysis"};
  app.require_subcommand(1);

  Common common;
  app.add_option("--threads", common.threads, "worker threads for enumeration (0 = auto)");

  std::string family_path, pi_str, word_str, law_str, x0_str = "1,0,0,0";
  std::string alpha_str = "pi*sqrt2", ns_csl, b_csl = "1,1,0,1";
  int kmax = 10, lmax = 6, horizon = 12, fit_kmin = 0, count = 4, prefixes = 2;
  int m_param = 0, samples = 360, segments = 20, trials = 50;
  double q = 0.95, tol = 1e-9, rho = std::numeric_limits<double>::quiet_NaN();
  double a_param = 2.0, s_param = 0.1, s2_param = 10.0, dt = 0.01, total = 100.0;
  std::uint64_t budget = 20'000'000;
  long long random_len = 0;
  std::int64_t direct_cap = 1'000'000;
  unsigned seed = 42;
  std::size_t f_letter = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->fallthrough();  // lets the global --threads follow the subcommand
    sub->add_option("--out", common.out, "write output to a file instead of stdout");
    sub->add_option("--format", common.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  };

  auto* mk = app.add_subcommand("mk", "exact worst-case product norms M_k");
  mk->add_option("--family", family_path, "family JSON file")->required();
  mk->add_option("--kmax", kmax, "largest product length");
  mk->add_option("--budget", budget, "enumeration budget (word count)");
  mk->add_option("--fit-kmin", fit_kmin, "fit the growth exponent over k >= this");
  add_common(mk);

  auto* jsr = app.add_subcommand("jsr", "joint-spectral-radius bounds from finite products");
  jsr->add_option("--family", family_path)->required();
  jsr->add_option("--kmax", kmax);
  jsr->add_option("--budget", budget);
  add_common(jsr);

  auto* dom = app.add_subcommand("dominance", "candidate dominant word and finite-horizon certificate");
  dom->add_option("--family", family_path)->required();
  dom->add_option("--pi", pi_str, "candidate word (digits); searched when omitted");
  dom->add_option("--lmax", lmax, "candidate search length bound");
  dom->add_option("--horizon", horizon, "certification horizon");
  dom->add_option("--q", q, "spectral-radius gap in (0,1)");
  dom->add_option("--rho", rho, "normalization estimate (default: from the candidate)");
  add_common(dom);

  auto* cls = app.add_subcommand("classify", "marginal-instability verdict for a two-block family");
  cls->add_option("--family", family_path, "family JSON with a blocks section")->required();
  cls->add_option("--horizon", horizon);
  cls->add_option("--q", q);
  double cls_tol = 1e-8;
  cls->add_option("--tol", cls_tol, "eigenvalue comparison tolerance");
  add_common(cls);

  auto* par = app.add_subcommand("partition", "white/black partition of a word");
  par->add_option("--word", word_str, "the word to split (digits)");
  par->add_option("--pi", pi_str, "the reference simple word")->required();
  par->add_option("--M", m_param, "white suffix allowance");
  par->add_option("--random", random_len, "generate a random binary word of this length");
  par->add_option("--seed", seed);
  add_common(par);

  auto* cub = app.add_subcommand("cubic", "N^(1/3)-growth witnesses for the 3x3 pair");
  cub->add_option("--alpha", alpha_str, "pi*sqrt2, pi*phi, or a number");
  cub->add_option("--count", count, "how many good n to search for");
  cub->add_option("--ns", ns_csl, "explicit comma-separated n list (overrides --count)");
  cub->add_option("--direct-cap", direct_cap, "largest N computed by direct product");
  cub->add_option("--prefixes", prefixes, "infinite-product prefixes to build (0 to skip)");
  add_common(cub);

  auto* ct = app.add_subcommand("ct", "continuous-time switching simulation");
  ct->add_option("--family", family_path)->required();
  ct->add_option("--law", law_str, "segments letter:duration,letter:duration,...")->required();
  ct->add_option("--x0", x0_str, "initial state, comma separated");
  ct->add_option("--dt", dt, "sample step");
  ct->add_option("--f-letter", f_letter, "letter whose generator defines the Lyapunov gauge");
  add_common(ct);

  auto* ex1 = app.add_subcommand("example1", "reproduce the marginally stable 2x2 fixture");
  ex1->add_option("--a", a_param);
  ex1->add_option("--s", s_param);
  ex1->add_option("--b", b_csl, "upper-triangular B, row-major 2x2");
  ex1->add_option("--kmax", kmax);
  ex1->add_option("--samples", samples, "boundary samples for the Barabanov check");
  ex1->add_option("--tol", tol);
  ex1->add_option("--horizon", horizon);
  ex1->add_option("--q", q);
  add_common(ex1);

  auto* ex2 = app.add_subcommand("example2", "random-law battery for the 4x4 continuous fixture");
  ex2->add_option("--s", s2_param);
  ex2->add_option("--trials", trials);
  ex2->add_option("--segments", segments);
  ex2->add_option("--total", total, "law duration in seconds");
  ex2->add_option("--dt", dt);
  ex2->add_option("--seed", seed);
  add_common(ex2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (mk->parsed()) return run_mk(common, family_path, kmax, budget, fit_kmin);
    if (jsr->parsed()) return run_jsr(common, family_path, kmax, budget);
    if (dom->parsed()) return run_dominance(common, family_path, pi_str, lmax, horizon, q, rho);
    if (cls->parsed()) return run_classify(common, family_path, horizon, q, cls_tol);
    if (par->parsed()) return run_partition(common, word_str, pi_str, m_param, random_len, seed);
    if (cub->parsed()) return run_cubic(common, alpha_str, count, ns_csl, direct_cap, prefixes);
    if (ct->parsed()) return run_ct(common, family_path, law_str, x0_str, dt, f_letter);
    if (ex1->parsed())
      return run_example1(common, a_param, s_param, b_csl, kmax, samples, tol, horizon, q);
    if (ex2->parsed()) return run_example2(common, s2_param, trials, segments, total, dt, seed);
  } catch (const lss::budget_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const lss::hypotheses_unmet& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const lss::invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
