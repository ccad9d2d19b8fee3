// Timing comparison between the serial exhaustive reference and the pruned
// OpenMP kernel on the same worst-case norm sweeps.
//
//   bench_mk [kmax] [threads]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "lss/growth.hpp"
#include "lss/reference.hpp"
#include "lss/sublinear.hpp"

using namespace lss;

namespace {

template <typename Fn>
double time_of(Fn fn, double& value) {
  const auto start = std::chrono::steady_clock::now();
  value = fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int kmax = argc > 1 ? std::atoi(argv[1]) : 18;
  const int threads = argc > 2 ? std::atoi(argv[2]) : 0;

  const auto cp = build_pair(4.4428829381583661);
  const MatrixFamily fam({cp.a0, cp.a1}, {"A0", "A1"});

  std::printf("family: 3x3 projection/rotation pair, m = 2\n");
  std::printf("%4s %14s %12s %12s %12s %9s\n", "k", "M_k", "serial(s)", "pruned1(s)", "prunedN(s)",
              "speedup");
  for (int k = 10; k <= kmax; k += 2) {
    double serial_v = 0, pruned1_v = 0, prunedN_v = 0;
    const double t_serial =
        time_of([&] { return reference::exact_mk_exhaustive(fam, k).mk; }, serial_v);
    EnumOptions opts1;
    opts1.threads = 1;
    const double t_p1 = time_of([&] { return exact_mk(fam, k, opts1).mk; }, pruned1_v);
    EnumOptions optsN;
    optsN.threads = threads;
    const double t_pn = time_of([&] { return exact_mk(fam, k, optsN).mk; }, prunedN_v);
    const bool agree = serial_v == pruned1_v && pruned1_v == prunedN_v;
    std::printf("%4d %14.8f %12.4f %12.4f %12.4f %8.1fx%s\n", k, serial_v, t_serial, t_p1, t_pn,
                t_serial / t_pn, agree ? "" : "  VALUE MISMATCH");
    if (!agree) return 1;
  }
  return 0;
}
