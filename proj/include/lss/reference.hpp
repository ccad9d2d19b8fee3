#pragma once

// Serial reference implementations: plain exhaustive enumeration, no pruning,
// no threads. These are the oracles the pruned/parallel kernels are tested
// against, and the baseline the benchmark target compares with. They must
// stay independent of the code paths in growth.cpp / dominance.cpp.

#include "lss/family.hpp"
#include "lss/growth.hpp"

namespace lss::reference {

// Maximum norm over all m^k products, first (lexicographic) maximizer.
MkResult exact_mk_exhaustive(const MatrixFamily& fam, int k, const MatrixNorm& norm = {});

// Maximum spectral radius over all length-k products, witness reported as
// the first canonical (lexicographically least rotation) word attaining it.
MkResult max_rho_exhaustive(const MatrixFamily& fam, int k);

}  // namespace lss::reference
