#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lss {

// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments, malformed files, out-of-domain inputs. CLI exit code 2.
struct invalid_input : error {
  using error::error;
};

// Enumeration would exceed the configured product budget. CLI exit code 3.
struct budget_exceeded : error {
  budget_exceeded(const std::string& msg, int achieved, std::uint64_t limit)
      : error(msg), achieved_k(achieved), budget(limit) {}
  int achieved_k;        // largest k that fits the budget
  std::uint64_t budget;
};

// A theorem's hypotheses could not be established for the input. Exit code 4.
struct hypotheses_unmet : error {
  hypotheses_unmet(const std::string& msg, int which_block)
      : error(msg), block(which_block) {}
  int block;  // 1-based diagonal block index, 0 if not block-specific
};

struct numeric_overflow : error {
  using error::error;
};

struct insufficient_data : error {
  using error::error;
};

}  // namespace lss
