#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace framecomplex {

/// Malformed arguments or violated preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration, elimination or search ran past its configured limit.
/// Callers translate this into an inconclusive verdict, never a boolean.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integer arithmetic left the representable range of the fixed-width path.
class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A postcondition re-check failed. Indicates a bug in this library.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Verdict {
  kPass,
  kFail,
  kInconclusive,
  kHypothesisViolation,
};

std::string_view to_string(Verdict v);

/// Three-valued answer for decision procedures that may run out of budget.
enum class Tristate { kFalse, kTrue, kUnknown };

std::string_view to_string(Tristate t);

/// Resource limits threaded through every potentially expensive routine.
struct Budget {
  /// Maximum number of poset elements / orbit states / enumerated objects.
  std::uint64_t element_limit = 5'000'000;
  /// Maximum number of stored nonzeros during sparse elimination, and the
  /// largest dense block (rows * cols) handed to the dense Smith routine.
  std::uint64_t snf_limit = 40'000'000;
  /// Largest dimension for which homology bases (dense transforms) are built.
  std::size_t basis_dimension_limit = 2'500;
  /// Maximum number of candidate tuples visited by exhaustive searches.
  std::uint64_t search_limit = 200'000'000;
  /// Cosets allowed during coset enumeration.
  std::uint64_t coset_limit = 200'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  /// Throws BudgetExceeded once the wall-clock deadline has passed.
  void check_deadline() const;
  void require_elements(std::uint64_t count, std::string_view what) const;

  /// Default budget, with a wall-clock cap taken from FRAMECOMPLEX_BUDGET_MS
  /// when that variable is set.
  static Budget from_environment();
  /// Copy of this budget whose deadline starts now (per-verdict cap).
  [[nodiscard]] Budget restarted_from_environment() const;
};

/// Opaque parallel-execution capability. Work is split into contiguous
/// chunks; callers combine per-chunk results in chunk order so the outcome
/// does not depend on the worker count.
class Executor {
 public:
  explicit Executor(unsigned workers = 1);
  [[nodiscard]] unsigned workers() const { return workers_; }
  /// Runs body(begin, end, chunk_index) over a partition of [0, count).
  /// Returns the number of chunks used.
  std::size_t for_chunks(
      std::size_t count,
      const std::function<void(std::size_t, std::size_t, std::size_t)>& body) const;

 private:
  unsigned workers_;
};

}  // namespace framecomplex
