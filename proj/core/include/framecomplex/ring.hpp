#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "framecomplex/budget.hpp"

namespace framecomplex {

struct PrimePower {
  std::int64_t prime;
  int exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// The coefficient ring Z/m.
///
/// Values are immutable. The stable rank hint can only be attached through
/// stable_rank(), which certifies it by exhaustive search first.
class ModulusRing {
 public:
  explicit ModulusRing(std::int64_t modulus);

  [[nodiscard]] std::int64_t modulus() const { return modulus_; }
  [[nodiscard]] const std::vector<PrimePower>& prime_factors() const { return factors_; }
  [[nodiscard]] std::optional<int> stable_rank_hint() const { return stable_rank_hint_; }
  [[nodiscard]] std::string name() const;

  [[nodiscard]] std::int64_t reduce(std::int64_t x) const {
    std::int64_t r = x % modulus_;
    return r < 0 ? r + modulus_ : r;
  }
  [[nodiscard]] std::int64_t add(std::int64_t a, std::int64_t b) const { return reduce(a + b); }
  [[nodiscard]] std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(a - b); }
  [[nodiscard]] std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return reduce(reduce(a) * reduce(b));
  }
  [[nodiscard]] std::int64_t neg(std::int64_t a) const { return reduce(-a); }
  [[nodiscard]] bool is_unit(std::int64_t a) const;
  [[nodiscard]] std::optional<std::int64_t> inverse(std::int64_t a) const;

  /// modulus^exponent, or nullopt when it does not fit in 64 bits.
  [[nodiscard]] std::optional<std::uint64_t> power_count(unsigned exponent) const;

  friend bool operator==(const ModulusRing& a, const ModulusRing& b) {
    return a.modulus_ == b.modulus_;
  }

 private:
  friend struct StableRankResult stable_rank(const ModulusRing& ring, const Budget& budget);

  std::int64_t modulus_;
  std::vector<PrimePower> factors_;
  std::optional<int> stable_rank_hint_;
};

/// A vector of R^n with coordinates reduced into [0, m).
class RingVector {
 public:
  RingVector(const ModulusRing& ring, std::vector<std::int64_t> coords);

  [[nodiscard]] std::size_t size() const { return coords_.size(); }
  [[nodiscard]] std::span<const std::int64_t> coords() const { return coords_; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  [[nodiscard]] std::int64_t modulus() const { return modulus_; }

  friend bool operator==(const RingVector&, const RingVector&) = default;

 private:
  std::int64_t modulus_;
  std::vector<std::int64_t> coords_;
};

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::vector<PrimePower> factorize(std::int64_t n);
bool is_prime(std::int64_t n);

/// gcd(v_1, ..., v_n, m) == 1. Throws InvalidInput on an empty vector.
bool is_unimodular_vector(const ModulusRing& ring, std::span<const std::int64_t> v);
bool is_unimodular_vector(const ModulusRing& ring, const RingVector& v);

/// Outcome of an exhaustive stable-range search. holds is empty when the
/// enumeration budget ran out before a decision.
struct StableRangeReport {
  std::string ring;
  std::string condition;
  std::optional<bool> holds;
  /// A nontrivial certificate when holds: the shortening found for the first
  /// enumerated vector (or matrix) that needed one.
  std::optional<std::vector<std::int64_t>> witness;
  /// The lexicographically first input with no shortening, when !holds.
  std::optional<std::vector<std::int64_t>> counterexample;
  std::uint64_t enumerated_count = 0;
  /// How a non-unimodular input is treated in the matrix condition.
  std::string convention;
  /// For the matrix condition: agreement with the vector condition of the
  /// same k, when both were decided.
  std::optional<bool> consistent_with_vector_condition;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Condition (S_m): every unimodular (r_1..r_{m+1}) can be shortened to a
/// unimodular (r_1 + t_1 r_{m+1}, ..., r_m + t_m r_{m+1}).
StableRangeReport check_stable_range(const ModulusRing& ring, int m, const Budget& budget = {},
                                     const Executor& executor = Executor{});

/// Matrix condition (S_n^k) on unimodular n x (n+k) matrices B: some r in
/// R^{n+k-1} makes B' = B_{cols 2..} + u r unimodular, u the first column.
/// Also decides (S_k) and records whether the two agree.
StableRangeReport check_matrix_stable_range(const ModulusRing& ring, int n, int k,
                                            const Budget& budget = {},
                                            const Executor& executor = Executor{});

struct StableRankResult {
  std::optional<int> value;
  /// Copy of the input ring with the certified hint attached.
  ModulusRing ring;
  std::vector<StableRangeReport> reports;
};

/// Least m with (S_m). Inconclusive (empty value) when budgets run out first.
StableRankResult stable_rank(const ModulusRing& ring, const Budget& budget = {});

}  // namespace framecomplex
