#include "framecomplex/ring.hpp"

#include <algorithm>
#include <numeric>

#include "framecomplex/smith.hpp"

namespace framecomplex {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::vector<PrimePower> factorize(std::int64_t n) {
  if (n < 1) throw InvalidInput("factorize: argument must be positive");
  std::vector<PrimePower> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

ModulusRing::ModulusRing(std::int64_t modulus) : modulus_(modulus) {
  if (modulus < 2) throw InvalidInput("ModulusRing: modulus must be at least 2");
  if (modulus > (std::int64_t{1} << 31)) throw InvalidInput("ModulusRing: modulus too large");
  factors_ = factorize(modulus);
}

std::string ModulusRing::name() const { return "Z/" + std::to_string(modulus_); }

bool ModulusRing::is_unit(std::int64_t a) const { return gcd64(reduce(a), modulus_) == 1; }

std::optional<std::int64_t> ModulusRing::inverse(std::int64_t a) const {
  // Extended Euclid on (a mod m, m).
  std::int64_t old_r = reduce(a), r = modulus_;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) return std::nullopt;
  return reduce(old_s);
}

std::optional<std::uint64_t> ModulusRing::power_count(unsigned exponent) const {
  std::uint64_t acc = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(acc, static_cast<std::uint64_t>(modulus_), &acc)) return std::nullopt;
  }
  return acc;
}

RingVector::RingVector(const ModulusRing& ring, std::vector<std::int64_t> coords)
    : modulus_(ring.modulus()), coords_(std::move(coords)) {
  for (auto& c : coords_) c = ring.reduce(c);
}

bool is_unimodular_vector(const ModulusRing& ring, std::span<const std::int64_t> v) {
  if (v.empty()) throw InvalidInput("is_unimodular_vector: empty vector");
  std::int64_t g = ring.modulus();
  for (auto x : v) {
    g = gcd64(g, ring.reduce(x));
    if (g == 1) return true;
  }
  return g == 1;
}

bool is_unimodular_vector(const ModulusRing& ring, const RingVector& v) {
  if (v.modulus() != ring.modulus()) throw InvalidInput("is_unimodular_vector: ring mismatch");
  return is_unimodular_vector(ring, v.coords());
}

nlohmann::json StableRangeReport::to_json() const {
  nlohmann::json j;
  j["ring"] = ring;
  j["condition"] = condition;
  j["holds"] = holds ? nlohmann::json(*holds) : nlohmann::json(nullptr);
  if (witness) j["witness"] = *witness;
  if (counterexample) j["counterexample"] = *counterexample;
  j["enumerated_count"] = enumerated_count;
  if (!convention.empty()) j["convention"] = convention;
  if (consistent_with_vector_condition)
    j["consistent_with_vector_condition"] = *consistent_with_vector_condition;
  return j;
}

namespace {

// Digits of code in base m, most significant first, so increasing codes
// enumerate tuples lexicographically.
void decode(std::uint64_t code, std::int64_t m, std::span<std::int64_t> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<std::int64_t>(code % static_cast<std::uint64_t>(m));
    code /= static_cast<std::uint64_t>(m);
  }
}

struct ChunkOutcome {
  std::uint64_t enumerated = 0;
  std::optional<std::uint64_t> first_failure;
  std::optional<std::vector<std::int64_t>> witness;
};

std::uint64_t require_count(const ModulusRing& ring, unsigned exponent, const Budget& budget,
                            std::string_view what) {
  auto count = ring.power_count(exponent);
  if (!count) throw BudgetExceeded(std::string(what) + ": enumeration size overflows");
  budget.require_elements(*count, what);
  return *count;
}

// Combine chunk outcomes in chunk order; deterministic regardless of split.
StableRangeReport combine(std::vector<ChunkOutcome>& chunks, StableRangeReport report,
                          const std::function<std::vector<std::int64_t>(std::uint64_t)>& decode_input) {
  for (const auto& c : chunks) {
    report.enumerated_count += c.enumerated;
    if (c.first_failure && !report.counterexample) report.counterexample = decode_input(*c.first_failure);
    if (c.witness && !report.witness) report.witness = c.witness;
  }
  report.holds = !report.counterexample.has_value();
  if (!*report.holds) report.witness.reset();
  return report;
}

}  // namespace

StableRangeReport check_stable_range(const ModulusRing& ring, int m, const Budget& budget,
                                     const Executor& executor) {
  if (m < 1) throw InvalidInput("check_stable_range: m must be at least 1");
  StableRangeReport report;
  report.ring = ring.name();
  report.condition = "S_" + std::to_string(m);
  const std::int64_t mod = ring.modulus();
  std::uint64_t total = 0;
  std::uint64_t shifts = 0;
  try {
    total = require_count(ring, static_cast<unsigned>(m + 1), budget, report.condition);
    shifts = require_count(ring, static_cast<unsigned>(m), budget, report.condition);
  } catch (const BudgetExceeded&) {
    return report;
  }

  std::vector<ChunkOutcome> chunks(executor.workers());
  try {
    executor.for_chunks(total, [&](std::size_t begin, std::size_t end, std::size_t idx) {
      ChunkOutcome& out = chunks[idx];
      std::vector<std::int64_t> r(static_cast<std::size_t>(m + 1));
      std::vector<std::int64_t> t(static_cast<std::size_t>(m));
      std::vector<std::int64_t> shortened(static_cast<std::size_t>(m));
      for (std::size_t code = begin; code < end; ++code) {
        if ((code & 0xFFF) == 0) budget.check_deadline();
        decode(code, mod, r);
        if (!is_unimodular_vector(ring, r)) continue;
        ++out.enumerated;
        bool found = false;
        for (std::uint64_t tc = 0; tc < shifts && !found; ++tc) {
          decode(tc, mod, t);
          for (int i = 0; i < m; ++i) shortened[i] = ring.add(r[i], ring.mul(t[i], r[m]));
          if (is_unimodular_vector(ring, shortened)) {
            found = true;
            if (tc != 0 && !out.witness) {
              std::vector<std::int64_t> w = r;
              w.insert(w.end(), t.begin(), t.end());
              out.witness = std::move(w);
            }
          }
        }
        if (!found) {
          out.first_failure = code;
          return;
        }
      }
    });
  } catch (const BudgetExceeded&) {
    return report;
  }
  return combine(chunks, std::move(report), [&](std::uint64_t code) {
    std::vector<std::int64_t> r(static_cast<std::size_t>(m + 1));
    decode(code, mod, r);
    return r;
  });
}

StableRangeReport check_matrix_stable_range(const ModulusRing& ring, int n, int k,
                                            const Budget& budget, const Executor& executor) {
  if (n < 1 || k < 1) throw InvalidInput("check_matrix_stable_range: n and k must be positive");
  StableRangeReport report;
  report.ring = ring.name();
  report.condition = "S_" + std::to_string(n) + "^" + std::to_string(k);
  report.convention = "B ranges over unimodular n x (n+k) matrices";
  const std::int64_t mod = ring.modulus();
  const std::size_t cols = static_cast<std::size_t>(n + k);
  const std::size_t rows = static_cast<std::size_t>(n);
  std::uint64_t total = 0;
  std::uint64_t shifts = 0;
  try {
    total = require_count(ring, static_cast<unsigned>(rows * cols), budget, report.condition);
    shifts = require_count(ring, static_cast<unsigned>(cols - 1), budget, report.condition);
  } catch (const BudgetExceeded&) {
    return report;
  }

  std::vector<ChunkOutcome> chunks(executor.workers());
  try {
    executor.for_chunks(total, [&](std::size_t begin, std::size_t end, std::size_t idx) {
      ChunkOutcome& out = chunks[idx];
      std::vector<std::int64_t> b(rows * cols);
      std::vector<std::int64_t> r(cols - 1);
      std::vector<std::int64_t> shifted(rows * (cols - 1));
      for (std::size_t code = begin; code < end; ++code) {
        if ((code & 0x3FF) == 0) budget.check_deadline();
        decode(code, mod, b);
        if (!dense_has_right_inverse_mod(b, rows, cols, ring)) continue;
        ++out.enumerated;
        bool found = false;
        for (std::uint64_t rc = 0; rc < shifts && !found; ++rc) {
          decode(rc, mod, r);
          for (std::size_t i = 0; i < rows; ++i) {
            const std::int64_t u = b[i * cols];
            for (std::size_t j = 1; j < cols; ++j)
              shifted[i * (cols - 1) + (j - 1)] = ring.add(b[i * cols + j], ring.mul(u, r[j - 1]));
          }
          if (dense_has_right_inverse_mod(shifted, rows, cols - 1, ring)) {
            found = true;
            if (rc != 0 && !out.witness) {
              std::vector<std::int64_t> w = b;
              w.insert(w.end(), r.begin(), r.end());
              out.witness = std::move(w);
            }
          }
        }
        if (!found) {
          out.first_failure = code;
          return;
        }
      }
    });
  } catch (const BudgetExceeded&) {
    return report;
  }
  report = combine(chunks, std::move(report), [&](std::uint64_t code) {
    std::vector<std::int64_t> b(rows * cols);
    decode(code, mod, b);
    return b;
  });
  const StableRangeReport vector_condition = check_stable_range(ring, k, budget, executor);
  if (vector_condition.holds && report.holds)
    report.consistent_with_vector_condition = (*vector_condition.holds == *report.holds);
  return report;
}

StableRankResult stable_rank(const ModulusRing& ring, const Budget& budget) {
  StableRankResult result{std::nullopt, ring, {}};
  for (int m = 1;; ++m) {
    StableRangeReport r = check_stable_range(ring, m, budget);
    const std::optional<bool> holds = r.holds;
    result.reports.push_back(std::move(r));
    if (!holds) return result;  // budget exhausted before any certification
    if (*holds) {
      result.value = m;
      result.ring.stable_rank_hint_ = m;
      return result;
    }
  }
}

}  // namespace framecomplex
