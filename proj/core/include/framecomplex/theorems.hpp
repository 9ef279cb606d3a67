#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "framecomplex/budget.hpp"
#include "framecomplex/criteria.hpp"
#include "framecomplex/functor.hpp"
#include "framecomplex/nerve.hpp"
#include "framecomplex/sequence_poset.hpp"

namespace framecomplex {

struct TheoremConfig {
  std::int64_t ring = 2;
  /// Symplectic rank: the module is R^{2n}. For kal5, the n of O(R^n).
  int n = 2;
  int k = 1;
  /// kal5: ambient rank of U(R^m) (default n). maazen1 and char: rank of
  /// the U family they run on (default 3).
  std::optional<int> m;
  int max_degree = 2;
  std::uint64_t seed = 0;
  bool timings = false;
  unsigned workers = 1;
  Budget budget;
  /// Fallback primes when integer elimination runs out of budget.
  std::vector<std::int64_t> screen_primes{2, 3, 5, 7, 1'000'003};

  [[nodiscard]] nlohmann::json to_json() const;
};

/// One line of a connectivity table.
struct BoundRow {
  std::string family;
  std::string ring;
  int n = 0;
  int k = 0;
  int bound = 0;
  /// Highest degree through which reduced homology was shown to vanish; -1
  /// means nonemptiness only.
  std::optional<int> verified_through;
  std::string method = "none";
  std::optional<double> runtime_ms;
  Verdict verdict = Verdict::kInconclusive;
  std::string pi1 = "NA";
  std::size_t size = 0;
  std::size_t max_length = 0;
  std::vector<std::string> notes;

  [[nodiscard]] nlohmann::json to_json() const;
};

struct VerificationReport {
  std::string theorem;
  nlohmann::json config;
  Verdict verdict = Verdict::kInconclusive;
  std::vector<CriterionReport> checks;
  std::vector<BoundRow> rows;

  [[nodiscard]] nlohmann::json to_json() const;
  /// Rows as family, ring, n, k, bound, verified_through, method, runtime_ms;
  /// followed by one line per check.
  [[nodiscard]] std::string to_tsv() const;
};

std::string_view library_version();
const std::vector<std::string>& theorem_names();

/// floor(a / b) for b > 0.
int floor_div(int a, int b);

/// Connectivity bound of b-w1, b-w2, kal5 or u-i. For b-w1 and b-w2, k is
/// the length of x in IU_x / HU_x (0 for the whole poset); for kal5, m is
/// the ambient rank; for u-i, k = |v|.
int connectivity_bound(const std::string& theorem, int n, int k, int stable_rank);

/// Certifies the bound of one of b-w1, b-w2, kal5, u-i on one instance.
BoundRow verify_bw(const std::string& theorem, const TheoremConfig& config);

/// Reduced homology of Link^-(v) is that of S^{|v|-2}, for every v in f.
CriterionReport maazen1_check(const SequencePoset& f, const std::string& label, const Budget& budget = {});

/// The classes of G(v), |v| = 1, generate H_0(F^op, G). g lives on
/// f.to_poset().opposite().
CriterionReport h0_surjectivity_check(const SequencePoset& f, const CoefficientFunctor& g,
                                      const Budget& budget = {});

/// Every member of `required` lies in x.
CriterionReport membership_scan(const std::string& name, const SequencePoset& required, const SequencePoset& x);

/// A circle (hexagon) covered by two arcs meeting in two points.
PosetCover hexagon_arc_cover(int l);
/// Boundary of the octahedron and its eight closed faces.
std::pair<SequencePoset, std::vector<SequencePoset>> octahedron_faces();

/// Runs one theorem by name. Throws InvalidInput for unknown names or bad
/// parameters.
VerificationReport verify_theorem(const std::string& theorem, const TheoremConfig& config);

/// 0 pass, 1 fail, 2 inconclusive. A hypothesis violation of the instance
/// counts as inconclusive.
int exit_code(Verdict v);

}  // namespace framecomplex
