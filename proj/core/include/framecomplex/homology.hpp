#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "framecomplex/budget.hpp"
#include "framecomplex/chain_complex.hpp"
#include "framecomplex/functor.hpp"
#include "framecomplex/poset.hpp"
#include "framecomplex/sequence_poset.hpp"
#include "framecomplex/smith.hpp"

namespace framecomplex {

struct HomologyOptions {
  /// Primes used when integer elimination runs out of budget.
  std::vector<std::int64_t> screen_primes{2, 3, 5, 7, 1'000'003};
  bool allow_screen = true;
};

/// Homology per degree. With method "mod-p-screen" the groups carry the
/// smallest Betti number seen over the screen primes and no torsion; such a
/// report is a screen, not a certificate over Z.
struct HomologyReport {
  std::string poset_id;
  std::string coefficients = "Z";
  bool reduced = false;
  std::map<int, AbelianGroup> groups;
  std::string method = "snf";
  std::vector<std::int64_t> primes_checked;
  /// Degrees computed by screen only, with the Betti number per prime.
  std::map<int, std::map<std::int64_t, std::size_t>> screen_betti;

  [[nodiscard]] bool exact() const { return screen_betti.empty(); }
  [[nodiscard]] const AbelianGroup& group(int k) const;
  /// Every stored group in degrees <= n vanishes.
  [[nodiscard]] bool vanishes_through(int n) const;
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Homology of a free complex in degrees lo..hi.
HomologyReport homology_of_complex(const ChainComplex& c, int lo, int hi, const Budget& budget = {},
                                   const HomologyOptions& options = {});

/// Integer homology of the order complex through max_degree. Reduced reports
/// include degree -1 (Z exactly for the empty poset). max_degree <= 0 is
/// answered from connected components without building the closure.
HomologyReport integer_homology(const FinitePoset& x, int max_degree, bool reduced,
                                const Budget& budget = {}, const HomologyOptions& options = {});

/// Same for a sequence poset; uses the cellular complex when the chain
/// condition holds (only lengths <= max_degree + 2 are touched).
HomologyReport integer_homology(const SequencePoset& x, int max_degree, bool reduced,
                                const Budget& budget = {}, const HomologyOptions& options = {});

/// Homology of C_*(X, F), degrees 0..max_degree.
HomologyReport functor_homology(const CoefficientFunctor& f, int max_degree,
                                const Budget& budget = {}, const HomologyOptions& options = {});

/// n-acyclic: nonempty with vanishing reduced integer homology through n.
/// Vacuous for n < -1. kUnknown when only a screen was possible.
Tristate is_acyclic_through(const FinitePoset& x, int n, const Budget& budget = {});
Tristate is_acyclic_through(const SequencePoset& x, int n, const Budget& budget = {});
Tristate acyclic_from_report(const HomologyReport& reduced_report, int n);

}  // namespace framecomplex
