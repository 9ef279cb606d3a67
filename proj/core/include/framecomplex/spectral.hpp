#pragma once

#include <map>
#include <set>
#include <utility>

#include <nlohmann/json.hpp>

#include "framecomplex/budget.hpp"
#include "framecomplex/chain_complex.hpp"
#include "framecomplex/poset.hpp"
#include "framecomplex/smith.hpp"

namespace framecomplex {

struct SpectralPage {
  int page = 1;
  std::map<std::pair<int, int>, AbelianGroup> entries;  // (p, q)
  /// Entries that could not be computed (torsion in a coefficient group).
  std::set<std::pair<int, int>> inconclusive;

  [[nodiscard]] const AbelianGroup& at(int p, int q) const;
  [[nodiscard]] nlohmann::json to_json() const;
};

/// The double complex of a poset map: generators (x_0 < ... < x_q ;
/// y_0 < ... < y_p) with f(x_q) <= y_0, total differential
/// d_h + (-1)^p d_v. Its homology is compared with H(X).
struct DoubleComplexResult {
  SpectralPage e1;
  SpectralPage e2;
  std::map<int, AbelianGroup> total;
  std::map<int, AbelianGroup> source;
  bool total_matches = false;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Pages and total homology through total degree max_degree.
DoubleComplexResult double_complex_pages(const PosetMap& f, int max_degree, const Budget& budget = {});

/// The total complex itself (degrees 0..max_degree+1).
ChainComplex double_complex_total(const PosetMap& f, int max_degree, const Budget& budget = {});

}  // namespace framecomplex
