#include "framecomplex/homology.hpp"

#include <algorithm>
#include <limits>

namespace framecomplex {

namespace {

const AbelianGroup kZeroGroup{};

struct BoundaryData {
  bool exact = false;
  std::size_t rank = 0;
  std::vector<std::int64_t> torsion;
  std::map<std::int64_t, std::size_t> rank_mod;
};

BoundaryData reduce_boundary(const SparseIntMatrix& d, const Budget& budget,
                             const HomologyOptions& options) {
  BoundaryData out;
  if (d.is_zero()) {
    out.exact = true;
    return out;
  }
  try {
    const auto snf = smith_normal_form(d, false, budget);
    out.exact = true;
    out.rank = snf.rank;
    for (auto v : snf.diagonal)
      if (v > 1) out.torsion.push_back(v);
  } catch (const BudgetExceeded&) {
    if (!options.allow_screen) throw;
    for (auto p : options.screen_primes) {
      budget.check_deadline();
      out.rank_mod[p] = rank_mod_prime(d, p);
    }
  }
  return out;
}

}  // namespace

const AbelianGroup& HomologyReport::group(int k) const {
  auto it = groups.find(k);
  return it == groups.end() ? kZeroGroup : it->second;
}

bool HomologyReport::vanishes_through(int n) const {
  for (const auto& [k, g] : groups)
    if (k <= n && !g.is_zero()) return false;
  return true;
}

nlohmann::json HomologyReport::to_json() const {
  nlohmann::json j;
  j["poset_id"] = poset_id;
  j["coefficients"] = coefficients;
  j["reduced"] = reduced;
  auto arr = nlohmann::json::array();
  for (const auto& [k, g] : groups) {
    nlohmann::json e;
    e["degree"] = k;
    e["free_rank"] = g.free_rank;
    e["torsion"] = g.torsion;
    if (auto it = screen_betti.find(k); it != screen_betti.end()) {
      nlohmann::json b = nlohmann::json::object();
      for (const auto& [p, r] : it->second) b[std::to_string(p)] = r;
      e["betti_mod_p"] = b;
    }
    arr.push_back(e);
  }
  j["groups"] = arr;
  j["method"] = method;
  j["primes_checked"] = primes_checked;
  return j;
}

HomologyReport homology_of_complex(const ChainComplex& c, int lo, int hi, const Budget& budget,
                                   const HomologyOptions& options) {
  HomologyReport rep;
  lo = std::max(lo, c.min_degree);
  if (hi < lo) return rep;
  std::map<int, BoundaryData> bd;
  for (int k = lo; k <= hi + 1; ++k) bd[k] = reduce_boundary(c.boundary(k), budget, options);
  for (int k = lo; k <= hi; ++k) {
    const auto& dk = bd[k];
    const auto& dk1 = bd[k + 1];
    const std::size_t n = c.rank(k);
    if (dk.exact && dk1.exact) {
      AbelianGroup g = AbelianGroup::from_cyclic_orders(dk1.torsion);
      g.free_rank = n - dk.rank - dk1.rank;
      rep.groups[k] = g;
      continue;
    }
    std::map<std::int64_t, std::size_t> betti;
    std::size_t least = std::numeric_limits<std::size_t>::max();
    for (auto p : options.screen_primes) {
      const std::size_t rk = dk.exact ? rank_mod_prime(c.boundary(k), p) : dk.rank_mod.at(p);
      const std::size_t rk1 = dk1.exact ? rank_mod_prime(c.boundary(k + 1), p) : dk1.rank_mod.at(p);
      betti[p] = n - rk - rk1;
      least = std::min(least, betti[p]);
    }
    rep.groups[k] = AbelianGroup::free(least);
    rep.screen_betti[k] = std::move(betti);
  }
  if (!rep.exact()) {
    rep.method = "mod-p-screen";
    rep.primes_checked = options.screen_primes;
  }
  return rep;
}

HomologyReport integer_homology(const FinitePoset& x, int max_degree, bool reduced,
                                const Budget& budget, const HomologyOptions& options) {
  HomologyReport rep;
  if (max_degree <= 0) {
    const auto n = x.components().second;
    if (reduced) {
      rep.groups[-1] = AbelianGroup::free(x.empty() ? 1 : 0);
      if (max_degree == 0) rep.groups[0] = AbelianGroup::free(n == 0 ? 0 : n - 1);
    } else if (max_degree == 0) {
      rep.groups[0] = AbelianGroup::free(n);
    }
  } else {
    const auto oc = order_complex(x, max_degree + 1, reduced, budget);
    rep = homology_of_complex(oc.complex, reduced ? -1 : 0, max_degree, budget, options);
    // Degrees above the dimension never get chains; record them as zero.
    for (int k = reduced ? -1 : 0; k <= max_degree; ++k) rep.groups.try_emplace(k);
  }
  rep.poset_id = x.id();
  rep.reduced = reduced;
  return rep;
}

HomologyReport integer_homology(const SequencePoset& x, int max_degree, bool reduced,
                                const Budget& budget, const HomologyOptions& options) {
  if (!x.check_chain_condition()) return integer_homology(x.to_poset(), max_degree, reduced, budget, options);
  HomologyReport rep;
  const auto cc = cellular_complex(x, max_degree + 1, reduced, budget);
  rep = homology_of_complex(cc.complex, reduced ? -1 : 0, max_degree, budget, options);
  for (int k = reduced ? -1 : 0; k <= max_degree; ++k) rep.groups.try_emplace(k);
  rep.reduced = reduced;
  return rep;
}

HomologyReport functor_homology(const CoefficientFunctor& f, int max_degree, const Budget& budget,
                                const HomologyOptions& options) {
  const auto fc = functor_complex(f, max_degree + 1, budget);
  auto rep = homology_of_complex(fc.complex, 0, max_degree, budget, options);
  for (int k = 0; k <= max_degree; ++k) rep.groups.try_emplace(k);
  rep.poset_id = f.poset().id();
  rep.coefficients = "functor";
  return rep;
}

Tristate acyclic_from_report(const HomologyReport& r, int n) {
  if (n < -1) return Tristate::kTrue;
  for (int k = -1; k <= n; ++k) {
    const auto& g = r.group(k);
    if (!g.is_zero()) return Tristate::kFalse;
  }
  return r.exact() ? Tristate::kTrue : Tristate::kUnknown;
}

Tristate is_acyclic_through(const FinitePoset& x, int n, const Budget& budget) {
  if (n < -1) return Tristate::kTrue;
  if (x.empty()) return Tristate::kFalse;
  try {
    return acyclic_from_report(integer_homology(x, n, true, budget), n);
  } catch (const BudgetExceeded&) {
    return Tristate::kUnknown;
  }
}

Tristate is_acyclic_through(const SequencePoset& x, int n, const Budget& budget) {
  if (n < -1) return Tristate::kTrue;
  if (x.empty()) return Tristate::kFalse;
  try {
    return acyclic_from_report(integer_homology(x, n, true, budget), n);
  } catch (const BudgetExceeded&) {
    return Tristate::kUnknown;
  }
}

}  // namespace framecomplex
