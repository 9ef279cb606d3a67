#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "framecomplex/budget.hpp"
#include "framecomplex/functor.hpp"
#include "framecomplex/poset.hpp"

namespace framecomplex {

struct CriterionReport {
  std::string name;
  Verdict verdict = Verdict::kInconclusive;
  std::vector<std::string> notes;
  nlohmann::json data = nlohmann::json::object();

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Aggregate: any fail wins, then inconclusive, then hypothesis violation.
Verdict combine(Verdict a, Verdict b);
Verdict from_tristate(Tristate t);

/// f_* on unreduced H_0 is an isomorphism iff f induces a bijection on
/// connected components.
bool h0_isomorphism(const FinitePoset& x, const FinitePoset& y, const std::vector<std::uint32_t>& assignment);

/// Hypotheses: m >= 1, F(x) = 0 whenever ht(x) >= m, Link^+(x) is
/// (n - ht(x) - 2)-acyclic for every x. Conclusion: H_k(X, F) = 0 for k <= n - m.
CriterionReport char_vanishing_check(const CoefficientFunctor& f, const HeightFunction& ht, int n, int m,
                                     const Budget& budget = {});

/// Hypotheses: Link^+_Y(y) is (n - ht(y) - 2)-acyclic and f/y is
/// (ht(y) - 1)-acyclic for every y. Conclusion: f_* is an isomorphism on
/// H_k(-, Z) for 0 <= k <= n - 1.
CriterionReport quillen_criterion_check(const PosetMap& f, const HeightFunction& ht_y, int n,
                                        const Budget& budget = {});

}  // namespace framecomplex
