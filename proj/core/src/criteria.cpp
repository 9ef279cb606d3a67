#include "framecomplex/criteria.hpp"

#include <map>

#include "framecomplex/homology.hpp"
#include "framecomplex/induced_map.hpp"

namespace framecomplex {

nlohmann::json CriterionReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["verdict"] = to_string(verdict);
  j["notes"] = notes;
  j["data"] = data;
  return j;
}

Verdict combine(Verdict a, Verdict b) {
  auto rank = [](Verdict v) {
    switch (v) {
      case Verdict::kFail: return 3;
      case Verdict::kInconclusive: return 2;
      case Verdict::kHypothesisViolation: return 1;
      case Verdict::kPass: return 0;
    }
    return 3;
  };
  return rank(a) >= rank(b) ? a : b;
}

Verdict from_tristate(Tristate t) {
  switch (t) {
    case Tristate::kTrue: return Verdict::kPass;
    case Tristate::kFalse: return Verdict::kFail;
    case Tristate::kUnknown: return Verdict::kInconclusive;
  }
  return Verdict::kInconclusive;
}

bool h0_isomorphism(const FinitePoset& x, const FinitePoset& y, const std::vector<std::uint32_t>& assignment) {
  const auto [cx, nx] = x.components();
  const auto [cy, ny] = y.components();
  if (nx != ny) return false;
  std::map<std::uint32_t, std::uint32_t> image;
  std::vector<bool> hit(ny, false);
  for (std::uint32_t v = 0; v < x.size(); ++v) {
    const auto target = cy[assignment[v]];
    auto [it, fresh] = image.emplace(cx[v], target);
    if (!fresh && it->second != target) return false;  // cannot happen for a poset map
    hit[target] = true;
  }
  for (bool h : hit)
    if (!h) return false;
  return true;
}

CriterionReport char_vanishing_check(const CoefficientFunctor& f, const HeightFunction& ht, int n, int m,
                                     const Budget& budget) {
  CriterionReport rep;
  rep.name = "char";
  rep.data["n"] = n;
  rep.data["m"] = m;
  const FinitePoset& x = f.poset();
  if (m < 1) {
    rep.verdict = Verdict::kHypothesisViolation;
    rep.notes.push_back("m must be at least 1");
    return rep;
  }
  try {
    f.validate();
    for (std::uint32_t v = 0; v < x.size(); ++v) {
      if (ht(v) >= m && f.rank(v) != 0) {
        rep.verdict = Verdict::kHypothesisViolation;
        rep.notes.push_back("F(" + x.label(v) + ") nonzero at height " + std::to_string(ht(v)));
        return rep;
      }
      const int need = n - ht(v) - 2;
      const auto ok = is_acyclic_through(x.link(v, LinkSign::kPlus), need, budget);
      if (ok == Tristate::kFalse) {
        rep.verdict = Verdict::kHypothesisViolation;
        rep.notes.push_back("Link+(" + x.label(v) + ") is not " + std::to_string(need) + "-acyclic");
        return rep;
      }
      if (ok == Tristate::kUnknown) {
        rep.verdict = Verdict::kInconclusive;
        rep.notes.push_back("link acyclicity undecided within budget");
        return rep;
      }
    }
    if (n - m < 0) {
      rep.verdict = Verdict::kPass;
      rep.notes.push_back("conclusion vacuous");
      return rep;
    }
    const auto h = functor_homology(f, n - m, budget);
    rep.data["homology"] = h.to_json();
    if (!h.exact()) {
      rep.verdict = h.vanishes_through(n - m) ? Verdict::kInconclusive : Verdict::kFail;
      return rep;
    }
    rep.verdict = h.vanishes_through(n - m) ? Verdict::kPass : Verdict::kFail;
  } catch (const BudgetExceeded& e) {
    rep.verdict = Verdict::kInconclusive;
    rep.notes.push_back(e.what());
  }
  return rep;
}

CriterionReport quillen_criterion_check(const PosetMap& f, const HeightFunction& ht_y, int n,
                                        const Budget& budget) {
  CriterionReport rep;
  rep.name = "quil";
  rep.data["n"] = n;
  const FinitePoset& y = f.target();
  try {
    for (std::uint32_t v = 0; v < y.size(); ++v) {
      const int link_need = n - ht_y(v) - 2;
      const auto link_ok = is_acyclic_through(y.link(v, LinkSign::kPlus), link_need, budget);
      const int fiber_need = ht_y(v) - 1;
      const auto fiber_ok = is_acyclic_through(fiber_under(f, v), fiber_need, budget);
      if (link_ok == Tristate::kFalse || fiber_ok == Tristate::kFalse) {
        rep.verdict = Verdict::kHypothesisViolation;
        rep.notes.push_back((link_ok == Tristate::kFalse ? "Link+(" : "f/") + y.label(v) +
                            (link_ok == Tristate::kFalse ? ") is not " + std::to_string(link_need)
                                                         : " is not " + std::to_string(fiber_need)) +
                            "-acyclic");
        return rep;
      }
      if (link_ok == Tristate::kUnknown || fiber_ok == Tristate::kUnknown) {
        rep.verdict = Verdict::kInconclusive;
        rep.notes.push_back("hypothesis undecided within budget at " + y.label(v));
        return rep;
      }
    }
    rep.verdict = Verdict::kPass;
    auto maps = nlohmann::json::array();
    for (int k = 0; k <= n - 1; ++k) {
      bool iso = false;
      if (k == 0) {
        iso = h0_isomorphism(f.source(), y, f.assignment());
        maps.push_back({{"degree", 0}, {"isomorphism", iso}, {"method", "components"}});
      } else {
        const auto m = induced_map(f, k, false, budget);
        iso = m.isomorphism();
        maps.push_back(m.to_json());
      }
      if (!iso) rep.verdict = Verdict::kFail;
    }
    rep.data["maps"] = maps;
  } catch (const BudgetExceeded& e) {
    rep.verdict = Verdict::kInconclusive;
    rep.notes.push_back(e.what());
  }
  return rep;
}

}  // namespace framecomplex
