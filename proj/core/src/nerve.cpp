#include "framecomplex/nerve.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "framecomplex/frames.hpp"
#include "framecomplex/homology.hpp"
#include "framecomplex/induced_map.hpp"

namespace framecomplex {

namespace {

bool length_lex(const Sequence& a, const Sequence& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Sequence without(const Sequence& s, std::size_t i) {
  Sequence out;
  out.reserve(s.size() - 1);
  for (std::size_t j = 0; j < s.size(); ++j)
    if (j != i) out.push_back(s[j]);
  return out;
}

bool is_subsequence_of(const Sequence& a, const Sequence& b) {
  std::size_t j = 0;
  for (auto x : b)
    if (j < a.size() && a[j] == x) ++j;
  return j == a.size();
}

std::string group_list(const HomologyReport& r, int lo, int hi) {
  std::string out;
  for (int k = lo; k <= hi; ++k) {
    if (!out.empty()) out += ", ";
    out += "H" + std::to_string(k) + "=" + r.group(k).to_string();
  }
  return out;
}

// Unreduced homology agreement in degrees 0..l; nullopt when a screen was used.
std::optional<bool> same_homology(const HomologyReport& a, const HomologyReport& b, int l) {
  if (!a.exact() || !b.exact()) return std::nullopt;
  for (int k = 0; k <= l; ++k)
    if (!(a.group(k) == b.group(k))) return false;
  return true;
}

}  // namespace

SequencePoset union_of(const std::vector<SequencePoset>& pieces) {
  std::unordered_set<Sequence, SequenceHash> seen;
  std::vector<Sequence> all;
  for (const auto& p : pieces)
    for (const auto& m : p.members())
      if (seen.insert(m).second) all.push_back(m);
  std::sort(all.begin(), all.end(), length_lex);
  return SequencePoset(std::move(all));
}

void validate_cover(const PosetCover& cover) {
  if (cover.pieces.size() != cover.index.size()) throw InvalidInput("cover: one piece per element of F required");
  if (!cover.index.check_chain_condition()) throw InvalidInput("cover: F fails the chain condition");
  if (!cover.total.check_chain_condition()) throw InvalidInput("cover: X fails the chain condition");
  std::vector<bool> covered(cover.total.size(), false);
  for (std::size_t i = 0; i < cover.pieces.size(); ++i) {
    const auto& p = cover.pieces[i];
    if (!p.check_chain_condition())
      throw InvalidInput("cover: X_" + format_sequence(cover.index.member(static_cast<std::uint32_t>(i))) +
                         " fails the chain condition");
    for (const auto& m : p.members()) {
      const auto ix = cover.total.index_of(m);
      if (!ix) throw InvalidInput("cover: a piece is not contained in X");
      covered[*ix] = true;
    }
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end())
    throw InvalidInput("cover: X is not the union of the pieces");
  for (std::uint32_t i = 0; i < cover.index.size(); ++i) {
    const auto& w = cover.index.member(i);
    if (w.size() < 2) continue;
    for (std::size_t d = 0; d < w.size(); ++d) {
      const auto v = cover.index.index_of(without(w, d));
      for (const auto& m : cover.pieces[i].members())
        if (!cover.pieces[*v].contains(m))
          throw InvalidInput("cover: not monotone at " + format_sequence(w));
    }
  }
}

PosetCover truncate_cover(const PosetCover& cover, std::size_t k) {
  PosetCover out;
  out.l = cover.l;
  out.index = cover.index.truncate_by_length(k);
  out.total = cover.total.truncate_by_length(k);
  out.pieces.reserve(out.index.size());
  for (const auto& v : out.index.members())
    out.pieces.push_back(cover.pieces[*cover.index.index_of(v)].truncate_by_length(k));
  return out;
}

namespace {

// For each member of X, the indices of F whose pieces contain it (ascending).
std::vector<std::vector<std::uint32_t>> alpha_lists(const PosetCover& cover) {
  std::vector<std::vector<std::uint32_t>> lists(cover.total.size());
  for (std::uint32_t i = 0; i < cover.pieces.size(); ++i)
    for (const auto& m : cover.pieces[i].members()) {
      const auto ix = cover.total.index_of(m);
      if (!ix) throw InvalidInput("cover: a piece is not contained in X");
      lists[*ix].push_back(i);
    }
  return lists;
}

SequencePoset subposet(const SequencePoset& f, const std::vector<std::uint32_t>& ids) {
  std::vector<Sequence> members;
  members.reserve(ids.size());
  for (auto i : ids) members.push_back(f.member(i));
  return SequencePoset(std::move(members));
}

}  // namespace

SequencePoset alpha(const PosetCover& cover, std::uint32_t x) {
  if (x >= cover.total.size()) throw InvalidInput("alpha: element not in X");
  std::vector<std::uint32_t> ids;
  for (std::uint32_t i = 0; i < cover.pieces.size(); ++i)
    if (cover.pieces[i].contains(cover.total.member(x))) ids.push_back(i);
  return subposet(cover.index, ids);
}

std::vector<SequencePoset> all_alphas(const PosetCover& cover) {
  std::vector<SequencePoset> out;
  for (const auto& ids : alpha_lists(cover)) out.push_back(subposet(cover.index, ids));
  return out;
}

namespace {

// Subposet of Z = {(x, v) : x in X_v} on the given elements; the order is
// generated by single deletions in either coordinate.
FinitePoset incidence_subposet(const PosetCover& c, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& elems) {
  std::unordered_map<std::uint64_t, std::uint32_t> pos;
  auto key = [](std::uint32_t x, std::uint32_t v) { return (static_cast<std::uint64_t>(x) << 32) | v; };
  for (std::uint32_t i = 0; i < elems.size(); ++i) pos.emplace(key(elems[i].first, elems[i].second), i);
  std::vector<std::string> labels;
  std::vector<FinitePoset::Relation> rel;
  for (std::uint32_t i = 0; i < elems.size(); ++i) {
    const auto [x, v] = elems[i];
    const auto& xs = c.total.member(x);
    const auto& vs = c.index.member(v);
    labels.push_back(format_sequence(xs) + "@" + format_sequence(vs));
    if (xs.size() > 1)
      for (std::size_t d = 0; d < xs.size(); ++d) {
        const auto xi = c.total.index_of(without(xs, d));
        if (!xi) continue;
        auto it = pos.find(key(*xi, v));
        if (it != pos.end()) rel.emplace_back(it->second, i);
      }
    if (vs.size() > 1)
      for (std::size_t d = 0; d < vs.size(); ++d) {
        const auto vi = c.index.index_of(without(vs, d));
        if (!vi) continue;
        auto it = pos.find(key(x, *vi));
        if (it != pos.end()) rel.emplace_back(it->second, i);
      }
  }
  std::sort(rel.begin(), rel.end());
  rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
  return FinitePoset(std::move(labels), std::move(rel));
}

std::vector<std::uint32_t> sample_indices(std::size_t count, std::size_t limit, std::mt19937_64& rng,
                                          bool all) {
  std::vector<std::uint32_t> ids(count);
  for (std::uint32_t i = 0; i < count; ++i) ids[i] = i;
  if (all || count <= limit) return ids;
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(limit);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

CriterionReport verify_poset_nerve(const PosetCover& cover, const NerveOptions& options, const Budget& budget) {
  CriterionReport rep;
  rep.name = "p-n-t";
  const int l = cover.l;
  rep.data["l"] = l;
  try {
    try {
      validate_cover(cover);
    } catch (const InvalidInput& e) {
      rep.verdict = Verdict::kHypothesisViolation;
      rep.notes.push_back(e.what());
      return rep;
    }
    const auto c = truncate_cover(cover, static_cast<std::size_t>(std::max(1, l + 2)));
    rep.data["index_size"] = c.index.size();
    rep.data["total_size"] = c.total.size();
    for (std::uint32_t i = 0; i < c.index.size(); ++i) {
      const int need = l - static_cast<int>(c.index.member(i).size()) + 1;
      const auto t = is_acyclic_through(c.pieces[i], need, budget);
      if (t != Tristate::kTrue) {
        rep.verdict = t == Tristate::kFalse ? Verdict::kHypothesisViolation : Verdict::kInconclusive;
        rep.notes.push_back("X_" + format_sequence(c.index.member(i)) + " is not shown " + std::to_string(need) +
                            "-acyclic");
        return rep;
      }
    }
    const auto lists = alpha_lists(c);
    for (std::uint32_t x = 0; x < c.total.size(); ++x) {
      const int need = l - static_cast<int>(c.total.member(x).size()) + 1;
      const auto t = is_acyclic_through(subposet(c.index, lists[x]), need, budget);
      if (t != Tristate::kTrue) {
        rep.verdict = t == Tristate::kFalse ? Verdict::kHypothesisViolation : Verdict::kInconclusive;
        rep.notes.push_back("alpha_" + format_sequence(c.total.member(x)) + " is not shown " +
                            std::to_string(need) + "-acyclic");
        return rep;
      }
    }

    const int top = std::max(l, 0);
    const auto hf = integer_homology(c.index, top, false, budget);
    const auto hx = integer_homology(c.total, top, false, budget);
    rep.data["F_homology"] = hf.to_json();
    rep.data["X_homology"] = hx.to_json();
    const auto same = same_homology(hf, hx, l);
    if (!same) {
      rep.verdict = Verdict::kInconclusive;
      rep.notes.push_back("homology of F or X known only by screen");
      return rep;
    }
    rep.verdict = *same ? Verdict::kPass : Verdict::kFail;
    if (!*same)
      rep.notes.push_back("F: " + group_list(hf, 0, l) + "; X: " + group_list(hx, 0, l));

    // The incidence poset Z and its fibers.
    std::size_t zsize = 0;
    for (const auto& p : c.pieces) zsize += p.size();
    budget.require_elements(zsize, "incidence poset");
    rep.data["incidence_size"] = zsize;
    const bool full = zsize <= options.full_incidence_limit;
    rep.data["fiber_mode"] = full ? "full" : "sampled";
    std::mt19937_64 rng(options.seed);
    std::size_t checked = 0;
    bool fibers_ok = true;
    for (auto v : sample_indices(c.index.size(), options.fiber_samples, rng, full)) {
      budget.check_deadline();
      std::vector<std::pair<std::uint32_t, std::uint32_t>> elems;
      for (std::uint32_t w = 0; w < c.index.size(); ++w) {
        if (w != v && !c.index.less(v, w)) continue;
        for (const auto& m : c.pieces[w].members()) elems.emplace_back(*c.total.index_of(m), w);
      }
      const auto fiber = incidence_subposet(c, elems);
      const auto a = integer_homology(fiber, top, false, budget);
      const auto b = integer_homology(c.pieces[v], top, false, budget);
      const auto ok = c.pieces[v].empty() ? std::optional<bool>(fiber.empty()) : same_homology(a, b, top);
      ++checked;
      if (ok && !*ok) {
        fibers_ok = false;
        rep.notes.push_back("v\\f and X_" + format_sequence(c.index.member(v)) + " differ in homology");
      }
    }
    for (auto x : sample_indices(c.total.size(), options.fiber_samples, rng, full)) {
      budget.check_deadline();
      std::vector<std::pair<std::uint32_t, std::uint32_t>> elems;
      const auto& xs = c.total.member(x);
      for (std::uint32_t y = 0; y < c.total.size(); ++y) {
        if (y != x && !is_subsequence_of(xs, c.total.member(y))) continue;
        for (auto w : lists[y]) elems.emplace_back(y, w);
      }
      const auto fiber = incidence_subposet(c, elems);
      const auto a = integer_homology(fiber, top, false, budget);
      const auto b = integer_homology(subposet(c.index, lists[x]), top, false, budget);
      const auto ok = same_homology(a, b, top);
      ++checked;
      if (ok && !*ok) {
        fibers_ok = false;
        rep.notes.push_back("x\\g and alpha_" + format_sequence(xs) + " differ in homology");
      }
    }
    rep.data["fiber_checks"] = checked;
    rep.data["fibers_agree"] = fibers_ok;
    if (!fibers_ok) rep.verdict = Verdict::kFail;
  } catch (const BudgetExceeded& e) {
    rep.verdict = Verdict::kInconclusive;
    rep.notes.push_back(e.what());
  }
  return rep;
}

SequencePoset simplicial_closure(const std::vector<std::vector<Symbol>>& facets, const Budget& budget) {
  std::set<Sequence> faces;
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    if (f.empty()) throw InvalidInput("simplicial_closure: empty facet");
    if (f.size() > 20) throw InvalidInput("simplicial_closure: facet too large");
    for (std::uint32_t mask = 1; mask < (1u << f.size()); ++mask) {
      Sequence s;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (mask & (1u << i)) s.push_back(f[i]);
      faces.insert(std::move(s));
    }
    budget.require_elements(faces.size(), "simplicial closure");
  }
  std::vector<Sequence> all(faces.begin(), faces.end());
  std::sort(all.begin(), all.end(), length_lex);
  return SequencePoset(std::move(all));
}

namespace {

std::vector<std::set<Symbol>> vertex_sets(const std::vector<SequencePoset>& pieces) {
  std::vector<std::set<Symbol>> out;
  for (const auto& p : pieces) {
    std::set<Symbol> vs;
    for (auto i : p.members_of_length(1)) vs.insert(p.member(i).front());
    out.push_back(std::move(vs));
  }
  return out;
}

}  // namespace

SequencePoset nerve_of(const std::vector<SequencePoset>& pieces, std::size_t max_size, const Budget& budget) {
  const auto vs = vertex_sets(pieces);
  std::vector<Symbol> ground(pieces.size());
  for (std::size_t i = 0; i < ground.size(); ++i) ground[i] = i;
  auto accept = [&](const Sequence& prefix, Symbol next) {
    if (!prefix.empty() && next <= prefix.back()) return false;
    std::set<Symbol> common = vs[next];
    for (auto i : prefix) {
      std::set<Symbol> keep;
      std::set_intersection(common.begin(), common.end(), vs[i].begin(), vs[i].end(),
                            std::inserter(keep, keep.end()));
      common = std::move(keep);
      if (common.empty()) return false;
    }
    return !common.empty();
  };
  return enumerate_sequences(ground, max_size, accept, budget);
}

CriterionReport classical_nerve(const SequencePoset& k, const std::vector<SequencePoset>& pieces, int l,
                                const Budget& budget) {
  CriterionReport rep;
  rep.name = "h-n";
  rep.data["l"] = l;
  try {
    std::vector<bool> covered(k.size(), false);
    for (const auto& p : pieces) {
      if (!p.check_chain_condition()) {
        rep.verdict = Verdict::kHypothesisViolation;
        rep.notes.push_back("a piece is not a subcomplex");
        return rep;
      }
      for (const auto& m : p.members()) {
        const auto ix = k.index_of(m);
        if (!ix) {
          rep.verdict = Verdict::kHypothesisViolation;
          rep.notes.push_back("a piece is not contained in K");
          return rep;
        }
        covered[*ix] = true;
      }
    }
    if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
      rep.verdict = Verdict::kHypothesisViolation;
      rep.notes.push_back("K is not the union of the pieces");
      return rep;
    }
    const auto nerve = nerve_of(pieces, static_cast<std::size_t>(std::max(1, l + 2)), budget);
    rep.data["nerve_size"] = nerve.size();
    for (const auto& sigma : nerve.members()) {
      const int need = l - static_cast<int>(sigma.size()) + 1;
      if (need < -1) continue;
      const auto inter = pieces[sigma.front()].filter([&](const Sequence& s) {
        return std::all_of(sigma.begin() + 1, sigma.end(), [&](Symbol i) { return pieces[i].contains(s); });
      });
      const auto t = is_acyclic_through(inter, need, budget);
      if (t != Tristate::kTrue) {
        rep.verdict = t == Tristate::kFalse ? Verdict::kHypothesisViolation : Verdict::kInconclusive;
        rep.notes.push_back("intersection over " + format_sequence(sigma) + " is not shown " +
                            std::to_string(need) + "-acyclic");
        return rep;
      }
    }
    const int top = std::max(l, 0);
    const auto hk = integer_homology(k, top, false, budget);
    const auto hn = integer_homology(nerve, top, false, budget);
    rep.data["K_homology"] = hk.to_json();
    rep.data["nerve_homology"] = hn.to_json();
    const auto same = same_homology(hk, hn, l);
    if (!same) {
      rep.verdict = Verdict::kInconclusive;
      rep.notes.push_back("homology known only by screen");
    } else {
      rep.verdict = *same ? Verdict::kPass : Verdict::kFail;
    }
  } catch (const BudgetExceeded& e) {
    rep.verdict = Verdict::kInconclusive;
    rep.notes.push_back(e.what());
  }
  return rep;
}

CriterionReport verify_surjectivity(const PosetCover& cover, const std::map<std::uint32_t, SequencePoset>& cones,
                                    const Budget& budget) {
  CriterionReport rep;
  rep.name = "surj";
  const int l = cover.l;
  rep.data["l"] = l;
  auto violation = [&](std::string note) {
    rep.verdict = Verdict::kHypothesisViolation;
    rep.notes.push_back(std::move(note));
    return rep;
  };
  auto undecided = [&](Tristate t, std::string note) {
    rep.verdict = t == Tristate::kFalse ? Verdict::kHypothesisViolation : Verdict::kInconclusive;
    rep.notes.push_back(std::move(note));
    return rep;
  };
  try {
    try {
      validate_cover(cover);
    } catch (const InvalidInput& e) {
      return violation(e.what());
    }
    for (std::uint32_t i = 0; i < cover.index.size(); ++i) {
      const int len = static_cast<int>(cover.index.member(i).size());
      const int need = std::min(l - 1, l - len + 1);
      const auto t = is_acyclic_through(cover.pieces[i], need, budget);
      if (t != Tristate::kTrue)
        return undecided(t, "X_" + format_sequence(cover.index.member(i)) + " is not shown " +
                                std::to_string(need) + "-acyclic");
    }
    const auto lists = alpha_lists(cover);
    for (std::uint32_t x = 0; x < cover.total.size(); ++x) {
      const int need = l - static_cast<int>(cover.total.member(x).size()) + 1;
      const auto t = is_acyclic_through(subposet(cover.index, lists[x]), need, budget);
      if (t != Tristate::kTrue)
        return undecided(t, "alpha_" + format_sequence(cover.total.member(x)) + " is not shown " +
                                std::to_string(need) + "-acyclic");
    }
    {
      const auto t = is_acyclic_through(cover.index, l, budget);
      if (t != Tristate::kTrue) return undecided(t, "F is not shown " + std::to_string(l) + "-acyclic");
    }
    const auto singles = cover.index.members_of_length(1);
    for (const auto& [vi, y] : cones) {
      if (vi >= cover.index.size() || cover.index.member(vi).size() != 1)
        return violation("cones are indexed by length-one members of F");
      if (!y.check_chain_condition()) return violation("a cone fails the chain condition");
      for (const auto& m : cover.pieces[vi].members())
        if (!y.contains(m)) return violation("X_v is not contained in its cone");
      for (const auto& m : y.members())
        if (!cover.total.contains(m)) return violation("a cone is not contained in X");
      const auto t = is_acyclic_through(y, l, budget);
      if (t != Tristate::kTrue)
        return undecided(t, "cone over " + format_sequence(cover.index.member(vi)) + " is not shown " +
                                std::to_string(l) + "-acyclic");
    }

    rep.verdict = Verdict::kPass;
    const auto lower = is_acyclic_through(cover.total, l - 1, budget);
    rep.data["X_lower_acyclic"] = std::string(to_string(lower));
    if (lower != Tristate::kTrue) rep.verdict = combine(rep.verdict, from_tristate(lower));

    if (l == -1) {
      rep.data["surjective"] = true;
      rep.notes.push_back("reduced H_-1(X) = 0 since X is nonempty");
    } else if (l == 0) {
      const auto [comp, count] = cover.total.to_poset().components();
      std::vector<bool> hit(count, false);
      for (auto vi : singles)
        for (const auto& m : cover.pieces[vi].members()) hit[comp[*cover.total.index_of(m)]] = true;
      const bool surj = std::find(hit.begin(), hit.end(), false) == hit.end();
      rep.data["surjective"] = surj;
      rep.data["method"] = "components";
      if (!surj) rep.verdict = Verdict::kFail;
    } else {
      IntMatrix acc;
      std::vector<std::int64_t> orders;
      bool first = true;
      for (auto vi : singles) {
        const auto& p = cover.pieces[vi];
        const auto m = induced_map_cellular(p, cover.total, inclusion_map(p, cover.total), l, false, budget);
        orders = m.target_orders;
        acc = first ? m.matrix : IntMatrix::hconcat(acc, m.matrix);
        first = false;
      }
      if (first) {
        const auto hx = integer_homology(cover.total, l, false, budget);
        orders.assign(hx.group(l).generator_count(), 0);
        acc = IntMatrix(orders.size(), 0);
      }
      const bool surj = generates(acc, orders);
      rep.data["surjective"] = surj;
      rep.data["method"] = "induced-maps";
      if (!surj) rep.verdict = Verdict::kFail;
    }

    const bool all_cones = !singles.empty() && std::all_of(singles.begin(), singles.end(), [&](std::uint32_t v) {
      return cones.count(v) > 0;
    });
    if (all_cones) {
      const auto t = is_acyclic_through(cover.total, l, budget);
      rep.data["X_acyclic_with_cones"] = std::string(to_string(t));
      if (t != Tristate::kTrue) rep.verdict = combine(rep.verdict, from_tristate(t));
    } else if (!cones.empty()) {
      rep.notes.push_back("cones missing for some length-one members; l-acyclicity of X not asserted");
    }
  } catch (const BudgetExceeded& e) {
    rep.verdict = Verdict::kInconclusive;
    rep.notes.push_back(e.what());
  }
  return rep;
}

CriterionReport verify_maazen5(const SequencePoset& f, std::size_t set_size, std::size_t s0, int n,
                               const Budget& budget) {
  CriterionReport rep;
  rep.name = "maazen5";
  rep.data["n"] = n;
  rep.data["set_size"] = set_size;
  try {
    if (!f.check_chain_condition()) {
      rep.verdict = Verdict::kHypothesisViolation;
      rep.notes.push_back("F fails the chain condition");
      return rep;
    }
    for (const auto& v : f.members()) {
      const int need = n - static_cast<int>(v.size());
      const auto t = is_acyclic_through(f.sub_after(v), need, budget);
      if (t != Tristate::kTrue) {
        rep.verdict = t == Tristate::kFalse ? Verdict::kHypothesisViolation : Verdict::kInconclusive;
        rep.notes.push_back("F_" + format_sequence(v) + " is not shown " + std::to_string(need) + "-acyclic");
        return rep;
      }
    }
    const auto t = tensor_with_set(f, set_size, s0, budget);
    rep.data["tensor_size"] = t.poset.size();
    rep.verdict = Verdict::kPass;
    auto maps = nlohmann::json::array();
    for (int k = 0; k <= n; ++k) {
      const auto m = induced_map_cellular(f, t.poset, t.section, k, false, budget);
      maps.push_back(m.to_json());
      if (!m.isomorphism()) rep.verdict = Verdict::kFail;
    }
    rep.data["maps"] = maps;
  } catch (const BudgetExceeded& e) {
    rep.verdict = Verdict::kInconclusive;
    rep.notes.push_back(e.what());
  }
  return rep;
}

PosetCover bw1_cover(const SymplecticSpace& space, int l, std::size_t max_length, const Budget& budget) {
  PosetCover c;
  c.l = l;
  FrameQuery fq;
  fq.family = FrameFamily::kU;
  fq.max_length = max_length;
  c.index = enumerate_poset(space, fq, budget);
  for (const auto& v : c.index.members()) {
    FrameQuery q;
    q.family = FrameFamily::kIU;
    q.max_length = max_length;
    q.suffix = v;
    q.suffix_family = FrameFamily::kU;
    for (auto s : v) q.perpendicular_to.push_back(decode_vector(space.ring(), space.dimension(), s));
    c.pieces.push_back(enumerate_poset(space, q, budget));
  }
  c.total = union_of(c.pieces);
  return c;
}

PosetCover bw2_cover(const SymplecticSpace& space, int l, std::size_t max_length, const Budget& budget) {
  PosetCover c;
  c.l = l;
  FrameQuery fq;
  fq.family = FrameFamily::kIU;
  fq.max_length = max_length;
  c.index = enumerate_poset(space, fq, budget);
  const Vector zero(space.dimension(), 0);
  for (const auto& v : c.index.members()) {
    FrameQuery q;
    q.family = FrameFamily::kHU;
    q.max_length = max_length;
    q.suffix_family = FrameFamily::kMU;
    for (auto s : v)
      q.suffix.push_back(encode_pair(space.ring(), decode_vector(space.ring(), space.dimension(), s), zero));
    c.pieces.push_back(enumerate_poset(space, q, budget));
  }
  c.total = union_of(c.pieces);
  return c;
}

PosetCover random_facet_cover(std::uint64_t seed, std::size_t vertices, std::size_t facets, int l,
                              const Budget& budget) {
  if (vertices == 0 || facets == 0) throw InvalidInput("random_facet_cover: need vertices and facets");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size_dist(1, std::min<std::size_t>(3, vertices));
  std::vector<std::vector<Symbol>> fs;
  for (std::size_t i = 0; i < facets; ++i) {
    std::vector<Symbol> all(vertices);
    for (std::size_t v = 0; v < vertices; ++v) all[v] = v;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size_dist(rng));
    std::sort(all.begin(), all.end());
    fs.push_back(std::move(all));
  }
  std::vector<SequencePoset> closed;
  for (const auto& f : fs) closed.push_back(simplicial_closure({f}, budget));
  PosetCover c;
  c.l = l;
  c.index = nerve_of(closed, facets, budget);
  for (const auto& sigma : c.index.members()) {
    std::vector<Symbol> common = fs[sigma.front()];
    for (auto i : sigma) {
      std::vector<Symbol> keep;
      std::set_intersection(common.begin(), common.end(), fs[i].begin(), fs[i].end(), std::back_inserter(keep));
      common = std::move(keep);
    }
    c.pieces.push_back(simplicial_closure({common}, budget));
  }
  c.total = simplicial_closure(fs, budget);
  return c;
}

}  // namespace framecomplex
