#include "framecomplex/theorems.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <memory>
#include <sstream>

#include "framecomplex/chain_complex.hpp"
#include "framecomplex/frames.hpp"
#include "framecomplex/fundamental_group.hpp"
#include "framecomplex/homology.hpp"
#include "framecomplex/random_structures.hpp"
#include "framecomplex/ring.hpp"
#include "framecomplex/smith.hpp"
#include "framecomplex/spectral.hpp"
#include "framecomplex/symplectic.hpp"

#ifndef FRAMECOMPLEX_VERSION
#define FRAMECOMPLEX_VERSION "unknown"
#endif

namespace framecomplex {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int stable_rank_of(std::int64_t m, const Budget& budget) {
  const auto r = stable_rank(ModulusRing(m), budget);
  if (!r.value) throw BudgetExceeded("stable rank of Z/" + std::to_string(m) + " undecided");
  return *r.value;
}

// (e1, e3, ..., e_{2k-1}) as vector codes.
Sequence isotropic_seed(const SymplecticSpace& space, int k) {
  Sequence s;
  for (int i = 0; i < k; ++i)
    s.push_back(encode_vector(space.ring(), space.basis_vector(2 * static_cast<std::size_t>(i) + 1)));
  return s;
}

// ((e1, e2), ..., (e_{2k-1}, e_{2k})) as pair codes.
Sequence hyperbolic_seed(const SymplecticSpace& space, int k) {
  Sequence s;
  for (int i = 0; i < k; ++i) {
    const auto j = 2 * static_cast<std::size_t>(i) + 1;
    s.push_back(encode_pair(space.ring(), space.basis_vector(j), space.basis_vector(j + 1)));
  }
  return s;
}

std::vector<Vector> decode_all(const SymplecticSpace& space, const Sequence& s) {
  std::vector<Vector> out;
  for (auto c : s) out.push_back(decode_vector(space.ring(), space.dimension(), c));
  return out;
}

SequencePoset intersect(const SequencePoset& a, const SequencePoset& b) {
  return a.filter([&](const Sequence& s) { return b.contains(s); });
}

CriterionReport negative_control(const std::string& name, const CriterionReport& inner) {
  CriterionReport rep;
  rep.name = name;
  rep.data["inner"] = inner.to_json();
  if (inner.verdict == Verdict::kHypothesisViolation) {
    rep.verdict = Verdict::kPass;
    rep.notes.push_back("hypothesis violation reported as expected");
  } else if (inner.verdict == Verdict::kInconclusive) {
    rep.verdict = Verdict::kInconclusive;
  } else {
    rep.verdict = Verdict::kFail;
    rep.notes.push_back("a hypothesis-violating instance produced a verdict");
  }
  return rep;
}

CriterionReport from_exception(const std::string& name, const std::exception& e, Verdict v) {
  CriterionReport rep;
  rep.name = name;
  rep.verdict = v;
  rep.notes.push_back(e.what());
  return rep;
}

// Runs body, turning budget exhaustion into an inconclusive report and
// attaching the runtime when requested.
CriterionReport run_check(const TheoremConfig& c, const std::string& name,
                          const std::function<CriterionReport(const Budget&)>& body) {
  const auto start = Clock::now();
  CriterionReport rep;
  try {
    rep = body(c.budget.restarted_from_environment());
  } catch (const BudgetExceeded& e) {
    rep = from_exception(name, e, Verdict::kInconclusive);
  }
  if (rep.name.empty()) rep.name = name;
  if (c.timings) rep.data["runtime_ms"] = elapsed_ms(start);
  return rep;
}

bool sphere_homology(const HomologyReport& h, int s) {
  for (int k = -1; k <= s; ++k) {
    const auto& g = h.group(k);
    if (k == s ? !(g == AbelianGroup::free(1)) : !g.is_zero()) return false;
  }
  return true;
}

SequencePoset iu_poset(const SymplecticSpace& space, std::size_t max_length, const Budget& budget) {
  FrameQuery q;
  q.family = FrameFamily::kIU;
  q.max_length = max_length;
  return enumerate_poset(space, q, budget);
}

SequencePoset hu_poset(const SymplecticSpace& space, std::size_t max_length, const Budget& budget) {
  FrameQuery q;
  q.family = FrameFamily::kHU;
  q.max_length = max_length;
  return enumerate_poset(space, q, budget);
}

std::size_t pos(int x) { return static_cast<std::size_t>(std::max(0, x)); }

// ---------------------------------------------------------------------------
// Individual theorems.

void check_instance(const TheoremConfig& c) {
  if (c.ring < 2) throw InvalidInput("ring modulus must be at least 2");
  if (c.n < 1) throw InvalidInput("n must be at least 1");
  if (c.k < 0) throw InvalidInput("k must be non-negative");
  if (c.max_degree < 0) throw InvalidInput("max-degree must be non-negative");
}

void bound_rows(const std::string& theorem, const TheoremConfig& c, VerificationReport& out) {
  if (theorem == "b-w1" || theorem == "b-w2") {
    TheoremConfig whole = c;
    whole.k = 0;
    out.rows.push_back(verify_bw(theorem, whole));
    if (c.k > 0) out.rows.push_back(verify_bw(theorem, c));
  } else {
    out.rows.push_back(verify_bw(theorem, c));
  }
}

void vas0(const TheoremConfig& c, VerificationReport& out) {
  const SymplecticSpace space(ModulusRing(c.ring), pos(c.n));
  out.checks.push_back(run_check(c, "vas0", [&](const Budget& b) {
    CriterionReport rep;
    rep.name = "vas0";
    const int sr = stable_rank_of(c.ring, b);
    rep.data["stable_rank"] = sr;
    if (c.k < 1 || c.n < sr + c.k) {
      rep.verdict = Verdict::kHypothesisViolation;
      rep.notes.push_back("requires k >= 1 and n >= sr(R) + k");
      return rep;
    }
    rep.verdict = Verdict::kPass;
    auto orbits = nlohmann::json::array();
    for (auto family : {FrameFamily::kIU, FrameFamily::kHU}) {
      const Sequence seed =
          family == FrameFamily::kIU ? isotropic_seed(space, c.k) : hyperbolic_seed(space, c.k);
      const auto o = esp_orbit(space, family, seed, true, b);
      auto j = o.to_json();
      j["family"] = to_string(family);
      orbits.push_back(j);
      if (!o.transitive) rep.verdict = combine(rep.verdict, Verdict::kInconclusive);
      else if (!*o.transitive) rep.verdict = Verdict::kFail;
    }
    rep.data["orbits"] = orbits;
    return rep;
  }));
}

void vas3(const TheoremConfig& c, VerificationReport& out) {
  const ModulusRing ring(c.ring);
  out.checks.push_back(run_check(c, "stable-range", [&](const Budget& b) {
    CriterionReport rep;
    const auto r = stable_rank(ring, b);
    rep.data["stable_rank"] = r.value ? nlohmann::json(*r.value) : nlohmann::json(nullptr);
    auto reports = nlohmann::json::array();
    for (const auto& s : r.reports) reports.push_back(s.to_json());
    rep.data["reports"] = reports;
    rep.verdict = r.value ? Verdict::kPass : Verdict::kInconclusive;
    return rep;
  }));
  const Executor ex(c.workers);
  for (int n = 1; n <= 3; ++n)
    for (int k = 1; n + k <= 4; ++k) {
      const std::string name = "vas3 n=" + std::to_string(n) + " k=" + std::to_string(k);
      out.checks.push_back(run_check(c, name, [&](const Budget& b) {
        CriterionReport rep;
        rep.name = name;
        const auto r = check_matrix_stable_range(ring, n, k, b, ex);
        rep.data = r.to_json();
        if (!r.consistent_with_vector_condition) rep.verdict = Verdict::kInconclusive;
        else rep.verdict = *r.consistent_with_vector_condition ? Verdict::kPass : Verdict::kFail;
        return rep;
      }));
    }
}

CriterionReport membership_for_cover(const std::string& name, const PosetCover& cover, const SequencePoset& level) {
  return membership_scan(name, level, cover.total);
}

void pnt(const TheoremConfig& c, VerificationReport& out) {
  const SymplecticSpace space(ModulusRing(c.ring), pos(c.n));
  out.checks.push_back(run_check(c, "p-n-t b-w1 cover", [&](const Budget& b) {
    const int sr = stable_rank_of(c.ring, b);
    const int l = connectivity_bound("b-w1", c.n, 0, sr);
    const auto len = pos(std::max(1, l + 2));
    const auto cover = bw1_cover(space, l, len, b);
    NerveOptions opt;
    opt.seed = c.seed;
    auto rep = verify_poset_nerve(cover, opt, b);
    rep.name = "p-n-t b-w1 cover";
    const auto scan = membership_for_cover(
        "membership", cover, iu_poset(space, std::min<std::size_t>(pos(c.n - sr), len), b));
    rep.data["membership"] = scan.to_json();
    rep.verdict = combine(rep.verdict, scan.verdict);
    return rep;
  }));
  out.checks.push_back(run_check(c, "p-n-t random covers", [&](const Budget& b) {
    CriterionReport rep;
    rep.name = "p-n-t random covers";
    rep.verdict = Verdict::kPass;
    std::size_t passed = 0;
    for (std::uint64_t i = 0; i < 20; ++i) {
      const auto cover = random_facet_cover(c.seed * 1000 + i, 6, 5, 1, b);
      const auto r = verify_poset_nerve(cover, {}, b);
      if (r.verdict == Verdict::kPass) ++passed;
      else rep.notes.push_back("cover " + std::to_string(i) + ": " + std::string(to_string(r.verdict)));
      rep.verdict = combine(rep.verdict, r.verdict);
    }
    rep.data["covers"] = 20;
    rep.data["passed"] = passed;
    return rep;
  }));
  out.checks.push_back(run_check(c, "p-n-t negative control", [&](const Budget& b) {
    return negative_control("p-n-t negative control", verify_poset_nerve(hexagon_arc_cover(1), {}, b));
  }));
}

void hn(const TheoremConfig& c, VerificationReport& out) {
  out.checks.push_back(run_check(c, "h-n octahedron", [&](const Budget& b) {
    const auto [k, pieces] = octahedron_faces();
    auto rep = classical_nerve(k, pieces, 1, b);
    rep.name = "h-n octahedron";
    return rep;
  }));
  out.checks.push_back(run_check(c, "h-n hexagon", [&](const Budget& b) {
    const auto cover = hexagon_arc_cover(0);
    auto rep = classical_nerve(cover.total, {cover.pieces[0], cover.pieces[1]}, 0, b);
    rep.name = "h-n hexagon";
    return rep;
  }));
  out.checks.push_back(run_check(c, "h-n negative control", [&](const Budget& b) {
    const auto cover = hexagon_arc_cover(1);
    return negative_control("h-n negative control",
                            classical_nerve(cover.total, {cover.pieces[0], cover.pieces[1]}, 1, b));
  }));
}

void surj(const TheoremConfig& c, VerificationReport& out) {
  const SymplecticSpace space(ModulusRing(c.ring), pos(c.n));
  out.checks.push_back(run_check(c, "surj b-w2 cover", [&](const Budget& b) {
    const int sr = stable_rank_of(c.ring, b);
    const int l = connectivity_bound("b-w2", c.n, 0, sr);
    const auto len = pos(std::max(1, l + 2));
    const auto cover = bw2_cover(space, l, len, b);
    auto rep = verify_surjectivity(cover, {}, b);
    rep.name = "surj b-w2 cover";
    const auto scan = membership_for_cover(
        "membership", cover, hu_poset(space, std::min<std::size_t>(pos(c.n - sr), len), b));
    rep.data["membership"] = scan.to_json();
    rep.verdict = combine(rep.verdict, scan.verdict);
    return rep;
  }));
  out.checks.push_back(run_check(c, "surj negative control", [&](const Budget& b) {
    return negative_control("surj negative control", verify_surjectivity(hexagon_arc_cover(1), {}, b));
  }));
}

void maazen5(const TheoremConfig& c, VerificationReport& out) {
  const SymplecticSpace space(ModulusRing(c.ring), pos(c.n));
  out.checks.push_back(run_check(c, "maazen5", [&](const Budget& b) {
    const int sr = stable_rank_of(c.ring, b);
    const int deg = std::max(0, connectivity_bound("b-w1", c.n, 0, sr));
    const auto f = iu_poset(space, pos(deg + 2), b);
    auto rep = verify_maazen5(f, 2, 0, deg, b);
    rep.data["f_size"] = f.size();
    return rep;
  }));
}

void maazen1(const TheoremConfig& c, VerificationReport& out) {
  const ModulusRing ring(c.ring);
  const SymplecticSpace space(ring, pos(c.n));
  out.checks.push_back(run_check(c, "maazen1 IU", [&](const Budget& b) {
    auto rep = maazen1_check(iu_poset(space, 0, b), "IU(" + ring.name() + "^" + std::to_string(2 * c.n) + ")", b);
    rep.name = "maazen1 IU";
    return rep;
  }));
  const int d = c.m.value_or(3);
  if (d < 1) throw InvalidInput("maazen1: rank of U must be at least 1");
  out.checks.push_back(run_check(c, "maazen1 U", [&](const Budget& b) {
    auto rep = maazen1_check(enumerate_unimodular(ring, pos(d), pos(d), std::nullopt, {}, b),
                             "U(" + ring.name() + "^" + std::to_string(d) + ")", b);
    rep.name = "maazen1 U";
    return rep;
  }));
}

void char_lemma(const TheoremConfig& c, VerificationReport& out) {
  const ModulusRing ring(c.ring);
  const int d = c.m.value_or(3);
  if (d < 1) throw InvalidInput("char: rank of U must be at least 1");
  out.checks.push_back(run_check(c, "char", [&](const Budget& b) {
    const auto u = enumerate_unimodular(ring, pos(d), pos(d), std::nullopt, {}, b);
    auto x = std::make_shared<const FinitePoset>(u.to_poset());
    const auto ht = HeightFunction::standard(x);
    std::vector<std::size_t> ranks(x->size(), 0);
    for (std::uint32_t i = 0; i < x->size(); ++i)
      if (u.member(i).size() == 1) ranks[i] = 1;
    std::map<FinitePoset::Relation, IntMatrix> maps;
    for (const auto& [a, bb] : x->relations()) maps.emplace(FinitePoset::Relation{a, bb}, IntMatrix(ranks[bb], ranks[a]));
    const CoefficientFunctor f(x, ranks, std::move(maps));
    auto rep = char_vanishing_check(f, ht, 1, 1, b);
    rep.name = "char";
    rep.data["poset"] = "U(" + ring.name() + "^" + std::to_string(d) + ")";

    Rng rng(c.seed);
    const auto g = random_height_functor(rng, x, 1, 2);
    auto second = char_vanishing_check(g, ht, 2, 2, b);
    rep.data["random_functor"] = second.to_json();
    rep.verdict = combine(rep.verdict, second.verdict);
    return rep;
  }));
}

void quil(const TheoremConfig& c, VerificationReport& out) {
  const SymplecticSpace space(ModulusRing(c.ring), pos(c.n));
  out.checks.push_back(run_check(c, "quil", [&](const Budget& b) {
    const int sr = stable_rank_of(c.ring, b);
    const int nq = std::max(1, connectivity_bound("b-w1", c.n, 0, sr) + 1);
    const auto f = iu_poset(space, pos(nq + 2), b);
    auto y = std::make_shared<const FinitePoset>(f.to_poset());
    const auto ht = HeightFunction::standard(y);
    CriterionReport rep;
    rep.name = "quil";
    rep.data["n"] = nq;
    auto id = quillen_criterion_check(PosetMap::identity(y), ht, nq, b);
    const auto t = tensor_with_set(f, 2, 0, b);
    auto src = std::make_shared<const FinitePoset>(t.poset.to_poset());
    auto proj = quillen_criterion_check(PosetMap(src, y, t.projection), ht, nq, b);
    rep.data["identity"] = id.to_json();
    rep.data["projection"] = proj.to_json();
    rep.verdict = combine(id.verdict, proj.verdict);
    return rep;
  }));
}

bool e2_matches(const SpectralPage& e2, int max_degree, const std::function<AbelianGroup(int, int)>& expected) {
  for (int p = 0; p <= max_degree; ++p)
    for (int q = 0; p + q <= max_degree; ++q)
      if (!(e2.at(p, q) == expected(p, q))) return false;
  return true;
}

void gz(const TheoremConfig& c, VerificationReport& out) {
  const int d = c.max_degree;
  out.checks.push_back(run_check(c, "g-z random maps", [&](const Budget& b) {
    CriterionReport rep;
    rep.name = "g-z random maps";
    rep.verdict = Verdict::kPass;
    Rng rng(c.seed);
    std::size_t matched = 0;
    for (int i = 0; i < 20; ++i) {
      const auto sx = std::uniform_int_distribution<std::size_t>(3, 15)(rng);
      const auto sy = std::uniform_int_distribution<std::size_t>(2, 15)(rng);
      const auto f = random_poset_map(rng, sx, sy, 0.3);
      const auto r = double_complex_pages(f, d, b);
      if (!r.e2.inconclusive.empty()) rep.verdict = combine(rep.verdict, Verdict::kInconclusive);
      if (r.total_matches) ++matched;
      else rep.verdict = Verdict::kFail;
    }
    rep.data["maps"] = 20;
    rep.data["total_matches"] = matched;
    return rep;
  }));
  out.checks.push_back(run_check(c, "g-z collapses", [&](const Budget& b) {
    CriterionReport rep;
    rep.name = "g-z collapses";
    Rng rng(c.seed + 1);
    auto y = std::make_shared<const FinitePoset>(random_poset(rng, 10, 0.3));
    const auto hy = integer_homology(*y, d, false, b);
    const auto id = double_complex_pages(PosetMap::identity(y), d, b);
    const bool id_ok = id.total_matches && e2_matches(id.e2, d, [&](int p, int q) {
                         return q == 0 ? hy.group(p) : AbelianGroup{};
                       });
    auto x = std::make_shared<const FinitePoset>(random_poset(rng, 10, 0.3));
    auto point = std::make_shared<const FinitePoset>(std::vector<std::string>{"*"},
                                                     std::vector<FinitePoset::Relation>{});
    const auto hx = integer_homology(*x, d, false, b);
    const auto cst = double_complex_pages(PosetMap::constant(x, point, 0), d, b);
    const bool const_ok = cst.total_matches && e2_matches(cst.e2, d, [&](int p, int q) {
                            return p == 0 ? hx.group(q) : AbelianGroup{};
                          });
    rep.data["identity"] = id_ok;
    rep.data["constant"] = const_ok;
    rep.verdict = id_ok && const_ok ? Verdict::kPass : Verdict::kFail;
    return rep;
  }));
}

void wh1(const TheoremConfig& c, VerificationReport& out) {
  out.checks.push_back(run_check(c, "wh1", [&](const Budget&) {
    CriterionReport rep;
    rep.name = "wh1";
    rep.verdict = Verdict::kPass;
    Rng rng(c.seed);
    auto cases = nlohmann::json::array();
    auto record = [&](const std::string& label, const LocalSystem& l, const AbelianGroup* expected) {
      const auto r = h0_coinvariants(l, 0);
      const bool ok = r.agrees && (!expected || r.coinvariants == *expected);
      cases.push_back({{"system", label},
                       {"coinvariants", r.coinvariants.to_string()},
                       {"h0", r.h0.to_string()},
                       {"agrees", ok}});
      if (!ok) rep.verdict = Verdict::kFail;
    };
    for (int i = 0; i < 8; ++i) {
      const auto bottoms = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
      const auto tops = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
      const auto rank = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
      record("crown " + std::to_string(i), random_crown_local_system(rng, bottoms, tops, rank), nullptr);
    }
    const AbelianGroup z2{0, {2}};
    const AbelianGroup z = AbelianGroup::free(1);
    record("hexagon monodromy -1", hexagon_local_system(IntMatrix{{-1}}), &z2);
    record("hexagon trivial", hexagon_local_system(IntMatrix{{1}}), &z);
    rep.data["cases"] = cases;
    return rep;
  }));
}

void h0_lemma(const TheoremConfig& c, VerificationReport& out) {
  out.checks.push_back(run_check(c, "h0", [&](const Budget& b) {
    CriterionReport rep;
    rep.name = "h0";
    rep.verdict = Verdict::kPass;
    Rng rng(c.seed);
    std::size_t passed = 0;
    for (int i = 0; i < 25; ++i) {
      const auto f = random_chain_condition_poset(rng, 5, 3, 3);
      auto op = std::make_shared<const FinitePoset>(f.to_poset().opposite());
      const int zero = std::uniform_int_distribution<int>(1, 4)(rng);
      const auto g = random_height_functor(rng, op, 1, zero);
      const auto r = h0_surjectivity_check(f, g, b);
      if (r.verdict == Verdict::kPass) ++passed;
      rep.verdict = combine(rep.verdict, r.verdict);
    }
    rep.data["instances"] = 25;
    rep.data["passed"] = passed;
    return rep;
  }));
}

void charn(const TheoremConfig& c, VerificationReport& out) {
  const ModulusRing ring(c.ring);
  const SymplecticSpace space(ring, pos(c.n));
  const int d = c.max_degree;
  auto compare = [&](CriterionReport& rep, const SequencePoset& a, const SequencePoset& bpos, const Budget& b) {
    rep.data["left_size"] = a.size();
    rep.data["right_size"] = bpos.size();
    const auto ha = integer_homology(a, d, false, b);
    const auto hb = integer_homology(bpos, d, false, b);
    rep.data["left_homology"] = ha.to_json();
    rep.data["right_homology"] = hb.to_json();
    bool same = a.size() == bpos.size();
    for (int k = 0; k <= d; ++k) same = same && ha.group(k) == hb.group(k);
    if (!same) rep.verdict = Verdict::kFail;
    else rep.verdict = ha.exact() && hb.exact() ? Verdict::kPass : Verdict::kInconclusive;
  };
  auto hypothesis = [&](CriterionReport& rep, const Budget& b) {
    const int sr = stable_rank_of(c.ring, b);
    if (c.k < 1 || c.n < sr + c.k) {
      rep.verdict = Verdict::kHypothesisViolation;
      rep.notes.push_back("requires k >= 1 and n >= sr(R) + k");
      return false;
    }
    return true;
  };
  out.checks.push_back(run_check(c, "charn (i)", [&](const Budget& b) {
    CriterionReport rep;
    rep.name = "charn (i)";
    if (!hypothesis(rep, b)) return rep;
    FrameQuery q;
    q.family = FrameFamily::kIU;
    q.suffix = isotropic_seed(space, c.k);
    q.suffix_family = FrameFamily::kIU;
    const auto left = enumerate_poset(space, q, b);
    const SymplecticSpace smaller(ring, pos(c.n - c.k));
    const auto copies = vector_count(ring, pos(c.k));
    const auto right = tensor_with_set(iu_poset(smaller, 0, b), copies, 0, b);
    rep.data["set_size"] = copies;
    compare(rep, left, right.poset, b);
    return rep;
  }));
  out.checks.push_back(run_check(c, "charn (iii)", [&](const Budget& b) {
    CriterionReport rep;
    rep.name = "charn (iii)";
    if (!hypothesis(rep, b)) return rep;
    FrameQuery q;
    q.family = FrameFamily::kHU;
    q.suffix = hyperbolic_seed(space, c.k);
    q.suffix_family = FrameFamily::kHU;
    const auto left = enumerate_poset(space, q, b);
    const auto right = hu_poset(SymplecticSpace(ring, pos(c.n - c.k)), 0, b);
    compare(rep, left, right, b);
    return rep;
  }));
}

}  // namespace

// ---------------------------------------------------------------------------

nlohmann::json TheoremConfig::to_json() const {
  nlohmann::json j;
  j["ring"] = ring;
  j["n"] = n;
  j["k"] = k;
  j["m"] = m ? nlohmann::json(*m) : nlohmann::json(nullptr);
  j["max_degree"] = max_degree;
  j["seed"] = seed;
  j["workers"] = workers;
  j["timings"] = timings;
  j["screen_primes"] = screen_primes;
  j["budget"] = {{"element_limit", budget.element_limit},
                 {"snf_limit", budget.snf_limit},
                 {"basis_dimension_limit", budget.basis_dimension_limit},
                 {"search_limit", budget.search_limit},
                 {"coset_limit", budget.coset_limit}};
  return j;
}

nlohmann::json BoundRow::to_json() const {
  nlohmann::json j;
  j["family"] = family;
  j["ring"] = ring;
  j["n"] = n;
  j["k"] = k;
  j["bound"] = bound;
  j["verified_through"] = verified_through ? nlohmann::json(*verified_through) : nlohmann::json(nullptr);
  j["method"] = method;
  j["runtime_ms"] = runtime_ms ? nlohmann::json(*runtime_ms) : nlohmann::json("NA");
  j["verdict"] = std::string(to_string(verdict));
  j["pi1"] = pi1;
  j["size"] = size;
  j["max_length"] = max_length;
  j["notes"] = notes;
  return j;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["tool"] = "framecomplex";
  j["version"] = std::string(library_version());
  j["theorem"] = theorem;
  j["config"] = config;
  j["verdict"] = std::string(to_string(verdict));
  auto cs = nlohmann::json::array();
  for (const auto& c : checks) cs.push_back(c.to_json());
  j["checks"] = cs;
  auto rs = nlohmann::json::array();
  for (const auto& r : rows) rs.push_back(r.to_json());
  j["rows"] = rs;
  return j;
}

std::string VerificationReport::to_tsv() const {
  std::ostringstream os;
  os << "family\tring\tn\tk\tbound\tverified_through\tmethod\truntime_ms\n";
  for (const auto& r : rows) {
    os << r.family << '\t' << r.ring << '\t' << r.n << '\t' << r.k << '\t' << r.bound << '\t'
       << (r.verified_through ? std::to_string(*r.verified_through) : "NA") << '\t' << r.method << '\t';
    if (r.runtime_ms) os << static_cast<long long>(*r.runtime_ms);
    else os << "NA";
    os << '\n';
  }
  if (!checks.empty()) {
    os << "check\tverdict\n";
    for (const auto& c : checks) os << c.name << '\t' << to_string(c.verdict) << '\n';
  }
  return os.str();
}

std::string_view library_version() { return FRAMECOMPLEX_VERSION; }

const std::vector<std::string>& theorem_names() {
  static const std::vector<std::string> names{"b-w1", "b-w2", "kal5",    "u-i", "vas0", "vas3",
                                              "p-n-t", "h-n", "surj",    "maazen5", "maazen1", "char",
                                              "quil",  "g-z", "wh1",     "h0",  "charn"};
  return names;
}

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int connectivity_bound(const std::string& theorem, int n, int k, int stable_rank) {
  if (theorem == "b-w1") return floor_div(n - stable_rank - k - 2, 2);
  if (theorem == "b-w2") return floor_div(n - stable_rank - k - 3, 2);
  if (theorem == "kal5") return n - stable_rank - 1;
  if (theorem == "u-i") return 2 * n - stable_rank - 2 * k - 1;
  throw InvalidInput("no connectivity bound for " + theorem);
}

BoundRow verify_bw(const std::string& theorem, const TheoremConfig& c) {
  check_instance(c);
  const auto start = Clock::now();
  const ModulusRing ring(c.ring);
  const Budget budget = c.budget.restarted_from_environment();
  BoundRow row;
  row.ring = ring.name();
  row.n = c.n;
  row.k = theorem == "kal5" ? 0 : c.k;
  try {
    const int sr = stable_rank_of(c.ring, budget);
    row.bound = connectivity_bound(theorem, c.n, row.k, sr);
    const int degree = std::min(row.bound, c.max_degree);
    const bool want_pi1 = row.bound >= 1 && c.max_degree >= 1;
    std::size_t len = pos(std::max(1, degree + 2));
    if (want_pi1) len = std::max<std::size_t>(len, 3);
    row.max_length = len;

    SequencePoset poset;
    if (theorem == "b-w1" || theorem == "b-w2") {
      const SymplecticSpace space(ring, pos(c.n));
      const bool iu = theorem == "b-w1";
      if (row.k > c.n) throw InvalidInput("k exceeds n");
      FrameQuery q;
      q.family = iu ? FrameFamily::kIU : FrameFamily::kHU;
      q.max_length = len;
      if (row.k > 0) {
        q.suffix = iu ? isotropic_seed(space, row.k) : hyperbolic_seed(space, row.k);
        q.suffix_family = q.family;
      }
      row.family = std::string(iu ? "IU" : "HU") + (row.k > 0 ? "_x" : "");
      poset = enumerate_poset(space, q, budget);
    } else if (theorem == "kal5") {
      const int m = c.m.value_or(c.n);
      if (m < c.n) throw InvalidInput("kal5 requires n <= m");
      row.family = "U(R^" + std::to_string(m) + ")&O(R^" + std::to_string(c.n) + ")";
      poset = enumerate_unimodular(ring, pos(m), len,
                                   m > c.n ? std::optional<std::size_t>(pos(c.n)) : std::nullopt, {}, budget);
    } else if (theorem == "u-i") {
      row.family = "U_v&O(v^perp)";
      if (row.k < 1 || c.n < sr + row.k) {
        row.verdict = Verdict::kHypothesisViolation;
        row.notes.push_back("requires k >= 1 and n >= sr(R) + k");
        return row;
      }
      const SymplecticSpace space(ring, pos(c.n));
      Sequence v;
      for (int i = 1; i <= row.k; ++i) v.push_back(encode_vector(ring, space.basis_vector(pos(i))));
      FrameQuery q;
      q.family = FrameFamily::kU;
      q.max_length = len;
      q.suffix = v;
      q.suffix_family = FrameFamily::kU;
      q.perpendicular_to = decode_all(space, v);
      poset = enumerate_poset(space, q, budget);
    } else {
      throw InvalidInput("verify_bw: unknown theorem " + theorem);
    }
    row.size = poset.size();

    if (row.bound < -1) {
      row.verdict = Verdict::kPass;
      row.method = "vacuous";
    } else if (poset.empty()) {
      row.verdict = Verdict::kFail;
      row.method = "enumeration";
      row.notes.push_back("poset is empty");
    } else {
      row.verified_through = -1;
      row.method = "enumeration";
      row.verdict = Verdict::kPass;
      if (degree >= 0) {
        HomologyOptions opts;
        opts.screen_primes = c.screen_primes;
        opts.allow_screen = !c.screen_primes.empty();
        const auto h = integer_homology(poset, degree, true, budget, opts);
        row.method = h.exact() ? "snf" : "mod-p-screen";
        bool certified = true;
        for (int k = 0; k <= degree; ++k) {
          const bool screened = h.screen_betti.contains(k);
          if (!h.group(k).is_zero()) {
            row.verdict = screened ? Verdict::kInconclusive : Verdict::kFail;
            row.notes.push_back("reduced H" + std::to_string(k) + " = " + h.group(k).to_string());
            break;
          }
          // verified_through only counts degrees settled over Z
          certified = certified && !screened;
          if (certified) row.verified_through = k;
          else row.notes.push_back("reduced H" + std::to_string(k) + " vanishes mod every screen prime");
        }
      }
      if (want_pi1 && row.verdict == Verdict::kPass) {
        const auto t = decide_triviality(pi1_presentation(poset.truncate_by_length(3)), budget);
        row.pi1 = std::string(to_string(t.trivial));
        if (t.trivial == Tristate::kTrue) {
          row.pi1 = "trivial";
          row.method += "+pi1";
        } else if (t.trivial == Tristate::kFalse) {
          row.pi1 = "nontrivial";
          row.verdict = Verdict::kFail;
        } else {
          row.pi1 = "unknown";
          row.notes.push_back("pi1 undecided within the coset budget");
        }
      }
      if (c.max_degree < row.bound) row.notes.push_back("degrees above max-degree not checked");
    }
  } catch (const BudgetExceeded& e) {
    row.verdict = Verdict::kInconclusive;
    row.notes.push_back(e.what());
  }
  if (c.timings) row.runtime_ms = elapsed_ms(start);
  return row;
}

CriterionReport maazen1_check(const SequencePoset& f, const std::string& label, const Budget& budget) {
  CriterionReport rep;
  rep.name = "maazen1";
  rep.data["poset"] = label;
  rep.data["size"] = f.size();
  if (!f.check_chain_condition()) {
    rep.verdict = Verdict::kHypothesisViolation;
    rep.notes.push_back(label + " fails the chain condition");
    return rep;
  }
  std::map<std::size_t, std::size_t> checked;
  rep.verdict = Verdict::kPass;
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    budget.check_deadline();
    const int s = static_cast<int>(f.member(i).size()) - 2;
    const auto h = integer_homology(f.link_minus(i), s, true, budget);
    if (!h.exact()) {
      rep.verdict = combine(rep.verdict, Verdict::kInconclusive);
      continue;
    }
    if (!sphere_homology(h, s)) {
      rep.verdict = Verdict::kFail;
      rep.notes.push_back("Link-(" + format_sequence(f.member(i)) + ") is not a homology S^" + std::to_string(s));
      break;
    }
    ++checked[f.member(i).size()];
  }
  auto by_length = nlohmann::json::object();
  for (const auto& [len, count] : checked) by_length[std::to_string(len)] = count;
  rep.data["checked_by_length"] = by_length;
  return rep;
}

CriterionReport h0_surjectivity_check(const SequencePoset& f, const CoefficientFunctor& g, const Budget& budget) {
  CriterionReport rep;
  rep.name = "h0";
  if (g.poset().size() != f.size()) throw InvalidInput("h0: functor does not live on F^op");
  if (!f.check_chain_condition()) {
    rep.verdict = Verdict::kHypothesisViolation;
    rep.notes.push_back("F fails the chain condition");
    return rep;
  }
  const auto fc = functor_complex(g, 1, budget);
  const std::size_t rows = fc.complex.rank(0);
  auto cols = fc.complex.boundary(1).columns();
  const auto h0 = smith_normal_form(SparseIntMatrix::from_columns(rows, cols), false, budget).cokernel(rows);
  for (std::size_t j = 0; j < fc.chains[0].size(); ++j) {
    const auto x = fc.chains[0][j][0];
    if (f.member(x).size() != 1) continue;
    for (std::size_t r = 0; r < g.rank(x); ++r)
      cols.push_back({{static_cast<std::uint32_t>(fc.offsets[0][j] + r), 1}});
  }
  const auto quotient = smith_normal_form(SparseIntMatrix::from_columns(rows, std::move(cols)), false, budget)
                            .cokernel(rows);
  rep.data["h0"] = h0.to_json();
  rep.data["cokernel_of_sum"] = quotient.to_json();
  rep.verdict = quotient.is_zero() ? Verdict::kPass : Verdict::kFail;
  return rep;
}

CriterionReport membership_scan(const std::string& name, const SequencePoset& required, const SequencePoset& x) {
  CriterionReport rep;
  rep.name = name;
  rep.data["required"] = required.size();
  rep.verdict = Verdict::kPass;
  for (const auto& s : required.members())
    if (!x.contains(s)) {
      rep.verdict = Verdict::kFail;
      rep.notes.push_back(format_sequence(s) + " is missing");
      break;
    }
  return rep;
}

PosetCover hexagon_arc_cover(int l) {
  const auto a = simplicial_closure({{0, 1}, {1, 2}, {2, 3}});
  const auto b = simplicial_closure({{3, 4}, {4, 5}, {0, 5}});
  PosetCover c;
  c.l = l;
  c.index = nerve_of({a, b}, 2);
  for (const auto& sigma : c.index.members()) {
    SequencePoset piece = sigma.front() == 0 ? a : b;
    for (auto i : sigma) piece = intersect(piece, i == 0 ? a : b);
    c.pieces.push_back(std::move(piece));
  }
  c.total = simplicial_closure({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
  return c;
}

std::pair<SequencePoset, std::vector<SequencePoset>> octahedron_faces() {
  std::vector<std::vector<Symbol>> faces;
  for (Symbol a : {0, 1})
    for (Symbol b : {2, 3})
      for (Symbol c : {4, 5}) faces.push_back({a, b, c});
  std::vector<SequencePoset> pieces;
  for (const auto& f : faces) pieces.push_back(simplicial_closure({f}));
  return {simplicial_closure(faces), std::move(pieces)};
}

VerificationReport verify_theorem(const std::string& theorem, const TheoremConfig& config) {
  check_instance(config);
  VerificationReport out;
  out.theorem = theorem;
  out.config = config.to_json();
  if (theorem == "b-w1" || theorem == "b-w2" || theorem == "kal5" || theorem == "u-i") bound_rows(theorem, config, out);
  else if (theorem == "vas0") vas0(config, out);
  else if (theorem == "vas3") vas3(config, out);
  else if (theorem == "p-n-t") pnt(config, out);
  else if (theorem == "h-n") hn(config, out);
  else if (theorem == "surj") surj(config, out);
  else if (theorem == "maazen5") maazen5(config, out);
  else if (theorem == "maazen1") maazen1(config, out);
  else if (theorem == "char") char_lemma(config, out);
  else if (theorem == "quil") quil(config, out);
  else if (theorem == "g-z") gz(config, out);
  else if (theorem == "wh1") wh1(config, out);
  else if (theorem == "h0") h0_lemma(config, out);
  else if (theorem == "charn") charn(config, out);
  else throw InvalidInput("unknown theorem: " + theorem);

  out.verdict = Verdict::kPass;
  for (const auto& c : out.checks) out.verdict = combine(out.verdict, c.verdict);
  for (const auto& r : out.rows) out.verdict = combine(out.verdict, r.verdict);
  return out;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::kPass: return 0;
    case Verdict::kFail: return 1;
    case Verdict::kInconclusive:
    case Verdict::kHypothesisViolation: return 2;
  }
  return 2;
}

}  // namespace framecomplex
