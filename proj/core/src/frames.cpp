#include "framecomplex/frames.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "framecomplex/smith.hpp"

namespace framecomplex {

bool is_unimodular_frame(const ModulusRing& ring, const std::vector<Vector>& vectors) {
  if (vectors.empty()) return false;
  const auto d = vectors.front().size();
  std::vector<std::int64_t> flat;
  flat.reserve(vectors.size() * d);
  for (const auto& v : vectors) {
    if (v.size() != d) throw InvalidInput("is_frame: vectors of different lengths");
    for (auto x : v) flat.push_back(ring.reduce(x));
  }
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j)
      if (std::equal(flat.begin() + i * d, flat.begin() + (i + 1) * d, flat.begin() + j * d)) return false;
  return dense_has_right_inverse_mod(flat, vectors.size(), d, ring);
}

bool is_frame(const SymplecticSpace& space, const std::vector<Vector>& vectors, FrameMode mode) {
  for (const auto& v : vectors)
    if (v.size() != space.dimension()) throw InvalidInput("is_frame: vector length must be 2n");
  if (!is_unimodular_frame(space.ring(), vectors)) return false;
  if (mode == FrameMode::kIsotropic)
    for (std::size_t i = 0; i < vectors.size(); ++i)
      for (std::size_t j = i + 1; j < vectors.size(); ++j)
        if (space.form(vectors[i], vectors[j]) != 0) return false;
  return true;
}

std::string to_string(FrameFamily f) {
  switch (f) {
    case FrameFamily::kU: return "U";
    case FrameFamily::kIU: return "IU";
    case FrameFamily::kHU: return "HU";
    case FrameFamily::kMU: return "MU";
    case FrameFamily::kUprime: return "Uprime";
  }
  return "?";
}

bool is_pair_family(FrameFamily f) { return f == FrameFamily::kHU || f == FrameFamily::kMU; }

namespace {

std::vector<Vector> decode_all(const SymplecticSpace& space, const Sequence& s) {
  std::vector<Vector> out;
  out.reserve(s.size());
  for (auto c : s) out.push_back(decode_vector(space.ring(), space.dimension(), c));
  return out;
}

void decode_pairs(const SymplecticSpace& space, const Sequence& s, std::vector<Vector>& x, std::vector<Vector>& y) {
  x.clear();
  y.clear();
  for (auto c : s) {
    auto [a, b] = decode_pair(space.ring(), space.dimension(), c);
    x.push_back(std::move(a));
    y.push_back(std::move(b));
  }
}

bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](auto a) { return a == 0; });
}

bool pairwise_isotropic(const SymplecticSpace& space, const std::vector<Vector>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (space.form(v[i], v[j]) != 0) return false;
  return true;
}

}  // namespace

bool in_family(const SymplecticSpace& space, FrameFamily family, const Sequence& s) {
  if (s.empty()) return false;
  {
    Sequence sorted = s;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  }
  const auto one = space.ring().reduce(1);
  switch (family) {
    case FrameFamily::kU: return is_frame(space, decode_all(space, s), FrameMode::kUnimodular);
    case FrameFamily::kIU: return is_frame(space, decode_all(space, s), FrameMode::kIsotropic);
    case FrameFamily::kUprime: {
      const auto v = decode_all(space, s);
      for (const auto& x : v)
        if (space.form_prime(x, x) != 0) return false;
      return is_frame(space, v, FrameMode::kUnimodular);
    }
    case FrameFamily::kHU: {
      std::vector<Vector> x, y;
      decode_pairs(space, s, x, y);
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
          if (space.form(x[i], y[j]) != (i == j ? one : 0)) return false;
      return is_frame(space, x, FrameMode::kIsotropic) && is_frame(space, y, FrameMode::kIsotropic);
    }
    case FrameFamily::kMU: {
      std::vector<Vector> x, y;
      decode_pairs(space, s, x, y);
      if (!is_frame(space, x, FrameMode::kIsotropic)) return false;
      for (std::size_t i = 0; i < y.size(); ++i) {
        if (is_zero_vector(y[i])) continue;
        for (std::size_t j = 0; j < x.size(); ++j)
          if (space.form(x[j], y[i]) != (i == j ? one : 0)) return false;
      }
      return pairwise_isotropic(space, y);
    }
  }
  return false;
}

namespace {

bool vector_allowed(const SymplecticSpace& space, const FrameQuery& q, const Vector& v) {
  if (q.ambient)
    for (std::size_t i = *q.ambient; i < v.size(); ++i)
      if (v[i] != 0) return false;
  for (const auto& p : q.perpendicular_to)
    if (space.form(p, v) != 0) return false;
  return true;
}

}  // namespace

SequencePoset enumerate_poset(const SymplecticSpace& space, const FrameQuery& query, const Budget& budget) {
  const auto& ring = space.ring();
  const auto d = space.dimension();
  const bool pairs = is_pair_family(query.family);
  const auto sfam = query.suffix_family.value_or(query.family);
  if (!query.suffix.empty() && is_pair_family(sfam) != pairs)
    throw InvalidInput("enumerate_poset: suffix family uses a different symbol coding");
  for (const auto& p : query.perpendicular_to)
    if (p.size() != d) throw InvalidInput("enumerate_poset: perpendicular vector of wrong length");
  if (query.ambient && *query.ambient > d) throw InvalidInput("enumerate_poset: ambient exceeds dimension");

  const auto nv = vector_count(ring, d);
  std::vector<Symbol> ground;
  const auto one = ring.reduce(1);
  if (!pairs) {
    budget.require_elements(nv, "frame ground set");
    for (Symbol c = 1; c < nv; ++c) {
      const auto v = decode_vector(ring, d, c);
      if (!is_unimodular_vector(ring, v) || !vector_allowed(space, query, v)) continue;
      if (query.family == FrameFamily::kUprime && space.form_prime(v, v) != 0) continue;
      ground.push_back(c);
    }
  } else {
    const auto np = ring.power_count(static_cast<unsigned>(2 * d));
    if (!np) throw InvalidInput("enumerate_poset: pair code does not fit in 64 bits");
    budget.require_elements(*np, "frame ground set");
    std::vector<Vector> allowed;
    std::vector<Symbol> allowed_codes;
    for (Symbol c = 0; c < nv; ++c) {
      auto v = decode_vector(ring, d, c);
      if (vector_allowed(space, query, v)) {
        allowed.push_back(std::move(v));
        allowed_codes.push_back(c);
      }
    }
    for (std::size_t i = 0; i < allowed.size(); ++i) {
      const auto& x = allowed[i];
      if (!is_unimodular_vector(ring, x)) continue;
      for (std::size_t j = 0; j < allowed.size(); ++j) {
        const auto& y = allowed[j];
        const auto h = space.form(x, y);
        const bool ok = query.family == FrameFamily::kHU ? h == one : (h == one || allowed_codes[j] == 0);
        if (ok) ground.push_back(allowed_codes[i] * nv + allowed_codes[j]);
      }
    }
  }
  const std::size_t max_len = query.max_length == 0 ? d : query.max_length;
  Sequence buf;
  std::unordered_map<Symbol, Vector> decoded;
  auto vec = [&](Symbol c) -> const Vector& {
    auto it = decoded.find(c);
    if (it == decoded.end()) it = decoded.emplace(c, decode_vector(ring, pairs ? 2 * d : d, c)).first;
    return it->second;
  };
  // Pairwise form conditions against the prefix reject most candidates
  // before any rank computation.
  auto quick_reject = [&](const Sequence& prefix, Symbol next) {
    if (query.family == FrameFamily::kIU) {
      const auto& v = vec(next);
      for (auto c : prefix)
        if (space.form(v, vec(c)) != 0) return true;
    } else if (query.family == FrameFamily::kHU) {
      const auto& v = vec(next);
      const std::span<const std::int64_t> x(v.data(), d), y(v.data() + d, d);
      for (auto c : prefix) {
        const auto& u = vec(c);
        const std::span<const std::int64_t> px(u.data(), d), py(u.data() + d, d);
        if (space.form(x, py) != 0 || space.form(px, y) != 0 || space.form(x, px) != 0 || space.form(y, py) != 0)
          return true;
      }
    }
    return false;
  };
  auto accept = [&](const Sequence& prefix, Symbol next) {
    if (quick_reject(prefix, next)) return false;
    buf = prefix;
    buf.push_back(next);
    if (!in_family(space, query.family, buf)) return false;
    if (!query.suffix.empty()) {
      for (auto s : query.suffix)
        if (s == next) return false;
      buf.insert(buf.end(), query.suffix.begin(), query.suffix.end());
      if (!in_family(space, sfam, buf)) return false;
    }
    return true;
  };
  return enumerate_sequences(ground, max_len, accept, budget);
}

SequencePoset enumerate_unimodular(const ModulusRing& ring, std::size_t dimension, std::size_t max_length,
                                   std::optional<std::size_t> ambient, const Sequence& suffix,
                                   const Budget& budget) {
  if (dimension == 0) throw InvalidInput("enumerate_unimodular: dimension must be positive");
  if (ambient && *ambient > dimension) throw InvalidInput("enumerate_unimodular: ambient exceeds dimension");
  const auto nv = vector_count(ring, dimension);
  budget.require_elements(nv, "frame ground set");
  std::vector<Symbol> ground;
  for (Symbol c = 1; c < nv; ++c) {
    const auto v = decode_vector(ring, dimension, c);
    if (ambient && std::any_of(v.begin() + static_cast<std::ptrdiff_t>(*ambient), v.end(),
                               [](auto a) { return a != 0; }))
      continue;
    if (is_unimodular_vector(ring, v)) ground.push_back(c);
  }
  std::vector<Vector> suffix_vectors;
  for (auto s : suffix) suffix_vectors.push_back(decode_vector(ring, dimension, s));
  std::vector<Vector> buf;
  auto accept = [&](const Sequence& prefix, Symbol next) {
    for (auto s : suffix)
      if (s == next) return false;
    buf.clear();
    for (auto c : prefix) buf.push_back(decode_vector(ring, dimension, c));
    buf.push_back(decode_vector(ring, dimension, next));
    buf.insert(buf.end(), suffix_vectors.begin(), suffix_vectors.end());
    return is_unimodular_frame(ring, buf);
  };
  return enumerate_sequences(ground, max_length == 0 ? dimension : max_length, accept, budget);
}

std::string format_frame(const ModulusRing& ring, std::size_t dimension, bool pairs, const Sequence& s) {
  auto vec = [&](const Vector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (ring.modulus() > 10 && i > 0) out += '.';
      out += std::to_string(v[i]);
    }
    return out;
  };
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    if (pairs) {
      const auto [x, y] = decode_pair(ring, dimension, s[i]);
      out += "[" + vec(x) + "|" + vec(y) + "]";
    } else {
      out += vec(decode_vector(ring, dimension, s[i]));
    }
  }
  return out + ")";
}

nlohmann::json OrbitReport::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["orbit_size"] = orbit_size;
  j["level_size"] = level_size ? nlohmann::json(*level_size) : nlohmann::json(nullptr);
  j["transitive"] = transitive ? nlohmann::json(*transitive) : nlohmann::json(nullptr);
  return j;
}

namespace {

Symbol act(const SymplecticSpace& space, const SymplecticMatrix& g, bool pairs, Symbol c) {
  const auto& ring = space.ring();
  const auto d = space.dimension();
  if (!pairs) return encode_vector(ring, g.apply(decode_vector(ring, d, c)));
  const auto [x, y] = decode_pair(ring, d, c);
  return encode_pair(ring, g.apply(x), g.apply(y));
}

Sequence act(const SymplecticSpace& space, const SymplecticMatrix& g, bool pairs, const Sequence& s) {
  Sequence out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = act(space, g, pairs, s[i]);
  return out;
}

}  // namespace

OrbitReport esp_orbit(const SymplecticSpace& space, FrameFamily family, const Sequence& seed, bool compare_level,
                      const Budget& budget) {
  if (family == FrameFamily::kUprime) throw InvalidInput("esp_orbit: U' is not preserved by Sp");
  if (!in_family(space, family, seed)) throw InvalidInput("esp_orbit: seed is not in " + to_string(family));
  const bool pairs = is_pair_family(family);
  const auto gens = elementary_generators(space);
  OrbitReport rep;
  rep.seed = seed;
  std::unordered_set<Sequence, SequenceHash> seen{seed};
  std::deque<Sequence> queue{seed};
  rep.complete = true;
  try {
    while (!queue.empty()) {
      budget.check_deadline();
      const Sequence cur = std::move(queue.front());
      queue.pop_front();
      for (const auto& g : gens) {
        auto img = act(space, g, pairs, cur);
        if (seen.insert(img).second) {
          budget.require_elements(seen.size(), "orbit");
          queue.push_back(std::move(img));
        }
      }
    }
  } catch (const BudgetExceeded&) {
    rep.complete = false;
  }
  rep.orbit.assign(seen.begin(), seen.end());
  std::sort(rep.orbit.begin(), rep.orbit.end());
  rep.orbit_size = rep.orbit.size();
  if (rep.complete) {
    rep.closed = true;
    for (const auto& s : rep.orbit) {
      for (const auto& g : gens)
        if (!seen.count(act(space, g, pairs, s))) {
          rep.closed = false;
          break;
        }
      if (!rep.closed) break;
    }
    if (!rep.closed) throw InternalInconsistency("esp_orbit: BFS closure is not invariant");
  }
  if (compare_level) {
    try {
      FrameQuery q;
      q.family = family;
      q.max_length = seed.size();
      const auto level = enumerate_poset(space, q, budget);
      rep.level_size = level.count_of_length(seed.size());
      if (rep.complete) rep.transitive = rep.orbit_size == *rep.level_size;
    } catch (const BudgetExceeded&) {
    }
  }
  return rep;
}

bool verify_hyperbolic_completion(const SymplecticSpace& space, const std::vector<Vector>& v,
                                  const HyperbolicBasis& b) {
  const auto n = space.n();
  const auto d = space.dimension();
  const auto& ring = space.ring();
  const auto one = ring.reduce(1);
  if (b.x.size() != n || b.y.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (space.form(b.x[i], b.y[j]) != (i == j ? one : 0)) return false;
      if (space.form(b.x[i], b.x[j]) != 0 || space.form(b.y[i], b.y[j]) != 0) return false;
    }
  std::vector<std::int64_t> flat;
  for (std::size_t i = 0; i < n; ++i) {
    flat.insert(flat.end(), b.x[i].begin(), b.x[i].end());
    flat.insert(flat.end(), b.y[i].begin(), b.y[i].end());
  }
  if (!dense_has_right_inverse_mod(flat, d, d, ring)) return false;
  const auto k = v.size();
  for (const auto& w : v) {
    Vector rebuilt(d, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto alpha = space.form(w, b.y[i]);
      const auto beta = ring.neg(space.form(w, b.x[i]));
      if (i + 1 > k && alpha != 0) return false;
      if (i + 1 >= k && beta != 0) return false;
      for (std::size_t c = 0; c < d; ++c)
        rebuilt[c] = ring.add(rebuilt[c], ring.add(ring.mul(alpha, b.x[i][c]), ring.mul(beta, b.y[i][c])));
    }
    if (rebuilt != space.reduce(w)) return false;
  }
  return true;
}

namespace {

HyperbolicBasis standard_basis(const SymplecticSpace& space) {
  HyperbolicBasis b;
  for (std::size_t i = 1; i <= space.n(); ++i) {
    b.x.push_back(space.basis_vector(2 * i - 1));
    b.y.push_back(space.basis_vector(2 * i));
  }
  return b;
}

// g in ESp with g v = e_1, by BFS over the vector orbit.
std::optional<SymplecticMatrix> move_to_e1(const SymplecticSpace& space, const Vector& v,
                                           const std::vector<SymplecticMatrix>& gens, const Budget& budget) {
  const auto& ring = space.ring();
  const Symbol start = encode_vector(ring, v);
  const Symbol goal = encode_vector(ring, space.basis_vector(1));
  std::unordered_map<Symbol, std::pair<Symbol, std::size_t>> parent;
  parent.emplace(start, std::pair{start, gens.size()});
  std::deque<Symbol> queue{start};
  while (!queue.empty() && !parent.count(goal)) {
    budget.check_deadline();
    const auto cur = queue.front();
    queue.pop_front();
    const auto cv = decode_vector(ring, space.dimension(), cur);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const auto img = encode_vector(ring, gens[gi].apply(cv));
      if (parent.emplace(img, std::pair{cur, gi}).second) {
        budget.require_elements(parent.size(), "vector orbit");
        queue.push_back(img);
      }
    }
  }
  if (!parent.count(goal)) return std::nullopt;
  auto g = SymplecticMatrix::identity(space);
  for (Symbol c = goal; c != start;) {
    const auto [prev, gi] = parent.at(c);
    g = g * gens[gi];
    c = prev;
  }
  return g;
}

std::optional<HyperbolicBasis> complete_rec(const SymplecticSpace& space, const std::vector<Vector>& v,
                                            std::mt19937_64& rng, const Budget& budget,
                                            std::vector<std::string>& notes) {
  if (v.empty()) return standard_basis(space);
  const auto& ring = space.ring();
  const auto d = space.dimension();
  const auto gens = elementary_generators(space);
  const auto g0 = move_to_e1(space, v.front(), gens, budget);
  if (!g0) {
    notes.push_back("no elementary symplectic element moves v_1 to e_1 in dimension " + std::to_string(d));
    return std::nullopt;
  }
  std::vector<Vector> w;
  for (const auto& x : v) w.push_back(g0->apply(x));
  auto h = *g0;
  HyperbolicBasis base = standard_basis(space);
  if (v.size() >= 2) {
    if (space.n() < 2) {
      notes.push_back("frame longer than the rank allows");
      return std::nullopt;
    }
    const SymplecticSpace sub(ring, space.n() - 1);
    const auto cand_count = vector_count(ring, d - 2);
    if (cand_count > budget.search_limit) throw BudgetExceeded("stable-range vector search");
    std::vector<Symbol> order(cand_count);
    std::iota(order.begin(), order.end(), Symbol{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::optional<Vector> found;
    std::vector<Vector> rows;
    for (auto code : order) {
      budget.check_deadline();
      const auto t = decode_vector(ring, d - 2, code);
      rows.clear();
      for (std::size_t i = 1; i < w.size(); ++i) {
        Vector r(d - 2);
        for (std::size_t c = 0; c < d - 2; ++c) r[c] = ring.add(w[i][c + 2], ring.mul(w[i][1], t[c]));
        rows.push_back(std::move(r));
      }
      if (is_unimodular_frame(ring, rows)) {
        found = t;
        break;
      }
    }
    if (!found) {
      notes.push_back("no stable-range vector found");
      return std::nullopt;
    }
    // Transvection fixing e_1: a e1 + b e2 + u -> (a + h(t, u)) e1 + b e2 + (u + b t).
    IntMatrix g = IntMatrix::identity(d);
    for (std::size_t c = 0; c < d - 2; ++c) {
      g(c + 2, 1) = (*found)[c];
      g(0, c + 2) = sub.form(*found, sub.basis_vector(c + 1));
    }
    const SymplecticMatrix gm(space, g);
    h = gm * h;
    std::vector<Vector> rest;
    for (std::size_t i = 1; i < w.size(); ++i) {
      const auto u = gm.apply(w[i]);
      rest.emplace_back(u.begin() + 2, u.end());
    }
    const auto inner = complete_rec(sub, rest, rng, budget, notes);
    if (!inner) return std::nullopt;
    for (std::size_t i = 0; i + 1 < space.n(); ++i) {
      Vector x(d, 0), y(d, 0);
      std::copy(inner->x[i].begin(), inner->x[i].end(), x.begin() + 2);
      std::copy(inner->y[i].begin(), inner->y[i].end(), y.begin() + 2);
      base.x[i + 1] = std::move(x);
      base.y[i + 1] = std::move(y);
    }
  }
  const auto hinv = h.inverse();
  for (auto& x : base.x) x = hinv.apply(x);
  for (auto& y : base.y) y = hinv.apply(y);
  return base;
}

}  // namespace

CompletionResult complete_to_hyperbolic(const SymplecticSpace& space, const std::vector<Vector>& v, int stable_rank,
                                        std::uint64_t seed, const Budget& budget) {
  if (v.empty()) throw InvalidInput("complete_to_hyperbolic: empty frame");
  if (!is_frame(space, v, FrameMode::kUnimodular))
    throw InvalidInput("complete_to_hyperbolic: input is not a unimodular frame");
  if (static_cast<long>(space.n()) < static_cast<long>(stable_rank) + static_cast<long>(v.size()))
    throw InvalidInput("complete_to_hyperbolic: need n >= sr(R) + k");
  CompletionResult out;
  std::mt19937_64 rng(seed);
  try {
    auto basis = complete_rec(space, v, rng, budget, out.notes);
    if (!basis) return out;
    if (!verify_hyperbolic_completion(space, v, *basis)) {
      out.verdict = Verdict::kFail;
      out.notes.push_back("constructed basis failed its postconditions");
      return out;
    }
    out.basis = std::move(basis);
    out.verdict = Verdict::kPass;
  } catch (const BudgetExceeded& e) {
    out.notes.push_back(e.what());
  }
  return out;
}

}  // namespace framecomplex
