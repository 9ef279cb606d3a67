#include "framecomplex/fundamental_group.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>

#include "framecomplex/chain_complex.hpp"
#include "framecomplex/homology.hpp"

namespace framecomplex {

namespace {

void require_connected(const FinitePoset& x) {
  if (x.empty()) throw InvalidInput("fundamental group: empty poset");
  if (x.components().second != 1) throw InvalidInput("fundamental group: poset is disconnected");
}

/// BFS tree over an undirected edge list; returns the set of tree edge ids.
std::vector<bool> spanning_tree(std::size_t vertices,
                                const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                std::uint32_t root) {
  std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> adj(vertices);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].first].emplace_back(edges[e].second, e);
    adj[edges[e].second].emplace_back(edges[e].first, e);
  }
  std::vector<bool> seen(vertices, false), tree(edges.size(), false);
  std::deque<std::uint32_t> q{root};
  seen[root] = true;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop_front();
    for (const auto& [w, e] : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        tree[e] = true;
        q.push_back(w);
      }
  }
  return tree;
}

/// Generators are the non-tree edges; relator a->b, b->c, (a->c)^-1 per face.
GroupPresentation from_two_skeleton(std::size_t vertices,
                                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                    const std::vector<std::array<std::size_t, 3>>& faces,
                                    std::uint32_t root) {
  const auto tree = spanning_tree(vertices, edges, root);
  std::vector<int> gen(edges.size(), 0);
  GroupPresentation p;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (!tree[e]) gen[e] = static_cast<int>(++p.generator_count);
  for (const auto& f : faces) {
    Word w;
    if (gen[f[0]]) w.push_back(gen[f[0]]);
    if (gen[f[1]]) w.push_back(gen[f[1]]);
    if (gen[f[2]]) w.push_back(-gen[f[2]]);
    w = free_reduce(w);
    if (!w.empty()) p.relators.push_back(std::move(w));
  }
  return p;
}

Word cyclic_reduce(Word w) {
  w = free_reduce(w);
  std::size_t a = 0, b = w.size();
  while (b - a >= 2 && w[a] == -w[b - 1]) {
    ++a;
    --b;
  }
  return Word(w.begin() + static_cast<std::ptrdiff_t>(a), w.begin() + static_cast<std::ptrdiff_t>(b));
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

/// Canonical representative of a cyclic word up to rotation and inversion.
Word canonical_cyclic(const Word& w) {
  Word best = w;
  for (const Word& base : {w, inverse(w)}) {
    for (std::size_t s = 0; s < base.size(); ++s) {
      Word r(base.begin() + static_cast<std::ptrdiff_t>(s), base.end());
      r.insert(r.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(s));
      if (r < best) best = r;
    }
  }
  return best;
}

void normalize(GroupPresentation& p) {
  std::set<Word> seen;
  std::vector<Word> out;
  for (auto& r : p.relators) {
    Word c = cyclic_reduce(r);
    if (c.empty()) continue;
    Word key = canonical_cyclic(c);
    if (seen.insert(key).second) out.push_back(std::move(key));
  }
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  p.relators = std::move(out);
}

}  // namespace

nlohmann::json GroupPresentation::to_json() const {
  nlohmann::json j;
  j["generators"] = generator_count;
  j["relators"] = relators;
  return j;
}

GroupPresentation pi1_presentation(const FinitePoset& x, std::uint32_t basepoint) {
  require_connected(x);
  if (basepoint >= x.size()) throw InvalidInput("pi1_presentation: basepoint out of range");
  const auto chains = enumerate_chains(x, 2);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> edge_id;
  if (chains.size() > 1)
    for (const auto& c : chains[1]) {
      edge_id.emplace(std::make_pair(c[0], c[1]), edges.size());
      edges.emplace_back(c[0], c[1]);
    }
  std::vector<std::array<std::size_t, 3>> faces;
  if (chains.size() > 2)
    for (const auto& c : chains[2])
      faces.push_back({edge_id.at({c[0], c[1]}), edge_id.at({c[1], c[2]}), edge_id.at({c[0], c[2]})});
  return from_two_skeleton(x.size(), edges, faces, basepoint);
}

GroupPresentation pi1_presentation(const SequencePoset& f) {
  if (!f.check_chain_condition()) return pi1_presentation(f.to_poset());
  const auto points = f.members_of_length(1);
  if (points.empty()) throw InvalidInput("fundamental group: empty poset");
  std::map<std::uint32_t, std::uint32_t> vertex;
  for (std::uint32_t i = 0; i < points.size(); ++i) vertex[points[i]] = i;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::map<std::uint32_t, std::size_t> edge_of_member;
  for (auto m : f.members_of_length(2)) {
    const auto& v = f.member(m);
    edge_of_member[m] = edges.size();
    edges.emplace_back(vertex.at(*f.index_of(Sequence{v[0]})), vertex.at(*f.index_of(Sequence{v[1]})));
  }
  // Connectivity of the 1-skeleton.
  {
    std::vector<std::uint32_t> parent(points.size());
    for (std::uint32_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::uint32_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    std::size_t comps = points.size();
    for (const auto& [a, b] : edges) {
      const auto ra = find(a), rb = find(b);
      if (ra != rb) {
        parent[std::max(ra, rb)] = std::min(ra, rb);
        --comps;
      }
    }
    if (comps != 1) throw InvalidInput("fundamental group: poset is disconnected");
  }
  std::vector<std::array<std::size_t, 3>> faces;
  for (auto m : f.members_of_length(3)) {
    const auto& v = f.member(m);
    faces.push_back({edge_of_member.at(*f.index_of(Sequence{v[0], v[1]})),
                     edge_of_member.at(*f.index_of(Sequence{v[1], v[2]})),
                     edge_of_member.at(*f.index_of(Sequence{v[0], v[2]}))});
  }
  return from_two_skeleton(points.size(), edges, faces, 0);
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

GroupPresentation simplify(const GroupPresentation& input, std::size_t max_relator_length) {
  GroupPresentation p = input;
  normalize(p);
  std::vector<bool> alive(p.generator_count + 1, true);
  while (true) {
    // Shortest relator with a generator occurring exactly once.
    int chosen = 0;
    std::size_t which = 0;
    for (std::size_t r = 0; r < p.relators.size() && !chosen; ++r) {
      const Word& w = p.relators[r];
      if (w.size() > max_relator_length) break;
      std::map<int, int> count;
      for (auto l : w) ++count[std::abs(l)];
      for (auto l : w)
        if (count[std::abs(l)] == 1) {
          chosen = l;
          which = r;
          break;
        }
    }
    if (!chosen) break;
    // w = u g v with g = chosen  =>  g = u^-1 v^-1.
    const Word w = p.relators[which];
    const auto pos = static_cast<std::size_t>(std::find(w.begin(), w.end(), chosen) - w.begin());
    Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
    Word v(w.begin() + static_cast<std::ptrdiff_t>(pos) + 1, w.end());
    Word value = inverse(u);
    const Word vi = inverse(v);
    value.insert(value.end(), vi.begin(), vi.end());
    if (chosen < 0) value = inverse(value);
    const int g = std::abs(chosen);
    const Word value_inv = inverse(value);
    std::vector<Word> next;
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
      if (r == which) continue;
      Word out;
      for (auto l : p.relators[r]) {
        if (l == g)
          out.insert(out.end(), value.begin(), value.end());
        else if (l == -g)
          out.insert(out.end(), value_inv.begin(), value_inv.end());
        else
          out.push_back(l);
      }
      next.push_back(std::move(out));
    }
    p.relators = std::move(next);
    alive[static_cast<std::size_t>(g)] = false;
    normalize(p);
  }
  // Renumber the surviving generators.
  std::vector<int> renumber(alive.size(), 0);
  std::size_t count = 0;
  for (std::size_t g = 1; g < alive.size(); ++g)
    if (alive[g]) renumber[g] = static_cast<int>(++count);
  for (auto& r : p.relators)
    for (auto& l : r) l = l > 0 ? renumber[static_cast<std::size_t>(l)] : -renumber[static_cast<std::size_t>(-l)];
  p.generator_count = count;
  normalize(p);
  return p;
}

AbelianGroup abelianization(const GroupPresentation& p) {
  std::vector<SparseColumn> cols;
  for (const auto& r : p.relators) {
    std::map<std::uint32_t, std::int64_t> e;
    for (auto l : r) e[static_cast<std::uint32_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
    SparseColumn c;
    for (const auto& [g, v] : e)
      if (v) c.emplace_back(g, v);
    cols.push_back(std::move(c));
  }
  const auto m = SparseIntMatrix::from_columns(p.generator_count, std::move(cols));
  return smith_normal_form(m).cokernel(p.generator_count);
}

namespace {

class CosetTable {
 public:
  CosetTable(std::size_t generators, const Budget& budget)
      : width_(2 * generators), budget_(budget) {
    new_coset();
  }

  static int column(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }
  static int inv(int col) { return col ^ 1; }

  std::int64_t& at(std::int64_t c, int x) { return table_[static_cast<std::size_t>(c) * width_ + x]; }
  bool alive(std::int64_t c) const { return parent_[static_cast<std::size_t>(c)] == c; }
  std::size_t size() const { return parent_.size(); }
  std::uint64_t defined() const { return defined_; }

  void scan_and_fill(std::int64_t c, const std::vector<int>& w) {
    if (w.empty()) return;
    std::int64_t f = c, b = c;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    while (true) {
      while (i <= j && at(f, w[static_cast<std::size_t>(i)]) >= 0) f = at(f, w[static_cast<std::size_t>(i++)]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && at(b, inv(w[static_cast<std::size_t>(j)])) >= 0)
        b = at(b, inv(w[static_cast<std::size_t>(j--)]));
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        at(f, w[static_cast<std::size_t>(i)]) = b;
        at(b, inv(w[static_cast<std::size_t>(i)])) = f;
        return;
      }
      define(f, w[static_cast<std::size_t>(i)]);
    }
  }

  void define(std::int64_t c, int x) {
    const auto d = new_coset();
    at(c, x) = d;
    at(d, inv(x)) = c;
  }

  std::uint64_t live_count() const {
    std::uint64_t n = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c)
      if (parent_[c] == static_cast<std::int64_t>(c)) ++n;
    return n;
  }

  int width() const { return static_cast<int>(width_); }

 private:
  std::int64_t new_coset() {
    if (defined_ >= budget_.coset_limit) throw BudgetExceeded("coset enumeration: coset limit reached");
    if ((defined_ & 1023) == 0) budget_.check_deadline();
    ++defined_;
    const auto c = static_cast<std::int64_t>(parent_.size());
    parent_.push_back(c);
    table_.resize(table_.size() + width_, -1);
    return c;
  }

  std::int64_t rep(std::int64_t k) {
    std::int64_t l = k;
    while (parent_[static_cast<std::size_t>(l)] != l) l = parent_[static_cast<std::size_t>(l)];
    while (parent_[static_cast<std::size_t>(k)] != k) {
      const auto next = parent_[static_cast<std::size_t>(k)];
      parent_[static_cast<std::size_t>(k)] = l;
      k = next;
    }
    return l;
  }

  void merge(std::int64_t k, std::int64_t l, std::vector<std::int64_t>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[static_cast<std::size_t>(l)] = k;
    queue.push_back(l);
  }

  void coincidence(std::int64_t a, std::int64_t b) {
    std::vector<std::int64_t> queue;
    merge(a, b, queue);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const auto e = queue[qi];
      for (int x = 0; x < static_cast<int>(width_); ++x) {
        const auto f = at(e, x);
        if (f < 0) continue;
        at(f, inv(x)) = -1;
        const auto e1 = rep(e);
        const auto f1 = rep(f);
        if (at(e1, x) >= 0)
          merge(f1, at(e1, x), queue);
        else if (at(f1, inv(x)) >= 0)
          merge(e1, at(f1, inv(x)), queue);
        else {
          at(e1, x) = f1;
          at(f1, inv(x)) = e1;
        }
      }
    }
  }

  std::size_t width_;
  const Budget& budget_;
  std::vector<std::int64_t> table_;
  std::vector<std::int64_t> parent_;
  std::uint64_t defined_ = 0;
};

std::vector<int> to_columns(const Word& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (auto l : w) out.push_back(CosetTable::column(l));
  return out;
}

}  // namespace

CosetEnumeration enumerate_cosets(const GroupPresentation& p, const std::vector<Word>& subgroup_generators,
                                  const Budget& budget) {
  CosetEnumeration out;
  CosetTable t(p.generator_count, budget);
  std::vector<std::vector<int>> rels;
  for (const auto& r : p.relators) rels.push_back(to_columns(r));
  try {
    for (const auto& h : subgroup_generators) t.scan_and_fill(0, to_columns(h));
    for (std::size_t c = 0; c < t.size(); ++c) {
      const auto ci = static_cast<std::int64_t>(c);
      for (const auto& r : rels) {
        if (!t.alive(ci)) break;
        t.scan_and_fill(ci, r);
      }
      if (!t.alive(ci)) continue;
      for (int x = 0; x < t.width(); ++x)
        if (t.at(ci, x) < 0) t.define(ci, x);
    }
    out.completed = true;
    out.index = t.live_count();
  } catch (const BudgetExceeded&) {
    out.completed = false;
  }
  out.cosets_defined = t.defined();
  return out;
}

nlohmann::json TrivialityReport::to_json() const {
  nlohmann::json j;
  j["trivial"] = to_string(trivial);
  j["certificate"] = certificate;
  j["abelianization"] = abelianization.to_string();
  j["generators"] = generators;
  j["relators"] = relators;
  j["generators_after_simplification"] = generators_after_simplification;
  if (order) j["order"] = *order;
  return j;
}

TrivialityReport decide_triviality(const GroupPresentation& p, const Budget& budget) {
  TrivialityReport rep;
  rep.generators = p.generator_count;
  rep.relators = p.relators.size();
  const auto s = simplify(p);
  rep.generators_after_simplification = s.generator_count;
  rep.abelianization = abelianization(s);
  if (s.generator_count == 0) {
    rep.trivial = Tristate::kTrue;
    rep.certificate = "presentation collapses to no generators";
    rep.order = 1;
    return rep;
  }
  if (!rep.abelianization.is_zero()) {
    rep.trivial = Tristate::kFalse;
    rep.certificate = "abelianization " + rep.abelianization.to_string();
    return rep;
  }
  const auto ce = enumerate_cosets(s, {}, budget);
  if (ce.completed) {
    rep.order = ce.index;
    rep.trivial = ce.index == 1 ? Tristate::kTrue : Tristate::kFalse;
    rep.certificate = "coset enumeration: order " + std::to_string(ce.index);
  } else {
    rep.certificate = "coset enumeration exhausted after " + std::to_string(ce.cosets_defined) + " cosets";
  }
  return rep;
}

Monodromy monodromy(const LocalSystem& l, std::uint32_t basepoint) {
  const FinitePoset& x = l.poset();
  require_connected(x);
  if (basepoint >= x.size()) throw InvalidInput("monodromy: basepoint out of range");
  const auto& rels = x.relations();
  const auto tree = spanning_tree(x.size(), rels, basepoint);
  // psi(v): L(basepoint) -> L(v) along tree paths.
  std::vector<IntMatrix> psi(x.size());
  std::vector<bool> have(x.size(), false);
  psi[basepoint] = IntMatrix::identity(l.fibre_rank());
  have[basepoint] = true;
  std::vector<std::vector<std::size_t>> adj(x.size());
  for (std::size_t e = 0; e < rels.size(); ++e)
    if (tree[e]) {
      adj[rels[e].first].push_back(e);
      adj[rels[e].second].push_back(e);
    }
  std::deque<std::uint32_t> q{basepoint};
  while (!q.empty()) {
    const auto v = q.front();
    q.pop_front();
    for (auto e : adj[v]) {
      const auto [a, b] = rels[e];
      const std::uint32_t w = a == v ? b : a;
      if (have[w]) continue;
      const IntMatrix& m = l.generating_maps().at(rels[e]);
      psi[w] = (a == v) ? m * psi[v] : m.integer_inverse() * psi[v];
      have[w] = true;
      q.push_back(w);
    }
  }
  Monodromy out;
  out.basepoint = basepoint;
  for (std::size_t e = 0; e < rels.size(); ++e) {
    if (tree[e]) continue;
    const auto [a, b] = rels[e];
    out.loops.push_back(rels[e]);
    out.matrices.push_back(psi[b].integer_inverse() * l.generating_maps().at(rels[e]) * psi[a]);
  }
  return out;
}

CoinvariantReport h0_coinvariants(const LocalSystem& l, std::uint32_t basepoint) {
  const auto mono = monodromy(l, basepoint);
  const std::size_t r = l.fibre_rank();
  std::vector<SparseColumn> cols;
  for (const auto& beta : mono.matrices) {
    const IntMatrix d = IntMatrix::identity(r) - beta;
    for (std::size_t j = 0; j < r; ++j) {
      SparseColumn c;
      for (std::size_t i = 0; i < r; ++i)
        if (d(i, j)) c.emplace_back(static_cast<std::uint32_t>(i), d(i, j));
      cols.push_back(std::move(c));
    }
  }
  CoinvariantReport out;
  out.coinvariants = smith_normal_form(SparseIntMatrix::from_columns(r, std::move(cols))).cokernel(r);
  out.h0 = functor_homology(l, 0).group(0);
  out.agrees = out.coinvariants == out.h0;
  return out;
}

bool local_system_constancy(const LocalSystem& l) {
  const auto mono = monodromy(l, 0);
  for (const auto& m : mono.matrices)
    if (!m.is_identity()) return false;
  return true;
}

}  // namespace framecomplex
