#include "framecomplex/poset.hpp"

#include <algorithm>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>

#include "framecomplex/budget.hpp"

namespace framecomplex {

namespace {

constexpr std::size_t kClosureLimit = 40'000;

std::size_t words(std::size_t n) { return (n + 63) / 64; }

}  // namespace

struct FinitePoset::Closure {
  std::once_flag once;
  std::size_t stride = 0;
  std::vector<std::uint64_t> above;  // row i: bitset of elements strictly above i
  std::once_flag labels_once;
  std::unordered_map<std::string, std::uint32_t> label_index;

  bool test(std::uint32_t a, std::uint32_t b) const {
    return (above[a * stride + b / 64] >> (b % 64)) & 1U;
  }
};

FinitePoset::FinitePoset(std::vector<std::string> labels, std::vector<Relation> relations)
    : labels_(std::move(labels)), closure_(std::make_shared<Closure>()) {
  const std::size_t n = labels_.size();
  if (n > UINT32_MAX) throw InvalidInput("FinitePoset: too many elements");
  std::sort(relations.begin(), relations.end());
  relations.erase(std::unique(relations.begin(), relations.end()), relations.end());
  up_.assign(n, {});
  down_.assign(n, {});
  for (const auto& [a, b] : relations) {
    if (a >= n || b >= n) throw InvalidInput("FinitePoset: relation index out of range");
    if (a == b) throw InvalidInput("FinitePoset: reflexive relation " + std::to_string(a));
    up_[a].push_back(b);
    down_[b].push_back(a);
  }
  relations_ = std::move(relations);
  // Kahn's algorithm, smallest index first for a canonical order.
  std::vector<std::size_t> indeg(n);
  for (std::size_t i = 0; i < n; ++i) indeg[i] = down_[i].size();
  std::vector<std::uint32_t> ready;
  for (std::uint32_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push_back(i);
  std::make_heap(ready.begin(), ready.end(), std::greater<>());
  topo_.reserve(n);
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), std::greater<>());
    const std::uint32_t x = ready.back();
    ready.pop_back();
    topo_.push_back(x);
    for (auto y : up_[x])
      if (--indeg[y] == 0) {
        ready.push_back(y);
        std::push_heap(ready.begin(), ready.end(), std::greater<>());
      }
  }
  if (topo_.size() != n) throw InvalidInput("FinitePoset: relations contain a cycle");
}

std::optional<std::uint32_t> FinitePoset::index_of(const std::string& label) const {
  if (!closure_) closure_ = std::make_shared<Closure>();
  Closure& c = *closure_;
  std::call_once(c.labels_once, [&] {
    for (std::uint32_t i = 0; i < labels_.size(); ++i) c.label_index.emplace(labels_[i], i);
  });
  auto it = c.label_index.find(label);
  if (it == c.label_index.end()) return std::nullopt;
  return it->second;
}

const FinitePoset::Closure& FinitePoset::closure() const {
  if (!closure_) closure_ = std::make_shared<Closure>();
  Closure& c = *closure_;
  std::call_once(c.once, [&] {
    const std::size_t n = size();
    if (n > kClosureLimit)
      throw BudgetExceeded("transitive closure of " + std::to_string(n) + " elements exceeds limit");
    c.stride = words(n);
    c.above.assign(n * c.stride, 0);
    for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
      const std::uint32_t x = *it;
      std::uint64_t* row = &c.above[x * c.stride];
      for (auto y : up_[x]) {
        row[y / 64] |= std::uint64_t{1} << (y % 64);
        const std::uint64_t* yr = &c.above[y * c.stride];
        for (std::size_t w = 0; w < c.stride; ++w) row[w] |= yr[w];
      }
    }
  });
  return c;
}

bool FinitePoset::less(std::uint32_t a, std::uint32_t b) const {
  if (a == b) return false;
  return closure().test(a, b);
}

std::vector<std::uint32_t> FinitePoset::strictly_above(std::uint32_t i) const {
  const Closure& c = closure();
  std::vector<std::uint32_t> out;
  const std::uint64_t* row = &c.above[i * c.stride];
  for (std::size_t w = 0; w < c.stride; ++w) {
    std::uint64_t bits = row[w];
    while (bits) {
      const int t = __builtin_ctzll(bits);
      out.push_back(static_cast<std::uint32_t>(w * 64 + t));
      bits &= bits - 1;
    }
  }
  return out;
}

std::vector<std::uint32_t> FinitePoset::strictly_below(std::uint32_t i) const {
  const Closure& c = closure();
  std::vector<std::uint32_t> out;
  for (std::uint32_t j = 0; j < size(); ++j)
    if (c.test(j, i)) out.push_back(j);
  return out;
}

FinitePoset FinitePoset::induced(std::span<const std::uint32_t> subset) const {
  const std::size_t k = subset.size();
  std::vector<std::string> labels;
  labels.reserve(k);
  for (auto s : subset) {
    if (s >= size()) throw InvalidInput("induced: index out of range");
    labels.push_back(labels_[s]);
  }
  std::vector<Relation> rel;
  if (k > 1) {
    const Closure& c = closure();
    std::vector<std::uint64_t> in_subset(c.stride, 0);
    std::vector<std::int64_t> local(size(), -1);
    for (std::uint32_t j = 0; j < k; ++j) {
      in_subset[subset[j] / 64] |= std::uint64_t{1} << (subset[j] % 64);
      local[subset[j]] = j;
    }
    std::vector<std::uint64_t> ups(c.stride), shadow(c.stride);
    for (std::uint32_t j = 0; j < k; ++j) {
      const std::uint64_t* row = &c.above[subset[j] * c.stride];
      std::fill(shadow.begin(), shadow.end(), 0);
      for (std::size_t w = 0; w < c.stride; ++w) ups[w] = row[w] & in_subset[w];
      // b is a cover of a iff b lies above a but not above another element of U(a).
      for (std::size_t w = 0; w < c.stride; ++w) {
        std::uint64_t bits = ups[w];
        while (bits) {
          const int t = __builtin_ctzll(bits);
          const std::size_t y = w * 64 + t;
          const std::uint64_t* yr = &c.above[y * c.stride];
          for (std::size_t v = 0; v < c.stride; ++v) shadow[v] |= yr[v];
          bits &= bits - 1;
        }
      }
      for (std::size_t w = 0; w < c.stride; ++w) {
        std::uint64_t bits = ups[w] & ~shadow[w];
        while (bits) {
          const int t = __builtin_ctzll(bits);
          rel.emplace_back(j, static_cast<std::uint32_t>(local[w * 64 + t]));
          bits &= bits - 1;
        }
      }
    }
  }
  return FinitePoset(std::move(labels), std::move(rel));
}

FinitePoset FinitePoset::restricted_convex(std::span<const std::uint32_t> subset) const {
  std::vector<std::int64_t> local(size(), -1);
  std::vector<std::string> labels;
  labels.reserve(subset.size());
  for (std::uint32_t j = 0; j < subset.size(); ++j) {
    local[subset[j]] = j;
    labels.push_back(labels_[subset[j]]);
  }
  std::vector<Relation> rel;
  for (std::uint32_t j = 0; j < subset.size(); ++j)
    for (auto y : up_[subset[j]])
      if (local[y] >= 0) rel.emplace_back(j, static_cast<std::uint32_t>(local[y]));
  return FinitePoset(std::move(labels), std::move(rel));
}

FinitePoset FinitePoset::opposite() const {
  std::vector<Relation> rel;
  rel.reserve(relations_.size());
  for (const auto& [a, b] : relations_) rel.emplace_back(b, a);
  FinitePoset out(labels_, std::move(rel));
  if (!id_.empty()) out.set_id(id_ + "^op");
  return out;
}

std::vector<std::uint32_t> FinitePoset::link_elements(std::uint32_t x, LinkSign sign) const {
  if (x >= size()) throw InvalidInput("link: element out of range");
  return sign == LinkSign::kPlus ? strictly_above(x) : strictly_below(x);
}

FinitePoset FinitePoset::link(std::uint32_t x, LinkSign sign) const {
  const auto elems = link_elements(x, sign);
  return restricted_convex(elems);
}

std::vector<int> FinitePoset::depth() const {
  std::vector<int> d(size(), 0);
  for (auto x : topo_)
    for (auto y : up_[x]) d[y] = std::max(d[y], d[x] + 1);
  return d;
}

int FinitePoset::dimension() const {
  if (empty()) return -1;
  const auto d = depth();
  return *std::max_element(d.begin(), d.end());
}

std::pair<std::vector<std::uint32_t>, std::size_t> FinitePoset::components() const {
  std::vector<std::uint32_t> parent(size());
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : relations_) {
    const auto ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::uint32_t> comp(size());
  std::vector<std::int64_t> number(size(), -1);
  std::size_t count = 0;
  for (std::uint32_t i = 0; i < size(); ++i) {
    const auto r = find(i);
    if (number[r] < 0) number[r] = static_cast<std::int64_t>(count++);
    comp[i] = static_cast<std::uint32_t>(number[r]);
  }
  return {comp, count};
}

void write_poset_text(std::ostream& os, const FinitePoset& p) {
  os << "elements " << p.size() << '\n';
  for (const auto& l : p.labels()) os << l << '\n';
  os << "covers " << p.relations().size() << '\n';
  for (const auto& [a, b] : p.relations()) os << a << ' ' << b << '\n';
}

FinitePoset read_poset_text(std::istream& is) {
  std::string word;
  std::size_t n = 0;
  if (!(is >> word >> n) || word != "elements") throw InvalidInput("poset text: expected 'elements N'");
  std::string line;
  std::getline(is, line);
  std::vector<std::string> labels(n);
  for (auto& l : labels)
    if (!std::getline(is, l)) throw InvalidInput("poset text: truncated label list");
  std::size_t m = 0;
  if (!(is >> word >> m) || word != "covers") throw InvalidInput("poset text: expected 'covers M'");
  std::vector<FinitePoset::Relation> rel(m);
  for (auto& [a, b] : rel)
    if (!(is >> a >> b)) throw InvalidInput("poset text: truncated cover list");
  return FinitePoset(std::move(labels), std::move(rel));
}

PosetMap::PosetMap(std::shared_ptr<const FinitePoset> source,
                   std::shared_ptr<const FinitePoset> target, std::vector<std::uint32_t> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  if (assignment_.size() != source_->size()) throw InvalidInput("PosetMap: assignment size mismatch");
  for (auto y : assignment_)
    if (y >= target_->size()) throw InvalidInput("PosetMap: value out of range");
  for (const auto& [a, b] : source_->relations())
    if (!target_->leq(assignment_[a], assignment_[b]))
      throw InvalidInput("PosetMap: not order-preserving on " + source_->label(a) + " < " +
                         source_->label(b));
}

PosetMap PosetMap::identity(std::shared_ptr<const FinitePoset> p) {
  std::vector<std::uint32_t> a(p->size());
  std::iota(a.begin(), a.end(), 0U);
  return PosetMap(p, p, std::move(a));
}

PosetMap PosetMap::constant(std::shared_ptr<const FinitePoset> source,
                            std::shared_ptr<const FinitePoset> target, std::uint32_t value) {
  std::vector<std::uint32_t> a(source->size(), value);
  return PosetMap(std::move(source), std::move(target), std::move(a));
}

std::vector<std::uint32_t> PosetMap::fiber_under_elements(std::uint32_t y) const {
  if (y >= target_->size()) throw InvalidInput("fiber_under: element not in target");
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < assignment_.size(); ++x)
    if (target_->leq(assignment_[x], y)) out.push_back(x);
  return out;
}

std::vector<std::uint32_t> PosetMap::fiber_over_elements(std::uint32_t y) const {
  if (y >= target_->size()) throw InvalidInput("fiber_over: element not in target");
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < assignment_.size(); ++x)
    if (target_->leq(y, assignment_[x])) out.push_back(x);
  return out;
}

FinitePoset fiber_under(const PosetMap& f, std::uint32_t y) {
  const auto e = f.fiber_under_elements(y);
  return f.source().restricted_convex(e);
}

FinitePoset fiber_over(const PosetMap& f, std::uint32_t y) {
  const auto e = f.fiber_over_elements(y);
  return f.source().restricted_convex(e);
}

HeightFunction::HeightFunction(std::shared_ptr<const FinitePoset> poset, std::vector<int> values)
    : poset_(std::move(poset)), values_(std::move(values)) {
  if (values_.size() != poset_->size()) throw InvalidInput("HeightFunction: size mismatch");
  for (auto v : values_)
    if (v < 0) throw InvalidInput("HeightFunction: negative value");
  for (const auto& [a, b] : poset_->relations())
    if (values_[a] >= values_[b]) throw InvalidInput("HeightFunction: not strictly increasing");
}

HeightFunction HeightFunction::standard(std::shared_ptr<const FinitePoset> poset) {
  auto d = poset->depth();
  return HeightFunction(std::move(poset), std::move(d));
}

}  // namespace framecomplex
