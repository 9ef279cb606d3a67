#include "framecomplex/sequence_poset.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace framecomplex {

namespace {

template <typename T>
std::size_t hash_words(const std::vector<T>& s) {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ s.size();
  for (auto x : s) {
    h ^= static_cast<std::uint64_t>(x) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

bool has_distinct_entries(const Sequence& s) {
  if (s.size() < 16) {
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        if (s[i] == s[j]) return false;
    return true;
  }
  Sequence t = s;
  std::sort(t.begin(), t.end());
  return std::adjacent_find(t.begin(), t.end()) == t.end();
}

}  // namespace

std::size_t SequenceHash::operator()(const std::vector<std::uint64_t>& s) const noexcept {
  return hash_words(s);
}
std::size_t SequenceHash::operator()(const std::vector<std::uint32_t>& s) const noexcept {
  return hash_words(s);
}

bool is_subsequence(std::span<const Symbol> a, std::span<const Symbol> b) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < b.size() && i < a.size(); ++j)
    if (a[i] == b[j]) ++i;
  return i == a.size();
}

std::string format_sequence(const Sequence& s) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ')';
  return os.str();
}

SequencePoset::SequencePoset(std::vector<Sequence> members)
    : members_(std::move(members)),
      index_(std::make_shared<std::unordered_map<Sequence, std::uint32_t, SequenceHash>>()) {
  if (members_.size() > UINT32_MAX) throw InvalidInput("SequencePoset: too many members");
  index_->reserve(members_.size());
  for (std::uint32_t i = 0; i < members_.size(); ++i) {
    const auto& s = members_[i];
    if (s.empty()) throw InvalidInput("SequencePoset: empty sequence");
    if (!has_distinct_entries(s))
      throw InvalidInput("SequencePoset: repeated entry in " + format_sequence(s));
    if (!index_->emplace(s, i).second)
      throw InvalidInput("SequencePoset: duplicate member " + format_sequence(s));
    max_length_ = std::max(max_length_, s.size());
  }
}

std::optional<std::uint32_t> SequencePoset::index_of(std::span<const Symbol> s) const {
  if (!index_) return std::nullopt;
  auto it = index_->find(Sequence(s.begin(), s.end()));
  if (it == index_->end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint32_t> SequencePoset::members_of_length(std::size_t k) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < members_.size(); ++i)
    if (members_[i].size() == k) out.push_back(i);
  return out;
}

std::size_t SequencePoset::count_of_length(std::size_t k) const {
  return static_cast<std::size_t>(std::count_if(members_.begin(), members_.end(),
                                                [k](const Sequence& s) { return s.size() == k; }));
}

std::vector<Symbol> SequencePoset::ground_set() const {
  std::set<Symbol> g;
  for (const auto& s : members_) g.insert(s.begin(), s.end());
  return {g.begin(), g.end()};
}

bool SequencePoset::less(std::uint32_t a, std::uint32_t b) const {
  const auto& x = members_[a];
  const auto& y = members_[b];
  return x.size() < y.size() && is_subsequence(x, y);
}

bool SequencePoset::check_chain_condition() const {
  Sequence face;
  for (const auto& s : members_) {
    if (s.size() < 2) continue;
    for (std::size_t i = 0; i < s.size(); ++i) {
      face.assign(s.begin(), s.end());
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      if (!contains(face)) return false;
    }
  }
  return true;
}

FinitePoset SequencePoset::to_poset(const std::function<std::string(const Sequence&)>& label_fn) const {
  std::vector<std::string> labels;
  labels.reserve(size());
  for (const auto& s : members_) labels.push_back(label_fn ? label_fn(s) : format_sequence(s));
  std::vector<FinitePoset::Relation> rel;
  if (check_chain_condition()) {
    Sequence face;
    for (std::uint32_t j = 0; j < size(); ++j) {
      const auto& s = members_[j];
      if (s.size() < 2) continue;
      for (std::size_t i = 0; i < s.size(); ++i) {
        face.assign(s.begin(), s.end());
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        rel.emplace_back(*index_of(face), j);
      }
    }
  } else {
    // Without the chain condition covers can skip lengths; use all pairs and
    // let FinitePoset handle the closure.
    for (std::uint32_t a = 0; a < size(); ++a)
      for (std::uint32_t b = 0; b < size(); ++b)
        if (less(a, b)) rel.emplace_back(a, b);
    FinitePoset full(labels, rel);
    std::vector<std::uint32_t> all(size());
    for (std::uint32_t i = 0; i < size(); ++i) all[i] = i;
    return full.induced(all);
  }
  return FinitePoset(std::move(labels), std::move(rel));
}

SequencePoset SequencePoset::sub_after(std::span<const Symbol> v) const {
  std::vector<Sequence> out;
  for (const auto& s : members_) {
    if (s.size() <= v.size()) continue;
    if (!std::equal(v.begin(), v.end(), s.end() - static_cast<std::ptrdiff_t>(v.size()))) continue;
    out.emplace_back(s.begin(), s.end() - static_cast<std::ptrdiff_t>(v.size()));
  }
  return SequencePoset(std::move(out));
}

SequencePoset SequencePoset::truncate_by_length(std::size_t k) const {
  return filter([k](const Sequence& s) { return s.size() <= k; });
}

SequencePoset SequencePoset::filter(const std::function<bool(const Sequence&)>& pred) const {
  std::vector<Sequence> out;
  for (const auto& s : members_)
    if (pred(s)) out.push_back(s);
  return SequencePoset(std::move(out));
}

SequencePoset SequencePoset::link_minus(std::uint32_t i) const {
  const Sequence v = members_.at(i);
  return filter([&](const Sequence& s) { return s.size() < v.size() && is_subsequence(s, v); });
}

SequencePoset SequencePoset::link_plus(std::uint32_t i) const {
  const Sequence v = members_.at(i);
  return filter([&](const Sequence& s) { return s.size() > v.size() && is_subsequence(v, s); });
}

SequencePoset enumerate_sequences(
    std::span<const Symbol> ground, std::size_t max_length,
    const std::function<bool(const Sequence& prefix, Symbol next)>& accept, const Budget& budget) {
  std::vector<Sequence> all;
  std::vector<Sequence> level{Sequence{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Sequence> next;
    for (const auto& prefix : level) {
      budget.check_deadline();
      for (auto g : ground) {
        if (std::find(prefix.begin(), prefix.end(), g) != prefix.end()) continue;
        if (!accept(prefix, g)) continue;
        Sequence s = prefix;
        s.push_back(g);
        next.push_back(std::move(s));
      }
      budget.require_elements(all.size() + next.size(), "sequence enumeration");
    }
    if (next.empty()) break;
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return SequencePoset(std::move(all));
}

SequencePoset ordered_sequences(std::span<const Symbol> ground, std::size_t max_length,
                                const Budget& budget) {
  return enumerate_sequences(ground, max_length, [](const Sequence&, Symbol) { return true; }, budget);
}

TensorProduct tensor_with_set(const SequencePoset& f, std::size_t set_size, std::size_t s0,
                              const Budget& budget) {
  if (set_size == 0) throw InvalidInput("tensor_with_set: S must be nonempty");
  if (s0 >= set_size) throw InvalidInput("tensor_with_set: s0 not in S");
  TensorProduct t;
  t.set_size = set_size;
  t.s0 = s0;
  const Symbol s = set_size;
  std::uint64_t total = 0;
  for (const auto& v : f.members()) {
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (__builtin_mul_overflow(c, s, &c)) throw BudgetExceeded("tensor_with_set: size overflow");
    }
    total += c;
  }
  budget.require_elements(total, "tensor_with_set");
  std::vector<Sequence> members;
  members.reserve(total);
  t.projection.reserve(total);
  for (std::uint32_t idx = 0; idx < f.size(); ++idx) {
    const auto& v = f.member(idx);
    for (auto e : v)
      if (e > (UINT64_MAX - (s - 1)) / s) throw InvalidInput("tensor_with_set: symbol overflow");
    // All labelings of v, lexicographic in the label tuple.
    std::vector<std::size_t> labels(v.size(), 0);
    while (true) {
      Sequence w(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] * s + labels[i];
      members.push_back(std::move(w));
      t.projection.push_back(idx);
      std::size_t pos = v.size();
      while (pos > 0 && ++labels[pos - 1] == set_size) labels[--pos] = 0;
      if (pos == 0) break;
    }
  }
  t.poset = SequencePoset(std::move(members));
  t.section.resize(f.size());
  for (std::uint32_t idx = 0; idx < f.size(); ++idx) {
    Sequence w = f.member(idx);
    for (auto& e : w) e = e * s + s0;
    t.section[idx] = *t.poset.index_of(w);
  }
  return t;
}

void write_sequence_text(std::ostream& os, const SequencePoset& p) {
  os << "sequences " << p.size() << '\n';
  for (const auto& s : p.members()) {
    os << s.size();
    for (auto e : s) os << ' ' << e;
    os << '\n';
  }
}

SequencePoset read_sequence_text(std::istream& is) {
  std::string word;
  std::size_t m = 0;
  if (!(is >> word >> m) || word != "sequences") throw InvalidInput("sequence text: expected 'sequences M'");
  std::vector<Sequence> members(m);
  for (auto& s : members) {
    std::size_t len = 0;
    if (!(is >> len)) throw InvalidInput("sequence text: truncated");
    s.resize(len);
    for (auto& e : s)
      if (!(is >> e)) throw InvalidInput("sequence text: truncated");
  }
  return SequencePoset(std::move(members));
}

}  // namespace framecomplex
