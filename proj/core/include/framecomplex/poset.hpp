#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace framecomplex {

enum class LinkSign { kPlus, kMinus };

/// Finite strict poset given by generating relations a < b (normally the
/// covers). The transitive closure is materialized on first use and shared
/// between copies.
class FinitePoset {
 public:
  using Relation = std::pair<std::uint32_t, std::uint32_t>;

  FinitePoset() : FinitePoset({}, {}) {}
  /// Throws InvalidInput on out-of-range indices, reflexive pairs or cycles.
  FinitePoset(std::vector<std::string> labels, std::vector<Relation> relations);

  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] bool empty() const { return labels_.empty(); }
  [[nodiscard]] const std::string& label(std::uint32_t i) const { return labels_[i]; }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] std::optional<std::uint32_t> index_of(const std::string& label) const;
  [[nodiscard]] const std::vector<Relation>& relations() const { return relations_; }
  [[nodiscard]] const std::vector<std::uint32_t>& upper(std::uint32_t i) const { return up_[i]; }
  [[nodiscard]] const std::vector<std::uint32_t>& lower(std::uint32_t i) const { return down_[i]; }
  /// Elements in an order compatible with the relations.
  [[nodiscard]] const std::vector<std::uint32_t>& topological_order() const { return topo_; }

  [[nodiscard]] bool less(std::uint32_t a, std::uint32_t b) const;
  [[nodiscard]] bool leq(std::uint32_t a, std::uint32_t b) const { return a == b || less(a, b); }
  /// Sorted indices of the elements strictly above / below i.
  [[nodiscard]] std::vector<std::uint32_t> strictly_above(std::uint32_t i) const;
  [[nodiscard]] std::vector<std::uint32_t> strictly_below(std::uint32_t i) const;

  /// Induced subposet on subset (new index j is subset[j]); relations are the
  /// covers of the induced order.
  [[nodiscard]] FinitePoset induced(std::span<const std::uint32_t> subset) const;
  /// Restriction of the generating relations to subset. Only valid when
  /// subset is convex (for instance an up-set or down-set); no closure used.
  [[nodiscard]] FinitePoset restricted_convex(std::span<const std::uint32_t> subset) const;
  [[nodiscard]] FinitePoset opposite() const;
  [[nodiscard]] FinitePoset link(std::uint32_t x, LinkSign sign) const;
  [[nodiscard]] std::vector<std::uint32_t> link_elements(std::uint32_t x, LinkSign sign) const;
  /// Length of the longest chain minus one; -1 for the empty poset.
  [[nodiscard]] int dimension() const;
  /// Length of the longest chain ending at each element, minus one.
  [[nodiscard]] std::vector<int> depth() const;

  /// Component index per element of the comparability graph, and the count.
  [[nodiscard]] std::pair<std::vector<std::uint32_t>, std::size_t> components() const;

  [[nodiscard]] const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

  friend bool operator==(const FinitePoset& a, const FinitePoset& b) {
    return a.labels_ == b.labels_ && a.relations_ == b.relations_;
  }

 private:
  struct Closure;
  const Closure& closure() const;

  std::string id_;
  std::vector<std::string> labels_;
  std::vector<Relation> relations_;
  std::vector<std::vector<std::uint32_t>> up_;
  std::vector<std::vector<std::uint32_t>> down_;
  std::vector<std::uint32_t> topo_;
  mutable std::shared_ptr<Closure> closure_;
};

/// Text format: "elements N", N labels one per line, "covers M", M lines "a b".
void write_poset_text(std::ostream& os, const FinitePoset& p);
FinitePoset read_poset_text(std::istream& is);

/// Order-preserving map. The constructor checks x < x' implies f(x) <= f(x')
/// on every generating relation.
class PosetMap {
 public:
  PosetMap(std::shared_ptr<const FinitePoset> source, std::shared_ptr<const FinitePoset> target,
           std::vector<std::uint32_t> assignment);

  static PosetMap identity(std::shared_ptr<const FinitePoset> p);
  static PosetMap constant(std::shared_ptr<const FinitePoset> source,
                           std::shared_ptr<const FinitePoset> target, std::uint32_t value);

  [[nodiscard]] const FinitePoset& source() const { return *source_; }
  [[nodiscard]] const FinitePoset& target() const { return *target_; }
  [[nodiscard]] const std::shared_ptr<const FinitePoset>& source_ptr() const { return source_; }
  [[nodiscard]] const std::shared_ptr<const FinitePoset>& target_ptr() const { return target_; }
  [[nodiscard]] const std::vector<std::uint32_t>& assignment() const { return assignment_; }
  std::uint32_t operator()(std::uint32_t x) const { return assignment_[x]; }

  /// Sorted source indices of f/y = {x : f(x) <= y} and y\f = {x : f(x) >= y}.
  [[nodiscard]] std::vector<std::uint32_t> fiber_under_elements(std::uint32_t y) const;
  [[nodiscard]] std::vector<std::uint32_t> fiber_over_elements(std::uint32_t y) const;

 private:
  std::shared_ptr<const FinitePoset> source_;
  std::shared_ptr<const FinitePoset> target_;
  std::vector<std::uint32_t> assignment_;
};

FinitePoset fiber_under(const PosetMap& f, std::uint32_t y);
FinitePoset fiber_over(const PosetMap& f, std::uint32_t y);

/// Strictly increasing map to the non-negative integers.
class HeightFunction {
 public:
  HeightFunction(std::shared_ptr<const FinitePoset> poset, std::vector<int> values);
  /// ht(x) = 1 + dim Link^-(x), the length of the longest chain below x.
  static HeightFunction standard(std::shared_ptr<const FinitePoset> poset);

  [[nodiscard]] const FinitePoset& poset() const { return *poset_; }
  int operator()(std::uint32_t x) const { return values_[x]; }
  [[nodiscard]] const std::vector<int>& values() const { return values_; }

 private:
  std::shared_ptr<const FinitePoset> poset_;
  std::vector<int> values_;
};

}  // namespace framecomplex
