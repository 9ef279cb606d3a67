#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "framecomplex/budget.hpp"
#include "framecomplex/poset.hpp"

namespace framecomplex {

using Symbol = std::uint64_t;
using Sequence = std::vector<Symbol>;

struct SequenceHash {
  std::size_t operator()(const std::vector<std::uint64_t>& s) const noexcept;
  std::size_t operator()(const std::vector<std::uint32_t>& s) const noexcept;
};

/// True iff a is an order-preserving subsequence of b (greedy scan; exact
/// for sequences with distinct entries).
bool is_subsequence(std::span<const Symbol> a, std::span<const Symbol> b);

/// A set of finite sequences of distinct symbols, ordered by subsequence.
/// Members keep their insertion order, which fixes every derived index.
class SequencePoset {
 public:
  SequencePoset() = default;
  /// Throws InvalidInput on empty sequences, repeated entries or duplicates.
  explicit SequencePoset(std::vector<Sequence> members);

  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] bool empty() const { return members_.empty(); }
  [[nodiscard]] const Sequence& member(std::uint32_t i) const { return members_[i]; }
  [[nodiscard]] const std::vector<Sequence>& members() const { return members_; }
  [[nodiscard]] std::optional<std::uint32_t> index_of(std::span<const Symbol> s) const;
  [[nodiscard]] bool contains(std::span<const Symbol> s) const { return index_of(s).has_value(); }
  [[nodiscard]] std::size_t max_length() const { return max_length_; }
  /// Indices of members of length k (1-based lengths), in member order.
  [[nodiscard]] std::vector<std::uint32_t> members_of_length(std::size_t k) const;
  [[nodiscard]] std::size_t count_of_length(std::size_t k) const;
  /// Sorted distinct symbols occurring in members.
  [[nodiscard]] std::vector<Symbol> ground_set() const;

  [[nodiscard]] bool less(std::uint32_t a, std::uint32_t b) const;
  /// Every subsequence of a member is a member.
  [[nodiscard]] bool check_chain_condition() const;

  /// The underlying finite poset. Labels come from label_fn (default: the
  /// symbol tuple). Covers are single deletions when the chain condition holds.
  [[nodiscard]] FinitePoset to_poset(
      const std::function<std::string(const Sequence&)>& label_fn = {}) const;

  /// F_v = { w : wv in F }.
  [[nodiscard]] SequencePoset sub_after(std::span<const Symbol> v) const;
  [[nodiscard]] SequencePoset truncate_by_length(std::size_t k) const;
  /// Members satisfying pred, in member order.
  [[nodiscard]] SequencePoset filter(const std::function<bool(const Sequence&)>& pred) const;
  /// Proper subsequences of member i that are members.
  [[nodiscard]] SequencePoset link_minus(std::uint32_t i) const;
  /// Members strictly containing member i.
  [[nodiscard]] SequencePoset link_plus(std::uint32_t i) const;

  friend bool operator==(const SequencePoset& a, const SequencePoset& b) {
    return a.members_ == b.members_;
  }

 private:
  std::vector<Sequence> members_;
  std::shared_ptr<std::unordered_map<Sequence, std::uint32_t, SequenceHash>> index_;
  std::size_t max_length_ = 0;
};

std::string format_sequence(const Sequence& s);

/// O(V): all sequences of distinct elements of ground of length 1..max_length,
/// grouped by length and lexicographic within a length.
SequencePoset ordered_sequences(std::span<const Symbol> ground, std::size_t max_length,
                                const Budget& budget = {});

/// Level-wise enumeration of the sequences over ground (length <= max_length)
/// all of whose prefixes are accepted: accept(prefix, next) decides whether
/// prefix + next is kept. Output is grouped by length, lexicographic within.
SequencePoset enumerate_sequences(
    std::span<const Symbol> ground, std::size_t max_length,
    const std::function<bool(const Sequence& prefix, Symbol next)>& accept,
    const Budget& budget = {});

/// F<S> with S = {0, ..., set_size-1}; the symbol (v, s) is v * set_size + s.
struct TensorProduct {
  SequencePoset poset;
  std::size_t set_size = 0;
  std::size_t s0 = 0;
  /// Member index maps of the section l_{s0}: F -> F<S> and projection p.
  std::vector<std::uint32_t> section;
  std::vector<std::uint32_t> projection;
};

TensorProduct tensor_with_set(const SequencePoset& f, std::size_t set_size, std::size_t s0 = 0,
                              const Budget& budget = {});

/// Text format: "sequences M", then one line per member: "len s1 ... s_len".
void write_sequence_text(std::ostream& os, const SequencePoset& p);
SequencePoset read_sequence_text(std::istream& is);

}  // namespace framecomplex
