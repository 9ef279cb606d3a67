#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "framecomplex/budget.hpp"
#include "framecomplex/functor.hpp"
#include "framecomplex/int_matrix.hpp"
#include "framecomplex/poset.hpp"
#include "framecomplex/sequence_poset.hpp"
#include "framecomplex/smith.hpp"

namespace framecomplex {

/// Letters are +-(g+1) for generator g.
using Word = std::vector<int>;

struct GroupPresentation {
  std::size_t generator_count = 0;
  std::vector<Word> relators;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Edge-path presentation: generators are the comparable pairs off a
/// spanning tree grown from basepoint, one relator per 2-chain a < b < c.
/// Throws InvalidInput when x is empty or disconnected.
GroupPresentation pi1_presentation(const FinitePoset& x, std::uint32_t basepoint = 0);

/// Presentation from the cells of a chain-condition sequence poset: edges
/// are the 2-frames (a, b), faces the 3-frames.
GroupPresentation pi1_presentation(const SequencePoset& f);

Word free_reduce(const Word& w);
/// Free and cyclic reduction, then Tietze eliminations of generators that
/// occur exactly once in some relator of length <= max_relator_length.
GroupPresentation simplify(const GroupPresentation& p, std::size_t max_relator_length = 20);

AbelianGroup abelianization(const GroupPresentation& p);

struct CosetEnumeration {
  bool completed = false;
  std::uint64_t index = 0;
  std::uint64_t cosets_defined = 0;
};

/// Todd-Coxeter (HLT) enumeration of the cosets of the subgroup generated by
/// subgroup_generators. Stops at budget.coset_limit definitions.
CosetEnumeration enumerate_cosets(const GroupPresentation& p, const std::vector<Word>& subgroup_generators,
                                  const Budget& budget = {});

struct TrivialityReport {
  Tristate trivial = Tristate::kUnknown;
  std::string certificate;
  AbelianGroup abelianization;
  std::size_t generators = 0;
  std::size_t relators = 0;
  std::size_t generators_after_simplification = 0;
  std::optional<std::uint64_t> order;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// kTrue only from an empty simplified presentation or a completed
/// enumeration of index 1; kFalse only with a certificate (nonzero
/// abelianization or a finite order > 1).
TrivialityReport decide_triviality(const GroupPresentation& p, const Budget& budget = {});

/// Monodromy of a local system along a spanning tree of the generating
/// relations, one matrix per non-tree relation, acting on L(basepoint).
struct Monodromy {
  std::uint32_t basepoint = 0;
  std::vector<FinitePoset::Relation> loops;
  std::vector<IntMatrix> matrices;
};

Monodromy monodromy(const LocalSystem& l, std::uint32_t basepoint);

struct CoinvariantReport {
  AbelianGroup coinvariants;  // L(x) / <a - beta a>
  AbelianGroup h0;            // functor homology in degree 0
  bool agrees = false;
};

/// Throws InvalidInput when the poset is empty or disconnected.
CoinvariantReport h0_coinvariants(const LocalSystem& l, std::uint32_t basepoint);

/// True iff every loop generator acts trivially.
bool local_system_constancy(const LocalSystem& l);

}  // namespace framecomplex
