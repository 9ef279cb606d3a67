#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "framecomplex/budget.hpp"
#include "framecomplex/sequence_poset.hpp"
#include "framecomplex/symplectic.hpp"

namespace framecomplex {

enum class FrameMode { kUnimodular, kIsotropic };

/// Unimodular: the k x d matrix of the vectors has a right inverse.
/// Isotropic: additionally h(v_i, v_j) = 0. Empty or repeated input -> false.
bool is_frame(const SymplecticSpace& space, const std::vector<Vector>& vectors, FrameMode mode);
bool is_unimodular_frame(const ModulusRing& ring, const std::vector<Vector>& vectors);

/// U, IU and U' have vector-coded symbols; HU and MU have pair-coded symbols.
enum class FrameFamily { kU, kIU, kHU, kMU, kUprime };
std::string to_string(FrameFamily f);
bool is_pair_family(FrameFamily f);

struct FrameQuery {
  FrameFamily family = FrameFamily::kIU;
  std::size_t max_length = 0;  // 0: no limit beyond the rank of the module
  /// Members w are kept only when w followed by suffix lies in suffix_family
  /// (the poset F_v). Same symbol coding as suffix_family.
  Sequence suffix;
  std::optional<FrameFamily> suffix_family;
  /// Every vector (both entries of a pair) must be perpendicular to these.
  std::vector<Vector> perpendicular_to;
  /// Vectors must lie in R^{ambient} (the first coordinates): O(R^{n'}).
  std::optional<std::size_t> ambient;
};

/// Membership of a whole sequence of symbols in a family.
bool in_family(const SymplecticSpace& space, FrameFamily family, const Sequence& s);

SequencePoset enumerate_poset(const SymplecticSpace& space, const FrameQuery& query, const Budget& budget = {});

/// U(R^d) for any d (not necessarily even), optionally intersected with
/// O(R^{ambient}) and with the suffix condition U(R^d)_v.
SequencePoset enumerate_unimodular(const ModulusRing& ring, std::size_t dimension, std::size_t max_length,
                                   std::optional<std::size_t> ambient = std::nullopt, const Sequence& suffix = {},
                                   const Budget& budget = {});

/// Label for frame posets: vectors written as digit tuples.
std::string format_frame(const ModulusRing& ring, std::size_t dimension, bool pairs, const Sequence& s);

struct OrbitReport {
  Sequence seed;
  std::vector<Sequence> orbit;  // sorted
  std::size_t orbit_size = 0;
  std::optional<std::size_t> level_size;
  /// Whether the orbit is all of the level; empty when undecided.
  std::optional<bool> transitive;
  bool closed = false;  // invariance under every generator was re-checked
  bool complete = false;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Closure of a frame under all E_{i,j}(r). The level (IU or HU of the seed's
/// length) is enumerated for comparison when compare_level is set.
OrbitReport esp_orbit(const SymplecticSpace& space, FrameFamily family, const Sequence& seed,
                      bool compare_level = true, const Budget& budget = {});

struct HyperbolicBasis {
  std::vector<Vector> x;
  std::vector<Vector> y;
};

struct CompletionResult {
  std::optional<HyperbolicBasis> basis;
  Verdict verdict = Verdict::kInconclusive;
  std::vector<std::string> notes;
};

/// Hyperbolic basis with v_1..v_k in <x_1, y_1, ..., x_{k-1}, y_{k-1}, x_k>.
/// Requires a unimodular frame and n >= sr(R) + k (InvalidInput otherwise,
/// sr passed by the caller). Searches run over seeded shuffled orders.
CompletionResult complete_to_hyperbolic(const SymplecticSpace& space, const std::vector<Vector>& v, int stable_rank,
                                        std::uint64_t seed = 0, const Budget& budget = {});

/// Postconditions of a completion, checked independently.
bool verify_hyperbolic_completion(const SymplecticSpace& space, const std::vector<Vector>& v,
                                  const HyperbolicBasis& b);

}  // namespace framecomplex
