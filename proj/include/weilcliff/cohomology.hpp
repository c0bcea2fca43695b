#pragma once

#include <optional>

#include "weilcliff/derivations.hpp"

namespace weilcliff {

struct LevelDims {
  int even = 0, odd = 0;
  int total() const { return even + odd; }
  bool operator==(const LevelDims&) const = default;
};

// Degree/filtration-truncated quotient complex W / <S+P>. The ambient space is
// either the full word window or the h-invariant subspace; the ideal is the
// truncation sum_i p_i * (ambient at level <= bound - d_i).
struct QuotientComplexWindow {
  const AlgebraContext* ctx = nullptr;
  const StandardOperators* ops = nullptr;
  int bound = 0;
  bool restricted = false;
  std::vector<Element> gens;
  std::vector<int> gen_levels;

  std::vector<Word> coord_words;  // basis_window(bound + 1)
  std::map<Word, int> coord_index;
  std::vector<Element> ambient;   // level-sorted basis of the ambient space
  std::vector<long> ambient_levels;
  Rref ideal;

  SpVec coords(const Element& x) const;
  SpVec reduced_coords(const Element& x) const { return ideal.reduce(coords(x)); }
  Element lift(const SpVec& v) const;
  long element_level(const Element& x) const;
};

// Builds the truncated quotient and certifies that the induced differential is
// well defined (d of each truncated ideal generator reduces to zero). Throws
// NonCentralGenerator when a generator fails centrality or closedness.
QuotientComplexWindow quotient_window(const AlgebraContext& ctx, const StandardOperators& ops,
                                      const std::vector<Element>& gens, int bound,
                                      bool restrict_invariant);

struct CohomologyReport {
  bool graded = true;
  int bound = 0;
  std::vector<LevelDims> dims;  // by degree (graded) or by filtration level (filtered, cumulative)
  std::vector<bool> stable;
  LevelDims z2;
  std::vector<int> scanned_bounds;
  std::vector<std::vector<LevelDims>> scanned_dims;  // per scanned bound
};

// Full homology data with class-coordinate access, for the verifier.
class CohomologyComputation {
 public:
  QuotientComplexWindow qcw;
  struct Level {
    std::vector<Element> reps;
    std::vector<SpVec> rep_coords;
    std::vector<SpVec> boundary_rows;
    LevelDims dims;
  };
  std::vector<Level> levels;  // graded: exact degree; filtered: cumulative level
  int max_level = -1;

  // Coordinates of the class of cocycle z at the given level in the chosen
  // representative basis; nullopt when z is not a cocycle of that level span.
  std::optional<std::vector<Rat>> class_coords(const Element& z, int level) const;
  CohomologyReport report() const;
};

CohomologyComputation cohomology_window(QuotientComplexWindow qcw);

// Runs cohomology_window at each bound (increasing); flags a level stable when
// the top two bounds agree there and the level is at most
// max(bounds) - max generator level - 1. Returns the top-bound computation.
CohomologyComputation stability_scan(const AlgebraContext& ctx, const StandardOperators& ops,
                                     const std::vector<Element>& gens,
                                     const std::vector<int>& bounds, bool restrict_invariant,
                                     CohomologyReport* merged_report);

}  // namespace weilcliff
