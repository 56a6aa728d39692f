#ifndef SALEM_TREE_HPP
#define SALEM_TREE_HPP

#include <cstdint>
#include <vector>

#include "salem/dft.hpp"
#include "salem/schedule.hpp"
#include "salem/types.hpp"

namespace salem {

// One level of the nested node sets: numerators over Psi(level), plus the
// embedded progression subset (empty for dyadic variants) and the per-parent
// selection offsets that reproduce the pre-modification candidate sets.
struct LevelNodes {
  int level = 0;
  std::vector<uint64_t> numerators;   // sorted, distinct, in [0, Psi(level))
  std::vector<uint64_t> progression;  // sorted subset of numerators
  std::vector<uint32_t> xdraws;       // one per parent; empty when nothing was drawn
};

struct VerificationRecord {
  int level = 0;
  int attempts = 0;
  double supRandomPart = 0.0;
  double threshold = 0.0;
  double correction = 0.0;
  double supModifiedPart = 0.0;
};

struct CantorTree {
  BranchingSchedule schedule;
  uint64_t seed = 0;
  int attemptCap = 64;
  std::vector<LevelNodes> levels;  // index by level, 0..depth
  std::vector<VerificationRecord> verification;

  int depth() const { return (int)levels.size() - 1; }
  uint64_t grid(int level) const;  // Psi(level) as uint64, range-checked
  const LevelNodes& at(int level) const;
  uint64_t hash() const;
  std::string to_json() const;
  static CantorTree from_json(const std::string& text);
};

// Deterministic levels 1..N0 with exact cardinalities and the node set of
// level N0 strictly inside (0,1).
CantorTree seed_levels(const BranchingSchedule& s, uint64_t seed, int attempt_cap = 64);

// Appends the next level: draw selection offsets, verify the normalized
// exponential-sum supremum over the full period against the concentration
// threshold, resample on failure, then splice in the progression digits.
void extend_level(CantorTree& tree);

CantorTree build_tree(const BranchingSchedule& s, uint64_t seed, int depth,
                      int attempt_cap = 64);

// Normalized chi-sum at one integer frequency, from stored data (direct
// evaluation, no dense transform).
Complex chi_sum_direct(const CantorTree& tree, int level, int64_t k);

// Checks that the chi-sum at `samples` frequencies outside [0, Psi(N)) matches
// its value reduced into the period, to tolerance 1e-9.
bool verify_periodicity(const CantorTree& tree, int level, int samples,
                        uint64_t check_seed = 12345);

// Recomputes the dense suprema for one stored level from xdraws/numerators
// and checks them against the recorded values and inequalities.
void reverify_level(const CantorTree& tree, int level, double tol = 1e-9);

// Structural invariants: nesting, cardinalities, progression recursion,
// isolation, containment, record inequalities. With `recompute_transforms`
// also re-derives every verification record.
void check_tree_invariants(const CantorTree& tree, bool recompute_transforms = false);

}  // namespace salem

#endif
