#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "toptw/model.hpp"

namespace toptw {

using Rng = std::mt19937_64;

struct LocalSearchParams {
  int ls_init = 3;  // initial maximum sub-chain length
  int ls_wnd = 3;   // generations without improvement before lengthening
  int ls_step = 2;  // lengthening increment
  int ni_cap = 5;   // consecutive non-improving acceptances before stopping

  void validate() const;
};

/// Cross-generation schedule for the maximum sub-chain length.
struct ChainLengthState {
  int current_max_len = 3;
  int generations_since_improvement = 0;

  friend bool operator==(const ChainLengthState&, const ChainLengthState&) = default;
};

ChainLengthState initial_chain_state(const LocalSearchParams& params);

ChainLengthState update_schedule(ChainLengthState state, bool improved_this_generation,
                                 const LocalSearchParams& params);

/// Exchange of the tour segments [first_begin, first_begin + first_len) and
/// [second_begin, second_begin + second_len). Segments keep their internal
/// order. An empty segment turns the move into a relocation of the other
/// segment to that position.
struct CrossMove {
  std::size_t first_begin = 0;
  std::size_t first_len = 0;
  std::size_t second_begin = 0;
  std::size_t second_len = 0;

  friend bool operator==(const CrossMove&, const CrossMove&) = default;
};

struct MoveOutcome {
  GiantTour tour;
  bool feasible = false;
  HierarchicScore score;  // meaningful only when feasible
};

/// Reorders the tour and re-propagates it from scratch. Position 0 (the
/// opening depot copy) is fixed. Throws ContractViolation when the ranges
/// overlap, leave the tour, or touch position 0.
MoveOutcome apply_move(const GiantTour& tour, const CrossMove& move, const ExpandedGraph& graph,
                       int m);

/// The reordering alone, without evaluation.
GiantTour apply_order(const GiantTour& tour, const CrossMove& move);

/// First-improvement CROSS descent with best-non-improving escapes.
///
/// Each pass visits anchor positions in a fresh random order; for each
/// anchor it tries every length pair (l1, l2) up to state.current_max_len
/// against every later non-overlapping second segment and takes the first
/// strictly better feasible tour under the hierarchic score. A pass without
/// improvement accepts the best feasible non-improving move instead (first
/// found wins ties). The search stops once ni_cap such acceptances have been
/// made without beating the best tour seen, and returns that best tour.
GiantTour descend(GiantTour tour, const ExpandedGraph& graph, const LocalSearchParams& params,
                  const ChainLengthState& state, int m, Rng& rng);

/// Every move with segment lengths up to max_len that the descent scans,
/// in a fixed order (anchors ascending), with the feasible ones scored by the
/// incremental evaluator. Identity moves are excluded.
struct ScoredMove {
  CrossMove move;
  bool feasible = false;
  HierarchicScore score;
};
std::vector<ScoredMove> scan_neighborhood(const GiantTour& tour, const ExpandedGraph& graph,
                                          int max_len, int m);

}  // namespace toptw
