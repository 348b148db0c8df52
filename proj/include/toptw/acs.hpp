#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "toptw/local_search.hpp"
#include "toptw/model.hpp"

namespace toptw {

struct AcsParams {
  double rho = 0.1;  // global update rate
  double psi = 0.1;  // local update rate
  int n_ants = 10;
  double nhat = 15.0;  // expected probabilistic choices per construction
  int m = 1;           // fleet size
  double time_limit = 60.0;
  std::uint64_t seed = 1;
  LocalSearchParams ls;
  /// Deterministic stop after this many generations (wall clock still applies).
  std::optional<long> max_generations;
  /// Stop as soon as the best first-m prize reaches this value.
  std::optional<double> target_prize;

  void validate() const;
};

/// Dense trail matrix over expanded-node pairs.
class PheromoneMatrix {
 public:
  PheromoneMatrix() = default;
  PheromoneMatrix(std::size_t size, double level);

  std::size_t size() const noexcept { return size_; }
  double tau0() const noexcept { return tau0_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return tau_[i * size_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return tau_[i * size_ + j]; }

  /// Sets every entry and tau0 to `level`.
  void reset(double level);
  /// tau_ij <- (1 - psi) tau_ij + psi tau0
  void local_update(std::size_t i, std::size_t j, double psi) noexcept;

 private:
  std::size_t size_ = 0;
  double tau0_ = 0.0;
  std::vector<double> tau_;
};

/// eta_ij = p_j / (max{t_ij, a_j - v_i - s_i} * (b_j - v_i - s_i - t_ij) + 1)
double desirability(const ExpandedGraph& graph, std::size_t i, std::size_t j, double arrival_i);

/// Probability of exploitation, 1 - nhat/n, clamped to [0, 1].
double exploitation_probability(const ExpandedGraph& graph, double nhat);

/// Candidate set F(i): unvisited customers whose window is still open when
/// reached from `current` departing at arrival_current + s_current.
std::vector<std::size_t> candidates(const ExpandedGraph& graph, std::size_t current,
                                    double arrival_current, const std::vector<char>& visited);

/// Probabilistic-rule distribution over `cands` (tau * eta normalized).
/// Uniform when every weight is zero.
std::vector<double> transition_probabilities(const ExpandedGraph& graph,
                                             const PheromoneMatrix& pheromone,
                                             std::size_t current, double arrival_current,
                                             const std::vector<std::size_t>& cands);

/// One step of a construction, reported to an optional observer.
struct ConstructionStep {
  std::size_t current = 0;
  double arrival = 0.0;
  std::vector<std::size_t> candidates;
  std::size_t chosen = 0;
  bool forced_depot = false;
  const std::vector<char>* visited = nullptr;
};
using StepObserver = std::function<void(const ConstructionStep&)>;

/// Builds one giant tour. With probability q0 the next node is the argmax of
/// tau * eta over F(i) (lowest index on ties), otherwise it is sampled in
/// proportion to tau * eta. When F(i) is empty the next unused depot copy
/// closes the path. Every traversed arc receives the local update unless
/// `local_updates` is false.
GiantTour construct(const ExpandedGraph& graph, PheromoneMatrix& pheromone,
                    const AcsParams& params, Rng& rng, bool local_updates = true,
                    const StepObserver& observer = {});

struct PheromoneInit {
  PheromoneMatrix pheromone;
  double profit_first = 0.0;
  GiantTour best_tour;  // best of the pheromone-free generation, by hierarchic score
  HierarchicScore best_score;
};

/// One generation of n_ants constructions on uniform trails, then
/// tau0 = 1 / (profit_first * n), or 1 / n when profit_first is zero.
PheromoneInit init_pheromone(const ExpandedGraph& graph, const AcsParams& params, Rng& rng);

struct BestRecord {
  GiantTour tour;
  HierarchicScore score;
  double main_prize_best = 0.0;
  double found_at = 0.0;
  long generation = 0;
};

/// tau_ij <- (1 - rho) tau_ij + rho * Profit_Best along every arc of best.tour.
void global_update(PheromoneMatrix& pheromone, const BestRecord& best, const AcsParams& params);

struct RunReport {
  std::string instance;
  int m = 1;
  std::uint64_t seed = 0;
  double prize = 0.0;
  std::size_t nodes = 0;  // customers on the first m paths of the best tour
  double found_at = 0.0;
  double elapsed = 0.0;
  long generations = 0;
};

struct GenerationEvent {
  long generation = 0;
  const BestRecord* best = nullptr;
  ChainLengthState chain;
  double elapsed = 0.0;
};
using GenerationObserver = std::function<void(const GenerationEvent&)>;

struct SolveResult {
  BestRecord best;
  RunReport report;
  RouteSet routes;
};

/// The full colony loop: pheromone initialization, then generations of
/// n_ants x (construct -> descend), best-record update under the hierarchic
/// order, one global update per generation and the chain-length schedule.
/// Stops on the wall-clock limit, max_generations, target_prize, or when
/// every reachable customer is already served by the first m paths.
SolveResult solve(const Instance& instance, const AcsParams& params,
                  const GenerationObserver& observer = {});

}  // namespace toptw
