#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "toptw/instance.hpp"

namespace toptw {

/// The instance with its depot replicated once per reachable customer.
///
/// Expanded indices [0, c) are depot copies, [c, 2c) are the reachable
/// customers in increasing original index order. Unreachable customers are
/// left out entirely. Travel time between two depot copies is zero, every
/// other pair keeps the base travel time.
class ExpandedGraph {
 public:
  explicit ExpandedGraph(Instance instance);

  const Instance& base() const noexcept { return base_; }
  std::size_t depot_copies() const noexcept { return copies_; }
  std::size_t size() const noexcept { return original_.size(); }

  bool is_depot(std::size_t e) const noexcept { return e < copies_; }
  std::size_t original(std::size_t e) const noexcept { return original_[e]; }
  std::optional<std::size_t> expanded_of(std::size_t original_customer) const;

  double prize(std::size_t e) const noexcept { return prize_[e]; }
  double open(std::size_t e) const noexcept { return open_[e]; }
  double close(std::size_t e) const noexcept { return close_[e]; }
  double service(std::size_t e) const noexcept { return service_[e]; }
  double t(std::size_t a, std::size_t b) const noexcept { return times_[a * size() + b]; }

  /// Sum of prizes over all reachable customers; an upper bound on any objective.
  double reachable_prize() const noexcept { return reachable_prize_; }

 private:
  Instance base_;
  std::size_t copies_ = 0;
  std::vector<std::size_t> original_;
  std::vector<double> prize_, open_, close_, service_;
  std::vector<double> times_;
  double reachable_prize_ = 0.0;
};

ExpandedGraph expand(const Instance& instance);

/// A permutation of all expanded nodes that starts at a depot copy. Every
/// depot copy opens a new path whose clock starts at zero.
struct GiantTour {
  std::vector<int> order;

  friend bool operator==(const GiantTour&, const GiantTour&) = default;
};

struct TourTiming {
  std::vector<double> arrival;  // per position; 0 at depot copies
  std::vector<int> path_index;  // 0-based path number per position
  bool feasible = true;
  std::size_t first_violation = static_cast<std::size_t>(-1);  // position, if infeasible
};

bool is_permutation(std::span<const int> order, const ExpandedGraph& graph);

/// Arrival times by v_j = max(v_i + s_i + t_ij, a_j), restarting at zero on
/// every depot copy. feasible iff every customer arrives by its window close.
TourTiming propagate(std::span<const int> order, const ExpandedGraph& graph);

/// Collected prize per path, in visitation order.
std::vector<double> path_prizes(std::span<const int> order, const ExpandedGraph& graph);

/// Lexicographic realization of the hierarchic objective: the prize of the
/// first m paths, then each later path's prize in order. Trailing zero
/// tail entries are trimmed; a missing entry compares as zero.
class HierarchicScore {
 public:
  HierarchicScore() = default;
  HierarchicScore(double main_prize, std::vector<double> tail_prizes);

  double main_prize() const noexcept { return main_; }
  const std::vector<double>& tail_prizes() const noexcept { return tail_; }

  friend std::weak_ordering operator<=>(const HierarchicScore& a, const HierarchicScore& b);
  friend bool operator==(const HierarchicScore& a, const HierarchicScore& b) {
    return (a <=> b) == std::weak_ordering::equivalent;
  }

 private:
  double main_ = 0.0;
  std::vector<double> tail_;
};

std::weak_ordering compare(const HierarchicScore& a, const HierarchicScore& b);

/// Builds the score from per-path prizes. Throws ConfigError if m < 1.
HierarchicScore score_from_paths(std::span<const double> paths, int m);

/// Throws ContractViolation if the tour is infeasible or not a permutation.
HierarchicScore score(const GiantTour& tour, const ExpandedGraph& graph, int m);

/// The TOPTW solution held by the first m paths. Routes hold original node indices.
struct RouteSet {
  std::vector<std::vector<std::size_t>> routes;
  double total_prize = 0.0;

  std::size_t customer_count() const noexcept;
};

RouteSet extract_routes(const GiantTour& tour, const ExpandedGraph& graph, int m);

/// Relabels depot copies so they appear in the order 0, 1, 2, ... along the
/// tour. The solution is unchanged; pheromone on depot arcs becomes comparable
/// between tours.
void normalize_depots(GiantTour& tour, const ExpandedGraph& graph);

/// Giant tour whose leading paths are the given routes (original customer
/// indices; empty routes are dropped). Remaining customers each get a path
/// of their own. Throws ContractViolation on unknown/unreachable/repeated customers.
GiantTour tour_from_routes(const ExpandedGraph& graph,
                           const std::vector<std::vector<std::size_t>>& routes);

}  // namespace toptw
