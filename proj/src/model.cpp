#include "toptw/model.hpp"

#include <algorithm>
#include <string>

#include "toptw/errors.hpp"

namespace toptw {

ExpandedGraph::ExpandedGraph(Instance instance) : base_(std::move(instance)) {
  std::vector<std::size_t> customers;
  for (std::size_t i = 1; i < base_.size(); ++i) {
    if (base_.reachable(i)) customers.push_back(i);
  }
  copies_ = customers.size();
  original_.assign(copies_, 0);
  original_.insert(original_.end(), customers.begin(), customers.end());

  const std::size_t n = original_.size();
  prize_.resize(n);
  open_.resize(n);
  close_.resize(n);
  service_.resize(n);
  for (std::size_t e = 0; e < n; ++e) {
    const Node& node = base_.nodes()[original_[e]];
    prize_[e] = node.prize;
    open_[e] = node.window_open;
    close_[e] = node.window_close;
    service_[e] = node.service_time;
  }
  times_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      times_[a * n + b] = base_.t(original_[a], original_[b]);
    }
  }
  for (std::size_t e = copies_; e < n; ++e) reachable_prize_ += prize_[e];
}

std::optional<std::size_t> ExpandedGraph::expanded_of(std::size_t original_customer) const {
  auto first = original_.begin() + static_cast<std::ptrdiff_t>(copies_);
  auto it = std::lower_bound(first, original_.end(), original_customer);
  if (it == original_.end() || *it != original_customer) return std::nullopt;
  return static_cast<std::size_t>(it - original_.begin());
}

ExpandedGraph expand(const Instance& instance) { return ExpandedGraph(instance); }

bool is_permutation(std::span<const int> order, const ExpandedGraph& graph) {
  if (order.size() != graph.size()) return false;
  std::vector<char> seen(order.size(), 0);
  for (int e : order) {
    if (e < 0 || static_cast<std::size_t>(e) >= order.size() || seen[e]) return false;
    seen[e] = 1;
  }
  return order.empty() || graph.is_depot(static_cast<std::size_t>(order.front()));
}

TourTiming propagate(std::span<const int> order, const ExpandedGraph& graph) {
  TourTiming timing;
  timing.arrival.resize(order.size());
  timing.path_index.resize(order.size());
  int path = -1;
  double departure = 0.0;
  std::size_t prev = 0;
  for (std::size_t p = 0; p < order.size(); ++p) {
    const auto e = static_cast<std::size_t>(order[p]);
    if (graph.is_depot(e)) {
      ++path;
      timing.arrival[p] = 0.0;
      departure = 0.0;
    } else {
      if (path < 0) {
        // Tour does not start at a depot copy.
        timing.feasible = false;
        if (timing.first_violation == static_cast<std::size_t>(-1)) timing.first_violation = p;
      }
      const double arrival = std::max(departure + graph.t(prev, e), graph.open(e));
      timing.arrival[p] = arrival;
      if (arrival > graph.close(e) && timing.feasible) {
        timing.feasible = false;
        timing.first_violation = p;
      }
      departure = arrival + graph.service(e);
    }
    timing.path_index[p] = std::max(path, 0);
    prev = e;
  }
  return timing;
}

std::vector<double> path_prizes(std::span<const int> order, const ExpandedGraph& graph) {
  std::vector<double> prizes;
  for (int e : order) {
    if (graph.is_depot(static_cast<std::size_t>(e))) {
      prizes.push_back(0.0);
    } else if (!prizes.empty()) {
      prizes.back() += graph.prize(static_cast<std::size_t>(e));
    }
  }
  return prizes;
}

HierarchicScore::HierarchicScore(double main_prize, std::vector<double> tail_prizes)
    : main_(main_prize), tail_(std::move(tail_prizes)) {
  while (!tail_.empty() && tail_.back() == 0.0) tail_.pop_back();
}

std::weak_ordering operator<=>(const HierarchicScore& a, const HierarchicScore& b) {
  if (a.main_ < b.main_) return std::weak_ordering::less;
  if (a.main_ > b.main_) return std::weak_ordering::greater;
  const std::size_t n = std::max(a.tail_.size(), b.tail_.size());
  for (std::size_t k = 0; k < n; ++k) {
    const double x = k < a.tail_.size() ? a.tail_[k] : 0.0;
    const double y = k < b.tail_.size() ? b.tail_[k] : 0.0;
    if (x < y) return std::weak_ordering::less;
    if (x > y) return std::weak_ordering::greater;
  }
  return std::weak_ordering::equivalent;
}

std::weak_ordering compare(const HierarchicScore& a, const HierarchicScore& b) { return a <=> b; }

HierarchicScore score_from_paths(std::span<const double> paths, int m) {
  if (m < 1) throw ConfigError("m must be at least 1");
  const auto split = std::min(paths.size(), static_cast<std::size_t>(m));
  double main = 0.0;
  for (std::size_t k = 0; k < split; ++k) main += paths[k];
  return HierarchicScore(main, std::vector<double>(paths.begin() + static_cast<std::ptrdiff_t>(split),
                                                   paths.end()));
}

HierarchicScore score(const GiantTour& tour, const ExpandedGraph& graph, int m) {
  if (!is_permutation(tour.order, graph)) {
    throw ContractViolation("tour is not a permutation of the expanded graph starting at a depot");
  }
  if (!propagate(tour.order, graph).feasible) {
    throw ContractViolation("cannot score an infeasible tour");
  }
  const auto prizes = path_prizes(tour.order, graph);
  return score_from_paths(prizes, m);
}

std::size_t RouteSet::customer_count() const noexcept {
  std::size_t n = 0;
  for (const auto& r : routes) n += r.size();
  return n;
}

RouteSet extract_routes(const GiantTour& tour, const ExpandedGraph& graph, int m) {
  const HierarchicScore s = score(tour, graph, m);
  RouteSet set;
  set.routes.resize(static_cast<std::size_t>(m));
  int path = -1;
  for (int e : tour.order) {
    const auto node = static_cast<std::size_t>(e);
    if (graph.is_depot(node)) {
      ++path;
      if (path >= m) break;
      continue;
    }
    set.routes[static_cast<std::size_t>(path)].push_back(graph.original(node));
    set.total_prize += graph.prize(node);
  }
  if (set.total_prize != s.main_prize()) {
    throw ContractViolation("route prize does not match the tour score");
  }
  return set;
}

void normalize_depots(GiantTour& tour, const ExpandedGraph& graph) {
  int next = 0;
  for (int& e : tour.order) {
    if (graph.is_depot(static_cast<std::size_t>(e))) e = next++;
  }
}

GiantTour tour_from_routes(const ExpandedGraph& graph,
                           const std::vector<std::vector<std::size_t>>& routes) {
  const std::size_t c = graph.depot_copies();
  std::vector<char> used(graph.size(), 0);
  GiantTour tour;
  tour.order.reserve(graph.size());
  int depot = 0;
  for (const auto& route : routes) {
    if (route.empty()) continue;
    tour.order.push_back(depot++);
    for (std::size_t customer : route) {
      auto e = graph.expanded_of(customer);
      if (!e) {
        throw ContractViolation("customer index " + std::to_string(customer) +
                                " is not a reachable customer");
      }
      if (used[*e]) {
        throw ContractViolation("customer index " + std::to_string(customer) + " repeated");
      }
      used[*e] = 1;
      tour.order.push_back(static_cast<int>(*e));
    }
  }
  for (std::size_t e = c; e < graph.size(); ++e) {
    if (used[e]) continue;
    tour.order.push_back(depot++);
    tour.order.push_back(static_cast<int>(e));
  }
  while (static_cast<std::size_t>(depot) < c) tour.order.push_back(depot++);
  return tour;
}

}  // namespace toptw
