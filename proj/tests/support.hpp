#pragma once

// Shared fixtures for the test suites: synthetic Solomon-like instances,
// benchmark-file lookup and an independent step-by-step tour simulator.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "toptw/instance.hpp"
#include "toptw/model.hpp"

namespace toptw::testing {

inline Node customer(int id, double x, double y, double prize, double open, double close,
                     double service) {
  return Node{id, x, y, prize, open, close, service};
}

/// Depot at (50, 50) followed by the given customers.
inline Instance make_instance(std::vector<Node> customers, std::string name = "fixture",
                              double depot_x = 50.0, double depot_y = 50.0) {
  std::vector<Node> nodes;
  nodes.push_back(Node{0, depot_x, depot_y, 0, 0, 0, 0});
  nodes.insert(nodes.end(), customers.begin(), customers.end());
  return Instance(std::move(name), std::move(nodes));
}

struct GeneratorOptions {
  int customers = 6;
  double max_coord = 100.0;
  double max_open = 200.0;
  double min_width = 15.0;
  double max_width = 120.0;
  double service = 10.0;
  int max_prize = 50;
};

/// Random instance with integer coordinates, prizes and window bounds in the
/// ranges Solomon rows use (coordinates 0..100, demands 1..50, service 10).
inline Instance random_instance(std::mt19937_64& rng, const GeneratorOptions& opt,
                                std::string name = "random") {
  std::uniform_int_distribution<int> coord(0, static_cast<int>(opt.max_coord));
  std::uniform_int_distribution<int> prize(1, opt.max_prize);
  std::uniform_int_distribution<int> open(0, static_cast<int>(opt.max_open));
  std::uniform_int_distribution<int> width(static_cast<int>(opt.min_width),
                                           static_cast<int>(opt.max_width));
  std::vector<Node> customers;
  for (int k = 1; k <= opt.customers; ++k) {
    const double a = open(rng);
    customers.push_back(customer(k, coord(rng), coord(rng), prize(rng), a, a + width(rng),
                                 opt.service));
  }
  return make_instance(std::move(customers), std::move(name));
}

/// Arrival times by direct simulation of the recursion, written independently
/// of propagate(): positions holding a depot copy restart the clock.
inline std::vector<double> simulate_arrivals(const std::vector<int>& order,
                                             const ExpandedGraph& g) {
  std::vector<double> arrival(order.size(), 0.0);
  for (std::size_t p = 1; p < order.size(); ++p) {
    const auto e = static_cast<std::size_t>(order[p]);
    if (e < g.depot_copies()) continue;
    const auto prev = static_cast<std::size_t>(order[p - 1]);
    const Instance& base = g.base();
    const Node& here = base.node(g.original(e));
    const Node& before = base.node(g.original(prev));
    const double leave = prev < g.depot_copies() ? 0.0 : arrival[p - 1] + before.service_time;
    const double travel = euclidean(before, here);
    arrival[p] = leave + travel < here.window_open ? here.window_open : leave + travel;
  }
  return arrival;
}

/// Random feasible giant tour: customers shuffled, each appended to the
/// current path when it still fits, otherwise a new path is opened.
inline GiantTour random_feasible_tour(const ExpandedGraph& g, std::mt19937_64& rng) {
  std::vector<int> customers;
  for (std::size_t e = g.depot_copies(); e < g.size(); ++e) customers.push_back(static_cast<int>(e));
  std::shuffle(customers.begin(), customers.end(), rng);
  GiantTour tour;
  if (g.size() == 0) return tour;
  int depot = 0;
  tour.order.push_back(depot++);
  double departure = 0.0;
  std::size_t prev = 0;
  for (int c : customers) {
    const auto e = static_cast<std::size_t>(c);
    double arrival = std::max(departure + g.t(prev, e), g.open(e));
    if (arrival > g.close(e) || (rng() % 4 == 0 && prev != 0)) {
      tour.order.push_back(depot++);
      prev = 0;
      departure = 0.0;
      arrival = std::max(g.t(0, e), g.open(e));
    }
    tour.order.push_back(c);
    departure = arrival + g.service(e);
    prev = e;
  }
  while (static_cast<std::size_t>(depot) < g.depot_copies()) tour.order.push_back(depot++);
  return tour;
}

/// Explicit weighted sum main * M^k + tail_1 * M^(k-1) + ... + tail_k for
/// integer prizes; with M above the total prize it orders scores like the
/// lexicographic comparison.
inline __int128 weighted_sum(const HierarchicScore& s, long long big_m, std::size_t k) {
  __int128 value = static_cast<long long>(s.main_prize());
  for (std::size_t i = 0; i < k; ++i) {
    const double tail = i < s.tail_prizes().size() ? s.tail_prizes()[i] : 0.0;
    value = value * big_m + static_cast<long long>(tail);
  }
  return value;
}

/// Benchmark file lookup: $TOPTW_DATA_DIR, then the repository data/ folder.
inline std::optional<std::filesystem::path> find_benchmark(const std::string& family,
                                                           const std::string& name) {
  std::vector<std::filesystem::path> roots;
  if (const char* env = std::getenv("TOPTW_DATA_DIR")) roots.emplace_back(env);
#ifdef TOPTW_DATA_DIR
  roots.emplace_back(TOPTW_DATA_DIR);
#endif
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
  for (const auto& root : roots) {
    for (const std::string& base : {name, upper}) {
      for (const std::string& ext : {".txt", "", ".TXT"}) {
        for (const auto& dir : {root / family, root}) {
          auto p = dir / (base + ext);
          if (std::filesystem::is_regular_file(p)) return p;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace toptw::testing
