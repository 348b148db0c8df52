#pragma once

#include <cstdint>

#include "toptw/instance.hpp"
#include "toptw/model.hpp"

namespace toptw {

struct ExactResult {
  double optimal_prize = 0.0;
  RouteSet optimal_routes;   // m routes of original node indices
  std::uint64_t explored = 0;  // search states visited
};

/// Exact TOPTW optimum by depth-first enumeration of up to m ordered,
/// disjoint customer sequences, with time windows checked by forward
/// propagation. Routes are generated in increasing order of their first
/// customer and branches that cannot beat the incumbent on prize are cut.
/// Throws SizeError when more than customer_cap customers are reachable,
/// ConfigError when customer_cap > 9 or m < 1.
ExactResult brute_force(const Instance& instance, int m, int customer_cap = 9);

}  // namespace toptw
