#include "toptw/oracle.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "toptw/errors.hpp"

namespace toptw {

namespace {

class Enumerator {
 public:
  Enumerator(const Instance& instance, int m, std::vector<std::size_t> customers)
      : inst_(instance), m_(m), customers_(std::move(customers)), used_(customers_.size(), 0) {
    for (std::size_t c : customers_) remaining_ += inst_.node(c).prize;
  }

  ExactResult run() {
    routes_.reserve(static_cast<std::size_t>(m_) + 1);
    routes_.assign(1, {});
    search(0, 0.0, 0.0, -1);
    ExactResult result;
    result.optimal_prize = best_prize_;
    result.optimal_routes.routes = best_routes_;
    result.optimal_routes.routes.resize(static_cast<std::size_t>(m_));
    result.optimal_routes.total_prize = best_prize_;
    result.explored = explored_;
    return result;
  }

 private:
  // current: node index the open route stands at (0 = depot); departure: time
  // it leaves that node; first: position in customers_ of the first customer
  // of the previous route (routes are generated in increasing first customer).
  void search(std::size_t current, double departure, double prize, int first) {
    ++explored_;
    if (prize > best_prize_) {
      best_prize_ = prize;
      best_routes_ = routes_;
    }
    if (prize + remaining_ <= best_prize_) return;

    auto& route = routes_.back();
    for (std::size_t k = 0; k < customers_.size(); ++k) {
      if (used_[k]) continue;
      if (route.empty() && static_cast<int>(k) <= first) continue;
      const std::size_t j = customers_[k];
      const Node& node = inst_.node(j);
      const double arrival = std::max(departure + inst_.t(current, j), node.window_open);
      if (arrival > node.window_close) continue;
      used_[k] = 1;
      remaining_ -= node.prize;
      route.push_back(j);
      search(j, arrival + node.service_time, prize + node.prize, first);
      route.pop_back();
      remaining_ += node.prize;
      used_[k] = 0;
    }

    if (!route.empty() && static_cast<int>(routes_.size()) < m_) {
      const int this_first = position_of(route.front());
      routes_.push_back({});
      search(0, 0.0, prize, this_first);
      routes_.pop_back();
    }
  }

  int position_of(std::size_t node) const {
    return static_cast<int>(std::find(customers_.begin(), customers_.end(), node) -
                            customers_.begin());
  }

  const Instance& inst_;
  int m_;
  std::vector<std::size_t> customers_;
  std::vector<char> used_;
  std::vector<std::vector<std::size_t>> routes_;
  std::vector<std::vector<std::size_t>> best_routes_;
  double remaining_ = 0.0;
  double best_prize_ = 0.0;
  std::uint64_t explored_ = 0;
};

}  // namespace

ExactResult brute_force(const Instance& instance, int m, int customer_cap) {
  if (m < 1) throw ConfigError("m must be at least 1");
  if (customer_cap < 0 || customer_cap > 9) throw ConfigError("customer cap must lie in 0..9");
  std::vector<std::size_t> customers;
  for (std::size_t i = 1; i < instance.size(); ++i) {
    if (instance.reachable(i)) customers.push_back(i);
  }
  if (customers.size() > static_cast<std::size_t>(customer_cap)) {
    throw SizeError(std::to_string(customers.size()) + " reachable customers exceed the cap of " +
                    std::to_string(customer_cap));
  }
  return Enumerator(instance, m, std::move(customers)).run();
}

}  // namespace toptw
