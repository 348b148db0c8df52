#include "toptw/acs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "toptw/errors.hpp"

namespace toptw {

namespace {

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void AcsParams::validate() const {
  if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("rho must lie in (0, 1)");
  if (!(psi > 0.0 && psi < 1.0)) throw ConfigError("psi must lie in (0, 1)");
  if (n_ants < 1) throw ConfigError("the colony needs at least one ant");
  if (!(nhat >= 0.0)) throw ConfigError("nhat must be non-negative");
  if (m < 1) throw ConfigError("m must be at least 1");
  if (!(time_limit > 0.0)) throw ConfigError("time limit must be positive");
  if (max_generations && *max_generations < 0) throw ConfigError("max generations must be >= 0");
  ls.validate();
}

PheromoneMatrix::PheromoneMatrix(std::size_t size, double level)
    : size_(size), tau0_(level), tau_(size * size, level) {}

void PheromoneMatrix::reset(double level) {
  tau0_ = level;
  std::fill(tau_.begin(), tau_.end(), level);
}

void PheromoneMatrix::local_update(std::size_t i, std::size_t j, double psi) noexcept {
  double& tau = tau_[i * size_ + j];
  tau += psi * (tau0_ - tau);
}

double desirability(const ExpandedGraph& graph, std::size_t i, std::size_t j, double arrival_i) {
  const double ready = arrival_i + graph.service(i);
  const double travel = graph.t(i, j);
  const double reach = std::max(travel, graph.open(j) - ready);
  const double spare = graph.close(j) - ready - travel;
  return graph.prize(j) / (reach * spare + 1.0);
}

double exploitation_probability(const ExpandedGraph& graph, double nhat) {
  if (graph.size() == 0) return 1.0;
  return std::clamp(1.0 - nhat / static_cast<double>(graph.size()), 0.0, 1.0);
}

std::vector<std::size_t> candidates(const ExpandedGraph& graph, std::size_t current,
                                    double arrival_current, const std::vector<char>& visited) {
  std::vector<std::size_t> out;
  const double ready = arrival_current + graph.service(current);
  for (std::size_t j = graph.depot_copies(); j < graph.size(); ++j) {
    if (visited[j]) continue;
    if (std::max(ready + graph.t(current, j), graph.open(j)) <= graph.close(j)) out.push_back(j);
  }
  return out;
}

std::vector<double> transition_probabilities(const ExpandedGraph& graph,
                                             const PheromoneMatrix& pheromone,
                                             std::size_t current, double arrival_current,
                                             const std::vector<std::size_t>& cands) {
  std::vector<double> p(cands.size());
  double total = 0.0;
  for (std::size_t k = 0; k < cands.size(); ++k) {
    p[k] = pheromone(current, cands[k]) * desirability(graph, current, cands[k], arrival_current);
    total += p[k];
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    std::fill(p.begin(), p.end(), cands.empty() ? 0.0 : 1.0 / static_cast<double>(cands.size()));
    return p;
  }
  for (double& x : p) x /= total;
  return p;
}

GiantTour construct(const ExpandedGraph& graph, PheromoneMatrix& pheromone,
                    const AcsParams& params, Rng& rng, bool local_updates,
                    const StepObserver& observer) {
  GiantTour tour;
  const std::size_t n = graph.size();
  if (n == 0) return tour;
  const double q0 = exploitation_probability(graph, params.nhat);

  std::vector<char> visited(n, 0);
  std::vector<std::size_t> cands;
  std::vector<double> weight;
  tour.order.reserve(n);
  tour.order.push_back(0);
  visited[0] = 1;
  std::size_t current = 0;
  std::size_t next_depot = 1;
  std::size_t customers_left = n - graph.depot_copies();
  double arrival = 0.0;

  while (tour.order.size() < n) {
    cands.clear();
    if (customers_left > 0) {
      const double ready = arrival + graph.service(current);
      for (std::size_t j = graph.depot_copies(); j < n; ++j) {
        if (!visited[j] && std::max(ready + graph.t(current, j), graph.open(j)) <= graph.close(j)) {
          cands.push_back(j);
        }
      }
    }

    std::size_t chosen;
    const bool forced = cands.empty();
    if (forced) {
      chosen = next_depot++;
    } else {
      weight.resize(cands.size());
      double total = 0.0;
      std::size_t best = 0;
      for (std::size_t k = 0; k < cands.size(); ++k) {
        weight[k] = pheromone(current, cands[k]) * desirability(graph, current, cands[k], arrival);
        total += weight[k];
        if (weight[k] > weight[best]) best = k;
      }
      const double u = uniform01(rng);
      if (u < q0 || !(total > 0.0)) {
        chosen = cands[best];
      } else {
        const double target = uniform01(rng) * total;
        double acc = 0.0;
        std::size_t pick = cands.size() - 1;
        for (std::size_t k = 0; k < cands.size(); ++k) {
          acc += weight[k];
          if (target < acc) {
            pick = k;
            break;
          }
        }
        chosen = cands[pick];
      }
    }

    if (observer) {
      observer(ConstructionStep{current, arrival, cands, chosen, forced, &visited});
    }
    if (local_updates) pheromone.local_update(current, chosen, params.psi);

    if (graph.is_depot(chosen)) {
      arrival = 0.0;
    } else {
      arrival = std::max(arrival + graph.service(current) + graph.t(current, chosen),
                         graph.open(chosen));
      --customers_left;
    }
    visited[chosen] = 1;
    tour.order.push_back(static_cast<int>(chosen));
    current = chosen;
  }
  return tour;
}

PheromoneInit init_pheromone(const ExpandedGraph& graph, const AcsParams& params, Rng& rng) {
  PheromoneInit init;
  init.pheromone = PheromoneMatrix(graph.size(), 1.0);
  bool have_best = false;
  for (int ant = 0; ant < params.n_ants; ++ant) {
    GiantTour tour = construct(graph, init.pheromone, params, rng, /*local_updates=*/false);
    const HierarchicScore s = score(tour, graph, params.m);
    init.profit_first = std::max(init.profit_first, s.main_prize());
    if (!have_best || s > init.best_score) {
      init.best_tour = std::move(tour);
      init.best_score = s;
      have_best = true;
    }
  }
  const double n = static_cast<double>(std::max<std::size_t>(graph.size(), 1));
  init.pheromone.reset(init.profit_first > 0.0 ? 1.0 / (init.profit_first * n) : 1.0 / n);
  return init;
}

void global_update(PheromoneMatrix& pheromone, const BestRecord& best, const AcsParams& params) {
  const auto& order = best.tour.order;
  for (std::size_t p = 1; p < order.size(); ++p) {
    double& tau = pheromone(static_cast<std::size_t>(order[p - 1]), static_cast<std::size_t>(order[p]));
    tau += params.rho * (best.main_prize_best - tau);
  }
}

SolveResult solve(const Instance& instance, const AcsParams& params,
                  const GenerationObserver& observer) {
  params.validate();
  const auto start = Clock::now();
  const ExpandedGraph graph(instance);
  Rng rng(params.seed);

  SolveResult result;
  result.report.instance = instance.name();
  result.report.m = params.m;
  result.report.seed = params.seed;
  BestRecord& best = result.best;

  if (graph.size() > 0) {
    PheromoneInit init = init_pheromone(graph, params, rng);
    PheromoneMatrix pheromone = std::move(init.pheromone);
    best.tour = std::move(init.best_tour);
    best.score = init.best_score;
    best.main_prize_best = best.score.main_prize();
    best.found_at = seconds_since(start);
    best.generation = 0;

    ChainLengthState chain = initial_chain_state(params.ls);
    const auto should_stop = [&](long generation) {
      if (best.main_prize_best >= graph.reachable_prize()) return true;
      if (params.target_prize && best.main_prize_best >= *params.target_prize) return true;
      if (params.max_generations && generation >= *params.max_generations) return true;
      return seconds_since(start) >= params.time_limit;
    };

    long generation = 0;
    while (!should_stop(generation)) {
      const long current_generation = generation + 1;
      bool improved = false;
      bool cut_short = false;
      for (int ant = 0; ant < params.n_ants; ++ant) {
        if (ant > 0 && (seconds_since(start) >= params.time_limit ||
                        best.main_prize_best >= graph.reachable_prize())) {
          cut_short = true;
          break;
        }
        GiantTour tour = construct(graph, pheromone, params, rng);
        tour = descend(std::move(tour), graph, params.ls, chain, params.m, rng);
        normalize_depots(tour, graph);
        HierarchicScore s = score(tour, graph, params.m);
        if (s > best.score) {
          best.tour = std::move(tour);
          best.score = std::move(s);
          best.main_prize_best = best.score.main_prize();
          best.found_at = seconds_since(start);
          best.generation = current_generation;
          improved = true;
        }
      }
      if (cut_short) break;
      generation = current_generation;
      global_update(pheromone, best, params);
      chain = update_schedule(chain, improved, params.ls);
      if (observer) observer(GenerationEvent{generation, &best, chain, seconds_since(start)});
    }
    result.report.generations = generation;
    result.routes = extract_routes(best.tour, graph, params.m);
  } else {
    result.routes.routes.resize(static_cast<std::size_t>(params.m));
  }

  result.report.prize = result.routes.total_prize;
  result.report.nodes = result.routes.customer_count();
  result.report.found_at = best.found_at;
  result.report.elapsed = seconds_since(start);
  return result;
}

}  // namespace toptw
