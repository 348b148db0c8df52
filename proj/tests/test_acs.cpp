#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "support.hpp"
#include "toptw/acs.hpp"
#include "toptw/errors.hpp"
#include "toptw/oracle.hpp"

namespace toptw {
namespace {

// Depot at (0, 0) and customer 1 at (x, 0) with the given window.
ExpandedGraph one_customer(double x, double prize, double open, double close) {
  return ExpandedGraph(
      testing::make_instance({testing::customer(1, x, 0, prize, open, close, 0)}, "one", 0, 0));
}

AcsParams quick(int m, long generations, std::uint64_t seed = 1) {
  AcsParams p;
  p.m = m;
  p.seed = seed;
  p.time_limit = 30.0;
  p.max_generations = generations;
  return p;
}

TEST(DesirabilityTest, WorkedExamples) {
  // Expanded: depot copy 0, customer 1.
  const ExpandedGraph tight = one_customer(5, 10, 0, 5);
  EXPECT_DOUBLE_EQ(desirability(tight, 0, 1, 0.0), 10.0);
  const ExpandedGraph waiting = one_customer(2, 10, 6, 10);
  EXPECT_DOUBLE_EQ(desirability(waiting, 0, 1, 0.0), 10.0 / 49.0);
}

TEST(ExploitationTest, ClampedToUnitInterval) {
  std::mt19937_64 rng(1);
  testing::GeneratorOptions opt;
  opt.customers = 25;
  opt.min_width = 300;
  opt.max_width = 400;
  const ExpandedGraph g(testing::random_instance(rng, opt));
  ASSERT_EQ(g.size(), 50u);
  EXPECT_DOUBLE_EQ(exploitation_probability(g, 15.0), 0.7);
  EXPECT_EQ(exploitation_probability(g, 0.0), 1.0);
  EXPECT_EQ(exploitation_probability(g, 80.0), 0.0);
}

TEST(PheromoneTest, LocalUpdateBrackets) {
  PheromoneMatrix tau(3, 0.25);
  tau(0, 1) = 4.0;
  tau(1, 2) = 0.01;
  tau.local_update(0, 1, 0.1);
  EXPECT_GT(tau(0, 1), 0.25);
  EXPECT_LT(tau(0, 1), 4.0);
  EXPECT_DOUBLE_EQ(tau(0, 1), 0.9 * 4.0 + 0.1 * 0.25);
  tau.local_update(1, 2, 0.1);
  EXPECT_GT(tau(1, 2), 0.01);
  EXPECT_LT(tau(1, 2), 0.25);
  tau.local_update(2, 2, 0.1);
  EXPECT_EQ(tau(2, 2), 0.25);
}

TEST(PheromoneTest, GlobalUpdateExampleAndConvergence) {
  const ExpandedGraph g = one_customer(5, 100, 0, 100);
  PheromoneMatrix tau(g.size(), 0.5);
  BestRecord best;
  best.tour = GiantTour{{0, 1}};
  best.main_prize_best = 100.0;
  AcsParams params;
  global_update(tau, best, params);
  EXPECT_NEAR(tau(0, 1), 10.45, 1e-12);
  EXPECT_EQ(tau(1, 0), 0.5);  // not on the tour
  for (int k = 1; k < 200; ++k) global_update(tau, best, params);
  EXPECT_LT(std::abs(tau(0, 1) - 100.0), 1e-6 * 100.0);
  // Closed form after k updates: P - (P - tau_0) (1 - rho)^k.
  EXPECT_NEAR(tau(0, 1), 100.0 - 99.5 * std::pow(0.9, 200), 1e-9);
}

TEST(PheromoneTest, InitialLevel) {
  // 25 reachable customers -> n = 50 expanded nodes; a single all-serving path
  // is not possible, but the formula only needs Profit_First.
  std::mt19937_64 rng(2);
  testing::GeneratorOptions opt;
  opt.customers = 25;
  opt.min_width = 300;
  opt.max_width = 400;
  const ExpandedGraph g(testing::random_instance(rng, opt));
  AcsParams params;
  Rng ant_rng(4);
  const PheromoneInit init = init_pheromone(g, params, ant_rng);
  EXPECT_GT(init.profit_first, 0.0);
  EXPECT_DOUBLE_EQ(init.pheromone.tau0(), 1.0 / (init.profit_first * 50.0));
  EXPECT_DOUBLE_EQ(init.pheromone(3, 7), init.pheromone.tau0());
  EXPECT_EQ(init.best_score.main_prize(), init.profit_first);
  EXPECT_DOUBLE_EQ(1.0 / (200.0 * 50.0), 1.0 / 10000.0);
}

TEST(PheromoneTest, EmptyInstanceFallsBack) {
  const ExpandedGraph g(testing::make_instance({}));
  Rng rng(1);
  const PheromoneInit init = init_pheromone(g, AcsParams{}, rng);
  EXPECT_EQ(init.profit_first, 0.0);
  EXPECT_EQ(init.pheromone.tau0(), 1.0);
  PheromoneMatrix none(0, 1.0);
  EXPECT_TRUE(construct(g, none, AcsParams{}, rng).order.empty());
}

TEST(PheromoneTest, ProfitFirstCoversGreedy) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const ExpandedGraph g(testing::random_instance(gen, {}));
    AcsParams params;
    params.m = 2;
    params.nhat = 0.0;
    Rng rng(trial);
    const PheromoneInit init = init_pheromone(g, params, rng);
    PheromoneMatrix uniform(g.size(), 1.0);
    Rng greedy_rng(trial + 100);
    const GiantTour greedy = construct(g, uniform, params, greedy_rng, false);
    EXPECT_GE(init.profit_first, score(greedy, g, 2).main_prize());
  }
}

TEST(TransitionTest, ProbabilitiesSumToOne) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> level(0.01, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    testing::GeneratorOptions opt;
    opt.customers = 10;
    const ExpandedGraph g(testing::random_instance(rng, opt));
    PheromoneMatrix tau(g.size(), 1.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) tau(i, j) = level(rng);
    }
    std::vector<char> visited(g.size(), 0);
    const auto cands = candidates(g, 0, 0.0, visited);
    if (cands.empty()) continue;
    const auto p = transition_probabilities(g, tau, 0, 0.0, cands);
    double sum = 0.0;
    for (double x : p) {
      EXPECT_GE(x, 0.0);
      sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(ConstructTest, CandidatesAndArgmaxMatchExhaustiveScan) {
  std::mt19937_64 gen(10);
  testing::GeneratorOptions opt;
  opt.customers = 10;
  const ExpandedGraph g(testing::random_instance(gen, opt));
  PheromoneMatrix tau(g.size(), 1.0);
  std::uniform_real_distribution<double> level(0.1, 2.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) tau(i, j) = level(gen);
  }
  for (double nhat : {0.0, 15.0}) {
    AcsParams params;
    params.nhat = nhat;
    for (int run = 0; run < 20; ++run) {
      Rng rng(run);
      std::size_t steps = 0;
      const GiantTour t = construct(g, tau, params, rng, true, [&](const ConstructionStep& step) {
        ++steps;
        const auto& visited = *step.visited;
        std::vector<std::size_t> expected;
        const double ready = step.arrival + g.service(step.current);
        for (std::size_t j = g.depot_copies(); j < g.size(); ++j) {
          if (visited[j]) continue;
          if (std::max(ready + g.t(step.current, j), g.open(j)) <= g.close(j)) expected.push_back(j);
        }
        EXPECT_EQ(step.candidates, expected);
        EXPECT_EQ(step.forced_depot, expected.empty());
        if (expected.empty()) {
          EXPECT_TRUE(g.is_depot(step.chosen));
          return;
        }
        EXPECT_TRUE(std::find(expected.begin(), expected.end(), step.chosen) != expected.end());
        if (nhat == 0.0) {
          std::size_t best = expected.front();
          double best_w = -1.0;
          for (std::size_t j : expected) {
            const double w = tau(step.current, j) * desirability(g, step.current, j, step.arrival);
            if (w > best_w) {
              best_w = w;
              best = j;
            }
          }
          EXPECT_EQ(step.chosen, best);
        }
      });
      EXPECT_EQ(steps, g.size() - 1);
      EXPECT_TRUE(is_permutation(t.order, g));
      EXPECT_TRUE(propagate(t.order, g).feasible);
    }
  }
}

TEST(ConstructTest, GreedyIsDeterministic) {
  std::mt19937_64 gen(12);
  const ExpandedGraph g(testing::random_instance(gen, {}));
  AcsParams params;
  params.nhat = 0.0;
  PheromoneMatrix a(g.size(), 1.0), b(g.size(), 1.0);
  Rng ra(1), rb(999);
  EXPECT_EQ(construct(g, a, params, ra), construct(g, b, params, rb));
}

TEST(ConstructTest, LocalUpdateTouchesEveryArc) {
  std::mt19937_64 gen(14);
  const ExpandedGraph g(testing::random_instance(gen, {}));
  PheromoneMatrix tau(g.size(), 1.0);
  tau.reset(0.01);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) tau(i, j) = 1.0;
  }
  AcsParams params;
  Rng rng(2);
  const GiantTour t = construct(g, tau, params, rng);
  std::set<std::pair<int, int>> arcs;
  for (std::size_t p = 1; p < t.order.size(); ++p) arcs.insert({t.order[p - 1], t.order[p]});
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      const bool on_tour = arcs.count({static_cast<int>(i), static_cast<int>(j)}) > 0;
      if (on_tour) {
        EXPECT_DOUBLE_EQ(tau(i, j), 0.9 + 0.1 * 0.01);
      } else {
        EXPECT_EQ(tau(i, j), 1.0);
      }
    }
  }
}

TEST(ConstructTest, SingleFeasibleCustomer) {
  const Instance inst = testing::make_instance({
      testing::customer(1, 60, 50, 25, 0, 100, 5),
      testing::customer(2, 50, 99, 40, 0, 10, 5),  // unreachable
  });
  const ExpandedGraph g(inst);
  PheromoneMatrix tau(g.size(), 1.0);
  Rng rng(1);
  const GiantTour t = construct(g, tau, AcsParams{}, rng);
  EXPECT_EQ(t.order, (std::vector<int>{0, 1}));
  for (int m = 1; m <= 3; ++m) EXPECT_EQ(score(t, g, m).main_prize(), 25.0);
}

TEST(SolveTest, RejectsBadParameters) {
  const Instance inst = testing::make_instance({testing::customer(1, 60, 50, 25, 0, 100, 5)});
  AcsParams p;
  p.time_limit = 0.0;
  EXPECT_THROW(solve(inst, p), ConfigError);
  p = AcsParams{};
  p.m = 0;
  EXPECT_THROW(solve(inst, p), ConfigError);
  p = AcsParams{};
  p.rho = 1.0;
  EXPECT_THROW(solve(inst, p), ConfigError);
  p = AcsParams{};
  p.n_ants = 0;
  EXPECT_THROW(solve(inst, p), ConfigError);
}

TEST(SolveTest, ServesEveryoneWithEnoughVehicles) {
  std::mt19937_64 gen(15);
  testing::GeneratorOptions opt;
  opt.customers = 5;
  const Instance inst = testing::random_instance(gen, opt);
  const ExpandedGraph g(inst);
  const SolveResult r = solve(inst, quick(5, 50));
  EXPECT_EQ(r.report.prize, g.reachable_prize());
  EXPECT_EQ(r.report.nodes, g.depot_copies());
}

TEST(SolveTest, EmptyInstance) {
  const SolveResult r = solve(testing::make_instance({}), quick(2, 10));
  EXPECT_EQ(r.report.prize, 0.0);
  EXPECT_EQ(r.routes.routes.size(), 2u);
}

TEST(SolveTest, MatchesOracleOnSevenCustomers) {
  std::mt19937_64 gen(16);
  int matched = 0;
  for (int trial = 0; trial < 10; ++trial) {
    testing::GeneratorOptions opt;
    opt.customers = 7;
    const Instance inst = testing::random_instance(gen, opt);
    const double exact = brute_force(inst, 2).optimal_prize;
    AcsParams p = quick(2, 200, trial + 1);
    p.target_prize = exact;
    const SolveResult r = solve(inst, p);
    EXPECT_LE(r.report.prize, exact);
    if (r.report.prize == exact) ++matched;
  }
  EXPECT_EQ(matched, 10);
}

TEST(SolveTest, DeterministicForSeed) {
  std::mt19937_64 gen(17);
  testing::GeneratorOptions opt;
  opt.customers = 15;
  const Instance inst = testing::random_instance(gen, opt);
  const SolveResult a = solve(inst, quick(2, 15, 7));
  const SolveResult b = solve(inst, quick(2, 15, 7));
  EXPECT_EQ(a.best.tour, b.best.tour);
  EXPECT_EQ(a.report.prize, b.report.prize);
  EXPECT_EQ(a.report.generations, b.report.generations);
}

TEST(SolveTest, BestIsMonotone) {
  std::mt19937_64 gen(18);
  testing::GeneratorOptions opt;
  opt.customers = 20;
  const Instance inst = testing::random_instance(gen, opt);
  std::optional<HierarchicScore> previous;
  long last_generation = 0;
  const SolveResult r = solve(inst, quick(2, 20), [&](const GenerationEvent& e) {
    if (previous) {
      EXPECT_GE(e.best->score, *previous);
    }
    previous = e.best->score;
    EXPECT_EQ(e.generation, last_generation + 1);
    last_generation = e.generation;
    EXPECT_GE(e.chain.current_max_len, 3);
  });
  EXPECT_EQ(r.report.generations, last_generation);
  EXPECT_EQ(r.report.prize, r.best.main_prize_best);
  const ExpandedGraph g(inst);
  EXPECT_TRUE(propagate(r.best.tour.order, g).feasible);
}

}  // namespace
}  // namespace toptw
