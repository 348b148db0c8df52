#include "toptw/local_search.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>

#include "toptw/errors.hpp"

namespace toptw {

void LocalSearchParams::validate() const {
  if (ls_init < 1 || ls_wnd < 1 || ls_step < 1 || ni_cap < 1) {
    throw ConfigError("local search parameters must be positive integers");
  }
}

ChainLengthState initial_chain_state(const LocalSearchParams& params) {
  params.validate();
  return ChainLengthState{params.ls_init, 0};
}

ChainLengthState update_schedule(ChainLengthState state, bool improved_this_generation,
                                 const LocalSearchParams& params) {
  if (improved_this_generation) {
    state.generations_since_improvement = 0;
    return state;
  }
  if (++state.generations_since_improvement >= params.ls_wnd) {
    state.current_max_len += params.ls_step;
    state.generations_since_improvement = 0;
  }
  return state;
}

namespace {

void check_move(const CrossMove& mv, std::size_t n) {
  if (mv.first_begin < 1) throw ContractViolation("CROSS segments may not include position 0");
  if (mv.first_begin + mv.first_len > mv.second_begin) {
    throw ContractViolation("CROSS segments overlap");
  }
  if (mv.second_begin + mv.second_len > n) throw ContractViolation("CROSS segment leaves the tour");
}

CrossMove ordered(CrossMove mv) {
  if (mv.second_begin < mv.first_begin) {
    std::swap(mv.first_begin, mv.second_begin);
    std::swap(mv.first_len, mv.second_len);
  }
  return mv;
}

// Time-window behaviour of a customer sequence with waiting allowed:
// arriving at time t at its first node is feasible iff ok && t <= latest, and
// the departure from its last node is then max(t, earliest) + duration.
struct Summary {
  double earliest = 0.0;
  double latest = 0.0;
  double duration = 0.0;
  bool ok = true;
};

Summary concat(const Summary& a, double travel, const Summary& b) {
  if (!a.ok || !b.ok) return Summary{0, 0, 0, false};
  const double slack = b.latest - a.duration - travel;
  if (a.earliest > slack) return Summary{0, 0, 0, false};
  return Summary{std::max(a.earliest, b.earliest - a.duration - travel), std::min(a.latest, slack),
                 a.duration + travel + b.duration, true};
}

// Path prizes of a candidate tour as a short list of runs: either a single
// new value, or a range [begin, end) of the current tour's path prizes.
struct Run {
  double value = 0.0;
  int begin = 0;
  int end = -1;  // end < 0 marks a single value
};

struct PathList {
  std::array<Run, 20> runs{};
  int count = 0;

  void single(double v) { runs[count++] = Run{v, 0, -1}; }
  void range(int b, int e) {
    if (e > b) runs[count++] = Run{0.0, b, e};
  }
};

class Evaluator {
 public:
  Evaluator(const ExpandedGraph& graph, int m) : g_(graph), m_(m) {}

  void rebuild(const std::vector<int>& order) {
    order_ = &order;
    const std::size_t n = order.size();
    depot_.assign(n, 0);
    path_of_.assign(n, 0);
    dep_.assign(n, 0.0);
    prize_prefix_.assign(n + 1, 0.0);
    path_start_.clear();
    for (std::size_t p = 0; p < n; ++p) {
      const auto e = static_cast<std::size_t>(order[p]);
      depot_[p] = g_.is_depot(e) ? 1 : 0;
      if (depot_[p]) path_start_.push_back(static_cast<int>(p));
      path_of_[p] = static_cast<int>(path_start_.size()) - 1;
      prize_prefix_[p + 1] = prize_prefix_[p] + g_.prize(e);
      if (!depot_[p]) {
        const auto prev = static_cast<std::size_t>(order[p - 1]);
        const double prev_dep = dep_[p - 1];
        dep_[p] = std::max(prev_dep + g_.t(prev, e), g_.open(e)) + g_.service(e);
      }
    }
    next_depot_.assign(n + 1, static_cast<int>(n));
    next_customer_.assign(n + 1, static_cast<int>(n));
    prev_depot_.assign(n, 0);
    for (std::size_t r = n; r-- > 0;) {
      next_depot_[r] = depot_[r] ? static_cast<int>(r) : next_depot_[r + 1];
      next_customer_[r] = depot_[r] ? next_customer_[r + 1] : static_cast<int>(r);
    }
    for (std::size_t p = 0; p < n; ++p) {
      prev_depot_[p] = depot_[p] ? static_cast<int>(p) : prev_depot_[p - 1];
    }
    const std::size_t paths = path_start_.size();
    path_prize_prefix_.assign(paths + 1, 0.0);
    for (std::size_t k = 0; k < paths; ++k) {
      const auto begin = static_cast<std::size_t>(path_start_[k]);
      const std::size_t end = k + 1 < paths ? static_cast<std::size_t>(path_start_[k + 1]) : n;
      path_prize_prefix_[k + 1] = path_prize_prefix_[k] + (prize_prefix_[end] - prize_prefix_[begin]);
    }
    paths_ = static_cast<int>(paths);

    // Summaries of every customer interval inside a path.
    offset_.assign(n, 0);
    table_.clear();
    for (std::size_t x = 0; x < n; ++x) {
      if (depot_[x]) continue;
      offset_[x] = table_.size();
      const auto ex = static_cast<std::size_t>(order[x]);
      Summary acc{g_.open(ex), g_.close(ex), g_.service(ex), true};
      table_.push_back(acc);
      for (std::size_t y = x + 1; y < n && !depot_[y]; ++y) {
        const auto ey = static_cast<std::size_t>(order[y]);
        acc = concat(acc, g_.t(static_cast<std::size_t>(order[y - 1]), ey),
                     Summary{g_.open(ey), g_.close(ey), g_.service(ey), true});
        table_.push_back(acc);
      }
    }
  }

  PathList current() const {
    PathList list;
    list.range(0, paths_);
    return list;
  }

  /// True when the move only permutes depot copies among themselves.
  bool is_noop(const CrossMove& mv) const {
    const std::size_t i = mv.first_begin;
    const std::size_t j = mv.second_begin;
    const std::size_t end = j + mv.second_len;
    if (static_cast<std::size_t>(next_customer_[i]) >= end) return true;
    if (mv.first_len != mv.second_len) return false;
    const bool first_depots =
        static_cast<std::size_t>(next_customer_[i]) >= i + mv.first_len;
    const bool second_depots = static_cast<std::size_t>(next_customer_[j]) >= end;
    return first_depots && second_depots;
  }

  bool evaluate(const CrossMove& mv, PathList& out) const {
    const std::size_t i = mv.first_begin;
    const std::size_t j = mv.second_begin;
    const std::size_t n = order_->size();
    out.count = 0;

    // Unchanged prefix [0, i): complete paths, then the open one.
    const int k = path_of_[i - 1];
    out.range(0, k);
    State st;
    st.open = true;
    st.node = static_cast<std::size_t>((*order_)[i - 1]);
    st.departure = dep_[i - 1];
    st.prize = prize_prefix_[i] - prize_prefix_[static_cast<std::size_t>(path_start_[k])];

    if (!append(st, j, j + mv.second_len, out)) return false;
    if (!append(st, i + mv.first_len, j, out)) return false;
    if (!append(st, i, i + mv.first_len, out)) return false;
    if (!append(st, j + mv.second_len, n, out)) return false;
    out.single(st.prize);
    return true;
  }

  /// Three-way comparison of two candidate path lists under the hierarchic order.
  int compare(const PathList& a, const PathList& b) const {
    const double main_a = main_prize(a);
    const double main_b = main_prize(b);
    if (main_a != main_b) return main_a < main_b ? -1 : 1;
    Cursor ca(a, *this);
    Cursor cb(b, *this);
    ca.skip(m_);
    cb.skip(m_);
    while (!ca.done() || !cb.done()) {
      const double x = ca.done() ? 0.0 : ca.value();
      const double y = cb.done() ? 0.0 : cb.value();
      if (x != y) return x < y ? -1 : 1;
      if (!ca.done()) ca.advance();
      if (!cb.done()) cb.advance();
    }
    return 0;
  }

  HierarchicScore to_score(const PathList& list) const {
    std::vector<double> prizes;
    for (int r = 0; r < list.count; ++r) {
      const Run& run = list.runs[r];
      if (run.end < 0) {
        prizes.push_back(run.value);
      } else {
        for (int q = run.begin; q < run.end; ++q) prizes.push_back(path_prize(q));
      }
    }
    return score_from_paths(prizes, m_);
  }

 private:
  struct State {
    bool open = false;
    std::size_t node = 0;
    double departure = 0.0;
    double prize = 0.0;
  };

  class Cursor {
   public:
    Cursor(const PathList& list, const Evaluator& ev) : list_(list), ev_(ev) { settle(); }
    bool done() const { return run_ >= list_.count; }
    double value() const {
      const Run& r = list_.runs[run_];
      return r.end < 0 ? r.value : ev_.path_prize(r.begin + offset_);
    }
    void advance() {
      ++offset_;
      settle();
    }
    void skip(int count) {
      while (count > 0 && !done()) {
        const Run& r = list_.runs[run_];
        const int left = (r.end < 0 ? 1 : r.end - r.begin) - offset_;
        const int take = std::min(left, count);
        offset_ += take;
        count -= take;
        settle();
      }
    }

   private:
    void settle() {
      while (run_ < list_.count) {
        const Run& r = list_.runs[run_];
        const int len = r.end < 0 ? 1 : r.end - r.begin;
        if (offset_ < len) return;
        ++run_;
        offset_ = 0;
      }
    }
    const PathList& list_;
    const Evaluator& ev_;
    int run_ = 0;
    int offset_ = 0;
  };

  double path_prize(int q) const {
    return path_prize_prefix_[static_cast<std::size_t>(q) + 1] -
           path_prize_prefix_[static_cast<std::size_t>(q)];
  }

  double main_prize(const PathList& list) const {
    double sum = 0.0;
    int left = m_;
    for (int r = 0; r < list.count && left > 0; ++r) {
      const Run& run = list.runs[r];
      if (run.end < 0) {
        sum += run.value;
        --left;
      } else {
        const int take = std::min(left, run.end - run.begin);
        sum += path_prize_prefix_[static_cast<std::size_t>(run.begin + take)] -
               path_prize_prefix_[static_cast<std::size_t>(run.begin)];
        left -= take;
      }
    }
    return sum;
  }

  // Chains the customer interval [x, y) (no depot inside) onto the open path.
  bool chain(State& st, std::size_t x, std::size_t y) const {
    const Summary& s = table_[offset_[x] + (y - 1 - x)];
    const auto first = static_cast<std::size_t>((*order_)[x]);
    const double arrival = st.departure + g_.t(st.node, first);
    if (!s.ok || arrival > s.latest) return false;
    st.departure = std::max(arrival, s.earliest) + s.duration;
    st.node = static_cast<std::size_t>((*order_)[y - 1]);
    st.prize += prize_prefix_[y] - prize_prefix_[x];
    return true;
  }

  bool append(State& st, std::size_t x, std::size_t y, PathList& out) const {
    if (x >= y) return true;
    const auto first_depot = static_cast<std::size_t>(next_depot_[x]);
    if (first_depot >= y) return chain(st, x, y);

    if (first_depot > x && !chain(st, x, first_depot)) return false;
    if (st.open) out.single(st.prize);
    const auto last_depot = static_cast<std::size_t>(prev_depot_[y - 1]);
    out.range(path_of_[first_depot], path_of_[last_depot]);
    // The path opened by the last depot copy keeps its original timing.
    st.open = true;
    st.node = static_cast<std::size_t>((*order_)[y - 1]);
    st.departure = dep_[y - 1];
    st.prize = prize_prefix_[y] - prize_prefix_[last_depot + 1];
    return true;
  }

  const ExpandedGraph& g_;
  int m_;
  const std::vector<int>* order_ = nullptr;
  std::vector<char> depot_;
  std::vector<int> path_of_, path_start_, next_depot_, next_customer_, prev_depot_;
  std::vector<double> dep_, prize_prefix_, path_prize_prefix_;
  std::vector<std::size_t> offset_;
  std::vector<Summary> table_;
  int paths_ = 0;
};

// Calls visit(move) for every non-identity, non-no-op move anchored at the
// given positions; stops early when visit returns true.
template <typename Visit>
bool for_each_move(const Evaluator& ev, std::size_t n, std::size_t max_len,
                   const std::vector<std::size_t>& anchors, Visit&& visit) {
  for (std::size_t i : anchors) {
    for (std::size_t l1 = 0; l1 <= max_len && i + l1 <= n; ++l1) {
      for (std::size_t l2 = 0; l2 <= max_len; ++l2) {
        if (l1 == 0 && l2 == 0) continue;
        for (std::size_t j = i + l1; j + l2 <= n; ++j) {
          if (l2 == 0 && j == i + l1) continue;  // relocating a segment onto itself
          if (l1 == 0 && j == i) continue;
          const CrossMove mv{i, l1, j, l2};
          if (ev.is_noop(mv)) continue;
          if (visit(mv)) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

GiantTour apply_order(const GiantTour& tour, const CrossMove& move) {
  const CrossMove mv = ordered(move);
  const auto& o = tour.order;
  check_move(mv, o.size());
  const auto at = [&](std::size_t p) { return o.begin() + static_cast<std::ptrdiff_t>(p); };
  GiantTour out;
  out.order.reserve(o.size());
  out.order.insert(out.order.end(), o.begin(), at(mv.first_begin));
  out.order.insert(out.order.end(), at(mv.second_begin), at(mv.second_begin + mv.second_len));
  out.order.insert(out.order.end(), at(mv.first_begin + mv.first_len), at(mv.second_begin));
  out.order.insert(out.order.end(), at(mv.first_begin), at(mv.first_begin + mv.first_len));
  out.order.insert(out.order.end(), at(mv.second_begin + mv.second_len), o.end());
  return out;
}

MoveOutcome apply_move(const GiantTour& tour, const CrossMove& move, const ExpandedGraph& graph,
                       int m) {
  MoveOutcome outcome;
  outcome.tour = apply_order(tour, move);
  outcome.feasible = propagate(outcome.tour.order, graph).feasible;
  if (outcome.feasible) {
    outcome.score = score_from_paths(path_prizes(outcome.tour.order, graph), m);
  }
  return outcome;
}

std::vector<ScoredMove> scan_neighborhood(const GiantTour& tour, const ExpandedGraph& graph,
                                          int max_len, int m) {
  if (max_len < 1) throw ConfigError("max_len must be positive");
  if (!is_permutation(tour.order, graph)) throw ContractViolation("tour is not a permutation");
  std::vector<ScoredMove> result;
  const std::size_t n = tour.order.size();
  if (n < 2) return result;
  Evaluator ev(graph, m);
  ev.rebuild(tour.order);
  std::vector<std::size_t> anchors(n - 1);
  std::iota(anchors.begin(), anchors.end(), std::size_t{1});
  PathList list;
  for_each_move(ev, n, static_cast<std::size_t>(max_len), anchors, [&](const CrossMove& mv) {
    ScoredMove sm;
    sm.move = mv;
    sm.feasible = ev.evaluate(mv, list);
    if (sm.feasible) sm.score = ev.to_score(list);
    result.push_back(std::move(sm));
    return false;
  });
  return result;
}

GiantTour descend(GiantTour tour, const ExpandedGraph& graph, const LocalSearchParams& params,
                  const ChainLengthState& state, int m, Rng& rng) {
  params.validate();
  if (m < 1) throw ConfigError("m must be at least 1");
  HierarchicScore current_score = score(tour, graph, m);  // checks feasibility
  const std::size_t n = tour.order.size();
  if (n < 3) return tour;
  const auto max_len =
      std::min(static_cast<std::size_t>(std::max(state.current_max_len, 1)), n - 1);

  Evaluator ev(graph, m);
  GiantTour current = std::move(tour);
  GiantTour best = current;
  HierarchicScore best_score = current_score;
  int non_improving = 0;

  std::vector<std::size_t> anchors(n - 1);
  std::iota(anchors.begin(), anchors.end(), std::size_t{1});

  struct Fallback {
    MoveOutcome outcome;
    PathList list;
  };

  while (true) {
    ev.rebuild(current.order);
    const PathList current_list = ev.current();
    std::shuffle(anchors.begin(), anchors.end(), rng);

    std::optional<Fallback> fallback;
    std::optional<MoveOutcome> improvement;
    PathList list;
    for_each_move(ev, n, max_len, anchors, [&](const CrossMove& mv) {
      if (!ev.evaluate(mv, list)) return false;
      if (ev.compare(list, current_list) > 0) {
        MoveOutcome out = apply_move(current, mv, graph, m);
        if (out.feasible && out.score > current_score) {
          improvement = std::move(out);
          return true;
        }
        return false;
      }
      if (!fallback || ev.compare(list, fallback->list) > 0) {
        MoveOutcome out = apply_move(current, mv, graph, m);
        if (out.feasible && out.score <= current_score) fallback = Fallback{std::move(out), list};
      }
      return false;
    });

    if (improvement) {
      current = std::move(improvement->tour);
      current_score = improvement->score;
      if (current_score > best_score) {
        best = current;
        best_score = current_score;
        non_improving = 0;
      }
      continue;
    }
    if (!fallback || non_improving >= params.ni_cap) break;
    current = std::move(fallback->outcome.tour);
    current_score = fallback->outcome.score;
    ++non_improving;
  }
  return best;
}

}  // namespace toptw
