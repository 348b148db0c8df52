#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace toptw {

/// A customer or the depot. Times are in instance distance units.
struct Node {
  int id = 0;  // identifier as written in the source file
  double x = 0.0;
  double y = 0.0;
  double prize = 0.0;
  double window_open = 0.0;
  double window_close = 0.0;
  double service_time = 0.0;

  friend bool operator==(const Node&, const Node&) = default;
};

enum class InstanceFormat { SolomonDerived, CordeauDerived };

InstanceFormat parse_format(std::string_view name);
std::string_view format_name(InstanceFormat format);

/// Immutable problem data. Index 0 is the unified depot, customers are 1..n.
///
/// The constructor normalizes the depot to prize 0, service 0 and window
/// [0, horizon], where horizon = max_i (b_i + s_i + t_{i,0}) over customers.
/// The full travel-time matrix is precomputed; travel times are plain
/// double-precision Euclidean distances.
class Instance {
 public:
  Instance(std::string name, std::vector<Node> nodes);

  const std::string& name() const noexcept { return name_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(std::size_t i) const;
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t customer_count() const noexcept { return nodes_.size() - 1; }
  double horizon() const noexcept { return horizon_; }

  /// Travel time between node indices (not file ids). Throws BoundsError.
  double travel_time(std::size_t i, std::size_t j) const;
  /// Unchecked variant for inner loops.
  double t(std::size_t i, std::size_t j) const noexcept { return times_[i * nodes_.size() + j]; }

  /// False for customers whose window closes before they can be reached
  /// from the depot. Such customers are never routed.
  bool reachable(std::size_t i) const noexcept { return reachable_[i] != 0; }
  std::size_t reachable_count() const noexcept;
  double total_prize() const noexcept;

  /// Index of the node carrying file id `id`, if any.
  std::optional<std::size_t> index_of_id(int id) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.name_ == b.name_ && a.nodes_ == b.nodes_ && a.horizon_ == b.horizon_;
  }

 private:
  std::string name_;
  std::vector<Node> nodes_;
  double horizon_ = 0.0;
  std::vector<double> times_;
  std::vector<char> reachable_;
};

double euclidean(const Node& a, const Node& b) noexcept;

/// Solomon VRPTW text. The depot is customer 0 of the file; with
/// `node_limit = k` only the first k customers after it are kept.
/// Demand is read as prize.
Instance parse_solomon(std::string_view text, std::optional<int> node_limit = std::nullopt);

/// Cordeau MDPVRP text (pr01-pr20 layout). Frequency and visit-combination
/// fields are read and ignored; all customers are taken as active on one day.
/// Demand is read as prize.
Instance parse_cordeau(std::string_view text, std::string name);

/// Reads a file and dispatches on `format`. The Cordeau name is the file stem.
Instance load_instance(const std::filesystem::path& path, InstanceFormat format,
                       std::optional<int> node_limit = std::nullopt);

/// Canonical dump in Solomon layout with round-trip-exact number formatting.
/// parse_solomon(write_solomon(x)) == x.
std::string write_solomon(const Instance& instance);

}  // namespace toptw
