#include "toptw/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "toptw/errors.hpp"

namespace toptw {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > start) line.tokens.push_back(raw.substr(start, i - start));
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

std::optional<double> to_number(std::string_view token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

double number_at(const Line& line, std::size_t k, const char* field) {
  if (k >= line.tokens.size()) {
    throw ParseError(line.number, std::string("missing field '") + field + "'");
  }
  auto value = to_number(line.tokens[k]);
  if (!value) {
    throw ParseError(line.number, std::string("field '") + field + "' is not a number: '" +
                                      std::string(line.tokens[k]) + "'");
  }
  return *value;
}

int integer_at(const Line& line, std::size_t k, const char* field) {
  double value = number_at(line, k, field);
  if (value != std::floor(value)) {
    throw ParseError(line.number, std::string("field '") + field + "' is not an integer");
  }
  return static_cast<int>(value);
}

bool all_numeric(const Line& line) {
  return std::all_of(line.tokens.begin(), line.tokens.end(),
                     [](std::string_view t) { return to_number(t).has_value(); });
}

bool contains_word(const Line& line, std::string_view word) {
  return std::any_of(line.tokens.begin(), line.tokens.end(), [&](std::string_view t) {
    if (t.size() != word.size()) return false;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(t[i])) != word[i]) return false;
    }
    return true;
  });
}

void check_row(const Line& line, const Node& node) {
  if (node.prize < 0) throw ParseError(line.number, "negative prize");
  if (node.service_time < 0) throw ParseError(line.number, "negative service time");
  if (node.window_open > node.window_close) {
    throw ParseError(line.number, "window opens after it closes");
  }
}

}  // namespace

InstanceFormat parse_format(std::string_view name) {
  if (name == "solomon") return InstanceFormat::SolomonDerived;
  if (name == "cordeau") return InstanceFormat::CordeauDerived;
  throw ConfigError("unknown instance format '" + std::string(name) + "' (expected solomon|cordeau)");
}

std::string_view format_name(InstanceFormat format) {
  switch (format) {
    case InstanceFormat::SolomonDerived:
      return "solomon";
    case InstanceFormat::CordeauDerived:
      return "cordeau";
  }
  return "unknown";
}

double euclidean(const Node& a, const Node& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

Instance::Instance(std::string name, std::vector<Node> nodes)
    : name_(std::move(name)), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw ConfigError("instance needs at least the depot node");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.prize < 0 || n.service_time < 0 || n.window_open > n.window_close) {
      throw ConfigError("invalid customer data for node id " + std::to_string(n.id));
    }
  }

  const std::size_t n = nodes_.size();
  times_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    times_[i * n + i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean(nodes_[i], nodes_[j]);
      times_[i * n + j] = d;
      times_[j * n + i] = d;
    }
  }

  horizon_ = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    horizon_ = std::max(horizon_, nodes_[i].window_close + nodes_[i].service_time + t(i, 0));
  }

  Node& depot = nodes_[0];
  depot.prize = 0.0;
  depot.service_time = 0.0;
  depot.window_open = 0.0;
  depot.window_close = horizon_;

  reachable_.assign(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    reachable_[i] = t(0, i) <= nodes_[i].window_close ? 1 : 0;
  }
}

const Node& Instance::node(std::size_t i) const {
  if (i >= nodes_.size()) throw BoundsError("node index " + std::to_string(i) + " out of range");
  return nodes_[i];
}

double Instance::travel_time(std::size_t i, std::size_t j) const {
  if (i >= nodes_.size() || j >= nodes_.size()) {
    throw BoundsError("travel_time index out of range");
  }
  return t(i, j);
}

std::size_t Instance::reachable_count() const noexcept {
  return static_cast<std::size_t>(std::count(reachable_.begin(), reachable_.end(), 1));
}

double Instance::total_prize() const noexcept {
  double sum = 0.0;
  for (const Node& n : nodes_) sum += n.prize;
  return sum;
}

std::optional<std::size_t> Instance::index_of_id(int id) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id == id) return i;
  }
  return std::nullopt;
}

Instance parse_solomon(std::string_view text, std::optional<int> node_limit) {
  if (node_limit && *node_limit <= 0) throw ConfigError("node limit must be positive");
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty instance file");

  std::string name(lines[0].tokens[0]);
  std::size_t k = 1;

  // VEHICLE block: keyword, column header, then NUMBER CAPACITY values.
  while (k < lines.size() && !contains_word(lines[k], "VEHICLE")) ++k;
  if (k == lines.size()) throw ParseError(lines.back().number, "missing VEHICLE section");
  ++k;
  if (k < lines.size() && !all_numeric(lines[k])) ++k;
  if (k >= lines.size() || lines[k].tokens.size() != 2 || !all_numeric(lines[k])) {
    throw ParseError(k < lines.size() ? lines[k].number : lines.back().number,
                     "expected vehicle NUMBER and CAPACITY");
  }
  ++k;

  while (k < lines.size() && !contains_word(lines[k], "CUSTOMER")) ++k;
  if (k == lines.size()) throw ParseError(lines.back().number, "missing CUSTOMER section");
  ++k;
  if (k < lines.size() && !all_numeric(lines[k])) ++k;  // column header

  std::vector<Node> nodes;
  for (; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.tokens.size() != 7) {
      throw ParseError(line.number, "customer row needs 7 fields, found " +
                                        std::to_string(line.tokens.size()));
    }
    Node node;
    node.id = integer_at(line, 0, "CUST NO.");
    node.x = number_at(line, 1, "XCOORD.");
    node.y = number_at(line, 2, "YCOORD.");
    node.prize = number_at(line, 3, "DEMAND");
    node.window_open = number_at(line, 4, "READY TIME");
    node.window_close = number_at(line, 5, "DUE DATE");
    node.service_time = number_at(line, 6, "SERVICE TIME");
    if (!nodes.empty()) check_row(line, node);
    nodes.push_back(node);
  }
  if (nodes.empty()) throw ParseError(lines.back().number, "no depot row");

  if (node_limit) {
    const auto available = nodes.size() - 1;
    if (static_cast<std::size_t>(*node_limit) > available) {
      throw BoundsError("node limit " + std::to_string(*node_limit) + " exceeds the " +
                        std::to_string(available) + " customers in " + name);
    }
    nodes.resize(static_cast<std::size_t>(*node_limit) + 1);
    name += "_" + std::to_string(*node_limit);
  }
  return Instance(std::move(name), std::move(nodes));
}

Instance parse_cordeau(std::string_view text, std::string name) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty instance file");

  const Line& header = lines[0];
  if (header.tokens.size() < 4) {
    throw ParseError(header.number, "header needs type, vehicles, customers, days");
  }
  const int customers = integer_at(header, 2, "customers");
  if (customers < 0) throw ParseError(header.number, "negative customer count");

  std::size_t k = 1;
  while (k < lines.size() && lines[k].tokens.size() <= 2) {
    if (!all_numeric(lines[k])) throw ParseError(lines[k].number, "bad route metadata line");
    ++k;
  }

  std::optional<Node> depot;
  std::vector<Node> rows;
  for (; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.tokens.size() < 7) {
      throw ParseError(line.number, "node row needs at least 7 fields, found " +
                                        std::to_string(line.tokens.size()));
    }
    Node node;
    node.id = integer_at(line, 0, "id");
    node.x = number_at(line, 1, "x");
    node.y = number_at(line, 2, "y");
    node.service_time = number_at(line, 3, "service duration");
    node.prize = number_at(line, 4, "demand");
    integer_at(line, 5, "frequency");
    const int combos = integer_at(line, 6, "combination count");
    if (combos < 0) throw ParseError(line.number, "negative combination count");
    const std::size_t window_at = 7 + static_cast<std::size_t>(combos);
    for (std::size_t c = 7; c < window_at; ++c) integer_at(line, c, "visit combination");

    const bool is_depot = node.id == 0 || node.id > customers;
    if (line.tokens.size() >= window_at + 2) {
      node.window_open = number_at(line, window_at, "window open");
      node.window_close = number_at(line, window_at + 1, "window close");
    } else if (!is_depot) {
      throw ParseError(line.number, "customer row is missing its time window");
    }
    if (line.tokens.size() > window_at + 2) {
      throw ParseError(line.number, "trailing fields after time window");
    }

    if (is_depot) {
      if (!depot) depot = node;  // multi-depot files: the first depot is the unified depot
    } else {
      check_row(line, node);
      if (node.id != static_cast<int>(rows.size()) + 1) {
        throw ParseError(line.number, "customer ids must run 1.." + std::to_string(customers));
      }
      rows.push_back(node);
    }
  }
  if (static_cast<int>(rows.size()) != customers) {
    throw ParseError(lines.back().number, "header announces " + std::to_string(customers) +
                                              " customers, found " + std::to_string(rows.size()));
  }
  if (!depot) throw ParseError(lines.back().number, "no depot row");

  std::vector<Node> nodes;
  nodes.reserve(rows.size() + 1);
  nodes.push_back(*depot);
  nodes.insert(nodes.end(), rows.begin(), rows.end());
  return Instance(std::move(name), std::move(nodes));
}

Instance load_instance(const std::filesystem::path& path, InstanceFormat format,
                       std::optional<int> node_limit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  switch (format) {
    case InstanceFormat::SolomonDerived:
      return parse_solomon(text, node_limit);
    case InstanceFormat::CordeauDerived:
      if (node_limit) throw ConfigError("--node-limit applies to Solomon instances only");
      return parse_cordeau(text, path.stem().string());
  }
  throw ConfigError("unknown instance format");
}

namespace {

void put_number(std::string& out, double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

}  // namespace

std::string write_solomon(const Instance& instance) {
  std::string out;
  out += instance.name();
  out += "\n\nVEHICLE\nNUMBER     CAPACITY\n";
  out += "  " + std::to_string(instance.customer_count()) + "         0\n\n";
  out += "CUSTOMER\nCUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME  DUE DATE   SERVICE   TIME\n\n";
  for (const Node& n : instance.nodes()) {
    out += std::to_string(n.id);
    for (double v : {n.x, n.y, n.prize, n.window_open, n.window_close, n.service_time}) {
      out += ' ';
      put_number(out, v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace toptw
