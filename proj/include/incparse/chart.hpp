#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "incparse/grammar.hpp"

namespace incparse {

/// Vertices are 1-based positions between tokens: token p spans <p, p+1>,
/// an n-token text has n+1 vertices.
using Vertex = int32_t;

enum class Strategy { BottomUp, TopDown };

const char* strategy_name(Strategy s);

/// Chart edge <start, end, dotted rule>. Identity for set membership and
/// diffing is exactly this quadruple.
struct Edge {
  Vertex start = 0;
  Vertex end = 0;
  RuleId rule = -1;
  int32_t dot = 0;

  bool operator==(const Edge&) const = default;
  auto operator<=>(const Edge&) const = default;

  bool is_loop() const { return start == end; }
};

struct EdgeHash {
  size_t operator()(const Edge& e) const {
    uint64_t a = (static_cast<uint64_t>(static_cast<uint32_t>(e.start)) << 32) |
                 static_cast<uint32_t>(e.end);
    uint64_t b = (static_cast<uint64_t>(static_cast<uint32_t>(e.rule)) << 32) |
                 static_cast<uint32_t>(e.dot);
    a ^= b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2);
    return std::hash<uint64_t>{}(a);
  }
};

using EdgeSet = std::unordered_set<Edge, EdgeHash>;

inline bool edge_inactive(const Grammar& g, const Edge& e) {
  return g.dot_final(e.rule, e.dot);
}
inline bool edge_active(const Grammar& g, const Edge& e) { return !edge_inactive(g, e); }
inline bool edge_lexical(const Grammar& g, const Edge& e) { return g.rule(e.rule).lexical; }

std::string render_edge(const Grammar& g, const Edge& e);

/// Canonical ordering used by dumps and reports:
/// (start, end, LHS name, rendered rule, dot).
void sort_canonical(const Grammar& g, std::vector<Edge>& edges);

class Chart {
 public:
  explicit Chart(int vertex_count = 1) : vertex_count_(vertex_count) {}

  int vertex_count() const { return vertex_count_; }
  void set_vertex_count(int n);

  bool contains(const Edge& e) const { return edges_.count(e) != 0; }
  size_t size() const { return edges_.size(); }
  const EdgeSet& edges() const { return edges_; }

  /// Returns false if the edge was already present.
  bool insert(const Grammar& g, const Edge& e);
  void erase(const Grammar& g, const Edge& e);

  const std::set<Edge>& actives_ending_at(const Grammar& g, Vertex v) const;
  const std::set<Edge>& inactives_starting_at(const Grammar& g, Vertex v) const;

  /// Canonical dump: one sorted line per edge. Two charts are equal iff
  /// their dumps are byte-identical.
  std::string dump(const Grammar& g) const;

  std::vector<Edge> sorted_edges() const;

 private:
  int vertex_count_;
  EdgeSet edges_;
  mutable std::vector<std::set<Edge>> actives_by_end_;
  mutable std::vector<std::set<Edge>> inactives_by_start_;
};

bool charts_equal(const Chart& a, const Chart& b);

struct ScanTask {
  std::string token;
  int position = 0;  // token position, 1-based
};
struct PredictTask {
  Edge trigger;
};
struct CombineTask {
  Edge active;
  Edge inactive;
};
using Task = std::variant<ScanTask, PredictTask, CombineTask>;

enum class AgendaOrder { Fifo, Lifo, Random };

/// Worklist of scanning, prediction and combination tasks. Tasks are
/// enqueued once per new edge, so no executed task is ever re-enqueued.
class Agenda {
 public:
  explicit Agenda(AgendaOrder order = AgendaOrder::Fifo, uint64_t seed = 0)
      : order_(order), rng_(seed) {}

  bool empty() const { return tasks_.empty(); }
  size_t size() const { return tasks_.size(); }
  void push(Task t) { tasks_.push_back(std::move(t)); }
  Task pop();

 private:
  AgendaOrder order_;
  std::deque<Task> tasks_;
  std::mt19937_64 rng_;
};

struct TaskBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr uint64_t kDefaultTaskBudget = 10'000'000;

}  // namespace incparse
