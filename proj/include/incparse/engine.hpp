#pragma once

#include <cstdint>
#include <vector>

#include "incparse/chart.hpp"
#include "incparse/dependency.hpp"

namespace incparse {

struct ParseOptions {
  AgendaOrder order = AgendaOrder::Fifo;
  uint64_t agenda_seed = 0;
  uint64_t task_budget = kDefaultTaskBudget;
};

struct ParseCounters {
  uint64_t tasks_executed = 0;
  uint64_t edges_added = 0;
  uint64_t edges_recreated = 0;
};

/// Hooks that turn the batch engine into the reparse engine: disturbed
/// edges sleep outside the chart; a proposal equal to one wakes it as
/// re-created instead of propagating.
struct ReparseHooks {
  EdgeSet* sleeping = nullptr;
  EdgeSet* recreated = nullptr;
  /// Edges genuinely installed this cycle (excluding re-created ones).
  EdgeSet* new_edges = nullptr;
  /// Vertex where a deletion fused two old vertices, 0 if none. Woken
  /// edges touching it gain adjacencies that existed in neither pre-edit
  /// half, so they pair with every partner there, not just new ones.
  Vertex merge_vertex = 0;
};

/// Executes agenda tasks to fixpoint over the given chart. Both Algorithm
/// 1 (batch) and the reparse step run through here.
class Engine {
 public:
  Engine(const Grammar& g, Strategy strategy, Chart& chart, DependencyRelation& deps,
         Agenda& agenda, const ParseOptions& opts, ReparseHooks hooks = {});

  void run();

  /// Installs an edge (or records a redundant derivation of an existing
  /// one) and enqueues follow-up tasks. Returns true if the edge is new.
  bool propose(const Edge& e, SourceGroup group);

  /// Enqueues one combination task per category-matched active-inactive
  /// pair meeting at `v` (reparse seeding).
  void seed_combines_at(Vertex v);

  /// Enqueues the combinations an edge re-entering the chart without
  /// follow-up tasks (re-created or rescued) can still be missing: pairs
  /// with partners genuinely new this cycle, and pairs across the merge
  /// vertex. Everything else it could combine with existed pre-edit.
  void reseed(const Edge& e);

  const ParseCounters& counters() const { return counters_; }

 private:
  void execute(const Task& t);
  void do_scan(const ScanTask& t);
  void do_predict(const PredictTask& t);
  void do_combine(const CombineTask& t);
  void enqueue_followups(const Edge& e);
  void wake(const Edge& e, SourceGroup group);

  const Grammar& g_;
  Strategy strategy_;
  Chart& chart_;
  DependencyRelation& deps_;
  Agenda& agenda_;
  ParseOptions opts_;
  ReparseHooks hooks_;
  ParseCounters counters_;
};

struct BatchResult {
  Chart chart{1};
  DependencyRelation deps;
  ParseCounters counters;
};

/// Algorithm 1: scan every token, run the agenda to fixpoint. Top-down
/// installs one initial prediction loop at v1 per start rule.
BatchResult batch_parse(const Grammar& g, const std::vector<std::string>& tokens,
                        Strategy strategy, const ParseOptions& opts = {});

}  // namespace incparse
