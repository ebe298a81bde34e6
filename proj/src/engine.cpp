#include "incparse/engine.hpp"

#include <cassert>
#include <stdexcept>

namespace incparse {

Engine::Engine(const Grammar& g, Strategy strategy, Chart& chart, DependencyRelation& deps,
               Agenda& agenda, const ParseOptions& opts, ReparseHooks hooks)
    : g_(g),
      strategy_(strategy),
      chart_(chart),
      deps_(deps),
      agenda_(agenda),
      opts_(opts),
      hooks_(hooks) {}

void Engine::run() {
  while (!agenda_.empty()) {
    if (++counters_.tasks_executed > opts_.task_budget)
      throw TaskBudgetExceeded("agenda task budget exceeded (" +
                               std::to_string(opts_.task_budget) + ")");
    execute(agenda_.pop());
  }
}

void Engine::execute(const Task& t) {
  if (const auto* s = std::get_if<ScanTask>(&t))
    do_scan(*s);
  else if (const auto* p = std::get_if<PredictTask>(&t))
    do_predict(*p);
  else
    do_combine(std::get<CombineTask>(t));
}

void Engine::do_scan(const ScanTask& t) {
  // Unknown tokens legally contribute no lexical edges.
  for (RuleId r : g_.lexical_rules(t.token))
    propose({t.position, t.position + 1, r, 1}, {Source::token(t.position)});
}

void Engine::do_predict(const PredictTask& t) {
  const Edge& e = t.trigger;
  if (strategy_ == Strategy::BottomUp) {
    if (!edge_inactive(g_, e)) throw std::logic_error("bottom-up predict trigger must be inactive");
    CategoryId lhs = g_.rule(e.rule).lhs;
    for (RuleId r : g_.rules_with_left_corner(lhs))
      propose({e.start, e.start, r, 0}, {Source::from_edge(e)});
  } else {
    if (!edge_active(g_, e)) throw std::logic_error("top-down predict trigger must be active");
    CategoryId needed = g_.needed_category(e.rule, e.dot);
    for (RuleId r : g_.rules_with_lhs(needed))
      propose({e.end, e.end, r, 0}, {Source::from_edge(e)});
  }
}

void Engine::do_combine(const CombineTask& t) {
  const Edge& a = t.active;
  const Edge& b = t.inactive;
  assert(a.end == b.start);
  // Category mismatch is a silent no-op.
  if (g_.needed_category(a.rule, a.dot) != g_.rule(b.rule).lhs) return;
  propose({a.start, b.end, a.rule, a.dot + 1}, {Source::from_edge(a), Source::from_edge(b)});
}

bool Engine::propose(const Edge& e, SourceGroup group) {
  if (chart_.contains(e)) {
    // Redundant proposal: the edge gains an extra derivation group.
    deps_.record(e, std::move(group));
    return false;
  }
  if (hooks_.sleeping != nullptr && hooks_.sleeping->count(e) != 0) {
    wake(e, std::move(group));
    return false;
  }
  chart_.insert(g_, e);
  deps_.record(e, std::move(group));
  ++counters_.edges_added;
  if (hooks_.new_edges) hooks_.new_edges->insert(e);
  enqueue_followups(e);
  return true;
}

// A proposal equal to a sleeping disturbed edge re-creates it: the edge is
// installed with the sources of this reparse derivation only, and no tasks
// are enqueued for it, discontinuing reparsing along this path. Pairs with
// edges genuinely new in this cycle are the one exception: those
// combinations exist in neither the old chart nor the sleeping region, so
// nothing else would ever propose them.
void Engine::wake(const Edge& e, SourceGroup group) {
  chart_.insert(g_, e);
  deps_.reset(e, std::move(group));
  hooks_.sleeping->erase(e);
  if (hooks_.recreated) hooks_.recreated->insert(e);
  ++counters_.edges_added;
  ++counters_.edges_recreated;
  reseed(e);
}

void Engine::reseed(const Edge& e) {
  bool new_ok = hooks_.new_edges != nullptr;
  Vertex v = hooks_.merge_vertex;
  if (edge_inactive(g_, e)) {
    bool at_merge = e.start == v && v != 0;
    CategoryId lhs = g_.rule(e.rule).lhs;
    for (const Edge& a : chart_.actives_ending_at(g_, e.start))
      if ((at_merge || (new_ok && hooks_.new_edges->count(a) != 0)) &&
          g_.needed_category(a.rule, a.dot) == lhs)
        agenda_.push(CombineTask{a, e});
  } else {
    bool at_merge = e.end == v && v != 0;
    CategoryId needed = g_.needed_category(e.rule, e.dot);
    for (const Edge& b : chart_.inactives_starting_at(g_, e.end))
      if ((at_merge || (new_ok && hooks_.new_edges->count(b) != 0)) &&
          g_.rule(b.rule).lhs == needed)
        agenda_.push(CombineTask{e, b});
  }
}

void Engine::enqueue_followups(const Edge& e) {
  bool inactive = edge_inactive(g_, e);
  if (strategy_ == Strategy::BottomUp ? inactive : !inactive) agenda_.push(PredictTask{e});
  if (inactive) {
    CategoryId lhs = g_.rule(e.rule).lhs;
    for (const Edge& a : chart_.actives_ending_at(g_, e.start))
      if (g_.needed_category(a.rule, a.dot) == lhs) agenda_.push(CombineTask{a, e});
  } else {
    CategoryId needed = g_.needed_category(e.rule, e.dot);
    for (const Edge& b : chart_.inactives_starting_at(g_, e.end))
      if (g_.rule(b.rule).lhs == needed) agenda_.push(CombineTask{e, b});
  }
}

void Engine::seed_combines_at(Vertex v) {
  for (const Edge& a : chart_.actives_ending_at(g_, v))
    for (const Edge& b : chart_.inactives_starting_at(g_, v))
      if (g_.needed_category(a.rule, a.dot) == g_.rule(b.rule).lhs)
        agenda_.push(CombineTask{a, b});
}

BatchResult batch_parse(const Grammar& g, const std::vector<std::string>& tokens,
                        Strategy strategy, const ParseOptions& opts) {
  BatchResult res;
  int n = static_cast<int>(tokens.size());
  res.chart.set_vertex_count(n + 1);
  Agenda agenda(opts.order, opts.agenda_seed);
  Engine engine(g, strategy, res.chart, res.deps, agenda, opts);

  if (strategy == Strategy::TopDown)
    for (RuleId r : g.rules_with_lhs(g.start())) engine.propose({1, 1, r, 0}, {Source::init()});
  for (int p = 1; p <= n; ++p) agenda.push(ScanTask{tokens[static_cast<size_t>(p - 1)], p});
  engine.run();
  res.counters = engine.counters();
  return res;
}

}  // namespace incparse
