#include "incparse/chart.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace incparse {

const char* strategy_name(Strategy s) {
  return s == Strategy::BottomUp ? "bottom-up" : "top-down";
}

std::string render_edge(const Grammar& g, const Edge& e) {
  std::ostringstream out;
  out << "[" << e.start << "," << e.end << "] " << g.render_dotted(e.rule, e.dot);
  return out.str();
}

void Chart::set_vertex_count(int n) {
  vertex_count_ = n;
  if (static_cast<int>(actives_by_end_.size()) <= n) {
    actives_by_end_.resize(static_cast<size_t>(n) + 2);
    inactives_by_start_.resize(static_cast<size_t>(n) + 2);
  }
}

bool Chart::insert(const Grammar& g, const Edge& e) {
  if (!edges_.insert(e).second) return false;
  if (static_cast<int>(actives_by_end_.size()) <= vertex_count_) set_vertex_count(vertex_count_);
  if (edge_active(g, e))
    actives_by_end_[static_cast<size_t>(e.end)].insert(e);
  else
    inactives_by_start_[static_cast<size_t>(e.start)].insert(e);
  return true;
}

void Chart::erase(const Grammar& g, const Edge& e) {
  if (edges_.erase(e) == 0) return;
  if (edge_active(g, e))
    actives_by_end_[static_cast<size_t>(e.end)].erase(e);
  else
    inactives_by_start_[static_cast<size_t>(e.start)].erase(e);
}

const std::set<Edge>& Chart::actives_ending_at(const Grammar&, Vertex v) const {
  static const std::set<Edge> empty;
  if (v < 0 || v >= static_cast<Vertex>(actives_by_end_.size())) return empty;
  return actives_by_end_[static_cast<size_t>(v)];
}

const std::set<Edge>& Chart::inactives_starting_at(const Grammar&, Vertex v) const {
  static const std::set<Edge> empty;
  if (v < 0 || v >= static_cast<Vertex>(inactives_by_start_.size())) return empty;
  return inactives_by_start_[static_cast<size_t>(v)];
}

std::vector<Edge> Chart::sorted_edges() const {
  std::vector<Edge> out(edges_.begin(), edges_.end());
  std::sort(out.begin(), out.end());
  return out;
}

void sort_canonical(const Grammar& g, std::vector<Edge>& edges) {
  auto key = [&](const Edge& e) {
    return std::make_tuple(e.start, e.end, g.category_name(g.rule(e.rule).lhs),
                           g.render_dotted(e.rule, e.dot), e.dot);
  };
  std::sort(edges.begin(), edges.end(),
            [&](const Edge& a, const Edge& b) { return key(a) < key(b); });
}

std::string Chart::dump(const Grammar& g) const {
  std::vector<Edge> es(edges_.begin(), edges_.end());
  sort_canonical(g, es);
  std::ostringstream out;
  for (const Edge& e : es) out << render_edge(g, e) << "\n";
  return out.str();
}

bool charts_equal(const Chart& a, const Chart& b) {
  return a.vertex_count() == b.vertex_count() && a.edges() == b.edges();
}

Task Agenda::pop() {
  size_t idx = 0;
  switch (order_) {
    case AgendaOrder::Fifo:
      idx = 0;
      break;
    case AgendaOrder::Lifo:
      idx = tasks_.size() - 1;
      break;
    case AgendaOrder::Random:
      idx = std::uniform_int_distribution<size_t>(0, tasks_.size() - 1)(rng_);
      break;
  }
  Task t = std::move(tasks_[idx]);
  tasks_.erase(tasks_.begin() + static_cast<std::ptrdiff_t>(idx));
  return t;
}

}  // namespace incparse
