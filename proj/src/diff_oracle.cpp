#include "incparse/diff_oracle.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace incparse {

Vertex map_vertex_to_larger(const VertexMapping& map, Vertex v, VertexSide side) {
  if (v < map.split) return v;
  if (v > map.split) return v + map.m;
  return side == VertexSide::Left ? map.split : map.split + map.m;
}

std::optional<Vertex> map_vertex_to_smaller(const VertexMapping& map, Vertex v) {
  if (v < map.split) return v;
  if (v == map.split) return map.split;                 // left half
  if (v < map.split + map.m) return std::nullopt;       // interior, unmapped
  if (v == map.split + map.m) return map.split;         // right half
  return v - map.m;
}

Edge translate_edge_to_larger(const VertexMapping& map, const Edge& e, Strategy strategy) {
  if (e.is_loop()) {
    // Loops at the split vertex carry an implicit half: bottom-up
    // predictions belong to the right half, top-down ones to the left.
    VertexSide side = strategy == Strategy::BottomUp ? VertexSide::Right : VertexSide::Left;
    Vertex v = map_vertex_to_larger(map, e.start, side);
    return {v, v, e.rule, e.dot};
  }
  // Outgoing edges attach to the right half, incoming to the left.
  Vertex s = map_vertex_to_larger(map, e.start, VertexSide::Right);
  Vertex t = map_vertex_to_larger(map, e.end, VertexSide::Left);
  return {s, t, e.rule, e.dot};
}

MinimalChange chart_diff(const Chart& before, const Chart& after, EditKind kind, Vertex pos,
                         int m, Strategy strategy) {
  const Chart& larger = kind == EditKind::Delete ? before : after;
  const Chart& smaller = kind == EditKind::Delete ? after : before;
  if (larger.vertex_count() != smaller.vertex_count() + m)
    throw std::invalid_argument("chart_diff: vertex counts inconsistent with the modification");
  VertexMapping map{pos, m, larger.vertex_count()};

  MinimalChange mc;
  mc.m = m;
  EdgeSet image;  // smaller-chart edges seen through the mapping
  std::vector<Edge>& smaller_side = kind == EditKind::Delete ? mc.added : mc.missing;
  std::vector<Edge>& larger_side = kind == EditKind::Delete ? mc.missing : mc.added;

  for (const Edge& e : smaller.sorted_edges()) {
    Edge t = translate_edge_to_larger(map, e, strategy);
    image.insert(t);
    if (!larger.contains(t)) smaller_side.push_back(e);
  }
  for (const Edge& e : larger.sorted_edges())
    if (image.count(e) == 0) larger_side.push_back(e);

  std::sort(mc.missing.begin(), mc.missing.end());
  std::sort(mc.added.begin(), mc.added.end());
  return mc;
}

std::string diff_report(const Grammar& g, const MinimalChange& mc) {
  std::ostringstream out;
  std::vector<Edge> missing = mc.missing;
  std::vector<Edge> added = mc.added;
  sort_canonical(g, missing);
  sort_canonical(g, added);
  for (const Edge& e : missing) out << "M " << render_edge(g, e) << "\n";
  for (const Edge& e : added) out << "N " << render_edge(g, e) << "\n";
  out << "delta " << mc.delta() << "\n";
  return out.str();
}

}  // namespace incparse
