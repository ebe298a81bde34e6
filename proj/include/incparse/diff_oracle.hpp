#pragma once

#include <optional>
#include <string>
#include <vector>

#include "incparse/chart.hpp"

namespace incparse {

/// Bidirectional correspondence between the vertices of the charts before
/// and after a contiguous m-token edit. `split` is the modification vertex
/// of the smaller chart; its left half maps to the larger chart's v_split
/// and its right half to v_{split+m}.
struct VertexMapping {
  Vertex split = 1;
  int m = 0;
  int larger_vertex_count = 1;

  int smaller_vertex_count() const { return larger_vertex_count - m; }
};

enum class VertexSide { Left, Right };

/// Maps a vertex of the smaller chart into the larger chart. The side
/// picks the half when v == split: incoming edges and top-down prediction
/// loops use the left half, outgoing edges and bottom-up loops the right.
Vertex map_vertex_to_larger(const VertexMapping& map, Vertex v, VertexSide side);

/// Maps a vertex of the larger chart back, or nullopt for the interior
/// vertices split+1 .. split+m-1 which have no counterpart.
std::optional<Vertex> map_vertex_to_smaller(const VertexMapping& map, Vertex v);

/// Translates a whole edge of the smaller chart into larger-chart
/// coordinates; total (every smaller-chart edge has an image).
Edge translate_edge_to_larger(const VertexMapping& map, const Edge& e, Strategy strategy);

struct MinimalChange {
  std::vector<Edge> missing;  // M = E \ E', in old-chart coordinates
  std::vector<Edge> added;    // N = E' \ E, in new-chart coordinates
  int m = 0;                  // token count of the modification

  int delta() const { return m + static_cast<int>(missing.size() + added.size()); }
};

enum class EditKind { Insert, Delete };

/// Minimal output change between two batch charts across the vertex
/// mapping induced by an m-token edit at token position `pos`.
MinimalChange chart_diff(const Chart& before, const Chart& after, EditKind kind, Vertex pos,
                         int m, Strategy strategy);

/// `M <edge>` / `N <edge>` / `delta <int>` lines, sorted like the chart dump.
std::string diff_report(const Grammar& g, const MinimalChange& mc);

}  // namespace incparse
