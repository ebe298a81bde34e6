#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "incparse/chart.hpp"

namespace incparse {

/// What an edge was derived from: a token of the current text, a parent
/// edge, or the top-down initialization step.
struct Source {
  enum class Kind { Token, Edge, Init };
  Kind kind = Kind::Init;
  int token_pos = 0;  // Kind::Token
  struct Edge edge;   // Kind::Edge

  static Source token(int pos) { return {Kind::Token, pos, {}}; }
  static Source from_edge(const struct Edge& e) { return {Kind::Edge, 0, e}; }
  static Source init() { return {Kind::Init, 0, {}}; }

  bool operator==(const Source&) const = default;
  auto operator<=>(const Source&) const = default;
};

/// One derivation of an edge, e.g. {active parent, inactive parent} for a
/// combination. Kept sorted for set semantics.
using SourceGroup = std::vector<Source>;

/// The edge-dependency relation D: every edge maps to the derivations that
/// produced it, with a reverse dependant index kept in lock step.
class DependencyRelation {
 public:
  /// Appends one derivation group (deduplicated). Ambiguous derivations of
  /// the same edge accumulate as separate groups.
  void record(const Edge& edge, SourceGroup group);

  /// Drops all previously recorded derivations; used when a re-created
  /// edge keeps only the sources of its own reparse derivation.
  void reset(const Edge& edge, SourceGroup group);

  /// Inserts a token source into every derivation group of the edge
  /// (an edge spanning the insertion point covers the token no matter how
  /// it was derived).
  void add_token_dependency(const Edge& edge, int token_pos);

  void erase_edge(const Edge& edge);
  /// erase_edge plus dropping every group in dependants that references it.
  void retract_edge(const Edge& edge);

  bool known(const Edge& edge) const { return sources_.count(edge) != 0; }
  const std::vector<SourceGroup>& groups(const Edge& edge) const;
  bool has_init_source(const Edge& edge) const;

  const std::set<Edge>& dependants_of_edge(const Edge& e) const;
  const std::set<Edge>& dependants_of_token(int pos) const;

  /// All edges reachable from the seeds by following dependant links
  /// transitively. Deterministic: the result is a set.
  std::set<Edge> transitive_dependants(const std::vector<Source>& seeds) const;

  /// True iff `group` contains no edge source outside `alive` (token and
  /// Init sources are not checked here).
  static bool group_intact(const SourceGroup& group, const EdgeSet& alive);

  size_t edge_count() const { return sources_.size(); }
  int max_groups_per_edge() const;
  int max_dependants_per_source() const;

  /// Rebuilds the reverse index from scratch and compares; test support.
  bool inverse_consistent() const;

  /// `edge <canonical> <= group{...} | group{...}` lines, sorted.
  std::string dump(const Grammar& g) const;

  /// Applies an edge-value substitution and a token-position remap to the
  /// whole relation (chart renumbering). Edges mapped to the same value
  /// merge their groups.
  void renumber(const std::unordered_map<Edge, Edge, EdgeHash>& edge_map,
                const std::unordered_map<int, int>& token_map);

 private:
  void index_group(const Edge& edge, const SourceGroup& group);

  std::unordered_map<Edge, std::vector<SourceGroup>, EdgeHash> sources_;
  std::unordered_map<Edge, std::set<Edge>, EdgeHash> edge_dependants_;
  std::unordered_map<int, std::set<Edge>> token_dependants_;
};

}  // namespace incparse
