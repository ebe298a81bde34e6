#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "incparse/diff_oracle.hpp"
#include "incparse/engine.hpp"

namespace incparse {

/// Contiguous insertion or deletion of m >= 1 tokens. `pos` is 1-based:
/// the first affected token position, equivalently the left vertex of the
/// update interval. `insert n+1 ...` appends.
struct Modification {
  EditKind kind = EditKind::Insert;
  int pos = 1;
  int count = 1;                    // m; for inserts, tokens.size()
  std::vector<std::string> tokens;  // insert only

  static Modification insertion(int pos, std::vector<std::string> toks);
  static Modification deletion(int pos, int count);
};

struct InvalidModification : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unit-cost work accounting for one update cycle. Chart preparation
/// (renumbering) is reported separately and excluded from work().
struct WorkMetrics {
  uint64_t tasks_executed = 0;
  uint64_t edges_added = 0;
  uint64_t edges_removed = 0;
  uint64_t edges_recreated = 0;
  uint64_t prepare_renumbered = 0;
  int64_t delta = -1;  // filled when oracle mode is on
  double wall_seconds = 0.0;

  uint64_t work() const { return tasks_executed + edges_added + edges_removed; }
};

/// The full state between edits: token text, chart, dependency relation.
/// The prediction strategy is fixed for the session.
struct Configuration {
  Strategy strategy = Strategy::BottomUp;
  std::vector<std::string> tokens;
  Chart chart{1};
  DependencyRelation deps;
};

Configuration make_configuration(const Grammar& g, std::vector<std::string> tokens,
                                 Strategy strategy, const ParseOptions& opts = {});

enum class EngineKind { Bounded, Unbounded };

struct EditResult {
  WorkMetrics metrics;
  /// Edges removed this cycle, reported in pre-edit chart coordinates
  /// (condemned edges keep theirs by construction).
  std::vector<Edge> removed_old_coords;
  /// Edges installed this cycle, new coordinates, re-created included.
  std::vector<Edge> added_new_coords;
  std::vector<Edge> recreated;
};

/// Algorithm 2: modify, prepare (renumber + loop relocation), reparse with
/// the disturbed edges sleeping, remove what was neither re-created nor
/// left with an intact derivation. All-or-nothing: on error the
/// configuration is untouched.
EditResult apply_edit(const Grammar& g, Configuration& config, const Modification& mod,
                      const ParseOptions& opts = {});

/// Baseline: same prepare step, then all disturbed edges without an intact
/// derivation are removed up front and the region is reparsed normally (no
/// sleeping, no re-creation). Always yields the same chart as apply_edit.
EditResult apply_edit_unbounded(const Grammar& g, Configuration& config, const Modification& mod,
                                const ParseOptions& opts = {});

}  // namespace incparse
