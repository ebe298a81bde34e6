#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "incparse/incremental.hpp"

namespace incparse {

/// One change-update session: a configuration driven by edit commands,
/// optionally cross-checked against batch reparsing after every edit.
class Session {
 public:
  Session(const Grammar& g, std::vector<std::string> tokens, Strategy strategy,
          EngineKind engine = EngineKind::Bounded, const ParseOptions& opts = {});

  /// Applies one edit. With oracle on, batch-parses the new text, asserts
  /// chart equality and fills metrics.delta from the diff.
  WorkMetrics apply(const Modification& mod);

  void set_oracle(bool on) { oracle_ = on; }

  const Configuration& config() const { return config_; }
  const Grammar& grammar() const { return g_; }
  std::string dump() const;

  /// Result of the last oracle comparison (empty until an edit ran with
  /// oracle on).
  const std::optional<MinimalChange>& last_diff() const { return last_diff_; }
  const EditResult& last_edit() const { return last_edit_; }

  struct OracleMismatch : std::runtime_error {
    explicit OracleMismatch(std::string what) : std::runtime_error(std::move(what)) {}
  };

 private:
  const Grammar& g_;
  ParseOptions opts_;
  EngineKind engine_;
  bool oracle_ = false;
  Configuration config_;
  std::optional<MinimalChange> last_diff_;
  EditResult last_edit_;
};

/// Edit-script commands: `insert <pos> <tok> [...]`, `delete <pos> <count>`,
/// `check`, `dump`. Blank lines and `#` comments are skipped.
struct ScriptCommand {
  enum class Kind { Insert, Delete, Check, Dump } kind;
  Modification mod;  // Insert/Delete
};

std::vector<ScriptCommand> parse_script(std::istream& in);

struct RunScriptOptions {
  Strategy strategy = Strategy::BottomUp;
  EngineKind engine = EngineKind::Bounded;
  bool oracle = false;
  bool dump_after_each = false;
  ParseOptions parse;
};

/// Exit status: 0 ok, 1 oracle mismatch, 2 script/usage error.
int run_script(const Grammar& g, const std::vector<std::string>& initial_tokens,
               const std::vector<ScriptCommand>& script, const RunScriptOptions& opts,
               std::ostream& out, std::ostream& metrics_out);

struct BenchRow {
  int n = 0;
  std::string kind;
  int delta = 0;
  uint64_t work = 0;
  double work_over_delta_sq = 0.0;
  uint64_t batch_edges = 0;
  std::string engine;
};

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);

/// Built-in benchmark text generator named by `generator` ("list": an
/// ambiguous prefix followed by a determiner-noun list; edits land
/// mid-list). Runs each edit with both engines and reports one row per
/// (size, edit, engine).
std::vector<BenchRow> bench_boundedness(const Grammar& g, const std::string& generator,
                                        const std::vector<int>& sizes, int edits_per_size,
                                        uint64_t seed, Strategy strategy,
                                        const ParseOptions& opts = {});

/// Tokens of the generator's text at size n (exposed for tests).
std::vector<std::string> bench_generate_text(const std::string& generator, int n);

}  // namespace incparse
