#include "incparse/session.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace incparse {

Session::Session(const Grammar& g, std::vector<std::string> tokens, Strategy strategy,
                 EngineKind engine, const ParseOptions& opts)
    : g_(g), opts_(opts), engine_(engine) {
  config_ = make_configuration(g, std::move(tokens), strategy, opts_);
}

WorkMetrics Session::apply(const Modification& mod) {
  Chart before = config_.chart;
  last_edit_ = engine_ == EngineKind::Bounded ? apply_edit(g_, config_, mod, opts_)
                                              : apply_edit_unbounded(g_, config_, mod, opts_);
  if (oracle_) {
    BatchResult batch = batch_parse(g_, config_.tokens, config_.strategy, opts_);
    if (!charts_equal(config_.chart, batch.chart)) {
      std::ostringstream msg;
      msg << "oracle mismatch after " << (mod.kind == EditKind::Insert ? "insert" : "delete")
          << " at " << mod.pos << "\n--- incremental ---\n"
          << config_.chart.dump(g_) << "--- batch ---\n"
          << batch.chart.dump(g_);
      throw OracleMismatch(msg.str());
    }
    last_diff_ = chart_diff(before, config_.chart, mod.kind, mod.pos, mod.count,
                            config_.strategy);
    last_edit_.metrics.delta = static_cast<int64_t>(last_diff_->delta());
  }
  return last_edit_.metrics;
}

std::string Session::dump() const { return config_.chart.dump(g_); }

std::vector<ScriptCommand> parse_script(std::istream& in) {
  std::vector<ScriptCommand> cmds;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    auto fail = [&](const std::string& why) {
      throw std::runtime_error("script line " + std::to_string(lineno) + ": " + why);
    };
    if (op == "insert") {
      int pos;
      if (!(ls >> pos)) fail("insert needs a position");
      std::vector<std::string> toks;
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (toks.empty()) fail("insert needs at least one token");
      cmds.push_back({ScriptCommand::Kind::Insert, Modification::insertion(pos, std::move(toks))});
    } else if (op == "delete") {
      int pos, count;
      if (!(ls >> pos >> count)) fail("delete needs a position and a count");
      if (ls >> op) fail("trailing input after delete");
      cmds.push_back({ScriptCommand::Kind::Delete, Modification::deletion(pos, count)});
    } else if (op == "check") {
      cmds.push_back({ScriptCommand::Kind::Check, {}});
    } else if (op == "dump") {
      cmds.push_back({ScriptCommand::Kind::Dump, {}});
    } else {
      fail("unknown command '" + op + "'");
    }
  }
  return cmds;
}

int run_script(const Grammar& g, const std::vector<std::string>& initial_tokens,
               const std::vector<ScriptCommand>& script, const RunScriptOptions& opts,
               std::ostream& out, std::ostream& metrics_out) {
  Session session(g, initial_tokens, opts.strategy, opts.engine, opts.parse);
  session.set_oracle(opts.oracle);
  int step = 0;
  for (const ScriptCommand& cmd : script) {
    ++step;
    switch (cmd.kind) {
      case ScriptCommand::Kind::Insert:
      case ScriptCommand::Kind::Delete: {
        WorkMetrics m;
        try {
          m = session.apply(cmd.mod);
        } catch (const Session::OracleMismatch& e) {
          out << "step " << step << ": " << e.what() << "\n";
          return 1;
        } catch (const InvalidModification& e) {
          out << "step " << step << ": " << e.what() << "\n";
          return 2;
        }
        metrics_out << "step " << step << " "
                    << (cmd.kind == ScriptCommand::Kind::Insert ? "insert" : "delete")
                    << " pos=" << cmd.mod.pos << " m=" << cmd.mod.count
                    << " tasks=" << m.tasks_executed << " added=" << m.edges_added
                    << " removed=" << m.edges_removed << " recreated=" << m.edges_recreated
                    << " renumbered=" << m.prepare_renumbered << " work=" << m.work();
        if (m.delta >= 0) metrics_out << " delta=" << m.delta;
        metrics_out << "\n";
        if (opts.dump_after_each) out << session.dump();
        break;
      }
      case ScriptCommand::Kind::Check: {
        BatchResult batch =
            batch_parse(g, session.config().tokens, opts.strategy, opts.parse);
        if (!charts_equal(session.config().chart, batch.chart)) {
          out << "step " << step << ": check failed\n--- incremental ---\n"
              << session.dump() << "--- batch ---\n"
              << batch.chart.dump(g);
          return 1;
        }
        out << "step " << step << ": check ok (" << session.config().chart.size()
            << " edges)\n";
        break;
      }
      case ScriptCommand::Kind::Dump:
        out << session.dump();
        break;
    }
  }
  return 0;
}

std::string bench_csv_header() {
  return "n,kind,delta,work,work_over_delta_sq,batch_edges,engine\n";
}

std::string bench_csv_row(const BenchRow& r) {
  std::ostringstream out;
  out << r.n << "," << r.kind << "," << r.delta << "," << r.work << "," << r.work_over_delta_sq
      << "," << r.batch_edges << "," << r.engine << "\n";
  return out.str();
}

std::vector<std::string> bench_generate_text(const std::string& generator, int n) {
  if (generator != "list")
    throw std::runtime_error("unknown benchmark generator '" + generator + "'");
  // A dense ambiguous prefix (the x block) followed by a flat
  // determiner-noun list; list length scales with n, the prefix keeps the
  // batch chart superlinear.
  std::vector<std::string> toks;
  toks.push_back("begin");
  int prefix = std::max(2, n / 4);
  for (int k = 0; k < prefix; ++k) toks.push_back("x");
  while (static_cast<int>(toks.size()) + 2 <= n) {
    toks.push_back("the");
    toks.push_back("dog");
  }
  if (static_cast<int>(toks.size()) < n) toks.push_back("dog");
  return toks;
}

std::vector<BenchRow> bench_boundedness(const Grammar& g, const std::string& generator,
                                        const std::vector<int>& sizes, int edits_per_size,
                                        uint64_t seed, Strategy strategy,
                                        const ParseOptions& opts) {
  std::vector<BenchRow> rows;
  std::mt19937_64 rng(seed);
  for (int n : sizes) {
    std::vector<std::string> text = bench_generate_text(generator, n);
    uint64_t batch_edges = batch_parse(g, text, strategy, opts).chart.size();
    for (int e = 0; e < edits_per_size; ++e) {
      // Edits land mid-list: delete one determiner, then put it back.
      int list_start = 2 + std::max(2, n / 4);
      std::vector<int> det_positions;
      for (int p = list_start; p <= static_cast<int>(text.size()); ++p)
        if (text[static_cast<size_t>(p - 1)] == "the") det_positions.push_back(p);
      if (det_positions.empty()) throw std::runtime_error("benchmark text too short for edits");
      // Pick from the middle half of the list so depth above and below the
      // edit both grow with n.
      size_t lo = det_positions.size() / 4;
      size_t hi = det_positions.size() - 1 - lo;
      int pos = det_positions[lo + (hi > lo ? rng() % (hi - lo + 1) : 0)];
      for (EngineKind kind : {EngineKind::Bounded, EngineKind::Unbounded}) {
        Session session(g, text, strategy, kind, opts);
        session.set_oracle(true);
        WorkMetrics del = session.apply(Modification::deletion(pos, 1));
        BenchRow row;
        row.n = n;
        row.kind = "delete";
        row.delta = static_cast<int>(del.delta);
        row.work = del.work();
        row.work_over_delta_sq =
            del.delta > 0 ? static_cast<double>(del.work()) /
                                (static_cast<double>(del.delta) * static_cast<double>(del.delta))
                          : 0.0;
        row.batch_edges = batch_edges;
        row.engine = kind == EngineKind::Bounded ? "bounded" : "unbounded";
        rows.push_back(row);
        WorkMetrics ins = session.apply(Modification::insertion(pos, {"the"}));
        row.kind = "insert";
        row.delta = static_cast<int>(ins.delta);
        row.work = ins.work();
        row.work_over_delta_sq =
            ins.delta > 0 ? static_cast<double>(ins.work()) /
                                (static_cast<double>(ins.delta) * static_cast<double>(ins.delta))
                          : 0.0;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace incparse
