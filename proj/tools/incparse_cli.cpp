#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "incparse/session.hpp"

namespace {

using namespace incparse;

struct CommonOpts {
  std::string grammar_path;
  std::string strategy = "bottom-up";
  uint64_t seed = 0;
  uint64_t task_budget = kDefaultTaskBudget;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--grammar", c.grammar_path, "grammar file")->required();
  cmd->add_option("--strategy", c.strategy, "prediction strategy")
      ->check(CLI::IsMember({"bottom-up", "top-down"}));
  cmd->add_option("--seed", c.seed, "agenda / benchmark seed");
  cmd->add_option("--task-budget", c.task_budget, "abort after this many agenda tasks");
}

Strategy to_strategy(const std::string& s) {
  return s == "top-down" ? Strategy::TopDown : Strategy::BottomUp;
}

ParseOptions to_parse_options(const CommonOpts& c) {
  ParseOptions p;
  p.agenda_seed = c.seed;
  p.task_budget = c.task_budget;
  return p;
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

std::ostream& metrics_stream(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cerr;
  file.open(path);
  if (!file) throw CLI::ValidationError("--metrics", "cannot open '" + path + "'");
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incremental chart parser"};
  app.require_subcommand(1);

  CommonOpts parse_c, run_c, bench_c;
  std::string parse_text;
  bool parse_deps = false;

  CLI::App* parse_cmd = app.add_subcommand("parse", "batch-parse a text and dump the chart");
  add_common(parse_cmd, parse_c);
  parse_cmd->add_option("--text", parse_text, "whitespace-separated tokens")->required();
  parse_cmd->add_flag("--deps", parse_deps, "also dump the dependency relation");

  std::string run_text, run_script_path, run_engine = "bounded", run_metrics;
  bool run_oracle = false, run_dump_each = false;
  CLI::App* run_cmd = app.add_subcommand("run", "replay an edit script through a session");
  add_common(run_cmd, run_c);
  run_cmd->add_option("--text", run_text, "initial whitespace-separated tokens")->required();
  run_cmd->add_option("--script", run_script_path, "edit script ('-' for stdin)")->required();
  run_cmd->add_option("--engine", run_engine, "update engine")
      ->check(CLI::IsMember({"bounded", "unbounded"}));
  run_cmd->add_flag("--oracle", run_oracle, "batch-parse and diff after every edit");
  run_cmd->add_flag("--dump-after-each", run_dump_each, "dump the chart after every edit");
  run_cmd->add_option("--metrics", run_metrics, "write per-edit metrics to this file");

  std::string bench_generator = "list", bench_sizes = "20,40,80,160,320", bench_metrics;
  int bench_edits = 3;
  CLI::App* bench_cmd = app.add_subcommand("bench", "boundedness benchmark (CSV to stdout)");
  add_common(bench_cmd, bench_c);
  bench_cmd->add_option("--generator", bench_generator, "built-in text generator");
  bench_cmd->add_option("--sizes", bench_sizes, "comma-separated text lengths");
  bench_cmd->add_option("--edits-per-size", bench_edits, "edits per size");
  bench_cmd->add_option("--metrics", bench_metrics, "also write the CSV to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_cmd->parsed()) {
      Grammar g = Grammar::from_file(parse_c.grammar_path);
      BatchResult res =
          batch_parse(g, split_tokens(parse_text), to_strategy(parse_c.strategy),
                      to_parse_options(parse_c));
      std::cout << res.chart.dump(g);
      if (parse_deps) std::cout << res.deps.dump(g);
      return 0;
    }
    if (run_cmd->parsed()) {
      Grammar g = Grammar::from_file(run_c.grammar_path);
      std::vector<ScriptCommand> script;
      if (run_script_path == "-") {
        script = parse_script(std::cin);
      } else {
        std::ifstream in(run_script_path);
        if (!in) {
          std::cerr << "cannot open script '" << run_script_path << "'\n";
          return 2;
        }
        script = parse_script(in);
      }
      RunScriptOptions opts;
      opts.strategy = to_strategy(run_c.strategy);
      opts.engine = run_engine == "unbounded" ? EngineKind::Unbounded : EngineKind::Bounded;
      opts.oracle = run_oracle;
      opts.dump_after_each = run_dump_each;
      opts.parse = to_parse_options(run_c);
      std::ofstream mfile;
      return run_script(g, split_tokens(run_text), script, opts, std::cout,
                        metrics_stream(run_metrics, mfile));
    }
    // bench
    Grammar g = Grammar::from_file(bench_c.grammar_path);
    std::vector<int> sizes;
    std::istringstream ss(bench_sizes);
    for (std::string part; std::getline(ss, part, ',');)
      if (!part.empty()) sizes.push_back(std::stoi(part));
    std::vector<BenchRow> rows =
        bench_boundedness(g, bench_generator, sizes, bench_edits, bench_c.seed,
                          to_strategy(bench_c.strategy), to_parse_options(bench_c));
    std::ostringstream csv;
    csv << bench_csv_header();
    for (const BenchRow& r : rows) csv << bench_csv_row(r);
    std::cout << csv.str();
    if (!bench_metrics.empty()) {
      std::ofstream out(bench_metrics);
      out << csv.str();
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
