#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "incparse/session.hpp"

namespace py = pybind11;
using namespace incparse;

namespace {

Strategy strategy_from(const std::string& s) {
  if (s == "bottom-up") return Strategy::BottomUp;
  if (s == "top-down") return Strategy::TopDown;
  throw py::value_error("strategy must be 'bottom-up' or 'top-down'");
}

EngineKind engine_from(const std::string& s) {
  if (s == "bounded") return EngineKind::Bounded;
  if (s == "unbounded") return EngineKind::Unbounded;
  throw py::value_error("engine must be 'bounded' or 'unbounded'");
}

py::dict metrics_dict(const WorkMetrics& m) {
  py::dict d;
  d["tasks_executed"] = m.tasks_executed;
  d["edges_added"] = m.edges_added;
  d["edges_removed"] = m.edges_removed;
  d["edges_recreated"] = m.edges_recreated;
  d["prepare_renumbered"] = m.prepare_renumbered;
  d["work"] = m.work();
  d["delta"] = m.delta;
  d["wall_seconds"] = m.wall_seconds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_incparse, mod) {
  mod.doc() = "incremental chart parser";

  py::register_exception<GrammarError>(mod, "GrammarError");
  py::register_exception<InvalidModification>(mod, "InvalidModification");
  py::register_exception<Session::OracleMismatch>(mod, "OracleMismatch");

  py::class_<Grammar>(mod, "Grammar")
      .def_static("from_file", &Grammar::from_file, py::arg("path"))
      .def_static("from_text", &Grammar::from_text, py::arg("text"))
      .def_property_readonly("rule_count", &Grammar::phrasal_rule_count)
      .def_property_readonly("lexicon_token_count", &Grammar::lexicon_token_count)
      .def_property_readonly("dotted_rule_count", &Grammar::dotted_rule_count)
      .def_property_readonly("start",
                             [](const Grammar& g) { return g.category_name(g.start()); })
      .def("validate", [](const Grammar& g) {
        py::list out;
        for (const auto& issue : g.validate().issues) out.append(issue.detail);
        return out;
      });

  mod.def(
      "batch_dump",
      [](const Grammar& g, const std::vector<std::string>& tokens, const std::string& strategy) {
        return batch_parse(g, tokens, strategy_from(strategy)).chart.dump(g);
      },
      py::arg("grammar"), py::arg("tokens"), py::arg("strategy") = "bottom-up",
      "Batch-parse tokens and return the canonical chart dump.");

  py::class_<Session>(mod, "Session")
      .def(py::init([](const Grammar& g, const std::vector<std::string>& tokens,
                       const std::string& strategy, const std::string& engine, bool oracle,
                       uint64_t seed) {
             ParseOptions opts;
             opts.agenda_seed = seed;
             auto s = std::make_unique<Session>(g, tokens, strategy_from(strategy),
                                                engine_from(engine), opts);
             s->set_oracle(oracle);
             return s;
           }),
           py::arg("grammar"), py::arg("tokens"), py::arg("strategy") = "bottom-up",
           py::arg("engine") = "bounded", py::arg("oracle") = false, py::arg("seed") = 0,
           py::keep_alive<1, 2>())
      .def("insert",
           [](Session& s, int pos, const std::vector<std::string>& toks) {
             return metrics_dict(s.apply(Modification::insertion(pos, toks)));
           },
           py::arg("pos"), py::arg("tokens"))
      .def("delete_", [](Session& s, int pos,
                         int count) { return metrics_dict(s.apply(Modification::deletion(pos, count))); },
           py::arg("pos"), py::arg("count") = 1)
      .def("dump", &Session::dump)
      .def_property_readonly("tokens", [](const Session& s) { return s.config().tokens; })
      .def_property_readonly("edge_count", [](const Session& s) { return s.config().chart.size(); })
      .def("diff_report", [](const Session& s) {
        if (!s.last_diff()) throw py::value_error("no oracle-checked edit yet");
        return diff_report(s.grammar(), *s.last_diff());
      });
}
