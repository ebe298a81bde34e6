#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "incparse/engine.hpp"

using namespace incparse;

namespace {

Grammar ab_grammar() {
  return Grammar::from_text("%rules\nS -> A B\n%lexicon\na <- A\nb <- B\n");
}

// Exhaustive derivability check: does category c derive tokens[i..j)?
bool derives(const Grammar& g, const std::vector<std::string>& toks, CategoryId c, int i, int j,
             std::map<std::tuple<CategoryId, int, int>, int>& memo) {
  auto key = std::make_tuple(c, i, j);
  if (auto it = memo.find(key); it != memo.end()) {
    if (it->second == 2) return false;  // cycle guard: assume no
    return it->second == 1;
  }
  memo[key] = 2;
  bool ok = false;
  if (j == i + 1)
    for (RuleId r : g.lexical_rules(toks[static_cast<size_t>(i - 1)]))
      if (g.rule(r).lhs == c) ok = true;
  for (const Rule& r : g.rules()) {
    if (ok) break;
    if (r.lexical || r.lhs != c) continue;
    // Try every split of [i,j) across the rhs.
    std::function<bool(int, int)> fit = [&](size_t sym, int at) -> bool {
      if (sym == r.rhs.size()) return at == j;
      for (int mid = at + 1; mid <= j; ++mid)
        if (derives(g, toks, r.rhs[sym], at, mid, memo) && fit(sym + 1, mid)) return true;
      return false;
    };
    if (fit(0, i)) ok = true;
  }
  memo[key] = ok ? 1 : 0;
  return ok;
}

}  // namespace

TEST_CASE("canonical dump is identical for both strategies on a b") {
  Grammar g = ab_grammar();
  const char* expected =
      "[1,1] S -> . A B\n"
      "[1,2] A -> a .\n"
      "[1,2] S -> A . B\n"
      "[1,3] S -> A B .\n"
      "[2,3] B -> b .\n";
  BatchResult bu = batch_parse(g, {"a", "b"}, Strategy::BottomUp);
  BatchResult td = batch_parse(g, {"a", "b"}, Strategy::TopDown);
  CHECK(bu.chart.dump(g) == expected);
  CHECK(td.chart.dump(g) == expected);
  CHECK(charts_equal(bu.chart, td.chart));
  CHECK(bu.chart.size() == 5);
}

TEST_CASE("unknown tokens contribute nothing") {
  Grammar g = ab_grammar();
  BatchResult r = batch_parse(g, {"q", "b"}, Strategy::BottomUp);
  CHECK(r.chart.size() == 1);  // only [2,3] B -> b .
  BatchResult td = batch_parse(g, {"q", "b"}, Strategy::TopDown);
  // Top-down still plants its initial loop at v1.
  CHECK(td.chart.contains(Edge{1, 1, g.rules_with_lhs(g.start()).front(), 0}));
}

TEST_CASE("empty text") {
  Grammar g = ab_grammar();
  BatchResult bu = batch_parse(g, {}, Strategy::BottomUp);
  CHECK(bu.chart.size() == 0);
  CHECK(bu.chart.vertex_count() == 1);
  BatchResult td = batch_parse(g, {}, Strategy::TopDown);
  CHECK(td.chart.size() == 1);  // the initial loop alone
}

TEST_CASE("edge predicates and rendering") {
  Grammar g = ab_grammar();
  RuleId s = 0;
  REQUIRE(!g.rule(s).lexical);
  Edge loop{1, 1, s, 0};
  Edge done{1, 3, s, 2};
  CHECK(loop.is_loop());
  CHECK(edge_active(g, loop));
  CHECK(edge_inactive(g, done));
  CHECK(!edge_lexical(g, loop));
  CHECK(render_edge(g, loop) == "[1,1] S -> . A B");
  Edge lex{1, 2, g.lexical_rules("a").front(), 1};
  CHECK(edge_lexical(g, lex));
  CHECK(edge_inactive(g, lex));
  CHECK(render_edge(g, lex) == "[1,2] A -> a .");
}

TEST_CASE("chart insert/erase maintain the vertex indexes") {
  Grammar g = ab_grammar();
  Chart c(4);
  Edge active{1, 2, 0, 1};
  Edge inactive{2, 3, g.lexical_rules("b").front(), 1};
  CHECK(c.insert(g, active));
  CHECK(!c.insert(g, active));
  CHECK(c.insert(g, inactive));
  CHECK(c.actives_ending_at(g, 2).count(active) == 1);
  CHECK(c.inactives_starting_at(g, 2).count(inactive) == 1);
  c.erase(g, active);
  CHECK(!c.contains(active));
  CHECK(c.actives_ending_at(g, 2).empty());
  CHECK(c.size() == 1);
}

TEST_CASE("charts_equal distinguishes different charts") {
  Grammar g = ab_grammar();
  BatchResult full = batch_parse(g, {"a", "b"}, Strategy::BottomUp);
  BatchResult partial = batch_parse(g, {"a"}, Strategy::BottomUp);
  CHECK(!charts_equal(full.chart, partial.chart));
  CHECK(charts_equal(full.chart, full.chart));
}

TEST_CASE("agenda order does not change the final chart") {
  Grammar g = Grammar::from_file(GRAMMAR_DIR "/fig4.cfg");
  std::vector<std::string> toks = {"the", "old", "man", "the", "tall", "ships"};
  for (Strategy s : {Strategy::BottomUp, Strategy::TopDown}) {
    ParseOptions fifo, lifo, rnd;
    lifo.order = AgendaOrder::Lifo;
    rnd.order = AgendaOrder::Random;
    std::string base = batch_parse(g, toks, s, fifo).chart.dump(g);
    CHECK(batch_parse(g, toks, s, lifo).chart.dump(g) == base);
    for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
      rnd.agenda_seed = seed;
      CHECK(batch_parse(g, toks, s, rnd).chart.dump(g) == base);
    }
  }
}

TEST_CASE("bottom-up chart holds exactly the derivable constituents") {
  Grammar g = Grammar::from_file(GRAMMAR_DIR "/fig4.cfg");
  std::vector<std::vector<std::string>> texts = {
      {"the", "old", "man", "the", "tall", "ships"},
      {"the", "man", "ships"},
      {"old", "men"},  // second token unknown
      {"the", "old", "old", "man"},
  };
  for (const auto& toks : texts) {
    BatchResult r = batch_parse(g, toks, Strategy::BottomUp);
    int n = static_cast<int>(toks.size());
    std::map<std::tuple<CategoryId, int, int>, int> memo;
    // Every inactive edge is a real constituent...
    for (const Edge& e : r.chart.sorted_edges())
      if (edge_inactive(g, e)) CHECK(derives(g, toks, g.rule(e.rule).lhs, e.start, e.end, memo));
    // ...and every derivable span of a grammar category is present.
    for (const Rule& rule : g.rules()) {
      if (rule.lexical) continue;
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n + 1; ++j)
          if (derives(g, toks, rule.lhs, i, j, memo)) {
            bool present = false;
            for (const Edge& e : r.chart.sorted_edges())
              if (edge_inactive(g, e) && !edge_lexical(g, e) && e.start == i && e.end == j &&
                  g.rule(e.rule).lhs == rule.lhs)
                present = true;
            CHECK(present);
          }
    }
  }
}

TEST_CASE("task budget is enforced") {
  Grammar g = ab_grammar();
  ParseOptions opts;
  opts.task_budget = 1;
  CHECK_THROWS_AS(batch_parse(g, {"a", "b"}, Strategy::BottomUp, opts), TaskBudgetExceeded);
}

TEST_CASE("sort_canonical orders by span, lhs, rendering, dot") {
  Grammar g = ab_grammar();
  BatchResult r = batch_parse(g, {"a", "b"}, Strategy::BottomUp);
  std::vector<Edge> edges = r.chart.sorted_edges();
  REQUIRE(edges.size() == 5);
  for (size_t i = 1; i < edges.size(); ++i) {
    const Edge& p = edges[i - 1];
    const Edge& q = edges[i];
    CHECK(std::tie(p.start, p.end) <= std::tie(q.start, q.end));
  }
  CHECK(render_edge(g, edges.front()) == "[1,1] S -> . A B");
  CHECK(render_edge(g, edges.back()) == "[2,3] B -> b .");
}
