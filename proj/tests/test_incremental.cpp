#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "incparse/incremental.hpp"

using namespace incparse;

namespace {

const std::vector<std::string> kLong = {"the", "old", "man", "the", "tall", "ships"};
const std::vector<std::string> kShort = {"the", "old", "man", "the", "ships"};

std::set<std::string> names(const Grammar& g, const std::vector<Edge>& edges) {
  std::set<std::string> out;
  for (const Edge& e : edges) out.insert(render_edge(g, e));
  return out;
}

void check_matches_batch(const Grammar& g, const Configuration& cfg) {
  BatchResult b = batch_parse(g, cfg.tokens, cfg.strategy);
  CHECK(cfg.chart.dump(g) == b.chart.dump(g));
}

}  // namespace

TEST_CASE("worked example, bottom-up deletion of the adjective") {
  Grammar g = Grammar::from_file(GRAMMAR_DIR "/fig4.cfg");
  Configuration cfg = make_configuration(g, kLong, Strategy::BottomUp);
  EditResult r = apply_edit(g, cfg, Modification::deletion(5, 1));

  CHECK(cfg.tokens == kShort);
  check_matches_batch(g, cfg);

  CHECK(names(g, r.removed_old_coords) ==
        std::set<std::string>{"[4,6] NP -> Det A . N", "[4,7] NP -> Det A N .",
                              "[5,6] A -> tall ."});
  CHECK(names(g, r.recreated) ==
        std::set<std::string>{"[3,6] VP -> V NP .", "[4,4] S -> . NP VP", "[4,6] S -> NP . VP"});
  CHECK(names(g, r.added_new_coords) ==
        std::set<std::string>{"[3,6] VP -> V NP .", "[4,4] S -> . NP VP", "[4,6] NP -> Det N .",
                              "[4,6] S -> NP . VP"});

  CHECK(r.metrics.tasks_executed == 6);
  CHECK(r.metrics.edges_added == 4);
  CHECK(r.metrics.edges_removed == 6);
  CHECK(r.metrics.edges_recreated == 3);
  CHECK(r.metrics.prepare_renumbered == 11);
  CHECK(r.metrics.work() == 16);
}

TEST_CASE("worked example, bottom-up insertion of the adjective") {
  Grammar g = Grammar::from_file(GRAMMAR_DIR "/fig4.cfg");
  Configuration cfg = make_configuration(g, kShort, Strategy::BottomUp);
  EditResult r = apply_edit(g, cfg, Modification::insertion(5, {"tall"}));

  CHECK(cfg.tokens == kLong);
  check_matches_batch(g, cfg);

  CHECK(names(g, r.removed_old_coords) == std::set<std::string>{"[4,6] NP -> Det N ."});
  CHECK(names(g, r.recreated) ==
        std::set<std::string>{"[3,7] VP -> V NP .", "[4,4] S -> . NP VP", "[4,7] S -> NP . VP"});
  CHECK(names(g, r.added_new_coords) ==
        std::set<std::string>{"[3,7] VP -> V NP .", "[4,4] S -> . NP VP", "[4,6] NP -> Det A . N",
                              "[4,7] NP -> Det A N .", "[4,7] S -> NP . VP",
                              "[5,6] A -> tall ."});

  CHECK(r.metrics.tasks_executed == 9);
  CHECK(r.metrics.edges_added == 6);
  CHECK(r.metrics.edges_removed == 4);
  CHECK(r.metrics.edges_recreated == 3);
  CHECK(r.metrics.prepare_renumbered == 10);
  CHECK(r.metrics.work() == 19);
}

TEST_CASE("worked example, top-down strategy both directions") {
  Grammar g = Grammar::from_file(GRAMMAR_DIR "/fig4.cfg");

  Configuration del = make_configuration(g, kLong, Strategy::TopDown);
  EditResult rd = apply_edit(g, del, Modification::deletion(5, 1));
  check_matches_batch(g, del);
  CHECK(names(g, rd.removed_old_coords) ==
        std::set<std::string>{"[4,6] NP -> Det A . N", "[4,7] NP -> Det A N .",
                              "[5,6] A -> tall ."});
  CHECK(names(g, rd.recreated) == std::set<std::string>{"[3,6] VP -> V NP ."});
  CHECK(rd.metrics.tasks_executed == 2);
  CHECK(rd.metrics.edges_added == 2);
  CHECK(rd.metrics.edges_removed == 4);
  CHECK(rd.metrics.edges_recreated == 1);
  CHECK(rd.metrics.prepare_renumbered == 6);
  CHECK(rd.metrics.work() == 8);

  Configuration ins = make_configuration(g, kShort, Strategy::TopDown);
  EditResult ri = apply_edit(g, ins, Modification::insertion(5, {"tall"}));
  check_matches_batch(g, ins);
  CHECK(names(g, ri.removed_old_coords) == std::set<std::string>{"[4,6] NP -> Det N ."});
  CHECK(names(g, ri.recreated) == std::set<std::string>{"[3,7] VP -> V NP ."});
  CHECK(ri.metrics.tasks_executed == 5);
  CHECK(ri.metrics.edges_added == 4);
  CHECK(ri.metrics.edges_removed == 2);
  CHECK(ri.metrics.edges_recreated == 1);
  CHECK(ri.metrics.prepare_renumbered == 5);
  CHECK(ri.metrics.work() == 11);
}

TEST_CASE("inverse edits restore the original chart exactly") {
  Grammar g = Grammar::from_file(GRAMMAR_DIR "/fig4.cfg");
  for (Strategy s : {Strategy::BottomUp, Strategy::TopDown}) {
    Configuration cfg = make_configuration(g, kLong, s);
    std::string before_chart = cfg.chart.dump(g);
    apply_edit(g, cfg, Modification::deletion(5, 1));
    apply_edit(g, cfg, Modification::insertion(5, {"tall"}));
    CHECK(cfg.tokens == kLong);
    CHECK(cfg.chart.dump(g) == before_chart);
    CHECK(cfg.deps.inverse_consistent());
  }
}

TEST_CASE("unbounded engine yields the same chart at no lower cost") {
  Grammar g = Grammar::from_file(GRAMMAR_DIR "/fig4.cfg");
  for (Strategy s : {Strategy::BottomUp, Strategy::TopDown}) {
    for (bool deletion : {true, false}) {
      Modification mod = deletion ? Modification::deletion(5, 1)
                                  : Modification::insertion(5, {"tall"});
      Configuration a = make_configuration(g, deletion ? kLong : kShort, s);
      Configuration b = make_configuration(g, deletion ? kLong : kShort, s);
      EditResult ra = apply_edit(g, a, mod);
      EditResult rb = apply_edit_unbounded(g, b, mod);
      CHECK(a.chart.dump(g) == b.chart.dump(g));
      CHECK(rb.metrics.work() >= ra.metrics.work());
    }
  }
  // Frozen baseline costs for the bottom-up pair (bounded: 16 and 19).
  Configuration c1 = make_configuration(g, kLong, Strategy::BottomUp);
  CHECK(apply_edit_unbounded(g, c1, Modification::deletion(5, 1)).metrics.work() == 21);
  Configuration c2 = make_configuration(g, kShort, Strategy::BottomUp);
  CHECK(apply_edit_unbounded(g, c2, Modification::insertion(5, {"tall"})).metrics.work() == 24);
}

TEST_CASE("multi-token and boundary modifications") {
  Grammar g = Grammar::from_file(GRAMMAR_DIR "/fig4.cfg");
  for (Strategy s : {Strategy::BottomUp, Strategy::TopDown}) {
    Configuration cfg = make_configuration(g, kShort, s);
    // m = 3 insertion in the middle.
    apply_edit(g, cfg, Modification::insertion(4, {"the", "tall", "ships"}));
    check_matches_batch(g, cfg);
    // Append at n+1.
    apply_edit(g, cfg, Modification::insertion(static_cast<int>(cfg.tokens.size()) + 1, {"man"}));
    check_matches_batch(g, cfg);
    // Delete the whole prefix.
    apply_edit(g, cfg, Modification::deletion(1, 4));
    check_matches_batch(g, cfg);
    // Delete everything that is left.
    apply_edit(g, cfg, Modification::deletion(1, static_cast<int>(cfg.tokens.size())));
    CHECK(cfg.tokens.empty());
    check_matches_batch(g, cfg);
    // Grow back from empty.
    apply_edit(g, cfg, Modification::insertion(1, kLong));
    check_matches_batch(g, cfg);
  }
}

TEST_CASE("invalid modifications are rejected and leave the configuration intact") {
  Grammar g = Grammar::from_file(GRAMMAR_DIR "/fig4.cfg");
  Configuration cfg = make_configuration(g, kShort, Strategy::BottomUp);
  std::string chart = cfg.chart.dump(g);
  std::vector<std::string> toks = cfg.tokens;

  CHECK_THROWS_AS(apply_edit(g, cfg, Modification::insertion(0, {"x"})), InvalidModification);
  CHECK_THROWS_AS(apply_edit(g, cfg, Modification::insertion(7, {"x"})), InvalidModification);
  CHECK_THROWS_AS(apply_edit(g, cfg, Modification::insertion(2, {})), InvalidModification);
  CHECK_THROWS_AS(apply_edit(g, cfg, Modification::deletion(2, 0)), InvalidModification);
  CHECK_THROWS_AS(apply_edit(g, cfg, Modification::deletion(5, 2)), InvalidModification);
  CHECK_THROWS_AS(apply_edit(g, cfg, Modification::deletion(6, 1)), InvalidModification);

  CHECK(cfg.tokens == toks);
  CHECK(cfg.chart.dump(g) == chart);
}

TEST_CASE("an edit with no grammatical impact still pays for the modification") {
  Grammar g = Grammar::from_file(GRAMMAR_DIR "/fig4.cfg");
  Configuration cfg = make_configuration(g, kShort, Strategy::BottomUp);
  // "zzz" is not in the lexicon; nothing can be built over it.
  EditResult r = apply_edit(g, cfg, Modification::insertion(6, {"zzz"}));
  check_matches_batch(g, cfg);
  CHECK(r.added_new_coords.empty());
  apply_edit(g, cfg, Modification::deletion(6, 1));
  check_matches_batch(g, cfg);
  CHECK(cfg.tokens == kShort);
}

TEST_CASE("repeated edits keep the dependency relation healthy") {
  Grammar g = Grammar::from_file(GRAMMAR_DIR "/list.cfg");
  Configuration cfg = make_configuration(g, {"begin", "x", "x", "the", "dog", "the", "dog"},
                                         Strategy::BottomUp);
  for (int i = 0; i < 10; ++i) {
    apply_edit(g, cfg, Modification::deletion(4, 2));
    apply_edit(g, cfg, Modification::insertion(4, {"the", "dog"}));
    check_matches_batch(g, cfg);
    CHECK(cfg.deps.inverse_consistent());
  }
}
