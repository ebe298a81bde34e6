import os

import pytest

import incparse

GRAMMARS = os.environ.get("INCPARSE_GRAMMAR_DIR", "grammars")
LONG = ["the", "old", "man", "the", "tall", "ships"]
SHORT = ["the", "old", "man", "the", "ships"]


@pytest.fixture(scope="module")
def fig4():
    return incparse.Grammar.from_file(os.path.join(GRAMMARS, "fig4.cfg"))


def test_grammar_properties(fig4):
    assert fig4.rule_count == 5
    assert fig4.lexicon_token_count == 5
    assert fig4.start == "S"
    assert fig4.validate() == []


def test_grammar_from_text_and_errors():
    g = incparse.Grammar.from_text("%rules\nS -> A B\n%lexicon\na <- A\nb <- B\n")
    assert g.rule_count == 1
    with pytest.raises(incparse.GrammarError, match="line 2"):
        incparse.Grammar.from_text("%rules\nbroken\n")


def test_batch_dump(fig4):
    dump = incparse.batch_dump(fig4, LONG)
    assert "[4,7] NP -> Det A N .\n" in dump
    assert dump == incparse.batch_dump(fig4, LONG, strategy="bottom-up")
    td = incparse.batch_dump(fig4, LONG, strategy="top-down")
    assert "[1,1] S -> . NP VP\n" in td


def test_session_edit_cycle(fig4):
    s = incparse.Session(fig4, LONG, oracle=True)
    m = s.delete_(5)
    assert s.tokens == SHORT
    assert m["work"] == 16
    assert m["delta"] == 5
    assert m["edges_recreated"] == 3
    lines = s.diff_report().splitlines()
    assert sum(l.startswith("M ") for l in lines) == 3
    assert sum(l.startswith("N ") for l in lines) == 1
    assert lines[-1] == "delta 5"

    m = s.insert(5, ["tall"])
    assert s.tokens == LONG
    assert m["work"] == 19
    assert s.dump() == incparse.batch_dump(fig4, LONG)
    assert s.edge_count == len(s.dump().splitlines())


def test_unbounded_engine_agrees(fig4):
    a = incparse.Session(fig4, LONG, engine="bounded")
    b = incparse.Session(fig4, LONG, engine="unbounded")
    a.delete_(5)
    b.delete_(5)
    assert a.dump() == b.dump()


def test_invalid_modification(fig4):
    s = incparse.Session(fig4, SHORT)
    with pytest.raises(incparse.InvalidModification):
        s.delete_(9)
    with pytest.raises(incparse.InvalidModification):
        s.insert(0, ["x"])
    assert s.tokens == SHORT


def test_bad_arguments(fig4):
    with pytest.raises(ValueError):
        incparse.Session(fig4, LONG, strategy="sideways")
    with pytest.raises(ValueError):
        incparse.Session(fig4, LONG, engine="turbo")
    with pytest.raises(ValueError):
        incparse.Session(fig4, LONG).diff_report()
