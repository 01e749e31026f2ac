import json

import pytest
from hypothesis import given, settings, strategies as st

from seqdyn.fixtures import fixture_document, load_fixture
from seqdyn.game import (ROOT, GameError, ProfileCapError, StrategyProfile, diff, enumerate_profiles, format_node,
                         lies_along, load_game, outcome_from, outcome_of, parse_node, parse_profile, subgame,
                         substrategy)
from seqdyn.harness import GenParams, gen_game

from conftest import P, names


def test_fig1_structure(fig1):
    assert len(fig1.internal_nodes) == 2
    assert set(fig1.terminal_nodes) == {("l",), ("r", "l"), ("r", "r")}
    assert fig1.internal_nodes == ((), ("r",))
    assert fig1.owner[()] == "1" and fig1.owner[("r",)] == "2"


def test_single_leaf():
    g = load_game({"tree": {"outcome": "x"}, "preferences": {}})
    assert g.internal_nodes == ()
    profiles = enumerate_profiles(g)
    assert len(profiles) == 1 and profiles[0].actions == ()
    assert outcome_of(g, profiles[0]) == "x"


def test_fig5_left_has_eight_profiles(fig5_left):
    assert len(fig5_left.internal_nodes) == 3
    assert fig5_left.profile_count() == 8 == len(enumerate_profiles(fig5_left))


def test_enumeration_order(fig1):
    assert [s.name() for s in enumerate_profiles(fig1)] == ["ll", "lr", "rl", "rr"]


def test_outcomes(fig1):
    assert outcome_of(fig1, P(fig1, "rl")) == "y"
    assert outcome_of(fig1, P(fig1, "ll")) == "x"
    assert outcome_of(fig1, P(fig1, "rr")) == "z"


def test_subgame(fig1, fig5_left):
    sub = subgame(fig1, ("r",))
    assert sub.internal_nodes == ((),) and sub.owner[()] == "2"
    assert set(sub.payoff.values()) == {"y", "z"}
    assert subgame(fig1, ROOT) is fig1
    sub5 = subgame(fig5_left, ("r",))
    assert sub5.internal_nodes == ((), ("r",))
    assert sub5.owner[()] == "2" and sub5.owner[("r",)] == "1"
    assert sub5.payoff[("l",)] == "w"
    assert sub.prefs == fig1.prefs and sub.outcomes == fig1.outcomes


def test_subgame_rejects_terminal(fig1):
    with pytest.raises(GameError):
        subgame(fig1, ("l",))
    with pytest.raises(GameError):
        subgame(fig1, ("q",))


def test_substrategy(fig1, fig5_left):
    s = P(fig1, "rl")
    t = substrategy(s, ("r",))
    assert t.actions == ("l",)
    assert outcome_of(subgame(fig1, ("r",)), t) == "y"
    assert substrategy(s, ROOT) == s
    u = substrategy(P(fig5_left, "rrl"), ("r", "r"))
    assert u.actions == ("l",)
    assert outcome_of(subgame(fig5_left, ("r", "r")), u) == "z"


def test_lies_along(fig1):
    assert lies_along(fig1, P(fig1, "rr"), ("r",))
    assert not lies_along(fig1, P(fig1, "lr"), ("r",))
    for s in enumerate_profiles(fig1):
        assert lies_along(fig1, s, ROOT)


def test_diff(fig1):
    d = diff(fig1, P(fig1, "ll"), P(fig1, "rr"))
    assert d.nodes == {(), ("r",)} and d.players == {"1", "2"}
    assert not diff(fig1, P(fig1, "ll"), P(fig1, "ll"))
    d = diff(fig1, P(fig1, "rr"), P(fig1, "rl"))
    assert d.nodes == {("r",)} and d.players == {"2"}


def test_profile_names(fig1):
    s = P(fig1, "rl")
    assert s.name(long=True) == "/=r,/r=l"
    assert parse_profile(fig1, "/r=l,/=r") == s
    assert str(s) == "rl"
    with pytest.raises(GameError):
        parse_profile(fig1, "rx")
    with pytest.raises(GameError):
        parse_profile(fig1, "r")
    with pytest.raises(GameError):
        parse_profile(fig1, "/=r")


def test_node_format_roundtrip():
    for h in [(), ("r",), ("r", "l")]:
        assert parse_node(format_node(h)) == h
    with pytest.raises(GameError):
        parse_node("r")


@pytest.mark.parametrize("doc, fragment", [
    ("{", "invalid JSON"),
    ({"preferences": {}}, "tree"),
    ({"tree": {"player": "1"}}, "player"),
    ({"tree": {"player": "1", "moves": {}}}, "no moves"),
    ({"tree": {"moves": {"a": {"outcome": "x"}}}}, "player"),
    ({"tree": {"outcome": "x", "player": "1"}}, "extra keys"),
    ({"tree": {"outcome": "x"}, "preferences": {"1": {"pairs": [["x", "q"]]}}}, "q"),
    ({"tree": {"outcome": "x"}, "preferences": {"1": {"pairs": [["x"]]}}}, "2-element"),
    ({"tree": {"outcome": "x"}, "preferences": {"1": {"ranking": [["x"]], "pairs": []}}}, "exactly one"),
    ({"tree": {"outcome": "x"}, "bogus": 1}, "unknown"),
    ({"tree": {"player": "1", "moves": {"": {"outcome": "x"}}}}, "empty action"),
    ({"tree": {"outcome": "x"}, "players": ["1", "1"]}, "duplicate"),
])
def test_load_errors(doc, fragment):
    text = doc if isinstance(doc, str) else json.dumps(doc)
    with pytest.raises(GameError, match=fragment):
        load_game(text)


def test_owner_must_be_a_player():
    with pytest.raises(GameError):
        load_game({"tree": {"player": "2", "moves": {"a": {"outcome": "x"}}}, "players": ["1"]})


def test_document_roundtrip():
    for name in ("fig1", "fig4_left", "fig5_right", "leaf"):
        g = load_fixture(name)
        again = load_game(json.dumps(g.to_document()))
        assert again == g
        assert load_game(fixture_document(name)) == g


def test_cap(fig5_left, monkeypatch):
    with pytest.raises(ProfileCapError):
        enumerate_profiles(fig5_left, cap=7)
    monkeypatch.setenv("SEQDYN_PROFILE_CAP", "4")
    with pytest.raises(ProfileCapError):
        enumerate_profiles(fig5_left)
    monkeypatch.setenv("SEQDYN_PROFILE_CAP", "lots")
    with pytest.raises(GameError):
        enumerate_profiles(fig5_left)


def test_profile_is_immutable(fig1):
    s = P(fig1, "ll")
    with pytest.raises(AttributeError):
        s.actions = ("r", "r")
    with pytest.raises(TypeError):
        fig1.owner[()] = "2"
    assert s.replace({("r",): "r"}).name() == "lr"
    assert isinstance(s, StrategyProfile)


games = st.builds(lambda seed: gen_game(GenParams(seed=seed, pref_kind="arbitrary")),
                  st.integers(0, 2**64 - 1))


@settings(max_examples=60, deadline=None)
@given(games)
def test_structural_invariants(g):
    profiles = enumerate_profiles(g)
    assert len(profiles) == len(set(profiles)) == g.profile_count()
    for s in profiles:
        assert outcome_of(g, s) in g.outcomes
        assert substrategy(s, ROOT) == s
        for h in g.internal_nodes:
            assert outcome_of(subgame(g, h), substrategy(s, h)) == outcome_from(g, s, h)
    for s in profiles[:6]:
        for t in profiles[:6]:
            d = diff(g, s, t)
            assert d == diff(g, t, s)
            assert d.players == {g.owner[h] for h in d.nodes}
        assert not diff(g, s, s)
    assert names(profiles) == {s.name() for s in profiles}
