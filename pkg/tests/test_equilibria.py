import itertools

import pytest
from hypothesis import given, settings, strategies as st

from seqdyn.dynamics import DynamicsSpec, build_graph, terminal_profiles
from seqdyn.equilibria import (_outcome_with, coalition_work, equilibrium_report, equilibrium_sets, is_nash, is_sne,
                               is_spe, nash_deviation, sne_deviation, spe_deviation)
from seqdyn.fixtures import load_fixture
from seqdyn.game import ProfileCapError, enumerate_profiles, load_game, outcome_of
from seqdyn.harness import GenParams, gen_game
from seqdyn.prefs import is_strict_weak_order

from conftest import P, names


def test_fig1_equilibria(fig1):
    eq = equilibrium_sets(fig1)
    assert names(eq.ne) == {"ll"} and names(eq.spe) == {"ll"} and eq.sne == ()
    assert is_nash(fig1, P(fig1, "ll")) and is_spe(fig1, P(fig1, "ll"))


def test_fig1_witnesses(fig1):
    assert nash_deviation(fig1, P(fig1, "rr")) == ("2", {("r",): "l"})
    assert sne_deviation(fig1, P(fig1, "ll")) == (("1", "2"), {(): "r", ("r",): "r"})


def test_fig1_variant():
    g = load_fixture("fig1_variant")
    eq = equilibrium_sets(g)
    assert names(eq.spe) == {"rr"}
    assert "rr" in names(eq.ne) & names(eq.sne)
    assert not is_spe(g, P(g, "ll"))
    h, player, dev = spe_deviation(g, P(g, "ll"))
    assert (h, player, dev) == (("r",), "2", {("r",): "r"})


def test_leaf_game():
    g = load_fixture("leaf")
    eq = equilibrium_sets(g)
    assert len(eq.ne) == len(eq.spe) == len(eq.sne) == 1


def test_one_node_game_max_child_is_spe():
    g = load_game({"tree": {"player": "1", "moves": {"a": {"outcome": "x"}, "b": {"outcome": "y"}}},
                   "preferences": {"1": {"ranking": [["x"], ["y"]]}}})
    assert is_spe(g, P(g, "b")) and not is_spe(g, P(g, "a"))


def test_intransitive_one_shot_gap():
    # Player 1 prefers e to b only; d is incomparable to both. No single
    # node change helps from ll, but the two-node change to rr does.
    g = load_game({"tree": {"player": "1", "moves": {
        "l": {"outcome": "b"},
        "r": {"player": "1", "moves": {"l": {"outcome": "d"}, "r": {"outcome": "e"}}}}},
        "preferences": {"1": {"pairs": [["b", "e"]]}}})
    ll = P(g, "ll")
    assert not is_spe(g, ll)
    assert ll in terminal_profiles(build_graph(g, DynamicsSpec.of("SI", "A")))


def test_sne_cap(fig5_left):
    assert coalition_work(fig5_left) == 4 + 2 + 8
    with pytest.raises(ProfileCapError):
        sne_deviation(fig5_left, P(fig5_left, "lll"), cap=10)


def test_report(fig1):
    report = equilibrium_report(fig1)
    assert list(report) == ["ll", "lr", "rl", "rr"]
    assert report["ll"]["ne"] and report["ll"]["spe"] and not report["ll"]["sne"]
    assert report["ll"]["witnesses"]["sne"] == {"coalition": ["1", "2"], "strategy": {"/": "r", "/r": "r"}}
    assert report["rr"]["witnesses"]["ne"] == {"player": "2", "strategy": {"/r": "l"}}
    assert "/=l,/r=l" in equilibrium_report(fig1, long_names=True)


def test_fixture_terminal_sets():
    for name in ("fig1", "fig1_variant", "fig4_right", "fig5_left", "fig5_right", "leaf"):
        g = load_fixture(name)
        eq = equilibrium_sets(g)
        assert set(terminal_profiles(build_graph(g, DynamicsSpec.of("I", "L", "1P")))) == set(eq.ne)
        assert set(terminal_profiles(build_graph(g, DynamicsSpec.of("I", "L")))) == set(eq.sne)
        assert set(terminal_profiles(build_graph(g, DynamicsSpec.of("SI", "A")))) == set(eq.spe)


seeds = st.integers(0, 2**64 - 1)


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from(["arbitrary", "acyclic", "swo", "cyclic"]))
def test_witnesses_are_sound(seed, kind):
    g = gen_game(GenParams(seed=seed, pref_kind=kind))
    for s in enumerate_profiles(g):
        base = outcome_of(g, s)
        dev = nash_deviation(g, s)
        if dev is not None:
            player, choice = dev
            assert all(g.owner[h] == player for h in choice)
            assert g.lt(player, base, _outcome_with(g, s, choice))
        dev = sne_deviation(g, s)
        if dev is not None:
            coalition, choice = dev
            assert all(g.owner[h] in coalition for h in choice)
            after = _outcome_with(g, s, choice)
            assert all(g.lt(i, base, after) for i in coalition)
        dev = spe_deviation(g, s)
        if dev is not None:
            h, player, choice = dev
            assert all(g.owner[n] == player and n[:len(h)] == h for n in choice)
            assert g.lt(player, _outcome_with(g, s, {}, h), _outcome_with(g, s, choice, h))


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from(["arbitrary", "acyclic", "swo"]))
def test_sne_within_ne(seed, kind):
    g = gen_game(GenParams(seed=seed, pref_kind=kind))
    eq = equilibrium_sets(g)
    assert set(eq.sne) <= set(eq.ne)
    if all(is_strict_weak_order(r) for r in g.prefs.values()):
        assert set(eq.spe) <= set(eq.ne)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_one_player_sne_is_ne(seed):
    g = gen_game(GenParams(seed=seed, num_players=1, pref_kind="arbitrary"))
    for s in enumerate_profiles(g):
        assert is_sne(g, s) == is_nash(g, s)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_nash_matches_brute_force(seed):
    g = gen_game(GenParams(seed=seed, pref_kind="arbitrary", max_profiles=32))
    profiles = enumerate_profiles(g)
    for s in profiles:
        base = outcome_of(g, s)
        profitable = any(
            g.lt(i, base, outcome_of(g, t))
            for i in g.players for t in profiles
            if all(g.owner[h] == i for h, a, b in zip(s.nodes, s.actions, t.actions) if a != b))
        assert is_nash(g, s) == (not profitable)
        joint = any(
            all(g.lt(i, base, outcome_of(g, t)) for i in coalition)
            for r in range(1, len(g.players) + 1) for coalition in itertools.combinations(g.players, r)
            for t in profiles
            if all(g.owner[h] in coalition for h, a, b in zip(s.nodes, s.actions, t.actions) if a != b))
        assert is_sne(g, s) == (not joint)
