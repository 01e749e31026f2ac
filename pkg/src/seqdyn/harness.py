"""Random game generators and randomized checks of the termination results.

Every claim has a checker that receives one generated game and returns
``None`` when the claim holds on it, ``SKIP`` when the game falls outside
the claim's hypothesis, or a JSON-ready counterexample.  :func:`verify`
runs a checker over seeded trials plus the bundled fixtures.
"""

from __future__ import annotations

import dataclasses
import itertools
import json
import random
import string
from dataclasses import dataclass
from typing import Any, Callable, Mapping

from .dynamics import (DynamicsSpec, build_graph, cycle_witness, decompose_si_step, satisfies, terminal_profiles,
                       terminates, terminates_for_acyclic)
from .equilibria import equilibrium_sets, is_nash, is_spe
from .fixtures import load_fixture, load_fixture_prefs
from .game import Game, diff, enumerate_profiles, parse_profile, profile_cap
from .prefs import (PreferenceProfile, PreferenceRelation, is_acyclic, is_layerable_oracle, is_strict_linear_order,
                    is_strict_weak_order, layer_partition, layerable_linear_extension, main_pattern_witness,
                    out_of_main_pattern, out_of_pattern, secondary_pattern_witness)

PREF_KINDS = ("arbitrary", "acyclic", "partial-order", "swo", "slo", "layered-swo", "cyclic")
SKIP = "skip"


class GenParamsError(ValueError):
    pass


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    max_depth: int = 4
    max_branching: int = 3
    num_players: int = 3
    num_outcomes: int = 5
    pref_kind: str = "acyclic"
    max_profiles: int = 64
    max_nodes: int | None = None

    def __post_init__(self) -> None:
        if self.pref_kind not in PREF_KINDS:
            raise GenParamsError(f"unknown pref_kind {self.pref_kind!r}")
        if self.max_depth < 0 or self.max_branching < 2:
            raise GenParamsError("need max_depth >= 0 and max_branching >= 2")
        if self.num_players < 1 or not 1 <= self.num_outcomes <= len(string.ascii_lowercase):
            raise GenParamsError("need at least one player and 1..26 outcomes")
        if self.pref_kind == "cyclic" and self.num_outcomes < 2:
            raise GenParamsError("cyclic preferences need at least two outcomes")
        if not 1 <= self.max_profiles <= profile_cap():
            raise GenParamsError(f"max_profiles must lie in 1..{profile_cap()}")
        if self.max_nodes is not None and self.max_nodes < 1:
            raise GenParamsError("max_nodes must be positive")

    def with_seed(self, seed: int) -> GenParams:
        return dataclasses.replace(self, seed=seed)


def _action_labels(k: int) -> tuple[str, ...]:
    return {2: ("l", "r"), 3: ("l", "m", "r")}.get(k) or tuple(string.ascii_lowercase[:k])


def _random_partition(rng: random.Random, outcomes: list[str]) -> list[list[str]]:
    order = outcomes[:]
    rng.shuffle(order)
    classes: list[list[str]] = []
    for o in order:
        if classes and rng.random() < 0.5:
            classes[-1].append(o)
        else:
            classes.append([o])
    return classes


def _relation(rng: random.Random, outcomes: list[str], kind: str) -> PreferenceRelation:
    if kind == "arbitrary":
        pairs = [(x, y) for x in outcomes for y in outcomes if x != y and rng.random() < 1 / 3]
        return PreferenceRelation.from_pairs(pairs, outcomes)
    if kind in ("acyclic", "partial-order"):
        order = outcomes[:]
        rng.shuffle(order)
        pairs = [(order[a], order[b]) for a in range(len(order)) for b in range(a + 1, len(order))
                 if rng.random() < 0.5]
        if kind == "partial-order":
            closed = set(pairs)
            for m in order:
                for x in order:
                    for y in order:
                        if (x, m) in closed and (m, y) in closed:
                            closed.add((x, y))
            pairs = sorted(closed)
        return PreferenceRelation.from_pairs(pairs, outcomes)
    if kind == "swo":
        return PreferenceRelation.from_ranking(_random_partition(rng, outcomes), outcomes)
    if kind == "slo":
        order = outcomes[:]
        rng.shuffle(order)
        return PreferenceRelation.from_sequence(order)
    raise GenParamsError(f"no per-player sampler for {kind!r}")


def _layered_profile(rng: random.Random, players: list[str], outcomes: list[str]) -> dict[str, list[list[str]]]:
    # Shared layers; inside a layer each player ranks by a coarsening of a
    # common order or of its reverse, so no two players agree on one pair
    # while disagreeing on another.
    layers = _random_partition(rng, outcomes)
    rankings: dict[str, list[list[str]]] = {p: [] for p in players}
    for layer in layers:
        base = layer[:]
        rng.shuffle(base)
        for p in players:
            seq = base if rng.random() < 0.5 else base[::-1]
            classes: list[list[str]] = []
            for o in seq:
                if classes and rng.random() < 0.3:
                    classes[-1].append(o)
                else:
                    classes.append([o])
            rankings[p].extend(classes)
    return rankings


def gen_preferences(rng: random.Random, players: list[str], outcomes: list[str], kind: str) -> dict[str, PreferenceRelation]:
    if kind == "layered-swo":
        return {p: PreferenceRelation.from_ranking(r, outcomes)
                for p, r in _layered_profile(rng, players, outcomes).items()}
    if kind == "cyclic":
        prefs = {p: _relation(rng, outcomes, "acyclic") for p in players}
        chosen = [p for p in players if rng.random() < 0.5] or [rng.choice(players)]
        for p in chosen:
            rel = prefs[p]
            if rel.strict:
                x, y = rng.choice(sorted(rel.strict))
                extra = {(y, x)}
            else:
                x, y = rng.sample(outcomes, 2)
                extra = {(x, y), (y, x)}
            prefs[p] = PreferenceRelation(rel.outcomes, rel.strict | extra)
        return prefs
    return {p: _relation(rng, outcomes, kind) for p in players}


def gen_profile(p: GenParams) -> dict[str, PreferenceRelation]:
    """Preference profile only, drawn exactly as :func:`gen_game` draws it."""
    return dict(gen_game(p).prefs)


def gen_game(p: GenParams) -> Game:
    """Seed-deterministic random game within the bounds of ``p``."""
    rng = random.Random(p.seed)
    players = [str(k + 1) for k in range(p.num_players)]
    outcomes = list(string.ascii_lowercase[:p.num_outcomes])

    profiles = 1
    node_count = 1
    root: dict[str, Any] = {}
    queue: list[tuple[dict[str, Any], int]] = [(root, 0)]
    while queue:
        slot, depth = queue.pop(0)
        budget = min(p.max_branching, p.max_profiles // profiles)
        if p.max_nodes is not None:
            budget = min(budget, p.max_nodes - node_count)
        internal = depth < p.max_depth and budget >= 2 and (depth == 0 or rng.random() < 0.5)
        if not internal:
            slot["outcome"] = rng.choice(outcomes)
            continue
        k = rng.randint(2, budget)
        profiles *= k
        node_count += k
        slot["player"] = rng.choice(players)
        slot["moves"] = {}
        for a in _action_labels(k):
            child: dict[str, Any] = {}
            slot["moves"][a] = child
            queue.append((child, depth + 1))

    prefs = gen_preferences(rng, players, outcomes, p.pref_kind)
    return Game.from_tree(root, prefs, players=players, outcomes=outcomes)


# -- witness constructions --------------------------------------------------


def fan_game(player: str, rel: PreferenceRelation, players: tuple[str, ...] | None = None) -> Game:
    """One node owned by ``player`` with one leaf per outcome of ``rel``."""
    outcomes = rel.sorted_outcomes
    tree = {"player": player, "moves": {a: {"outcome": o} for a, o in zip(string.ascii_lowercase, outcomes)}}
    return Game.from_tree(tree, {player: rel}, players=players or (player,), outcomes=outcomes)


def main_pattern_game(prefs: PreferenceProfile, witness: tuple[str, str, str, str, str]) -> Game:
    """Two-node game whose coalition dynamics has no terminal profile."""
    x, y, z, i, j = witness
    tree = {"player": i, "moves": {"l": {"outcome": y},
                                   "r": {"player": j, "moves": {"l": {"outcome": x}, "r": {"outcome": z}}}}}
    return Game.from_tree(tree, dict(prefs), players=list(prefs))


def secondary_pattern_game(prefs: PreferenceProfile, witness: tuple[str, str, str, str, str, str]) -> Game:
    w, x, y, z, i, j = witness
    tree = {"player": i, "moves": {
        "l": {"outcome": x},
        "r": {"player": j, "moves": {
            "l": {"outcome": w},
            "r": {"player": i, "moves": {"l": {"outcome": z}, "r": {"outcome": y}}}}}}}
    return Game.from_tree(tree, dict(prefs), players=list(prefs))


def pattern_game(prefs: PreferenceProfile) -> Game | None:
    main = main_pattern_witness(prefs)
    if main is not None:
        return main_pattern_game(prefs, main)
    secondary = secondary_pattern_witness(prefs)
    if secondary is not None:
        return secondary_pattern_game(prefs, secondary)
    return None


# -- claim checkers ---------------------------------------------------------


def _names(profiles) -> list[str]:
    return [s.name(long=True) for s in profiles]


def _all(prefs: PreferenceProfile, pred) -> bool:
    return all(pred(r) for r in prefs.values())


def _graph(g: Game, *props: str):
    return build_graph(g, DynamicsSpec.of(*props))


def _check_thm1(g: Game):
    if not _all(g.prefs, is_acyclic):
        return SKIP
    si = _graph(g, "SI")
    cycle = cycle_witness(si)
    if cycle is not None:
        return {"reason": "SI graph has a cycle", "cycle": _names(cycle)}
    spe = set(equilibrium_sets(g).spe)
    for props in (("SI",), ("SI", "A"), ("SI", "1P")):
        term = set(terminal_profiles(_graph(g, *props)))
        if term != spe:
            return {"reason": f"terminal profiles of {props} differ from SPEs",
                    "terminal": sorted(_names(term)), "spe": sorted(_names(spe))}
    return None


def _fan_cycles(g: Game, props: tuple[str, ...]):
    for p, rel in g.prefs.items():
        if not is_acyclic(rel) and terminates(_graph(fan_game(p, rel), *props)):
            return {"reason": f"fan game for cyclic player {p} terminates under {props}"}
    return None


def _check_prop1(g: Game):
    if _all(g.prefs, is_acyclic):
        cycle = cycle_witness(_graph(g, "SI"))
        return None if cycle is None else {"reason": "SI graph has a cycle", "cycle": _names(cycle)}
    return _fan_cycles(g, ("SI",))


def _check_prop2(g: Game):
    term = set(terminal_profiles(_graph(g, "SI")))
    missing = [s for s in enumerate_profiles(g) if is_spe(g, s) and s not in term]
    return {"reason": "SPE not terminal under SI", "profiles": _names(missing)} if missing else None


def _check_prop3(g: Game):
    bad = [s for s in terminal_profiles(_graph(g, "SI", "A")) if not is_spe(g, s)]
    return {"reason": "{SI,A}-terminal profile is not an SPE", "profiles": _names(bad)} if bad else None


def _check_lemma1(g: Game):
    for s, t in itertools.product(enumerate_profiles(g), repeat=2):
        if satisfies("A", g, s, t) and not satisfies("1P", g, s, t):
            return {"reason": "A without 1P", "pair": _names((s, t))}
    return None


def _check_lemma2(g: Game):
    graph = _graph(g, "SI")
    for a, b in graph.edges:
        src, dst = graph.vertices[a], graph.vertices[b]
        pair = _names((src, dst))
        try:
            chain = decompose_si_step(g, src, dst)
        except ValueError as exc:
            return {"reason": str(exc), "pair": pair}
        hops_ok = all(a != b and satisfies("SI", g, a, b) and satisfies("A", g, a, b)
                      for a, b in zip(chain, chain[1:]))
        if not hops_ok or chain[-1] != dst or len(chain) - 1 != len(diff(g, src, dst).nodes):
            return {"reason": "invalid atomic chain", "pair": pair, "chain": _names(chain)}
    return None


EQUIV_SETS = [("I", "A") + extra for r in range(4) for extra in itertools.combinations(("SI", "L", "1P"), r)]


def _check_prop_equiv(g: Game):
    base = _graph(g, "I", "A").named_edges(long=True)
    for props in EQUIV_SETS[1:]:
        other = _graph(g, *props).named_edges(long=True)
        if other != base:
            return {"reason": f"edges of {props} differ from {{I,A}}",
                    "symmetric_difference": sorted(map(list, other ^ base))}
    return None


def _check_cor_ia(g: Game):
    if _all(g.prefs, is_acyclic):
        cycle = cycle_witness(_graph(g, "I", "A"))
        return None if cycle is None else {"reason": "{I,A} graph has a cycle", "cycle": _names(cycle)}
    return _fan_cycles(g, ("I", "A"))


def _check_prop_ne_ia(g: Game):
    term = set(terminal_profiles(_graph(g, "I", "A")))
    missing = [s for s in enumerate_profiles(g) if is_nash(g, s) and s not in term]
    return {"reason": "NE not terminal under {I,A}", "profiles": _names(missing)} if missing else None


def _check_prop_cyclic(g: Game):
    cyclic = {p for p, r in g.prefs.items() if not is_acyclic(r)}
    graph = build_graph(g, DynamicsSpec.mixed(cyclic))
    if not terminates_for_acyclic(graph, cyclic):
        return {"reason": "acyclic player updates on a cycle", "cyclic": sorted(cyclic)}
    return None


def _no_sne_witness(prefs: PreferenceProfile):
    game = pattern_game(prefs)
    if game is None:
        return {"reason": "pattern reported but no witness game built"}
    if terminal_profiles(_graph(game, "I", "L")) or equilibrium_sets(game).sne:
        return {"reason": "pattern witness game has an SNE", "game": game.to_document()}
    return None


def _check_layered_terminates(g: Game):
    graph = _graph(g, "I", "L")
    cycle = cycle_witness(graph)
    if cycle is not None:
        return {"reason": "{I,L} graph has a cycle", "cycle": _names(cycle)}
    term = set(terminal_profiles(graph))
    sne = set(equilibrium_sets(g).sne)
    if not term or term != sne:
        return {"reason": "{I,L} terminals differ from SNEs", "terminal": sorted(_names(term)),
                "sne": sorted(_names(sne))}
    return None


def _check_thm_swo(g: Game):
    if not _all(g.prefs, is_strict_weak_order):
        return SKIP
    if layer_partition(g.prefs) is not None:
        found = _check_layered_terminates(g)
        if found:
            return found
        if not out_of_pattern(g.prefs):
            return {"reason": "layerable profile contains a pattern"}
        return None
    if not out_of_pattern(g.prefs):
        return _no_sne_witness(g.prefs)
    return None


def _check_cor_slo_2p(g: Game):
    prefs = g.prefs
    slo = _all(prefs, is_strict_linear_order)
    two_swo = len(prefs) == 2 and _all(prefs, is_strict_weak_order)
    if not (slo or two_swo):
        return SKIP
    clean = out_of_pattern(prefs)
    if clean != (layer_partition(prefs) is not None):
        return {"reason": "out-of-pattern and layerability disagree", "out_of_pattern": clean}
    return _check_layered_terminates(g) if clean else _no_sne_witness(prefs)


def _check_slo_pattern(g: Game):
    prefs = g.prefs
    if not _all(prefs, is_strict_linear_order):
        return SKIP
    verdicts = {"out_of_pattern": out_of_pattern(prefs), "out_of_main_pattern": out_of_main_pattern(prefs),
                "layer_partition": layer_partition(prefs) is not None, "oracle": is_layerable_oracle(prefs)}
    return None if len(set(verdicts.values())) == 1 else {"reason": "verdicts disagree", **verdicts}


def _extension_ok(prefs: PreferenceProfile, ext: Mapping[str, PreferenceRelation]) -> bool:
    return (set(ext) == set(prefs)
            and all(is_strict_linear_order(ext[p]) and prefs[p].strict <= ext[p].strict for p in prefs)
            and layer_partition(ext) is not None)


def _check_prop_2p(g: Game):
    prefs = g.prefs
    if len(prefs) != 2 or not _all(prefs, is_strict_weak_order):
        return SKIP
    ext = layerable_linear_extension(prefs)
    verdicts = {"out_of_pattern": out_of_pattern(prefs), "layer_partition": layer_partition(prefs) is not None,
                "extension": ext is not None}
    if len(set(verdicts.values())) != 1:
        return {"reason": "verdicts disagree", **verdicts}
    if ext is not None and not _extension_ok(prefs, ext):
        return {"reason": "returned extension is not a layerable strict linear extension"}
    return None


# -- fixture checks ---------------------------------------------------------

# Stored non-implications between update properties: (property, property) ->
# (fixture, s, t) with (s, t) satisfying the first and not the second.
NON_IMPLICATIONS: dict[tuple[str, str], tuple[str, str, str]] = {
    ("I", "SI"): ("fig1", "ll", "rr"),
    ("I", "L"): ("fig4_right", "rl", "lr"),
    ("I", "1P"): ("fig1", "ll", "rr"),
    ("I", "A"): ("fig1", "ll", "rr"),
    ("SI", "I"): ("fig1", "lr", "ll"),
    ("SI", "L"): ("fig1", "lr", "ll"),
    ("SI", "1P"): ("fig1_variant", "ll", "rr"),
    ("SI", "A"): ("fig4_right", "ll", "rr"),
    ("L", "I"): ("fig1", "ll", "rl"),
    ("L", "SI"): ("fig1", "ll", "rl"),
    ("L", "1P"): ("fig1", "ll", "rr"),
    ("L", "A"): ("fig1", "ll", "rr"),
    ("1P", "I"): ("fig1", "ll", "lr"),
    ("1P", "SI"): ("fig1", "ll", "lr"),
    ("1P", "L"): ("fig1", "ll", "lr"),
    ("1P", "A"): ("fig4_right", "ll", "rr"),
    ("A", "I"): ("fig1", "ll", "lr"),
    ("A", "SI"): ("fig1", "ll", "lr"),
    ("A", "L"): ("fig1", "ll", "lr"),
}


def _fixture_lemma1() -> list[dict[str, Any]]:
    results = []
    for (x, y), (name, a, b) in sorted(NON_IMPLICATIONS.items()):
        g = load_fixture(name)
        s, t = parse_profile(g, a), parse_profile(g, b)
        ok = satisfies(x, g, s, t) and not satisfies(y, g, s, t)
        results.append({"name": f"{x}-not-implies-{y}", "ok": ok, "detail": f"{name}: ({a}, {b})"})
    return results


def _fixture_games(checker: Callable[[Game], Any], names) -> list[dict[str, Any]]:
    out = []
    for name in names:
        found = checker(load_fixture(name))
        out.append({"name": name, "ok": found is None or found == SKIP,
                    "detail": "skipped" if found == SKIP else found})
    return out


def _fixture_ne_ia() -> list[dict[str, Any]]:
    g = load_fixture("fig4_right")
    ll = parse_profile(g, "ll")
    strict = ll in terminal_profiles(_graph(g, "I", "A")) and not is_nash(g, ll)
    return [{"name": "fig4_right terminal non-NE", "ok": strict, "detail": "ll terminal under {I,A}, not NE"}]


def _fixture_cyclic() -> list[dict[str, Any]]:
    g = load_fixture("fig4_left")
    mixed = terminates_for_acyclic(build_graph(g, DynamicsSpec.mixed({"2"})), {"2"})
    plain = terminates_for_acyclic(_graph(g, "SI"), {"2"})
    return [{"name": "fig4_left mixed", "ok": mixed, "detail": "lazy cyclic player: acyclic player stops"},
            {"name": "fig4_left plain SI", "ok": not plain, "detail": "SI cyclic player: player 1 cycles"}]


def _fixture_swo() -> list[dict[str, Any]]:
    out = []
    for name in ("fig1", "fig5_left"):
        g = load_fixture(name)
        has_pattern = not out_of_pattern(g.prefs)
        no_sne = not equilibrium_sets(g).sne and not terminal_profiles(_graph(g, "I", "L"))
        out.append({"name": f"{name} pattern without SNE", "ok": has_pattern and no_sne, "detail": None})
    g = load_fixture("fig5_right")
    out.append({"name": "fig5_right out of pattern without SNE",
                "ok": out_of_pattern(g.prefs) and not equilibrium_sets(g).sne, "detail": "(4) does not give (3)"})
    prefs = load_fixture_prefs("terminating_not_layerable")
    out.append({"name": "terminating_not_layerable", "ok": layer_partition(prefs) is None
                and not is_layerable_oracle(prefs) and out_of_pattern(prefs), "detail": "(2) does not give (1)"})
    prefs = load_fixture_prefs("out_of_pattern_not_layerable")
    out.append({"name": "out_of_pattern_not_layerable", "ok": out_of_pattern(prefs)
                and layer_partition(prefs) is None, "detail": None})
    return out


def _fixture_prefs(names, checker) -> list[dict[str, Any]]:
    out = []
    for name in names:
        prefs = load_fixture_prefs(name)
        outcomes = sorted({o for r in prefs.values() for o in r.outcomes})
        g = Game.from_tree({"outcome": outcomes[0]}, prefs, players=list(prefs), outcomes=outcomes)
        found = checker(g)
        out.append({"name": name, "ok": found is None or found == SKIP,
                    "detail": "skipped" if found == SKIP else found})
    return out


@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    check: Callable[[Game], Any]
    defaults: Mapping[str, Any]
    fixtures: Callable[[], list[dict[str, Any]]]


_FIG_GAMES = ("fig1", "fig1_variant", "fig4_left", "fig4_right", "fig5_left", "fig5_right", "leaf")
_ACYCLIC_FIGS = ("fig1", "fig1_variant", "fig4_right", "fig5_left", "fig5_right", "leaf")

CLAIMS: dict[str, Claim] = {c.id: c for c in [
    Claim("thm1", "acyclic preferences: SI dynamics terminate; SI, {SI,A}, {SI,1P} terminals are the SPEs",
          _check_thm1, {"pref_kind": "acyclic"}, lambda: _fixture_games(_check_thm1, _ACYCLIC_FIGS)),
    Claim("prop1", "SI dynamics terminate in all games iff preferences are acyclic",
          _check_prop1, {"pref_kind": "cyclic"}, lambda: _fixture_games(_check_prop1, _FIG_GAMES)),
    Claim("prop2", "every SPE is terminal for the SI dynamics",
          _check_prop2, {"pref_kind": "arbitrary"}, lambda: _fixture_games(_check_prop2, _FIG_GAMES)),
    Claim("prop3", "every terminal profile of the {SI,A} dynamics is an SPE",
          _check_prop3, {"pref_kind": "acyclic"}, lambda: _fixture_games(_check_prop3, _ACYCLIC_FIGS)),
    Claim("lemma1", "atomic updates are one-player updates; no other property implies another",
          _check_lemma1, {"pref_kind": "arbitrary"}, _fixture_lemma1),
    Claim("lemma2", "every SI update splits into single-node {SI,A} updates",
          _check_lemma2, {"pref_kind": "arbitrary", "max_nodes": 10}, lambda: _fixture_games(_check_lemma2, _FIG_GAMES)),
    Claim("prop-equiv", "all X-dynamics with {I,A} in X have the same edges",
          _check_prop_equiv, {"pref_kind": "arbitrary"}, lambda: _fixture_games(_check_prop_equiv, _FIG_GAMES)),
    Claim("cor-ia", "{I,A} dynamics terminate in all games iff preferences are acyclic",
          _check_cor_ia, {"pref_kind": "cyclic"}, lambda: _fixture_games(_check_cor_ia, _FIG_GAMES)),
    Claim("prop-ne-ia", "every NE is terminal for the {I,A} dynamics",
          _check_prop_ne_ia, {"pref_kind": "arbitrary"}, _fixture_ne_ia),
    Claim("prop-cyclic", "with lazy cyclic players, acyclic players update finitely often",
          _check_prop_cyclic, {"pref_kind": "cyclic"}, _fixture_cyclic),
    Claim("thm-swo", "SWO: layerable => {I,L} terminates => SNE exists => out of pattern",
          _check_thm_swo, {"pref_kind": "swo"}, _fixture_swo),
    Claim("cor-slo-2p", "SLO or two-player SWO: {I,L} terminates iff SNE exists iff out of pattern",
          _check_cor_slo_2p, {"pref_kind": "slo"}, lambda: _fixture_games(_check_cor_slo_2p, _FIG_GAMES)),
    Claim("prop-slo-pattern", "SLO: out of pattern iff layerable",
          _check_slo_pattern, {"pref_kind": "slo", "num_outcomes": 6, "max_depth": 0},
          lambda: _fixture_prefs(("table2",), _check_slo_pattern)),
    Claim("prop-2p-extension", "two-player SWO: out of pattern iff a layerable linear extension exists iff layerable",
          _check_prop_2p, {"pref_kind": "swo", "num_players": 2, "num_outcomes": 6, "max_depth": 0},
          lambda: _fixture_games(_check_prop_2p, ("fig5_left",))),
]}


def trial_seeds(seed: int, trials: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(trials)]


def default_params(claim: str, seed: int = 0) -> GenParams:
    if claim not in CLAIMS:
        raise KeyError(f"unknown claim id {claim!r}; known: {', '.join(CLAIMS)}")
    return GenParams(seed=seed, **CLAIMS[claim].defaults)


def verify(claim: str, params: GenParams | None = None, trials: int = 500) -> dict[str, Any]:
    """Run one claim over seeded random games plus its fixtures."""
    if claim not in CLAIMS:
        raise KeyError(f"unknown claim id {claim!r}; known: {', '.join(CLAIMS)}")
    spec = CLAIMS[claim]
    params = default_params(claim) if params is None else params
    passed = skipped = 0
    failures = []
    for seed in trial_seeds(params.seed, trials):
        g = gen_game(params.with_seed(seed))
        found = spec.check(g)
        if found is None:
            passed += 1
        elif found == SKIP:
            skipped += 1
        else:
            failures.append({"seed": seed, "game": g.to_document(), "counterexample": found})
    fixtures = spec.fixtures()
    return {
        "claim": claim,
        "statement": spec.statement,
        "params": dataclasses.asdict(params),
        "trials": trials,
        "passed": passed,
        "skipped": skipped,
        "failed": len(failures),
        "failures": failures,
        "fixtures": fixtures,
        "ok": not failures and all(f["ok"] for f in fixtures),
    }


def report_json(report: Mapping[str, Any]) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
