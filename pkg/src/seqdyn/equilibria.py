"""Nash, subgame perfect and strong Nash equilibria by direct enumeration.

These checkers quantify over deviations exactly as the definitions do and
never use backward induction, so they stay sound for intransitive or cyclic
preferences.  Each ``*_deviation`` function returns the first profitable
deviation found (``None`` when the profile is an equilibrium).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Mapping

from .game import (ROOT, Game, NodeId, ProfileCapError, StrategyProfile, enumerate_profiles, format_node,
                   profile_cap, subgame, substrategy)

Deviation = dict[NodeId, str]


def _outcome_with(g: Game, s: StrategyProfile, override: Mapping[NodeId, str], h: NodeId = ROOT) -> str:
    while h not in g.payoff:
        a = override.get(h)
        h = h + ((s[h] if a is None else a),)
    return g.payoff[h]


def _assignments(g: Game, nodes: tuple[NodeId, ...]):
    for combo in itertools.product(*(g.children[h] for h in nodes)):
        yield dict(zip(nodes, combo))


def nash_deviation(g: Game, s: StrategyProfile) -> tuple[str, Deviation] | None:
    """First ``(player, strategy)`` that strictly improves on ``s`` alone."""
    current = _outcome_with(g, s, {})
    for i in g.players:
        rel = g.prefs[i]
        for dev in _assignments(g, g.nodes_of(i)):
            if rel.lt(current, _outcome_with(g, s, dev)):
                return i, dev
    return None


def is_nash(g: Game, s: StrategyProfile) -> bool:
    return nash_deviation(g, s) is None


def spe_deviation(g: Game, s: StrategyProfile) -> tuple[NodeId, str, Deviation] | None:
    """First subgame root ``h`` whose restriction is not a Nash equilibrium.

    The deviation is reported with absolute node paths.
    """
    for h in g.internal_nodes:
        found = nash_deviation(subgame(g, h), substrategy(s, h))
        if found is not None:
            player, dev = found
            return h, player, {h + n: a for n, a in dev.items()}
    return None


def is_spe(g: Game, s: StrategyProfile) -> bool:
    return spe_deviation(g, s) is None


def coalition_work(g: Game) -> int:
    """Number of joint deviations examined per profile by the strong check."""
    total = 0
    for size in range(1, len(g.players) + 1):
        for coalition in itertools.combinations(g.players, size):
            total += math.prod(len(g.children[h]) for h in g.internal_nodes if g.owner[h] in coalition)
    return total


def sne_deviation(g: Game, s: StrategyProfile, cap: int | None = None) -> tuple[tuple[str, ...], Deviation] | None:
    """First coalition and joint strategy making every member strictly better off."""
    cap = profile_cap() if cap is None else cap
    work = coalition_work(g)
    if work > cap:
        raise ProfileCapError(f"strong-equilibrium check needs {work} joint deviations, cap is {cap}")
    current = _outcome_with(g, s, {})
    for size in range(1, len(g.players) + 1):
        for coalition in itertools.combinations(g.players, size):
            nodes = tuple(h for h in g.internal_nodes if g.owner[h] in coalition)
            rels = [g.prefs[i] for i in coalition]
            for dev in _assignments(g, nodes):
                after = _outcome_with(g, s, dev)
                if all(r.lt(current, after) for r in rels):
                    return coalition, dev
    return None


def is_sne(g: Game, s: StrategyProfile, cap: int | None = None) -> bool:
    return sne_deviation(g, s, cap) is None


@dataclass(frozen=True)
class EquilibriumSets:
    ne: tuple[StrategyProfile, ...]
    spe: tuple[StrategyProfile, ...]
    sne: tuple[StrategyProfile, ...]


def equilibrium_sets(g: Game, profiles: list[StrategyProfile] | None = None) -> EquilibriumSets:
    profiles = enumerate_profiles(g) if profiles is None else profiles
    return EquilibriumSets(
        ne=tuple(s for s in profiles if is_nash(g, s)),
        spe=tuple(s for s in profiles if is_spe(g, s)),
        sne=tuple(s for s in profiles if is_sne(g, s)),
    )


def _dev_doc(dev: Deviation) -> dict[str, str]:
    return {format_node(h): a for h, a in sorted(dev.items())}


def equilibrium_report(g: Game, long_names: bool = False) -> dict[str, Any]:
    """Per-profile verdicts and witnesses, keyed by profile name."""
    report: dict[str, Any] = {}
    for s in enumerate_profiles(g):
        ne, spe, sne = nash_deviation(g, s), spe_deviation(g, s), sne_deviation(g, s)
        report[s.name(long_names)] = {
            "ne": ne is None,
            "spe": spe is None,
            "sne": sne is None,
            "witnesses": {
                "ne": None if ne is None else {"player": ne[0], "strategy": _dev_doc(ne[1])},
                "spe": None if spe is None else {"node": format_node(spe[0]), "player": spe[1],
                                                 "strategy": _dev_doc(spe[2])},
                "sne": None if sne is None else {"coalition": list(sne[0]), "strategy": _dev_doc(sne[1])},
            },
        }
    return report
