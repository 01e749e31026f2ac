"""Numeric tables for a game and the backend running the pairwise edge scan.

The compiled extension ``seqdyn._edges`` is used when it was built; otherwise
(or when ``SEQDYN_PURE_PYTHON=1``) the pure-Python twin is loaded.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .game import Game, StrategyProfile

PROP_BITS = {"I": 1, "SI": 2, "L": 4, "1P": 8, "A": 16}

if os.environ.get("SEQDYN_PURE_PYTHON") == "1":
    from . import _edges_py as _backend
    BACKEND = "python"
else:
    try:
        from . import _edges as _backend  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        from . import _edges_py as _backend
        BACKEND = "python"


@dataclass(frozen=True)
class ProfileTables:
    """Integer encoding of every profile of a game.

    ``sub_out[p, k]`` is the outcome reached from internal node ``k`` under
    profile ``p``; ``on_play[p, k]`` says whether node ``k`` lies along the
    play of ``p``.
    """

    choice: np.ndarray
    outcome: np.ndarray
    sub_out: np.ndarray
    on_play: np.ndarray
    owner: np.ndarray
    pref: np.ndarray
    players: tuple[str, ...]
    outcomes: tuple[str, ...]


def tabulate(g: Game, profiles: Sequence[StrategyProfile]) -> ProfileTables:
    nodes = g.internal_nodes
    n, n_prof = len(nodes), len(profiles)
    outcomes = tuple(sorted(g.outcomes))
    out_idx = {o: k for k, o in enumerate(outcomes)}
    player_idx = {p: k for k, p in enumerate(g.players)}
    act_idx = [{a: k for k, a in enumerate(g.children[h])} for h in nodes]

    choice = np.zeros((n_prof, n), dtype=np.intc)
    for r, s in enumerate(profiles):
        choice[r] = [act_idx[k][a] for k, a in enumerate(s.actions)]

    rows = np.arange(n_prof)
    sub_out = np.zeros((n_prof, n), dtype=np.intc)
    for k in reversed(range(n)):
        h = nodes[k]
        kids = [h + (a,) for a in g.children[h]]
        is_leaf = np.array([g.is_terminal(c) for c in kids])
        leaf_out = np.array([out_idx[g.payoff[c]] if g.is_terminal(c) else 0 for c in kids], dtype=np.intc)
        child_col = np.array([0 if g.is_terminal(c) else g.node_index[c] for c in kids], dtype=np.intp)
        c = choice[:, k]
        sub_out[:, k] = np.where(is_leaf[c], leaf_out[c], sub_out[rows, child_col[c]])

    on_play = np.zeros((n_prof, n), dtype=np.uint8)
    for k, h in enumerate(nodes):
        if not h:
            on_play[:, k] = 1
            continue
        parent = g.node_index[h[:-1]]
        on_play[:, k] = on_play[:, parent] & (choice[:, parent] == act_idx[parent][h[-1]])

    if n:
        outcome = sub_out[:, 0].copy()
    else:
        outcome = np.full(n_prof, out_idx[g.payoff[()]], dtype=np.intc)

    owner = np.array([player_idx[g.owner[h]] for h in nodes], dtype=np.intc)
    pref = np.zeros((max(len(g.players), 1), len(outcomes), len(outcomes)), dtype=np.uint8)
    for p, rel in g.prefs.items():
        for x, y in rel.strict:
            pref[player_idx[p], out_idx[x], out_idx[y]] = 1
    return ProfileTables(choice, outcome, sub_out, on_play, owner, pref, g.players, outcomes)


def required_mask(properties: Iterable[str]) -> int:
    mask = 0
    for prop in properties:
        mask |= PROP_BITS[prop]
    return mask


def edge_arrays(tables: ProfileTables, properties: Iterable[str] = (),
                cyclic: Iterable[str] | None = None, backend=None) -> tuple[np.ndarray, np.ndarray]:
    """Source/target index arrays of every non-loop edge, in row-major order.

    With ``cyclic`` given the mixed rule is used and ``properties`` ignored.
    """
    backend = _backend if backend is None else backend
    mixed = cyclic is not None
    cyc_set = set(cyclic or ())
    cyc = np.array([p in cyc_set for p in tables.players] or [False], dtype=np.uint8)
    return backend.pair_edges(tables.choice, tables.outcome, tables.sub_out, tables.on_play,
                              tables.owner, tables.pref, cyc, required_mask(properties), mixed)
