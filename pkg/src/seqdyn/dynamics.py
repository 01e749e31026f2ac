"""Update properties, dynamics graphs over strategy profiles, and termination.

A dynamics is described by a set of property tags among ``I``, ``SI``,
``L``, ``1P`` and ``A`` (the edge relation is the intersection of the tagged
relations), or by the mixed rule in which players outside a given cyclic set
update under ``SI`` and cyclic players under ``{I, L, 1P}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import kernel
from ._graph import find_cycle, strongly_connected_components
from .game import (Game, NodeId, ProfileDiff, StrategyProfile, diff, enumerate_profiles, lies_along,
                   outcome_of, subgame, substrategy)

PROPERTIES = ("I", "SI", "L", "1P", "A")


class DynamicsError(ValueError):
    pass


@dataclass(frozen=True)
class DynamicsSpec:
    properties: frozenset[str] = frozenset()
    cyclic_players: frozenset[str] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "properties", frozenset(self.properties))
        if self.cyclic_players is not None:
            object.__setattr__(self, "cyclic_players", frozenset(self.cyclic_players))
            if self.properties:
                raise DynamicsError("mixed dynamics cannot also carry property tags")
        elif not self.properties:
            raise DynamicsError("a dynamics needs at least one property tag")
        unknown = self.properties - set(PROPERTIES)
        if unknown:
            raise DynamicsError(f"unknown property tags {sorted(unknown)}")

    @classmethod
    def of(cls, *props: str) -> DynamicsSpec:
        return cls(frozenset(props))

    @classmethod
    def mixed(cls, cyclic: Iterable[str]) -> DynamicsSpec:
        return cls(cyclic_players=frozenset(cyclic))

    @classmethod
    def parse(cls, text: str) -> DynamicsSpec:
        """``"I,L,1P"`` or ``"mixed:2,3"``."""
        text = text.strip()
        if text.startswith("mixed:") or text == "mixed":
            cyclic = text.partition(":")[2]
            return cls.mixed(p.strip() for p in cyclic.split(",") if p.strip())
        return cls(frozenset(p.strip() for p in text.split(",") if p.strip()))

    @property
    def is_mixed(self) -> bool:
        return self.cyclic_players is not None

    def label(self) -> str:
        if self.is_mixed:
            return "mixed(cyclic=" + ",".join(sorted(self.cyclic_players)) + ")"
        return "{" + ",".join(p for p in PROPERTIES if p in self.properties) + "}"


def satisfies(prop: str, g: Game, s: StrategyProfile, t: StrategyProfile) -> bool:
    """Decide one update property for the pair ``(s, t)`` from its definition."""
    d = diff(g, s, t)
    if prop == "I":
        before, after = outcome_of(g, s), outcome_of(g, t)
        return all(g.lt(i, before, after) for i in d.players)
    if prop == "SI":
        for h in d.nodes:
            sub = subgame(g, h)
            if not g.lt(g.owner[h], outcome_of(sub, substrategy(s, h)), outcome_of(sub, substrategy(t, h))):
                return False
        return True
    if prop == "L":
        return all(lies_along(g, t, h) for h in d.nodes)
    if prop == "1P":
        return len(d.players) <= 1
    if prop == "A":
        return len(d.nodes) <= 1
    raise DynamicsError(f"unknown property {prop!r}")


def satisfies_all(props: Iterable[str], g: Game, s: StrategyProfile, t: StrategyProfile) -> bool:
    return all(satisfies(p, g, s, t) for p in props)


def mixed_edge(g: Game, cyclic: Iterable[str], s: StrategyProfile, t: StrategyProfile) -> bool:
    if s == t:
        return False
    cyclic = frozenset(cyclic)
    movers = diff(g, s, t).players
    if not movers & cyclic and satisfies("SI", g, s, t):
        return True
    return movers <= cyclic and satisfies_all(("I", "L", "1P"), g, s, t)


@dataclass(frozen=True, eq=False)
class DynamicsGraph:
    """Profiles (in enumeration order) and the legal updates between them."""

    game: Game
    spec: DynamicsSpec
    vertices: tuple[StrategyProfile, ...]
    edges: tuple[tuple[int, int], ...]

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        succ: list[list[int]] = [[] for _ in self.vertices]
        for a, b in self.edges:
            succ[a].append(b)
        return tuple(tuple(sorted(s)) for s in succ)

    @cached_property
    def edge_labels(self) -> Mapping[tuple[int, int], ProfileDiff]:
        v = self.vertices
        return {(a, b): diff(self.game, v[a], v[b]) for a, b in self.edges}

    def named_edges(self, long: bool = False) -> set[tuple[str, str]]:
        v = self.vertices
        return {(v[a].name(long), v[b].name(long)) for a, b in self.edges}

    def index_of(self, s: StrategyProfile) -> int:
        return self._index[s]

    @cached_property
    def _index(self) -> dict[StrategyProfile, int]:
        return {s: k for k, s in enumerate(self.vertices)}


def build_graph(g: Game, spec: DynamicsSpec, profiles: Sequence[StrategyProfile] | None = None,
                backend=None) -> DynamicsGraph:
    profiles = enumerate_profiles(g) if profiles is None else list(profiles)
    tables = kernel.tabulate(g, profiles)
    if spec.is_mixed:
        src, dst = kernel.edge_arrays(tables, cyclic=spec.cyclic_players, backend=backend)
    else:
        src, dst = kernel.edge_arrays(tables, spec.properties, backend=backend)
    edges = tuple(zip(src.tolist(), dst.tolist()))
    return DynamicsGraph(g, spec, tuple(profiles), edges)


def cycle_witness(graph: DynamicsGraph) -> list[StrategyProfile] | None:
    """One directed cycle (as a profile list, closing edge implied) or ``None``."""
    cycle = find_cycle(graph.successors)
    return None if cycle is None else [graph.vertices[k] for k in cycle]


def terminates(graph: DynamicsGraph) -> bool:
    return find_cycle(graph.successors) is None


def terminal_profiles(graph: DynamicsGraph) -> tuple[StrategyProfile, ...]:
    return tuple(s for s, succ in zip(graph.vertices, graph.successors) if not succ)


def terminates_for_acyclic(graph: DynamicsGraph, cyclic: Iterable[str]) -> bool:
    """No cycle of the graph contains an update by a player outside ``cyclic``."""
    cyclic = frozenset(cyclic)
    labels = graph.edge_labels
    for comp in strongly_connected_components(graph.successors):
        if len(comp) < 2:
            continue
        members = set(comp)
        for a in comp:
            for b in graph.successors[a]:
                if b in members and not labels[(a, b)].players <= cyclic:
                    return False
    return True


def _choose_atomic_node(g: Game, cur: StrategyProfile, target: StrategyProfile,
                        nodes: frozenset[NodeId]) -> NodeId | None:
    def below_new_choice(h: NodeId) -> bool:
        stem = h + (target[h],)
        return any(d[:len(stem)] == stem for d in nodes)

    def reached_from_above(h: NodeId) -> bool:
        for d in nodes:
            if len(d) < len(h) and h[:len(d)] == d:
                if all(cur[h[:k]] == h[k] for k in range(len(d), len(h))):
                    return True
        return False

    ok = [h for h in nodes if not below_new_choice(h) and not reached_from_above(h)]
    if not ok:
        return None
    return min(ok, key=lambda h: (-len(h), h))


def decompose_si_step(g: Game, s: StrategyProfile, t: StrategyProfile) -> list[StrategyProfile]:
    """Split an ``SI`` update into single-node ``{SI, A}`` updates.

    At each step the changed node has no pending change under its new
    choice and is not reached, by the current play, from a pending change
    above it.  Ties go to the deepest node, then the smallest path.
    """
    if s == t:
        raise DynamicsError("decomposition needs two distinct profiles")
    if not satisfies("SI", g, s, t):
        raise DynamicsError(f"({s.name()}, {t.name()}) is not a subgame-improvement update")
    chain = [s]
    cur = s
    while cur != t:
        pending = diff(g, cur, t).nodes
        h = _choose_atomic_node(g, cur, t, pending)
        if h is None:
            raise DynamicsError(f"no atomic step available from {cur.name()} towards {t.name()}")
        cur = cur.replace({h: t[h]})
        chain.append(cur)
    return chain


def _dot_id(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph: DynamicsGraph, long_names: bool = False, cyclic: Iterable[str] | None = None) -> str:
    """Graphviz source; updates made only by ``cyclic`` players are dotted.

    ``cyclic`` defaults to the cyclic set of a mixed dynamics.
    """
    if cyclic is None and graph.spec.is_mixed:
        cyclic = graph.spec.cyclic_players
    cyclic = None if cyclic is None else frozenset(cyclic)
    order = {p: k for k, p in enumerate(graph.game.players)}
    names = [s.name(long_names) for s in graph.vertices]
    lines = ["digraph dynamics {", f"  label={_dot_id(graph.spec.label())};"]
    lines += [f"  {_dot_id(name)};" for name in names]
    for a, b in sorted(graph.edges):
        players = sorted(graph.edge_labels[(a, b)].players, key=order.__getitem__)
        attrs = [f"players={_dot_id(','.join(players))}"]
        if cyclic is not None and set(players) <= cyclic:
            attrs.append("style=dotted")
        lines.append(f"  {_dot_id(names[a])} -> {_dot_id(names[b])} [{' '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
