"""Finite sequential games and strategy profiles.

Nodes are identified by their action path from the root (a tuple of action
labels); the root is the empty tuple.  Internal nodes are always listed in
``(depth, path)`` order and a profile stores one action per internal node in
that order, whichever player owns it.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Any, Iterable, Mapping

from .prefs import PreferenceError, PreferenceRelation, relation_from_document

NodeId = tuple[str, ...]
ROOT: NodeId = ()

DEFAULT_PROFILE_CAP = 10**6
CAP_ENV = "SEQDYN_PROFILE_CAP"


class GameError(ValueError):
    """Malformed game document or a structure violating the game invariants."""


class ProfileCapError(RuntimeError):
    """An enumeration would exceed the configured profile cap."""


def profile_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_PROFILE_CAP
    try:
        return int(raw)
    except ValueError:
        raise GameError(f"{CAP_ENV} must be an integer, got {raw!r}") from None


def node_key(h: NodeId) -> tuple[int, NodeId]:
    return (len(h), h)


def format_node(h: NodeId) -> str:
    return "/" + "/".join(h)


def parse_node(text: str) -> NodeId:
    if not text.startswith("/"):
        raise GameError(f"node must start with '/': {text!r}")
    return tuple(part for part in text[1:].split("/") if part) if text != "/" else ROOT


def _player_key(p: str) -> tuple[int, int, str]:
    return (0, int(p), p) if p.isdigit() else (1, 0, p)


@dataclass(frozen=True)
class Game:
    players: tuple[str, ...]
    actions: frozenset[str]
    nodes: frozenset[NodeId]
    owner: Mapping[NodeId, str]
    payoff: Mapping[NodeId, str]
    outcomes: frozenset[str]
    prefs: Mapping[str, PreferenceRelation]

    def __post_init__(self) -> None:
        for name in ("owner", "payoff", "prefs"):
            object.__setattr__(self, name, MappingProxyType(dict(getattr(self, name))))
        self._validate()

    def _validate(self) -> None:
        if ROOT not in self.nodes:
            raise GameError("tree has no root")
        for h in self.nodes:
            if h and h[:-1] not in self.nodes:
                raise GameError(f"node set is not prefix-closed at {format_node(h)}")
            for a in h:
                if a not in self.actions:
                    raise GameError(f"illegal action label {a!r}")
        has_child = {h[:-1] for h in self.nodes if h}
        for h in self.nodes:
            if h in has_child:
                if h not in self.owner:
                    raise GameError(f"missing owner for {format_node(h)}")
                if h in self.payoff:
                    raise GameError(f"internal node {format_node(h)} carries an outcome")
            else:
                if h not in self.payoff:
                    raise GameError(f"missing outcome for leaf {format_node(h)}")
                if h in self.owner:
                    raise GameError(f"leaf {format_node(h)} has an owner")
        if set(self.owner) - self.nodes or set(self.payoff) - self.nodes:
            raise GameError("owner/payoff mention nodes outside the tree")
        for h, p in self.owner.items():
            if p not in self.players:
                raise GameError(f"owner {p!r} of {format_node(h)} is not a player")
        for h, o in self.payoff.items():
            if o not in self.outcomes:
                raise GameError(f"outcome {o!r} at {format_node(h)} not in outcome set")
        for p, rel in self.prefs.items():
            if p not in self.players:
                raise GameError(f"preferences given for unknown player {p!r}")
            if not rel.outcomes <= self.outcomes:
                raise GameError(f"preferences of {p!r} mention unknown outcomes")

    @classmethod
    def from_tree(cls, tree: Mapping[str, Any], prefs: Mapping[str, PreferenceRelation] | None = None,
                  players: Iterable[str] | None = None, outcomes: Iterable[str] = ()) -> Game:
        """Build a game from the nested ``{"player", "moves"}`` / ``{"outcome"}`` form."""
        owner: dict[NodeId, str] = {}
        payoff: dict[NodeId, str] = {}
        actions: set[str] = set()
        stack: list[tuple[NodeId, Any]] = [(ROOT, tree)]
        while stack:
            h, t = stack.pop()
            if not isinstance(t, Mapping):
                raise GameError(f"tree node at {format_node(h)} is not an object")
            if "outcome" in t:
                if set(t) != {"outcome"}:
                    raise GameError(f"leaf {format_node(h)} has extra keys {sorted(set(t) - {'outcome'})}")
                payoff[h] = str(t["outcome"])
                continue
            if set(t) != {"player", "moves"}:
                raise GameError(f"node {format_node(h)} needs exactly 'player' and 'moves'")
            moves = t["moves"]
            if not isinstance(moves, Mapping) or not moves:
                raise GameError(f"node {format_node(h)} has no moves")
            owner[h] = str(t["player"])
            for a, child in moves.items():
                a = str(a)
                if not a:
                    raise GameError(f"empty action label at {format_node(h)}")
                actions.add(a)
                stack.append((h + (a,), child))
        prefs = dict(prefs or {})
        outcome_set = frozenset(payoff.values()) | frozenset(outcomes)
        for rel in prefs.values():
            outcome_set |= rel.outcomes
        if players is None:
            players = sorted(set(owner.values()) | set(prefs), key=_player_key)
        players = tuple(players)
        if len(set(players)) != len(players):
            raise GameError("duplicate player ids")
        full_prefs = {p: prefs.get(p, PreferenceRelation(outcome_set, frozenset())).with_outcomes(outcome_set)
                      for p in players}
        extra = set(prefs) - set(players)
        if extra:
            raise GameError(f"preferences given for unknown players {sorted(extra)}")
        return cls(players, frozenset(actions), frozenset(owner) | frozenset(payoff),
                   owner, payoff, outcome_set, full_prefs)

    # -- structure ----------------------------------------------------------

    @cached_property
    def internal_nodes(self) -> tuple[NodeId, ...]:
        return tuple(sorted(self.owner, key=node_key))

    @cached_property
    def terminal_nodes(self) -> tuple[NodeId, ...]:
        return tuple(sorted(self.payoff, key=node_key))

    @cached_property
    def children(self) -> Mapping[NodeId, tuple[str, ...]]:
        kids: dict[NodeId, list[str]] = {h: [] for h in self.owner}
        for h in self.nodes:
            if h:
                kids[h[:-1]].append(h[-1])
        return MappingProxyType({h: tuple(sorted(a)) for h, a in kids.items()})

    @cached_property
    def node_index(self) -> Mapping[NodeId, int]:
        return MappingProxyType({h: k for k, h in enumerate(self.internal_nodes)})

    def is_terminal(self, h: NodeId) -> bool:
        return h in self.payoff

    def nodes_of(self, player: str) -> tuple[NodeId, ...]:
        return tuple(h for h in self.internal_nodes if self.owner[h] == player)

    def profile_count(self) -> int:
        return math.prod(len(self.children[h]) for h in self.internal_nodes)

    def lt(self, player: str, x: str, y: str) -> bool:
        """True iff ``player`` strictly prefers outcome ``y`` to ``x``."""
        return self.prefs[player].lt(x, y)

    @cached_property
    def _subgames(self) -> dict[NodeId, Game]:
        return {}

    # -- serialisation ------------------------------------------------------

    def tree_document(self, h: NodeId = ROOT) -> dict[str, Any]:
        if self.is_terminal(h):
            return {"outcome": self.payoff[h]}
        return {"player": self.owner[h],
                "moves": {a: self.tree_document(h + (a,)) for a in self.children[h]}}

    def to_document(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"tree": self.tree_document(),
                               "preferences": {p: self.prefs[p].to_document() for p in self.players},
                               "players": list(self.players)}
        leaf_outcomes = set(self.payoff.values())
        if self.outcomes != leaf_outcomes:
            doc["outcomes"] = sorted(self.outcomes)
        return doc


@dataclass(frozen=True)
class StrategyProfile:
    """One chosen action per internal node, aligned with ``nodes``."""

    nodes: tuple[NodeId, ...]
    actions: tuple[str, ...]

    @cached_property
    def choice(self) -> Mapping[NodeId, str]:
        return MappingProxyType(dict(zip(self.nodes, self.actions)))

    def __getitem__(self, h: NodeId) -> str:
        return self.choice[h]

    def replace(self, changes: Mapping[NodeId, str]) -> StrategyProfile:
        return StrategyProfile(self.nodes, tuple(changes.get(h, a) for h, a in zip(self.nodes, self.actions)))

    def name(self, long: bool = False) -> str:
        """Compact name (actions concatenated) or ``/=a,/r=b`` long form."""
        if long:
            return ",".join(f"{format_node(h)}={a}" for h, a in zip(self.nodes, self.actions))
        return "".join(self.actions)

    def __str__(self) -> str:
        return self.name()


@dataclass(frozen=True)
class ProfileDiff:
    nodes: frozenset[NodeId]
    players: frozenset[str]

    def __bool__(self) -> bool:
        return bool(self.nodes)


def load_game(document: str | bytes | Mapping[str, Any]) -> Game:
    """Parse and validate a game from JSON text or an already-decoded object."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise GameError(f"invalid JSON: {exc}") from None
    if not isinstance(document, Mapping) or "tree" not in document:
        raise GameError("game document must be an object with a 'tree' key")
    unknown = set(document) - {"tree", "preferences", "players", "outcomes"}
    if unknown:
        raise GameError(f"unknown top-level keys {sorted(unknown)}")
    skeleton = Game.from_tree(document["tree"], players=document.get("players"),
                              outcomes=document.get("outcomes", ()))
    raw_prefs = document.get("preferences", {}) or {}
    if not isinstance(raw_prefs, Mapping):
        raise GameError("'preferences' must be an object")
    try:
        prefs = {str(p): relation_from_document(entry, skeleton.outcomes) for p, entry in raw_prefs.items()}
    except PreferenceError as exc:
        raise GameError(str(exc)) from None
    players = document.get("players")
    if players is None:
        players = sorted(set(skeleton.players) | set(prefs), key=_player_key)
    return Game.from_tree(document["tree"], prefs, players=[str(p) for p in players],
                          outcomes=skeleton.outcomes)


def load_game_file(path: str | os.PathLike[str]) -> Game:
    with open(path, encoding="utf-8") as fh:
        return load_game(fh.read())


def enumerate_profiles(g: Game, cap: int | None = None) -> list[StrategyProfile]:
    """All strategy profiles, first internal node as the most significant digit."""
    cap = profile_cap() if cap is None else cap
    count = g.profile_count()
    if count > cap:
        raise ProfileCapError(f"game has {count} strategy profiles, cap is {cap}")
    nodes = g.internal_nodes
    return [StrategyProfile(nodes, combo) for combo in itertools.product(*(g.children[h] for h in nodes))]


def check_profile(g: Game, s: StrategyProfile) -> None:
    if s.nodes != g.internal_nodes:
        raise GameError("profile does not cover exactly the internal nodes of the game")
    for h, a in zip(s.nodes, s.actions):
        if a not in g.children[h]:
            raise GameError(f"illegal action {a!r} at {format_node(h)}")


def parse_profile(g: Game, text: str) -> StrategyProfile:
    """Inverse of :meth:`StrategyProfile.name` (either form)."""
    nodes = g.internal_nodes
    if "=" in text or not nodes:
        choice: dict[NodeId, str] = {}
        for item in filter(None, text.split(",")):
            node, _, action = item.partition("=")
            choice[parse_node(node.strip())] = action.strip()
        if set(choice) != set(nodes):
            raise GameError(f"profile {text!r} must assign every internal node exactly once")
        s = StrategyProfile(nodes, tuple(choice[h] for h in nodes))
    else:
        if len(text) != len(nodes):
            raise GameError(f"compact profile {text!r} needs {len(nodes)} single-character actions")
        s = StrategyProfile(nodes, tuple(text))
    check_profile(g, s)
    return s


def outcome_of(g: Game, s: StrategyProfile) -> str:
    h = ROOT
    while h not in g.payoff:
        h = h + (s[h],)
    return g.payoff[h]


def outcome_from(g: Game, s: StrategyProfile, h: NodeId) -> str:
    """Outcome reached when play starts at ``h`` and follows ``s``."""
    while h not in g.payoff:
        h = h + (s[h],)
    return g.payoff[h]


def subgame(g: Game, h: NodeId) -> Game:
    if h not in g.nodes or g.is_terminal(h):
        raise GameError(f"subgame root {format_node(h)} must be an internal node of the game")
    if h == ROOT:
        return g
    cache = g._subgames
    if h not in cache:
        k = len(h)
        nodes = frozenset(n[k:] for n in g.nodes if n[:k] == h)
        owner = {n[k:]: p for n, p in g.owner.items() if n[:k] == h}
        payoff = {n[k:]: o for n, o in g.payoff.items() if n[:k] == h}
        cache[h] = Game(g.players, g.actions, nodes, owner, payoff, g.outcomes, g.prefs)
    return cache[h]


def substrategy(s: StrategyProfile, h: NodeId) -> StrategyProfile:
    if h == ROOT:
        return s
    if h not in s.choice:
        raise GameError(f"substrategy root {format_node(h)} is not an internal node")
    k = len(h)
    kept = [(n[k:], a) for n, a in zip(s.nodes, s.actions) if n[:k] == h]
    return StrategyProfile(tuple(n for n, _ in kept), tuple(a for _, a in kept))


def lies_along(g: Game, s: StrategyProfile, h: NodeId) -> bool:
    return all(s[h[:k]] == h[k] for k in range(len(h)))


def diff(g: Game, s: StrategyProfile, t: StrategyProfile) -> ProfileDiff:
    nodes = frozenset(h for h, a, b in zip(s.nodes, s.actions, t.actions) if a != b)
    return ProfileDiff(nodes, frozenset(g.owner[h] for h in nodes))
