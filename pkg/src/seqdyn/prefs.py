"""Preference relations over outcomes: classification, patterns, layerings.

A relation is kept as a raw set of strict pairs ``(x, y)`` meaning *x is
worse than y*.  Nothing about transitivity or irreflexivity is assumed; the
classifiers below decide those properties.

A *preference profile* is a mapping ``player -> PreferenceRelation``.  Its
iteration order is the player order used when reporting pattern witnesses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Iterator, Mapping, Sequence

from ._graph import find_cycle, strongly_connected_components

ORACLE_MAX_OUTCOMES = 8


class PreferenceError(ValueError):
    """Raised for malformed relations or inputs outside an operation's domain."""


@dataclass(frozen=True)
class PreferenceRelation:
    outcomes: frozenset[str]
    strict: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        for x, y in self.strict:
            if x not in self.outcomes or y not in self.outcomes:
                raise PreferenceError(f"pair ({x!r}, {y!r}) mentions an unknown outcome")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[str]], outcomes: Iterable[str] | None = None) -> PreferenceRelation:
        strict = frozenset((str(x), str(y)) for x, y in pairs)
        if outcomes is None:
            outcomes = {o for pair in strict for o in pair}
        return cls(frozenset(outcomes), strict)

    @classmethod
    def from_ranking(cls, classes: Sequence[Iterable[str]], outcomes: Iterable[str] | None = None) -> PreferenceRelation:
        """Expand indifference classes (worst class first) into a strict weak order."""
        rank: dict[str, int] = {}
        for level, members in enumerate(classes):
            for o in members:
                if o in rank:
                    raise PreferenceError(f"outcome {o!r} appears twice in ranking")
                rank[o] = level
        if outcomes is None:
            outcomes = rank
        outcomes = frozenset(outcomes)
        missing = outcomes - rank.keys()
        if missing:
            raise PreferenceError(f"ranking does not place {sorted(missing)}")
        strict = frozenset((x, y) for x in rank for y in rank if rank[x] < rank[y])
        return cls(outcomes | rank.keys(), strict)

    @classmethod
    def from_sequence(cls, order: Sequence[str]) -> PreferenceRelation:
        """Strict linear order listing outcomes from least to most preferred."""
        return cls.from_ranking([[o] for o in order])

    def lt(self, x: str, y: str) -> bool:
        """True iff ``x`` is strictly worse than ``y``."""
        return (x, y) in self.strict

    def incomparable(self, x: str, y: str) -> bool:
        return x != y and (x, y) not in self.strict and (y, x) not in self.strict

    def weakly_below(self, x: str, y: str) -> bool:
        # x is worse than or indifferent to y
        return (y, x) not in self.strict

    @cached_property
    def sorted_outcomes(self) -> tuple[str, ...]:
        return tuple(sorted(self.outcomes))

    def restrict(self, outcomes: Iterable[str]) -> PreferenceRelation:
        keep = frozenset(outcomes)
        return PreferenceRelation(keep, frozenset(p for p in self.strict if p[0] in keep and p[1] in keep))

    def with_outcomes(self, outcomes: Iterable[str]) -> PreferenceRelation:
        return PreferenceRelation(self.outcomes | frozenset(outcomes), self.strict)

    def to_document(self) -> dict[str, Any]:
        return {"pairs": [list(p) for p in sorted(self.strict)]}


PreferenceProfile = Mapping[str, PreferenceRelation]


def relation_from_document(doc: Mapping[str, Any], outcomes: Iterable[str]) -> PreferenceRelation:
    """Parse one player's entry: ``{"pairs": [...]}`` or ``{"ranking": [...]}``."""
    outcomes = frozenset(outcomes)
    if not isinstance(doc, Mapping) or len(doc) != 1 or not ({"pairs", "ranking"} & doc.keys()):
        raise PreferenceError(f"preference entry must have exactly one of 'pairs'/'ranking': {doc!r}")
    if "pairs" in doc:
        pairs = doc["pairs"]
        if not isinstance(pairs, list) or any(not isinstance(p, list) or len(p) != 2 for p in pairs):
            raise PreferenceError("'pairs' must be a list of 2-element lists")
        mentioned = {str(o) for p in pairs for o in p}
        unknown = mentioned - outcomes
        if unknown:
            raise PreferenceError(f"unknown outcome(s) in preferences: {sorted(unknown)}")
        return PreferenceRelation.from_pairs(pairs, outcomes)
    ranking = doc["ranking"]
    if not isinstance(ranking, list) or any(not isinstance(c, list) for c in ranking):
        raise PreferenceError("'ranking' must be a list of outcome lists")
    classes = [[str(o) for o in c] for c in ranking]
    unknown = {o for c in classes for o in c} - outcomes
    if unknown:
        raise PreferenceError(f"unknown outcome(s) in preferences: {sorted(unknown)}")
    return PreferenceRelation.from_ranking(classes, outcomes)


def load_preferences(document: Mapping[str, Any]) -> dict[str, PreferenceRelation]:
    """Load a preference-only document ``{"outcomes": [...], "preferences": {...}}``."""
    try:
        outcomes = [str(o) for o in document["outcomes"]]
        prefs = document["preferences"]
    except (KeyError, TypeError) as exc:
        raise PreferenceError(f"preference document needs 'outcomes' and 'preferences': {exc}") from None
    return {str(p): relation_from_document(entry, outcomes) for p, entry in prefs.items()}


def profile_outcomes(prefs: PreferenceProfile) -> tuple[str, ...]:
    outcomes: set[str] = set()
    for rel in prefs.values():
        outcomes |= rel.outcomes
    return tuple(sorted(outcomes))


# -- classification ---------------------------------------------------------


def is_acyclic(rel: PreferenceRelation) -> bool:
    outcomes = rel.sorted_outcomes
    pos = {o: k for k, o in enumerate(outcomes)}
    adj: list[list[int]] = [[] for _ in outcomes]
    for x, y in sorted(rel.strict):
        adj[pos[x]].append(pos[y])
    return find_cycle(adj) is None


def is_strict_weak_order(rel: PreferenceRelation) -> bool:
    outcomes = rel.sorted_outcomes
    lt = rel.strict
    if any(x == y or (y, x) in lt for x, y in lt):
        return False
    for x, y, z in itertools.permutations(outcomes, 3):
        if (x, y) in lt and (y, z) in lt and (x, z) not in lt:
            return False
        if rel.incomparable(x, y) and rel.incomparable(y, z) and not rel.incomparable(x, z):
            return False
    return True


def is_strict_linear_order(rel: PreferenceRelation) -> bool:
    if not is_strict_weak_order(rel):
        return False
    return not any(rel.incomparable(x, y) for x, y in itertools.combinations(rel.sorted_outcomes, 2))


# -- forbidden patterns -----------------------------------------------------


def main_pattern_witness(prefs: PreferenceProfile) -> tuple[str, str, str, str, str] | None:
    """First ``(x, y, z, i, j)`` with x<_i y<_i z and y<_j z<_j x, else ``None``.

    Search order is lexicographic over the outcome triple, then over the
    player pair in profile order.  ``i == j`` is included.
    """
    outcomes = profile_outcomes(prefs)
    players = list(prefs)
    chains = {p: {(x, y, z) for x, y, z in itertools.product(outcomes, repeat=3)
                  if prefs[p].lt(x, y) and prefs[p].lt(y, z)} for p in players}
    candidates = sorted({c for cs in chains.values() for c in cs})
    for x, y, z in candidates:
        for i in players:
            if (x, y, z) not in chains[i]:
                continue
            for j in players:
                rj = prefs[j]
                if rj.lt(y, z) and rj.lt(z, x):
                    return (x, y, z, i, j)
    return None


def out_of_main_pattern(prefs: PreferenceProfile) -> bool:
    return main_pattern_witness(prefs) is None


def secondary_pattern_witness(prefs: PreferenceProfile) -> tuple[str, str, str, str, str, str] | None:
    """First ``(w, x, y, z, i, j)`` with w<_i x<_i y<_i z and x~_j z <_j w~_j y."""
    outcomes = profile_outcomes(prefs)
    players = list(prefs)
    for w, x, y, z in itertools.product(outcomes, repeat=4):
        for i in players:
            ri = prefs[i]
            if not (ri.lt(w, x) and ri.lt(x, y) and ri.lt(y, z)):
                continue
            for j in players:
                rj = prefs[j]
                if rj.incomparable(x, z) and rj.lt(z, w) and rj.incomparable(w, y):
                    return (w, x, y, z, i, j)
    return None


def out_of_secondary_pattern(prefs: PreferenceProfile) -> bool:
    return secondary_pattern_witness(prefs) is None


def out_of_pattern(prefs: PreferenceProfile) -> bool:
    return out_of_main_pattern(prefs) and out_of_secondary_pattern(prefs)


# -- layers -----------------------------------------------------------------


def _require_swo(prefs: PreferenceProfile) -> None:
    for player, rel in prefs.items():
        if not is_strict_weak_order(rel):
            raise PreferenceError(f"preferences of player {player!r} are not a strict weak order")


def _layer_conflict(prefs: PreferenceProfile, layer: Iterable[str]) -> bool:
    """True iff two players agree on one pair of the layer and disagree on another."""
    members = sorted(layer)
    rels = list(prefs.values())
    pairs = [(a, b) for a in members for b in members if a != b]
    for ri in rels:
        for rj in rels:
            agree = any(ri.lt(a, b) and rj.lt(a, b) for a, b in pairs)
            if agree and any(ri.lt(a, b) and rj.lt(b, a) for a, b in pairs):
                return True
    return False


def check_layering(prefs: PreferenceProfile, layers: Sequence[Iterable[str]]) -> bool:
    """Check that ``layers`` (least preferred first) is a valid layering."""
    layers = [frozenset(layer) for layer in layers]
    seen: set[str] = set()
    for layer in layers:
        if not layer or seen & layer:
            return False
        seen |= layer
    if seen != set(profile_outcomes(prefs)):
        return False
    rels = list(prefs.values())
    for lo, hi in itertools.combinations(range(len(layers)), 2):
        for x in layers[lo]:
            for y in layers[hi]:
                if any(r.lt(y, x) for r in rels):
                    return False
    return not any(_layer_conflict(prefs, layer) for layer in layers)


def _finest_layering(prefs: PreferenceProfile) -> list[frozenset[str]]:
    # Blocks are the strongly connected components of "y below x for someone";
    # this is the fixpoint of merging conflicted pairs and collapsing cycles.
    outcomes = profile_outcomes(prefs)
    pos = {o: k for k, o in enumerate(outcomes)}
    succ: list[set[int]] = [set() for _ in outcomes]
    for rel in prefs.values():
        for x, y in rel.strict:
            if x != y:
                succ[pos[x]].add(pos[y])
    adj = [sorted(s) for s in succ]
    comps = strongly_connected_components(adj)
    block_of = {}
    for b, comp in enumerate(comps):
        for v in comp:
            block_of[v] = b
    nb = len(comps)
    out_edges: list[set[int]] = [set() for _ in range(nb)]
    indeg = [0] * nb
    for v, ws in enumerate(adj):
        for w in ws:
            a, b = block_of[v], block_of[w]
            if a != b and b not in out_edges[a]:
                out_edges[a].add(b)
                indeg[b] += 1
    key = [min(outcomes[v] for v in comp) for comp in comps]
    ready = sorted((key[b], b) for b in range(nb) if indeg[b] == 0)
    order: list[int] = []
    while ready:
        _, b = ready.pop(0)
        order.append(b)
        for c in out_edges[b]:
            indeg[c] -= 1
            if indeg[c] == 0:
                ready.append((key[c], c))
        ready.sort()
    return [frozenset(outcomes[v] for v in comps[b]) for b in order]


def layer_partition(prefs: PreferenceProfile) -> list[frozenset[str]] | None:
    """Layers of outcomes, least preferred first, or ``None`` if none exist.

    The finest partition compatible with everyone's strict preferences is
    computed and then checked; no coarser partition can repair a layer
    conflict, so a failed check means the profile cannot be layered.
    """
    _require_swo(prefs)
    return _checked_layering(prefs)


def _checked_layering(prefs: PreferenceProfile) -> list[frozenset[str]] | None:
    layers = _finest_layering(prefs)
    return layers if check_layering(prefs, layers) else None


def _set_partitions(items: list[int]) -> Iterator[list[int]]:
    """Unordered set partitions of ``items`` as lists of bitmasks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [1 << first] + part
        for k in range(len(part)):
            yield part[:k] + [part[k] | (1 << first)] + part[k + 1:]


def is_layerable_oracle(prefs: PreferenceProfile, max_outcomes: int = ORACLE_MAX_OUTCOMES) -> bool:
    """Exhaustive search over ordered set partitions of the outcomes.

    Every set partition is generated; those passing the within-layer check
    are tried in every block order against the between-layer condition.
    """
    outcomes = profile_outcomes(prefs)
    n = len(outcomes)
    if n > max_outcomes:
        raise PreferenceError(f"oracle limited to {max_outcomes} outcomes, got {n}")
    rels = list(prefs.values())
    bit = {o: 1 << k for k, o in enumerate(outcomes)}

    # below[k]: outcomes someone ranks strictly under outcome k
    below = [0] * n
    for r in rels:
        for y, x in r.strict:
            below[outcomes.index(x)] |= bit[y]

    agree_masks, disagree_masks = [], []
    for ri in rels:
        for rj in rels:
            agree_masks.append([bit[a] | bit[b] for a, b in ri.strict if rj.lt(a, b)])
            disagree_masks.append([bit[a] | bit[b] for a, b in ri.strict if rj.lt(b, a)])

    def layer_ok(mask: int) -> bool:
        for agree, disagree in zip(agree_masks, disagree_masks):
            if any(m & mask == m for m in agree) and any(m & mask == m for m in disagree):
                return False
        return True

    def may_precede(lower: int, upper: int) -> bool:
        return all(not (below[k] & upper) for k in range(n) if lower >> k & 1)

    for partition in _set_partitions(list(range(n))):
        if not all(layer_ok(b) for b in partition):
            continue
        for order in itertools.permutations(partition):
            if all(may_precede(order[a], order[b])
                   for a in range(len(order)) for b in range(a + 1, len(order))):
                return True
    return False


def linear_extensions(rel: PreferenceRelation) -> Iterator[tuple[str, ...]]:
    """Strict linear extensions of an acyclic relation, least preferred first.

    Backtracking over topological orders, always trying the smallest
    available label first.
    """
    outcomes = rel.sorted_outcomes
    preds = {o: {x for x, y in rel.strict if y == o} for o in outcomes}
    placed: list[str] = []
    used: set[str] = set()

    def extend() -> Iterator[tuple[str, ...]]:
        if len(placed) == len(outcomes):
            yield tuple(placed)
            return
        for o in outcomes:
            if o not in used and preds[o] <= used:
                used.add(o)
                placed.append(o)
                yield from extend()
                placed.pop()
                used.discard(o)

    yield from extend()


def layerable_linear_extension(prefs: PreferenceProfile, max_outcomes: int = ORACLE_MAX_OUTCOMES) -> dict[str, PreferenceRelation] | None:
    """Strict linear extensions of a two-player profile that can be layered."""
    if len(prefs) != 2:
        raise PreferenceError(f"expected exactly two players, got {len(prefs)}")
    _require_swo(prefs)
    outcomes = profile_outcomes(prefs)
    if len(outcomes) > max_outcomes:
        raise PreferenceError(f"extension search limited to {max_outcomes} outcomes")
    (p1, r1), (p2, r2) = prefs.items()
    r1, r2 = r1.with_outcomes(outcomes), r2.with_outcomes(outcomes)
    seconds = [PreferenceRelation.from_sequence(e) for e in linear_extensions(r2)]
    for e1 in linear_extensions(r1):
        first = PreferenceRelation.from_sequence(e1)
        for second in seconds:
            candidate = {p1: first, p2: second}
            if _checked_layering(candidate) is not None:
                return candidate
    return None


def classify(prefs: PreferenceProfile) -> dict[str, Any]:
    """JSON-ready classification report for a preference profile."""
    swo = {p: is_strict_weak_order(r) for p, r in prefs.items()}
    layers = None
    if all(swo.values()):
        found = layer_partition(prefs)
        layers = None if found is None else [sorted(layer) for layer in found]
    main = main_pattern_witness(prefs)
    secondary = secondary_pattern_witness(prefs)
    return {
        "acyclic": {p: is_acyclic(r) for p, r in prefs.items()},
        "swo": swo,
        "slo": {p: is_strict_linear_order(r) for p, r in prefs.items()},
        "main_pattern_witness": None if main is None else list(main),
        "secondary_pattern_witness": None if secondary is None else list(secondary),
        "layers": layers,
    }
