"""Directed-graph helpers over integer vertices ``0..n-1``.

Adjacency is given as a sequence of successor lists.  Both routines are
iterative so that deep graphs do not hit the interpreter recursion limit.
"""

from __future__ import annotations

from typing import Sequence

WHITE, GREY, BLACK = 0, 1, 2


def find_cycle(adj: Sequence[Sequence[int]]) -> list[int] | None:
    """Return the vertices of one directed cycle, or ``None`` if acyclic.

    Roots are tried in index order and successors in the order given, so the
    witness is deterministic.  The cycle starts at the vertex the back edge
    points to.
    """
    n = len(adj)
    colour = [WHITE] * n
    parent = [-1] * n
    for root in range(n):
        if colour[root] != WHITE:
            continue
        colour[root] = GREY
        stack = [(root, 0)]
        while stack:
            v, pos = stack[-1]
            succ = adj[v]
            if pos == len(succ):
                colour[v] = BLACK
                stack.pop()
                continue
            stack[-1] = (v, pos + 1)
            w = succ[pos]
            if colour[w] == WHITE:
                colour[w] = GREY
                parent[w] = v
                stack.append((w, 0))
            elif colour[w] == GREY:
                cycle = [v]
                while cycle[-1] != w:
                    cycle.append(parent[cycle[-1]])
                cycle.reverse()
                return cycle
    return None


def strongly_connected_components(adj: Sequence[Sequence[int]]) -> list[list[int]]:
    """Tarjan's algorithm; components come out in reverse topological order."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            succ = adj[v]
            if pos < len(succ):
                work[-1] = (v, pos + 1)
                w = succ[pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(sorted(comp))
    return components
