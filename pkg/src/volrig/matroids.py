"""Matroid intersection by shortest augmenting paths (Edmonds).

Both matroids are given as independence oracles on frozensets of a common,
ordered ground set. Ties are broken by ground-set order so results are
deterministic.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Hashable, Sequence

Oracle = Callable[[frozenset], bool]


def max_common_independent(ground: Sequence[Hashable], indep1: Oracle, indep2: Oracle, target: int | None = None) -> list:
    """A maximum common independent set, in ground-set order.

    Stops early once ``target`` elements have been found.
    """
    ground = list(ground)
    pos = {e: i for i, e in enumerate(ground)}
    current: set = set()
    while target is None or len(current) < target:
        path = _augmenting_path(ground, current, indep1, indep2)
        if path is None:
            break
        for e in path:
            current.symmetric_difference_update((e,))
    return sorted(current, key=pos.__getitem__)


def _augmenting_path(ground, current: set, indep1: Oracle, indep2: Oracle):
    base = frozenset(current)
    inside = [e for e in ground if e in current]
    outside = [e for e in ground if e not in current]
    sources = [x for x in outside if indep1(base | {x})]
    sinks = {x for x in outside if indep2(base | {x})}
    # an element addable to both matroids is a length-0 path
    for x in sources:
        if x in sinks:
            return [x]
    # exchange graph: y -> x when I - y + x stays independent in M1,
    # x -> y when I - y + x stays independent in M2
    parent = {x: None for x in sources}
    queue = deque(sources)
    while queue:
        u = queue.popleft()
        if u in current:
            nbrs = [x for x in outside if x not in parent and indep1((base - {u}) | {x})]
        else:
            nbrs = [y for y in inside if y not in parent and indep2((base - {y}) | {u})]
        for v in nbrs:
            parent[v] = u
            if v in sinks:
                path = [v]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path
            queue.append(v)
    return None
