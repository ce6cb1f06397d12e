"""Acyclic orientations, alternating closed trails, and combinatorial rigidity for d <= 2.

An ACT of an oriented graph is a closed sequence i1 i2 ... i2k (k >= 2) whose
edges alternate direction: (i1,i2), (i3,i2), (i3,i4), ..., (i1,i2k). Edges
along the sequence are distinct. By default vertices may repeat (a closed
trail); ``trails=False`` restricts the search to vertex-distinct cycles, a
reading that disagrees with the rank oracle on some d=2 inputs.

For d=2 a facet set S is certified independent when Phi_S has full row rank
and, for some ordering of the vertices 2..n, the lex-greedy column basis of
Phi_S (a graph on {2..n}) has an acyclic ACT-free orientation. Asking only
for *some* column basis with that property is too weak: it accepts
complexes with a vertex in a single triangle.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .complex import SimplicialComplex, is_pure
from .grassmann import phi_grassmann_witness
from .rigidity import ImpureComplexError

ACT_VERTEX_LIMIT = 12
ORDER_VERTEX_LIMIT = 10


class SearchLimitError(ValueError):
    pass


@dataclass(frozen=True)
class Orientation:
    vertices: tuple
    edges: tuple  # directed (tail, head) pairs

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("repeated vertex")
        seen = set()
        for a, b in self.edges:
            if a not in vs or b not in vs:
                raise ValueError(f"edge ({a}, {b}) leaves the vertex set")
            if a == b:
                raise ValueError(f"loop at {a}")
            key = frozenset((a, b))
            if key in seen:
                raise ValueError(f"edge {{{a}, {b}}} oriented twice")
            seen.add(key)

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable) -> "Orientation":
        edges = tuple(tuple(e) for e in edges)
        verts = set(vertices) | {v for e in edges for v in e}
        return cls(tuple(sorted(verts)), tuple(sorted(edges)))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class ACTWitness:
    """Cyclic sequence i1..i2k; odd positions are tails of both incident edges."""

    sequence: tuple
    trail: bool = field(default=True, compare=False)

    def edges(self) -> list[tuple]:
        seq = self.sequence
        m = len(seq)
        out = []
        for i in range(0, m, 2):
            out.append((seq[i], seq[i + 1]))
            out.append((seq[i], seq[i - 1]))
        return out

    def is_valid_in(self, O: Orientation) -> bool:
        seq = self.sequence
        if len(seq) < 4 or len(seq) % 2:
            return False
        es = self.edges()
        if len(set(es)) != len(es) or not set(es) <= set(O.edges):
            return False
        return self.trail or len(set(seq)) == len(seq)


def canonical_act(seq) -> tuple:
    """Lex-least form among rotations by two and the reversal."""
    seq = tuple(seq)
    rev = (seq[0],) + tuple(reversed(seq[1:]))
    forms = [s[i:] + s[:i] for s in (seq, rev) for i in range(0, len(seq), 2)]
    return min(forms)


def is_acyclic(O: Orientation) -> bool:
    graph = {v: set() for v in O.vertices}
    for a, b in O.edges:
        graph[b].add(a)
    try:
        tuple(graphlib.TopologicalSorter(graph).static_order())
    except graphlib.CycleError:
        return False
    return True


def _act_search(vertices, edges, trails: bool):
    out = {v: [] for v in vertices}
    inn = {v: [] for v in vertices}
    for a, b in sorted(edges):
        out[a].append(b)
        inn[b].append(a)
    eset = set(edges)

    def dfs(start, path, used_v, used_e, at_tail):
        cur = path[-1]
        if at_tail:
            for t in out[cur]:
                e = (cur, t)
                if e in used_e or (not trails and t in used_v):
                    continue
                path.append(t)
                used_e.add(e)
                fresh = t not in used_v
                used_v.add(t)
                found = dfs(start, path, used_v, used_e, False)
                if found:
                    return found
                path.pop()
                used_e.discard(e)
                if fresh:
                    used_v.discard(t)
            return None
        closing = (start, cur)
        if len(path) >= 4 and closing in eset and closing not in used_e:
            return list(path)
        for s in inn[cur]:
            e = (s, cur)
            if s == start or e in used_e or (not trails and s in used_v):
                continue
            path.append(s)
            used_e.add(e)
            fresh = s not in used_v
            used_v.add(s)
            found = dfs(start, path, used_v, used_e, True)
            if found:
                return found
            path.pop()
            used_e.discard(e)
            if fresh:
                used_v.discard(s)
        return None

    for s in sorted(vertices):
        found = dfs(s, [s], {s}, set(), True)
        if found:
            return found
    return None


def find_act(O: Orientation, trails: bool = True, limit: int = ACT_VERTEX_LIMIT) -> ACTWitness | None:
    """Exhaustive ACT search; the witness is canonicalised."""
    if len(O.vertices) > limit:
        raise SearchLimitError(f"ACT search limited to {limit} vertices (got {len(O.vertices)})")
    found = _act_search(O.vertices, O.edges, trails)
    if found is None:
        return None
    return ACTWitness(canonical_act(found), trails)


def orientation_from_order(order, edges) -> Orientation:
    """Orient every edge from the earlier to the later vertex of ``order``."""
    pos = {v: i for i, v in enumerate(order)}
    return Orientation.build(order, [(a, b) if pos[a] < pos[b] else (b, a) for a, b in edges])


def exists_acyclic_act_free(vertices, edges, limit: int = ORDER_VERTEX_LIMIT, trails: bool = True) -> Orientation | None:
    """First ACT-free orientation induced by a vertex ordering, or None.

    Orderings are built one vertex at a time; a prefix whose induced
    orientation already has an ACT is abandoned, since later vertices only
    add edges.
    """
    edges = [tuple(sorted(e)) for e in edges]
    verts = sorted(set(vertices) | {v for e in edges for v in e})
    if len(verts) > limit:
        raise SearchLimitError(f"orientation search limited to {limit} vertices (got {len(verts)})")
    adj = {v: set() for v in verts}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    dead = set()

    def extend(order, placed, arcs):
        if len(order) == len(verts):
            return order
        for v in verts:
            if v in placed:
                continue
            new_arcs = arcs | {(u, v) for u in adj[v] if u in placed}
            key = (placed | {v}, new_arcs)
            if key in dead:
                continue
            if new_arcs != arcs and _act_search(placed | {v}, new_arcs, trails) is not None:
                dead.add(key)
                continue
            found = extend(order + [v], placed | {v}, new_arcs)
            if found:
                return found
            dead.add(key)
        return None

    order = extend([], frozenset(), frozenset())
    return None if order is None else orientation_from_order(order, edges)


def _is_forest(edges) -> bool:
    parent = {}

    def root(v):
        while parent.setdefault(v, v) != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        ra, rb = root(a), root(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


@lru_cache(maxsize=1 << 16)
def _bernstein_cached(edges: frozenset, limit: int, trails: bool) -> bool:
    verts = {v for e in edges for v in e}
    if len(edges) > 2 * len(verts) - 3:
        return False
    if _is_forest(edges):
        return True
    return exists_acyclic_act_free(verts, edges, limit, trails) is not None


def bernstein_independent(edges, limit: int = ORDER_VERTEX_LIMIT, trails: bool = True) -> bool:
    """Graph edges independent among Plucker coordinates of Gr(2, .)."""
    return _bernstein_cached(frozenset(tuple(sorted(e)) for e in edges), limit, trails)


def combinatorial_witness(facets, n: int, limit: int = ORDER_VERTEX_LIMIT, trails: bool = True):
    """``(order, T)`` certifying independence of 2-simplices, or None.

    T is the lex-greedy column basis of Phi_S under a vertex ordering of
    2..n, and the graph T has an acyclic ACT-free orientation. No random
    evaluation is involved.
    """
    facets = sorted({tuple(sorted(f)) for f in facets})
    if n - 1 > limit:
        raise SearchLimitError(f"orientation search limited to {limit} vertices")
    return phi_grassmann_witness(facets, n, 2, independent=lambda T: bernstein_independent(T, limit, trails))


def combinatorial_independent(facets, n: int, limit: int = ORDER_VERTEX_LIMIT, trails: bool = True) -> bool:
    return combinatorial_witness(facets, n, limit, trails) is not None


def _connected_spanning(n: int, edges) -> bool:
    parent = list(range(n + 1))

    def root(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        parent[root(a)] = root(b)
    return len({root(v) for v in range(1, n + 1)}) == 1


@dataclass(frozen=True)
class CombinatorialVerdict:
    rigid: bool
    basis: tuple  # independent facets chosen greedily
    required: int

    def to_json(self) -> dict:
        return {"rigid": self.rigid, "basis": [list(f) for f in self.basis], "required": self.required}


def rigid_combinatorial(cx: SimplicialComplex, limit: int = ORDER_VERTEX_LIMIT, trails: bool = True) -> CombinatorialVerdict:
    """Rigidity from graph connectivity (d=1) or ACT-free orientations (d=2)."""
    if cx.d not in (1, 2):
        raise ValueError(f"combinatorial characterisation only for d in {{1, 2}} (got d={cx.d})")
    if not is_pure(cx):
        raise ImpureComplexError("complex is not pure")
    n = cx.n
    if cx.d == 1:
        basis = []
        parent = list(range(n + 1))

        def root(v):
            while parent[v] != v:
                v = parent[v]
            return v

        for a, b in cx.top:
            if root(a) != root(b):
                parent[root(a)] = root(b)
                basis.append((a, b))
        return CombinatorialVerdict(_connected_spanning(n, cx.top), tuple(basis), n - 1)
    if n - 1 > limit:
        raise SearchLimitError(f"orientation search limited to {limit} vertices")
    required = 2 * n - 5
    basis = []
    # the independent sets form a matroid, so greedy reaches its rank
    for f in cx.top:
        if len(basis) == required:
            break
        if combinatorial_independent(basis + [f], n, limit, trails):
            basis.append(f)
    return CombinatorialVerdict(len(basis) == required, tuple(basis), required)


def is_rigid_combinatorial(cx: SimplicialComplex, limit: int = ORDER_VERTEX_LIMIT, trails: bool = True) -> bool:
    return rigid_combinatorial(cx, limit, trails).rigid
