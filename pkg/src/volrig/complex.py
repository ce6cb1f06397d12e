"""Labelled simplicial complexes on [n] and their combinatorics.

Simplices are strictly increasing tuples of 1-based vertex labels. A complex
stores every face, one frozenset per dimension, so it is always downward
closed.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Mapping

Simplex = tuple[int, ...]


class FVector(tuple):
    """``(f_{-1}, f_0, ..., f_d)`` with ``f_{-1} = 1``."""

    def faces(self, k: int) -> int:
        """Number of k-faces; k runs from -1 to d."""
        return self[k + 1]

    @property
    def dim(self) -> int:
        return len(self) - 2


def simplex(vertices: Iterable[int]) -> Simplex:
    """Sort and validate a vertex collection into a simplex tuple."""
    vs = tuple(sorted(vertices))
    if len(set(vs)) != len(vs):
        raise ValueError(f"repeated vertex in {vs}")
    return vs


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    faces: tuple[frozenset, ...]

    def __post_init__(self):
        if not self.faces or not self.faces[-1]:
            raise ValueError("complex must have a nonempty top dimension")
        for k, layer in enumerate(self.faces):
            for s in layer:
                if len(s) != k + 1 or list(s) != sorted(set(s)):
                    raise ValueError(f"bad {k}-simplex {s}")
                if s[0] < 1 or s[-1] > self.n:
                    raise ValueError(f"vertex label out of range [1, {self.n}] in {s}")

    @property
    def d(self) -> int:
        return len(self.faces) - 1

    def layer(self, k: int) -> list[Simplex]:
        """Sorted list of k-simplices (empty outside 0..d)."""
        if k < 0 or k > self.d:
            return []
        return sorted(self.faces[k])

    @property
    def top(self) -> list[Simplex]:
        return self.layer(self.d)

    @property
    def vertices(self) -> list[int]:
        return [s[0] for s in self.layer(0)]

    def __contains__(self, s) -> bool:
        s = tuple(s)
        return 1 <= len(s) <= self.d + 1 and s in self.faces[len(s) - 1]

    def facets(self) -> list[Simplex]:
        """Maximal faces, sorted by (dimension desc, lex)."""
        out = list(self.top)
        covered = set(out)
        for k in range(self.d - 1, -1, -1):
            nxt = set()
            for s in covered:
                nxt.update(itertools.combinations(s, k + 1))
            for s in self.layer(k):
                if s not in nxt:
                    out.append(s)
                    nxt.add(s)
            covered = nxt
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "facets": [list(f) for f in self.facets()]}

    def relabel(self, mapping: Mapping[int, int], n: int | None = None) -> "SimplicialComplex":
        return from_facets(n or self.n, [[mapping[v] for v in f] for f in self.facets()])


def from_facets(n: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Downward closure of the given faces on vertex set [n]."""
    facets = [tuple(f) for f in facets]
    if not facets:
        raise ValueError("empty facet list")
    tops = []
    for f in facets:
        if not f:
            raise ValueError("empty facet")
        s = simplex(f)
        if s[0] < 1 or s[-1] > n:
            raise ValueError(f"vertex label out of range [1, {n}] in {f}")
        tops.append(s)
    d = max(len(s) for s in tops) - 1
    layers = [set() for _ in range(d + 1)]
    for s in set(tops):
        if s in layers[len(s) - 1]:
            continue
        for k in range(len(s)):
            layers[k].update(itertools.combinations(s, k + 1))
    return SimplicialComplex(n, tuple(frozenset(l) for l in layers))


def from_json(data: dict | str) -> SimplicialComplex:
    """Parse ``{"n": int, "d": int, "facets": [[...], ...]}``."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        n = data["n"]
        facets = data["facets"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"complex JSON needs 'n' and 'facets': {exc}") from None
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError("'n' must be a positive integer")
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise ValueError("'facets' must be a list of vertex lists")
    for f in facets:
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in f):
            raise ValueError(f"facet {f} has non-integer labels")
    cx = from_facets(n, facets)
    if "d" in data and data["d"] != cx.d:
        raise ValueError(f"declared d={data['d']} but facets have dimension {cx.d}")
    return cx


def f_vector(cx: SimplicialComplex) -> FVector:
    return FVector((1,) + tuple(len(l) for l in cx.faces))


def is_pure(cx: SimplicialComplex) -> bool:
    """True iff every face lies in a top-dimensional face."""
    return all(len(f) == cx.d + 1 for f in cx.facets())


def _require_face(cx: SimplicialComplex, sigma) -> Simplex:
    s = simplex(sigma)
    if s not in cx:
        raise ValueError(f"{s} is not a face of the complex")
    return s


def star(cx: SimplicialComplex, sigma) -> SimplicialComplex:
    """Subcomplex generated by the maximal faces containing sigma."""
    s = set(_require_face(cx, sigma))
    return from_facets(cx.n, [f for f in cx.facets() if s <= set(f)])


def link(cx: SimplicialComplex, sigma) -> set[Simplex]:
    """Complements of sigma in the maximal faces of its star."""
    s = _require_face(cx, sigma)
    ss = set(s)
    return {tuple(v for v in f if v not in ss) for f in cx.facets() if ss <= set(f) and len(f) > len(s)}


def complete_complex(n: int, d: int) -> SimplicialComplex:
    if d < 0 or n < d + 1:
        raise ValueError(f"complete complex needs n >= d+1 >= 1 (got n={n}, d={d})")
    return SimplicialComplex(
        n, tuple(frozenset(itertools.combinations(range(1, n + 1), k + 1)) for k in range(d + 1))
    )


def dominance_leq(a, b) -> bool:
    """Componentwise (Gale) order on sorted tuples of equal size."""
    if len(a) != len(b):
        raise ValueError("dominance order compares simplices of equal size")
    return all(x <= y for x, y in zip(a, b))


def rigidity_target(n: int, d: int) -> Simplex:
    """The d-simplex 1 3 4 ... (d+1) n; 1 2 ... (d+1) when n = d+1."""
    if n < d + 1:
        raise ValueError("need n >= d+1")
    if n == d + 1:
        return tuple(range(1, d + 2))
    return (1,) + tuple(range(3, d + 2)) + (n,)


def lgrc_facets(n: int, d: int) -> list[Simplex]:
    target = rigidity_target(n, d)
    return [s for s in itertools.combinations(range(1, n + 1), d + 1) if dominance_leq(s, target)]


def lgrc(n: int, d: int) -> SimplicialComplex:
    """Lexicographically greedy rigid complex: dominance down-set of the target."""
    if d < 0 or n < d + 1:
        raise ValueError(f"LGRC needs n >= d+1 (got n={n}, d={d})")
    return from_facets(n, lgrc_facets(n, d))


def is_shifted(cx: SimplicialComplex) -> bool:
    """Every layer is a down-set of the dominance order on [n]."""
    for k, layer in enumerate(cx.faces):
        for s in layer:
            # covering relations: lower one entry by 1 when it stays increasing
            for i, v in enumerate(s):
                lower = v - 1
                if lower < 1 or (i > 0 and s[i - 1] == lower):
                    continue
                if s[:i] + (lower,) + s[i + 1:] not in layer:
                    return False
    return True
