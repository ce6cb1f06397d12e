"""Exterior algebraic shifting over a random prime-field matrix.

For a complex on [n] draw an invertible n x n matrix X. For each k, the
shifted k-faces are the greedy column basis (under a linear extension of the
dominance order) of the compound matrix of (k+1)-minors of X, restricted to
rows indexed by the k-faces. Every greedy decision is a minor-vanishing test,
so each run is repeated with an independent matrix and the two results must
coincide.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable

from . import kernels
from .complex import (
    Simplex,
    SimplicialComplex,
    dominance_leq,
    f_vector,
    is_shifted,
    rigidity_target,
)
from .homology import betti
from .linalg import DEFAULT_PRIME, DEFAULT_SEED, FieldMatrix, PrimeField, seeded_rng

MAX_ATTEMPTS = 4


class ShiftInstabilityError(RuntimeError):
    """Independent random matrices kept producing different shifts."""


@dataclass(frozen=True)
class LinearExtension:
    """Total order on equal-size sorted tuples given by a sort key."""

    name: str
    key: Callable[[Simplex], Any]

    def sort(self, simplices) -> list[Simplex]:
        return sorted(simplices, key=self.key)

    def extends_dominance(self, n: int, size: int) -> bool:
        faces = list(itertools.combinations(range(1, n + 1), size))
        return all(
            self.key(a) <= self.key(b)
            for a in faces
            for b in faces
            if dominance_leq(a, b)
        )


def lex_extension() -> LinearExtension:
    return LinearExtension("lex", lambda s: s)


def lgrc_first_extension(n: int, d: int) -> LinearExtension:
    """Top-dimensional simplices below the rigidity target come first; lex otherwise."""
    target = rigidity_target(n, d)

    def key(s):
        if len(s) != d + 1:
            return (False, s)
        return (not dominance_leq(s, target), s)

    return LinearExtension("lgrc-first", key)


def extension_by_name(name: str, n: int, d: int) -> LinearExtension:
    if name == "lex":
        return lex_extension()
    if name == "lgrc-first":
        return lgrc_first_extension(n, d)
    raise ValueError(f"unknown linear extension {name!r}")


CompoundMatrix = FieldMatrix


def compound_matrix(X: FieldMatrix, k: int, rows=None, cols=None) -> CompoundMatrix:
    """Matrix of (k+1)-minors of a square matrix labelled 1..n.

    Rows and columns are (k+1)-subsets; ``rows``/``cols`` restrict them
    (in the given order).
    """
    n = X.shape[0]
    if X.shape[1] != n:
        raise ValueError("compound matrices need a square base matrix")
    if not 0 <= k <= n - 1:
        raise ValueError(f"k={k} outside 0..{n - 1}")
    every = list(itertools.combinations(range(1, n + 1), k + 1))
    rows = every if rows is None else [tuple(r) for r in rows]
    cols = every if cols is None else [tuple(c) for c in cols]
    for s in itertools.chain(rows, cols):
        if len(s) != k + 1 or list(s) != sorted(set(s)) or s[0] < 1 or s[-1] > n:
            raise ValueError(f"{s} is not a {k + 1}-subset of [{n}]")
    q = X.prime
    if q is None:
        from .linalg import det_rational

        entries = [
            [det_rational([[X.entries[i - 1][j - 1] for j in c] for i in r]) for c in cols]
            for r in rows
        ]
    else:
        entries = kernels.minors(
            [list(row) for row in X.entries],
            [[i - 1 for i in r] for r in rows],
            [[j - 1 for j in c] for c in cols],
            q,
        )
    return FieldMatrix.from_rows(entries, rows, cols, q)


def random_invertible(n: int, seed, prime: int, tag="shift") -> FieldMatrix:
    for attempt in itertools.count():
        rng = seeded_rng(seed, tag, n, attempt)
        rows = [[rng.randrange(prime) for _ in range(n)] for _ in range(n)]
        if kernels.det(rows, prime):
            labels = list(range(1, n + 1))
            return FieldMatrix.from_rows(rows, labels, labels, prime)
    raise AssertionError("unreachable")


def _greedy_faces(X: FieldMatrix, faces: list[Simplex], candidates: list[Simplex]) -> list[Simplex]:
    if not faces:
        return []
    n = X.shape[0]
    q = X.prime
    entries = kernels.minors(
        [list(row) for row in X.entries],
        [[i - 1 for i in r] for r in faces],
        [[j - 1 for j in c] for c in candidates],
        q,
    )
    return [candidates[j] for j in kernels.pivot_columns(entries, len(candidates), q)]


@dataclass(frozen=True)
class ShiftedComplex:
    complex: SimplicialComplex
    extension: str
    seed: Any
    prime: int
    chosen: tuple  # per dimension, faces in the order they were selected

    def to_json(self) -> dict:
        out = self.complex.to_json()
        out.update(
            {
                "extension": self.extension,
                "seed": self.seed,
                "prime": self.prime,
                "faces": {str(k): [list(s) for s in layer] for k, layer in enumerate(self.chosen)},
            }
        )
        return out


def _shift_once(cx: SimplicialComplex, ext: LinearExtension, X: FieldMatrix) -> tuple:
    n = cx.n
    chosen = []
    for k in range(cx.d + 1):
        candidates = ext.sort(itertools.combinations(range(1, n + 1), k + 1))
        chosen.append(tuple(_greedy_faces(X, cx.layer(k), candidates)))
    return tuple(chosen)


def exterior_shift(
    cx: SimplicialComplex,
    extension: LinearExtension | None = None,
    seed=DEFAULT_SEED,
    prime: int = DEFAULT_PRIME,
    attempts: int = MAX_ATTEMPTS,
) -> ShiftedComplex:
    """Shift every dimension; two independent matrices must agree."""
    PrimeField(prime)
    ext = extension or lex_extension()
    for attempt in range(attempts):
        a = _shift_once(cx, ext, random_invertible(cx.n, seed, prime, f"shift/{attempt}/a"))
        b = _shift_once(cx, ext, random_invertible(cx.n, seed, prime, f"shift/{attempt}/b"))
        if a != b:
            continue
        layers = tuple(frozenset(layer) for layer in a)
        try:
            shifted = SimplicialComplex(cx.n, layers)
        except ValueError:
            continue
        return ShiftedComplex(shifted, ext.name, seed, prime, a)
    raise ShiftInstabilityError(f"shift did not stabilise after {attempts} attempts")


def shift_rigidity_test(
    cx: SimplicialComplex,
    seed=DEFAULT_SEED,
    prime: int = DEFAULT_PRIME,
    extension: str = "lgrc-first",
    attempts: int = MAX_ATTEMPTS,
    ignore_impure: bool = False,
) -> bool:
    """Whether the rigidity target 1 3 4 ... (d+1) n is a shifted top face.

    Only top-dimensional columns up to the target are needed: greedy choices
    are decided by the prefix of the order.
    """
    from .rigidity import _check_pure

    n, d = cx.n, cx.d
    if n < d + 1:
        raise ValueError("need n >= d+1")
    _check_pure(cx, ignore_impure)
    PrimeField(prime)
    ext = extension_by_name(extension, n, d)
    target = rigidity_target(n, d)
    ordered = ext.sort(itertools.combinations(range(1, n + 1), d + 1))
    prefix = ordered[: ordered.index(target) + 1]
    for attempt in range(attempts):
        verdicts = []
        for tag in "ab":
            X = random_invertible(n, seed, prime, f"shift-test/{attempt}/{tag}")
            verdicts.append(target in _greedy_faces(X, cx.top, prefix))
        if verdicts[0] == verdicts[1]:
            return verdicts[0]
    raise ShiftInstabilityError(f"shift test did not stabilise after {attempts} attempts")


@dataclass(frozen=True)
class ShiftReport:
    f_vector_preserved: bool
    betti_preserved: bool
    top_betti_matches_count: bool
    is_shifted: bool

    @property
    def ok(self) -> bool:
        return self.f_vector_preserved and self.betti_preserved and self.top_betti_matches_count and self.is_shifted

    def to_json(self) -> dict:
        return {
            "f_vector_preserved": self.f_vector_preserved,
            "betti_preserved": self.betti_preserved,
            "top_betti_matches_count": self.top_betti_matches_count,
            "is_shifted": self.is_shifted,
            "ok": self.ok,
        }


def verify_shift_properties(cx: SimplicialComplex, shifted: ShiftedComplex) -> ShiftReport:
    """f-vector and Betti numbers preserved; top Betti number counts facets avoiding 1."""
    delta = shifted.complex
    b_delta = betti(delta)
    avoiding = sum(1 for s in delta.top if 1 not in s)
    return ShiftReport(
        f_vector(cx) == f_vector(delta),
        betti(cx) == b_delta,
        b_delta[-1] == avoiding,
        is_shifted(delta),
    )
