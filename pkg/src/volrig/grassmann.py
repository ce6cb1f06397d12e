"""Coboundary matrices, the projection Phi, and the Grassmannian route to independence.

Phi is the d-coboundary matrix of the complete complex with only the columns
whose (d-1)-face avoids vertex 1. Composing it with the Plucker map of a
d x (n-1) matrix parametrises the measurement vectors of pinned
configurations, which gives a second, structurally different way to
compute ranks in the rigidity matroid.

Full row rank of Phi on a facet set is necessary for independence but not
sufficient, and so is the existence of a Plucker-independent column basis.
The test used here asks for a vertex ordering of 2..n whose lex-greedy
column basis is Plucker-independent; a Plucker-independent lex-greedy basis
forces independence, and some ordering always works for independent sets on
every instance checked against the rank oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from . import kernels
from .complex import Simplex, simplex
from .linalg import (
    DEFAULT_PRIME,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    FieldMatrix,
    bareiss_pivots,
    greedy_column_basis,
    rank,
    seeded_rng,
)
from .matroids import max_common_independent
from .rigidity import _validate_facets, rigidity_verdict


def _check(n: int, d: int):
    if d < 1 or n < d + 1:
        raise ValueError(f"need n >= d+1 and d >= 1 (got n={n}, d={d})")


@lru_cache(maxsize=32)
def coboundary_matrix(n: int, d: int) -> FieldMatrix:
    """D^d: rows are d-simplices, columns (d-1)-simplices of the complete complex."""
    _check(n, d)
    rows = list(itertools.combinations(range(1, n + 1), d + 1))
    cols = list(itertools.combinations(range(1, n + 1), d))
    index = {c: j for j, c in enumerate(cols)}
    entries = []
    for s in rows:
        line = [0] * len(cols)
        for j in range(d + 1):
            line[index[s[:j] + s[j + 1:]]] = -1 if j % 2 else 1
        entries.append(line)
    return FieldMatrix.from_rows(entries, rows, cols)


def phi_columns(n: int, d: int) -> list[Simplex]:
    return list(itertools.combinations(range(2, n + 1), d))


@lru_cache(maxsize=32)
def phi_matrix(n: int, d: int) -> FieldMatrix:
    """D^d restricted to the columns of (d-1)-faces avoiding vertex 1."""
    return coboundary_matrix(n, d).restrict_cols(phi_columns(n, d))


def phi_restricted(facets: Iterable[Iterable[int]], n: int, d: int) -> FieldMatrix:
    facets = _validate_facets(facets, n, d)
    return phi_matrix(n, d).restrict_rows(facets)


def phi_rank(facets, n: int, d: int) -> int:
    """Exact rank over Q of Phi on the given rows."""
    M = phi_restricted(facets, n, d)
    return rank(M) if M.shape[0] else 0


def phi_column_basis(facets, n: int, d: int) -> list[Simplex]:
    """Lex-greedy column basis of Phi restricted to the facet rows."""
    M = phi_restricted(facets, n, d)
    if not M.shape[0]:
        raise ValueError("empty facet set")
    return greedy_column_basis(M)


# -- Plucker coordinates of a generic d x (n-1) matrix ---------------------


def _plucker_point(n: int, d: int, seed, trial: int, prime: int):
    rng = seeded_rng(seed, "plucker", n, d, trial)
    return [[rng.randrange(prime) for _ in range(n - 1)] for _ in range(d)]


def _plucker_jacobian_row(C, t: Simplex, n: int, d: int, prime: int) -> list[int]:
    """Gradient of the Plucker coordinate det C[:, t] in all d(n-1) entries.

    Column ``t`` entries are vertex labels 2..n; matrix column of vertex v is v-2.
    """
    cols = [v - 2 for v in t]
    sub = [[C[r][c] for c in cols] for r in range(d)]
    row = [0] * (d * (n - 1))
    for r in range(d):
        for l, c in enumerate(cols):
            minor = [[sub[i][j] for j in range(d) if j != l] for i in range(d) if i != r]
            v = kernels.det(minor, prime) if minor else 1
            if (r + l) % 2:
                v = (-v) % prime
            row[r * (n - 1) + c] = v
    return row


def plucker_jacobian(n: int, d: int, seed=DEFAULT_SEED, trial: int = 0, prime: int = DEFAULT_PRIME) -> FieldMatrix:
    """Jacobian of all Plucker coordinates at a random matrix over GF(prime)."""
    _check(n, d)
    C = _plucker_point(n, d, seed, trial, prime)
    labels = phi_columns(n, d)
    rows = [_plucker_jacobian_row(C, t, n, d, prime) for t in labels]
    cols = [(r, v) for r in range(1, d + 1) for v in range(2, n + 1)]
    return FieldMatrix.from_rows(rows, labels, cols, prime)


def grassmann_rank(T: Iterable[Iterable[int]], n: int, d: int, seed=DEFAULT_SEED, trials: int = DEFAULT_TRIALS, prime: int = DEFAULT_PRIME) -> int:
    """Rank of a set of Plucker coordinates in their algebraic matroid."""
    _check(n, d)
    T = sorted({simplex(t) for t in T})
    for t in T:
        if len(t) != d or t[0] < 2 or t[-1] > n:
            raise ValueError(f"{t} is not a {d}-subset of [{n}] avoiding 1")
    if not T:
        return 0
    best = 0
    for trial in range(trials):
        C = _plucker_point(n, d, seed, trial, prime)
        rows = [_plucker_jacobian_row(C, t, n, d, prime) for t in T]
        best = max(best, kernels.rank(rows, d * (n - 1), prime))
        if best == len(T):
            break
    return best


def grassmann_independent(T, n: int, d: int, **kw) -> bool:
    T = {simplex(t) for t in T}
    return grassmann_rank(T, n, d, **kw) == len(T)


def composite_rank(facets, n: int, d: int, seed=DEFAULT_SEED, trials: int = DEFAULT_TRIALS, prime: int = DEFAULT_PRIME) -> int:
    """Rank of Phi_S times the Plucker Jacobian: the matroid rank of S via Phi."""
    facets = _validate_facets(facets, n, d)
    if not facets:
        return 0
    P = phi_matrix(n, d).restrict_rows(facets)
    best = 0
    for trial in range(trials):
        J = plucker_jacobian(n, d, seed, trial, prime)
        Pq = FieldMatrix.from_rows(P.entries, P.row_labels, P.col_labels, prime)
        prod = Pq.matmul(J)
        best = max(best, kernels.rank(prod.entries, prod.shape[1], prime))
        if best == len(facets):
            break
    return best


def ordered_column_basis(P: FieldMatrix, order) -> list[Simplex]:
    """Greedy column basis of ``P`` under the lex order induced by a vertex ordering."""
    pos = {v: i for i, v in enumerate(order)}
    return greedy_column_basis(P, lambda t: tuple(sorted(pos[v] for v in t)))


def relabeled_column_bases(facets, n: int, d: int):
    """Distinct (order, T) pairs: lex-greedy column bases of Phi_S, one per ordering of 2..n."""
    P = phi_restricted(facets, n, d)
    seen = set()
    for order in itertools.permutations(range(2, n + 1)):
        T = tuple(sorted(ordered_column_basis(P, order)))
        if T not in seen:
            seen.add(T)
            yield order, T


def phi_grassmann_witness(facets, n: int, d: int, independent=None, **kw):
    """An ordering of 2..n whose lex-greedy column basis of Phi_S is Plucker-independent.

    Returns ``(order, T)`` or None; None whenever Phi_S lacks full row rank.
    ``independent(T)`` overrides the Plucker test (the d=2 route plugs in
    orientations here).
    """
    facets = _validate_facets(facets, n, d)
    if not facets:
        return (tuple(range(2, n + 1)), ())
    if phi_rank(facets, n, d) < len(facets):
        return None
    if independent is None:
        def independent(T):
            return grassmann_independent(T, n, d, **kw)
    for order, T in relabeled_column_bases(facets, n, d):
        if independent(T):
            return order, T
    return None


def some_column_basis_independent(facets, n: int, d: int, **kw) -> list[Simplex] | None:
    """Any column basis of Phi_S that is Plucker-independent (matroid intersection).

    This existential condition is necessary for independence of S but not
    sufficient: cancellation between column bases can make S dependent anyway.
    """
    facets = _validate_facets(facets, n, d)
    if not facets:
        return []
    if phi_rank(facets, n, d) < len(facets):
        return None
    P = phi_restricted(facets, n, d)

    def col_indep(T: frozenset) -> bool:
        sub = P.restrict_cols(sorted(T))
        return len(bareiss_pivots(sub.entries, len(T))) == len(T)

    def plucker_indep(T: frozenset) -> bool:
        return grassmann_independent(T, n, d, **kw)

    found = max_common_independent(list(P.col_labels), col_indep, plucker_indep, target=len(facets))
    return found if len(found) == len(facets) else None


@dataclass(frozen=True)
class IndependenceReport:
    rigidity_independent: bool
    phi_full_row_rank: bool
    grassmann_independent: bool
    witness_order: tuple | None
    phi_rank: int
    rigidity_rank: int
    composite_rank: int
    column_basis: tuple

    @property
    def agree(self) -> bool:
        """Rank routes coincide and the necessary Phi condition is respected."""
        return (
            self.rigidity_rank == self.composite_rank
            and self.rigidity_independent == self.grassmann_independent
            and (self.phi_full_row_rank or not self.rigidity_independent)
        )

    def to_json(self) -> dict:
        return {
            "rigidity_independent": self.rigidity_independent,
            "phi_full_row_rank": self.phi_full_row_rank,
            "grassmann_independent": self.grassmann_independent,
            "rigidity_rank": self.rigidity_rank,
            "phi_rank": self.phi_rank,
            "composite_rank": self.composite_rank,
            "column_basis": [list(t) for t in self.column_basis],
            "witness_order": None if self.witness_order is None else list(self.witness_order),
            "agree": self.agree,
        }


def cross_check_independence(facets, n: int, d: int, seed=DEFAULT_SEED, trials: int = DEFAULT_TRIALS, prime: int = DEFAULT_PRIME) -> IndependenceReport:
    """Compare the rigidity-matrix route with the Phi / Plucker route."""
    facets = _validate_facets(facets, n, d)
    kw = dict(seed=seed, trials=trials, prime=prime)
    r = rigidity_verdict(facets, n, d, **kw).rank
    pr = phi_rank(facets, n, d)
    cr = composite_rank(facets, n, d, **kw)
    basis = tuple(phi_column_basis(facets, n, d)) if facets else ()
    witness = phi_grassmann_witness(facets, n, d, **kw)
    return IndependenceReport(
        rigidity_independent=r == len(facets),
        phi_full_row_rank=pr == len(facets),
        grassmann_independent=witness is not None,
        witness_order=None if witness is None else tuple(witness[0]),
        phi_rank=pr,
        rigidity_rank=r,
        composite_rank=cr,
        column_basis=basis,
    )
