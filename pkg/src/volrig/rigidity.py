"""Signed-volume measurements, the rigidity matrix and the generic rank oracle.

A d-simplex i_1 < ... < i_{d+1} is measured by the determinant of the
(d+1)x(d+1) matrix whose first row is all ones and whose columns below are
p(i_1), ..., p(i_{d+1}). "Generic" is realised by uniform points of a large
prime field: a rank observed at a random point never exceeds the generic
rank, so full-rank verdicts are exact and rank deficits carry a
Schwartz-Zippel failure bound.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .complex import Simplex, SimplicialComplex, is_pure, simplex
from .linalg import (
    DEFAULT_PRIME,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    FieldMatrix,
    PrimeField,
    det_rational,
    kernel_dim,
    parse_scalar,
    schwartz_zippel_bound,
    seeded_rng,
    solve_rational,
)


class ImpureComplexError(ValueError):
    pass


def required_rank(n: int, d: int) -> int:
    """Rank of the complete rigidity matrix: dn - (d^2 + d - 1)."""
    return d * n - (d * d + d - 1)


@dataclass(frozen=True)
class Configuration:
    """n points in dimension d, rational (prime=None) or over GF(prime)."""

    points: tuple[tuple, ...]
    prime: int | None = None

    def __post_init__(self):
        if not self.points:
            raise ValueError("configuration has no points")
        d = len(self.points[0])
        if d < 1 or any(len(pt) != d for pt in self.points):
            raise ValueError("all points must have the same positive dimension")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def d(self) -> int:
        return len(self.points[0])

    def __getitem__(self, vertex: int) -> tuple:
        """Point of a 1-based vertex label."""
        return self.points[vertex - 1]

    @classmethod
    def rational(cls, points: Iterable[Iterable]) -> "Configuration":
        return cls(tuple(tuple(parse_scalar(x) for x in pt) for pt in points))

    @classmethod
    def from_json(cls, data: dict) -> "Configuration":
        if not isinstance(data, dict) or "points" not in data:
            raise ValueError("configuration JSON needs a 'points' list")
        return cls.rational(data["points"])

    def to_json(self) -> dict:
        from .linalg import format_scalar

        return {"points": [[format_scalar(x) for x in pt] for pt in self.points]}


@dataclass(frozen=True)
class Framework:
    complex: SimplicialComplex
    config: Configuration

    def __post_init__(self):
        _check_dims(self.complex, self.config)


@dataclass(frozen=True)
class RigidityVerdict:
    rank: int
    required: int
    rigid: bool
    trials: int
    failure_bound: Fraction
    prime: int = DEFAULT_PRIME
    seed: int | str = DEFAULT_SEED

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "required": self.required,
            "rigid": self.rigid,
            "trials": self.trials,
            "prime": self.prime,
            "seed": self.seed,
            "failure_bound": str(self.failure_bound),
        }


def random_configuration(n: int, d: int, seed=DEFAULT_SEED, prime: int = DEFAULT_PRIME, tag="config") -> Configuration:
    rng = seeded_rng(seed, tag, n, d)
    return Configuration(tuple(tuple(rng.randrange(prime) for _ in range(d)) for _ in range(n)), prime)


def random_rational_configuration(n: int, d: int, seed=DEFAULT_SEED, bound: int = 50) -> Configuration:
    """Points with small random rational coordinates (for exact tests)."""
    rng = seeded_rng(seed, "rational", n, d)
    return Configuration(
        tuple(
            tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, 7)) for _ in range(d))
            for _ in range(n)
        )
    )


def _check_dims(cx: SimplicialComplex, p: Configuration):
    if p.n != cx.n:
        raise ValueError(f"configuration has {p.n} points but the complex has n={cx.n}")
    if p.d != cx.d:
        raise ValueError(f"configuration is {p.d}-dimensional but the complex has d={cx.d}")


def _check_pure(cx: SimplicialComplex, ignore_impure: bool):
    if is_pure(cx):
        return
    msg = "complex is not pure: maximal faces below the top dimension will not be measured"
    if not ignore_impure:
        raise ImpureComplexError(msg)
    warnings.warn(msg, stacklevel=3)


def _det(rows, prime):
    if prime is None:
        return det_rational(rows)
    return kernels.det(rows, prime)


def simplex_volume(pts: Sequence[Sequence], prime: int | None = None):
    """Signed volume determinant of d+1 points (columns below a row of ones)."""
    d = len(pts) - 1
    rows = [[1] * (d + 1)] + [[pt[c] for pt in pts] for c in range(d)]
    return _det(rows, prime)


def simplex_gradient(pts: Sequence[Sequence], prime: int | None = None) -> list[list]:
    """Gradient of the volume determinant, one length-d block per point.

    Block l, coordinate c is the signed cofactor of entry (c+1, l).
    """
    d = len(pts) - 1
    m = [[1] * (d + 1)] + [[pt[c] for pt in pts] for c in range(d)]
    blocks = []
    for l in range(d + 1):
        block = []
        for c in range(d):
            r = c + 1
            minor = [[m[i][j] for j in range(d + 1) if j != l] for i in range(d + 1) if i != r]
            v = _det(minor, prime)
            if (r + l) % 2:
                v = -v if prime is None else (-v) % prime
            block.append(v)
        blocks.append(block)
    return blocks


def volume_measurement(cx: SimplicialComplex, p: Configuration, ignore_impure: bool = False) -> dict[Simplex, object]:
    """Signed volumes of the top simplices, keyed in lex order."""
    _check_dims(cx, p)
    _check_pure(cx, ignore_impure)
    return {s: simplex_volume([p[v] for v in s], p.prime) for s in cx.top}


def _rigidity_rows(facets: Sequence[Simplex], p: Configuration) -> list[list]:
    d = p.d
    rows = []
    for s in facets:
        row = [0] * (d * p.n)
        for v, block in zip(s, simplex_gradient([p[v] for v in s], p.prime)):
            row[(v - 1) * d:(v - 1) * d + d] = block
        rows.append(row)
    return rows


def rigidity_matrix_rows(facets: Iterable[Iterable[int]], p: Configuration) -> FieldMatrix:
    """Rows of the complete rigidity matrix R(p) indexed by the given d-simplices."""
    facets = [simplex(f) for f in facets]
    for f in facets:
        if len(f) != p.d + 1 or f[0] < 1 or f[-1] > p.n:
            raise ValueError(f"{f} is not a {p.d}-simplex on [{p.n}]")
    cols = [(v, c) for v in range(1, p.n + 1) for c in range(1, p.d + 1)]
    return FieldMatrix.from_rows(_rigidity_rows(facets, p), facets, cols, p.prime)


def rigidity_matrix(cx: SimplicialComplex, p: Configuration, ignore_impure: bool = False) -> FieldMatrix:
    """R(p) restricted to the top simplices; columns are (vertex, coordinate)."""
    _check_dims(cx, p)
    _check_pure(cx, ignore_impure)
    return rigidity_matrix_rows(cx.top, p)


def _validate_facets(facets, n: int, d: int) -> list[Simplex]:
    if d < 1 or n < d + 1:
        raise ValueError(f"need n >= d+1 and d >= 1 (got n={n}, d={d})")
    out = sorted({simplex(f) for f in facets})
    for f in out:
        if len(f) != d + 1 or f[0] < 1 or f[-1] > n:
            raise ValueError(f"{f} is not a {d}-simplex on [{n}]")
    return out


def rigidity_verdict(
    facets: Iterable[Iterable[int]],
    n: int,
    d: int,
    seed=DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
    prime: int = DEFAULT_PRIME,
) -> RigidityVerdict:
    """Generic rank of a set of d-simplices in the rigidity matroid."""
    facets = _validate_facets(facets, n, d)
    PrimeField(prime)
    if trials < 1:
        raise ValueError("need at least one trial")
    req = required_rank(n, d)
    upper = min(len(facets), req)
    best = 0
    for t in range(trials):
        if best == upper:
            break
        p = random_configuration(n, d, seed=seed, prime=prime, tag=f"rigidity/{t}")
        if facets:
            best = max(best, kernels.rank(_rigidity_rows(facets, p), d * n, prime))
    bound = Fraction(0) if best == upper else schwartz_zippel_bound(d * upper, prime, trials)
    return RigidityVerdict(best, req, best == req, trials, bound, prime, seed)


def generic_rank(facets, n: int, d: int, seed=DEFAULT_SEED, trials: int = DEFAULT_TRIALS, prime: int = DEFAULT_PRIME) -> int:
    return rigidity_verdict(facets, n, d, seed, trials, prime).rank


def is_locally_rigid(
    cx: SimplicialComplex,
    seed=DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
    prime: int = DEFAULT_PRIME,
    ignore_impure: bool = False,
) -> RigidityVerdict:
    if cx.n < cx.d + 1:
        raise ValueError("need n >= d+1")
    _check_pure(cx, ignore_impure)
    return rigidity_verdict(cx.top, cx.n, cx.d, seed, trials, prime)


def matroid_rank(facets, n: int, d: int, **kw) -> int:
    return generic_rank(facets, n, d, **kw)


def matroid_is_independent(facets, n: int, d: int, **kw) -> bool:
    facets = _validate_facets(facets, n, d)
    return generic_rank(facets, n, d, **kw) == len(facets)


def is_basis(facets, n: int, d: int, **kw) -> bool:
    facets = _validate_facets(facets, n, d)
    return len(facets) == required_rank(n, d) and matroid_is_independent(facets, n, d, **kw)


def trivial_flex_dim(n: int, d: int, seed=DEFAULT_SEED, prime: int = DEFAULT_PRIME) -> int:
    """Kernel dimension of the complete rigidity matrix at a random point."""
    if d < 1 or n < d + 1:
        raise ValueError(f"need n >= d+1 and d >= 1 (got n={n}, d={d})")
    p = random_configuration(n, d, seed=seed, prime=prime, tag="flex")
    return kernel_dim(rigidity_matrix_rows(itertools.combinations(range(1, n + 1), d + 1), p))


def _same_field(p: Configuration, q: Configuration):
    if p.n != q.n or p.d != q.d:
        raise ValueError("configurations differ in shape")
    if p.prime != q.prime:
        raise ValueError("configurations live over different fields")


def are_equivalent(cx: SimplicialComplex, p: Configuration, q: Configuration) -> bool:
    """Equal signed volumes on every top simplex."""
    _same_field(p, q)
    _check_dims(cx, p)
    return all(
        simplex_volume([p[v] for v in s], p.prime) == simplex_volume([q[v] for v in s], q.prime)
        for s in cx.top
    )


def are_congruent(n: int, d: int, p: Configuration, q: Configuration) -> bool:
    """Equal signed volumes on every (d+1)-subset of [n]."""
    _same_field(p, q)
    if p.n != n or p.d != d:
        raise ValueError("configuration shape does not match (n, d)")
    return all(
        simplex_volume([p[v] for v in s], p.prime) == simplex_volume([q[v] for v in s], q.prime)
        for s in itertools.combinations(range(1, n + 1), d + 1)
    )


def pin_configuration(p: Configuration) -> tuple[Configuration, Fraction]:
    """Affinely normalise so that p(1) = 0 and p(1+i) = e_i.

    Returns ``(pinned, scale)`` where ``scale`` is the volume of the first
    simplex; every signed volume of the pinned configuration equals the
    original one divided by ``scale``.
    """
    if p.prime is not None:
        raise ValueError("pinning is defined for rational configurations")
    d = p.d
    if p.n < d + 1:
        raise ValueError("need at least d+1 points to pin")
    base = p[1]
    # columns are p(i+1) - p(1)
    P = [[p[i + 2][r] - base[r] for i in range(d)] for r in range(d)]
    scale = det_rational(P)
    if scale == 0:
        raise ValueError("leading simplex is degenerate")
    pinned = []
    for j in range(1, p.n + 1):
        rhs = [p[j][r] - base[r] for r in range(d)]
        pinned.append(tuple(solve_rational(P, rhs)))
    return Configuration(tuple(pinned)), scale


def apply_affine(p: Configuration, linear: Sequence[Sequence], shift: Sequence) -> Configuration:
    """Image of a rational configuration under x -> A x + b."""
    d = p.d
    return Configuration(
        tuple(
            tuple(sum(Fraction(linear[r][c]) * pt[c] for c in range(d)) + Fraction(shift[r]) for r in range(d))
            for pt in p.points
        ),
        p.prime,
    )
