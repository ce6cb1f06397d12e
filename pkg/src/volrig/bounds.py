"""Face-number lower bounds for bases of the volume rigidity matroid."""

from __future__ import annotations

from dataclasses import dataclass

from .complex import SimplicialComplex, f_vector, is_pure
from .rigidity import ImpureComplexError, required_rank

CAVEAT = "meeting every bound is necessary for a basis but does not imply rigidity"


def binom(a: int, b: int) -> int:
    """Binomial coefficient, 0 when b < 0 or b > a."""
    if b < 0 or a < 0 or b > a:
        return 0
    from math import comb

    return comb(a, b)


def face_lower_bound(n: int, d: int, k: int) -> int:
    """C(d+1, k+1) + sum_{l=0}^{d-1} (n-d-1) C(d-l, k-l)."""
    if d < 0 or n < d + 1:
        raise ValueError(f"need n >= d+1 (got n={n}, d={d})")
    if not 0 <= k <= d:
        raise ValueError(f"k={k} outside 0..{d}")
    return binom(d + 1, k + 1) + sum((n - d - 1) * binom(d - l, k - l) for l in range(d))


def bound_vector(n: int, d: int) -> tuple[int, ...]:
    return tuple(face_lower_bound(n, d, k) for k in range(d + 1))


@dataclass(frozen=True)
class BoundRow:
    k: int
    bound: int
    actual: int

    @property
    def meets(self) -> bool:
        return self.actual >= self.bound

    @property
    def equality(self) -> bool:
        return self.actual == self.bound


@dataclass(frozen=True)
class BoundReport:
    n: int
    d: int
    rows: tuple[BoundRow, ...]
    facet_count_is_basis_size: bool
    caveat: str = CAVEAT

    @property
    def meets_all(self) -> bool:
        return all(r.meets for r in self.rows)

    @property
    def verdict(self) -> str:
        if self.meets_all:
            return "consistent with a basis"
        if self.facet_count_is_basis_size:
            return "cannot be a basis"
        return "bounds fail"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "rows": [
                {"k": r.k, "bound": r.bound, "actual": r.actual, "meets": r.meets, "equality": r.equality}
                for r in self.rows
            ],
            "meets_all": self.meets_all,
            "verdict": self.verdict,
            "caveat": self.caveat,
        }


def audit_f_vector(cx: SimplicialComplex) -> BoundReport:
    if not is_pure(cx):
        raise ImpureComplexError("bound audit needs a pure complex")
    f = f_vector(cx)
    rows = tuple(BoundRow(k, face_lower_bound(cx.n, cx.d, k), f.faces(k)) for k in range(cx.d + 1))
    return BoundReport(cx.n, cx.d, rows, f.faces(cx.d) == required_rank(cx.n, cx.d))
