"""Exact dense linear algebra over the rationals and over GF(q).

Everything downstream (rigidity ranks, Grassmannian ranks, shifting, Betti
numbers) reduces to three questions about a labelled matrix: its rank, its
kernel dimension, and its order-minimal column basis. Rational matrices are
eliminated fraction-free; prime-field matrices go through :mod:`volrig.kernels`.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Sequence

from . import kernels

#: Largest prime below 2**62 (2**62 - 57).
DEFAULT_PRIME = (1 << 62) - 57
DEFAULT_SEED = 20240101
DEFAULT_TRIALS = 2


@functools.lru_cache(maxsize=64)
def _is_prime(q: int) -> bool:
    from sympy import isprime

    return bool(isprime(q))


@dataclass(frozen=True)
class PrimeField:
    """GF(q) used as an evaluation device for generic points."""

    q: int = DEFAULT_PRIME

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 3 or not _is_prime(self.q):
            raise ValueError(f"modulus {self.q!r} is not an odd prime")

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.q)

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.q - 2, self.q)

    def reduce(self, x) -> int:
        """Image of an integer or rational in GF(q)."""
        if isinstance(x, Fraction):
            return x.numerator % self.q * self.inv(x.denominator) % self.q
        return int(x) % self.q


def seeded_rng(seed, *tags) -> random.Random:
    """Independent deterministic stream for (seed, tags).

    String seeding is stable across runs and platforms.
    """
    return random.Random("|".join(str(t) for t in (seed, *tags)))


def parse_scalar(value) -> Fraction:
    """Parse an int, a decimal/``"a/b"`` string or a float exactly."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_scalar(x) -> int | str:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class FieldMatrix:
    """Dense matrix with hashable row/column labels.

    ``prime=None`` means entries are rationals (ints or Fractions); otherwise
    entries are residues in ``[0, prime)``.
    """

    entries: tuple[tuple[Any, ...], ...]
    row_labels: tuple[Hashable, ...]
    col_labels: tuple[Hashable, ...]
    prime: int | None = None
    _col_index: dict = field(default=None, init=False, repr=False, compare=False)
    _row_index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.entries) != len(self.row_labels):
            raise ValueError("row label count does not match the number of rows")
        for row in self.entries:
            if len(row) != len(self.col_labels):
                raise ValueError("column label count does not match the row length")
        if len(set(self.row_labels)) != len(self.row_labels):
            raise ValueError("duplicate row labels")
        if len(set(self.col_labels)) != len(self.col_labels):
            raise ValueError("duplicate column labels")
        object.__setattr__(self, "_row_index", {l: i for i, l in enumerate(self.row_labels)})
        object.__setattr__(self, "_col_index", {l: j for j, l in enumerate(self.col_labels)})

    @classmethod
    def from_rows(cls, rows, row_labels=None, col_labels=None, prime=None) -> "FieldMatrix":
        rows = [tuple(r) for r in rows]
        ncols = len(rows[0]) if rows else (len(col_labels) if col_labels is not None else 0)
        if prime is not None:
            rows = [tuple(int(x) % prime for x in r) for r in rows]
        return cls(
            tuple(rows),
            tuple(range(len(rows))) if row_labels is None else tuple(row_labels),
            tuple(range(ncols)) if col_labels is None else tuple(col_labels),
            prime,
        )

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    def __getitem__(self, key):
        r, c = key
        return self.entries[self._row_index[r]][self._col_index[c]]

    def row(self, label) -> tuple:
        return self.entries[self._row_index[label]]

    def restrict_rows(self, labels: Iterable[Hashable]) -> "FieldMatrix":
        labels = tuple(labels)
        return FieldMatrix(
            tuple(self.entries[self._row_index[l]] for l in labels),
            labels,
            self.col_labels,
            self.prime,
        )

    def restrict_cols(self, labels: Iterable[Hashable]) -> "FieldMatrix":
        labels = tuple(labels)
        idx = [self._col_index[l] for l in labels]
        return FieldMatrix(
            tuple(tuple(row[j] for j in idx) for row in self.entries),
            self.row_labels,
            labels,
            self.prime,
        )

    def transpose(self) -> "FieldMatrix":
        cols = tuple(zip(*self.entries)) if self.entries else tuple(() for _ in self.col_labels)
        return FieldMatrix(cols, self.col_labels, self.row_labels, self.prime)

    def matmul(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.col_labels != other.row_labels:
            raise ValueError("inner labels do not match")
        if self.prime != other.prime:
            raise ValueError("matrices live over different fields")
        ocols = list(zip(*other.entries)) if other.entries else [() for _ in other.col_labels]
        q = self.prime
        out = []
        for row in self.entries:
            line = []
            for col in ocols:
                s = sum(a * b for a, b in zip(row, col) if a and b)
                line.append(s % q if q is not None else s)
            out.append(tuple(line))
        return FieldMatrix(tuple(out), self.row_labels, other.col_labels, q)

    def to_json(self) -> dict:
        return {
            "rows": [list(l) if isinstance(l, tuple) else l for l in self.row_labels],
            "cols": [list(l) if isinstance(l, tuple) else l for l in self.col_labels],
            "field": "Q" if self.prime is None else f"GF({self.prime})",
            "entries": [[format_scalar(x) for x in row] for row in self.entries],
        }


# -- rational elimination -------------------------------------------------


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def bareiss_pivots(rows: Sequence[Sequence], ncols: int) -> list[int]:
    """Pivot columns of a rational matrix by fraction-free elimination."""
    a = _integer_rows(rows)
    m = len(a)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        p = r
        while p < m and a[p][c] == 0:
            p += 1
        if p == m:
            continue
        a[r], a[p] = a[p], a[r]
        top = a[r]
        pv = top[c]
        for i in range(r + 1, m):
            row = a[i]
            f = row[c]
            # each entry is a minor of the original matrix, so // is exact
            a[i] = [(pv * x - f * y) // prev for x, y in zip(row, top)]
        prev = pv
        pivots.append(c)
        r += 1
    return pivots


def _pivots(M: FieldMatrix) -> list[int]:
    nrows, ncols = M.shape
    if nrows == 0 or ncols == 0:
        return []
    if M.prime is None:
        return bareiss_pivots(M.entries, ncols)
    return kernels.pivot_columns(M.entries, ncols, M.prime)


def rank(M: FieldMatrix) -> int:
    """Rank over the matrix's own field."""
    nrows, ncols = M.shape
    if nrows > ncols:
        M = M.transpose()
    return len(_pivots(M))


def kernel_dim(M: FieldMatrix) -> int:
    """Dimension of the right kernel: cols - rank."""
    return M.shape[1] - rank(M)


def greedy_column_basis(
    M: FieldMatrix,
    order: Sequence[Hashable] | Callable[[Hashable], Any] | None = None,
) -> list[Hashable]:
    """Order-minimal column basis of ``M``.

    ``order`` is either a full sequence of the column labels, a sort key on
    labels, or ``None`` for the matrix's own column order. A column is kept iff
    it is not in the span of the columns before it.
    """
    if order is None:
        labels = list(M.col_labels)
    elif callable(order):
        labels = sorted(M.col_labels, key=order)
    else:
        labels = list(order)
        if len(labels) != len(M.col_labels) or set(labels) != set(M.col_labels):
            raise ValueError("order must list every column label exactly once")
    N = M.restrict_cols(labels)
    return [labels[j] for j in _pivots(N)]


# -- small rational helpers -----------------------------------------------


def det_rational(rows: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            out = -out
        out *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return out


def solve_rational(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of ``A x = b`` (A may be tall), or None.

    Returns None when the solution is not unique or the system is inconsistent.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [[Fraction(x) for x in A[i]] + [Fraction(b[i])] for i in range(m)]
    r = 0
    where = []
    for c in range(n):
        p = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if p is None:
            return None
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        where.append(r)
        r += 1
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    return [aug[where[c]][n] for c in range(n)]


def schwartz_zippel_bound(degree: int, q: int, trials: int = 1) -> Fraction:
    """Probability that ``trials`` independent draws all hit a root."""
    if degree <= 0:
        return Fraction(0)
    return min(Fraction(1), Fraction(degree, q)) ** trials
