"""Simplicial boundary matrices and reduced Betti numbers over Q.

Only the top Betti number feeds rigidity logic. Lower ones are reported over
the rationals, so integral torsion is invisible to them.
"""

from __future__ import annotations

from .complex import SimplicialComplex
from .linalg import FieldMatrix, rank


class BettiVector(tuple):
    """Reduced rational Betti numbers indexed 0..d."""


def boundary_matrix(cx: SimplicialComplex, k: int) -> FieldMatrix:
    """Matrix of the boundary map from k-chains to (k-1)-chains.

    Entry ``(tau, sigma)`` is ``(-1)**j`` when tau is sigma with its j-th
    vertex (0-based) removed.
    """
    if not 1 <= k <= cx.d:
        raise ValueError(f"boundary index k={k} outside 1..{cx.d}")
    rows = cx.layer(k - 1)
    cols = cx.layer(k)
    index = {t: i for i, t in enumerate(rows)}
    entries = [[0] * len(cols) for _ in rows]
    for c, s in enumerate(cols):
        for j in range(len(s)):
            entries[index[s[:j] + s[j + 1:]]][c] = -1 if j % 2 else 1
    return FieldMatrix.from_rows(entries, rows, cols)


def betti(cx: SimplicialComplex) -> BettiVector:
    """Reduced Betti numbers ``dim ker d_k - rank d_{k+1}`` for k = 0..d."""
    ranks = [0] * (cx.d + 2)
    # augmentation C_0 -> Q has rank 1 on a nonempty complex
    ranks[0] = 1 if cx.layer(0) else 0
    for k in range(1, cx.d + 1):
        ranks[k] = rank(boundary_matrix(cx, k))
    out = []
    for k in range(cx.d + 1):
        out.append(len(cx.faces[k]) - ranks[k] - ranks[k + 1])
    return BettiVector(out)
