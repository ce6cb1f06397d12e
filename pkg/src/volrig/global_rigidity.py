"""One-sided certification of generic global volume rigidity.

Three moves, each preserving "generically globally rigid" in the direction
needed:

* add: if a vertex i and a d-simplex J avoiding it have all d+1 cone facets
  {i} + (J - v) present, J's volume is a signed sum of theirs, so J may be
  added (both directions hold).
* remove: if i lies in at least d+1 facets whose vertex-i block of the
  rigidity matrix has rank d, and the complex without i's star is
  generically globally rigid, then so is the complex.
* base: the complex contains every d-simplex on its vertex set, or contains
  a relabelled lexicographically greedy rigid complex (seed facet F, apex a,
  and for every other vertex j all d facets {a} + T + {j}, T a (d-1)-subset
  of F - a). Both are generically globally rigid.

The certifier never claims non-rigidity; "unknown" is an honest answer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import kernels
from .complex import Simplex, SimplicialComplex, from_facets, is_pure, simplex
from .linalg import DEFAULT_PRIME, DEFAULT_SEED, PrimeField, seeded_rng, solve_rational
from .rigidity import (
    Configuration,
    ImpureComplexError,
    required_rank,
    rigidity_verdict,
    simplex_gradient,
    simplex_volume,
)

CERTIFIED = "certified"
UNKNOWN = "unknown"


# -- trace steps -----------------------------------------------------------


@dataclass(frozen=True)
class AddStep:
    simplex: Simplex
    cone: int

    def to_json(self) -> dict:
        return {"op": "add", "simplex": list(self.simplex), "cone": self.cone}


@dataclass(frozen=True)
class LGRCWitness:
    """Relabelled LGRC: seed facet, apex in it, remaining vertices in attachment order."""

    apex: int
    facet: Simplex
    order: tuple[int, ...]

    def facets(self, d: int) -> list[Simplex]:
        rest = [v for v in self.facet if v != self.apex]
        out = [self.facet]
        for j in self.order:
            for T in itertools.combinations(rest, d - 1):
                out.append(simplex((self.apex, *T, j)))
        return out

    def to_json(self) -> dict:
        return {"apex": self.apex, "facet": list(self.facet), "order": list(self.order)}

    @classmethod
    def from_json(cls, data: dict) -> "LGRCWitness":
        return cls(int(data["apex"]), simplex(data["facet"]), tuple(int(v) for v in data["order"]))


@dataclass(frozen=True)
class RemoveStep:
    vertex: int
    link_lgrc: LGRCWitness | None = None  # informational: an LGRC whose ridges lie in the link

    def to_json(self) -> dict:
        return {
            "op": "remove",
            "vertex": self.vertex,
            "link_lgrc": None if self.link_lgrc is None else self.link_lgrc.to_json(),
        }


@dataclass(frozen=True)
class BaseStep:
    kind: str  # "complete" or "lgrc"
    witness: LGRCWitness

    def to_json(self) -> dict:
        return {"op": "base", "kind": self.kind, **self.witness.to_json()}


Step = AddStep | RemoveStep | BaseStep


@dataclass(frozen=True)
class GlobalCertificate:
    verdict: str
    n: int
    d: int
    trace: tuple = ()
    seed: int | str = DEFAULT_SEED
    prime: int = DEFAULT_PRIME
    notes: tuple = field(default=(), compare=False)

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "n": self.n,
            "d": self.d,
            "seed": self.seed,
            "prime": self.prime,
            "trace": [s.to_json() for s in self.trace],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GlobalCertificate":
        try:
            steps = [_step_from_json(s) for s in data["trace"]]
            return cls(
                data["verdict"], int(data["n"]), int(data["d"]), tuple(steps),
                data.get("seed", DEFAULT_SEED), int(data.get("prime", DEFAULT_PRIME)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed certificate: {exc}") from None

    def relabel(self, mapping) -> "GlobalCertificate":
        """Apply a vertex bijection to every step."""
        def w(x: LGRCWitness | None):
            if x is None:
                return None
            return LGRCWitness(mapping[x.apex], simplex(mapping[v] for v in x.facet), tuple(mapping[v] for v in x.order))

        steps = []
        for s in self.trace:
            if isinstance(s, AddStep):
                steps.append(AddStep(simplex(mapping[v] for v in s.simplex), mapping[s.cone]))
            elif isinstance(s, RemoveStep):
                steps.append(RemoveStep(mapping[s.vertex], w(s.link_lgrc)))
            else:
                steps.append(BaseStep(s.kind, w(s.witness)))
        return GlobalCertificate(self.verdict, self.n, self.d, tuple(steps), self.seed, self.prime)


def _step_from_json(data: dict) -> Step:
    op = data["op"]
    if op == "add":
        return AddStep(simplex(data["simplex"]), int(data["cone"]))
    if op == "remove":
        link = data.get("link_lgrc")
        return RemoveStep(int(data["vertex"]), None if link is None else LGRCWitness.from_json(link))
    if op == "base":
        if data["kind"] not in ("complete", "lgrc"):
            raise ValueError(f"unknown base kind {data['kind']!r}")
        return BaseStep(data["kind"], LGRCWitness.from_json(data))
    raise ValueError(f"unknown step {op!r}")


# -- closure -----------------------------------------------------------------


def _closure(facets: set, d: int) -> list[AddStep]:
    """Add cone-implied simplices in place until nothing changes."""
    steps = []
    changed = True
    while changed:
        changed = False
        by_ridge: dict = {}
        for f in facets:
            for j in range(d + 1):
                by_ridge.setdefault(f[:j] + f[j + 1:], []).append(f)
        candidates = set()
        for group in by_ridge.values():
            for f, g in itertools.combinations(group, 2):
                candidates.add(simplex(set(f) | set(g)))
        for W in sorted(candidates):
            faces = list(itertools.combinations(W, d + 1))
            missing = [s for s in faces if s not in facets]
            if len(missing) == 1:
                J = missing[0]
                (cone,) = set(W) - set(J)
                facets.add(J)
                steps.append(AddStep(J, cone))
                changed = True
    return steps


def implied_simplex_closure(cx: SimplicialComplex) -> SimplicialComplex:
    if not is_pure(cx):
        raise ImpureComplexError("closure is defined for pure complexes")
    facets = set(cx.top)
    _closure(facets, cx.d)
    return from_facets(cx.n, facets)


# -- base cases ---------------------------------------------------------------


def _find_lgrc(facets: set, vertices: Iterable[int], d: int) -> LGRCWitness | None:
    V = sorted(vertices)
    for F in sorted(f for f in facets if set(f) <= set(V)):
        rest_vertices = [j for j in V if j not in F]
        for a in F:
            others = [v for v in F if v != a]
            ridges = list(itertools.combinations(others, d - 1))
            if all(simplex((a, *T, j)) in facets for j in rest_vertices for T in ridges):
                return LGRCWitness(a, F, tuple(rest_vertices))
    return None


def _is_complete(facets: set, vertices, d: int) -> bool:
    return all(s in facets for s in itertools.combinations(sorted(vertices), d + 1))


def _base(facets: set, vertices, d: int) -> BaseStep | None:
    V = sorted(vertices)
    if len(V) < d + 1:
        return None
    if _is_complete(facets, V, d):
        F = tuple(V[: d + 1])
        return BaseStep("complete", LGRCWitness(F[0], F, tuple(V[d + 1:])))
    w = _find_lgrc(facets, V, d)
    return None if w is None else BaseStep("lgrc", w)


def detect_lgrc_spanning(cx: SimplicialComplex) -> LGRCWitness | None:
    """A relabelled LGRC inside the complex spanning all of [n], if any."""
    if not is_pure(cx):
        raise ImpureComplexError("LGRC detection needs a pure complex")
    return _find_lgrc(set(cx.top), range(1, cx.n + 1), cx.d)


# -- vertex removal --------------------------------------------------------------


def _vertex_block_rank(vertex: int, star: list[Simplex], d: int, seed, prime: int) -> int:
    """Rank of the rigidity-matrix block of ``vertex`` on its star at a seeded point."""
    verts = sorted({v for f in star for v in f})
    rng = seeded_rng(seed, "removal", vertex)
    points = {v: tuple(rng.randrange(prime) for _ in range(d)) for v in verts}
    rows = []
    for f in star:
        grads = simplex_gradient([points[v] for v in f], prime)
        rows.append(grads[f.index(vertex)])
    return kernels.rank(rows, d, prime)


def _removable(vertex: int, facets: set, d: int, seed, prime: int) -> list[Simplex] | None:
    star = sorted(f for f in facets if vertex in f)
    if len(star) < d + 1:
        return None
    if _vertex_block_rank(vertex, star, d, seed, prime) < d:
        return None
    return star


def _link_lgrc(vertex: int, star: list[Simplex], d: int) -> LGRCWitness | None:
    """An LGRC on the neighbours whose (d-1)-faces all lie in the link."""
    link = {tuple(v for v in f if v != vertex) for f in star}
    nbrs = sorted({v for f in star for v in f} - {vertex})
    spanned = {
        J for J in itertools.combinations(nbrs, d + 1)
        if all(J[:j] + J[j + 1:] in link for j in range(d + 1))
    }
    return _find_lgrc(spanned, nbrs, d) if spanned else None


def _locally_rigid_on(facets: set, vertices, d: int, seed, prime: int) -> bool:
    V = sorted(vertices)
    if len(facets) < required_rank(len(V), d):
        return False
    relabel = {v: i + 1 for i, v in enumerate(V)}
    faces = [tuple(relabel[v] for v in f) for f in facets]
    return rigidity_verdict(faces, len(V), d, seed=seed, prime=prime).rigid


# -- certifier --------------------------------------------------------------------


def _require(cx: SimplicialComplex):
    if not is_pure(cx):
        raise ImpureComplexError("global certification needs a pure complex")
    if cx.n < cx.d + 1:
        raise ValueError("need n >= d+1")


def certify_globally_rigid(
    cx: SimplicialComplex,
    depth_limit: int | None = None,
    seed=DEFAULT_SEED,
    prime: int = DEFAULT_PRIME,
) -> GlobalCertificate:
    """Search for a closure / vertex-removal trace ending in a base case."""
    _require(cx)
    PrimeField(prime)
    d = cx.d
    depth_limit = cx.n if depth_limit is None else depth_limit
    failed: set = set()

    def search(facets: frozenset, V: frozenset, depth: int):
        work = set(facets)
        adds = _closure(work, d)
        key = (frozenset(work), V)
        if key in failed:
            return None
        base = _base(work, V, d)
        if base is not None:
            return adds + [base]
        if depth > 0:
            for i in sorted(V):
                star = _removable(i, work, d, seed, prime)
                if star is None:
                    continue
                rest = frozenset(work - set(star))
                V2 = V - {i}
                if len(V2) < d + 1 or not _locally_rigid_on(rest, V2, d, seed, prime):
                    continue
                sub = search(rest, V2, depth - 1)
                if sub is not None:
                    return adds + [RemoveStep(i, _link_lgrc(i, star, d))] + sub
        failed.add(key)
        return None

    trace = search(frozenset(cx.top), frozenset(range(1, cx.n + 1)), depth_limit)
    if trace is None:
        return GlobalCertificate(UNKNOWN, cx.n, d, (), seed, prime)
    return GlobalCertificate(CERTIFIED, cx.n, d, tuple(trace), seed, prime)


def _replay_states(cx: SimplicialComplex, cert: GlobalCertificate):
    """Yield (step, facets, vertices) before each step; raise ValueError on a failed precondition."""
    d = cx.d
    facets = set(cx.top)
    V = set(range(1, cx.n + 1))
    if not cert.trace or not isinstance(cert.trace[-1], BaseStep):
        raise ValueError("trace must end with a base step")
    for k, step in enumerate(cert.trace):
        yield step, set(facets), set(V)
        if isinstance(step, AddStep):
            J, i = step.simplex, step.cone
            if len(J) != d + 1 or i in J or i not in V or not set(J) <= V or J in facets:
                raise ValueError(f"bad add step {step}")
            if not all(simplex((i, *J[:j], *J[j + 1:])) in facets for j in range(d + 1)):
                raise ValueError(f"cone facets missing for {step}")
            facets.add(J)
        elif isinstance(step, RemoveStep):
            i = step.vertex
            if i not in V:
                raise ValueError(f"vertex {i} already removed")
            if _removable(i, facets, d, cert.seed, cert.prime) is None:
                raise ValueError(f"vertex {i} fails the removal precondition")
            facets = {f for f in facets if i not in f}
            V.discard(i)
        else:
            if k != len(cert.trace) - 1:
                raise ValueError("base step before the end of the trace")
            w = step.witness
            if set(w.facet) | set(w.order) != V or len(w.facet) != d + 1 or w.apex not in w.facet:
                raise ValueError("base witness does not span the remaining vertices")
            if step.kind == "complete" and not _is_complete(facets, V, d):
                raise ValueError("remaining complex is not complete")
            if not all(f in facets for f in w.facets(d)):
                raise ValueError("base LGRC facets missing")


def replay_certificate(cx: SimplicialComplex, cert: GlobalCertificate) -> bool:
    """Re-check every precondition of a certified trace from scratch."""
    _require(cx)
    if cert.verdict != CERTIFIED:
        raise ValueError("only certified traces can be replayed")
    if (cert.n, cert.d) != (cx.n, cx.d):
        return False
    try:
        for _ in _replay_states(cx, cert):
            pass
    except ValueError:
        return False
    return True


# -- solving the equivalence equations ------------------------------------------------


def random_unimodular_affine(d: int, rng, bound: int = 5) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Random determinant-one rational matrix and translation."""
    A = [[Fraction(int(r == c)) for c in range(d)] for r in range(d)]
    for _ in range(3 * d):
        i, j = rng.sample(range(d), 2) if d > 1 else (0, 0)
        if i == j:
            break
        t = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
        A[i] = [x + t * y for x, y in zip(A[i], A[j])]
    b = [Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(d)]
    return A, b


def _solve_point(vertex: int, simplices, known: dict, target: Configuration, d: int):
    rows, rhs = [], []
    for s in simplices:
        pts = [known[v] if v != vertex else (0,) * d for v in s]
        grad = simplex_gradient(pts)[s.index(vertex)]
        rows.append(grad)
        rhs.append(simplex_volume([target[v] for v in s]) - simplex_volume(pts))
    return solve_rational(rows, rhs)


def solve_equivalent(cx: SimplicialComplex, cert: GlobalCertificate, p: Configuration, linear, shift) -> Configuration | None:
    """Configuration q equivalent to p, gauged so the base facet sits at A p + b.

    Follows the certificate backwards: base vertices are solved from d
    linear equations each, removed vertices from their star. Returns None
    if any linear system is singular or inconsistent.
    """
    d = cx.d
    states = list(_replay_states(cx, cert))
    base_step, _, _ = states[-1]
    w = base_step.witness
    known = {}
    for v in w.facet:
        known[v] = tuple(sum(Fraction(linear[r][c]) * p[v][c] for c in range(d)) + Fraction(shift[r]) for r in range(d))
    rest = [x for x in w.facet if x != w.apex]
    for j in w.order:
        eqs = [simplex((w.apex, *T, j)) for T in itertools.combinations(rest, d - 1)]
        sol = _solve_point(j, eqs, known, p, d)
        if sol is None:
            return None
        known[j] = tuple(sol)
    for step, facets, _ in reversed(states[:-1]):
        if isinstance(step, RemoveStep):
            star = sorted(f for f in facets if step.vertex in f)
            sol = _solve_point(step.vertex, star, known, p, d)
            if sol is None:
                return None
            known[step.vertex] = tuple(sol)
    return Configuration(tuple(known[v] for v in range(1, cx.n + 1)))
