import itertools
import random

import pytest

from volrig.complex import complete_complex, from_facets
from volrig.grassmann import (
    coboundary_matrix,
    composite_rank,
    cross_check_independence,
    grassmann_independent,
    grassmann_rank,
    phi_column_basis,
    phi_grassmann_witness,
    phi_matrix,
    phi_rank,
    phi_restricted,
    some_column_basis_independent,
)
from volrig.homology import boundary_matrix
from volrig.rigidity import generic_rank, required_rank
from conftest import random_pure_complexes

LGRC_5_2 = [(1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 5)]
BIPYRAMID = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 5), (2, 4, 5), (3, 4, 5)]
# dependent (vertex 1 lies in a single triangle) yet some column basis of Phi_S is Plucker-independent
CANCELLING = [(1, 5, 6), (2, 3, 4), (2, 3, 5), (2, 3, 6), (2, 5, 6), (3, 4, 5), (3, 4, 6)]


def test_phi_matrix_n5():
    P = phi_matrix(5, 2)
    assert P.col_labels == ((2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5))
    assert [list(r) for r in P.entries] == [
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
        [1, -1, 0, 1, 0, 0],
        [1, 0, -1, 0, 1, 0],
        [0, 1, -1, 0, 0, 1],
        [0, 0, 0, 1, -1, 1],
    ]


def test_bipyramid_phi():
    M = phi_restricted(BIPYRAMID, 5, 2)
    assert [list(r) for r in M.entries] == [
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [1, 0, -1, 0, 1, 0],
        [0, 1, -1, 0, 0, 1],
        [0, 0, 0, 1, -1, 1],
    ]
    assert phi_rank(BIPYRAMID, 5, 2) == 5
    assert phi_grassmann_witness(BIPYRAMID, 5, 2) is None
    assert generic_rank(BIPYRAMID, 5, 2) == 5


def test_lgrc_column_basis():
    assert phi_column_basis(LGRC_5_2, 5, 2) == [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5)]
    assert grassmann_independent([(2, 3), (2, 4), (2, 5), (3, 4), (3, 5)], 5, 2)
    report = cross_check_independence(LGRC_5_2, 5, 2)
    assert report.agree and report.rigidity_independent and report.grassmann_independent


@pytest.mark.parametrize("n,d", [(n, d) for d in (1, 2, 3) for n in range(d + 1, 8)])
def test_phi_full_column_rank(n, d):
    P = phi_matrix(n, d)
    assert phi_rank(P.row_labels, n, d) == P.shape[1]


@pytest.mark.parametrize("n,d", [(4, 1), (5, 2), (6, 2), (6, 3)])
def test_coboundary_is_signed_boundary_transpose(n, d):
    D = coboundary_matrix(n, d)
    B = boundary_matrix(complete_complex(n, d), d)
    for i, s in enumerate(D.row_labels):
        for j, t in enumerate(D.col_labels):
            assert abs(D.entries[i][j]) == abs(B[t, s])
    # consecutive coboundaries compose to zero
    if d >= 2:
        prev = coboundary_matrix(n, d - 1)
        prod = D.matmul(prev)
        assert all(v == 0 for row in prod.entries for v in row)


def test_top_cycle_row_dependency():
    # a top cycle of the bipyramid gives a dependency among the Phi rows
    B = boundary_matrix(from_facets(5, BIPYRAMID), 2)
    cycles = [
        signs
        for signs in itertools.product((1, -1), repeat=len(BIPYRAMID))
        if signs[0] == 1
        and all(sum(c * B[e, s] for c, s in zip(signs, BIPYRAMID)) == 0 for e in B.row_labels)
    ]
    assert len(cycles) == 1
    M = phi_restricted(BIPYRAMID, 5, 2)
    combo = [sum(c * M[s, t] for c, s in zip(cycles[0], BIPYRAMID)) for t in M.col_labels]
    assert combo == [0] * 6


def test_grassmann_rank_of_all_coordinates():
    for n, d in [(4, 2), (5, 2), (6, 2), (6, 3)]:
        cols = list(itertools.combinations(range(2, n + 1), d))
        assert grassmann_rank(cols, n, d) == d * (n - 1 - d) + 1
    with pytest.raises(ValueError):
        grassmann_rank([(1, 2)], 5, 2)


def test_composite_rank_equals_generic_rank():
    for cx in random_pure_complexes(60, 2, (4, 7), seed=3, spread=5):
        assert composite_rank(cx.top, cx.n, 2) == generic_rank(cx.top, cx.n, 2)
    for cx in random_pure_complexes(20, 3, (5, 6), seed=4, spread=4):
        assert composite_rank(cx.top, cx.n, 3) == generic_rank(cx.top, cx.n, 3)


def test_witness_agrees_with_rank_oracle():
    for cx in random_pure_complexes(150, 2, (4, 6), seed=21, spread=4):
        independent = generic_rank(cx.top, cx.n, 2) == len(cx.top)
        assert (phi_grassmann_witness(cx.top, cx.n, 2) is not None) == independent
    for cx in random_pure_complexes(40, 3, (5, 6), seed=22, spread=3):
        r = cross_check_independence(cx.top, cx.n, 3)
        assert r.agree


def test_existential_column_basis_is_not_sufficient():
    assert phi_rank(CANCELLING, 6, 2) == len(CANCELLING)
    T = some_column_basis_independent(CANCELLING, 6, 2)
    assert T is not None and len(T) == 7
    assert generic_rank(CANCELLING, 6, 2) == 6
    assert phi_grassmann_witness(CANCELLING, 6, 2) is None
    assert cross_check_independence(CANCELLING, 6, 2).agree


def test_existential_column_basis_is_necessary():
    rng = random.Random(8)
    faces = list(itertools.combinations(range(1, 7), 3))
    for _ in range(30):
        S = rng.sample(faces, rng.randint(1, 7))
        if generic_rank(S, 6, 2) == len(S):
            assert some_column_basis_independent(S, 6, 2) is not None


def test_empty_and_errors():
    assert phi_rank([], 5, 2) == 0
    assert composite_rank([], 5, 2) == 0
    with pytest.raises(ValueError):
        phi_column_basis([], 5, 2)
    with pytest.raises(ValueError):
        phi_matrix(2, 2)
    with pytest.raises(ValueError):
        phi_restricted([(1, 2)], 5, 2)


def test_complete_complex_rank():
    for n in (4, 5, 6):
        assert composite_rank(complete_complex(n, 2).top, n, 2) == required_rank(n, 2)
