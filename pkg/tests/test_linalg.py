from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from volrig import kernels
from volrig.linalg import (
    DEFAULT_PRIME,
    FieldMatrix,
    PrimeField,
    bareiss_pivots,
    det_rational,
    greedy_column_basis,
    kernel_dim,
    parse_scalar,
    rank,
    schwartz_zippel_bound,
    solve_rational,
)

small_ints = st.integers(-4, 4)


def matrices(max_rows=6, max_cols=6, elements=small_ints):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(elements, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def fraction_pivots(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    pivots, r = [], 0
    for c in range(len(a[0])):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, len(a)):
            f = a[i][c] / a[r][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return pivots


@given(matrices())
def test_bareiss_matches_fraction_elimination(rows):
    assert bareiss_pivots(rows, len(rows[0])) == fraction_pivots(rows)


@given(matrices(elements=st.fractions(min_value=-3, max_value=3, max_denominator=5)))
def test_bareiss_handles_fractions(rows):
    assert bareiss_pivots(rows, len(rows[0])) == fraction_pivots(rows)


@given(matrices(max_rows=7, max_cols=7, elements=st.integers(0, 10**6)))
def test_backends_agree_on_pivots(rows):
    q = DEFAULT_PRIME
    ref = kernels.python_backend.pivot_columns(rows, len(rows[0]), q)
    assert kernels.pivot_columns(rows, len(rows[0]), q) == ref
    if kernels.compiled_backend is not None:
        assert kernels.compiled_backend.pivot_columns(rows, len(rows[0]), q) == ref


@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_modular_det_matches_rational(rows):
    q = 1000003
    assert kernels.det(rows, q) == det_rational(rows) % q
    if kernels.compiled_backend is not None:
        assert kernels.compiled_backend.det(rows, q) == kernels.python_backend.det(rows, q)


def test_minors_backends_agree():
    X = [[(7 * i + 3 * j * j + 1) % 101 for j in range(5)] for i in range(5)]
    rs = [[0, 1], [1, 3], [2, 4]]
    cs = [[0, 2], [3, 4]]
    ref = kernels.python_backend.minors(X, rs, cs, 101)
    assert kernels.minors(X, rs, cs, 101) == ref
    assert ref[0][0] == (X[0][0] * X[1][2] - X[0][2] * X[1][0]) % 101


def test_prime_field_validation():
    assert PrimeField().q == DEFAULT_PRIME
    with pytest.raises(ValueError):
        PrimeField(15)
    with pytest.raises(ValueError):
        PrimeField(2)
    F = PrimeField(7)
    assert F.reduce(Fraction(1, 3)) == 5
    assert F.inv(3) * 3 % 7 == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_rank_kernel_and_transpose():
    M = FieldMatrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(M) == 2
    assert kernel_dim(M) == 1
    assert rank(M.transpose()) == 2
    Mq = FieldMatrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 1, 1]], prime=7)
    assert rank(Mq) == 2


def test_rank_is_field_dependent():
    M = [[1, 1], [1, -1]]
    assert rank(FieldMatrix.from_rows(M)) == 2
    assert rank(FieldMatrix.from_rows(M, prime=3)) == 2
    assert kernels.rank([[1, 1], [1, 1 + 3]], 2, 3) == 1


def test_greedy_column_basis_orders():
    M = FieldMatrix.from_rows([[1, 1, 0], [0, 0, 1]], col_labels=["a", "b", "c"])
    assert greedy_column_basis(M) == ["a", "c"]
    assert greedy_column_basis(M, ["b", "a", "c"]) == ["b", "c"]
    assert greedy_column_basis(M, lambda l: {"a": 2, "b": 1, "c": 0}[l]) == ["c", "b"]
    with pytest.raises(ValueError):
        greedy_column_basis(M, ["a", "b"])


def test_labels_validated():
    with pytest.raises(ValueError):
        FieldMatrix(((1, 2),), ("r",), ("c",))
    with pytest.raises(ValueError):
        FieldMatrix(((1,), (2,)), ("r", "r"), ("c",))


def test_matmul_and_restrict():
    A = FieldMatrix.from_rows([[1, 2], [3, 4]], ["x", "y"], ["u", "v"])
    B = FieldMatrix.from_rows([[1], [1]], ["u", "v"], ["w"])
    assert A.matmul(B).entries == ((3,), (7,))
    assert A.restrict_rows(["y"]).entries == ((3, 4),)
    assert A.restrict_cols(["v"]).entries == ((2,), (4,))
    assert A["y", "u"] == 3
    with pytest.raises(ValueError):
        B.matmul(A)


def test_solve_rational():
    assert solve_rational([[2, 0], [0, 4]], [1, 1]) == [Fraction(1, 2), Fraction(1, 4)]
    assert solve_rational([[1, 1], [2, 2]], [1, 2]) is None
    assert solve_rational([[1], [1]], [1, 2]) is None
    assert solve_rational([[1], [2]], [1, 2]) == [1]


def test_parse_scalar():
    assert parse_scalar("3/4") == Fraction(3, 4)
    assert parse_scalar(0.5) == Fraction(1, 2)
    assert parse_scalar(0.1) == Fraction(1, 10)
    assert parse_scalar(7) == 7
    with pytest.raises(TypeError):
        parse_scalar(True)


def test_schwartz_zippel_bound():
    assert schwartz_zippel_bound(0, 7) == 0
    assert schwartz_zippel_bound(3, 7, 2) == Fraction(9, 49)
    assert schwartz_zippel_bound(10, 7) == 1
