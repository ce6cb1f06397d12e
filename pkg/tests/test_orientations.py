import itertools
import random

import pytest
from hypothesis import given, strategies as st

from volrig.complex import from_facets, lgrc
from volrig.orientations import (
    ACTWitness,
    Orientation,
    SearchLimitError,
    bernstein_independent,
    canonical_act,
    combinatorial_witness,
    exists_acyclic_act_free,
    find_act,
    is_acyclic,
    is_rigid_combinatorial,
    orientation_from_order,
    rigid_combinatorial,
)
from volrig.rigidity import ImpureComplexError, generic_rank, is_locally_rigid
from conftest import random_pure_complexes

SPANNING_ARCS = [(2, 3), (2, 4), (2, 5), (3, 4), (5, 3)]
# two triangles sharing vertex 2; the only ACT passes through 2 twice
BOWTIE = [(2, 3), (4, 3), (4, 2), (5, 2), (5, 6), (2, 6)]


def test_spanning_orientation_is_act_free():
    O = Orientation.build([], SPANNING_ARCS)
    assert is_acyclic(O)
    assert find_act(O) is None
    O2 = exists_acyclic_act_free([2, 3, 4, 5], [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5)])
    assert O2 is not None and is_acyclic(O2) and find_act(O2) is None


def test_four_cycle_act():
    O = Orientation.build([], [(1, 2), (3, 2), (3, 4), (1, 4)])
    w = find_act(O)
    assert w is not None and w.sequence == (1, 2, 3, 4)
    assert w.is_valid_in(O)
    assert is_acyclic(O)


def test_complete_graph_k4_has_no_act_free_orientation():
    edges = list(itertools.combinations(range(1, 5), 2))
    assert exists_acyclic_act_free(range(1, 5), edges) is None
    assert not bernstein_independent(edges)


def test_trees_and_small_graphs():
    tree = [(1, 2), (2, 3), (2, 4), (4, 5)]
    O = exists_acyclic_act_free([], tree)
    assert O is not None and find_act(O) is None
    assert bernstein_independent(tree)
    assert exists_acyclic_act_free([1, 2, 3], []) is not None
    assert bernstein_independent([(1, 2), (2, 3), (1, 3)])


def test_trail_and_cycle_readings_differ():
    O = Orientation.build([], BOWTIE)
    w = find_act(O, trails=True)
    assert w is not None and w.is_valid_in(O)
    assert len(set(w.sequence)) < len(w.sequence)
    assert find_act(O, trails=False) is None
    assert not ACTWitness(w.sequence, trail=False).is_valid_in(O)


def test_cyclic_orientation_detected():
    assert not is_acyclic(Orientation.build([], [(1, 2), (2, 3), (3, 1)]))


def test_orientation_validation():
    with pytest.raises(ValueError):
        Orientation.build([], [(1, 2), (2, 1)])
    with pytest.raises(ValueError):
        Orientation.build([], [(1, 1)])
    with pytest.raises(ValueError):
        Orientation((1, 2), ((1, 3),))


def test_search_limits():
    edges = [(i, i + 1) for i in range(1, 14)]
    with pytest.raises(SearchLimitError):
        find_act(Orientation.build([], edges))
    with pytest.raises(SearchLimitError):
        exists_acyclic_act_free([], edges, limit=10)


def _all_orientations(vertices, edges):
    for flips in itertools.product((False, True), repeat=len(edges)):
        yield Orientation.build(vertices, [(b, a) if f else (a, b) for (a, b), f in zip(edges, flips)])


def test_acyclic_orientations_come_from_orderings():
    rng = random.Random(2)
    verts = [1, 2, 3, 4, 5]
    pairs = list(itertools.combinations(verts, 2))
    for _ in range(15):
        edges = rng.sample(pairs, rng.randint(3, 7))
        from_orders = {orientation_from_order(p, edges) for p in itertools.permutations(verts)}
        acyclic = {O for O in _all_orientations(verts, edges) if is_acyclic(O)}
        assert from_orders == acyclic


def test_ordering_search_matches_brute_force():
    rng = random.Random(3)
    verts = [1, 2, 3, 4, 5]
    pairs = list(itertools.combinations(verts, 2))
    for _ in range(30):
        edges = rng.sample(pairs, rng.randint(3, 7))
        brute = any(is_acyclic(O) and find_act(O) is None for O in _all_orientations(verts, edges))
        assert (exists_acyclic_act_free(verts, edges) is not None) == brute


@given(st.lists(st.integers(1, 9), min_size=4, max_size=10).filter(lambda s: len(s) % 2 == 0), st.integers(0, 4))
def test_canonical_act_is_rotation_and_reversal_invariant(seq, shift):
    shift = 2 * (shift % (len(seq) // 2))
    rotated = seq[shift:] + seq[:shift]
    reversed_seq = [seq[0]] + seq[1:][::-1]
    assert canonical_act(seq) == canonical_act(rotated) == canonical_act(reversed_seq)


def test_witness_is_canonical():
    O = Orientation.build([], [(3, 4), (1, 4), (1, 2), (3, 2)])
    w = find_act(O)
    assert w.sequence == canonical_act(w.sequence)


def test_d1_combinatorial():
    assert is_rigid_combinatorial(from_facets(4, [(1, 2), (2, 3), (3, 4)]))
    assert not is_rigid_combinatorial(from_facets(4, [(1, 2), (3, 4)]))
    v = rigid_combinatorial(from_facets(4, [(1, 2), (2, 3), (1, 3), (3, 4)]))
    assert v.rigid and len(v.basis) == 3


def test_d2_examples(bipyramid):
    lgrc5 = from_facets(5, [(1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 5)])
    assert is_rigid_combinatorial(lgrc5)
    assert is_rigid_combinatorial(bipyramid)
    v = rigid_combinatorial(bipyramid)
    assert len(v.basis) == 5
    assert combinatorial_witness(bipyramid.top, 5) is None
    for n in (5, 6, 7):
        assert is_rigid_combinatorial(lgrc(n, 2))


def test_combinatorial_agrees_with_rank_oracle():
    for cx in random_pure_complexes(120, 2, (4, 6), seed=31, spread=5):
        assert is_rigid_combinatorial(cx) == is_locally_rigid(cx).rigid
        indep = generic_rank(cx.top, cx.n, 2) == len(cx.top)
        assert (combinatorial_witness(cx.top, cx.n) is not None) == indep


def test_combinatorial_input_errors():
    with pytest.raises(ValueError):
        rigid_combinatorial(from_facets(5, [(1, 2, 3, 4)]))
    with pytest.raises(ImpureComplexError):
        rigid_combinatorial(from_facets(5, [(1, 2, 3), (4, 5)]))
    with pytest.raises(SearchLimitError):
        rigid_combinatorial(lgrc(12, 2))
