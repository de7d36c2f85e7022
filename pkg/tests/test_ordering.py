import itertools
import random

import pytest
from hypothesis import given, strategies as st

from kfe import CorruptionError, Graph, Ordering, apply_shift, compute_shift_diff, generate, restore_parent_ordering, smallest_last
from kfe.ordering import greedy_shift_pairs, reinsert_removed, replay_shifts, undo_shifts


def test_smallest_last_p3():
    assert smallest_last(Graph(3, [(0, 1), (1, 2)])).seq == [0, 1, 2]


def test_smallest_last_k4():
    assert smallest_last(generate("complete", n=4)).seq == [0, 1, 2, 3]


def test_smallest_last_star():
    # leaves go first in label order; once three leaves are gone the center
    # ties with the last leaf at degree 1 and wins on the label tie-break
    assert smallest_last(generate("star", n=5)).seq == [1, 2, 3, 0, 4]


def test_smallest_last_deterministic():
    g = generate("random_gnp", n=30, p=0.2, seed=9)
    assert smallest_last(g).seq == smallest_last(g).seq


def test_smallest_last_is_min_degree_at_every_suffix():
    rng = random.Random(3)
    for trial in range(80):
        n = rng.randint(1, 12)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4])
        seq = smallest_last(g).seq
        remaining = set(seq)
        for v in seq:
            degs = {u: len([w for w in g.adj[u] if w in remaining]) for u in remaining}
            assert degs[v] == min(degs.values())
            remaining.remove(v)


def test_degeneracy_property():
    # every suffix degree along the ordering is at most the graph's degeneracy
    g = generate("random_gnp", n=25, p=0.3, seed=4)
    seq = smallest_last(g).seq
    remaining = set(seq)
    suffix_degs = []
    for v in seq:
        suffix_degs.append(len([w for w in g.adj[v] if w in remaining]))
        remaining.remove(v)
    degeneracy = max(suffix_degs)
    assert all(d <= degeneracy for d in suffix_degs)


def test_apply_shift_example():
    o = Ordering([10, 11, 12, 13])
    assert apply_shift(o, 13, 2).seq == [10, 13, 11, 12]


def test_apply_shift_zero_is_identity():
    o = Ordering([5, 6, 7])
    assert apply_shift(o, 7, 0).seq == [5, 6, 7]


def test_apply_shift_out_of_range():
    with pytest.raises(ValueError):
        apply_shift(Ordering([1, 2, 3]), 2, 2)


def test_shift_diff_identity():
    assert compute_shift_diff([4, 5, 6], [4, 5, 6]) == []


def test_shift_diff_single_rotation():
    assert compute_shift_diff([1, 2, 3], [3, 1, 2]) == [(3, 2)]


def test_shift_diff_different_sets_rejected():
    with pytest.raises(ValueError):
        compute_shift_diff([1, 2], [1, 3])


def test_shift_diff_replay_exhaustive_small():
    for n in range(1, 6):
        base = list(range(n))
        for perm in itertools.permutations(base):
            shifts = compute_shift_diff(base, list(perm))
            assert replay_shifts(base, shifts) == list(perm)
            assert all(p >= 1 for _, p in shifts)


@given(st.permutations(list(range(10))), st.permutations(list(range(10))))
def test_shift_diff_replay_random(a, b):
    shifts = compute_shift_diff(a, b)
    assert replay_shifts(a, shifts) == list(b)


@given(st.permutations(list(range(9))), st.permutations(list(range(9))))
def test_undo_inverts_shifts(a, b):
    shifts = greedy_shift_pairs(a, b)
    assert undo_shifts(list(b), shifts) == list(a)


def test_reinsert_removed_positions():
    assert reinsert_removed([7, 9], [(5, 0), (6, 2)]) == [5, 7, 6, 9]


def test_reinsert_collision_rejected():
    with pytest.raises(CorruptionError):
        reinsert_removed([1], [(5, 0), (6, 0)])
    with pytest.raises(CorruptionError):
        reinsert_removed([1], [(5, 7)])


def test_restore_parent_ordering_trivial():
    assert restore_parent_ordering([1, 2, 3], [], []).seq == [1, 2, 3]


def test_restore_parent_ordering_p3_descent():
    # parent order (0,1,2), picking 0 removes {0,1}; the child order is (2)
    assert restore_parent_ordering([2], [], [(0, 0), (1, 1)]).seq == [0, 1, 2]


def test_restore_parent_ordering_random_roundtrip():
    rng = random.Random(17)
    for trial in range(200):
        n = rng.randint(1, 12)
        parent = list(range(100, 100 + n))
        rng.shuffle(parent)
        k = rng.randint(0, n)
        removed_vs = rng.sample(parent, k)
        removed = [(v, parent.index(v)) for v in removed_vs]
        partial = [v for v in parent if v not in removed_vs]
        child = partial[:]
        rng.shuffle(child)
        shifts = compute_shift_diff(partial, child)
        got = restore_parent_ordering(child, shifts, removed)
        assert got.seq == parent


def test_ordering_rejects_duplicates():
    with pytest.raises(ValueError):
        Ordering([1, 1, 2])
