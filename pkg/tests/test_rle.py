import itertools
import random

import pytest
from hypothesis import given, strategies as st

from kfe import CorruptionError, Graph, RleMatrix, RleSeq, build_matrix, decode, encode, generate
from kfe.rle import _merge_row, _segments, _split_row, induced_matrix, validate_runs


# --- encoding ---------------------------------------------------------------


def test_encode_worked_example():
    assert encode([1, 1, 1, 0, 0, 0, 1, 1, 0]).runs == [0, 3, 3, 2, 1, 0]


def test_encode_all_zeros():
    assert encode([0, 0, 0, 0]).runs == [4, 0]


def test_encode_all_ones():
    assert encode([1, 1, 1]).runs == [0, 3]


def test_encode_empty():
    assert encode([]).runs == []


def test_decode_worked_example():
    assert decode(RleSeq([0, 3, 3, 2, 1, 0])) == [1, 1, 1, 0, 0, 0, 1, 1, 0]


def test_decode_trivial():
    assert decode(RleSeq([4, 0])) == [0, 0, 0, 0]
    assert decode(RleSeq([])) == []


@pytest.mark.parametrize("bad", [[0, 0], [1], [1, 0, 0, 1], [2, -1], [0, 1, 0, 1]])
def test_non_canonical_rejected(bad):
    with pytest.raises(ValueError):
        validate_runs(bad)


def test_roundtrip_exhaustive_to_length_12():
    for length in range(13):
        for bits in itertools.product((0, 1), repeat=length):
            seq = encode(bits)
            validate_runs(seq.runs)
            assert decode(seq) == list(bits)


@given(st.lists(st.integers(0, 1), max_size=400))
def test_roundtrip_random(bits):
    seq = encode(bits)
    assert decode(seq) == bits


@given(st.lists(st.integers(0, 1), max_size=400))
def test_run_count_bound(bits):
    # |runs| <= min(2*zeros, 2*ones) + 2
    seq = encode(bits)
    zeros = bits.count(0)
    ones = bits.count(1)
    assert len(seq.runs) <= min(2 * zeros, 2 * ones) + 2


def test_seq_lengths():
    seq = encode([1, 0, 0, 1, 1])
    assert len(seq) == 5
    assert seq.ones == 3
    assert seq.zeros == 2


# --- matrix construction ----------------------------------------------------


def p3():
    return Graph(3, [(0, 1), (1, 2)])


def test_build_matrix_p3_rows():
    m = build_matrix(p3(), [0, 1, 2])
    assert m.row_runs(0) == [1, 1, 1, 0]
    assert m.row_runs(1) == [0, 1, 1, 1]
    assert m.row_runs(2) == [1, 1, 1, 0]


def test_build_matrix_k2_rows():
    m = build_matrix(Graph(2, [(0, 1)]), [0, 1])
    assert m.row_runs(0) == [1, 1]
    assert m.row_runs(1) == [0, 1, 1, 0]


def test_build_matrix_edgeless():
    m = build_matrix(Graph(3), [2, 0, 1])
    assert all(m.row_runs(i) == [3, 0] for i in range(3))


def test_build_matrix_requires_permutation():
    with pytest.raises(ValueError):
        build_matrix(p3(), [0, 1])
    with pytest.raises(ValueError):
        build_matrix(p3(), [0, 1, 1])


def test_matrix_roundtrips_bits():
    g = generate("random_gnp", n=9, p=0.5, seed=2)
    m = build_matrix(g, list(range(9)))
    bits = m.to_bits()
    for i in range(9):
        for j in range(9):
            assert bits[i][j] == (1 if g.has_edge(i, j) else 0)
    m.validate()


def test_dump_format():
    m = build_matrix(p3(), [0, 1, 2])
    assert m.dump().splitlines() == ["0: 1 1 1 0", "1: 0 1 1 1", "2: 1 1 1 0"]


def test_total_entries_linear_bound():
    # total stored run entries <= 4n + 4m
    for seed in range(5):
        g = generate("random_gnp", n=14, p=0.4, seed=seed)
        m = build_matrix(g, list(range(14)))
        assert m.entries <= 4 * g.n + 4 * g.m


# --- closed-neighborhood removal and restore --------------------------------


def test_remove_closed_neighborhood_p3():
    m = build_matrix(p3(), [0, 1, 2])
    rec = m.remove_closed_neighborhood(0)
    assert m.labels == [2]
    assert m.row_runs(0) == [1, 0]
    assert [lab for lab, _ in rec.removed] == [0, 1]
    assert rec.positions == [(0, 0), (1, 1)]
    # vertex 2 keeps a 1 against removed neighbor column 1, so its slice is stored
    assert rec.r_structs == [(2, [0, 1])]
    assert rec.degree == 1


def test_remove_closed_neighborhood_complete():
    m = build_matrix(generate("complete", n=4), [0, 1, 2, 3])
    rec = m.remove_closed_neighborhood(1)
    assert m.n == 0
    assert len(rec.removed) == 4
    assert rec.r_structs == []


def test_remove_closed_neighborhood_edgeless():
    m = build_matrix(Graph(4), [0, 1, 2, 3])
    rec = m.remove_closed_neighborhood(0)
    assert m.n == 3
    assert all(m.row_runs(i) == [3, 0] for i in range(3))
    assert len(rec.removed) == 1


def test_restore_roundtrip_p3():
    m = build_matrix(p3(), [0, 1, 2])
    want = m.copy()
    rec = m.remove_closed_neighborhood(0)
    m.restore(rec, [0, 1, 2])
    assert m == want


def test_restore_roundtrip_random_all_vertices():
    rng = random.Random(4)
    for trial in range(300):
        n = rng.randint(1, 12)
        p = rng.choice([0.15, 0.35, 0.6])
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
        order = list(range(n))
        rng.shuffle(order)
        for v in range(n):
            m = build_matrix(g, order)
            want = m.copy()
            rec = m.remove_closed_neighborhood(v)
            m.validate()
            m.restore(rec, order)
            assert m == want, (n, sorted(g.edges()), order, v)


def test_restore_from_shuffled_child_order():
    # the child may come back with rows in its own order; restore must realign
    g = generate("random_gnp", n=10, p=0.35, seed=6)
    order = list(range(10))
    m = build_matrix(g, order)
    want = m.copy()
    rec = m.remove_closed_neighborhood(3)
    child_labels = m.labels
    rng = random.Random(0)
    shuffled = child_labels[:]
    rng.shuffle(shuffled)
    m.permute(shuffled)
    m.restore(rec, order)
    assert m == want


def test_restore_rejects_tampered_record():
    m = build_matrix(p3(), [0, 1, 2])
    rec = m.remove_closed_neighborhood(0)
    rec.r_structs = [(2, [0, 2])]  # wrong slice length
    with pytest.raises(CorruptionError):
        m.restore(rec, [0, 1, 2])


def test_interleave_symbolic_pattern():
    # picked bits (1,1,0,1,0,1,1,0,0,0,0); removed-column bits x1..x5 land on
    # the 1-positions, child bits y1..y6 on the 0-positions, in order
    picked = encode([1, 1, 0, 1, 0, 1, 1, 0, 0, 0, 0]).runs
    segs = _segments(picked, None)
    xs = [1, 0, 1, 1, 0]
    ys = [0, 1, 1, 0, 0, 1]
    child, rpart = encode(ys).runs, encode(xs).runs
    merged = decode(RleSeq(_merge_row(child, rpart, segs)))
    assert merged == [xs[0], xs[1], ys[0], xs[2], ys[1], xs[3], xs[4], ys[2], ys[3], ys[4], ys[5]]
    # and splitting the merged row recovers both parts
    child2, rpart2 = _split_row(encode(merged).runs, segs)
    assert child2 == child and rpart2 == rpart


# --- first-vertex removal and reassembly ------------------------------------


def test_remove_first_vertex_p3():
    m = build_matrix(p3(), [0, 1, 2])
    label, runs = m.remove_first_vertex()
    assert label == 0 and runs == [1, 1, 1, 0]
    assert m.labels == [1, 2]
    assert m.row_runs(0) == [1, 1]
    assert m.row_runs(1) == [0, 1, 1, 0]
    # matches a fresh build of the induced subgraph
    assert m == induced_matrix(p3(), [1, 2])


def test_remove_first_vertex_single():
    m = build_matrix(Graph(1), [0])
    m.remove_first_vertex()
    assert m.n == 0
    with pytest.raises(ValueError):
        m.remove_first_vertex()


def test_remove_first_vertex_edgeless():
    m = build_matrix(Graph(3), [0, 1, 2])
    m.remove_first_vertex()
    assert all(m.row_runs(i) == [2, 0] for i in range(2))


def test_remove_first_vertex_matches_induced_random():
    rng = random.Random(11)
    for trial in range(120):
        n = rng.randint(2, 11)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4])
        order = list(range(n))
        rng.shuffle(order)
        m = build_matrix(g, order)
        m.remove_first_vertex()
        assert m == induced_matrix(g, order[1:])


def test_reassemble_roundtrip():
    rng = random.Random(8)
    for trial in range(120):
        n = rng.randint(0, 11)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4])
        order = list(range(n))
        rng.shuffle(order)
        m = build_matrix(g, order)
        want = m.copy()
        retained = [m.remove_first_vertex() for _ in range(n)]
        assert m.n == 0
        m.reassemble(retained)
        assert m == want


def test_reassemble_requires_empty():
    m = build_matrix(p3(), [0, 1, 2])
    with pytest.raises(ValueError):
        m.reassemble([])


def test_permute_roundtrip():
    g = generate("random_gnp", n=8, p=0.5, seed=5)
    m = build_matrix(g, list(range(8)))
    want = m.copy()
    m.permute([3, 1, 4, 0, 7, 6, 2, 5])
    m.validate()
    assert m != want
    m.permute(list(range(8)))
    assert m == want
