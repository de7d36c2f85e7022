"""Enumerate every independent set (the empty set and all non-maximal ones
included) of an undirected graph, streamed as diffs between consecutive
solutions.

Two engines share one contract and must emit byte-identical streams:

* :func:`enumerate_reference` — plain recursive binary partition over copied
  induced subgraphs. Obviously correct, quadratic per-level space. The
  baseline every other behavior is tested against.
* :func:`enumerate_linear_space` — the same traversal driven by a single
  run-length-encoded adjacency matrix that is destructively narrowed on the
  way down and rebuilt bit-for-bit on the way up, so total auxiliary storage
  stays linear in the input size.

Both visit solutions in DFS pre-order, expanding the children of an iteration
in smallest-last order of its graph (minimum degree first, smallest label on
ties). Each emitted solution differs from its predecessor by ``pop`` removals
from the tail of a running vertex stack followed by at most one ``push``, so
the whole output stream is linear in the number of solutions.
"""

from __future__ import annotations

import os
import sys
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import CorruptionError, MalformedStreamError
from .graph import Graph
from .ordering import greedy_shift_pairs, reinsert_removed, smallest_last_order, undo_shifts
from .rle import build_matrix, induced_matrix

__all__ = [
    "SolutionDiff",
    "Sink",
    "CountingSink",
    "CollectSink",
    "MaterializeSink",
    "LimitSink",
    "TextStreamSink",
    "BinaryStreamSink",
    "enumerate_reference",
    "enumerate_linear_space",
    "count_only",
    "replay_diffs",
    "format_diff_text",
    "parse_diff_text",
    "encode_diff_binary",
    "decode_diff_binary",
]


class SolutionDiff(NamedTuple):
    """Delta from the previously emitted solution: drop ``pop`` vertices from
    the tail, then append ``push`` (``None`` only on the leading empty set)."""

    pop: int
    push: int | None


class Sink:
    """Receives each solution diff in order. ``emit`` returns False to stop
    the enumeration; the engines then unwind without further rollback."""

    def emit(self, diff: SolutionDiff) -> bool:
        raise NotImplementedError


class CountingSink(Sink):
    def __init__(self):
        self.count = 0

    def emit(self, diff: SolutionDiff) -> bool:
        self.count += 1
        return True


class CollectSink(Sink):
    """Keeps the raw diff stream."""

    def __init__(self):
        self.diffs: list[SolutionDiff] = []

    def emit(self, diff: SolutionDiff) -> bool:
        self.diffs.append(diff)
        return True


class MaterializeSink(Sink):
    """Replays the stream on the fly and keeps each solution as a tuple."""

    def __init__(self):
        self.solutions: list[tuple[int, ...]] = []
        self._stack: list[int] = []

    def emit(self, diff: SolutionDiff) -> bool:
        pop, push = diff
        if pop:
            del self._stack[len(self._stack) - pop :]
        if push is not None:
            self._stack.append(push)
        self.solutions.append(tuple(self._stack))
        return True


class LimitSink(Sink):
    """Forwards to an inner sink, stopping after `limit` solutions. The
    emitted stream is exactly the first `limit` entries of the full stream."""

    def __init__(self, inner: Sink, limit: int):
        if limit < 1:
            raise ValueError("limit must be at least 1")
        self.inner = inner
        self.remaining = limit

    def emit(self, diff: SolutionDiff) -> bool:
        keep_going = self.inner.emit(diff)
        self.remaining -= 1
        return bool(keep_going) and self.remaining > 0


class TextStreamSink(Sink):
    """Writes the text diff format: ``S`` for the leading empty set, then one
    ``d <pop> <push>`` line per solution."""

    def __init__(self, fp):
        self.fp = fp
        self._first = True

    def emit(self, diff: SolutionDiff) -> bool:
        pop, push = diff
        if self._first:
            if pop or push is not None:
                raise MalformedStreamError("stream must start with the empty set")
            self.fp.write("S\n")
            self._first = False
        else:
            self.fp.write(f"d {pop} {push}\n")
        return True


class BinaryStreamSink(Sink):
    """Writes the binary diff format (unsigned LEB128 varint pairs: pop, then
    push + 1 with 0 meaning "no push")."""

    def __init__(self, fp):
        self.fp = fp

    def emit(self, diff: SolutionDiff) -> bool:
        pop, push = diff
        self.fp.write(_varint(pop) + _varint(0 if push is None else push + 1))
        return True


# ---------------------------------------------------------------------------
# reference engine


class _Abort(Exception):
    pass


def enumerate_reference(g: Graph, sink: Sink | None = None) -> int:
    """Binary-partition enumeration over plain induced-subgraph copies.

    Emits every independent set of ``g`` exactly once, the empty set first,
    children in smallest-last order. Returns the number of solutions.
    """
    emit = sink.emit if sink is not None else None
    count = 0
    last_len = 0

    if g.n + 100 > sys.getrecursionlimit():
        sys.setrecursionlimit(g.n + 200)

    def rec(partial: list[int], adj: dict[int, frozenset[int]], sol_len: int) -> None:
        # partial carries the inherited vertex order so tie-breaks match the
        # linear engine's exactly
        nonlocal count, last_len
        pos = {u: i for i, u in enumerate(partial)}
        adj_pos = [[pos[w] for w in adj[u]] for u in partial]
        order = [partial[i] for i in smallest_last_order(adj_pos)]
        for i, v in enumerate(order):
            nbrs = adj[v]
            child = [u for u in order[i + 1 :] if u not in nbrs]
            child_set = frozenset(child)
            child_adj = {u: adj[u] & child_set for u in child}
            count += 1
            if emit is not None:
                pop = last_len - sol_len
                last_len = sol_len + 1
                if emit(SolutionDiff(pop, v)) is False:
                    raise _Abort
            rec(child, child_adj, sol_len + 1)

    count = 1
    try:
        if emit is not None and emit(SolutionDiff(0, None)) is False:
            return count
        rec(list(range(g.n)), {u: frozenset(g.adj[u]) for u in range(g.n)}, 0)
    except _Abort:
        pass
    return count


# ---------------------------------------------------------------------------
# linear-space engine


class IterationFrame:
    """One live node of the recursion tree. While a frame is suspended under a
    descendant it holds no ordering array, only its restore record and the
    rows already detached by first-vertex removals."""

    __slots__ = ("ord", "off", "k", "size", "sol_len", "retained", "ret_entries", "record", "iter_id", "ops")

    def __init__(self, ord_: list[int] | None, size: int, sol_len: int, iter_id: int):
        self.ord = ord_
        self.off = 0
        self.k = 0  # picks completed
        self.size = size
        self.sol_len = sol_len
        self.retained: list[tuple[int, list[int]]] = []
        self.ret_entries = 0
        self.record = None
        self.iter_id = iter_id
        self.ops = 0


def _debug_default() -> bool:
    return os.environ.get("KFE_DEBUG_CHECKS", "") not in ("", "0")


def enumerate_linear_space(g: Graph, sink: Sink | None = None, *, stats=None, debug: bool | None = None) -> int:
    """Same stream as :func:`enumerate_reference`, produced from one
    run-length-encoded matrix with exact rollback.

    Auxiliary storage beyond the input stays linear in n + m: suspended
    iterations keep only their restore records (removed rows, non-zero
    removed-column slices, ordering shift pairs, re-insertion positions) and
    their already-detached rows; the one live matrix and the one live ordering
    always belong to the deepest iteration.

    ``stats`` is an optional instrumentation collector (see
    :mod:`kfe.analysis`). ``debug`` turns on shadow recomputation checks after
    every rollback (defaults to the KFE_DEBUG_CHECKS environment variable).
    """
    if debug is None:
        debug = _debug_default()
    emit = sink.emit if sink is not None else None

    n0 = g.n
    order0 = smallest_last_order(g.adj)  # labels are 0..n-1 here
    mat = build_matrix(g, order0)

    count = 1
    last_len = 0
    aux = 0  # accounted integers held by suspended frames (records + detached rows)
    path_shifts = 0

    root = IterationFrame(order0, n0, 0, 0)
    stack = [root]

    if stats is not None:
        stats.enter(0, -1, n0)
        stats.sample_live(mat.entries + aux + n0 + 4 * len(stack))
    if emit is not None and emit(SolutionDiff(0, None)) is False:
        if stats is not None:
            stats.solutions = count
            stats.aborted = True
        return count

    while stack:
        f = stack[-1]
        if f.k < f.size:
            # pick the head vertex of the current graph and descend
            v = f.ord[f.off]
            n_cur = f.size - f.k
            rec = mat.remove_closed_neighborhood(v)
            f.k += 1
            count += 1

            if not mat._rows:
                # leaf child (its graph is empty): emit and roll straight back
                if stats is not None:
                    f.ops += rec.entries + n_cur
                    aux += rec.entries + 2 * len(rec.positions)
                    stats.pick(n_cur, rec.degree)
                    stats.enter(count - 1, f.iter_id, 0)
                    stats.sample_live(mat.entries + aux + 4 * (len(stack) + 1))
                if emit is not None:
                    pop = last_len - f.sol_len
                    last_len = f.sol_len + 1
                    if emit(SolutionDiff(pop, v)) is False:
                        if stats is not None:
                            stats.solutions = count
                            stats.aborted = True
                        return count
                parent_seq = reinsert_removed([], rec.positions)
                mat.restore(rec, parent_seq)
                f.ord = parent_seq
                if debug:
                    _debug_verify_rollback(g, mat, parent_seq)
                    if stats is not None:
                        stats.roundtrip_checks += 1
                if stats is not None:
                    stats.complete(count - 1, 0, 0)
                    aux -= rec.entries + 2 * len(rec.positions)
                    f.ops += mat.entries
                label, runs = mat.remove_first_vertex()
                if label != rec.picked_label:
                    raise CorruptionError("restored matrix does not lead with the picked vertex")
                f.retained.append((label, runs))
                f.off = 1
                if stats is not None:
                    f.ret_entries += len(runs) + 1
                    aux += len(runs) + 1
                    f.ops += mat.n + 1
                continue

            partial = mat._labels  # survivors, still in the parent's order
            adj_pos = mat.adjacency_positions()
            child_ord = [partial[i] for i in smallest_last_order(adj_pos)]
            rec.shifts = greedy_shift_pairs(partial, child_ord)
            mat.permute(child_ord)
            if debug:
                mat.validate()
            f.record = rec
            f.ord = None  # rebuilt on backtrack from the record

            child = IterationFrame(child_ord, mat.n, f.sol_len + 1, count - 1)
            stack.append(child)

            if stats is not None:
                child_n = child.size
                f.ops += rec.entries + n_cur + child_n + 2 * len(rec.shifts) + mat.entries
                aux += rec.entries + 2 * len(rec.shifts) + 2 * len(rec.positions)
                path_shifts += len(rec.shifts)
                if path_shifts > stats.max_path_shifts:
                    stats.max_path_shifts = path_shifts
                stats.pick(n_cur, rec.degree)
                stats.enter(child.iter_id, f.iter_id, child_n)
                stats.sample_live(mat.entries + aux + child_n + 4 * len(stack))

            if emit is not None:
                pop = last_len - f.sol_len
                last_len = f.sol_len + 1
                if emit(SolutionDiff(pop, v)) is False:
                    # abort: drop all state, restore nothing
                    if stats is not None:
                        stats.solutions = count
                        stats.aborted = True
                    return count
        else:
            # this iteration is done: hand its entry matrix back and resume the parent
            stack.pop()
            if not stack:
                break
            mat.reassemble(f.retained)
            if stats is not None:
                aux -= f.ret_entries
            p = stack[-1]
            rec = p.record
            p.record = None
            parent_seq = reinsert_removed(undo_shifts(mat.labels, rec.shifts), rec.positions)
            mat.restore(rec, parent_seq)
            p.ord = parent_seq
            p.off = 0
            if debug:
                _debug_verify_rollback(g, mat, parent_seq)
                if stats is not None:
                    stats.roundtrip_checks += 1
            if stats is not None:
                f.ops += mat.entries
                stats.complete(f.iter_id, f.size, f.ops)
                aux -= rec.entries + 2 * len(rec.shifts) + 2 * len(rec.positions)
                path_shifts -= len(rec.shifts)
                p.ops += mat.entries

            label, runs = mat.remove_first_vertex()
            if label != rec.picked_label:
                raise CorruptionError("restored matrix does not lead with the picked vertex")
            p.retained.append((label, runs))
            p.off = 1
            if stats is not None:
                p.ret_entries += len(runs) + 1
                aux += len(runs) + 1
                p.ops += mat.n + 1

    if stats is not None:
        stats.complete(root.iter_id, root.size, root.ops)
        stats.solutions = count
        stats.finish()
    return count


def _debug_verify_rollback(g: Graph, mat, parent_seq: list[int]) -> None:
    expected = induced_matrix(g, parent_seq)
    if mat != expected:
        raise CorruptionError("restored matrix differs from a fresh rebuild")
    mat.validate(min_degree_pick=0)
    # the current ordering must be a fixed point of the ordering procedure
    pos = {u: i for i, u in enumerate(parent_seq)}
    adj_pos = [[pos[w] for w in g.adj[u] if w in pos] for u in parent_seq]
    fresh = [parent_seq[i] for i in smallest_last_order(adj_pos)]
    if fresh != parent_seq:
        raise CorruptionError("restored ordering is not a fixed point of the ordering procedure")


def count_only(g: Graph, engine: str = "linear") -> int:
    """Number of independent sets of ``g`` (no materialization)."""
    if engine == "linear":
        return enumerate_linear_space(g)
    if engine == "reference":
        return enumerate_reference(g)
    raise ValueError(f"unknown engine {engine!r}")


# ---------------------------------------------------------------------------
# diff stream replay and serialization


def replay_diffs(diffs: Iterable[SolutionDiff]) -> Iterator[tuple[int, ...]]:
    """Materialize a diff stream into explicit solutions, in order."""
    stack: list[int] = []
    for pop, push in diffs:
        if pop < 0 or pop > len(stack):
            raise MalformedStreamError(f"pop {pop} exceeds running solution size {len(stack)}")
        if pop:
            del stack[len(stack) - pop :]
        if push is not None:
            stack.append(push)
        yield tuple(stack)


def format_diff_text(diffs: Iterable[SolutionDiff]) -> str:
    """Text framing: first line ``S`` (the empty set), then ``d <pop> <push>``."""
    lines = []
    for i, (pop, push) in enumerate(diffs):
        if i == 0:
            if pop or push is not None:
                raise MalformedStreamError("stream must start with the empty set")
            lines.append("S")
        else:
            if push is None:
                raise MalformedStreamError("only the first solution may omit a push")
            lines.append(f"d {pop} {push}")
    lines.append("")
    return "\n".join(lines)


def parse_diff_text(text: str) -> list[SolutionDiff]:
    diffs: list[SolutionDiff] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if not diffs:
            if line != "S":
                raise MalformedStreamError(f"line {lineno}: stream must open with 'S'")
            diffs.append(SolutionDiff(0, None))
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != "d":
            raise MalformedStreamError(f"line {lineno}: expected 'd <pop> <push>'")
        try:
            diffs.append(SolutionDiff(int(parts[1]), int(parts[2])))
        except ValueError:
            raise MalformedStreamError(f"line {lineno}: non-integer fields") from None
    return diffs


def _varint(x: int) -> bytes:
    out = bytearray()
    while True:
        b = x & 0x7F
        x >>= 7
        if x:
            out.append(b | 0x80)
        else:
            out.append(b)
            return bytes(out)


def encode_diff_binary(diffs: Iterable[SolutionDiff]) -> bytes:
    """Binary framing: per solution two unsigned LEB128 varints, pop then
    push + 1 (0 encodes "no push", used by the leading empty set)."""
    out = bytearray()
    for pop, push in diffs:
        out += _varint(pop)
        out += _varint(0 if push is None else push + 1)
    return bytes(out)


def decode_diff_binary(data: bytes) -> list[SolutionDiff]:
    diffs: list[SolutionDiff] = []
    i = 0
    n = len(data)

    def read() -> int:
        nonlocal i
        shift = 0
        val = 0
        while True:
            if i >= n:
                raise MalformedStreamError("truncated varint")
            b = data[i]
            i += 1
            val |= (b & 0x7F) << shift
            if not b & 0x80:
                return val
            shift += 7

    while i < n:
        pop = read()
        push = read()
        diffs.append(SolutionDiff(pop, None if push == 0 else push - 1))
    return diffs
