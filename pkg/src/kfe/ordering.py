"""Smallest-last vertex orderings and the shift bookkeeping used for rollback.

A smallest-last ordering repeatedly extracts a minimum-degree vertex from the
remaining graph. Ties always break toward the smallest original label, both
here and in every recomputation, so orderings are a pure function of the graph
and shift sequences between two orderings are well defined.

Positions are 0-based throughout. A shift ``(u, p)`` moves ``u`` from its
current position ``j`` to ``j - p``, sliding the displaced vertices one step
right. ``ShiftSeq`` is a plain list of such pairs.
"""

from __future__ import annotations

import heapq
from typing import Sequence

from .errors import CorruptionError
from .graph import Graph

__all__ = [
    "Ordering",
    "ShiftSeq",
    "smallest_last",
    "smallest_last_order",
    "apply_shift",
    "compute_shift_diff",
    "restore_parent_ordering",
]

ShiftSeq = list  # list[tuple[int, int]] of (vertex, shift amount) pairs


class Ordering:
    """A vertex sequence plus its inverse position map."""

    __slots__ = ("seq", "pos")

    def __init__(self, seq: Sequence[int]):
        self.seq: list[int] = list(seq)
        self.pos: dict[int, int] = {v: i for i, v in enumerate(self.seq)}
        if len(self.pos) != len(self.seq):
            raise ValueError("ordering contains repeated vertices")

    def __len__(self) -> int:
        return len(self.seq)

    def __iter__(self):
        return iter(self.seq)

    def __getitem__(self, i: int) -> int:
        return self.seq[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, Ordering):
            return self.seq == other.seq
        return NotImplemented

    def __repr__(self) -> str:
        return f"Ordering({self.seq})"


def smallest_last_order(adj: Sequence[Sequence[int]]) -> list[int]:
    """Smallest-last order over positional adjacency lists: repeatedly take a
    minimum-degree vertex, breaking ties toward the lowest index.

    Callers present vertices in their *inherited* order (label order at the
    root of an enumeration, the surviving parent order below it), so ties
    stick to that order and a vertex only moves relative to its peers when an
    incident edge disappeared. Returns the chosen indices in pick order.

    Uses a lazy-deletion binary heap (selection below a small cutoff): stale
    entries are skipped on pop, so each degree decrement is one push.
    """
    k = len(adj)
    deg = [len(a) for a in adj]
    if k <= 8:
        alive = list(range(k))
        out: list[int] = []
        while alive:
            best = alive[0]
            bd = deg[best]
            for i in alive[1:]:
                if deg[i] < bd:
                    best, bd = i, deg[i]
            alive.remove(best)
            out.append(best)
            for j in adj[best]:
                deg[j] -= 1
        return out
    heap = [(deg[i], i) for i in range(k)]
    heapq.heapify(heap)
    push = heapq.heappush
    pop = heapq.heappop
    alive = [True] * k
    out = []
    while heap:
        d, i = pop(heap)
        if not alive[i] or d != deg[i]:
            continue
        alive[i] = False
        out.append(i)
        for j in adj[i]:
            if alive[j]:
                dj = deg[j] - 1
                deg[j] = dj
                push(heap, (dj, j))
    return out


def smallest_last(g: Graph) -> Ordering:
    """Smallest-last (degeneracy) ordering of ``g`` with smallest-label ties."""
    return Ordering(smallest_last_order(g.adj))


def apply_shift(o: Ordering, u: int, p: int) -> Ordering:
    """Move ``u`` left by ``p`` positions, sliding the displaced block right."""
    seq = o.seq
    j = o.pos.get(u)
    if j is None:
        raise ValueError(f"vertex {u} not in ordering")
    if p < 0 or p > j:
        raise ValueError(f"shift {p} out of range for vertex {u} at position {j}")
    if p == 0:
        return Ordering(seq)
    return Ordering(seq[: j - p] + [u] + seq[j - p : j] + seq[j + 1 :])


def compute_shift_diff(partial: Sequence[int], target: Sequence[int]) -> list[tuple[int, int]]:
    """Shift pairs turning ``partial`` into ``target`` when replayed in order.

    Greedy left-to-right: at the first disagreeing position, shift the wanted
    vertex into place. One pair per displaced vertex; already-placed vertices
    are never touched again.
    """
    partial = _seq_of(partial)
    target = _seq_of(target)
    if sorted(partial) != sorted(target):
        raise ValueError("orderings are over different vertex sets")
    return greedy_shift_pairs(partial, target)


def greedy_shift_pairs(partial: Sequence[int], target: Sequence[int]) -> list[tuple[int, int]]:
    """Unvalidated core of :func:`compute_shift_diff` (inputs must already be
    permutations of each other)."""
    cur = list(partial)
    shifts: list[tuple[int, int]] = []
    for idx, want in enumerate(target):
        if cur[idx] == want:
            continue
        j = cur.index(want, idx + 1)
        shifts.append((want, j - idx))
        cur[idx + 1 : j + 1] = cur[idx:j]
        cur[idx] = want
    return shifts


def replay_shifts(partial: Sequence[int], shifts: Sequence[tuple[int, int]]) -> list[int]:
    """Apply a shift sequence to a vertex list (validation helper)."""
    cur = list(_seq_of(partial))
    for u, p in shifts:
        j = cur.index(u)
        if p < 0 or p > j:
            raise ValueError(f"shift {p} out of range for vertex {u} at position {j}")
        cur[j - p + 1 : j + 1] = cur[j - p : j]
        cur[j - p] = u
    return cur


def undo_shifts(seq: list[int], shifts: Sequence[tuple[int, int]]) -> list[int]:
    """Invert a shift sequence in place: newest shift first, each one moving
    its vertex back right by its shift amount."""
    for u, p in reversed(shifts):
        i = seq.index(u)
        if i + p >= len(seq):
            raise CorruptionError(f"cannot undo shift ({u}, {p}) from position {i}")
        seq[i : i + p] = seq[i + 1 : i + p + 1]
        seq[i + p] = u
    return seq


def reinsert_removed(seq: Sequence[int], removed: Sequence[tuple[int, int]]) -> list[int]:
    """Insert (vertex, position) pairs into ``seq`` at their recorded absolute
    positions; surviving vertices keep their relative order in the gaps."""
    n = len(seq) + len(removed)
    out: list[int | None] = [None] * n
    for v, p in removed:
        if not 0 <= p < n:
            raise CorruptionError(f"recorded position {p} out of range 0..{n - 1}")
        if out[p] is not None:
            raise CorruptionError(f"position collision at {p} re-inserting vertex {v}")
        out[p] = v
    it = iter(seq)
    for i in range(n):
        if out[i] is None:
            out[i] = next(it)
    return out  # type: ignore[return-value]


def restore_parent_ordering(
    child_ord: Sequence[int],
    shifts: Sequence[tuple[int, int]],
    removed: Sequence[tuple[int, int]],
) -> Ordering:
    """Rebuild the parent ordering from the child's, exactly.

    Undoes ``shifts`` newest-first (recovering the parent ordering restricted
    to the surviving vertices), then re-inserts the removed vertices at the
    positions recorded when they were taken out.
    """
    seq = undo_shifts(list(_seq_of(child_ord)), shifts)
    return Ordering(reinsert_removed(seq, removed))


def _seq_of(o) -> Sequence[int]:
    return o.seq if isinstance(o, Ordering) else o
