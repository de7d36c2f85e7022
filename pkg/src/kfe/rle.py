"""Run-length-encoded adjacency matrices with exact removal/restore.

A 0-1 row is stored as alternating run lengths ``[a1, b1, a2, b2, ...]``
starting with a zero-run. Canonical form: even length; every entry except the
first and the last is strictly positive; the all-zero row of length L is
``[L, 0]``; the empty row is ``[]``. Equality of canonical rows is plain list
equality.

The matrix keeps one row per vertex of the current induced subgraph, rows and
columns in the same vertex order. Removing a closed neighborhood rewrites the
surviving rows in place and hands back a :class:`RestoreRecord` from which
:meth:`RleMatrix.restore` reconstructs the parent matrix bit for bit. All row
surgery happens on runs; rows are never expanded into bit vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CorruptionError
from .graph import Graph

__all__ = [
    "RleSeq",
    "RleMatrix",
    "RestoreRecord",
    "encode",
    "decode",
    "validate_runs",
    "build_matrix",
    "induced_matrix",
]


# ---------------------------------------------------------------------------
# canonical run lists


def validate_runs(runs: Sequence[int]) -> None:
    """Raise ValueError unless ``runs`` is a canonical run list."""
    k = len(runs)
    if k % 2:
        raise ValueError(f"run list must have even length, got {k}")
    for i, r in enumerate(runs):
        if not isinstance(r, int) or r < 0:
            raise ValueError(f"run lengths must be non-negative integers, got {r!r}")
        if r == 0 and 0 < i < k - 1:
            raise ValueError(f"interior run at index {i} is empty")
    if k == 2 and runs[0] == 0 and runs[1] == 0:
        raise ValueError("empty content must be encoded as [], not [0, 0]")


def _runs_from_bits(bits: Sequence[int]) -> list[int]:
    out: list[int] = []
    expect = 0
    i = 0
    n = len(bits)
    while i < n:
        b = bits[i]
        if b not in (0, 1):
            raise ValueError(f"bit sequence may contain only 0 and 1, got {b!r}")
        j = i + 1
        while j < n and bits[j] == b:
            j += 1
        if b != expect:
            out.append(0)
        out.append(j - i)
        expect = b ^ 1
        i = j
    if len(out) % 2:
        out.append(0)
    return out


def _bits_from_runs(runs: Sequence[int]) -> list[int]:
    bits: list[int] = []
    for i, r in enumerate(runs):
        bits.extend([i & 1] * r)
    return bits


def _ones(runs: Sequence[int]) -> int:
    return sum(runs[1::2])


def _zeros(runs: Sequence[int]) -> int:
    return sum(runs[0::2])


def _one_positions(runs: Sequence[int]) -> list[int]:
    out: list[int] = []
    pos = 0
    for i, r in enumerate(runs):
        if i & 1:
            out.extend(range(pos, pos + r))
        pos += r
    return out


def _runs_from_sorted_ones(ones: Sequence[int], length: int) -> list[int]:
    """Canonical runs for a row of ``length`` bits whose 1s sit at the given
    strictly increasing positions."""
    if not ones:
        return [length, 0] if length else []
    out: list[int] = []
    cursor = 0
    i = 0
    k = len(ones)
    while i < k:
        j = i
        while j + 1 < k and ones[j + 1] == ones[j] + 1:
            j += 1
        out.append(ones[i] - cursor)
        out.append(j - i + 1)
        cursor = ones[j] + 1
        i = j + 1
    if cursor < length:
        out.append(length - cursor)
        out.append(0)
    return out


def _finish(out: list[int]) -> list[int]:
    if len(out) % 2:
        out.append(0)
    return out


def _concat_runs(pre: list[int], suf: Sequence[int]) -> list[int]:
    """Concatenate two canonical run lists; the suffix must start with a
    non-empty zero-run (true for every row that begins at its own diagonal)."""
    if not pre:
        return list(suf)
    if not suf:
        return pre
    if suf[0] == 0:
        raise CorruptionError("row suffix must begin with a zero-run")
    if pre[-1] == 0:
        # pre ends on a zero bit: merge its trailing zero-run into the suffix's
        out = pre[:-2]
        out.append(pre[-2] + suf[0])
        out.extend(suf[1:])
        return out
    out = pre
    out.extend(suf)
    return out


class RleSeq:
    """A canonical run-length-encoded 0-1 sequence."""

    __slots__ = ("runs",)

    def __init__(self, runs: Iterable[int] = (), *, validate: bool = True):
        self.runs = list(runs)
        if validate:
            validate_runs(self.runs)

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "RleSeq":
        return cls(_runs_from_bits(bits), validate=False)

    def to_bits(self) -> list[int]:
        return _bits_from_runs(self.runs)

    def __len__(self) -> int:
        return sum(self.runs)

    @property
    def logical_len(self) -> int:
        return sum(self.runs)

    @property
    def ones(self) -> int:
        return _ones(self.runs)

    @property
    def zeros(self) -> int:
        return _zeros(self.runs)

    def __eq__(self, other) -> bool:
        if isinstance(other, RleSeq):
            return self.runs == other.runs
        return NotImplemented

    def __repr__(self) -> str:
        return f"RleSeq({self.runs})"


def encode(bits: Sequence[int]) -> RleSeq:
    """Run-length encode a 0-1 sequence into canonical form."""
    return RleSeq.from_bits(bits)


def decode(seq: RleSeq | Sequence[int]) -> list[int]:
    """Exact inverse of :func:`encode`; rejects non-canonical input."""
    runs = seq.runs if isinstance(seq, RleSeq) else list(seq)
    validate_runs(runs)
    return _bits_from_runs(runs)


# ---------------------------------------------------------------------------
# column classification shared by removal and restore

# Segment kinds over the parent columns, derived from the picked vertex's row:
#   0 = surviving column (bit 0 in the picked row, not the picked vertex)
#   1 = removed neighbor column (bit 1)
#   2 = the picked vertex's own column (inside a zero-run by the diagonal rule)


def _segments(picked_runs: Sequence[int], diag_pos: int | None) -> list[tuple[int, int]]:
    segs: list[tuple[int, int]] = []
    pos = 0
    found = diag_pos is None
    for i, length in enumerate(picked_runs):
        if not length:
            pos += length
            continue
        kind = i & 1
        if kind == 0 and not found and pos <= diag_pos < pos + length:
            pre = diag_pos - pos
            if pre:
                segs.append((0, pre))
            segs.append((2, 1))
            post = length - pre - 1
            if post:
                segs.append((0, post))
            found = True
        else:
            segs.append((kind, length))
        pos += length
    if not found:
        raise CorruptionError(f"picked vertex's own column {diag_pos} is not a zero bit")
    return segs


def _split_row(runs: Sequence[int], segs: Sequence[tuple[int, int]]) -> tuple[list[int], list[int]]:
    """Split one surviving row into (bits over surviving columns, bits over
    removed neighbor columns), both canonical. The bit under the picked
    vertex's own column must be 0."""
    child: list[int] = []
    rpart: list[int] = []
    c_par = r_par = -1  # parity of the last run appended to each builder
    ri = 0
    rrem = runs[0] if runs else 0
    for kind, need in segs:
        while need:
            while rrem == 0:
                ri += 1
                rrem = runs[ri]
            take = rrem if rrem < need else need
            par = ri & 1
            if kind == 0:
                if par == c_par:
                    child[-1] += take
                else:
                    if c_par < 0 and par:
                        child.append(0)
                    child.append(take)
                    c_par = par
            elif kind == 1:
                if par == r_par:
                    rpart[-1] += take
                else:
                    if r_par < 0 and par:
                        rpart.append(0)
                    rpart.append(take)
                    r_par = par
            elif par:
                raise CorruptionError("surviving row has a 1 under the picked vertex's column")
            need -= take
            rrem -= take
    return _finish(child), _finish(rpart)


def _merge_row(
    child_runs: Sequence[int],
    r_runs: Sequence[int] | None,
    segs: Sequence[tuple[int, int]],
) -> list[int]:
    """Inverse of :func:`_split_row`: re-interleave a child row with its
    removed-column slice (``None`` means all zeros) following the segments."""
    out: list[int] = []
    o_par = -1  # parity of the last run appended
    ci, crem = 0, child_runs[0] if child_runs else 0
    si, srem = 0, (r_runs[0] if r_runs else 0)
    for kind, need in segs:
        if kind == 0:
            while need:
                while crem == 0:
                    ci += 1
                    if ci >= len(child_runs):
                        raise CorruptionError("child row shorter than restore record expects")
                    crem = child_runs[ci]
                take = crem if crem < need else need
                par = ci & 1
                if par == o_par:
                    out[-1] += take
                else:
                    if o_par < 0 and par:
                        out.append(0)
                    out.append(take)
                    o_par = par
                need -= take
                crem -= take
        elif kind == 2 or r_runs is None:
            if o_par == 0:
                out[-1] += need
            else:
                out.append(need)
                o_par = 0
        else:
            while need:
                while srem == 0:
                    si += 1
                    if si >= len(r_runs):
                        raise CorruptionError("removed-column slice shorter than expected")
                    srem = r_runs[si]
                take = srem if srem < need else need
                par = si & 1
                if par == o_par:
                    out[-1] += take
                else:
                    if o_par < 0 and par:
                        out.append(0)
                    out.append(take)
                    o_par = par
                need -= take
                srem -= take
    if crem or (child_runs and sum(child_runs[ci + 1 :])):
        raise CorruptionError("child row longer than restore record expects")
    if r_runs is not None and (srem or sum(r_runs[si + 1 :])):
        raise CorruptionError("removed-column slice longer than expected")
    return _finish(out)


# ---------------------------------------------------------------------------
# the matrix


@dataclass(slots=True)
class RestoreRecord:
    """Everything needed to rebuild a parent matrix after a closed-neighborhood
    removal: the picked row, the removed rows with their positions, and the
    non-zero removed-column slices of the surviving rows (all-zero slices are
    regenerated on demand, never stored)."""

    picked_label: int
    picked_runs: list[int]
    picked_pos: int
    degree: int
    removed: list[tuple[int, list[int]]]
    positions: list[tuple[int, int]]
    r_structs: list[tuple[int, list[int]]]
    parent_n: int
    entries: int
    shifts: list[tuple[int, int]] = field(default_factory=list)


class RleMatrix:
    """Square symmetric 0-1 matrix over the current vertex set, one canonical
    run list per row, rows and columns in the same order. Mutated in place by
    a single enumeration at a time."""

    __slots__ = ("_labels", "_rows", "entries")

    def __init__(self, labels: list[int], rows: list[list[int]]):
        self._labels = labels
        self._rows = rows
        self.entries = sum(len(r) for r in rows)

    # -- construction ------------------------------------------------------

    @classmethod
    def from_rows(cls, pairs: Iterable[tuple[int, Sequence[int]]]) -> "RleMatrix":
        labels = []
        rows = []
        for lab, runs in pairs:
            labels.append(lab)
            rows.append(list(runs))
        return cls(labels, rows)

    # -- inspection ----------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._rows)

    @property
    def labels(self) -> list[int]:
        return list(self._labels)

    def row(self, i: int) -> RleSeq:
        return RleSeq(list(self._rows[i]), validate=False)

    def row_runs(self, i: int) -> list[int]:
        return self._rows[i]

    def row_label(self, i: int) -> int:
        return self._labels[i]

    def degree(self, i: int) -> int:
        return _ones(self._rows[i])

    def to_bits(self) -> list[list[int]]:
        return [_bits_from_runs(r) for r in self._rows]

    def dump(self) -> str:
        """One row per line: ``label: a1 b1 a2 b2 ...``."""
        return "\n".join(
            f"{lab}: " + " ".join(map(str, runs))
            for lab, runs in zip(self._labels, self._rows)
        )

    def adjacency_positions(self) -> list[list[int]]:
        """Neighbor positions per row (positional adjacency lists)."""
        out = []
        for runs in self._rows:
            ones: list[int] = []
            pos = 0
            for i, r in enumerate(runs):
                if i & 1 and r:
                    ones.extend(range(pos, pos + r))
                pos += r
            out.append(ones)
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, RleMatrix):
            return self._labels == other._labels and self._rows == other._rows
        return NotImplemented

    def copy(self) -> "RleMatrix":
        return RleMatrix(list(self._labels), [list(r) for r in self._rows])

    def validate(self, *, min_degree_pick: int | None = None) -> None:
        """Structural invariant check (debug paths and tests): square rows,
        canonical form, zero diagonal, symmetry, and the per-row length bound
        |runs| <= min(2*zeros, 2*ones) + 2."""
        n = len(self._rows)
        if len(self._labels) != n or len(set(self._labels)) != n:
            raise CorruptionError("row labels are not distinct")
        bits = self.to_bits()
        for i, (runs, row) in enumerate(zip(self._rows, bits)):
            validate_runs(runs)
            if len(row) != n:
                raise CorruptionError(f"row {i} has length {len(row)}, expected {n}")
            if row[i] != 0:
                raise CorruptionError(f"row {i} has a non-zero diagonal")
            z, o = _zeros(runs), _ones(runs)
            if len(runs) > min(2 * z, 2 * o) + 2:
                raise CorruptionError(f"row {i} exceeds the run-count bound")
        for i in range(n):
            for j in range(i + 1, n):
                if bits[i][j] != bits[j][i]:
                    raise CorruptionError(f"asymmetry at ({i}, {j})")
        if min_degree_pick is not None:
            # every row fits in the non-neighbor budget of a minimum-degree
            # vertex: |runs| <= 2 * (n - min_degree) + 2
            allowed = 2 * (n - _ones(self._rows[min_degree_pick])) + 2
            for i, runs in enumerate(self._rows):
                if len(runs) > allowed:
                    raise CorruptionError(f"row {i} exceeds the min-degree run bound")

    # -- mutation -----------------------------------------------------------

    def remove_closed_neighborhood(self, v: int) -> RestoreRecord:
        """Delete ``v`` and its neighbors (rows and columns); surviving rows
        are rewritten over the surviving columns, still in the current order.
        Returns the record from which :meth:`restore` rebuilds this matrix."""
        try:
            i = self._labels.index(v)
        except ValueError:
            raise ValueError(f"vertex {v} not present in matrix") from None
        picked = self._rows[i]
        degree = _ones(picked)
        if degree == 0 and i == 0:
            # isolated head: only v's own row and column go away
            label = self._labels.pop(0)
            first = self._rows.pop(0)
            self.entries -= len(first)
            self._drop_first_column()
            return RestoreRecord(
                picked_label=label,
                picked_runs=first,
                picked_pos=0,
                degree=0,
                removed=[(label, first)],
                positions=[(label, 0)],
                r_structs=[],
                parent_n=len(self._rows) + 1,
                entries=len(first),
            )
        segs = _segments(picked, i)
        removed_pos = _one_positions(picked)
        removed_pos.append(i)
        removed_pos.sort()

        labels = self._labels
        rows = self._rows
        removed: list[tuple[int, list[int]]] = []
        positions: list[tuple[int, int]] = []
        r_structs: list[tuple[int, list[int]]] = []
        new_labels: list[int] = []
        new_rows: list[list[int]] = []
        entries = 0
        new_entries = 0
        nxt = 0  # next index into removed_pos
        n_removed = len(removed_pos)
        for idx in range(len(rows)):
            lab = labels[idx]
            if nxt < n_removed and removed_pos[nxt] == idx:
                nxt += 1
                removed.append((lab, rows[idx]))
                positions.append((lab, idx))
                entries += len(rows[idx])
            else:
                child, rpart = _split_row(rows[idx], segs)
                new_labels.append(lab)
                new_rows.append(child)
                new_entries += len(child)
                if _ones(rpart):
                    r_structs.append((lab, rpart))
                    entries += len(rpart)

        rec = RestoreRecord(
            picked_label=v,
            picked_runs=picked,
            picked_pos=i,
            degree=degree,
            removed=removed,
            positions=positions,
            r_structs=r_structs,
            parent_n=len(rows),
            entries=entries,
        )
        self._labels = new_labels
        self._rows = new_rows
        self.entries = new_entries
        return rec

    def remove_first_vertex(self) -> tuple[int, list[int]]:
        """Drop the first row and first column (the just-processed picked
        vertex). Constant run surgery per remaining row. Returns the detached
        (label, runs) pair; the caller keeps it for the end-of-loop rebuild."""
        if not self._rows:
            raise ValueError("cannot remove from an empty matrix")
        label = self._labels.pop(0)
        first = self._rows.pop(0)
        self.entries -= len(first)
        self._drop_first_column()
        return label, first

    def _drop_first_column(self) -> None:
        for row in self._rows:
            if row[0]:
                row[0] -= 1
                if row[0] == 0 and len(row) == 2 and row[1] == 0:
                    del row[:]  # the row shrank to length 0
                    self.entries -= 2
            else:
                row[1] -= 1
                if row[1] == 0:
                    del row[:2]
                    self.entries -= 2

    def reassemble(self, retained: Sequence[tuple[int, list[int]]]) -> None:
        """Rebuild the matrix this iteration started with, from the rows
        detached by successive first-vertex removals (in removal order).

        Row ``l`` in ``retained`` covers columns l..n-1; the missing prefix of
        each row is recovered from earlier rows by symmetry. Linear in n plus
        the number of edges."""
        if self._rows:
            raise ValueError("reassemble requires the fully consumed (empty) matrix")
        n = len(retained)
        prefix_ones: list[list[int]] = [[] for _ in range(n)]
        for l in range(n):
            runs = retained[l][1]
            pos = l
            for t, r in enumerate(runs):
                if t & 1:
                    for col in range(pos, pos + r):
                        prefix_ones[col].append(l)
                pos += r
        labels: list[int] = []
        rows: list[list[int]] = []
        for j in range(n):
            lab, runs = retained[j]
            labels.append(lab)
            rows.append(_concat_runs(_runs_from_sorted_ones(prefix_ones[j], j), runs))
        self._labels = labels
        self._rows = rows
        self.entries = sum(len(r) for r in rows)

    def permute(self, new_labels: Sequence[int]) -> None:
        """Reorder rows and columns so labels appear in ``new_labels`` order."""
        if new_labels == self._labels:
            return
        n = len(self._rows)
        newpos = {lab: i for i, lab in enumerate(new_labels)}
        if len(newpos) != n:
            raise ValueError("new ordering is not a permutation of the labels")
        try:
            perm = [newpos[lab] for lab in self._labels]
        except KeyError as exc:
            raise ValueError(f"vertex {exc.args[0]} missing from new ordering") from None
        rows: list[list[int] | None] = [None] * n
        entries = 0
        for old_i, row in enumerate(self._rows):
            ones = sorted(perm[p] for p in _one_positions(row))
            new_row = _runs_from_sorted_ones(ones, n)
            rows[perm[old_i]] = new_row
            entries += len(new_row)
        self._labels = list(new_labels)
        self._rows = rows  # type: ignore[assignment]
        self.entries = entries

    def restore(self, rec: RestoreRecord, parent_order: Sequence[int]) -> None:
        """Exact inverse of :meth:`remove_closed_neighborhood`.

        ``parent_order`` is the parent's vertex ordering (already rebuilt by
        the ordering rollback). The matrix may arrive with rows in any order
        of the surviving vertices; it is first aligned to the parent's order,
        then each surviving row is re-interleaved with its removed-column
        slice, and finally the removed rows are re-inserted at their recorded
        positions."""
        removed_set = {lab for lab, _ in rec.removed}
        surv_order = [w for w in parent_order if w not in removed_set]
        if len(surv_order) != len(self._rows):
            raise CorruptionError(
                f"restore expects {len(surv_order)} surviving rows, matrix has {len(self._rows)}"
            )
        self.permute(surv_order)

        rows = self._rows
        if rec.degree == 0 and rec.picked_pos == 0 and not rec.r_structs:
            # isolated head: every surviving row just regains a leading 0 bit
            for row in rows:
                if row:
                    row[0] += 1
                else:
                    row.append(1)
                    row.append(0)
        else:
            segs = _segments(rec.picked_runs, rec.picked_pos)
            r_structs = rec.r_structs
            ri = 0
            n_r = len(r_structs)
            for j, lab in enumerate(self._labels):
                if ri < n_r and r_structs[ri][0] == lab:
                    rsrc = r_structs[ri][1]
                    ri += 1
                else:
                    rsrc = None
                rows[j] = _merge_row(rows[j], rsrc, segs)
            if ri != n_r:
                raise CorruptionError("restore record holds slices for unknown rows")

        n_parent = rec.parent_n
        out_labels: list[int | None] = [None] * n_parent
        out_rows: list[list[int] | None] = [None] * n_parent
        for (lab, runs), (lab2, p) in zip(rec.removed, rec.positions):
            if lab != lab2:
                raise CorruptionError("removed rows and positions disagree")
            if not 0 <= p < n_parent:
                raise CorruptionError(f"recorded position {p} out of range")
            if out_rows[p] is not None:
                raise CorruptionError(f"position collision at {p} during restore")
            out_labels[p] = lab
            out_rows[p] = runs
        it_lab = iter(self._labels)
        it_row = iter(rows)
        for i in range(n_parent):
            if out_rows[i] is None:
                out_labels[i] = next(it_lab)
                out_rows[i] = next(it_row)
        if out_labels != list(parent_order):
            raise CorruptionError("restored row order disagrees with the parent ordering")
        self._labels = out_labels  # type: ignore[assignment]
        self._rows = out_rows  # type: ignore[assignment]
        self.entries = sum(len(r) for r in self._rows)


def build_matrix(g: Graph, ordering: Sequence[int]) -> RleMatrix:
    """Encode the whole graph's adjacency matrix under a vertex ordering
    (which must be a permutation of 0..n-1)."""
    if sorted(ordering) != list(range(g.n)):
        raise ValueError("ordering is not a permutation of the graph's vertices")
    return induced_matrix(g, ordering)


def induced_matrix(g: Graph, ordered_labels: Sequence[int]) -> RleMatrix:
    """Matrix of the subgraph induced by ``ordered_labels`` in that order."""
    pos = {lab: i for i, lab in enumerate(ordered_labels)}
    n = len(ordered_labels)
    labels = list(ordered_labels)
    rows = []
    for lab in labels:
        ones = sorted(pos[w] for w in g.adj[lab] if w in pos)
        rows.append(_runs_from_sorted_ones(ones, n))
    return RleMatrix(labels, rows)
