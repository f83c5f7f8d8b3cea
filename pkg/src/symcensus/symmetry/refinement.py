"""Ordered partitions and equitable refinement.

A partition is stored nauty-style: ``lab`` lists the vertices cell by cell,
``cellof[v]`` is the start position of the cell holding ``v`` and
``size[s]`` is the length of the cell starting at position ``s``. Cells are
ordered by start position, so the ordering is never label dependent.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence


class OrderedPartition:
    __slots__ = ("lab", "cellof", "size", "fixed")

    def __init__(self, lab: list[int], cellof: list[int], size: list[int], fixed: tuple = ()):
        self.lab = lab
        self.cellof = cellof
        self.size = size
        self.fixed = fixed

    @classmethod
    def unit(cls, n: int) -> OrderedPartition:
        size = [0] * n
        if n:
            size[0] = n
        return cls(list(range(n)), [0] * n, size)

    @classmethod
    def from_colors(cls, colors: Sequence) -> OrderedPartition:
        """One cell per colour value, cells in increasing colour order."""
        n = len(colors)
        lab = sorted(range(n), key=lambda v: (colors[v], v))
        cellof = [0] * n
        size = [0] * n
        start = 0
        for i, v in enumerate(lab):
            if i and colors[v] != colors[lab[i - 1]]:
                start = i
            cellof[v] = start
            size[start] += 1
        return cls(lab, cellof, size)

    def copy(self) -> OrderedPartition:
        return OrderedPartition(self.lab[:], self.cellof[:], self.size[:], self.fixed)

    def cell_starts(self) -> list[int]:
        out = []
        i = 0
        n = len(self.lab)
        while i < n:
            out.append(i)
            i += self.size[i]
        return out

    def cells(self) -> list[list[int]]:
        return [self.lab[s:s + self.size[s]] for s in self.cell_starts()]

    def is_discrete(self) -> bool:
        return all(self.size[s] == 1 for s in self.cell_starts())

    def target_cell(self) -> int:
        """Start of the first smallest non-singleton cell, or -1 if discrete."""
        best, best_size = -1, 0
        i = 0
        n = len(self.lab)
        size = self.size
        while i < n:
            k = size[i]
            if k > 1 and (best < 0 or k < best_size):
                best, best_size = i, k
                if k == 2:
                    break
            i += k
        return best

    def individualize(self, v: int) -> int:
        """Split ``v`` off the front of its cell; returns the new singleton's start."""
        s = self.cellof[v]
        k = self.size[s]
        lab = self.lab
        pos = lab.index(v, s, s + k)
        lab[s], lab[pos] = lab[pos], lab[s]
        self.size[s] = 1
        self.size[s + 1] = k - 1
        cellof = self.cellof
        for i in range(s + 1, s + k):
            cellof[lab[i]] = s + 1
        self.fixed = self.fixed + (v,)
        return s


def refine(adj: Sequence[Sequence[int]], part: OrderedPartition, splitters: Sequence[int]) -> tuple:
    """Refine ``part`` in place to the coarsest equitable refinement.

    Returns a trace recording every split as ``(cell start, ((count, size), ...))``;
    the trace depends only on the isomorphism type of (graph, partition).
    """
    lab, cellof, size = part.lab, part.cellof, part.size
    n = len(lab)
    queued = bytearray(n)
    queue = deque()
    for s in sorted(splitters):
        if not queued[s]:
            queued[s] = 1
            queue.append(s)
    trace = []
    while queue:
        w = queue.popleft()
        queued[w] = 0
        cnt: dict[int, int] = {}
        for x in lab[w:w + size[w]]:
            for u in adj[x]:
                cnt[u] = cnt.get(u, 0) + 1
        touched: dict[int, list[int]] = {}
        for u in cnt:
            c = cellof[u]
            if size[c] > 1:
                touched.setdefault(c, []).append(u)
        for c in sorted(touched):
            k = size[c]
            hit = touched[c]
            groups: dict[int, list[int]] = {}
            if len(hit) < k:
                hitset = set(hit)
                groups[0] = [v for v in lab[c:c + k] if v not in hitset]
            for u in hit:
                groups.setdefault(cnt[u], []).append(u)
            if len(groups) == 1:
                continue
            keys = sorted(groups)
            pos = c
            starts = []
            piece_sizes = []
            for key in keys:
                members = groups[key]
                starts.append(pos)
                piece_sizes.append(len(members))
                for v in members:
                    lab[pos] = v
                    cellof[v] = starts[-1]
                    pos += 1
                size[starts[-1]] = len(members)
            trace.append((c, tuple(zip(keys, piece_sizes))))
            if queued[c]:
                for s in starts[1:]:
                    queued[s] = 1
                    queue.append(s)
            else:
                largest = max(range(len(starts)), key=lambda i: (piece_sizes[i], -i))
                for i, s in enumerate(starts):
                    if i != largest:
                        queued[s] = 1
                        queue.append(s)
    return tuple(trace)


def is_equitable(adj: Sequence[Sequence[int]], part: OrderedPartition) -> bool:
    cells = part.cells()
    for a in cells:
        for b in cells:
            bset = set(b)
            counts = {sum(1 for u in adj[v] if u in bset) for v in a}
            if len(counts) > 1:
                return False
    return True
