"""Exhaustive search of Z_p x Z_p voltage assignments on a small base graph.

Assignments are enumerated on the cotree of the BFS spanning tree and
filtered with numpy before any automorphism group is computed:

* connectivity: the cotree voltages must span Z_p^2;
* an arc-transitivity invariant: in an arc-transitive cover every arc starts
  the same number of closed non-backtracking walks of each length, and such
  walks are exactly the lifts of closed walks of the base with zero net
  voltage;
* ``GL(2, p)`` acts on Z_p^2 and gives isomorphic covers, so only the
  smallest assignment of each orbit is kept.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ..coverings import VoltageAssignment, derived_graph
from ..graphs import Graph
from ..groups import make_group
from ..symmetry.analysis import transitivity
from ..symmetry.search import automorphism_group

CHUNK = 1 << 18


def closed_walk_coefficients(va: VoltageAssignment, length: int) -> dict[tuple[int, int], Counter]:
    """For each arc, the multiset of cotree coefficient vectors of closed NB walks starting on it."""
    base = va.base
    pos = {e: i for i, e in enumerate(va.cotree)}
    k = len(va.cotree)
    out: dict[tuple[int, int], Counter] = {}

    def step_coeff(u, v):
        c = [0] * k
        if (u, v) in pos:
            c[pos[(u, v)]] += 1
        elif (v, u) in pos:
            c[pos[(v, u)]] -= 1
        return c

    for u0 in range(base.n):
        for u1 in base.neighbors(u0):
            counts: Counter = Counter()
            stack = [(u1, u0, step_coeff(u0, u1), 1)]
            while stack:
                v, prev, coeff, steps = stack.pop()
                if steps == length:
                    if v == u0:
                        counts[tuple(coeff)] += 1
                    continue
                for w in base.neighbors(v):
                    if w == prev:
                        continue
                    c = step_coeff(v, w)
                    stack.append((w, v, [a + b for a, b in zip(coeff, c)], steps + 1))
            out[(u0, u1)] = counts
    return out


def gl2(p: int) -> list[np.ndarray]:
    mats = []
    for a, b, c, d in itertools.product(range(p), repeat=4):
        if (a * d - b * c) % p:
            mats.append(np.array([[a, b], [c, d]], dtype=np.int64))
    return mats


@dataclass
class CoverCandidate:
    voltages: tuple[tuple[int, int], ...]
    aut_order: int
    arc_transitive: bool
    ct_normal: bool
    one_regular: bool

    @property
    def meets_conditions(self) -> bool:
        """Arc-transitive, CT normal in Aut, and not 1-regular."""
        return self.arc_transitive and self.ct_normal and not self.one_regular


@dataclass
class SearchReport:
    p: int
    total: int = 0
    connected: int = 0
    walk_uniform: int = 0
    orbit_representatives: int = 0
    candidates: list[CoverCandidate] = field(default_factory=list)

    @property
    def arc_transitive(self) -> list[CoverCandidate]:
        return [c for c in self.candidates if c.arc_transitive]

    @property
    def violations(self) -> list[CoverCandidate]:
        return [c for c in self.candidates if c.meets_conditions]


def search_zp2_covers(base: Graph, p: int, lengths=(3, 4, 5, 6)) -> SearchReport:
    K = make_group((p, p))
    va0 = VoltageAssignment(base, K)
    k = len(va0.cotree)
    rep = SearchReport(p)
    # unique coefficient vectors and, per arc, how often each closes a walk
    vecs: dict[tuple, int] = {}
    per_len = []
    for ell in lengths:
        table = closed_walk_coefficients(va0, ell)
        arcs = sorted(table)
        rows = []
        for a in arcs:
            row = Counter()
            for c, m in table[a].items():
                row[vecs.setdefault(c, len(vecs))] += m
            rows.append(row)
        per_len.append(rows)
    V = np.array(list(vecs), dtype=np.int64).reshape(len(vecs), k)
    mats = []
    for rows in per_len:
        M = np.zeros((len(rows), len(vecs)), dtype=np.int64)
        for i, row in enumerate(rows):
            for j, m in row.items():
                M[i, j] = m
        mats.append(M)
    gl = gl2(p)
    q = p * p
    weights = q ** np.arange(k, dtype=np.int64)
    total = q ** k
    rep.total = total
    survivors = []
    pairs = list(itertools.combinations(range(k), 2))
    for start in range(0, total, CHUNK):
        codes = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        digits = (codes[:, None] // weights[None, :]) % q
        x1, x2 = digits // p, digits % p
        minors = np.zeros(len(codes), dtype=bool)
        for i, j in pairs:
            minors |= (x1[:, i] * x2[:, j] - x1[:, j] * x2[:, i]) % p != 0
        keep = minors
        rep.connected += int(keep.sum())
        z1 = (x1 @ V.T) % p == 0
        z2 = (x2 @ V.T) % p == 0
        zero = (z1 & z2).astype(np.int64)
        for M in mats:
            counts = zero @ M.T
            keep &= (counts == counts[:, :1]).all(axis=1)
        rep.walk_uniform += int(keep.sum())
        idx = np.nonzero(keep)[0]
        if not len(idx):
            continue
        y1, y2 = x1[idx], x2[idx]
        best = codes[idx].copy()
        for A in gl:
            w1 = (A[0, 0] * y1 + A[0, 1] * y2) % p
            w2 = (A[1, 0] * y1 + A[1, 1] * y2) % p
            best = np.minimum(best, ((w1 * p + w2) * weights).sum(axis=1))
        for c, b, a1, a2 in zip(codes[idx], best, y1, y2):
            if c == b:
                survivors.append(tuple(zip(a1.tolist(), a2.tolist())))
    rep.orbit_representatives = len(survivors)
    for volts in survivors:
        va = VoltageAssignment(base, K, dict(zip(va0.cotree, volts)))
        d = derived_graph(va)
        A = automorphism_group(d.graph)
        tr = transitivity(d.graph, A)
        ct = d.ct_group
        normal = ct.is_subgroup_of(A) and ct.is_normal_in(A)
        arcs = 2 * d.graph.m
        rep.candidates.append(CoverCandidate(
            volts, A.order, tr.arc_transitive, normal, tr.arc_transitive and A.order == arcs,
        ))
    return rep
