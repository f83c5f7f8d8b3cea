"""Seeded property batteries over the whole toolkit.

Each suite returns a :class:`SuiteResult`; :func:`run_suites` runs a
selection of them in a fixed order so that output depends only on the seed
and the configuration.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .. import constructions as C
from ..coverings import (
    VoltageAssignment, derived_graph, fold_parity_check, quotient_graph, verify_covering,
)
from ..graphs import Graph, count_s_arcs, valency, MAX_ARC_LENGTH
from ..groups import make_group
from ..perm import Permutation, schreier_sims
from ..symmetry.search import automorphism_group, canonical_form, is_isomorphic

# number of isomorphism classes of graphs on n vertices, n = 0..8
GRAPH_COUNTS = (1, 1, 2, 4, 11, 34, 156, 1044, 12346)

DEFAULTS = {
    "seed": 20240611,
    "covers": 500,
    "ct_samples": 40,
    "max_n": 8,
    "relabelings": 20,
}


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        if len(self.failures) < 20:
            self.failures.append(msg)
        else:
            self.notes["suppressed"] = self.notes.get("suppressed", 0) + 1

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "".join(f" {k}={v}" for k, v in self.notes.items())
        return f"{status} {self.name}: {self.checked} checks{extra}"


def arc_test_graphs() -> list[tuple[str, Graph]]:
    return [
        ("K4", C.complete_graph(4)),
        ("K5", C.complete_graph(5)),
        ("K3,3", C.complete_bipartite(3, 3)),
        ("O6", C.octahedron()),
        ("Petersen", C.petersen()),
        ("Q3", C.prism(4)),
        ("C9[2K1]", C.lex_cycle_2k1(9)),
        ("C12[2K1]", C.lex_cycle_2k1(12)),
        ("R12(2,1)", C.rose_window(12, 2, 1)),
        ("Cay a p=3", C.family("a", 3)),
    ]


def non_bipartite_bases() -> list[tuple[str, Graph]]:
    return [
        ("C3", C.cycle(3)),
        ("C5", C.cycle(5)),
        ("K4", C.complete_graph(4)),
        ("K5", C.complete_graph(5)),
        ("O6", C.octahedron()),
        ("Petersen", C.petersen()),
    ]


def suite_s_arcs(cfg: dict, rng: random.Random) -> SuiteResult:
    res = SuiteResult("s-arc counts")
    for name, g in arc_test_graphs():
        d = valency(g)
        for s in range(1, MAX_ARC_LENGTH + 1):
            formula = g.n * d * (d - 1) ** (s - 1)
            counted = count_s_arcs(g, s, exhaustive=True)
            res.checked += 1
            if counted != formula:
                res.fail(f"{name} s={s}: enumerated {counted}, formula {formula}")
    return res


def suite_fold_parity(cfg: dict, rng: random.Random) -> SuiteResult:
    res = SuiteResult("fold parity")
    bases = non_bipartite_bases()
    bipartite_covers = 0
    for k in range(2, 8):
        K = make_group((k,))
        for i in range(cfg["covers"]):
            name, base = bases[i % len(bases)]
            va = VoltageAssignment.random(base, K, rng)
            d = derived_graph(va)
            rep = verify_covering(d.graph, base, d.projection, compute_ct=False)
            res.checked += 1
            if not rep.is_covering or rep.fold_number != k:
                res.fail(f"{name} |K|={k}: natural projection is not a {k}-fold covering")
                continue
            out = fold_parity_check(d.graph, base, rep)
            if out.status == "pass":
                bipartite_covers += 1
            elif out.status == "fail":
                res.fail(f"{name} |K|={k}: bipartite cover with odd fold, voltages {va.voltages}")
    res.notes["bipartite_covers"] = bipartite_covers
    return res


def suite_ct_quotient(cfg: dict, rng: random.Random) -> SuiteResult:
    res = SuiteResult("covering transformations")
    bases = non_bipartite_bases() + [("Q3", C.prism(4)), ("K3,3", C.complete_bipartite(3, 3))]
    groups = [(2,), (3,), (4,), (5,), (6,), (7,), (2, 2), (3, 3)]
    for i in range(cfg["ct_samples"]):
        name, base = bases[rng.randrange(len(bases))]
        orders = groups[rng.randrange(len(groups))]
        va = VoltageAssignment.random(base, make_group(orders), rng)
        d = derived_graph(va)
        ct = d.ct_group
        res.checked += 1
        if not ct.is_semiregular():
            res.fail(f"{name} K={orders}: CT not semiregular")
            continue
        # semiregular on edges: no non-identity CT element fixes an edge
        for h in ct.elements():
            if h.is_identity():
                continue
            if any({h[u], h[v]} == {u, v} for u, v in d.graph.edges()):
                res.fail(f"{name} K={orders}: CT element fixes an edge")
                break
        q = quotient_graph(d.graph, ct)
        if list(q.orbit_of) != [p for p in d.projection]:
            res.fail(f"{name} K={orders}: CT orbits differ from the fibres")
        if not is_isomorphic(q.graph, base):
            res.fail(f"{name} K={orders}: quotient by CT is not the base")
    return res


@lru_cache(maxsize=None)
def _pair_table(n: int) -> np.ndarray:
    pairs = list(itertools.combinations(range(n), 2))
    index = {pq: i for i, pq in enumerate(pairs)}
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    table = np.empty((len(perms), len(pairs)), dtype=np.int64)
    for j, (u, v) in enumerate(pairs):
        a, b = perms[:, u], perms[:, v]
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        table[:, j] = [index[(x, y)] for x, y in zip(lo.tolist(), hi.tolist())]
    return table


def brute_force_aut_count(g: Graph) -> int:
    """Automorphisms counted over every one of the n! vertex permutations."""
    n = g.n
    if n <= 1:
        return 1
    pairs = list(itertools.combinations(range(n), 2))
    index = {pq: i for i, pq in enumerate(pairs)}
    edges = [index[e] for e in g.edges()]
    if not edges:
        return int(np.prod(np.arange(1, n + 1)))
    mask = sum(1 << e for e in edges)
    table = _pair_table(n)
    images = np.left_shift(np.int64(1), table[:, edges]).sum(axis=1)
    return int((images == mask).sum())


def all_graphs(max_n: int) -> dict[int, list[Graph]]:
    """One graph per isomorphism class for every n <= max_n, by vertex extension."""
    classes: dict[int, list[Graph]] = {0: [Graph(0, [])]}
    for n in range(1, max_n + 1):
        seen = {}
        for g in classes[n - 1]:
            old = list(g.edges())
            for mask in range(1 << (n - 1)):
                edges = old + [(u, n - 1) for u in range(n - 1) if mask >> u & 1]
                h = Graph.from_edges(n, edges)
                cert = canonical_form(h).certificate
                if cert not in seen:
                    seen[cert] = h
        classes[n] = list(seen.values())
    return classes


def suite_small_graphs(cfg: dict, rng: random.Random) -> SuiteResult:
    res = SuiteResult("small graphs vs brute force")
    classes = all_graphs(cfg["max_n"])
    for n, gs in classes.items():
        if len(gs) != GRAPH_COUNTS[n]:
            res.fail(f"n={n}: generated {len(gs)} classes, expected {GRAPH_COUNTS[n]}")
        for g in gs:
            res.checked += 1
            engine = automorphism_group(g).order
            brute = brute_force_aut_count(g)
            if engine != brute:
                res.fail(f"n={n} edges={g.edges()}: engine {engine}, brute force {brute}")
    res.notes["classes"] = sum(len(v) for v in classes.values())
    return res


def suite_lemma_degree(cfg: dict, rng: random.Random) -> SuiteResult:
    """A semiregular group whose quotient loses valency: the covering check must notice."""
    res = SuiteResult("semiregular quotient without covering")
    for n in (9, 12):
        g = C.lex_cycle_2k1(n)
        swap = Permutation([v ^ 1 for v in range(g.n)])
        N = schreier_sims([swap], g.n)
        q = quotient_graph(g, N)
        rep = verify_covering(g, q.graph, q.orbit_of, compute_ct=False)
        res.checked += 1
        if not N.is_semiregular():
            res.fail(f"C{n}[2K1]: twin swap not semiregular")
        if valency(q.graph) != 2:
            res.fail(f"C{n}[2K1]: quotient valency {valency(q.graph)}, expected 2")
        if rep.is_covering:
            res.fail(f"C{n}[2K1]: quotient reported as a covering")
        if set(q.multiplicity.values()) != {4}:
            res.fail(f"C{n}[2K1]: edge multiplicities {sorted(set(q.multiplicity.values()))}")
    return res


def suite_canonical(cfg: dict, rng: random.Random) -> SuiteResult:
    res = SuiteResult("canonical form under relabelling")
    for name, g in arc_test_graphs():
        cert = canonical_form(g).certificate
        for _ in range(cfg["relabelings"]):
            perm = list(range(g.n))
            rng.shuffle(perm)
            res.checked += 1
            if canonical_form(g.relabel(perm)).certificate != cert:
                res.fail(f"{name}: certificate changed under relabelling {perm}")
    return res


SUITES: dict[str, Callable[[dict, random.Random], SuiteResult]] = {
    "s-arcs": suite_s_arcs,
    "fold-parity": suite_fold_parity,
    "ct-quotient": suite_ct_quotient,
    "small-graphs": suite_small_graphs,
    "lemma-degree": suite_lemma_degree,
    "canonical": suite_canonical,
}


def run_suites(cfg: dict | None = None, names: list[str] | None = None) -> list[SuiteResult]:
    cfg = {**DEFAULTS, **(cfg or {})}
    out = []
    for name in names or list(SUITES):
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        # every suite gets its own stream so selections do not shift each other
        rng = random.Random(f"{cfg['seed']}:{name}")
        out.append(SUITES[name](cfg, rng))
    return out
