"""Individualization-refinement search: automorphism group, canonical form, isomorphism.

The automorphism group is found along the first path of the search tree
from the deepest level upwards. At level ``k`` every vertex of the target
cell is tested for equivalence with the first-path choice unless the
generators found so far already put it in a known orbit. The generators then
form a strong generating set relative to the first-path base, and the
order is double-checked by Schreier-Sims.

The canonical form is the smallest relabelled edge list over the leaves
that survive two label-invariant prunings: at each node only the children
with the smallest refinement trace are kept, and only one child per orbit
of the stabilizer of the node's individualized vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..graphs import Graph
from ..perm import Permutation, PermGroup, schreier_sims
from .refinement import OrderedPartition, refine

DEFAULT_NODE_LIMIT = 10**7


class ResourceLimitExceeded(RuntimeError):
    """The search tree grew past the configured node limit."""


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


class _Node:
    __slots__ = ("part", "trace")

    def __init__(self, part: OrderedPartition, trace: tuple):
        self.part = part
        self.trace = trace


class _Search:
    def __init__(self, g: Graph, colors: Sequence | None, node_limit: int):
        self.g = g
        self.adj = g.adj
        self.colors = None if colors is None else tuple(colors)
        self.node_limit = node_limit
        self.nodes = 0
        part = (OrderedPartition.from_colors(self.colors) if self.colors is not None
                else OrderedPartition.unit(g.n))
        trace = refine(self.adj, part, part.cell_starts())
        self.root = _Node(part, (-1, trace))
        self.group: PermGroup | None = None

    def child(self, node: _Node, v: int) -> _Node:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise ResourceLimitExceeded(
                f"search exceeded {self.node_limit} nodes on a graph with {self.g.n} vertices"
            )
        part = node.part.copy()
        s = part.individualize(v)
        return _Node(part, (s, refine(self.adj, part, [s])))

    # -- automorphisms ----------------------------------------------------

    def automorphisms(self) -> PermGroup:
        g = self.g
        path = [self.root]
        while True:
            t = path[-1].part.target_cell()
            if t < 0:
                break
            path.append(self.child(path[-1], path[-1].part.lab[t]))
        self.path = path
        self.base = list(path[-1].part.fixed)
        leaf_lab = path[-1].part.lab
        self.first_leaf = leaf_lab
        depth = len(path) - 1
        gens: list[tuple] = []
        self.gens = gens
        uf = _UnionFind(g.n)
        order_from_search = 1

        for k in range(depth - 1, -1, -1):
            node = path[k]
            t = node.part.target_cell()
            cell = node.part.lab[t:t + node.part.size[t]]
            b = self.base[k]
            failed: list[int] = []
            for w in cell:
                if w == b or uf.find(w) == uf.find(b):
                    continue
                rw = uf.find(w)
                if any(uf.find(f) == rw for f in failed):
                    continue
                gamma = self._find_equivalent(node, w, k + 1)
                if gamma is None:
                    failed.append(w)
                    continue
                gens.append(gamma)
                for x in range(g.n):
                    uf.union(x, gamma[x])
            rb = uf.find(b)
            order_from_search *= sum(1 for w in cell if uf.find(w) == rb)

        perms = [Permutation(x, check=False) for x in gens]
        group = schreier_sims(perms, g.n, base=self.base)
        if group.order != order_from_search:
            raise AssertionError(
                f"search order {order_from_search} disagrees with Schreier-Sims order {group.order}"
            )
        self.group = group
        return group

    def _leaf_perm(self, lab: list[int]) -> tuple:
        gamma = [0] * self.g.n
        for a, b in zip(self.first_leaf, lab):
            gamma[a] = b
        return tuple(gamma)

    def _is_auto(self, gamma: tuple) -> bool:
        if self.colors is not None and any(self.colors[gamma[v]] != self.colors[v] for v in range(self.g.n)):
            return False
        return self.g.is_automorphism(gamma)

    def _find_equivalent(self, node: _Node, w: int, depth: int) -> tuple | None:
        c = self.child(node, w)
        if c.trace != self.path[depth].trace:
            return None
        return self._dfs_equivalent(c, depth)

    def _dfs_equivalent(self, node: _Node, depth: int) -> tuple | None:
        part = node.part
        t = part.target_cell()
        if t < 0:
            gamma = self._leaf_perm(part.lab)
            return gamma if self._is_auto(gamma) else None
        cell = part.lab[t:t + part.size[t]]
        fixed = part.fixed
        # orbit pruning by known automorphisms that fix this node's prefix
        stab = [h for h in self.gens if all(h[x] == x for x in fixed)]
        tried: set[int] = set()
        for v in cell:
            if v in tried:
                continue
            c = self.child(node, v)
            if c.trace == self.path[depth + 1].trace:
                r = self._dfs_equivalent(c, depth + 1)
                if r is not None:
                    return r
            orbit = [v]
            tried.add(v)
            for x in orbit:
                for h in stab:
                    y = h[x]
                    if y not in tried:
                        tried.add(y)
                        orbit.append(y)
        return None

    # -- canonical form ---------------------------------------------------

    def canonical(self) -> tuple[tuple, tuple[int, ...]]:
        if self.group is None:
            self.automorphisms()
        self.best: tuple | None = None
        self.best_lab: list[int] | None = None
        self._canon(self.root, self.group, 0, True)
        return self.best, tuple(self.best_lab)

    def _certificate(self, lab: list[int]) -> tuple:
        pos = [0] * self.g.n
        for i, v in enumerate(lab):
            pos[v] = i
        edges = sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in self.g.edges())
        cols = tuple(self.colors[v] for v in lab) if self.colors is not None else ()
        return (self.g.n, cols, tuple(edges))

    def _canon(self, node: _Node, stab: PermGroup, depth: int, on_path: bool) -> None:
        part = node.part
        t = part.target_cell()
        if t < 0:
            cert = self._certificate(part.lab)
            if self.best is None or cert < self.best:
                self.best, self.best_lab = cert, part.lab[:]
            return
        cell = part.lab[t:t + part.size[t]]
        gens = [h.images for h in stab.strong_generators]
        seen: set[int] = set()
        reps = []
        if on_path:
            cell = [self.base[depth]] + [v for v in cell if v != self.base[depth]]
        for v in cell:
            if v in seen:
                continue
            reps.append(v)
            orbit = [v]
            seen.add(v)
            for x in orbit:
                for h in gens:
                    y = h[x]
                    if y not in seen:
                        seen.add(y)
                        orbit.append(y)
        children = [(self.child(node, v), v) for v in reps]
        best_trace = min(c.trace for c, _ in children)
        for c, v in children:
            if c.trace != best_trace:
                continue
            stays = on_path and v == self.base[depth]
            if stays:
                sub = self.group.pointwise_stabilizer(self.base[: depth + 1])
            else:
                sub = stab.stabilizer(v)
            self._canon(c, sub, depth + 1, stays)


def automorphism_group(
    g: Graph, colors: Sequence | None = None, node_limit: int = DEFAULT_NODE_LIMIT
) -> PermGroup:
    """Full automorphism group (colour-preserving if ``colors`` is given).

    Every generator is verified to preserve adjacency; exceeding
    ``node_limit`` search nodes raises :class:`ResourceLimitExceeded`.
    """
    group = _Search(g, colors, node_limit).automorphisms()
    for h in group.generators:
        if not g.is_automorphism(h.images):
            raise AssertionError("search produced a non-automorphism")
    return group


@dataclass(frozen=True)
class CanonicalForm:
    certificate: tuple
    labeling: tuple[int, ...]
    """``labeling[v]`` is the canonical position of vertex ``v``."""
    group: PermGroup

    def graph(self) -> Graph:
        n = self.certificate[0]
        return Graph.from_edges(n, self.certificate[2])


def canonical_form(
    g: Graph, colors: Sequence | None = None, node_limit: int = DEFAULT_NODE_LIMIT
) -> CanonicalForm:
    s = _Search(g, colors, node_limit)
    cert, lab = s.canonical()
    labeling = [0] * g.n
    for i, v in enumerate(lab):
        labeling[v] = i
    return CanonicalForm(cert, tuple(labeling), s.group)


@dataclass(frozen=True)
class IsomorphismResult:
    isomorphic: bool
    mapping: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.isomorphic


def is_isomorphic(g1: Graph, g2: Graph, node_limit: int = DEFAULT_NODE_LIMIT) -> IsomorphismResult:
    """Certificate comparison; a positive answer carries a verified vertex mapping."""
    if g1.n != g2.n or g1.m != g2.m or sorted(g1.degrees()) != sorted(g2.degrees()):
        return IsomorphismResult(False)
    c1 = canonical_form(g1, node_limit=node_limit)
    c2 = canonical_form(g2, node_limit=node_limit)
    if c1.certificate != c2.certificate:
        return IsomorphismResult(False)
    inv2 = [0] * g2.n
    for v, i in enumerate(c2.labeling):
        inv2[i] = v
    mapping = tuple(inv2[c1.labeling[v]] for v in range(g1.n))
    for u, v in g1.edges():
        if not g2.has_edge(mapping[u], mapping[v]):
            raise AssertionError("equal certificates but witness fails")
    return IsomorphismResult(True, mapping)
