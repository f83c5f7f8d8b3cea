"""Regular covers from voltage assignments, quotients by vertex orbits, covering checks.

A voltage assignment lives on a connected base graph with the BFS spanning
tree from vertex 0. Voltages on tree arcs are the identity and the reverse
of an arc carries the inverse voltage, so only cotree edges ``(u, v)`` with
``u < v`` are stored. Voltage groups are abelian structured groups written
additively.

In the derived graph the vertex ``(u, g)`` has index ``u * |K| + rank(g)``
and the arc ``(u, v)`` of the base lifts to the edges ``(u, g) ~ (v, xi(u, v) + g)``.
"""

from __future__ import annotations

import io
import random
from collections import deque
from dataclasses import dataclass, field
from math import prod
from pathlib import Path
from typing import Literal, Mapping, Sequence

from .graphs import Graph, GraphError, bipartition, is_connected, valency
from .groups import FiniteGroup, GroupElement, StructuredGroup, make_group, regular_representation
from .perm import Permutation, PermGroup, schreier_sims
from .symmetry.analysis import check_automorphisms, transitivity
from .symmetry.cayley import RegularSubgroupResult, find_regular_subgroup, is_normal_cayley
from .symmetry.search import automorphism_group


class CoveringError(ValueError):
    pass


class VoltageError(CoveringError):
    pass


class PreconditionError(CoveringError):
    pass


def bfs_spanning_tree(g: Graph, root: int = 0) -> frozenset[tuple[int, int]]:
    """Tree edges ``(min, max)`` of the BFS tree, neighbours visited in increasing order."""
    seen = {root}
    tree = set()
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in sorted(g.neighbors(u)):
            if v not in seen:
                seen.add(v)
                tree.add((min(u, v), max(u, v)))
                queue.append(v)
    if len(seen) != g.n:
        raise CoveringError("base graph is disconnected")
    return frozenset(tree)


def _as_group(K) -> FiniteGroup:
    if isinstance(K, FiniteGroup):
        G = K
    elif isinstance(K, StructuredGroup):
        G = FiniteGroup(K)
    else:
        G = make_group(tuple(K))
    if G.spec.has_involution:
        raise VoltageError("voltage groups must be abelian without the involution factor")
    return G


def _element(K: FiniteGroup, value) -> GroupElement:
    if isinstance(value, GroupElement):
        if value.flip or len(value.coords) != K.k:
            raise VoltageError(f"{value} is not an element of {K!r}")
        return K.element(value.coords)
    if isinstance(value, int):
        value = (value,)
    value = tuple(value)
    if len(value) != K.k:
        raise VoltageError(f"voltage {value} has {len(value)} coordinates, expected {K.k}")
    return K.element(value)


class VoltageAssignment:
    """T-reduced voltages on the cotree edges of a connected base graph."""

    def __init__(self, base: Graph, K, voltages: Mapping | None = None, *, missing_is_identity: bool = True):
        if base.n == 0:
            raise CoveringError("empty base graph")
        self.base = base
        self.K = _as_group(K)
        self.spanning_tree = bfs_spanning_tree(base)
        cotree = [e for e in base.edges() if e not in self.spanning_tree]
        self.cotree = tuple(cotree)
        ident = self.K.identity
        table: dict[tuple[int, int], GroupElement] = {}
        for (u, v), value in (voltages or {}).items():
            if not base.has_edge(u, v):
                raise VoltageError(f"({u}, {v}) is not an edge of the base graph")
            x = _element(self.K, value)
            if u > v:
                u, v, x = v, u, self.K.inv(x)
            if (u, v) in self.spanning_tree:
                if x != ident:
                    raise VoltageError(f"tree edge ({u}, {v}) must carry the identity")
                continue
            if (u, v) in table and table[(u, v)] != x:
                raise VoltageError(f"conflicting voltages on ({u}, {v})")
            table[(u, v)] = x
        for e in cotree:
            if e not in table:
                if not missing_is_identity:
                    raise VoltageError(f"no voltage for cotree edge {e}")
                table[e] = ident
        self.voltages = {e: table[e] for e in cotree}

    def voltage(self, u: int, v: int) -> GroupElement:
        key = (u, v) if u < v else (v, u)
        x = self.voltages.get(key)
        if x is None:
            if key not in self.spanning_tree:
                raise VoltageError(f"({u}, {v}) is not an edge of the base graph")
            return self.K.identity
        return x if u < v else self.K.inv(x)

    @classmethod
    def from_arc_voltages(cls, base: Graph, K, arc_voltage: Mapping) -> VoltageAssignment:
        """T-reduce an arbitrary assignment on the edges ``(u, v)`` (``u < v`` or both orientations)."""
        K = _as_group(K)

        def xi(u, v):
            if (u, v) in arc_voltage:
                return _element(K, arc_voltage[(u, v)])
            if (v, u) in arc_voltage:
                return K.inv(_element(K, arc_voltage[(v, u)]))
            raise VoltageError(f"no voltage for edge ({u}, {v})")

        tree = bfs_spanning_tree(base)
        phi = {0: K.identity}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in sorted(base.neighbors(u)):
                if v not in phi and (min(u, v), max(u, v)) in tree:
                    phi[v] = K.mul(phi[u], xi(u, v))
                    queue.append(v)
        reduced = {}
        for u, v in base.edges():
            if (u, v) not in tree:
                # xi'(u, v) = xi(u, v) + phi(u) - phi(v)
                reduced[(u, v)] = K.mul(K.mul(xi(u, v), phi[u]), K.inv(phi[v]))
        return cls(base, K, reduced)

    @classmethod
    def random(cls, base: Graph, K, rng: random.Random) -> VoltageAssignment:
        K = _as_group(K)
        va = cls(base, K)
        return cls(base, K, {e: rng.choice(K.elements) for e in va.cotree})

    def relabel(self, mapping: Sequence[int]) -> VoltageAssignment:
        """The same cover over ``base.relabel(mapping)``, re-reduced on the new BFS tree."""
        new_base = self.base.relabel(mapping)
        arcs = {(mapping[u], mapping[v]): self.voltage(u, v) for u, v in self.base.edges()}
        return VoltageAssignment.from_arc_voltages(new_base, self.K, arcs)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, VoltageAssignment) and self.base == other.base
                and self.K.orders == other.K.orders and self.voltages == other.voltages)

    def __repr__(self) -> str:
        return f"VoltageAssignment(n={self.base.n}, K={self.K.orders}, cotree={len(self.cotree)})"


# -- derived graphs and quotients --------------------------------------------------


@dataclass(frozen=True)
class ProjectionReport:
    is_covering: bool
    fold_number: int | None
    """Common fibre size, or None when fibres differ in size."""
    fibre_index: tuple[int, ...]
    """Position of every vertex inside its fibre, in increasing vertex order."""
    projection: tuple[int, ...]
    ct_group: PermGroup | None = None
    bad_vertices: tuple[int, ...] = ()


@dataclass(frozen=True)
class DerivedGraph:
    graph: Graph
    projection: tuple[int, ...]
    ct_group: PermGroup
    voltage_assignment: VoltageAssignment
    report: ProjectionReport

    def vertex(self, u: int, g: GroupElement) -> int:
        return u * len(self.voltage_assignment.K) + self.voltage_assignment.K.index(g)


def derived_graph(va: VoltageAssignment) -> DerivedGraph:
    K = va.K
    order = len(K)
    base = va.base
    elems = K.elements
    edges = []
    for u, v in base.edges():
        x = va.voltage(u, v)
        for gi, g in enumerate(elems):
            edges.append((u * order + gi, v * order + K.index(K.mul(x, g))))
    n = base.n * order
    if any(x == y for x, y in edges):
        raise CoveringError("derived graph has a loop")
    graph = Graph.from_edges(n, edges)
    if graph.m != len(edges):
        raise CoveringError("derived graph has parallel edges")
    projection = tuple(i // order for i in range(n))
    ct_gens = []
    for k in K.generators:
        ct_gens.append(Permutation(
            [u * order + K.index(K.mul(g, k)) for u in range(base.n) for g in elems], check=False
        ))
    ct = schreier_sims(ct_gens, n)
    report = verify_covering(graph, base, projection, compute_ct=False)
    if not report.is_covering or report.fold_number != order:
        raise AssertionError("derived graph failed to cover its base")
    if not ct.is_semiregular() or ct.order != order:
        raise AssertionError("covering transformations are not semiregular")
    for h in ct.generators:
        if not graph.is_automorphism(h.images):
            raise AssertionError("covering transformation is not an automorphism")
        if any(projection[h.images[i]] != projection[i] for i in range(n)):
            raise AssertionError("covering transformation moves a fibre")
    report = ProjectionReport(True, order, report.fibre_index, projection, ct)
    return DerivedGraph(graph, projection, ct, va, report)


@dataclass(frozen=True)
class Quotient:
    graph: Graph
    orbit_of: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...]
    multiplicity: dict
    """Number of edges of the original graph between orbits ``i < j``."""
    internal_edges: dict = field(default_factory=dict)
    """Edges inside one orbit; they would be loops and are dropped."""

    def valency_drop(self, g: Graph) -> list[int]:
        """``deg(v) - deg(orbit of v)`` for every vertex of ``g``."""
        return [g.degree(v) - self.graph.degree(self.orbit_of[v]) for v in range(g.n)]


def quotient_graph(g: Graph, N: PermGroup) -> Quotient:
    """Orbits of ``N`` as vertices, adjacent when they contain adjacent vertices."""
    check_automorphisms(g, N)
    gens = [h.images for h in N.generators]
    orbit_of = [-1] * g.n
    orbit_list = []
    for v in range(g.n):
        if orbit_of[v] >= 0:
            continue
        idx = len(orbit_list)
        orb = [v]
        orbit_of[v] = idx
        for x in orb:
            for h in gens:
                y = h[x]
                if orbit_of[y] < 0:
                    orbit_of[y] = idx
                    orb.append(y)
        orbit_list.append(tuple(sorted(orb)))
    mult: dict[tuple[int, int], int] = {}
    internal: dict[int, int] = {}
    for u, v in g.edges():
        a, b = orbit_of[u], orbit_of[v]
        if a == b:
            internal[a] = internal.get(a, 0) + 1
        else:
            key = (min(a, b), max(a, b))
            mult[key] = mult.get(key, 0) + 1
    q = Graph.from_edges(len(orbit_list), sorted(mult))
    return Quotient(q, tuple(orbit_of), tuple(orbit_list), mult, internal)


def verify_covering(g: Graph, q: Graph, projection: Sequence[int], compute_ct: bool = True) -> ProjectionReport:
    """Check that ``projection`` maps every neighbourhood of ``g`` bijectively."""
    projection = tuple(projection)
    if len(projection) != g.n:
        raise CoveringError(f"projection has {len(projection)} entries for {g.n} vertices")
    if any(not 0 <= x < q.n for x in projection):
        raise CoveringError("projection leaves the vertex range of the quotient")
    if set(projection) != set(range(q.n)):
        raise CoveringError("projection is not surjective")
    bad = []
    for v in range(g.n):
        images = sorted(projection[u] for u in g.neighbors(v))
        if images != sorted(q.neighbors(projection[v])):
            bad.append(v)
    counters: dict[int, int] = {}
    fibre_index = []
    for v in range(g.n):
        c = counters.get(projection[v], 0)
        fibre_index.append(c)
        counters[projection[v]] = c + 1
    sizes = set(counters.values())
    fold = sizes.pop() if len(sizes) == 1 else None
    ok = not bad and fold is not None
    ct = automorphism_group(g, colors=projection) if ok and compute_ct else None
    return ProjectionReport(ok, fold, tuple(fibre_index), projection, ct, tuple(bad))


@dataclass(frozen=True)
class FoldParity:
    status: Literal["pass", "fail", "vacuous"]
    fold: int | None
    odd_cycle: tuple[int, ...] = ()
    """An odd cycle of the base, witnessing that it is not bipartite."""

    @property
    def passed(self) -> bool:
        return self.status != "fail"


def fold_parity_check(g: Graph, q: Graph, report: ProjectionReport) -> FoldParity:
    """A bipartite cover of a non-bipartite graph must have even fold number."""
    if not report.is_covering:
        return FoldParity("vacuous", report.fold_number)
    bg = bipartition(g)
    bq = bipartition(q)
    if not bg.is_bipartite or bq.is_bipartite:
        return FoldParity("vacuous", report.fold_number)
    status = "pass" if report.fold_number % 2 == 0 else "fail"
    return FoldParity(status, report.fold_number, tuple(bq.odd_cycle or ()))


# -- normal quotients of arc-transitive tetravalent graphs --------------------------------


REDUCTION_TAGS = {1: "transitive", 2: "bipartition-halves", 3: "cycle-quotient", 4: "normal-cover"}


@dataclass(frozen=True)
class ReductionCase:
    case: int
    orbit_count: int
    quotient_valency: int | None
    semiregular: bool
    quotient: Quotient

    @property
    def tag(self) -> str:
        return REDUCTION_TAGS[self.case]


def _normal_in(N: PermGroup, A: PermGroup) -> bool:
    return N.is_subgroup_of(A) and N.is_normal_in(A)


def reduction_case(g: Graph, N: PermGroup, A: PermGroup | None = None) -> ReductionCase:
    """Which of the four normal-quotient cases ``N`` falls into."""
    if valency(g) != 4 or not is_connected(g):
        raise PreconditionError("reduction_case needs a connected tetravalent graph")
    if A is None:
        A = automorphism_group(g)
    if not transitivity(g, A).arc_transitive:
        raise PreconditionError("A is not arc-transitive")
    check_automorphisms(g, N)
    if not _normal_in(N, A):
        raise PreconditionError("N is not a normal subgroup of A")
    quo = quotient_graph(g, N)
    r = quo.graph.n
    semi = N.is_semiregular()
    qval = valency(quo.graph)
    if r == 1:
        return ReductionCase(1, r, qval, semi, quo)
    if r == 2:
        if quo.internal_edges:
            raise AssertionError("two N-orbits that are not a bipartition")
        return ReductionCase(2, r, qval, semi, quo)
    if qval == 2 and is_connected(quo.graph):
        return ReductionCase(3, r, qval, semi, quo)
    if qval == 4 and semi and r >= 5:
        rep = verify_covering(g, quo.graph, quo.orbit_of, compute_ct=False)
        if not rep.is_covering:
            raise AssertionError("valency-preserving quotient is not a covering")
        return ReductionCase(4, r, qval, semi, quo)
    raise AssertionError(
        f"orbit structure fits no case: r={r}, quotient valency={qval}, semiregular={semi}"
    )


def voltage_assignment_from_quotient(g: Graph, N: PermGroup) -> tuple[VoltageAssignment, Quotient, tuple[int, ...]]:
    """Express a cover by a cyclic semiregular ``N`` as a derived graph of its quotient.

    Returns the voltage assignment over the quotient, the quotient itself and
    the isomorphism ``mapping[derived vertex] = vertex of g``.
    """
    if not N.is_semiregular():
        raise PreconditionError("N is not semiregular")
    gen = next((h for h in N.generators if h.order() == N.order), None)
    if gen is None:
        raise PreconditionError("N is not cyclic on one of its generators")
    quo = quotient_graph(g, N)
    rep = verify_covering(g, quo.graph, quo.orbit_of, compute_ct=False)
    if not rep.is_covering:
        raise PreconditionError("the quotient projection is not a covering")
    k = N.order
    c = gen.images
    q = quo.graph
    tree = bfs_spanning_tree(q)
    # representatives chosen along the tree make every tree voltage zero
    rep = {0: quo.orbits[0][0]}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for b in sorted(q.neighbors(a)):
            if b not in rep and (min(a, b), max(a, b)) in tree:
                rep[b] = next(w for w in g.neighbors(rep[a]) if quo.orbit_of[w] == b)
                queue.append(b)
    mapping = [0] * g.n
    coord = {}
    for a in range(q.n):
        x = rep[a]
        for i in range(k):
            mapping[a * k + i] = x
            coord[x] = i
            x = c[x]
    volts = {}
    for a, b in q.edges():
        if (a, b) not in tree:
            w = next(w for w in g.neighbors(rep[a]) if quo.orbit_of[w] == b)
            volts[(a, b)] = (coord[w],)
    va = VoltageAssignment(q, make_group((k,)), volts)
    d = derived_graph(va)
    for u, v in d.graph.edges():
        if not g.has_edge(mapping[u], mapping[v]):
            raise AssertionError("derived graph of the quotient does not match the input")
    return va, quo, tuple(mapping)


# -- lifting a normal Cayley structure ------------------------------------------------------


@dataclass(frozen=True)
class LiftReport:
    cover: DerivedGraph
    aut_order: int
    search: RegularSubgroupResult
    cayley: Literal["yes", "no", "inconclusive"]
    normal: bool | None
    """Whether the lifted regular subgroup is normal in Aut of the cover."""


def lift_consistency_check(base: Graph, G: FiniteGroup, va: VoltageAssignment, *,
                           search_cap: int = 10**5) -> LiftReport:
    """Search the cover for a regular subgroup containing CT that projects into R(G)."""
    if va.base != base:
        raise PreconditionError("voltage assignment lives on a different base graph")
    if not is_normal_cayley(base, G):
        raise PreconditionError("base is not a normal Cayley graph over G")
    cover = derived_graph(va)
    X = cover.graph
    if not is_connected(X):
        raise PreconditionError("derived graph is disconnected")
    A = automorphism_group(X)
    RG = regular_representation(G)
    proj = cover.projection
    order = len(va.K)

    def projects_into_RG(h: Permutation) -> bool:
        img = h.images
        down = [proj[img[u * order]] for u in range(base.n)]
        if any(proj[img[i]] != down[proj[i]] for i in range(X.n)):
            return False
        return Permutation(down, check=False) in RG

    res = find_regular_subgroup(X, A, initial=cover.ct_group.generators,
                                element_filter=projects_into_RG, search_cap=search_cap)
    if res.status == "found":
        return LiftReport(cover, A.order, res, "yes", _normal_in(res.group, A))
    return LiftReport(cover, A.order, res, "no" if res.status == "none" else "inconclusive", None)


# -- voltage files -------------------------------------------------------------------------


def write_voltages(va: VoltageAssignment, out=None) -> str:
    K = va.K
    lines = [" ".join(map(str, (va.base.n, len(K), K.k, *K.orders)))]
    for (u, v), x in sorted(va.voltages.items()):
        lines.append(" ".join(map(str, (u, v, *x.coords))))
    text = "\n".join(lines) + "\n"
    if out is not None:
        out.write(text)
    return text


def read_voltages(source, base: Graph) -> VoltageAssignment:
    """Parse a voltage file for ``base``; cotree edges it omits carry the identity."""
    if isinstance(source, str):
        source = io.StringIO(source)
    rows = [(i, line.split()) for i, line in enumerate(source, 1)]
    rows = [(i, r) for i, r in rows if r and not r[0].startswith("#")]
    if not rows:
        raise VoltageError("empty voltage file")
    try:
        head = [int(x) for x in rows[0][1]]
    except ValueError:
        raise VoltageError("line 1: header must be integers") from None
    if len(head) < 3 or len(head) != 3 + head[2]:
        raise VoltageError("line 1: expected 'n |K| k n1 ... nk'")
    n, order, k, orders = head[0], head[1], head[2], tuple(head[3:])
    if n != base.n:
        raise VoltageError(f"line 1: file is for {n} vertices, base has {base.n}")
    if k < 1 or any(x < 1 for x in orders) or prod(orders) != order:
        raise VoltageError("line 1: |K| does not match the cyclic factor orders")
    K = make_group(orders)
    volts = {}
    tree = bfs_spanning_tree(base)
    for lineno, r in rows[1:]:
        try:
            vals = [int(x) for x in r]
        except ValueError:
            raise VoltageError(f"line {lineno}: entries must be integers") from None
        if len(vals) != 2 + k:
            raise VoltageError(f"line {lineno}: expected 'u v' and {k} coordinates")
        u, v = vals[0], vals[1]
        if not (0 <= u < n and 0 <= v < n) or not base.has_edge(u, v):
            raise VoltageError(f"line {lineno}: ({u}, {v}) is not an edge of the base")
        if (min(u, v), max(u, v)) in tree:
            raise VoltageError(f"line {lineno}: ({u}, {v}) is a spanning-tree edge")
        key = (u, v)
        if key in volts or (v, u) in volts:
            raise VoltageError(f"line {lineno}: edge ({u}, {v}) listed twice")
        volts[key] = tuple(vals[2:])
    try:
        return VoltageAssignment(base, K, volts)
    except GraphError as exc:
        raise VoltageError(str(exc)) from exc


def load_voltages(path: str | Path, base: Graph) -> VoltageAssignment:
    with open(path) as fh:
        return read_voltages(fh, base)


def save_voltages(va: VoltageAssignment, path: str | Path) -> None:
    with open(path, "w") as fh:
        write_voltages(va, fh)
