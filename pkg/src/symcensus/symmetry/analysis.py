"""Transitivity flags, s-arc-transitivity level and the tetravalent stabilizer check."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..graphs import Graph, count_s_arcs, is_connected, iter_s_arcs, valency, MAX_ARC_LENGTH
from ..perm import PermGroup, on_sets, on_tuples, orbits
from .search import DEFAULT_NODE_LIMIT, automorphism_group


class NotAutomorphismError(ValueError):
    pass


class SLevelError(ValueError):
    pass


def check_automorphisms(g: Graph, A: PermGroup) -> None:
    if A.degree != g.n:
        raise NotAutomorphismError(f"group degree {A.degree} != {g.n} vertices")
    for h in A.generators:
        if not g.is_automorphism(h.images):
            raise NotAutomorphismError(f"{h!r} is not an automorphism")


@dataclass(frozen=True)
class Transitivity:
    vertex_orbits: int
    edge_orbits: int
    arc_orbits: int

    @property
    def vertex_transitive(self) -> bool:
        return self.vertex_orbits == 1

    @property
    def edge_transitive(self) -> bool:
        return self.edge_orbits == 1

    @property
    def arc_transitive(self) -> bool:
        return self.arc_orbits == 1


def transitivity(g: Graph, A: PermGroup | None = None) -> Transitivity:
    if A is None:
        A = automorphism_group(g)
    check_automorphisms(g, A)
    return Transitivity(
        len(orbits(A)),
        len(orbits(A, g.edges(), on_sets)),
        len(orbits(A, g.arcs(), on_tuples)),
    )


def s_arc_orbit(A: PermGroup, arc: tuple[int, ...], limit: int | None = None) -> set[tuple[int, ...]]:
    """Breadth-first closure of one s-arc under the generators of ``A``."""
    gens = [h.images for h in (A.generators or A.strong_generators)]
    seen = {arc}
    frontier = [arc]
    while frontier:
        nxt = []
        for a in frontier:
            for h in gens:
                b = tuple(h[x] for x in a)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        if limit is not None and len(seen) > limit:
            break
        frontier = nxt
    return seen


# admissible vertex-stabilizer orders of connected tetravalent s-transitive graphs
TETRAVALENT_STABILIZERS = {
    2: {12, 24},
    3: {36, 72, 144},
    4: {432},
    7: {11664},
}


def _is_power_of_two(k: int) -> bool:
    return k > 0 and k & (k - 1) == 0


def validate_stabilizer(s: int | None, stabilizer_order: int, d: int) -> tuple[bool, str]:
    """Check a tetravalent graph's ``(s, |A_v|)`` against the admissible table."""
    if d != 4 or s is None or s < 1:
        return True, "not applicable"
    if s == 1:
        ok = _is_power_of_two(stabilizer_order)
        return ok, "s=1 needs a 2-group stabilizer" + ("" if ok else f", got order {stabilizer_order}")
    allowed = TETRAVALENT_STABILIZERS.get(s)
    if allowed is None:
        return False, f"s={s} is impossible for tetravalent graphs"
    ok = stabilizer_order in allowed
    msg = f"s={s} needs |A_v| in {sorted(allowed)}"
    return ok, msg + ("" if ok else f", got {stabilizer_order}")


@dataclass(frozen=True)
class SLevelReport:
    s: int | None
    """Largest s with Aut transitive on s-arcs (0 = vertex- but not arc-transitive, None = not vertex-transitive)."""
    aut_order: int
    stabilizer_order: int
    stabilizer_vertex: int
    n: int
    valency: int
    vertex_transitive: bool
    edge_transitive: bool
    arc_transitive: bool
    s_arc_counts: dict = field(default_factory=dict)
    validator_ok: bool = True
    validator_message: str = ""

    @property
    def one_regular(self) -> bool:
        return self.arc_transitive and self.aut_order == self.n * self.valency


def s_level(g: Graph, A: PermGroup | None = None, node_limit: int = DEFAULT_NODE_LIMIT,
            strict: bool = True) -> SLevelReport:
    """Exact s-arc-transitivity level of a connected regular graph of valency >= 3.

    With ``strict`` a stabilizer that contradicts the tetravalent table
    raises ``AssertionError`` instead of being reported.
    """
    d = valency(g)
    if d is None:
        raise SLevelError("s_level needs a regular graph")
    if d < 3:
        raise SLevelError(f"s_level needs valency >= 3, got {d}")
    if not is_connected(g):
        raise SLevelError("s_level needs a connected graph")
    if A is None:
        A = automorphism_group(g, node_limit=node_limit)
    check_automorphisms(g, A)
    v = A.base[0] if A.base else 0
    stab = A.pointwise_stabilizer([v]).order
    tr = transitivity(g, A)
    counts = {}
    s: int | None = None
    if tr.vertex_transitive:
        s = 0
        for k in range(1, MAX_ARC_LENGTH + 1):
            total = count_s_arcs(g, k)
            counts[k] = total
            if A.order < total:
                break
            first = next(iter_s_arcs(g, k, start=[v]))
            if len(s_arc_orbit(A, first)) != total:
                break
            s = k
    ok, msg = validate_stabilizer(s, stab, d)
    if strict and not ok:
        raise AssertionError(f"stabilizer check failed: {msg}")
    return SLevelReport(
        s=s, aut_order=A.order, stabilizer_order=stab, stabilizer_vertex=v, n=g.n, valency=d,
        vertex_transitive=tr.vertex_transitive, edge_transitive=tr.edge_transitive,
        arc_transitive=tr.arc_transitive, s_arc_counts=counts,
        validator_ok=ok, validator_message=msg,
    )


def one_regular(g: Graph, A: PermGroup | None = None) -> bool:
    return s_level(g, A).one_regular
