"""Regular-subgroup search (Cayley recognition) and the normal-Cayley test."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Literal, Sequence

from ..constructions import LabeledGraph, cayley
from ..graphs import Graph
from ..groups import GroupLike, PermutationGroupElements, regular_representation
from ..perm import Permutation, PermGroup, schreier_sims
from .analysis import check_automorphisms
from .search import automorphism_group

DEFAULT_STABILIZER_CAP = 10**5
DEFAULT_SEARCH_CAP = 10**5


class LabelingMismatch(ValueError):
    """The right-regular action of the group is not a set of graph automorphisms."""


@dataclass(frozen=True)
class RegularSubgroupResult:
    status: Literal["found", "none", "inconclusive"]
    group: PermGroup | None = None
    nodes: int = 0
    reason: str = ""

    def __bool__(self) -> bool:
        return self.status == "found"


class _Closure:
    """A semiregular subgroup kept as the dict ``image of 0 -> element``."""

    def __init__(self, n: int):
        ident = tuple(range(n))
        self.by_image = {0: ident}
        self.gens: list[tuple] = []

    @staticmethod
    def extend(base: _Closure, g: tuple, n: int, limit: int, conj: Sequence[tuple] = ()) -> _Closure | None:
        """``<base, g>`` or None as soon as it fails to act semiregularly.

        With ``conj`` the result is also closed under conjugation by those
        permutations, i.e. it is the normal closure in the group they generate.
        """
        if g[0] in base.by_image:
            return None
        by_image = dict(base.by_image)
        gens = list(base.gens)
        pending = [g]
        queue = list(by_image.values())
        while pending:
            gens.extend(pending)
            pending = []
            # closure by right multiplication with every generator
            i = 0
            while i < len(queue):
                h = queue[i]
                i += 1
                for s in gens:
                    k = tuple(s[x] for x in h)  # h then s
                    img = k[0]
                    old = by_image.get(img)
                    if old is not None:
                        if old != k:
                            return None
                        continue
                    if any(k[x] == x for x in range(1, n)):
                        return None
                    by_image[img] = k
                    if len(by_image) > limit:
                        return None
                    queue.append(k)
            for h in gens:
                for a, ainv in conj:
                    c = tuple(a[h[ainv[x]]] for x in range(n))  # a^-1 h a
                    old = by_image.get(c[0])
                    if old is None:
                        if c not in pending:
                            pending.append(c)
                    elif old != c:
                        return None
            queue = list(by_image.values())
        out = _Closure.__new__(_Closure)
        out.by_image = by_image
        out.gens = gens
        return out


def find_regular_subgroup(
    g: Graph,
    A: PermGroup | None = None,
    target_order: int | None = None,
    *,
    initial: Iterable[Permutation] = (),
    element_filter: Callable[[Permutation], bool] | None = None,
    accept: Callable[[PermGroup], bool] | None = None,
    normal_in: PermGroup | None = None,
    stabilizer_cap: int = DEFAULT_STABILIZER_CAP,
    search_cap: int = DEFAULT_SEARCH_CAP,
) -> RegularSubgroupResult:
    """Search ``A`` (default: Aut(g)) for a subgroup acting regularly on the vertices.

    Every element is ``a * t_w`` with ``a`` in the stabilizer of vertex 0 and
    ``t_w`` a fixed element sending 0 to ``w``; the search adjoins such
    elements for the smallest vertex not yet reached and closes the group,
    abandoning a branch as soon as some non-identity element has a fixed
    point. ``initial`` seeds the subgroup; ``element_filter`` restricts the
    candidates and ``accept`` rejects complete regular subgroups, in which
    case the search moves on. With ``normal_in`` every partial subgroup is
    replaced by its normal closure there, which finds exactly the regular
    subgroups normal in that group. Exhausting ``search_cap`` nodes yields
    ``inconclusive``.
    """
    n = g.n
    if target_order is not None and target_order != n:
        raise ValueError(f"a regular subgroup has order n={n}, not {target_order}")
    if A is None:
        A = automorphism_group(g)
    check_automorphisms(g, A)
    if n == 0:
        return RegularSubgroupResult("found", schreier_sims([], 0))
    if A.order % n:
        return RegularSubgroupResult("none", reason="n does not divide |A|")
    if len(A.orbit(0)) != n:
        return RegularSubgroupResult("none", reason="A is not vertex-transitive")

    chain = A if A.base and A.base[0] == 0 else schreier_sims(A.strong_generators, n, base=[0])
    stab = chain.pointwise_stabilizer([0])
    if stab.order > stabilizer_cap:
        return RegularSubgroupResult("inconclusive", reason=f"|A_0| = {stab.order} exceeds the cap")
    stab_elems = [h.images for h in stab.elements(stabilizer_cap)]
    level = chain._levels[0]
    transversal = {w: level.trans[w] for w in level.trans}

    conj = [(a.images, a.inverse().images) for a in normal_in.generators] if normal_in else []
    start = _Closure(n)
    for h in initial:
        nxt = _Closure.extend(start, h.images, n, n, conj)
        if nxt is None:
            raise ValueError("initial elements do not generate a semiregular group")
        start = nxt

    nodes = 0
    seen: set[frozenset] = set()

    def candidates(w: int):
        t = transversal[w]
        for a in stab_elems:
            c = tuple(t[a[x]] for x in range(n))  # a then t
            if element_filter is None or element_filter(Permutation(c, check=False)):
                yield c

    def dfs(H: _Closure) -> _Closure | None:
        nonlocal nodes
        if len(H.by_image) == n:
            return H if accept is None or accept(_as_group(H, n)) else None
        nodes += 1
        if nodes > search_cap:
            raise _CapHit
        w = next(v for v in range(n) if v not in H.by_image)
        for c in candidates(w):
            if any(c[x] == x for x in range(n)):
                continue
            H2 = _Closure.extend(H, c, n, n, conj)
            if H2 is None or n % len(H2.by_image):
                continue
            key = frozenset(H2.by_image.values())
            if key in seen:
                continue
            seen.add(key)
            r = dfs(H2)
            if r is not None:
                return r
        return None

    try:
        found = dfs(start)
    except _CapHit:
        return RegularSubgroupResult("inconclusive", nodes=nodes, reason=f"search exceeded {search_cap} nodes")
    if found is None:
        return RegularSubgroupResult("none", nodes=nodes, reason="exhaustive search")
    group = _as_group(found, n)
    assert group.order == n and group.is_regular()
    return RegularSubgroupResult("found", group, nodes)


def _as_group(H: _Closure, n: int) -> PermGroup:
    return schreier_sims([Permutation(x, check=False) for x in H.gens], n)


class _CapHit(Exception):
    pass


def cayley_from_regular(g: Graph, R: PermGroup) -> tuple[LabeledGraph, PermutationGroupElements]:
    """Cay(R, S) for a regular subgroup R of Aut(g), with S the elements sending 0 into N(0).

    Element ``h`` corresponds to vertex ``0^h``, so the result is equal to ``g``
    under that identification.
    """
    H = PermutationGroupElements(R)
    S = [h for h in H.elements if g.has_edge(0, h.images[0])]
    return cayley(H, S), H


def is_cayley(g: Graph, A: PermGroup | None = None, **caps) -> RegularSubgroupResult:
    return find_regular_subgroup(g, A, **caps)


def find_normal_regular_subgroup(g: Graph, A: PermGroup | None = None, **caps) -> RegularSubgroupResult:
    """A regular subgroup normal in ``A``; ``none`` means g is not a normal Cayley graph."""
    if A is None:
        A = automorphism_group(g)
    return find_regular_subgroup(g, A, accept=lambda H: H.is_normal_in(A), normal_in=A, **caps)


def is_normal_cayley(g: Graph, G: GroupLike, A: PermGroup | None = None) -> bool:
    """True iff the right-regular copy of ``G`` is normal in Aut(g).

    ``g`` must carry the labelling produced by :func:`cayley`, i.e. vertex
    ``i`` is ``G.elements[i]``.
    """
    if len(G.elements) != g.n:
        raise LabelingMismatch(f"|G| = {len(G.elements)} but the graph has {g.n} vertices")
    R = regular_representation(G)
    for r in R.generators:
        if not g.is_automorphism(r.images):
            raise LabelingMismatch("right multiplication is not an automorphism; wrong labelling")
    if A is None:
        A = automorphism_group(g)
    return R.is_normal_in(A)
