"""Graph families: Cayley and bi-Cayley graphs, rose-window graphs, lexicographic products.

Vertex labelling conventions:

* ``cayley(G, S)``: vertex ``i`` is ``G.elements[i]``; ``h ~ s*h`` for ``s`` in ``S``.
* ``bicayley(H, R, L, S)``: vertices ``0..|H|-1`` are ``h_0`` (in element order),
  then ``|H|..2|H|-1`` are ``h_1``.
* ``lex_product(G, H)``: vertex ``(x, y)`` is ``x * |V(H)| + y``.

Word resolution for the order-6p^2 families (coordinates of the structured group):

====  =====================================  ===============================
tag   group                                  generators
====  =====================================  ===============================
a     Z_p x Z_6p                             x=(1,0), y=(0,1)
b     (Z_p x Z_3p) : <z>, z inverts y        x=(1,0;0), y=(0,1;0), z=(0,0;1)
c, d  (Z_p^2 x Z_3) : <z>, z inverts y       x=(1,0;0), y=(0,1;0), z=(0,0;1)
e     (Z_p x Z_p x Z_3) : <t>, t inverts z   x, y, z unit vectors, t=(0,0,0;1)
====  =====================================  ===============================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graphs import Graph, components, valency
from .groups import FiniteGroup, GroupLike, cyclic_group, make_group
from .perm import Permutation, PermGroup, schreier_sims


class ConstructionError(ValueError):
    pass


class LabeledGraph(Graph):
    """A graph that remembers what each vertex stands for."""

    __slots__ = ("labels", "meta")

    def __init__(self, n, adjacency, labels: Sequence | None = None, meta: dict | None = None):
        super().__init__(n, adjacency)
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        self.meta = dict(meta or {})

    def label_map(self) -> dict[int, str]:
        return {i: str(lab) for i, lab in enumerate(self.labels)}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def sqrt_minus_one(modulus: int) -> list[int]:
    """All residues e with e^2 = -1 (mod modulus), by direct search."""
    return [e for e in range(1, modulus) if (e * e + 1) % modulus == 0]


# -- Cayley graphs -------------------------------------------------------------


def connection_set(G: GroupLike, elements: Iterable) -> frozenset:
    S = frozenset(elements)
    if G.identity in S:
        raise ConstructionError("connection set contains the identity")
    for s in S:
        if G.inv(s) not in S:
            raise ConstructionError(f"connection set is not inverse-closed: {s} lacks its inverse")
    return S


def cayley(G: GroupLike, S: Iterable) -> LabeledGraph:
    """Cay(G, S): ``h ~ g`` iff ``g h^-1`` lies in ``S``."""
    S = connection_set(G, S)
    elems = G.elements
    index = G.index
    rows = [[index(G.mul(s, h)) for s in S] for h in elems]
    g = LabeledGraph(len(elems), rows, labels=elems)
    g.meta["connected"] = len(components(g)) == 1
    g.meta["connection_set"] = sorted(map(str, S))
    return g


def _family_group(tag: str, p: int) -> FiniteGroup:
    if tag == "a":
        G = make_group((p, 6 * p))
        G.names.update(x=G.element((1, 0)), y=G.element((0, 1)))
    elif tag == "b":
        G = make_group((p, 3 * p), True, (1, -1))
        G.names.update(x=G.element((1, 0)), y=G.element((0, 1)), z=G.element((0, 0), 1))
    elif tag in ("c", "d"):
        G = make_group((p * p, 3), True, (1, -1))
        G.names.update(x=G.element((1, 0)), y=G.element((0, 1)), z=G.element((0, 0), 1))
    elif tag == "e":
        G = make_group((p, p, 3), True, (1, 1, -1))
        G.names.update(
            x=G.element((1, 0, 0)), y=G.element((0, 1, 0)),
            z=G.element((0, 0, 1)), t=G.element((0, 0, 0), 1),
        )
    else:
        raise ConstructionError(f"unknown family tag {tag!r}; expected one of a-e")
    return G


FAMILY_WORDS = {
    "a": ("y", "y^-1", "xy", "(xy)^-1"),
    "b": ("xz", "x^-1z", "x^{e}yz", "x^{-e}yz"),
    "c": ("xz", "x^-1z", "xyz", "x^-1yz"),
    "d": ("xz", "x^-1z", "x^{e}yz", "x^{-e}yz"),
    "e": ("xt", "x^-1t", "yzt", "y^-1zt"),
}


def family_group(tag: str, p: int) -> FiniteGroup:
    return _family_group(tag, p)


def family_connection_set(tag: str, p: int, eps: int | None = None) -> tuple[FiniteGroup, list]:
    if not is_prime(p):
        raise ConstructionError(f"p={p} is not prime")
    if tag == "b":
        if p % 4 != 1:
            raise ConstructionError(f"family b needs p = 1 (mod 4), got p={p}")
        if eps is None or (eps * eps + 1) % p:
            raise ConstructionError(f"family b needs eps^2 = -1 (mod {p}), got eps={eps}")
    if tag == "d":
        if eps is None or (eps * eps + 1) % (p * p):
            raise ConstructionError(f"family d needs eps^2 = -1 (mod {p * p}), got eps={eps}")
    G = _family_group(tag, p)
    words = [w.replace("{e}", str(eps)).replace("{-e}", str(-eps if eps is not None else 0))
             for w in FAMILY_WORDS[tag]]
    return G, [G.word(w) for w in words]


def family(tag: str, p: int, eps: int | None = None) -> LabeledGraph:
    """The tetravalent Cayley graph of order 6p^2 named by ``tag``."""
    G, S = family_connection_set(tag, p, eps)
    if len(set(S)) != 4:
        raise ConstructionError(f"family {tag} with p={p} has a degenerate connection set")
    g = cayley(G, S)
    if not g.meta["connected"]:
        raise ConstructionError(f"family {tag} with p={p}: connection set does not generate the group")
    g.meta.update(family=tag, p=p, eps=eps)
    return g


# -- bi-Cayley graphs ------------------------------------------------------------


@dataclass(frozen=True)
class BiCayleySpec:
    H: FiniteGroup
    R: frozenset = field(default_factory=frozenset)
    L: frozenset = field(default_factory=frozenset)
    S: frozenset = field(default_factory=frozenset)


def bicayley(H: GroupLike | BiCayleySpec, R: Iterable = (), L: Iterable = (), S: Iterable = ()) -> LabeledGraph:
    """BiCay(H, R, L, S) with right, left and spoke edges."""
    if isinstance(H, BiCayleySpec):
        H, R, L, S = H.H, H.R, H.L, H.S
    R, L, S = frozenset(R), frozenset(L), frozenset(S)
    for name, part in (("R", R), ("L", L)):
        if H.identity in part:
            raise ConstructionError(f"{name} contains the identity")
        if any(H.inv(r) not in part for r in part):
            raise ConstructionError(f"{name} is not inverse-closed")
    n = len(H.elements)
    index = H.index
    rows: list[set[int]] = [set() for _ in range(2 * n)]
    for i, h in enumerate(H.elements):
        for r in R:
            rows[i].add(index(H.mul(r, h)))
        for l in L:
            rows[n + i].add(n + index(H.mul(l, h)))
        for s in S:
            j = n + index(H.mul(s, h))
            rows[i].add(j)
            rows[j].add(i)
    labels = [(h, 0) for h in H.elements] + [(h, 1) for h in H.elements]
    return LabeledGraph(2 * n, rows, labels=labels)


def bicayley_action(H: GroupLike) -> PermGroup:
    """Right multiplication by ``H`` on both halves of a bi-Cayley vertex set."""
    n = len(H.elements)
    gens = getattr(H, "generators", None) or H.elements
    perms = []
    for a in gens:
        half = [H.index(H.mul(h, a)) for h in H.elements]
        perms.append(Permutation(half + [n + j for j in half], check=False))
    return schreier_sims(perms, 2 * n)


def rose_window(n: int, a: int, r: int) -> LabeledGraph:
    """R_n(a, r) = BiCay(Z_n, {+-1}, {+-r}, {0, a})."""
    if n < 3:
        raise ConstructionError(f"rose-window graphs need n >= 3, got {n}")
    if not (1 <= a <= n - 1 and 1 <= r <= n - 1):
        raise ConstructionError(f"parameters a={a}, r={r} outside 1..{n - 1}")
    H = cyclic_group(n)
    e = H.element
    g = bicayley(H, {e((1,)), e((-1,))}, {e((r,)), e((-r,))}, {e((0,)), e((a,))})
    g.meta.update(family="rose-window", n=n, a=a, r=r)
    return g


# -- products and named graphs ---------------------------------------------------------


def lex_product(G: Graph, H: Graph) -> LabeledGraph:
    """G[H]: ``(x,y) ~ (v,w)`` iff ``x ~ v``, or ``x == v`` and ``y ~ w``."""
    k = H.n
    rows = []
    labels = []
    for x in range(G.n):
        for y in range(k):
            row = [v * k + w for v in G.adj[x] for w in range(k)]
            row.extend(x * k + w for w in H.adj[y])
            rows.append(row)
            labels.append((x, y))
    return LabeledGraph(G.n * k, rows, labels=labels)


def cycle(n: int) -> Graph:
    if n < 3:
        raise ConstructionError(f"cycle needs n >= 3, got {n}")
    return Graph(n, [[(v - 1) % n, (v + 1) % n] for v in range(n)])


def empty_graph(k: int) -> Graph:
    return Graph(k, [[] for _ in range(k)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [[u for u in range(n) if u != v] for v in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def octahedron() -> Graph:
    """K_{2,2,2}; the non-adjacent pairs are {0,1}, {2,3}, {4,5}."""
    return Graph(6, [[u for u in range(6) if u // 2 != v // 2] for v in range(6)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def prism(n: int) -> Graph:
    """Circular ladder C_n x K_2: outer cycle 0..n-1, inner cycle n..2n-1."""
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return Graph.from_edges(2 * n, edges)


def lex_cycle_2k1(n: int) -> LabeledGraph:
    """C_n[2K_1]."""
    g = lex_product(cycle(n), empty_graph(2))
    g.meta.update(family="lex-c2k1", n=n)
    return g


def disjoint_union(*graphs: Graph) -> Graph:
    rows = []
    offset = 0
    for g in graphs:
        rows.extend([u + offset for u in row] for row in g.adj)
        offset += g.n
    return Graph(offset, rows)


def is_tetravalent(g: Graph) -> bool:
    return valency(g) == 4
