"""Simple undirected graphs on ``0..n-1`` and the ``symgraph v1`` text format.

The format is the header line ``n m`` followed by ``m`` lines ``u v`` with
``u < v``, sorted lexicographically, LF line endings.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_ARC_LENGTH = 7


class GraphError(ValueError):
    pass


class GraphFormatError(GraphError):
    """Base class for symgraph parse errors; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class MalformedHeaderError(GraphFormatError):
    pass


class MalformedEdgeError(GraphFormatError):
    pass


class EdgeCountError(GraphFormatError):
    pass


class VertexRangeError(GraphFormatError):
    pass


class LoopError(GraphFormatError):
    pass


class DuplicateEdgeError(GraphFormatError):
    pass


class Graph:
    """Immutable simple graph with sorted neighbour tuples."""

    __slots__ = ("n", "adj", "_nbrsets", "_m")

    def __init__(self, n: int, adjacency: Sequence[Iterable[int]]):
        if len(adjacency) != n:
            raise GraphError(f"adjacency has {len(adjacency)} rows, expected {n}")
        adj = tuple(tuple(sorted(set(row))) for row in adjacency)
        for v, row in enumerate(adj):
            for u in row:
                if not 0 <= u < n:
                    raise VertexRangeError(f"neighbour {u} of {v} out of range")
                if u == v:
                    raise LoopError(f"loop at vertex {v}")
        sets = tuple(frozenset(row) for row in adj)
        for v, row in enumerate(adj):
            for u in row:
                if v not in sets[u]:
                    raise GraphError(f"adjacency not symmetric at {v}-{u}")
        self.n = n
        self.adj = adj
        self._nbrsets = sets
        self._m = sum(len(r) for r in adj) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], collapse: bool = False) -> Graph:
        """Build from an edge list; repeated edges raise unless ``collapse``."""
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexRangeError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise LoopError(f"loop at vertex {u}")
            if v in rows[u] and not collapse:
                raise DuplicateEdgeError(f"duplicate edge {min(u, v)}-{max(u, v)}")
            rows[u].add(v)
            rows[v].add(u)
        return cls(n, rows)

    @property
    def m(self) -> int:
        return self._m

    def __len__(self) -> int:
        return self.n

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(r) for r in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbrsets[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u]]

    def relabel(self, mapping: Sequence[int]) -> Graph:
        """Graph in which vertex ``v`` is renamed ``mapping[v]``."""
        rows: list[list[int]] = [[] for _ in range(self.n)]
        for v in range(self.n):
            rows[mapping[v]] = [mapping[u] for u in self.adj[v]]
        return Graph(self.n, rows)

    def is_automorphism(self, images: Sequence[int]) -> bool:
        if len(images) != self.n:
            return False
        sets = self._nbrsets
        for u in range(self.n):
            su = sets[images[u]]
            if len(su) != len(self.adj[u]):
                return False
            for v in self.adj[u]:
                if images[v] not in su:
                    return False
        return True

    def induced_subgraph(self, vertices: Sequence[int]) -> Graph:
        pos = {v: i for i, v in enumerate(vertices)}
        return Graph(len(vertices), [[pos[u] for u in self.adj[v] if u in pos] for v in vertices])

    def complement(self) -> Graph:
        return Graph(self.n, [[u for u in range(self.n) if u != v and u not in self._nbrsets[v]] for v in range(self.n)])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def valency(g: Graph) -> int | None:
    """Common degree of a regular graph, ``None`` when irregular."""
    degs = set(g.degrees())
    if len(degs) > 1:
        return None
    return degs.pop() if degs else 0


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        for v in comp:
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(components(g)) == 1


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in g.adj[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


@dataclass(frozen=True)
class Bipartition:
    is_bipartite: bool
    coloring: tuple[int, ...] | None = None
    odd_cycle: tuple[int, ...] | None = None


def bipartition(g: Graph) -> Bipartition:
    """2-colouring witness, or an odd closed walk (first vertex repeated last)."""
    color = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.adj[v]:
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    parent[u] = v
                    queue.append(u)
                elif color[u] == color[v]:
                    return Bipartition(False, odd_cycle=_odd_walk(parent, u, v))
    return Bipartition(True, coloring=tuple(color))


def _odd_walk(parent: list[int], u: int, v: int) -> tuple[int, ...]:
    def path(x):
        out = [x]
        while parent[out[-1]] >= 0:
            out.append(parent[out[-1]])
        return out

    pu, pv = path(u), path(v)
    common = set(pu) & set(pv)
    top_u = next(i for i, x in enumerate(pu) if x in common)
    top_v = pv.index(pu[top_u])
    cycle = pu[: top_u + 1] + pv[:top_v][::-1]
    return tuple(cycle + [cycle[0]])


def is_bipartite(g: Graph) -> bool:
    return bipartition(g).is_bipartite


def iter_s_arcs(g: Graph, s: int, start: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Enumerate s-arcs (non-backtracking walks with ``s`` steps) with an explicit stack."""
    if not 0 <= s <= MAX_ARC_LENGTH:
        raise ValueError(f"s must be in 0..{MAX_ARC_LENGTH}")
    starts = range(g.n) if start is None else start
    adj = g.adj
    for v0 in starts:
        if s == 0:
            yield (v0,)
            continue
        path = [v0]
        stack = [iter(adj[v0])]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                path.pop()
                continue
            if len(path) >= 2 and nxt == path[-2]:
                continue
            path.append(nxt)
            if len(path) == s + 1:
                yield tuple(path)
                path.pop()
            else:
                stack.append(iter(adj[nxt]))
        # path holds v0 only until the root iterator is exhausted


def is_s_arc(g: Graph, arc: Sequence[int]) -> bool:
    return all(g.has_edge(a, b) for a, b in zip(arc, arc[1:])) and all(
        arc[i - 1] != arc[i + 1] for i in range(1, len(arc) - 1)
    )


def count_s_arcs(g: Graph, s: int, exhaustive: bool = False) -> int:
    """Number of s-arcs of a regular graph: ``n d (d-1)^(s-1)`` for ``s >= 1``."""
    d = valency(g)
    if d is None:
        raise GraphError("count_s_arcs needs a regular graph")
    if exhaustive:
        return sum(1 for _ in iter_s_arcs(g, s))
    if s == 0:
        return g.n
    return g.n * d * (d - 1) ** (s - 1)


# -- symgraph v1 -------------------------------------------------------------


def read_graph(text: str) -> Graph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MalformedHeaderError("empty input", 1)
    header = lines[0].split()
    if len(header) != 2 or not all(_is_uint(t) for t in header):
        raise MalformedHeaderError(f"expected 'n m', got {lines[0]!r}", 1)
    n, m = int(header[0]), int(header[1])
    body = lines[1:]
    if len(body) != m:
        raise EdgeCountError(f"header declares {m} edges, found {len(body)}", 1)
    rows: list[set[int]] = [set() for _ in range(n)]
    for lineno, line in enumerate(body, start=2):
        parts = line.split()
        if len(parts) != 2 or not all(_is_uint(t) for t in parts):
            raise MalformedEdgeError(f"expected 'u v', got {line!r}", lineno)
        u, v = int(parts[0]), int(parts[1])
        if u >= n or v >= n:
            raise VertexRangeError(f"vertex out of range 0..{n - 1}: {line!r}", lineno)
        if u == v:
            raise LoopError(f"loop at vertex {u}", lineno)
        if v in rows[u]:
            raise DuplicateEdgeError(f"duplicate edge {min(u, v)} {max(u, v)}", lineno)
        rows[u].add(v)
        rows[v].add(u)
    return Graph(n, rows)


def _is_uint(tok: str) -> bool:
    return tok.isascii() and tok.isdigit()


def write_graph(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def load_graph(path) -> Graph:
    with open(path, encoding="ascii", newline="") as fh:
        return read_graph(fh.read())


def save_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(write_graph(g))
