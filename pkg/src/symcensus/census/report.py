"""The per-graph analysis record and its line-delimited JSON form."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Iterable, Iterator

from ..graphs import Graph, is_bipartite, is_connected, valency, write_graph
from ..symmetry.analysis import s_level, transitivity, validate_stabilizer
from ..symmetry.cayley import find_normal_regular_subgroup, find_regular_subgroup
from ..symmetry.search import DEFAULT_NODE_LIMIT, automorphism_group

NOT_ARC_TRANSITIVE = "not-arc-transitive"


class PropertyFailure(AssertionError):
    """An internal identity of a report does not hold."""


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(write_graph(g).encode()).hexdigest()


@dataclass(frozen=True)
class AnalysisReport:
    graph_id: str
    graph_hash: str
    family: str
    params: dict = field(default_factory=dict)
    n: int = 0
    m: int = 0
    valency: int | None = None
    connected: bool = False
    bipartite: bool = False
    aut_order: str = "1"
    s_level: int | str | None = None
    """``s >= 1``, ``"not-arc-transitive"``, or None when undefined (irregular, valency < 3, disconnected)."""
    vertex_transitive: bool = False
    edge_transitive: bool = False
    arc_transitive: bool = False
    one_regular: bool = False
    cayley: str = "no"
    normal_cayley: str = "no"
    stabilizer_order: str = "1"
    validator: str = "not applicable"

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(", ", ": "))

    @classmethod
    def from_dict(cls, data: dict) -> AnalysisReport:
        names = [f.name for f in fields(cls)]
        unknown = set(data) - set(names)
        if unknown:
            raise ValueError(f"unknown report keys {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, line: str) -> AnalysisReport:
        return cls.from_dict(json.loads(line))

    def issues(self) -> list[str]:
        """Internal identities that fail; empty for a consistent report."""
        out = []
        aut, stab = int(self.aut_order), int(self.stabilizer_order)
        if self.vertex_transitive and aut != self.n * stab:
            out.append(f"orbit-stabilizer: {aut} != {self.n} * {stab}")
        if self.one_regular and self.s_level != 1:
            out.append(f"one_regular but s_level = {self.s_level}")
        if self.arc_transitive and self.valency and self.valency >= 3 and self.connected:
            expect = aut == self.n * self.valency
            if expect != self.one_regular:
                out.append("one_regular disagrees with |Aut| = n * valency")
        if self.validator.startswith("violation"):
            out.append(self.validator)
        if isinstance(self.s_level, int) and not self.arc_transitive:
            out.append("s_level >= 1 without arc-transitivity")
        return out


def analyze(
    g: Graph,
    graph_id: str = "",
    family: str = "",
    params: dict | None = None,
    *,
    node_limit: int = DEFAULT_NODE_LIMIT,
    stabilizer_cap: int = 10**5,
    search_cap: int = 10**4,
) -> AnalysisReport:
    d = valency(g)
    conn = is_connected(g)
    A = automorphism_group(g, node_limit=node_limit)
    tr = transitivity(g, A)
    v = A.base[0] if A.base else 0
    stab = A.pointwise_stabilizer([v]).order if g.n else 1
    s: int | str | None = None
    verdict = "not applicable"
    if d is not None and d >= 3 and conn:
        rep = s_level(g, A, strict=False)
        s = rep.s if rep.s and rep.s >= 1 else NOT_ARC_TRANSITIVE
        ok, msg = validate_stabilizer(rep.s, rep.stabilizer_order, d)
        if msg != "not applicable":
            verdict = ("ok: " if ok else "violation: ") + msg
    one_reg = bool(tr.arc_transitive and d and conn and A.order == g.n * d)
    cay, normal = "no", "no"
    if tr.vertex_transitive and g.n:
        caps = dict(stabilizer_cap=stabilizer_cap, search_cap=search_cap)
        res = find_regular_subgroup(g, A, **caps)
        cay = {"found": "yes", "none": "no"}.get(res.status, "inconclusive")
        if cay == "yes":
            nres = find_normal_regular_subgroup(g, A, **caps)
            normal = {"found": "yes", "none": "no"}.get(nres.status, "inconclusive")
        elif cay == "inconclusive":
            normal = "inconclusive"
    return AnalysisReport(
        graph_id=graph_id, graph_hash=graph_hash(g), family=family, params=dict(params or {}),
        n=g.n, m=g.m, valency=d, connected=conn, bipartite=is_bipartite(g),
        aut_order=str(A.order), s_level=s,
        vertex_transitive=tr.vertex_transitive, edge_transitive=tr.edge_transitive,
        arc_transitive=tr.arc_transitive, one_regular=one_reg,
        cayley=cay, normal_cayley=normal, stabilizer_order=str(stab), validator=verdict,
    )


def write_reports(reports: Iterable[AnalysisReport], path: str | Path, append: bool = False) -> None:
    with open(path, "a" if append else "w") as fh:
        for r in reports:
            fh.write(r.to_json() + "\n")


def read_reports(path: str | Path) -> Iterator[AnalysisReport]:
    with open(path) as fh:
        for line in fh:
            if line.strip():
                yield AnalysisReport.from_json(line)


def format_text(r: AnalysisReport) -> str:
    width = max(len(f.name) for f in fields(r))
    return "\n".join(f"{k:<{width}}  {v}" for k, v in asdict(r).items())
