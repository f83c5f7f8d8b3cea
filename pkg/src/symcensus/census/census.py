"""Census of the constructible tetravalent graphs of order 6p^2."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from ..symmetry.search import ResourceLimitExceeded
from .families import build, census_entries
from .report import AnalysisReport, analyze, graph_hash, read_reports, write_reports

# s-values listed for each order in the published census of tetravalent
# s-transitive graphs of order 6p^2, p < 11; beyond that only s = 1 occurs
KNOWN_S_VALUES = {24: {1}, 54: {1, 2}, 150: {1}, 294: {1}}

HEADER = (
    "# constructible graphs of order 6p^2; census labels such as C[24,1] are not\n"
    "# reconstructed, only the s-values of each order are compared"
)


def allowed_s(n: int) -> set[int]:
    return KNOWN_S_VALUES.get(n, {1})


@dataclass
class CensusResult:
    reports: list[AnalysisReport] = field(default_factory=list)
    errors: list[tuple[str, str]] = field(default_factory=list)
    inconsistent: list[tuple[str, str]] = field(default_factory=list)
    cached: int = 0

    @property
    def ok(self) -> bool:
        return not self.errors and not self.inconsistent


def _analyze_entry(entry: tuple[str, str, dict], node_limit: int) -> tuple[str, AnalysisReport | None, str]:
    gid, family, params = entry
    try:
        g = build(family, params)
        return gid, analyze(g, gid, family, params, node_limit=node_limit), ""
    except ResourceLimitExceeded as exc:
        return gid, None, f"resource cap: {exc}"
    except (ValueError, AssertionError) as exc:
        return gid, None, f"{type(exc).__name__}: {exc}"


def check_entry(r: AnalysisReport) -> list[str]:
    issues = r.issues()
    if r.valency == 4 and r.arc_transitive:
        allowed = allowed_s(r.n)
        if r.s_level not in allowed:
            issues.append(f"s = {r.s_level} but order {r.n} admits only s in {sorted(allowed)}")
    return issues


def run_census(pmax: int, cache: str | Path | None = None, jobs: int = 1,
               node_limit: int = 10**7) -> CensusResult:
    entries = census_entries(pmax)
    known: dict[str, AnalysisReport] = {}
    if cache is not None and Path(cache).exists():
        known = {r.graph_hash: r for r in read_reports(cache)}
    result = CensusResult()
    todo, slots = [], []
    for entry in entries:
        h = graph_hash(build(entry[1], entry[2]))
        if h in known:
            slots.append(known[h])
            result.cached += 1
        else:
            slots.append(None)
            todo.append((len(slots) - 1, entry))
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            done = list(pool.map(_analyze_entry, [e for _, e in todo], [node_limit] * len(todo)))
    else:
        done = [_analyze_entry(e, node_limit) for _, e in todo]
    fresh = []
    for (slot, _), (gid, rep, err) in zip(todo, done):
        if rep is None:
            result.errors.append((gid, err))
        else:
            slots[slot] = rep
            fresh.append(rep)
    if cache is not None and fresh:
        write_reports(fresh, cache, append=True)
    for rep in slots:
        if rep is None:
            continue
        result.reports.append(rep)
        for msg in check_entry(rep):
            result.inconsistent.append((rep.graph_id, msg))
    return result


def format_table(result: CensusResult) -> str:
    rows = [("graph", "order", "s", "aut_order", "one_regular", "cayley", "normal_cayley")]
    for r in result.reports:
        rows.append((r.graph_id, str(r.n), str(r.s_level), r.aut_order, str(r.one_regular).lower(),
                     r.cayley, r.normal_cayley))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = [HEADER]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    for gid, msg in result.errors:
        lines.append(f"! {gid}: {msg}")
    for gid, msg in result.inconsistent:
        lines.append(f"! {gid}: inconsistent: {msg}")
    return "\n".join(lines)
