"""Named graph families reachable from the command line."""

from __future__ import annotations

from typing import Callable

from .. import constructions as C
from ..graphs import Graph


def _cayley(p: int, tag: str, eps: int | None = None) -> Graph:
    return C.family(tag, p, eps)


BUILDERS: dict[str, tuple[Callable[..., Graph], tuple[str, ...]]] = {
    "lex-c2k1": (C.lex_cycle_2k1, ("n",)),
    "cayley": (_cayley, ("p", "tag", "eps")),
    "rose-window": (C.rose_window, ("n", "a", "r")),
    "cycle": (C.cycle, ("n",)),
    "complete": (C.complete_graph, ("n",)),
    "prism": (C.prism, ("n",)),
    "octahedron": (C.octahedron, ()),
    "petersen": (C.petersen, ()),
}

OPTIONAL = {"eps"}


def build(family: str, params: dict) -> Graph:
    try:
        fn, names = BUILDERS[family]
    except KeyError:
        raise C.ConstructionError(
            f"unknown family {family!r}; choose from {', '.join(sorted(BUILDERS))}"
        ) from None
    missing = [k for k in names if k not in OPTIONAL and params.get(k) is None]
    if missing:
        raise C.ConstructionError(f"family {family} needs --{' --'.join(missing)}")
    kwargs = {k: params[k] for k in names if params.get(k) is not None}
    try:
        return fn(**kwargs)
    except C.ConstructionError as exc:
        raise C.ConstructionError(f"{family} {kwargs}: {exc}") from exc


def census_entries(pmax: int) -> list[tuple[str, str, dict]]:
    """``(graph id, family, params)`` for every constructible order-6p^2 graph with p <= pmax."""
    out = []
    for p in range(2, pmax + 1):
        if not C.is_prime(p):
            continue
        n = 3 * p * p
        out.append((f"C{n}[2K1]", "lex-c2k1", {"n": n}))
        out.append((f"R{n}(2,1)", "rose-window", {"n": n, "a": 2, "r": 1}))
        for tag in "abcde":
            eps = None
            if tag == "b":
                roots = C.sqrt_minus_one(p) if p % 4 == 1 else []
                if not roots:
                    continue
                eps = roots[0]
            if tag == "d":
                roots = C.sqrt_minus_one(p * p)
                if not roots:
                    continue
                eps = roots[0]
            params = {"p": p, "tag": tag}
            if eps is not None:
                params["eps"] = eps
            try:
                C.family(tag, p, eps)
            except C.ConstructionError:
                continue
            gid = f"Cay{tag}(p={p}" + (f",eps={eps})" if eps is not None else ")")
            out.append((gid, "cayley", params))
    return out
