"""Finite groups of the shape ``(Z_n1 x ... x Z_nk) : <t>``.

The optional involution ``t`` acts on each cyclic coordinate by ``+1`` or
``-1``. An element ``(u; e)`` stands for the word ``u * t^e`` and

    (u; e) * (v; d) = (u + phi^e(v); e + d mod 2)

where ``phi`` negates the coordinates carrying sign ``-1``.

Elements are enumerated lexicographically by ``(coords..., flip)``; the
position in that list is the element's index, used as the vertex label of
every Cayley-type construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Iterable, Iterator, NamedTuple, Protocol, Sequence

from .perm import Permutation, PermGroup, schreier_sims


class GroupElement(NamedTuple):
    coords: tuple[int, ...]
    flip: int = 0

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + f";{self.flip})"


@dataclass(frozen=True)
class StructuredGroup:
    cyclic_orders: tuple[int, ...]
    has_involution: bool = False
    action_signs: tuple[int, ...] | None = None

    def __post_init__(self):
        orders = tuple(int(n) for n in self.cyclic_orders)
        for n in orders:
            if n < 1:
                raise ValueError(f"cyclic order must be >= 1, got {n}")
        signs = self.action_signs
        if signs is None:
            signs = (1,) * len(orders)
        signs = tuple(int(s) for s in signs)
        if len(signs) != len(orders):
            raise ValueError("action_signs must match cyclic_orders in length")
        if any(s not in (1, -1) for s in signs):
            raise ValueError("action signs must be +1 or -1")
        if not self.has_involution and any(s == -1 for s in signs):
            raise ValueError("sign -1 requires has_involution")
        # inversion is trivial on Z_1 and Z_2
        signs = tuple(1 if n <= 2 else s for n, s in zip(orders, signs))
        object.__setattr__(self, "cyclic_orders", orders)
        object.__setattr__(self, "action_signs", signs)

    @property
    def order(self) -> int:
        return prod(self.cyclic_orders) * (2 if self.has_involution else 1)


class GroupLike(Protocol):
    """What the constructions need from a group: an indexed element list."""

    elements: list
    identity: object

    def index(self, g) -> int: ...
    def mul(self, a, b): ...
    def inv(self, a): ...


class FiniteGroup:
    """Element enumeration and arithmetic for a :class:`StructuredGroup`."""

    def __init__(self, spec: StructuredGroup, names: dict[str, GroupElement] | None = None):
        self.spec = spec
        self.orders = spec.cyclic_orders
        self.k = len(self.orders)
        self._neg = tuple(s == -1 for s in spec.action_signs)
        self.order = spec.order
        flips = (0, 1) if spec.has_involution else (0,)
        self._nflip = len(flips)
        self.elements: list[GroupElement] = [
            GroupElement(c, f) for c in _coords(self.orders) for f in flips
        ]
        self._index = {g: i for i, g in enumerate(self.elements)}
        self.identity = GroupElement((0,) * self.k, 0)
        self.names: dict[str, GroupElement] = dict(names or {})

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def index(self, g: GroupElement) -> int:
        try:
            return self._index[g]
        except KeyError:
            raise ValueError(f"{g} is not an element of this group") from None

    def element(self, coords: Sequence[int], flip: int = 0) -> GroupElement:
        if len(coords) != self.k:
            raise ValueError(f"expected {self.k} coordinates")
        if flip and not self.spec.has_involution:
            raise ValueError("group has no involution")
        return GroupElement(tuple(c % n for c, n in zip(coords, self.orders)), flip & 1)

    def _phi(self, coords: tuple) -> tuple:
        return tuple((-c) % n if neg else c for c, n, neg in zip(coords, self.orders, self._neg))

    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        v = self._phi(b.coords) if a.flip else b.coords
        return GroupElement(
            tuple((x + y) % n for x, y, n in zip(a.coords, v, self.orders)),
            (a.flip + b.flip) & 1,
        )

    def inv(self, a: GroupElement) -> GroupElement:
        neg = tuple((-c) % n for c, n in zip(a.coords, self.orders))
        return GroupElement(self._phi(neg) if a.flip else neg, a.flip)

    def pow(self, a: GroupElement, e: int) -> GroupElement:
        if e < 0:
            a, e = self.inv(a), -e
        out = self.identity
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def element_order(self, a: GroupElement) -> int:
        if a.flip:
            # (u t)^2 = u + phi(u): zero on negated coordinates
            sq = self.mul(a, a)
            return 2 * self.element_order(sq)
        return lcm(1, *(n // gcd(n, c) for c, n in zip(a.coords, self.orders)))

    @property
    def generators(self) -> list[GroupElement]:
        gens = []
        for i, n in enumerate(self.orders):
            if n > 1:
                c = [0] * self.k
                c[i] = 1
                gens.append(GroupElement(tuple(c), 0))
        if self.spec.has_involution:
            gens.append(GroupElement((0,) * self.k, 1))
        return gens

    def is_abelian(self) -> bool:
        return not self.spec.has_involution or not any(self._neg)

    def generated_subgroup(self, gens: Iterable[GroupElement]) -> set[GroupElement]:
        gens = list(gens)
        seen = {self.identity}
        frontier = [self.identity]
        for g in frontier:
            for s in gens:
                h = self.mul(g, s)
                if h not in seen:
                    seen.add(h)
                    frontier.append(h)
        return seen

    def word(self, text: str) -> GroupElement:
        """Evaluate a word such as ``"x^-1 y z t"`` or ``"(xy)^-1"``.

        Single-letter generator names come from :attr:`names`; juxtaposition
        is multiplication and ``^k`` applies to the preceding letter or
        parenthesised group.
        """
        tokens = re.findall(r"\(|\)|\^-?\d+|[A-Za-z]|\S", text.replace(" ", ""))
        pos = 0

        def parse_seq() -> GroupElement:
            nonlocal pos
            acc = self.identity
            while pos < len(tokens) and tokens[pos] != ")":
                acc = self.mul(acc, parse_factor())
            return acc

        def parse_factor() -> GroupElement:
            nonlocal pos
            tok = tokens[pos]
            pos += 1
            if tok == "(":
                val = parse_seq()
                if pos >= len(tokens) or tokens[pos] != ")":
                    raise ValueError(f"unbalanced parentheses in {text!r}")
                pos += 1
            elif tok in self.names:
                val = self.names[tok]
            else:
                raise ValueError(f"unknown generator {tok!r} in {text!r}")
            while pos < len(tokens) and tokens[pos].startswith("^"):
                val = self.pow(val, int(tokens[pos][1:]))
                pos += 1
            return val

        result = parse_seq()
        if pos != len(tokens):
            raise ValueError(f"could not parse {text!r}")
        return result

    def __repr__(self) -> str:
        return f"FiniteGroup({self.spec})"


def _coords(orders: Sequence[int]) -> Iterator[tuple[int, ...]]:
    if not orders:
        yield ()
        return
    for head in range(orders[0]):
        for tail in _coords(orders[1:]):
            yield (head,) + tail


def make_group(
    spec: StructuredGroup | Sequence[int],
    has_involution: bool = False,
    action_signs: Sequence[int] | None = None,
    names: dict[str, GroupElement] | None = None,
) -> FiniteGroup:
    if not isinstance(spec, StructuredGroup):
        spec = StructuredGroup(
            tuple(spec), has_involution, tuple(action_signs) if action_signs else None
        )
    return FiniteGroup(spec, names)


def cyclic_group(n: int) -> FiniteGroup:
    G = make_group((n,))
    G.names["c"] = G.element((1,))
    return G


class PermutationGroupElements:
    """Indexed element list of a small permutation group.

    Elements are ordered by the image of point 0 when the group is regular,
    so the element with index ``i`` maps 0 to ``i``.
    """

    def __init__(self, group: PermGroup, limit: int = 10**5):
        elems = sorted(group.elements(limit), key=lambda g: (g.images[0] if group.degree else 0, g.images))
        self.group = group
        self.elements = elems
        self._index = {g: i for i, g in enumerate(elems)}
        self.identity = Permutation.identity(group.degree)
        self.order = len(elems)

    def index(self, g: Permutation) -> int:
        return self._index[g]

    def mul(self, a: Permutation, b: Permutation) -> Permutation:
        return a * b

    def inv(self, a: Permutation) -> Permutation:
        return a.inverse()


def regular_representation(G: GroupLike) -> PermGroup:
    """Right-regular action ``g -> g * a`` on element indices."""
    gens = getattr(G, "generators", None) or G.elements
    perms = [
        Permutation([G.index(G.mul(g, a)) for g in G.elements], check=False)
        for a in gens
    ]
    return schreier_sims(perms, len(G.elements))


def right_multiplication(G: GroupLike, a) -> Permutation:
    return Permutation([G.index(G.mul(g, a)) for g in G.elements], check=False)
