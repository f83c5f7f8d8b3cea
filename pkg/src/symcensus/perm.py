"""Permutations and permutation groups with a base and strong generating set.

Permutations act on ``{0, ..., n-1}`` and are composed left to right:
``(p * q)(i) == q(p(i))``, so ``p * q`` means "apply ``p``, then ``q``".
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import lcm, prod
from typing import Callable, Hashable, Iterable, Iterator, Sequence


def _mult(p: tuple, q: tuple) -> tuple:
    return tuple(map(q.__getitem__, p))


def _inv(p: Sequence[int]) -> tuple:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _first_moved(p: tuple) -> int:
    for i, x in enumerate(p):
        if i != x:
            return i
    return -1


class Permutation:
    """A bijection of ``{0, ..., n-1}`` given by its image list."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int], check: bool = True):
        self.images = tuple(images)
        if check and sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images!r}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(n), check=False)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __getitem__(self, i: int) -> int:
        return self.images[i]

    def __len__(self) -> int:
        return len(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        if len(other.images) != len(self.images):
            raise ValueError("degree mismatch")
        return Permutation(_mult(self.images, other.images), check=False)

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = result * base
        return result

    def inverse(self) -> Permutation:
        return Permutation(_inv(self.images), check=False)

    def conjugate(self, by: Permutation) -> Permutation:
        """Return ``by^-1 * self * by``."""
        return by.inverse() * self * by

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def fixed_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i == x]

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i] or self.images[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if self.support() else 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Permutation<{self.degree}>{cyc or '()'}"


@dataclass
class _Level:
    point: int
    gens: list = field(default_factory=list)
    trans: dict = field(default_factory=dict)
    inv: dict = field(default_factory=dict)
    checked: set = field(default_factory=set)

    def rep_inverse(self, beta: int) -> tuple:
        h = self.inv.get(beta)
        if h is None:
            h = self.inv[beta] = _inv(self.trans[beta])
        return h

    def extend(self, new_gens: list) -> None:
        """Grow the orbit/transversal after ``new_gens`` were appended to ``gens``."""
        trans = self.trans
        queue = []
        for beta in list(trans):
            u = trans[beta]
            for s in new_gens:
                gamma = s[beta]
                if gamma not in trans:
                    trans[gamma] = _mult(u, s)
                    queue.append(gamma)
        while queue:
            beta = queue.pop()
            u = trans[beta]
            for s in self.gens:
                gamma = s[beta]
                if gamma not in trans:
                    trans[gamma] = _mult(u, s)
                    queue.append(gamma)


class PermGroup:
    """A permutation group stored as a stabilizer chain.

    Build one with :func:`schreier_sims`; instances are not mutated after
    construction.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation], levels: list[_Level]):
        self.degree = degree
        self.generators = tuple(generators)
        self._levels = levels
        self.base = tuple(lv.point for lv in levels)
        self.order = prod(len(lv.trans) for lv in levels)

    # -- chain data -------------------------------------------------------

    @property
    def strong_generators(self) -> tuple[Permutation, ...]:
        if not self._levels:
            return ()
        return tuple(Permutation(g, check=False) for g in self._levels[0].gens)

    def basic_orbit_lengths(self) -> list[int]:
        return [len(lv.trans) for lv in self._levels]

    def level_generators(self, i: int) -> list[Permutation]:
        """Strong generators of the pointwise stabilizer of ``base[:i]``."""
        if i >= len(self._levels):
            return []
        return [Permutation(g, check=False) for g in self._levels[i].gens]

    # -- queries ----------------------------------------------------------

    def _strip(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        for j in range(start, len(self._levels)):
            lv = self._levels[j]
            beta = g[lv.point]
            if beta not in lv.trans:
                return g, j
            if beta != lv.point:
                g = _mult(g, lv.rep_inverse(beta))
        return g, len(self._levels)

    def __contains__(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            return False
        h, j = self._strip(perm.images)
        return j == len(self._levels) and _first_moved(h) < 0

    contains = __contains__

    def is_trivial(self) -> bool:
        return self.order == 1

    def orbit(self, point: int) -> list[int]:
        return _orbit(self._gen_tuples(), point)

    def orbits(self) -> list[list[int]]:
        return point_orbits(self, range(self.degree))

    def is_transitive(self) -> bool:
        return self.degree == 0 or len(self.orbit(0)) == self.degree

    def is_semiregular(self) -> bool:
        return all(len(o) == self.order for o in self.orbits())

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order == self.degree

    def _gen_tuples(self) -> list[tuple]:
        gens = [g.images for g in self.generators]
        return gens if gens else (self._levels[0].gens if self._levels else [])

    def stabilizer(self, point: int) -> PermGroup:
        return self.pointwise_stabilizer([point])

    def pointwise_stabilizer(self, points: Sequence[int]) -> PermGroup:
        points = list(points)
        if list(self.base[: len(points)]) == points:
            chain = self
        else:
            chain = schreier_sims(self.strong_generators, self.degree, base=points)
        # levels are never mutated once a chain is built, so they can be shared
        levels = chain._levels[len(points):]
        gens = [Permutation(g, check=False) for g in levels[0].gens] if levels else []
        return PermGroup(self.degree, gens, levels)

    def random_element(self, rng: random.Random) -> Permutation:
        g = tuple(range(self.degree))
        for lv in reversed(self._levels):
            g = _mult(g, lv.trans[rng.choice(list(lv.trans))])
        return Permutation(g, check=False)

    def elements(self, limit: int = 10**6) -> Iterator[Permutation]:
        if self.order > limit:
            raise ValueError(f"group of order {self.order} exceeds enumeration limit {limit}")
        reps = [list(lv.trans.values()) for lv in reversed(self._levels)]
        ident = tuple(range(self.degree))
        for combo in itertools.product(*reps):
            g = ident
            for u in combo:
                g = _mult(g, u)
            yield Permutation(g, check=False)

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(g in other for g in self.generators)

    def is_normal_in(self, other: PermGroup) -> bool:
        """True iff every conjugate of a generator of ``self`` by a generator of ``other`` lies in ``self``."""
        for a in other.generators:
            ainv = a.inverse()
            for g in self.generators:
                if ainv * g * a not in self:
                    return False
        return True

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order}, base={list(self.base)})"


def _orbit(gens: Sequence[tuple], point: int) -> list[int]:
    seen = {point}
    out = [point]
    for x in out:
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


def schreier_sims(
    generators: Iterable[Permutation],
    degree: int,
    base: Sequence[int] = (),
) -> PermGroup:
    """Deterministic Schreier-Sims.

    ``base`` is an optional prefix of base points; it is kept even where it
    is redundant, which is what makes :meth:`PermGroup.pointwise_stabilizer`
    cheap. Further base points are the smallest points moved by the element
    that needs them.
    """
    generators = list(generators)
    for g in generators:
        if g.degree != degree:
            raise ValueError(f"generator degree {g.degree} != {degree}")
    ident = tuple(range(degree))
    gens: list[tuple] = []
    seen: set[tuple] = set()
    for g in generators:
        t = g.images
        if t != ident and t not in seen:
            seen.add(t)
            gens.append(t)

    base = list(base)
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(_first_moved(g))
    levels = [_Level(b) for b in base]
    for i, lv in enumerate(levels):
        lv.gens = [g for g in gens if all(g[b] == b for b in base[:i])]
        lv.trans = {lv.point: ident}
        lv.inv = {lv.point: ident}
        lv.extend(lv.gens)

    def strip(g: tuple, start: int) -> tuple[tuple, int]:
        for j in range(start, len(levels)):
            lv = levels[j]
            beta = g[lv.point]
            if beta not in lv.trans:
                return g, j
            if beta != lv.point:
                g = _mult(g, lv.rep_inverse(beta))
        return g, len(levels)

    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        jump = None
        for beta in list(lv.trans):
            u = lv.trans[beta]
            for gi, s in enumerate(lv.gens):
                if (beta, gi) in lv.checked:
                    continue
                lv.checked.add((beta, gi))
                us = _mult(u, s)
                gamma = s[beta]
                if lv.trans[gamma] == us:
                    continue
                h, j = strip(_mult(us, lv.rep_inverse(gamma)), i + 1)
                if j == len(levels):
                    if h == ident:
                        continue
                    pt = _first_moved(h)
                    new = _Level(pt, [], {pt: ident}, {pt: ident})
                    levels.append(new)
                for l in range(i + 1, j + 1):
                    levels[l].gens.append(h)
                    levels[l].extend([h])
                jump = j
                break
            if jump is not None:
                break
        i = jump if jump is not None else i - 1

    return PermGroup(degree, [Permutation(g, check=False) for g in gens], levels)


def trivial_group(degree: int) -> PermGroup:
    return schreier_sims([], degree)


def point_orbits(group: PermGroup, points: Iterable[int]) -> list[list[int]]:
    """Orbits of ``group`` on ``points``, each sorted, listed by smallest element."""
    gens = group._gen_tuples()
    remaining = sorted(set(points))
    seen: set[int] = set()
    out = []
    for p in remaining:
        if p in seen:
            continue
        orb = _orbit(gens, p)
        seen.update(orb)
        out.append(sorted(orb))
    return out


def on_tuples(g: Permutation, t: tuple) -> tuple:
    return tuple(g.images[x] for x in t)


def on_sets(g: Permutation, t: tuple) -> tuple:
    return tuple(sorted(g.images[x] for x in t))


def orbits(
    group: PermGroup,
    domain: Iterable[Hashable] | None = None,
    action: Callable[[Permutation, Hashable], Hashable] | None = None,
) -> list[list]:
    """Partition ``domain`` into orbits of ``group``.

    With no ``domain`` the group acts on its points. Tuples act coordinatewise
    by default; pass ``action=on_sets`` for unordered pairs such as edges.
    """
    if domain is None:
        return point_orbits(group, range(group.degree))
    domain = list(domain)
    if action is None:
        if domain and isinstance(domain[0], int):
            return point_orbits(group, domain)
        action = on_tuples
    gens = list(group.generators) or list(group.strong_generators)
    members = set(domain)
    seen: set = set()
    out = []
    for x in domain:
        if x in seen:
            continue
        seen.add(x)
        orb = [x]
        for y in orb:
            for g in gens:
                z = action(g, y)
                if z not in seen:
                    if z not in members:
                        raise ValueError(f"domain not invariant: {y!r} maps to {z!r}")
                    seen.add(z)
                    orb.append(z)
        out.append(orb)
    return out


def is_semiregular(group: PermGroup) -> bool:
    return group.is_semiregular()
