"""Finite groups given by multiplication tables, their subgroups and subgroup chains.

Elements are the integers ``0 .. order-1`` with ``0`` the identity.  Everything
here is exhaustive: the groups of interest have order at most a couple dozen.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import AxiomViolation, InvalidChain, ValidationError


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    name: str = "G"
    element_names: tuple[str, ...] | None = None

    def __post_init__(self):
        _check_axioms(self.table)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        inv = [0] * self.order
        for a in self.elements:
            inv[a] = self.table[a].index(0)
        return tuple(inv)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conj(self, g: int, h: int) -> int:
        """g h g^-1"""
        return self.table[self.table[g][h]][self.inverse[g]]

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in self.elements)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    @cached_property
    def is_cyclic(self) -> bool:
        return any(self.element_order(g) == self.order for g in self.elements)

    # subgroups ---------------------------------------------------------

    def generate(self, gens: Iterable[int]) -> "Subgroup":
        members = {0}
        frontier = list(set(gens) - {0})
        members.update(frontier)
        while frontier:
            new = []
            for a in frontier:
                for b in list(members):
                    for c in (self.table[a][b], self.table[b][a]):
                        if c not in members:
                            members.add(c)
                            new.append(c)
            frontier = new
        return Subgroup(tuple(sorted(members)))

    @cached_property
    def subgroups(self) -> tuple["Subgroup", ...]:
        return tuple(enumerate_subgroups(self))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup((0,))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(tuple(self.elements))

    def conjugate(self, g: int, H: "Subgroup") -> "Subgroup":
        return Subgroup(tuple(sorted({self.conj(g, h) for h in H.members})))

    def conjugate_chain(self, g: int, chain: "SubgroupChain") -> "SubgroupChain":
        return SubgroupChain(tuple(self.conjugate(g, H) for H in chain.subgroups))

    def is_subgroup(self, members: Iterable[int]) -> bool:
        s = set(members)
        if 0 not in s:
            return False
        return all(self.table[a][b] in s for a in s for b in s)

    def left_coset(self, g: int, H: "Subgroup") -> frozenset[int]:
        return frozenset(self.table[g][h] for h in H.members)

    # naming ------------------------------------------------------------

    def minimal_generators(self, H: "Subgroup") -> tuple[int, ...]:
        if H.order == 1:
            return ()
        for k in range(1, H.order + 1):
            for gens in itertools.combinations(H.members[1:], k):
                if self.generate(gens) == H:
                    return gens
        raise AssertionError("unreachable")

    def label(self, H: "Subgroup") -> str:
        """Human-readable name: ``e``, ``C<d>`` in cyclic groups, else ``[g1,g2]``."""
        if H.order == 1:
            return "e"
        if self.is_cyclic:
            return f"C{H.order}"
        return "[" + ",".join(str(g) for g in self.minimal_generators(H)) + "]"

    def parse_subgroup(self, text: str) -> "Subgroup":
        text = text.strip()
        if text in ("e", "1", "{e}"):
            return self.trivial
        if text == "G":
            return self.whole
        if text.startswith("[") and text.endswith("]"):
            body = text[1:-1].strip()
            try:
                gens = [int(x) for x in body.split(",")] if body else []
            except ValueError:
                raise ValidationError(f"bad generator list {text!r}") from None
            if any(g < 0 or g >= self.order for g in gens):
                raise ValidationError(f"generator out of range in {text!r}")
            return self.generate(gens)
        if text.startswith("C") and text[1:].isdigit():
            d = int(text[1:])
            matches = sorted({self.generate([g]) for g in self.elements
                              if self.element_order(g) == d})
            if not matches:
                raise ValidationError(f"no cyclic subgroup of order {d} in {self.name}")
            if len(matches) > 1:
                raise ValidationError(
                    f"{text!r} is ambiguous in {self.name}; use a generator list like [g]")
            return matches[0]
        raise ValidationError(f"cannot parse subgroup {text!r}")

    def parse_chain(self, text: str) -> "SubgroupChain":
        parts = _split_chain(text)
        return make_chain(self, [self.parse_subgroup(p) for p in parts])

    def chain_label(self, chain: "SubgroupChain") -> str:
        return "<".join(self.label(H) for H in chain.subgroups)


def _split_chain(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "<" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    if any(not p.strip() for p in parts):
        raise ValidationError(f"malformed chain {text!r}")
    return parts


def _check_axioms(table: Sequence[Sequence[int]]) -> None:
    n = len(table)
    if n < 1:
        raise AxiomViolation("empty multiplication table")
    for a, row in enumerate(table):
        if len(row) != n:
            raise AxiomViolation(f"row {a} has length {len(row)}, expected {n}")
        for b, c in enumerate(row):
            if not (0 <= c < n):
                raise AxiomViolation(f"product {a}*{b} = {c} is out of range")
    for a in range(n):
        if table[0][a] != a or table[a][0] != a:
            raise AxiomViolation(f"0 is not a two-sided identity at element {a}")
        if 0 not in table[a]:
            raise AxiomViolation(f"element {a} has no right inverse")
        b = table[a].index(0)
        if table[b][a] != 0:
            raise AxiomViolation(f"element {a} has no two-sided inverse")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise AxiomViolation(f"associativity fails at ({a}, {b}, {c})")


@dataclass(frozen=True, order=True)
class Subgroup:
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self._set

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.members)

    def issubset(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def is_strict_subgroup(self, other: "Subgroup") -> bool:
        return self._set < other._set

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(tuple(sorted(self._set & other._set)))


@dataclass(frozen=True, order=True)
class SubgroupChain:
    subgroups: tuple[Subgroup, ...]

    def __post_init__(self):
        if not self.subgroups:
            raise InvalidChain("a chain needs at least one subgroup")
        for a, b in zip(self.subgroups, self.subgroups[1:]):
            if not a.is_strict_subgroup(b):
                raise InvalidChain(f"{a.members} is not strictly contained in {b.members}")

    @property
    def length(self) -> int:
        """Number of strict inclusions (``n`` for ``H_0 < ... < H_n``)."""
        return len(self.subgroups) - 1

    def __len__(self):
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def __getitem__(self, i):
        return self.subgroups[i]

    @property
    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(H.members for H in self.subgroups)


@dataclass(frozen=True, order=True)
class ChainClass:
    """Conjugacy class of a chain, stored as its lexicographically least member."""
    representative: SubgroupChain = field(compare=False)
    key: tuple[tuple[int, ...], ...]


def make_chain(G: FiniteGroup, subgroups: Sequence[Subgroup]) -> SubgroupChain:
    for H in subgroups:
        if not G.is_subgroup(H.members):
            raise InvalidChain(f"{H.members} is not a subgroup of {G.name}")
    return SubgroupChain(tuple(subgroups))


# constructors ----------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroup(table, name=f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; element ``k + n*f`` is ``r^k s^f``."""
    if n < 1:
        raise ValueError("dihedral parameter must be >= 1")

    def mul(x, y):
        a, f = x % n, x // n
        b, g = y % n, y // n
        k = (a + (b if f == 0 else -b)) % n
        return k + n * ((f + g) % 2)

    N = 2 * n
    table = tuple(tuple(mul(x, y) for y in range(N)) for x in range(N))
    return FiniteGroup(table, name=f"D{n}")


def symmetric(n: int) -> FiniteGroup:
    """S_n with permutations in lexicographic order and (p*q)(i) = p(q(i))."""
    if not 1 <= n <= 4:
        raise ValueError("symmetric groups are supported for n <= 4")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(index[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms
    )
    names = tuple("".join(str(x) for x in p) for p in perms)
    return FiniteGroup(table, name=f"S{n}", element_names=names)


def from_table(table: Sequence[Sequence[int]], name: str = "G") -> FiniteGroup:
    return FiniteGroup(tuple(tuple(int(x) for x in row) for row in table), name=name)


def make_group(spec) -> FiniteGroup:
    """Build a group from ``"cyclic 6"``, ``("dihedral", 3)``, a dict or an explicit table."""
    if isinstance(spec, str):
        kind, _, arg = spec.strip().partition(" ")
        return make_group({"kind": kind, "n": int(arg)})
    if isinstance(spec, tuple) and len(spec) == 2 and isinstance(spec[0], str):
        return make_group({"kind": spec[0], "n": spec[1]})
    if isinstance(spec, dict):
        kind = spec.get("kind")
        if kind == "table" or "table" in spec:
            return from_table(spec["table"], name=spec.get("name", "G"))
        n = spec.get("n")
        if not isinstance(n, int) or n < 1:
            raise ValidationError(f"group parameter must be a positive integer, got {n!r}")
        builders = {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric}
        if kind not in builders:
            raise ValidationError(f"unknown group kind {kind!r}")
        return builders[kind](n)
    if isinstance(spec, (list, tuple)):
        return from_table(spec)
    raise ValidationError(f"unrecognised group spec {spec!r}")


# enumeration -----------------------------------------------------------


def enumerate_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All subgroups, sorted by (order, members).

    Every subgroup is a join of cyclic subgroups, so closing the cyclic ones
    under pairwise joins reaches all of them.
    """
    cyc = {G.generate([g]) for g in G.elements}
    found = set(cyc)
    frontier = set(cyc)
    while frontier:
        new = set()
        for H in frontier:
            for C in cyc:
                if C.issubset(H):
                    continue
                J = G.generate(H.members + C.members)
                if J not in found:
                    new.add(J)
        found |= new
        frontier = new
    return sorted(found, key=lambda H: (H.order, H.members))


def enumerate_chains(G: FiniteGroup, max_length: int) -> list[SubgroupChain]:
    """Every strictly increasing chain with at most ``max_length`` strict inclusions."""
    if max_length < 0:
        raise ValueError("max_length must be >= 0")
    subs = G.subgroups
    out: list[SubgroupChain] = []

    def extend(prefix):
        out.append(SubgroupChain(tuple(prefix)))
        if len(prefix) - 1 >= max_length:
            return
        for K in subs:
            if prefix[-1].is_strict_subgroup(K):
                extend(prefix + [K])

    for H in subs:
        extend([H])
    return out


def chain_class(G: FiniteGroup, chain: SubgroupChain) -> ChainClass:
    best = None
    for g in G.elements:
        c = G.conjugate_chain(g, chain)
        if best is None or c.key < best.key:
            best = c
    return ChainClass(best, best.key)


def chain_classes(G: FiniteGroup, max_length: int) -> list[ChainClass]:
    seen = {}
    for c in enumerate_chains(G, max_length):
        cc = chain_class(G, c)
        seen.setdefault(cc.key, cc)
    return sorted(seen.values(), key=lambda cc: (len(cc.key), [len(m) for m in cc.key], cc.key))


def subgroup_class(G: FiniteGroup, H: Subgroup) -> Subgroup:
    return min(G.conjugate(g, H) for g in G.elements)


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return all(G.conjugate(g, H) == H for g in G.elements)
