"""Connectivity functions on chain (or subgroup) classes and the bounds built from them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .complexes import GSimplicialComplex, GSimplicialMap, require_isovariant
from .errors import ModeMismatch, WrongArity
from .groups import ChainClass, FiniteGroup, SubgroupChain, chain_class, chain_classes
from .homology import INF, Connectivity, format_conn, parse_conn
from .strata import EQUIVARIANT, ISOVARIANT, induced_map_connectivity, link_model

FLOOR = -2  # nothing is less connected than the empty space

Key = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ConnFn:
    """Extended-integer values keyed by canonical class keys.

    In equivariant mode the keys are length-one chains (single subgroups).
    """
    group: FiniteGroup
    mode: str
    values: Mapping[Key, float | int]
    homological: frozenset[Key] = frozenset()
    provisional: frozenset[Key] = frozenset()

    def __post_init__(self):
        for k in self.values:
            cc = chain_class(self.group, SubgroupChain(tuple(_subgroup(m) for m in k)))
            if cc.key != k:
                raise ValueError(f"key {k} is not a canonical class representative")
            if self.mode == EQUIVARIANT and len(k) != 1:
                raise ValueError("equivariant connectivity functions are keyed by subgroups")

    def keys(self) -> list[Key]:
        return sorted(self.values, key=_key_order)

    def __getitem__(self, key) -> float | int:
        if isinstance(key, str):
            key = chain_class(self.group, self.group.parse_chain(key)).key
        elif isinstance(key, SubgroupChain):
            key = chain_class(self.group, key).key
        return self.values[key]

    def label(self, key: Key) -> str:
        return "<".join(self.group.label(_subgroup(m)) for m in key)

    def as_tuple(self) -> tuple:
        return tuple(self.values[k] for k in self.keys())

    def to_dict(self) -> dict[str, str]:
        return {self.label(k): format_conn(self.values[k]) for k in self.keys()}

    def table(self) -> list[tuple[str, str, str]]:
        rows = []
        for k in self.keys():
            flags = ("*" if k in self.homological else "") + ("?" if k in self.provisional else "")
            rows.append((self.label(k), format_conn(self.values[k]), flags))
        return rows

    def map_values(self, fn: Callable[[float | int], float | int]) -> "ConnFn":
        return ConnFn(self.group, self.mode, {k: fn(v) for k, v in self.values.items()},
                      self.homological, self.provisional)


def _subgroup(members):
    from .groups import Subgroup
    return Subgroup(tuple(members))


def _key_order(k: Key):
    return (len(k), [len(m) for m in k], k)


def class_keys(G: FiniteGroup, mode: str, max_chain_length: int) -> list[ChainClass]:
    return chain_classes(G, 0 if mode == EQUIVARIANT else max_chain_length)


def constant(G: FiniteGroup, value, mode: str = ISOVARIANT, max_chain_length: int = 1) -> ConnFn:
    v = parse_conn(value)
    return ConnFn(G, mode, {cc.key: v for cc in class_keys(G, mode, max_chain_length)})


def from_table(G: FiniteGroup, table: Mapping[str, object], mode: str = ISOVARIANT) -> ConnFn:
    """Build from ``{"e": "inf", "C2": -1, "e<C2": -1}``-style tables."""
    vals = {}
    for label, v in table.items():
        cc = chain_class(G, G.parse_chain(label))
        vals[cc.key] = parse_conn(v)
    return ConnFn(G, mode, vals)


# ----------------------------------------------------------------------
# measurement


def measure_conn_fn(f: GSimplicialMap, mode: str = ISOVARIANT, max_chain_length: int = 1,
                    use_numba=None) -> ConnFn:
    """Connectivity of the induced map on every link (or fixed-point) model."""
    if mode == ISOVARIANT:
        require_isovariant(f)
    G = f.source.group
    vals, homological, provisional = {}, set(), set()
    for cc in class_keys(G, mode, max_chain_length):
        c = induced_map_connectivity(f, cc.representative, mode, use_numba)
        vals[cc.key] = c.value
        if c.homological:
            homological.add(cc.key)
        if mode == ISOVARIANT:
            if (link_model(f.source, cc.representative).provisional
                    or link_model(f.target, cc.representative).provisional):
                provisional.add(cc.key)
    return ConnFn(G, mode, vals, frozenset(homological), frozenset(provisional))


def space_conn_fn(X: GSimplicialComplex, mode: str = ISOVARIANT, max_chain_length: int = 1,
                  use_numba=None) -> ConnFn:
    """Connectivity of every link model of a space (its isovariant connectivity)."""
    vals, homological, provisional = {}, set(), set()
    for cc in class_keys(X.group, mode, max_chain_length):
        L = link_model(X, cc.representative, mode)
        c: Connectivity = L.connectivity(use_numba)
        vals[cc.key] = c.value
        if c.homological:
            homological.add(cc.key)
        if L.provisional:
            provisional.add(cc.key)
    return ConnFn(X.group, mode, vals, frozenset(homological), frozenset(provisional))


# ----------------------------------------------------------------------
# arithmetic


def _floor(v):
    return v if v == INF else max(v, FLOOR)


def add_conn(*vals) -> float | int:
    """Sum with +inf absorbing; a -inf summand (without +inf) gives -inf."""
    if any(v == INF for v in vals):
        return INF
    if any(v == -INF for v in vals):
        return -INF
    return sum(int(v) for v in vals)


def _check_compatible(fns: Iterable[ConnFn]) -> None:
    fns = list(fns)
    first = fns[0]
    for other in fns[1:]:
        if other.mode != first.mode:
            raise ModeMismatch(f"cannot combine {first.mode} and {other.mode} functions")
        if set(other.values) != set(first.values):
            raise ModeMismatch("connectivity functions are defined on different classes")


def _combine(fns: list[ConnFn], rule) -> ConnFn:
    _check_compatible(fns)
    first = fns[0]
    prov = frozenset().union(*(f.provisional for f in fns))
    hom = frozenset().union(*(f.homological for f in fns))
    vals = {k: _floor(rule([f.values[k] for f in fns])) for k in first.values}
    return ConnFn(first.group, first.mode, vals, hom, prov)


def bm_pushout(n: ConnFn, m: ConnFn) -> ConnFn:
    """Classwise n + m - 1: the connectivity bound for the cartesian gap map."""
    return _combine([n, m], lambda v: add_conn(v[0], v[1], -1))


def bm_cube(n: int, edge_conns: list[ConnFn]) -> ConnFn:
    """Classwise 1 - n + sum of the initial-edge connectivities of an n-cube."""
    if n < 2:
        raise WrongArity("cubes need n >= 2")
    if len(edge_conns) != n:
        raise WrongArity(f"expected {n} edge connectivity functions, got {len(edge_conns)}")
    return _combine(list(edge_conns), lambda v: add_conn(1 - n, *v))


@dataclass(frozen=True)
class FreudenthalBounds:
    universe_bound: ConnFn
    freudenthal_bound: ConnFn


def freudenthal_suite(n: ConnFn) -> FreudenthalBounds:
    """Connectivity of X -> U (n + 1) and of X -> Omega_U S_U X (2n + 1).

    The second is obtained by feeding the first twice into ``bm_pushout``,
    the square being X -> U, X -> U with homotopy pushout S_U X.
    """
    if n.mode != ISOVARIANT:
        raise ModeMismatch("the Freudenthal bounds are isovariant statements")
    universe = n.map_values(lambda v: _floor(add_conn(v, 1)))
    return FreudenthalBounds(universe, bm_pushout(universe, universe))


def conn_le(a: ConnFn, b: ConnFn) -> bool:
    _check_compatible([a, b])
    return all(a.values[k] <= b.values[k] for k in a.values)
