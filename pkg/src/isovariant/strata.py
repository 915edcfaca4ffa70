"""Finite simplicial models of isovariant links.

Everything is computed inside the barycentric subdivision ``Sd X`` of a rigid
G-complex, whose vertices are the simplices of X and carry their isotropy.

* single subgroup H: the full subcomplex of Sd X on barycenters with isotropy
  exactly H (a deformation retract of the open stratum);
* chain H_0 < ... < H_n: the order complex of the simplices of Sd X that use
  only barycenters from the strata of the chain and meet every one of them.
  For n = 1 this is the midlevel complex, i.e. the boundary of a regular
  neighbourhood of the H_1 part inside the H_0 part.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Hashable

from .complexes import (GSimplicialComplex, GSimplicialMap, SimplicialComplex, _require_rigid,
                        fixed_subcomplex, require_isovariant)
from .errors import IntermediateStrataWarning, NotEquivariant
from .groups import Subgroup, SubgroupChain
from .homology import (Connectivity, HomologyResult, SimplicialMap, connectivity_of, homology_of,
                       map_connectivity)

ISOVARIANT = "isovariant"
EQUIVARIANT = "equivariant"


@dataclass(frozen=True, eq=False)
class LinkComplex:
    complex: SimplicialComplex
    space: str
    chain: SubgroupChain
    mode: str = ISOVARIANT
    provisional: bool = False
    suspensions: int = 0

    @property
    def n_vertices(self) -> int:
        return self.complex.n_vertices

    def homology(self, use_numba=None) -> HomologyResult:
        return homology_of(self.complex, use_numba)

    def connectivity(self, use_numba=None) -> Connectivity:
        return connectivity_of(self.complex, use_numba)

    @property
    def n_components(self) -> int:
        return self.complex.n_components


def _sort_key(s):
    return (len(s), s)


def _strata_vertices(X: GSimplicialComplex, H: Subgroup) -> list[int]:
    sd = X.subdivision
    return [i for i, s in enumerate(sd.complex.labels) if X.isotropy(s) == H]


@lru_cache(maxsize=256)
def stratum_model(X: GSimplicialComplex, H: Subgroup) -> LinkComplex:
    _require_rigid(X)
    sd = X.subdivision.complex
    K, _ = sd.full_subcomplex(_strata_vertices(X, H))
    return LinkComplex(K, X.name, SubgroupChain((H,)))


@lru_cache(maxsize=256)
def chain_link_model(X: GSimplicialComplex, chain: SubgroupChain) -> LinkComplex:
    _require_rigid(X)
    if chain.length == 0:
        return stratum_model(X, chain[0])
    sd = X.subdivision.complex
    iso = [X.isotropy(s) for s in sd.labels]
    level = {H: i for i, H in enumerate(chain.subgroups)}
    H0 = chain[0]
    provisional = chain.length >= 2
    stray = [v for v, I in enumerate(iso) if H0.issubset(I) and I not in level]
    if stray:
        provisional = True
        warnings.warn(
            f"{len(stray)} barycenters of {X.name or 'X'} lie in strata outside the chain; "
            "the link model is provisional", IntermediateStrataWarning, stacklevel=2)
    allowed = {v: level[iso[v]] for v in range(sd.n_vertices) if iso[v] in level}
    K = _mixed_order_complex(sd, allowed, len(chain))
    return LinkComplex(K, X.name, chain, provisional=provisional)


def _mixed_order_complex(sd: SimplicialComplex, allowed: dict[int, int],
                         n_levels: int) -> SimplicialComplex:
    """Order complex of the simplices of ``sd`` on ``allowed`` vertices meeting every level."""
    sub = [s for s in sd.simplices if all(v in allowed for v in s)]
    subset = set(sub)
    covered = set()
    for s in sub:
        if len(s) > 1:
            for i in range(len(s)):
                covered.add(s[:i] + s[i + 1:])
    tops = [s for s in sub if s not in covered
            and len({allowed[v] for v in s}) == n_levels]
    elements: dict[tuple[int, ...], int] = {}
    flags = []

    def eid(s):
        s = tuple(sorted(s))
        if s not in elements:
            elements[s] = len(elements)
        return elements[s]

    for T in tops:
        by_level = [[v for v in T if allowed[v] == k] for k in range(n_levels)]
        for base in itertools.product(*by_level):
            rest = [v for v in T if v not in base]
            for perm in itertools.permutations(rest):
                cur = list(base)
                flag = [eid(cur)]
                for v in perm:
                    cur.append(v)
                    flag.append(eid(cur))
                flags.append(tuple(flag))
    assert all(s in subset for s in elements)
    ordered = sorted(elements, key=_sort_key)
    renum = {elements[s]: i for i, s in enumerate(ordered)}
    labels = tuple(tuple(sd.labels[v] for v in s) for s in ordered)
    flags = [tuple(renum[e] for e in f) for f in flags]
    return SimplicialComplex.from_facets(flags, len(ordered), labels=labels)


@lru_cache(maxsize=256)
def fixed_point_link(X: GSimplicialComplex, H: Subgroup) -> LinkComplex:
    F = fixed_subcomplex(X, H)
    return LinkComplex(F.complex, X.name, SubgroupChain((H,)), mode=EQUIVARIANT)


def link_model(X: GSimplicialComplex, chain: SubgroupChain, mode: str = ISOVARIANT) -> LinkComplex:
    if mode == EQUIVARIANT:
        if chain.length != 0:
            raise ValueError("equivariant links are indexed by single subgroups")
        return fixed_point_link(X, chain[0])
    return chain_link_model(X, chain)


def _map_label(f: GSimplicialMap, label: Hashable, mode: str):
    if mode == EQUIVARIANT:
        return f.vertex_map[label]
    if isinstance(label[0], tuple):  # a chain of simplices of X
        return tuple(sorted({f.image(s) for s in label}, key=_sort_key))
    return f.image(label)


def induced_link_map(f: GSimplicialMap, chain: SubgroupChain, mode: str = ISOVARIANT,
                     check: bool = True) -> SimplicialMap:
    """The map of link models induced by an isovariant (or, in equivariant mode,
    equivariant) simplicial map."""
    if mode == ISOVARIANT and check:
        require_isovariant(f)
    src = link_model(f.source, chain, mode)
    tgt = link_model(f.target, chain, mode)
    labels_src = src.complex.labels
    index = {lab: i for i, lab in enumerate(tgt.complex.labels)}
    vmap = []
    for lab in labels_src:
        img = _map_label(f, lab, mode)
        if img not in index:
            raise NotEquivariant(f"link vertex {lab} maps outside the target link", witness=lab)
        vmap.append(index[img])
    phi = SimplicialMap(src.complex, tgt.complex, tuple(vmap))
    tgt_simp = tgt.complex.simplices
    for s in src.complex.simplices:
        if phi.image(s) not in tgt_simp:
            raise NotEquivariant(f"link simplex {s} maps to a non-simplex", witness=s)
    return phi


def induced_map_connectivity(f: GSimplicialMap, chain: SubgroupChain,
                             mode: str = ISOVARIANT, use_numba=None) -> Connectivity:
    return map_connectivity(induced_link_map(f, chain, mode), use_numba)


def link_suspension(L: LinkComplex, times: int) -> LinkComplex:
    """Iterated unreduced suspension: the link-level effect of isovariant suspension."""
    if times < 0:
        raise ValueError("times must be >= 0")
    K = L.complex
    for _ in range(times):
        K = K.suspension()
    return replace(L, complex=K, suspensions=L.suspensions + times)

