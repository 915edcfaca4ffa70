"""Finite simplicial complexes with simplicial actions of a finite group.

A simplex is a sorted tuple of vertex ids; vertex ids are ``0 .. n-1``.  The
G-complexes used downstream are *rigid*: an element that maps a simplex to
itself fixes it pointwise, so the isotropy of a simplex is the intersection of
its vertex stabilizers.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

from .errors import (InvalidChain, NotEquivariant, NotIsovariant, NotRigid, NotSimplicial,
                     UnsupportedRepresentation, ValidationError)
from .groups import FiniteGroup, Subgroup, SubgroupChain, cyclic

Simplex = tuple[int, ...]


def closure(facets: Iterable[Iterable[int]]) -> frozenset[Simplex]:
    """All nonempty faces of the given vertex sets."""
    out: set[Simplex] = set()
    for f in facets:
        f = tuple(sorted(set(f)))
        if not f or f in out:
            continue
        for k in range(1, len(f) + 1):
            out.update(itertools.combinations(f, k))
    return frozenset(out)


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """Plain finite simplicial complex; ``simplices`` is closed under faces."""
    n_vertices: int
    simplices: frozenset[Simplex]
    labels: tuple[Hashable, ...] | None = None

    @classmethod
    def from_facets(cls, facets, n_vertices=None, labels=None) -> "SimplicialComplex":
        simp = closure(facets)
        if n_vertices is None:
            n_vertices = 1 + max((s[-1] for s in simp), default=-1)
        simp = simp | {(v,) for v in range(n_vertices)}
        return cls(n_vertices, simp, labels)

    @cached_property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    @cached_property
    def by_dim(self) -> tuple[tuple[Simplex, ...], ...]:
        out = [[] for _ in range(self.dimension + 1)]
        for s in self.simplices:
            out[len(s) - 1].append(s)
        return tuple(tuple(sorted(x)) for x in out)

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.by_dim)

    def is_empty(self) -> bool:
        return self.n_vertices == 0

    @cached_property
    def components(self) -> list[list[int]]:
        parent = list(range(self.n_vertices))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for s in self.by_dim[1] if self.dimension >= 1 else ():
            ra, rb = find(s[0]), find(s[1])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for v in range(self.n_vertices):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    @property
    def n_components(self) -> int:
        return len(self.components)

    def full_subcomplex(self, vertices: Iterable[int]) -> tuple["SimplicialComplex", list[int]]:
        """Full subcomplex on ``vertices``, renumbered; also returns new->old ids."""
        keep = sorted(set(vertices))
        new_id = {v: i for i, v in enumerate(keep)}
        simp = frozenset(tuple(new_id[v] for v in s) for s in self.simplices
                         if all(v in new_id for v in s))
        labels = None if self.labels is None else tuple(self.labels[v] for v in keep)
        return SimplicialComplex(len(keep), simp, labels), keep

    def suspension(self) -> "SimplicialComplex":
        n = self.n_vertices
        facets = [(n,), (n + 1,)]
        for s in self.simplices:
            facets.append(s + (n,))
            facets.append(s + (n + 1,))
        return SimplicialComplex.from_facets(facets, n + 2)

    def barycentric_subdivision(self) -> "SimplicialComplex":
        order = sorted(self.simplices, key=lambda s: (len(s), s))
        index = {s: i for i, s in enumerate(order)}
        flags = _maximal_flags(self.simplices, index)
        return SimplicialComplex.from_facets(flags, len(order), labels=tuple(order))


def _maximal_flags(simplices, index) -> list[tuple[int, ...]]:
    """Maximal chains of faces, as tuples of ``index`` ids."""
    has_coface = dict.fromkeys(simplices, False)
    for s in simplices:
        if len(s) > 1:
            for i in range(len(s)):
                has_coface[s[:i] + s[i + 1:]] = True
    flags = []
    for s, covered in has_coface.items():
        if covered:
            continue
        for perm in itertools.permutations(s):
            flags.append(tuple(index[tuple(sorted(perm[:k]))] for k in range(1, len(perm) + 1)))
    return flags


# ----------------------------------------------------------------------
# G-complexes


@dataclass(frozen=True, eq=False)
class GSimplicialComplex:
    group: FiniteGroup
    complex: SimplicialComplex
    action: tuple[tuple[int, ...], ...]
    rigid: bool = False
    name: str = ""

    def __post_init__(self):
        G, n = self.group, self.complex.n_vertices
        if len(self.action) != G.order:
            raise ValidationError("action needs one vertex permutation per group element",
                                  entity=self.name or None)
        for g, perm in enumerate(self.action):
            if sorted(perm) != list(range(n)):
                raise ValidationError(f"element {g} does not act by a vertex permutation",
                                      entity=self.name or None)
        for g in G.elements:
            for h in G.elements:
                gh = G.mul(g, h)
                if any(self.action[gh][v] != self.action[g][self.action[h][v]] for v in range(n)):
                    raise ValidationError(f"action is not a homomorphism at ({g}, {h})",
                                          entity=self.name or None)
        simp = self.complex.simplices
        for g in G.elements:
            for s in simp:
                if self.act(g, s) not in simp:
                    raise ValidationError(f"element {g} sends simplex {s} outside the complex",
                                          entity=self.name or None)
        if self.rigid and not check_rigid(self):
            raise NotRigid("rigid flag set on a complex that is not rigid")

    # basic data -------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return self.complex.n_vertices

    @property
    def simplices(self) -> frozenset[Simplex]:
        return self.complex.simplices

    def act(self, g: int, s: Simplex) -> Simplex:
        p = self.action[g]
        return tuple(sorted(p[v] for v in s))

    @cached_property
    def vertex_stabilizers(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(g for g in self.group.elements if self.action[g][v] == v)
                     for v in range(self.n_vertices))

    @cached_property
    def _isotropy(self) -> dict[Simplex, Subgroup]:
        stab = self.vertex_stabilizers
        out = {}
        for s in self.simplices:
            m = frozenset(self.group.elements)
            for v in s:
                m = m & stab[v]
            out[s] = Subgroup(tuple(sorted(m)))
        return out

    def isotropy(self, s: Simplex) -> Subgroup:
        if not self.rigid:
            raise NotRigid("simplex isotropy needs a rigid complex; call make_rigid first")
        return self._isotropy[tuple(sorted(s))]

    @cached_property
    def subdivision(self) -> "GSimplicialComplex":
        return barycentric_subdivision(self)

    def with_name(self, name: str) -> "GSimplicialComplex":
        return GSimplicialComplex(self.group, self.complex, self.action, self.rigid, name)


def check_rigid(X: GSimplicialComplex) -> bool:
    return rigidity_witness(X) is None


def rigidity_witness(X: GSimplicialComplex):
    """``(g, simplex)`` with g preserving but not fixing the simplex, or None."""
    for s in sorted(X.simplices):
        if len(s) < 2:
            continue
        for g in X.group.elements:
            p = X.action[g]
            img = [p[v] for v in s]
            if tuple(sorted(img)) == s and tuple(img) != s:
                return g, s
    return None


def trivial_action(G: FiniteGroup, K: SimplicialComplex, name="") -> GSimplicialComplex:
    ident = tuple(range(K.n_vertices))
    return GSimplicialComplex(G, K, tuple(ident for _ in G.elements), rigid=True, name=name)


def empty_complex(G: FiniteGroup) -> GSimplicialComplex:
    return GSimplicialComplex(G, SimplicialComplex(0, frozenset()),
                              tuple(() for _ in G.elements), rigid=True)


def make_g_complex(G: FiniteGroup, facets, action=None, generator_action=None,
                   name="") -> GSimplicialComplex:
    """Build a G-complex from facets and either a full action table or generator images.

    ``generator_action`` maps group elements to vertex permutations; the rest of
    the action is generated by composition.
    """
    K = SimplicialComplex.from_facets(facets)
    n = K.n_vertices
    if action is None:
        if generator_action is None:
            action = [tuple(range(n)) for _ in G.elements]
        else:
            action = _generate_action(G, n, generator_action, name)
    X = GSimplicialComplex(G, K, tuple(tuple(p) for p in action), False, name)
    return make_rigid(X)


def _generate_action(G, n, gens, name):
    known = {0: tuple(range(n))}
    for g, perm in gens.items():
        known[int(g)] = tuple(perm)
    changed = True
    while changed:
        changed = False
        for a, pa in list(known.items()):
            for b, pb in list(known.items()):
                ab = G.mul(a, b)
                img = tuple(pa[pb[v]] for v in range(n))
                if ab not in known:
                    known[ab] = img
                    changed = True
                elif known[ab] != img:
                    raise ValidationError(f"generator images do not define an action (at {ab})",
                                          entity=name or None)
    if len(known) != G.order:
        raise ValidationError("generator images do not generate the whole group",
                              entity=name or None)
    return [known[g] for g in G.elements]


# ----------------------------------------------------------------------
# subdivision and rigidity


def barycentric_subdivision(X: GSimplicialComplex) -> GSimplicialComplex:
    """Sd X: vertices are simplices of X (ordered by dimension, then lexicographically)."""
    sd = X.complex.barycentric_subdivision()
    index = {s: i for i, s in enumerate(sd.labels)}
    action = tuple(tuple(index[X.act(g, s)] for s in sd.labels) for g in X.group.elements)
    # one subdivision always makes the action rigid
    return GSimplicialComplex(X.group, sd, action, rigid=True, name=X.name)


def make_rigid(X: GSimplicialComplex) -> GSimplicialComplex:
    if X.rigid:
        return X
    if check_rigid(X):
        return GSimplicialComplex(X.group, X.complex, X.action, True, X.name)
    return barycentric_subdivision(X)


def _require_rigid(*spaces):
    for X in spaces:
        if not X.rigid:
            raise NotRigid(f"complex {X.name or '<anonymous>'} is not flagged rigid")


def simplex_isotropy(X: GSimplicialComplex, s: Simplex) -> Subgroup:
    return X.isotropy(s)


def fixed_subcomplex(X: GSimplicialComplex, H: Subgroup) -> GSimplicialComplex:
    """Simplices whose isotropy contains H, with the residual action of G.

    The result keeps the full group acting only when H is normal; otherwise the
    returned complex carries the identity action (callers use it as a plain
    complex).
    """
    _require_rigid(X)
    verts = [v for v in range(X.n_vertices) if H._set <= X.vertex_stabilizers[v]]
    K, keep = X.complex.full_subcomplex(verts)
    new_id = {v: i for i, v in enumerate(keep)}
    G = X.group
    if all(G.conjugate(g, H) == H for g in G.elements):
        action = tuple(tuple(new_id[X.action[g][v]] for v in keep) for g in G.elements)
    else:
        action = tuple(tuple(range(len(keep))) for _ in G.elements)
    labels = tuple(keep)
    K = SimplicialComplex(K.n_vertices, K.simplices, labels)
    return GSimplicialComplex(G, K, action, rigid=True, name=f"{X.name}^H")


def orbit_space(X: GSimplicialComplex) -> SimplicialComplex:
    _require_rigid(X)
    orbit_of = {}
    reps = []
    for v in range(X.n_vertices):
        if v in orbit_of:
            continue
        k = len(reps)
        reps.append(v)
        for g in X.group.elements:
            orbit_of[X.action[g][v]] = k
    simp = frozenset(tuple(sorted({orbit_of[v] for v in s})) for s in X.simplices)
    return SimplicialComplex(len(reps), simp, labels=tuple(reps))


# ----------------------------------------------------------------------
# linking simplices


def linking_simplex(G: FiniteGroup, chain: SubgroupChain) -> GSimplicialComplex:
    """Order complex of the nested cosets g H_0 < g H_1 < ... < g H_n.

    Vertex ``(i, gH_i)`` is labelled by its level and coset; G acts by left
    translation, so the vertex stabilizer of gH_i is gH_ig^-1.
    """
    if not isinstance(chain, SubgroupChain):
        raise InvalidChain("expected a SubgroupChain")
    for a, b in zip(chain.subgroups, chain.subgroups[1:]):
        if not a.is_strict_subgroup(b):
            raise InvalidChain("chain is not strictly increasing")
    vertices = []
    index = {}
    for i, H in enumerate(chain.subgroups):
        for g in G.elements:
            c = (i, G.left_coset(g, H))
            if c not in index:
                index[c] = len(vertices)
                vertices.append(c)
    facets = {tuple(sorted(index[(i, G.left_coset(g, H))] for i, H in enumerate(chain.subgroups)))
              for g in G.elements}
    action = tuple(tuple(index[(i, frozenset(G.mul(a, x) for x in c))] for i, c in vertices)
                   for a in G.elements)
    labels = tuple((i, tuple(sorted(c))) for i, c in vertices)
    K = SimplicialComplex.from_facets(facets, len(vertices), labels=labels)
    return GSimplicialComplex(G, K, action, rigid=True, name=f"Delta^{G.chain_label(chain)}")


def boundary_linking_simplex(G: FiniteGroup, chain: SubgroupChain) -> GSimplicialComplex:
    """Image of the boundary faces: coset chains that skip at least one level."""
    D = linking_simplex(G, chain)
    n = chain.length
    level = [lab[0] for lab in D.complex.labels]
    keep = frozenset(s for s in D.simplices if len({level[v] for v in s}) <= n)
    verts = sorted({v for s in keep for v in s})
    new_id = {v: i for i, v in enumerate(verts)}
    K = SimplicialComplex(len(verts), frozenset(tuple(new_id[v] for v in s) for s in keep),
                          labels=tuple(D.complex.labels[v] for v in verts))
    action = tuple(tuple(new_id[D.action[g][v]] for v in verts) for g in G.elements)
    return GSimplicialComplex(G, K, action, rigid=True, name=f"dDelta^{G.chain_label(chain)}")


def orbit_complex(G: FiniteGroup, H: Subgroup) -> GSimplicialComplex:
    """The discrete G-set G/H."""
    cosets = []
    for g in G.elements:
        c = G.left_coset(g, H)
        if c not in cosets:
            cosets.append(c)
    index = {c: i for i, c in enumerate(cosets)}
    action = tuple(tuple(index[frozenset(G.mul(a, x) for x in c)] for c in cosets)
                   for a in G.elements)
    K = SimplicialComplex.from_facets([(i,) for i in range(len(cosets))], len(cosets))
    return GSimplicialComplex(G, K, action, rigid=True, name=f"G/{G.label(H)}")


# ----------------------------------------------------------------------
# cones, suspensions, joins


def join(X: GSimplicialComplex, Y: GSimplicialComplex) -> GSimplicialComplex:
    """X * Y with Y's vertices shifted past X's; the action is diagonal."""
    if X.group is not Y.group and X.group.table != Y.group.table:
        raise ValidationError("join of complexes over different groups")
    nx, ny = X.n_vertices, Y.n_vertices
    ys = [tuple(v + nx for v in s) for s in Y.simplices]
    simp = set(X.simplices) | set(ys)
    for a in X.simplices:
        for b in ys:
            simp.add(a + b)
    action = tuple(tuple(X.action[g]) + tuple(nx + v for v in Y.action[g])
                   for g in X.group.elements)
    K = SimplicialComplex(nx + ny, frozenset(simp))
    Z = GSimplicialComplex(X.group, K, action, False, f"({X.name}*{Y.name})")
    return make_rigid(Z) if X.rigid and Y.rigid else Z


def fixed_points_complex(G: FiniteGroup, k: int, swap: Callable[[int], bool] | None = None):
    """k isolated vertices; with ``swap`` and k == 2, elements g with swap(g) exchange them."""
    K = SimplicialComplex.from_facets([(i,) for i in range(k)], k)
    if swap is None:
        action = tuple(tuple(range(k)) for _ in G.elements)
    else:
        action = tuple((1, 0) if swap(g) else (0, 1) for g in G.elements)
    return GSimplicialComplex(G, K, action, rigid=True)


def cone(X: GSimplicialComplex) -> GSimplicialComplex:
    return join(X, fixed_points_complex(X.group, 1)).with_name(f"C({X.name})")


def suspension(X: GSimplicialComplex) -> GSimplicialComplex:
    """Unreduced suspension, i.e. the join with a fixed S^0 (two points if X is empty)."""
    return join(X, fixed_points_complex(X.group, 2)).with_name(f"S({X.name})")


def combine(kind: str, *args: GSimplicialComplex) -> GSimplicialComplex:
    if kind == "cone":
        (X,) = args
        return cone(X)
    if kind == "suspension":
        (X,) = args
        return suspension(X)
    if kind == "join":
        if len(args) < 2:
            raise ValidationError("join needs at least two complexes")
        out = args[0]
        for Y in args[1:]:
            out = join(out, Y)
        return out
    raise ValidationError(f"unknown combinator {kind!r}")


# ----------------------------------------------------------------------
# representation spheres for cyclic groups


def _cyclic_generator(G: FiniteGroup) -> int:
    for g in G.elements:
        if G.element_order(g) == G.order:
            return g
    raise UnsupportedRepresentation(f"{G.name} is not cyclic; supply explicit complexes")


def _power_map(G: FiniteGroup) -> list[int]:
    """exponent[g] with g = t^exponent for the least generator t."""
    t = _cyclic_generator(G)
    exp = [0] * G.order
    x, k = 0, 0
    for k in range(G.order):
        exp[x] = k
        x = G.mul(x, t)
    return exp


def polygon_size(n: int, k: int) -> int:
    r = n // math.gcd(n, k % n) if k % n else 1
    m = r
    while m < 3:
        m += r
    return m


def _irreducible_sphere(G: FiniteGroup, kind: str, k: int = 1) -> GSimplicialComplex:
    n = G.order
    exp = _power_map(G)
    if kind in ("trivial", "R", "1"):
        return fixed_points_complex(G, 2)
    if kind in ("sign", "sigma"):
        if n % 2:
            raise UnsupportedRepresentation("sign representation needs a group of even order")
        return fixed_points_complex(G, 2, swap=lambda g: exp[g] % 2 == 1)
    if kind in ("rotation", "lambda"):
        m = polygon_size(n, k)
        step = (m * (k % n)) // n
        facets = [(i, (i + 1) % m) for i in range(m)]
        K = SimplicialComplex.from_facets(facets, m)
        action = tuple(tuple((v + exp[g] * step) % m for v in range(m)) for g in G.elements)
        return GSimplicialComplex(G, K, action, rigid=True)
    raise UnsupportedRepresentation(f"unknown irreducible kind {kind!r}")


def _parse_rep(rep) -> list[tuple[str, int, int]]:
    """Normalise ``[("sign", 1), ("rotation", 2, 1), ...]`` to (kind, k, multiplicity)."""
    out = []
    for item in rep:
        if isinstance(item, str):
            item = (item, 1)
        if isinstance(item, dict):
            kind = item["kind"]
            out.append((kind, int(item.get("k", 1)), int(item.get("multiplicity", 1))))
            continue
        kind = item[0]
        if kind in ("rotation", "lambda") and len(item) == 3:
            out.append((kind, int(item[1]), int(item[2])))
        else:
            out.append((kind, 1, int(item[1]) if len(item) > 1 else 1))
    return out


def rep_dimension(rep) -> int:
    return sum((2 if kind in ("rotation", "lambda") else 1) * mult
               for kind, _, mult in _parse_rep(rep))


def rep_sphere(G: FiniteGroup, rep) -> GSimplicialComplex:
    """Unit sphere S(V) as an iterated join of the spheres of irreducible summands."""
    if not G.is_cyclic:
        raise UnsupportedRepresentation(f"{G.name} is not cyclic; supply explicit complexes")
    parts = _parse_rep(rep)
    if rep_dimension(rep) < 1:
        raise UnsupportedRepresentation("representation must have dimension >= 1")
    out = None
    for kind, k, mult in parts:
        if mult < 0:
            raise UnsupportedRepresentation("negative multiplicity")
        for _ in range(mult):
            S = _irreducible_sphere(G, kind, k)
            out = S if out is None else join(out, S)
    return make_rigid(out).with_name("S(V)")


def rep_disk(G: FiniteGroup, rep) -> GSimplicialComplex:
    return cone(rep_sphere(G, rep)).with_name("D(V)")


def rep_compactification(G: FiniteGroup, rep) -> GSimplicialComplex:
    return suspension(rep_sphere(G, rep)).with_name("S^V")


# ----------------------------------------------------------------------
# maps


@dataclass(frozen=True, eq=False)
class GSimplicialMap:
    source: GSimplicialComplex
    target: GSimplicialComplex
    vertex_map: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.vertex_map) != self.source.n_vertices:
            raise ValidationError("vertex map has the wrong length", entity=self.name or None)
        tgt = self.target.simplices
        for s in sorted(self.source.simplices):
            if self.image(s) not in tgt:
                raise NotSimplicial(f"simplex {s} maps to a non-simplex", witness=s)
        f = self.vertex_map
        G = self.source.group
        for g in G.elements:
            for v in range(self.source.n_vertices):
                if f[self.source.action[g][v]] != self.target.action[g][f[v]]:
                    raise NotEquivariant(f"f(g.v) != g.f(v) for g={g}, v={v}", witness=(g, v))

    def image(self, s: Simplex) -> Simplex:
        return tuple(sorted({self.vertex_map[v] for v in s}))

    def compose(self, other: "GSimplicialMap") -> "GSimplicialMap":
        """self after other."""
        return GSimplicialMap(other.source, self.target,
                              tuple(self.vertex_map[v] for v in other.vertex_map))

    def subdivision(self) -> dict[int, int]:
        """Sd f on vertex ids of the cached subdivisions."""
        sx, sy = self.source.subdivision.complex, self.target.subdivision.complex
        index = {s: i for i, s in enumerate(sy.labels)}
        return {i: index[self.image(s)] for i, s in enumerate(sx.labels)}


def identity_map(X: GSimplicialComplex) -> GSimplicialMap:
    return GSimplicialMap(X, X, tuple(range(X.n_vertices)), name="id")


def is_isovariant(f: GSimplicialMap):
    """``(True, None)`` or ``(False, witness simplex)``."""
    _require_rigid(f.source, f.target)
    for s in sorted(f.source.simplices, key=lambda s: (len(s), s)):
        if f.source.isotropy(s) != f.target.isotropy(f.image(s)):
            return False, s
    return True, None


def require_isovariant(f: GSimplicialMap) -> None:
    ok, witness = is_isovariant(f)
    if not ok:
        raise NotIsovariant(f"map {f.name or ''} changes isotropy at simplex {witness}",
                            witness=witness)


def inclusion_map(sub: GSimplicialComplex, ambient: GSimplicialComplex,
                  vertex_map: Sequence[int] | None = None) -> GSimplicialMap:
    if vertex_map is None:
        vertex_map = range(sub.n_vertices)
    return GSimplicialMap(sub, ambient, tuple(vertex_map))


def join_inclusions(X: GSimplicialComplex, Y: GSimplicialComplex):
    """The two inclusions X -> X*Y and Y -> X*Y (before any subdivision)."""
    J = join(X, Y)
    nx = X.n_vertices
    return J, GSimplicialMap(X, J, tuple(range(nx))), \
        GSimplicialMap(Y, J, tuple(nx + v for v in range(Y.n_vertices)))


def point(G: FiniteGroup) -> GSimplicialComplex:
    return fixed_points_complex(G, 1)

