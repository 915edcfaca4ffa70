"""Exact checks in finite truncations of the complete universe.

Vectors live in ``rho^l``, the sum of ``l`` copies of the regular
representation, with basis ``chi_g`` in each copy and ``g' chi_g = chi_{g'g}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import ContractViolation, NotAStrictPair
from .groups import FiniteGroup, Subgroup

DEFAULT_S = (Fraction(0), Fraction(1, 10), Fraction(1, 2), Fraction(9, 10), Fraction(1))
GRID_T = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))
GRID_S = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1))


@dataclass(frozen=True)
class RationalVector:
    order: int
    copies: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if self.copies < 1:
            raise ValueError("need at least one copy of the regular representation")
        if len(self.coords) != self.order * self.copies:
            raise ValueError("coordinate count does not match order * copies")

    @classmethod
    def zero(cls, order: int, copies: int = 1) -> "RationalVector":
        return cls(order, copies, (Fraction(0),) * (order * copies))

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        c, g = idx
        return self.coords[c * self.order + g]

    def __add__(self, other: "RationalVector") -> "RationalVector":
        self._same_shape(other)
        return RationalVector(self.order, self.copies,
                              tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, t) -> "RationalVector":
        t = Fraction(t)
        return RationalVector(self.order, self.copies, tuple(t * a for a in self.coords))

    def _same_shape(self, other):
        if (self.order, self.copies) != (other.order, other.copies):
            raise ValueError("vectors live in different truncations")

    def concat(self, other: "RationalVector") -> "RationalVector":
        """Direct sum (V, W) in rho^(l + l')."""
        if self.order != other.order:
            raise ValueError("vectors over different groups")
        return RationalVector(self.order, self.copies + other.copies, self.coords + other.coords)

    def act(self, G: FiniteGroup, g: int) -> "RationalVector":
        n = self.order
        out = [Fraction(0)] * len(self.coords)
        for c in range(self.copies):
            for h in range(n):
                out[c * n + G.mul(g, h)] = self.coords[c * n + h]
        return RationalVector(n, self.copies, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_list(self) -> list[str]:
        return [str(a) for a in self.coords]


def chi_sum(G: FiniteGroup, members: Iterable[int], copies: int = 1, copy: int = 0,
            weight=1) -> RationalVector:
    """weight * sum of chi_h over ``members`` in the given copy."""
    coords = [Fraction(0)] * (G.order * copies)
    for h in members:
        coords[copy * G.order + h] += Fraction(weight)
    return RationalVector(G.order, copies, tuple(coords))


def isotropy_of_vector(G: FiniteGroup, v: RationalVector) -> Subgroup:
    """{g : g v = v} by exhaustive comparison."""
    if v.order != G.order:
        raise ValueError("vector and group disagree on the group order")
    fixed = tuple(g for g in G.elements if v.act(G, g) == v)
    # stabilizers are closed under products; keep the check cheap but explicit
    s = set(fixed)
    assert all(G.mul(a, b) in s for a in fixed for b in fixed)
    return Subgroup(fixed)


def gamma(G: FiniteGroup, H: Subgroup, K: Subgroup, s) -> RationalVector:
    s = Fraction(s)
    return chi_sum(G, H.members, weight=s) + chi_sum(G, K.members, weight=1 - s)


def _require_pair(H: Subgroup, K: Subgroup) -> None:
    if not H.is_strict_subgroup(K):
        raise NotAStrictPair(f"{H.members} is not strictly contained in {K.members}")


def _check_samples(samples) -> tuple[Fraction, ...]:
    out = tuple(Fraction(s) for s in samples)
    if any(s < 0 or s > 1 for s in out):
        raise ValueError("samples must lie in [0, 1]")
    if Fraction(0) not in out:
        raise ValueError("samples must include 0")
    return out


@dataclass
class CheckReport:
    """Outcome of a sampled verification; ``witnesses`` lists every failure."""
    name: str
    group: str
    H: str
    K: str
    checked: int = 0
    witnesses: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def fail(self, **info) -> None:
        self.witnesses.append({k: (str(v) if isinstance(v, Fraction) else v)
                               for k, v in info.items()})

    def to_dict(self) -> dict:
        return {"check": self.name, "group": self.group, "H": self.H, "K": self.K,
                "checked": self.checked, "passed": self.passed, "witnesses": self.witnesses}


def gamma_path(G: FiniteGroup, H: Subgroup, K: Subgroup,
               samples: Sequence = DEFAULT_S) -> CheckReport:
    """Isotropy along s -> s sum_H chi + (1 - s) sum_K chi: K at 0, H afterwards."""
    _require_pair(H, K)
    rep = CheckReport("gamma_path", G.name, G.label(H), G.label(K))
    for s in _check_samples(samples):
        got = isotropy_of_vector(G, gamma(G, H, K, s))
        want = K if s == 0 else H
        rep.checked += 1
        if got != want:
            rep.fail(s=s, expected=G.label(want), found=G.label(got))
    return rep


def partial_sum_report(G: FiniteGroup) -> CheckReport:
    """sum_{h in H} chi_h is fixed by exactly H, for every subgroup H."""
    rep = CheckReport("partial_sum", G.name, "*", "*")
    for H in G.subgroups:
        got = isotropy_of_vector(G, chi_sum(G, H.members))
        rep.checked += 1
        if got != H:
            rep.fail(subgroup=G.label(H), found=G.label(got))
    return rep


# ----------------------------------------------------------------------
# the lifting homotopy


Evaluator = Callable[[tuple[Fraction, ...], Fraction], RationalVector]


@dataclass(frozen=True)
class DiskPoint:
    """A rational point y of the unit disk together with its exact norm."""
    coords: tuple[Fraction, ...]
    norm: Fraction

    def __post_init__(self):
        if sum(c * c for c in self.coords) != self.norm * self.norm:
            raise ValueError(f"norm {self.norm} does not match {self.coords}")
        if not 0 <= self.norm <= 1:
            raise ValueError("point is outside the unit disk")

    @property
    def t(self) -> Fraction:
        return 1 - self.norm

    def direction(self) -> tuple[Fraction, ...]:
        return tuple(c / self.norm for c in self.coords)


def sphere_points(n: int) -> list[tuple[Fraction, ...]]:
    """Rational points on S^(n-1): signed basis vectors and Pythagorean pairs."""
    pts = []
    for i in range(n):
        for sign in (1, -1):
            pts.append(tuple(Fraction(sign) if j == i else Fraction(0) for j in range(n)))
    if n >= 2:
        for a, b in ((Fraction(3, 5), Fraction(4, 5)), (Fraction(-5, 13), Fraction(12, 13))):
            pts.append((a, b) + (Fraction(0),) * (n - 2))
    if n >= 3:
        pts.append((Fraction(1, 3), Fraction(2, 3), Fraction(2, 3)) + (Fraction(0),) * (n - 3))
    return pts


def disk_grid(n: int, ts: Sequence = GRID_T) -> list[DiskPoint]:
    """Points (1 - t) u for every sphere point u and every t; the centre once."""
    out, seen = [], set()
    for t in ts:
        t = Fraction(t)
        for u in sphere_points(n):
            y = tuple((1 - t) * c for c in u)
            if y in seen:
                continue
            seen.add(y)
            out.append(DiskPoint(y, 1 - t))
    return out


def lift(G: FiniteGroup, H: Subgroup, K: Subgroup, f: Evaluator, y: DiskPoint, s,
         branch: int | None = None) -> RationalVector:
    """Evaluate the extended homotopy at (y, s) in V x rho (rho is the last copy)."""
    s = Fraction(s)
    t = y.t
    g = gamma(G, H, K, s)
    if t == 1:
        probe = f(sphere_points(len(y.coords))[0], s)
        return RationalVector.zero(G.order, probe.copies).concat(g)
    fy = f(y.direction(), s)
    if branch is None:
        branch = 1 if t <= Fraction(1, 2) else 2
    if branch == 1:
        return fy.concat(g.scale(2 * t))
    return fy.scale(2 - 2 * t).concat(g)


def _check_contract(G, H, K, value: RationalVector, u, s) -> None:
    want = K if s == 0 else H
    got = isotropy_of_vector(G, value)
    if got != want:
        raise ContractViolation(
            f"f({[str(c) for c in u]})({s}) has isotropy {G.label(got)}, expected {G.label(want)}",
            witness={"y0": [str(c) for c in u], "s": str(s), "found": G.label(got)})


def lifting_extension(G: FiniteGroup, H: Subgroup, K: Subgroup, f: Evaluator,
                      y_samples: Sequence[DiskPoint], s_samples: Sequence = GRID_S) -> CheckReport:
    """Sampled check of seam agreement, extension, and exact isotropy of the lift."""
    _require_pair(H, K)
    s_samples = _check_samples(s_samples)
    rep = CheckReport("lifting_extension", G.name, G.label(H), G.label(K))
    for y in y_samples:
        for s in s_samples:
            if y.t < 1:
                _check_contract(G, H, K, f(y.direction(), s), y.direction(), s)
            out = lift(G, H, K, f, y, s)
            where = {"y": [str(c) for c in y.coords], "s": s}
            rep.checked += 1
            if y.t == Fraction(1, 2):
                if lift(G, H, K, f, y, s, 1) != lift(G, H, K, f, y, s, 2):
                    rep.fail(assertion="seam", **where)
            if y.t == 0:
                fy = f(y.coords, s)
                if out != fy.concat(RationalVector.zero(G.order)):
                    rep.fail(assertion="extension", **where)
            if y.t == 1:
                probe = f(sphere_points(len(y.coords))[0], s)
                if out != RationalVector.zero(G.order, probe.copies).concat(gamma(G, H, K, s)):
                    rep.fail(assertion="centre", **where)
            want = K if s == 0 else H
            got = isotropy_of_vector(G, out)
            if got != want:
                rep.fail(assertion="isotropy", expected=G.label(want), found=G.label(got), **where)
    return rep


def constant_gamma_family(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Evaluator:
    """The test family f(y)(s) = gamma(s) in V = rho."""
    return lambda y, s: gamma(G, H, K, s)


def strict_pairs(G: FiniteGroup) -> list[tuple[Subgroup, Subgroup]]:
    subs = G.subgroups
    return [(H, K) for H in subs for K in subs if H.is_strict_subgroup(K)]


def universe_check(G: FiniteGroup, samples: Sequence = DEFAULT_S, disk_dim: int = 2,
                   ts: Sequence = GRID_T, s_grid: Sequence = GRID_S) -> list[CheckReport]:
    """Every report for one group: partial sums, then gamma and the lift per pair."""
    reports = [partial_sum_report(G)]
    ys = disk_grid(disk_dim, ts)
    for H, K in strict_pairs(G):
        reports.append(gamma_path(G, H, K, samples))
        reports.append(lifting_extension(G, H, K, constant_gamma_family(G, H, K), ys, s_grid))
    return reports
