"""Characteristic-class data for a manifold and for real bundles over it.

Stiefel-Whitney classes enter only through integral lifts: ``w2 = ρ2(c)``,
``w4 = ρ2(q1)``, ``w6 = ρ2(u)`` when ``βw6 = 0``, and ``w8`` through a degree-8
lift.  Sq^2 is never evaluated on degree-4 classes; the one Steenrod square
needed, Sq^2 on reductions of degree-6 integral classes, is recovered from
the ring via the Wu formula and Poincaré duality.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Callable

from . import exactlin
from .cohomology import CohClass, CohomologyRing, Report, validate_hypotheses, validate_pd, validate_ring
from .errors import DegreeError, InconsistentInput


@dataclass(frozen=True)
class W6Spec:
    """Either an integral lift ``u`` of w6, or ``lift=None`` meaning βw6 != 0."""

    lift: CohClass | None

    @classmethod
    def nonliftable(cls) -> "W6Spec":
        return cls(None)

    @property
    def liftable(self) -> bool:
        return self.lift is not None


@dataclass(frozen=True)
class ManifoldCharData:
    c: CohClass
    q1: CohClass
    w6: W6Spec
    p1: CohClass | None = None
    p2: CohClass | None = None

    def __post_init__(self):
        _expect_degree("c", self.c, 2)
        _expect_degree("q1", self.q1, 4)
        if self.w6.lift is not None:
            _expect_degree("w6 lift", self.w6.lift, 6)
        if self.p1 is not None:
            _expect_degree("p1", self.p1, 4)
        if self.p2 is not None:
            _expect_degree("p2", self.p2, 8)


@dataclass(frozen=True)
class BundleCharData:
    """Data of a real bundle ξ.

    ``d0`` reduces to w2(ξ); ``q1p`` is the first Spin class of ξ - r(l_d0);
    ``w8lift`` is any integral lift of w8(ξ).
    """

    name: str
    d0: CohClass
    q1p: CohClass
    w6: W6Spec
    w8lift: CohClass
    p1: CohClass | None = None

    def __post_init__(self):
        _expect_degree("d0", self.d0, 2)
        _expect_degree("q1p", self.q1p, 4)
        _expect_degree("w8lift", self.w8lift, 8)
        if self.w6.lift is not None:
            _expect_degree("w6 lift", self.w6.lift, 6)
        if self.p1 is not None:
            _expect_degree("p1", self.p1, 4)


def _expect_degree(name: str, a: CohClass, deg: int) -> None:
    if a.degree != deg:
        raise DegreeError(f"{name} must have degree {deg}, got {a.degree}")


@dataclass(frozen=True)
class ManifoldData:
    name: str
    ring: CohomologyRing
    char: ManifoldCharData
    bundles: tuple[BundleCharData, ...] = ()
    note: str = ""

    def bundle(self, name: str) -> BundleCharData:
        for b in self.bundles:
            if b.name == name:
                return b
        raise KeyError(name)

    def tangent_bundle(self) -> BundleCharData:
        """TM written as bundle data, with w8(M) = w4^2 + w2^4 lifted by q1^2 + c^4."""
        c, q1 = self.char.c, self.char.q1
        return BundleCharData(name="tangent", d0=c, q1p=q1, w6=self.char.w6,
                              w8lift=q1 * q1 + c ** 4, p1=self.char.p1)

    def replace(self, **changes) -> "ManifoldData":
        return dataclasses.replace(self, **changes)

    def with_char(self, **changes) -> "ManifoldData":
        return dataclasses.replace(self, char=dataclasses.replace(self.char, **changes))


# validators


def check_p1_consistency(R: CohomologyRing, p1: CohClass, c: CohClass, q1: CohClass) -> bool:
    """p1 - c^2 - 2 q1 must be 2-primary torsion (the Whitney sum ambiguity of p1)."""
    return R.is_two_primary(p1 - c * c - 2 * q1)


def solve_q2(M: ManifoldData) -> CohClass:
    """Solve ``2 q2 = p2 - q1^2`` in H^8."""
    R, ch = M.ring, M.char
    rhs = ch.p2 - ch.q1 * ch.q1
    coords = []
    for v, m in zip(rhs.coords, R.groups.orders(8)):
        if m % 2:
            coords.append(v * pow(2, -1, m) % m)
        elif v % 2:
            raise InconsistentInput(f"p2 - q1^2 = {R.describe(rhs)} is not divisible by 2")
        else:
            coords.append(v // 2)
    return R.cls(8, coords)


def wu_validate(M: ManifoldData) -> Report:
    """Linearly checkable Wu/Whitney identities on the characteristic data."""
    R, ch = M.ring, M.char
    rep = Report()
    c, q1, u = ch.c, ch.q1, ch.w6.lift
    if not R.rho2_is_zero(c * q1):
        rep.add("w2w4", f"w2·w4 != 0: c·q1 = {R.describe(c * q1)} is not divisible by 2")
    if u is not None and not R.rho2_is_zero(c * u):
        rep.add("w2w6", f"w2·w6 != 0: c·u = {R.describe(c * u)} is not divisible by 2")
    if ch.p1 is not None and not check_p1_consistency(R, ch.p1, c, q1):
        rep.add("p1", f"p1 - c^2 - 2q1 = {R.describe(ch.p1 - c * c - 2 * q1)} "
                      "is not 2-primary torsion")
    if ch.p2 is not None:
        q2 = solve_q2(M)
        # rho2 q2(TM - r l_c) = w8 + w2 w6 + w2^2 w4 = w4^2 + w2^4 + w2 w6 + w2^2 w4
        expected = q1 * q1 + c ** 4 + c * c * q1
        if u is not None:
            expected = expected + c * u
        if not R.rho2_is_zero(q2 - expected):
            rep.add("w8", f"rho2(q2) = rho2({R.describe(q2)}) differs from w4^2 + w2^4")
    for b in M.bundles:
        if b.p1 is not None and not check_p1_consistency(R, b.p1, b.d0, b.q1p):
            rep.add("p1", f"bundle {b.name}: p1 - d0^2 - 2q1' is not 2-primary torsion")
    return rep


def validate_all(M: ManifoldData) -> Report:
    rep = Report()
    rep.extend(validate_hypotheses(M))
    rep.extend(validate_ring(M))
    rep.extend(validate_pd(M))
    if rep.ok:
        try:
            rep.extend(wu_validate(M))
        except InconsistentInput as exc:
            rep.add("w8", str(exc))
    return rep


# Spin characteristic class algebra


def q_whitney(q1a: CohClass, q2a: CohClass, q1b: CohClass, q2b: CohClass) -> tuple[CohClass, CohClass]:
    """Spin classes of a Whitney sum of two Spin bundles."""
    for name, a, d in (("q1a", q1a, 4), ("q2a", q2a, 8), ("q1b", q1b, 4), ("q2b", q2b, 8)):
        _expect_degree(name, a, d)
    return q1a + q1b, q2a + q2b + q1a * q1b


def q_difference_q2(q2a: CohClass, q2b: CohClass) -> CohClass:
    """q2 of a difference that is stably trivial over the 7-skeleton."""
    _expect_degree("q2a", q2a, 8)
    _expect_degree("q2b", q2b, 8)
    return q2a - q2b


def q_of_complex(c2: CohClass, c4: CohClass) -> tuple[CohClass, CohClass]:
    """(q1, q2) of the realification of a complex bundle with c1 = 0."""
    _expect_degree("c2", c2, 4)
    _expect_degree("c4", c4, 8)
    return -c2, c4


# Sq^2 on H^6


def pairing_vector(M: ManifoldData, a8: CohClass) -> list[int]:
    """``y -> <y · a8>`` mod 2 over the degree-2 basis."""
    return [M.ring.pair_mod2(y, a8) for y in M.ring.basis(2)]


def sq2_rhs(M: ManifoldData, z: CohClass) -> list[int]:
    """``y -> <(w2 y + y^2) ρ2 z>`` over the degree-2 basis; equals ``<y Sq^2 ρ2 z>``."""
    R, c = M.ring, M.char.c
    return [(R.pair_mod2(c, y, z) + R.pair_mod2(y, y, z)) % 2 for y in R.basis(2)]


def sq2_on_h6(M: ManifoldData, z: CohClass) -> CohClass:
    """Degree-8 integral lift of Sq^2 ρ2(z), unique modulo ker ρ2."""
    _expect_degree("z", z, 6)
    R = M.ring
    eights = R.free_basis(8)
    mat = [[R.pair_mod2(y, e) for e in eights] for y in R.basis(2)]
    rhs = sq2_rhs(M, z)
    if not mat:
        return R.zero(8)
    sol = exactlin.f2_solve(exactlin.F2Matrix.from_rows(mat, len(eights)), rhs)
    if sol is None:
        raise InconsistentInput("Sq^2 system unsolvable: mod-2 pairing H^2 x H^8 is degenerate")
    return R.cls(8, sol + [0] * len(R.groups.torsion[8]))


# data transformations used by the invariance checks


def map_manifold(M: ManifoldData, f: Callable[[CohClass], CohClass], ring: CohomologyRing) -> ManifoldData:
    """Push every class of ``M`` through ``f`` into ``ring``."""

    def opt(a):
        return None if a is None else f(a)

    def w6(spec):
        return W6Spec(opt(spec.lift))

    ch = M.char
    char = ManifoldCharData(f(ch.c), f(ch.q1), w6(ch.w6), opt(ch.p1), opt(ch.p2))
    bundles = tuple(BundleCharData(b.name, f(b.d0), f(b.q1p), w6(b.w6), f(b.w8lift), opt(b.p1))
                    for b in M.bundles)
    return ManifoldData(M.name, ring, char, bundles, M.note)


def shift_c(M: ManifoldData, a: CohClass) -> ManifoldData:
    """Replace c by c + 2a; q1 = q1(TM - r l_c) moves to q1 - 2a(c + a)."""
    c, q1 = M.char.c, M.char.q1
    return M.with_char(c=c + 2 * a, q1=q1 - 2 * (a * (c + a)))


def shift_d0(b: BundleCharData, a: CohClass) -> BundleCharData:
    """Replace d0 by d0 + 2a, keeping the bundle fixed."""
    return dataclasses.replace(b, d0=b.d0 + 2 * a, q1p=b.q1p - 2 * (a * (b.d0 + a)))
