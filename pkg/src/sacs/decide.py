"""Decision procedures for stable (almost) complex structures.

``compute_D`` builds the subgroup D(M) of degree-2 classes x with
x^2 + cx = 2 z_x + t_x (t_x torsion).  ``decide_tangent`` is the main test
for TM; ``decide_bundle`` handles an arbitrary real bundle by searching the
Spin^c classes d over ``d0 + 2H^2`` modulo 4.  The remaining deciders are
fast paths whose hypotheses are narrower; they must agree with the main one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import exactlin, kernels
from .charclass import BundleCharData, ManifoldData, pairing_vector, sq2_on_h6
from .cohomology import CohClass
from .errors import InapplicablePath, IntegralityViolation, SearchBoundError

DEFAULT_SEARCH_BOUND = 20

YES, NO = True, False


@dataclass(frozen=True)
class DmSubgroup:
    """D(M) as lifts of a basis of ker L plus twice each basis class of H^2."""

    generators: tuple[CohClass, ...]
    L: exactlin.F2Matrix
    kernel: tuple[tuple[int, ...], ...]

    def contains(self, x: CohClass) -> bool:
        return not any(self.L.apply(x.coords))


@dataclass(frozen=True)
class GeneratorCheck:
    """One row of a certificate: both sides of the congruence for generator x."""

    x: CohClass
    lhs: int
    rhs: int
    z: CohClass | None = None
    value: int | None = None  # the integer A before reduction, bundle path only

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class Verdict:
    answer: bool
    path: str
    gate: str | None = None
    rows: tuple[GeneratorCheck, ...] = ()
    witness: GeneratorCheck | None = None
    d: CohClass | None = None
    attempts: tuple[tuple[CohClass, GeneratorCheck], ...] = ()
    combination: tuple[int, ...] | None = None
    separator: CohClass | None = None

    def __post_init__(self):
        if not self.answer and self.gate is None and self.witness is None:
            raise ValueError("a NO verdict needs a gate or a witness")

    @property
    def kind(self) -> str:
        if self.gate is not None:
            return "gate"
        if self.witness is not None:
            return "witness"
        return "table"

    def signature(self) -> tuple:
        """Basis-independent summary used when comparing verdicts across re-presentations."""
        return self.answer, self.path, self.kind

    def to_dict(self) -> dict:
        out: dict = {"answer": "yes" if self.answer else "no", "path": self.path,
                     "certificate": self.kind}
        if self.gate is not None:
            out["gate"] = self.gate
        out["rows"] = [_row_dict(r) for r in self.rows]
        if self.witness is not None:
            out["witness"] = _row_dict(self.witness)
        if self.d is not None:
            out["d"] = list(self.d.coords)
        if self.attempts:
            out["attempts"] = [{"d": list(d.coords), "witness": _row_dict(r)} for d, r in self.attempts]
        if self.combination is not None:
            out["combination"] = list(self.combination)
        if self.separator is not None:
            out["separator"] = list(self.separator.coords)
        return out


def _row_dict(r: GeneratorCheck) -> dict:
    out = {"x": list(r.x.coords), "lhs": r.lhs, "rhs": r.rhs}
    if r.z is not None:
        out["z"] = list(r.z.coords)
    if r.value is not None:
        out["A"] = r.value
    return out


# D(M)


def d_map(M: ManifoldData) -> exactlin.F2Matrix:
    """x -> free part of x^2 + cx mod 2, as a matrix on the degree-2 basis.

    Linear over GF(2) since the cross term of (x + y)^2 is 2xy.
    """
    R, c = M.ring, M.char.c
    f4 = R.groups.free[4]
    cols = []
    for e in R.basis(2):
        s = e * e + c * e
        cols.append([v % 2 for v in s.coords[:f4]])
    rows = exactlin.transpose(cols, f4) if cols else [[] for _ in range(f4)]
    return exactlin.F2Matrix.from_rows(rows, len(cols))


def compute_D(M: ManifoldData) -> DmSubgroup:
    R = M.ring
    L = d_map(M)
    kernel = exactlin.f2_kernel(L)
    gens = [R.cls(2, v) for v in kernel]
    gens += [2 * e for e in R.basis(2)]
    return DmSubgroup(tuple(gens), L, tuple(tuple(v) for v in kernel))


def in_D(M: ManifoldData, x: CohClass) -> bool:
    free, _ = M.ring.split_free_torsion(x * x + M.char.c * x)
    return all(v % 2 == 0 for v in free.coords)


def split_zx(M: ManifoldData, x: CohClass) -> tuple[CohClass, CohClass]:
    """Canonical ``x^2 + cx = 2 z_x + t_x``: z_x is half the free part, t_x the torsion part."""
    R = M.ring
    s = x * x + M.char.c * x
    free, tors = R.split_free_torsion(s)
    if any(v % 2 for v in free.coords):
        raise ValueError(f"{R.describe(x)} is not in D(M): x^2 + cx = {R.describe(s)}")
    return R.cls(4, [v // 2 for v in free.coords]), tors


Splitter = Callable[[ManifoldData, CohClass], tuple[CohClass, CohClass]]


# tangent bundle


def tangent_rows(M: ManifoldData, split: Splitter = split_zx) -> list[GeneratorCheck]:
    R, q1, u = M.ring, M.char.q1, M.char.w6.lift
    rows = []
    for x in compute_D(M).generators:
        z, _ = split(M, x)
        rows.append(GeneratorCheck(x, R.pair_mod2(q1, q1, x), R.pair_mod2(z, u), z))
    return rows


def decide_tangent(M: ManifoldData, split: Splitter = split_zx) -> Verdict:
    """w4^2 ρ2(x) = ρ2(z_x) w6 for every generator x of D(M), after the βw6 gate."""
    if not M.char.w6.liftable:
        return Verdict(NO, "main", gate="beta w6 != 0")
    rows = tuple(tangent_rows(M, split))
    bad = next((r for r in rows if not r.holds), None)
    return Verdict(bad is None, "main", rows=rows, witness=bad)


def decide_w40(M: ManifoldData) -> Verdict | None:
    """Fast path for w4 = 0; None when the hypothesis does not hold."""
    R, u = M.ring, M.char.w6.lift
    if u is None or not R.rho2_is_zero(M.char.q1):
        return None
    if any(R.pair_mod2(z, u) for z in R.basis(4)):
        return None
    return Verdict(YES, "w40")


def membership_w6t(M: ManifoldData) -> Verdict:
    """Test w4^2 ∈ Sq^2 ρ2 H^6 when w6 lifts to a torsion class (mod ker ρ2)."""
    R, u = M.ring, M.char.w6.lift
    if u is None:
        raise InapplicablePath("w6 has no integral lift")
    f6 = R.groups.free[6]
    if any(v % 2 for v in u.coords[:f6]):
        raise InapplicablePath("w6 is not the reduction of a torsion class")
    q1 = M.char.q1
    n2 = R.groups.size(2)
    images = [pairing_vector(M, sq2_on_h6(M, z)) for z in R.basis(6)]
    target = [R.pair_mod2(q1, q1, y) for y in R.basis(2)]
    if not any(target):
        return Verdict(YES, "w6t", combination=(0,) * len(images))
    cols = exactlin.F2Matrix.from_rows(exactlin.transpose(images, n2) if images else
                                       [[] for _ in range(n2)], len(images))
    combo = exactlin.f2_solve(cols, target)
    if combo is not None:
        return Verdict(YES, "w6t", combination=tuple(combo))
    # separating functional: phi with phi·image = 0 for all images and phi·target = 1
    sep = exactlin.f2_solve(exactlin.F2Matrix.from_rows(images + [target], n2),
                            [0] * len(images) + [1])
    x = R.cls(2, sep)
    z = split_zx(M, x)[0] if in_D(M, x) else None
    rhs = R.pair_mod2(z, u) if z is not None else 0
    row = GeneratorCheck(x, R.pair_mod2(q1, q1, x), rhs, z)
    return Verdict(NO, "w6t", witness=row, separator=x)


def w6t_applies(M: ManifoldData) -> bool:
    u = M.char.w6.lift
    return u is not None and not any(v % 2 for v in u.coords[: M.ring.groups.free[6]])


def decide_corollary_h(M: ManifoldData) -> Verdict | None:
    """Fast path for H^2 = Z·h with ρ2(h^2) not the reduction of a torsion class."""
    R = M.ring
    if R.groups.free[2] != 1 or R.groups.torsion[2] or not M.char.w6.liftable:
        return None
    h = R.gen(2, 0)
    free, _ = R.split_free_torsion(h * h)
    if all(v % 2 == 0 for v in free.coords):
        return None
    return Verdict(YES, "h")


# arbitrary bundles


def _d_offset(M: ManifoldData, xi: BundleCharData, d: CohClass) -> CohClass:
    diff = d - xi.d0
    if any(v % 2 for v in diff.coords):
        raise ValueError(f"d = {M.ring.describe(d)} does not reduce to w2 of {xi.name}")
    return M.ring.cls(2, [v // 2 for v in diff.coords])


def a_pairing(M: ManifoldData, xi: BundleCharData, d: CohClass, x: CohClass) -> int:
    """The integer A_{c,ξ}(d, x) = <x · q(d) · (q(d) - q1(M)), [M]> / 2.

    ``q(d) = q1' - 2a(d0 + a)`` is the first Spin class of ξ - r(l_d) for
    ``d = d0 + 2a``.  Raises IntegralityViolation when the pairing is odd.
    """
    R = M.ring
    if not in_D(M, x):
        raise ValueError(f"{R.describe(x)} is not in D(M)")
    a = _d_offset(M, xi, d)
    q = xi.q1p - 2 * (a * (xi.d0 + a))
    N = R.kronecker(x * q * (q - M.char.q1))
    if N % 2:
        raise IntegralityViolation(
            f"<x q (q - R), [M]> = {N} is odd for x = {R.describe(x)}, d = {R.describe(d)}",
            d=d, x=x, value=N)
    return N // 2


def rhs_bundle(M: ManifoldData, xi: BundleCharData, x: CohClass, z: CohClass) -> int:
    """Right side of the bundle congruence, expanded into cup products of lifts.

    (w8 + w2 Sq^2 w4) ρ2(x) + Sq^2(ρ2 z_x) w4 with Sq^2 w4 = w2 w4 + w6 and
    w4 Sq^2 z = w2(M) w4 z + z Sq^2 w4.
    """
    u = xi.w6.lift
    if u is None:
        raise InapplicablePath(f"w6({xi.name}) has no integral lift")
    R, c = M.ring, M.char.c
    d0, q = xi.d0, xi.q1p
    terms = (xi.w8lift * x, d0 * d0 * q * x, d0 * u * x,
             c * q * z, d0 * q * z, u * z)
    return sum(R.kronecker(t) for t in terms) % 2


def _free(a: CohClass) -> list[int]:
    return list(a.coords[: a.ring.groups.free[a.degree]])


def decide_bundle(M: ManifoldData, xi: BundleCharData, search_bound: int = DEFAULT_SEARCH_BOUND,
                  split: Splitter = split_zx, backend: str | None = None) -> Verdict:
    """Search d ∈ d0 + 2H^2 (mod 4H^2) for which the congruence holds on all of D(M)."""
    if not xi.w6.liftable:
        return Verdict(NO, "bundle", gate=f"beta w6({xi.name}) != 0")
    R = M.ring
    e2 = R.basis(2)
    r = len(e2)
    if r > search_bound:
        raise SearchBoundError(f"rank H^2 = {r} exceeds search bound {search_bound}")
    gens = compute_D(M).generators
    zs = [split(M, x)[0] for x in gens]
    rhs = [rhs_bundle(M, xi, x, z) for x, z in zip(gens, zs)]

    f4 = R.free_basis(4)
    base = _free(xi.q1p)
    P = [_free(e * xi.d0) for e in e2]
    Q = [[_free(ei * ej) for ej in e2] for ei in e2]
    Rq = _free(M.char.q1)
    G = [[[R.kronecker(x * fk * fl) for fl in f4] for fk in f4] for x in gens]
    found, witnesses, violation = kernels.scan(r, len(f4), base, P, Q, Rq, G, rhs, backend)

    def d_of(mask: int) -> CohClass:
        a = [(mask >> (r - 1 - i)) & 1 for i in range(r)]
        return xi.d0 + R.cls(2, [2 * v for v in a])

    if violation is not None:
        mask, k, N = violation
        d, x = d_of(mask), gens[k]
        raise IntegralityViolation(
            f"<x q (q - R), [M]> = {N} is odd for x = {R.describe(x)}, d = {R.describe(d)}",
            d=d, x=x, value=N)
    if found >= 0:
        d = d_of(found)
        rows = []
        for x, z, b in zip(gens, zs, rhs):
            A = a_pairing(M, xi, d, x)
            rows.append(GeneratorCheck(x, A % 2, b, z, A))
        return Verdict(YES, "bundle", rows=tuple(rows), d=d)
    attempts = []
    for mask, k, bit in witnesses:
        attempts.append((d_of(mask), GeneratorCheck(gens[k], bit, rhs[k], zs[k])))
    return Verdict(NO, "bundle", witness=attempts[0][1], attempts=tuple(attempts))


# cross-path coherence


@dataclass
class Decision:
    """Main-path verdict with every applicable fast path alongside."""

    main: Verdict
    fast: dict[str, Verdict] = field(default_factory=dict)

    @property
    def disagreements(self) -> list[str]:
        return [name for name, v in self.fast.items() if v.answer != self.main.answer]


def decide_all(M: ManifoldData) -> Decision:
    out = Decision(decide_tangent(M))
    w40 = decide_w40(M)
    if w40 is not None:
        out.fast["w40"] = w40
    if w6t_applies(M):
        out.fast["w6t"] = membership_w6t(M)
    h = decide_corollary_h(M)
    if h is not None:
        out.fast["h"] = h
    return out
