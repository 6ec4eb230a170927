"""Integral cohomology rings of closed oriented 10-manifolds, given by presentation.

Each degree carries a finitely generated abelian group in Smith normal form
(free generators first, then cyclic torsion factors).  Classes are coordinate
vectors in that basis; mod-2 classes are handled only through integral lifts.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import exactlin
from .errors import DegreeError

TOP = 10
DEGREES = range(TOP + 1)


@dataclass(frozen=True)
class GradedGroup:
    """``free[i]`` and ``torsion[i]`` describe ``H^i = Z^free ⊕ ⊕ Z/m``."""

    free: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.free) != TOP + 1 or len(self.torsion) != TOP + 1:
            raise ValueError(f"need {TOP + 1} degrees")
        for i, (f, tors) in enumerate(zip(self.free, self.torsion)):
            if f < 0:
                raise ValueError(f"degree {i}: negative free rank")
            for k, m in enumerate(tors):
                if m < 2:
                    raise ValueError(f"degree {i}: torsion coefficient {m} < 2")
                if k and m % tors[k - 1]:
                    raise ValueError(f"degree {i}: torsion {tors} not in divisibility order")

    @classmethod
    def from_lists(cls, free: Sequence[int], torsion: Sequence[Sequence[int]]) -> "GradedGroup":
        return cls(tuple(int(f) for f in free), tuple(tuple(int(m) for m in t) for t in torsion))

    def size(self, deg: int) -> int:
        return self.free[deg] + len(self.torsion[deg])

    def orders(self, deg: int) -> tuple[int, ...]:
        """Order of each coordinate, 0 for free ones."""
        return (0,) * self.free[deg] + self.torsion[deg]

    def reduce(self, deg: int, coords: Sequence[int]) -> tuple[int, ...]:
        orders = self.orders(deg)
        if len(coords) != len(orders):
            raise ValueError(f"degree {deg} expects {len(orders)} coordinates, got {len(coords)}")
        return tuple(int(v) % m if m else int(v) for v, m in zip(coords, orders))


@dataclass(frozen=True, eq=False)
class CohClass:
    """An integral class; arithmetic goes through the owning ring."""

    degree: int
    coords: tuple[int, ...]
    ring: "CohomologyRing" = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        return self.degree == other.degree and self.coords == other.coords

    def __hash__(self):
        return hash((self.degree, self.coords))

    def __add__(self, other: "CohClass") -> "CohClass":
        return self.ring.add(self, other)

    def __sub__(self, other: "CohClass") -> "CohClass":
        return self.ring.add(self, self.ring.scale(-1, other))

    def __neg__(self) -> "CohClass":
        return self.ring.scale(-1, self)

    def __rmul__(self, n: int) -> "CohClass":
        if isinstance(n, int):
            return self.ring.scale(n, self)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, CohClass):
            return self.ring.cup(self, other)
        if isinstance(other, int):
            return self.ring.scale(other, self)
        return NotImplemented

    def __pow__(self, n: int) -> "CohClass":
        out = self.ring.unit()
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not any(self.coords)

    def label(self) -> str:
        return self.ring.describe(self)


@dataclass
class Violation:
    check: str
    message: str

    def __str__(self):
        return f"[{self.check}] {self.message}"


@dataclass
class Report:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, check: str, message: str) -> None:
        self.violations.append(Violation(check, message))

    def extend(self, other: "Report") -> "Report":
        self.violations.extend(other.violations)
        return self

    def checks(self) -> set[str]:
        return {v.check for v in self.violations}


ProductKey = tuple[int, int, int, int]


class CohomologyRing:
    """Cup-product ring presented by structure constants.

    ``products`` maps ``(i, a, j, b)`` to the coordinates of
    ``e_{i,a} · e_{j,b}`` in degree ``i + j``.  Missing pairs are zero unless
    the reversed pair is present (then graded commutativity supplies the
    value) or one factor has degree 0 (the generator of ``H^0`` acts as the
    unit).
    """

    def __init__(self, groups: GradedGroup, products: Mapping[ProductKey, Sequence[int]],
                 orientation: Sequence[int], labels: Sequence[Sequence[str]] | None = None):
        self.groups = groups
        self.products: dict[ProductKey, tuple[int, ...]] = {}
        for (i, a, j, b), value in products.items():
            if i + j > TOP:
                raise DegreeError(f"product of degrees {i} and {j} exceeds {TOP}")
            if not (0 <= a < groups.size(i) and 0 <= b < groups.size(j)):
                raise ValueError(f"product key {(i, a, j, b)} out of range")
            self.products[(i, a, j, b)] = groups.reduce(i + j, value)
        self.orientation = groups.reduce(TOP, orientation)
        self.labels = [list(l) for l in labels] if labels is not None else None
        self._mult = {}

    # construction helpers

    def cls(self, degree: int, coords: Sequence[int]) -> CohClass:
        if degree not in DEGREES:
            raise DegreeError(f"degree {degree} outside 0..{TOP}")
        return CohClass(degree, self.groups.reduce(degree, coords), self)

    def zero(self, degree: int) -> CohClass:
        return self.cls(degree, [0] * self.groups.size(degree))

    def gen(self, degree: int, index: int) -> CohClass:
        v = [0] * self.groups.size(degree)
        v[index] = 1
        return self.cls(degree, v)

    def basis(self, degree: int) -> list[CohClass]:
        return [self.gen(degree, k) for k in range(self.groups.size(degree))]

    def free_basis(self, degree: int) -> list[CohClass]:
        return [self.gen(degree, k) for k in range(self.groups.free[degree])]

    def unit(self) -> CohClass:
        return self.gen(0, 0)

    def fundamental(self) -> CohClass:
        return self.cls(TOP, self.orientation)

    def labels_for(self, degree: int) -> list[str]:
        if self.labels is not None and len(self.labels[degree]) == self.groups.size(degree):
            return list(self.labels[degree])
        return [f"e{degree}_{k}" for k in range(self.groups.size(degree))]

    def describe(self, a: CohClass) -> str:
        names = self.labels_for(a.degree)
        terms = []
        for v, name in zip(a.coords, names):
            if v == 1:
                terms.append(name)
            elif v:
                terms.append(f"{v}{name}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    # group structure

    def add(self, a: CohClass, b: CohClass) -> CohClass:
        if a.degree != b.degree:
            raise DegreeError(f"cannot add classes of degrees {a.degree} and {b.degree}")
        return self.cls(a.degree, [x + y for x, y in zip(a.coords, b.coords)])

    def scale(self, n: int, a: CohClass) -> CohClass:
        return self.cls(a.degree, [n * x for x in a.coords])

    def is_torsion(self, a: CohClass) -> bool:
        return not any(a.coords[: self.groups.free[a.degree]])

    def split_free_torsion(self, a: CohClass) -> tuple[CohClass, CohClass]:
        f = self.groups.free[a.degree]
        free = self.cls(a.degree, list(a.coords[:f]) + [0] * (len(a.coords) - f))
        tors = self.cls(a.degree, [0] * f + list(a.coords[f:]))
        return free, tors

    def rho2_is_zero(self, a: CohClass) -> bool:
        """Whether ``a`` lies in ``2H + (odd torsion)``, i.e. reduces to 0 mod 2."""
        for v, m in zip(a.coords, self.groups.orders(a.degree)):
            if (m == 0 or m % 2 == 0) and v % 2:
                return False
        return True

    def is_two_primary(self, a: CohClass) -> bool:
        """Whether ``a`` is torsion of 2-power order."""
        if not self.is_torsion(a):
            return False
        for v, m in zip(a.coords, self.groups.orders(a.degree)):
            odd = m
            while odd and odd % 2 == 0:
                odd //= 2
            if m and v % odd:
                return False
        return True

    # multiplication

    def basis_product(self, i: int, a: int, j: int, b: int) -> tuple[int, ...]:
        if (i, a, j, b) in self.products:
            return self.products[(i, a, j, b)]
        if (j, b, i, a) in self.products:
            value = self.products[(j, b, i, a)]
            return value if (i * j) % 2 == 0 else tuple(-v for v in value)
        size = self.groups.size(i + j)
        if i == 0 and a == 0:
            return tuple(int(k == b) for k in range(size))
        if j == 0 and b == 0:
            return tuple(int(k == a) for k in range(size))
        return (0,) * size

    def _table(self, i: int, j: int):
        key = (i, j)
        if key not in self._mult:
            self._mult[key] = [[self.basis_product(i, a, j, b)
                                for b in range(self.groups.size(j))]
                               for a in range(self.groups.size(i))]
        return self._mult[key]

    def cup(self, x: CohClass, y: CohClass) -> CohClass:
        i, j = x.degree, y.degree
        if i + j > TOP:
            raise DegreeError(f"cup product of degrees {i} and {j} exceeds {TOP}")
        out = [0] * self.groups.size(i + j)
        table = self._table(i, j)
        for a, xa in enumerate(x.coords):
            if not xa:
                continue
            row = table[a]
            for b, yb in enumerate(y.coords):
                if not yb:
                    continue
                s = xa * yb
                for k, v in enumerate(row[b]):
                    if v:
                        out[k] += s * v
        return self.cls(i + j, out)

    def product(self, factors: Iterable[CohClass]) -> CohClass:
        factors = list(factors)
        if sum(f.degree for f in factors) > TOP:
            raise DegreeError("product exceeds top degree")
        out = self.unit()
        for f in factors:
            out = self.cup(out, f)
        return out

    # evaluation

    def orientation_sign(self) -> int:
        s = self.orientation[0] if self.orientation else 0
        if s not in (1, -1):
            raise ValueError("orientation is not a generator of the free part of H^10")
        return s

    def kronecker(self, a: CohClass) -> int:
        if a.degree != TOP:
            raise DegreeError(f"Kronecker pairing needs degree {TOP}, got {a.degree}")
        return a.coords[0] * self.orientation_sign()

    def pair_mod2(self, *factors: CohClass) -> int:
        if sum(f.degree for f in factors) != TOP:
            raise DegreeError(f"degrees {[f.degree for f in factors]} do not sum to {TOP}")
        return self.kronecker(self.product(factors)) % 2

    def pairing_matrix(self, i: int, free_only: bool = True) -> list[list[int]]:
        """``M[k][l] = <e_{i,k} e_{10-i,l}, [M]>``."""
        left = self.free_basis(i) if free_only else self.basis(i)
        right = self.free_basis(TOP - i) if free_only else self.basis(TOP - i)
        return [[self.kronecker(self.cup(a, b)) for b in right] for a in left]


def as_ring(M) -> CohomologyRing:
    return M if isinstance(M, CohomologyRing) else M.ring


# validators


def validate_hypotheses(M) -> Report:
    """Standing assumptions: H^0 = H^10 = Z, H^1 = H^9 = 0, H^2 free, odd torsion in H^3."""
    R = as_ring(M)
    g = R.groups
    rep = Report()
    for deg in (0, TOP):
        if g.free[deg] != 1 or g.torsion[deg]:
            rep.add("hypothesis", f"H^{deg} must be Z, got {_group_str(g, deg)}")
    for deg in (1, 9):
        if g.size(deg):
            rep.add("hypothesis", f"H^{deg} must vanish, got {_group_str(g, deg)}")
    if g.torsion[2]:
        rep.add("hypothesis", f"H^2 must be free, got {_group_str(g, 2)}")
    even = [m for m in g.torsion[3] if m % 2 == 0]
    if even:
        rep.add("hypothesis", f"H^3 has 2-torsion {even} (H_2 must have none)")
    return rep


def _group_str(g: GradedGroup, deg: int) -> str:
    parts = ["Z"] * g.free[deg] + [f"Z/{m}" for m in g.torsion[deg]]
    return " + ".join(parts) if parts else "0"


def validate_ring(M) -> Report:
    """Unit law, graded commutativity, torsion compatibility and associativity.

    Every basis pair and triple is checked exhaustively.
    """
    R = as_ring(M)
    g = R.groups
    rep = Report()
    if g.size(0) == 0:
        rep.add("unit", "H^0 is zero, no unit")
        return rep
    one = R.unit()
    names = {d: R.labels_for(d) for d in DEGREES}

    def nm(d, k):
        return names[d][k]

    for d in DEGREES:
        for k, e in enumerate(R.basis(d)):
            if R.cup(one, e) != e or R.cup(e, one) != e:
                rep.add("unit", f"1·{nm(d, k)} != {nm(d, k)}")

    for i, j in itertools.combinations_with_replacement(DEGREES, 2):
        if i + j > TOP:
            continue
        sign = -1 if (i * j) % 2 else 1
        for a, b in itertools.product(range(g.size(i)), range(g.size(j))):
            ab = R.cls(i + j, R.basis_product(i, a, j, b))
            ba = R.cls(i + j, R.basis_product(j, b, i, a))
            if ab != R.scale(sign, ba):
                rep.add("commutativity",
                        f"{nm(i, a)}·{nm(j, b)} = {R.describe(ab)} but "
                        f"{nm(j, b)}·{nm(i, a)} = {R.describe(ba)}")

    for i in DEGREES:
        for a, m in enumerate(g.orders(i)):
            if not m:
                continue
            for j in DEGREES:
                if i + j > TOP:
                    continue
                for b in range(g.size(j)):
                    prod = R.cls(i + j, R.basis_product(i, a, j, b))
                    if not R.scale(m, prod).is_zero():
                        rep.add("torsion",
                                f"{nm(i, a)} has order {m} but {m}·({nm(i, a)}·{nm(j, b)}) != 0")

    for i, j, k in itertools.product(DEGREES, repeat=3):
        if i + j + k > TOP or 0 in (i, j, k):
            continue
        for a, b, c in itertools.product(range(g.size(i)), range(g.size(j)), range(g.size(k))):
            x, y, z = R.gen(i, a), R.gen(j, b), R.gen(k, c)
            left = R.cup(R.cup(x, y), z)
            right = R.cup(x, R.cup(y, z))
            if left != right:
                rep.add("associativity",
                        f"({nm(i, a)}·{nm(j, b)})·{nm(k, c)} = {R.describe(left)} but "
                        f"{nm(i, a)}·({nm(j, b)}·{nm(k, c)}) = {R.describe(right)}")
    return rep


def validate_pd(M) -> Report:
    """Poincaré duality: rank symmetry, torsion linking symmetry, unimodular pairings."""
    R = as_ring(M)
    g = R.groups
    rep = Report()
    if g.free[TOP] == 0 or R.orientation[0] not in (1, -1):
        rep.add("orientation", f"orientation {list(R.orientation)} does not generate H^10")
        return rep
    for i in range(TOP // 2 + 1):
        if g.free[i] != g.free[TOP - i]:
            rep.add("pd-rank", f"free rank of H^{i} is {g.free[i]} but H^{TOP - i} has {g.free[TOP - i]}")
    for i in range(1, 6):
        a, b = sorted(g.torsion[i]), sorted(g.torsion[TOP + 1 - i])
        if a != b:
            rep.add("pd-torsion", f"torsion of H^{i} is {a} but torsion of H^{TOP + 1 - i} is {b}")
    for i in range(TOP // 2 + 1):
        if g.free[i] != g.free[TOP - i]:
            continue
        mat = R.pairing_matrix(i)
        if not mat:
            continue
        dt = exactlin.det(mat)
        if abs(dt) != 1:
            rep.add("unimodularity", f"pairing H^{i} x H^{TOP - i} has determinant {dt}")
    # mod-2 pairing between reductions of H^2 and H^8
    dim2 = g.free[2] + sum(1 for m in g.torsion[2] if m % 2 == 0)
    dim8 = g.free[8] + sum(1 for m in g.torsion[8] if m % 2 == 0)
    mat = [[v % 2 for v in row] for row in R.pairing_matrix(2, free_only=False)]
    rank = exactlin.f2_rank(exactlin.F2Matrix.from_rows(mat, g.size(8))) if mat else 0
    if rank != dim2 or rank != dim8:
        rep.add("pd-mod2",
                f"mod-2 pairing H^2 x H^8 has rank {rank}, dimensions {dim2} and {dim8}")
    return rep


# basis changes


@dataclass(frozen=True)
class BasisChange:
    """Automorphism of one degree's group.

    New free generator ``k`` is ``sum_j free[j][k] e_j + sum_t shear[t][k] t_t`` and
    new torsion generator ``t`` is ``units[t] * t_t``.
    """

    free: tuple[tuple[int, ...], ...]
    shear: tuple[tuple[int, ...], ...]
    units: tuple[int, ...]

    @classmethod
    def identity(cls, groups: GradedGroup, deg: int) -> "BasisChange":
        f, t = groups.free[deg], len(groups.torsion[deg])
        return cls(tuple(map(tuple, exactlin.identity(f))), tuple((0,) * f for _ in range(t)), (1,) * t)

    def new_basis_coords(self, groups: GradedGroup, deg: int) -> list[list[int]]:
        f = groups.free[deg]
        out = []
        for k in range(f):
            out.append([self.free[j][k] for j in range(f)] + [row[k] for row in self.shear])
        for t, u in enumerate(self.units):
            v = [0] * groups.size(deg)
            v[f + t] = u
            out.append(v)
        return out

    def to_new(self, groups: GradedGroup, deg: int, coords: Sequence[int]) -> list[int]:
        f = groups.free[deg]
        orders = groups.torsion[deg]
        vf, vt = list(coords[:f]), list(coords[f:])
        wf = exactlin.solve_integral([list(r) for r in self.free], vf, f) if f else []
        if wf is None:
            raise ValueError("free part of basis change is not unimodular")
        wt = []
        for t, m in enumerate(orders):
            shifted = vt[t] - sum(self.shear[t][k] * wf[k] for k in range(f))
            wt.append((shifted * pow(self.units[t], -1, m)) % m)
        return wf + wt


def random_basis_change(groups: GradedGroup, deg: int, rng: random.Random,
                        steps: int = 6) -> BasisChange:
    f = groups.free[deg]
    G = exactlin.identity(f)
    for _ in range(steps if f > 1 else 0):
        i, j = rng.sample(range(f), 2)
        q = rng.choice([-2, -1, 1, 2])
        for row in G:
            row[j] += q * row[i]
    for k in range(f):
        if rng.random() < 0.5:
            for row in G:
                row[k] = -row[k]
    if f > 1 and rng.random() < 0.5:
        i, j = rng.sample(range(f), 2)
        for row in G:
            row[i], row[j] = row[j], row[i]
    shear = tuple(tuple(rng.randrange(m) for _ in range(f)) for m in groups.torsion[deg])
    units = tuple(rng.choice([u for u in range(1, m) if _gcd(u, m) == 1])
                  for m in groups.torsion[deg])
    return BasisChange(tuple(map(tuple, G)), shear, units)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def change_basis(R: CohomologyRing, changes: Mapping[int, BasisChange]):
    """Re-present ``R`` in a new basis.

    Returns the new ring and a function mapping classes of ``R`` to it.
    Degree 0 is never changed so the unit stays the unit.
    """
    g = R.groups
    ch = {d: changes.get(d, BasisChange.identity(g, d)) if d else BasisChange.identity(g, 0)
          for d in DEGREES}
    new_basis = {d: [R.cls(d, v) for v in ch[d].new_basis_coords(g, d)] for d in DEGREES}

    def convert(a: CohClass) -> list[int]:
        return ch[a.degree].to_new(g, a.degree, a.coords)

    products = {}
    for i, j in itertools.combinations_with_replacement(range(1, TOP + 1), 2):
        if i + j > TOP:
            continue
        for a, x in enumerate(new_basis[i]):
            for b, y in enumerate(new_basis[j]):
                if i == j and b < a:
                    continue
                v = convert(R.cup(x, y))
                if any(v):
                    products[(i, a, j, b)] = v
    new = CohomologyRing(g, products, convert(R.fundamental()))

    def mapper(a: CohClass) -> CohClass:
        return new.cls(a.degree, convert(a))

    return new, mapper
