"""Mutant generators shared by the test modules."""

from __future__ import annotations

import copy
import random

from sacs import io
from sacs.charclass import ManifoldData, map_manifold
from sacs.cohomology import BasisChange, change_basis

# degree pairs whose torsion is linked by Poincaré duality; H^3 (hence H^8) must stay odd
PAD_PAIRS = ((4, 7), (5, 6), (3, 8))


def _coord_fields(doc: dict):
    """Yield (degree, list) for every coordinate array in a document, mutably."""
    for p in doc["products"]:
        yield p["i"] + p["j"], p["value"]
    yield 10, doc["orientation"]
    ch = doc["char"]
    for key, deg in (("c", 2), ("q1", 4), ("p1", 4), ("p2", 8)):
        if key in ch:
            yield deg, ch[key]
    if isinstance(ch["w6"], dict):
        yield 6, ch["w6"]["lift"]
    for b in doc.get("bundles", []):
        for key, deg in (("d0", 2), ("q1p", 4), ("w8lift", 8), ("p1", 4)):
            if key in b:
                yield deg, b[key]
        if isinstance(b["w6"], dict):
            yield 6, b["w6"]["lift"]


def pad_doc(doc: dict, pair: tuple[int, int], m: int) -> dict:
    """Add a Z/m summand to both degrees of ``pair`` with all products through it zero."""
    doc = copy.deepcopy(doc)
    for deg in pair:
        tors = doc["groups"][deg]["torsion"]
        assert not tors or m % tors[-1] == 0
        tors.append(m)
        if "basis_labels" in doc:
            doc["basis_labels"][deg].append(f"t{deg}_{len(tors)}")
    for deg, arr in _coord_fields(doc):
        if deg in pair:
            arr.append(0)
    return doc


def shift_doc(doc: dict, rng: random.Random) -> dict:
    """Move characteristic lifts by random torsion classes.

    q1 moves by t with p1 moving by 2t; torsion generators multiply to zero,
    so every validator still passes and no verdict can change.
    """
    doc = copy.deepcopy(doc)
    groups = doc["groups"]

    def shift(holder, key, deg, twin=None):
        f = groups[deg]["free"]
        t = [rng.randrange(m) for m in groups[deg]["torsion"]]
        arr = holder[key]
        holder[key] = arr[:f] + [x + y for x, y in zip(arr[f:], t)]
        if twin is not None and twin in holder:
            tw = holder[twin]
            holder[twin] = tw[:f] + [x + 2 * y for x, y in zip(tw[f:], t)]

    ch = doc["char"]
    shift(ch, "q1", 4, "p1")
    if isinstance(ch["w6"], dict):
        shift(ch["w6"], "lift", 6)
    for b in doc.get("bundles", []):
        shift(b, "q1p", 4, "p1")
        shift(b, "w8lift", 8)
        if isinstance(b["w6"], dict):
            shift(b["w6"], "lift", 6)
    return doc


def torsion_shear(M: ManifoldData, rng: random.Random) -> ManifoldData:
    """Replace each free generator e by e + t for random torsion t (free coordinates unchanged)."""
    g = M.ring.groups
    changes = {}
    for d in range(1, 11):
        f = g.free[d]
        ident = tuple(tuple(int(i == j) for j in range(f)) for i in range(f))
        shear = tuple(tuple(rng.randrange(m) for _ in range(f)) for m in g.torsion[d])
        changes[d] = BasisChange(ident, shear, (1,) * len(g.torsion[d]))
    ring, f = change_basis(M.ring, changes)
    return map_manifold(M, f, ring)


def random_padding(M: ManifoldData, rng: random.Random, pads: int | None = None) -> ManifoldData:
    """A torsion-padded, randomly sheared mutant of ``M`` (still valid, same verdicts)."""
    doc = io.to_dict(M)
    for _ in range(pads if pads is not None else rng.randint(1, 2)):
        pair = rng.choice(PAD_PAIRS)
        last = max((doc["groups"][d]["torsion"][-1] for d in pair if doc["groups"][d]["torsion"]),
                   default=1)
        choices = [m for m in range(2, 13) if m % last == 0 and (pair != (3, 8) or m % 2)]
        if not choices:
            continue
        doc = pad_doc(doc, pair, rng.choice(choices[:4]))
    doc = shift_doc(doc, rng)
    doc["name"] = M.name + "+pad"
    return torsion_shear(io.from_dict(doc), rng)
