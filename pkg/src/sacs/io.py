"""Reading and writing ``.m10`` manifold files.

A file is a JSON object with keys, in canonical order::

    name, groups, basis_labels?, products, orientation, char, bundles?

``groups`` has one ``{"free": n, "torsion": [m1, ...]}`` entry per degree
0..10.  ``products`` lists each unordered pair of basis elements at most once
(``i <= j``), omitted pairs being zero; ``a``/``b`` are basis indices or labels
from ``basis_labels``.  Every class is a coordinate array in its degree's
basis.  ``char.w6`` and each bundle's ``w6`` are either ``{"lift": coords}`` or
the string ``"nonliftable"``.

``parse`` does structural checks only and reports the JSON path of the first
problem; the ring and characteristic-class validators run separately.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .charclass import BundleCharData, ManifoldCharData, ManifoldData, W6Spec
from .cohomology import TOP, CohClass, CohomologyRing, GradedGroup
from .errors import InputError

SUFFIX = ".m10"
TOP_KEYS = ("name", "groups", "basis_labels", "products", "orientation", "char", "bundles")
REQUIRED = ("name", "groups", "products", "orientation", "char")
CHAR_KEYS = ("c", "q1", "w6", "p1", "p2")
BUNDLE_KEYS = ("name", "d0", "q1p", "w6", "w8lift", "p1")
PRODUCT_KEYS = ("i", "j", "a", "b", "value")


def _int(v: Any, path: str, minimum: int | None = None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"expected an integer, got {json.dumps(v)}", path)
    if minimum is not None and v < minimum:
        raise InputError(f"expected an integer >= {minimum}, got {v}", path)
    return v


def _obj(v: Any, path: str, allowed: tuple[str, ...], required: tuple[str, ...]) -> dict:
    if not isinstance(v, dict):
        raise InputError(f"expected an object, got {type(v).__name__}", path)
    for k in v:
        if k not in allowed:
            raise InputError(f"unknown key {k!r}", _join(path, k))
    for k in required:
        if k not in v:
            raise InputError(f"missing key {k!r}", _join(path, k))
    return v


def _list(v: Any, path: str, length: int | None = None) -> list:
    if not isinstance(v, list):
        raise InputError(f"expected an array, got {type(v).__name__}", path)
    if length is not None and len(v) != length:
        raise InputError(f"expected {length} entries, got {len(v)}", path)
    return v


def _join(path: str, key: str | int) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def parse(document: str | bytes) -> ManifoldData:
    """Parse a ``.m10`` document into manifold data with its bundles."""
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return from_dict(raw)


def from_dict(raw: Any) -> ManifoldData:
    doc = _obj(raw, "", TOP_KEYS, REQUIRED)
    name = doc["name"]
    if not isinstance(name, str) or not name:
        raise InputError("expected a non-empty string", "name")

    groups_raw = _list(doc["groups"], "groups", TOP + 1)
    free, torsion = [], []
    for deg, g in enumerate(groups_raw):
        p = _join("groups", deg)
        _obj(g, p, ("free", "torsion"), ("free", "torsion"))
        free.append(_int(g["free"], _join(p, "free"), 0))
        tors = _list(g["torsion"], _join(p, "torsion"))
        ms = []
        for k, m in enumerate(tors):
            m = _int(m, _join(_join(p, "torsion"), k))
            if m < 2:
                raise InputError(f"torsion coefficient {m} < 2", _join(_join(p, "torsion"), k))
            if ms and m % ms[-1]:
                raise InputError(f"{m} is not divisible by {ms[-1]}: torsion must be in "
                                 "divisibility order", _join(_join(p, "torsion"), k))
            ms.append(m)
        torsion.append(ms)
    groups = GradedGroup.from_lists(free, torsion)

    labels = None
    if "basis_labels" in doc:
        labels = []
        lab_raw = _list(doc["basis_labels"], "basis_labels", TOP + 1)
        for deg, row in enumerate(lab_raw):
            p = _join("basis_labels", deg)
            row = _list(row, p, groups.size(deg))
            for k, s in enumerate(row):
                if not isinstance(s, str) or not s:
                    raise InputError("expected a non-empty string", _join(p, k))
            if len(set(row)) != len(row):
                raise InputError("duplicate label", p)
            labels.append(list(row))

    def coords(v: Any, deg: int, path: str) -> list[int]:
        v = _list(v, path)
        if len(v) != groups.size(deg):
            raise InputError(f"length mismatch: degree {deg} has {groups.size(deg)} "
                             f"basis elements, got {len(v)} coordinates", path)
        return [_int(x, _join(path, k)) for k, x in enumerate(v)]

    def index(ref: Any, deg: int, path: str) -> int:
        if isinstance(ref, str):
            if labels is None or ref not in labels[deg]:
                raise InputError(f"unknown label {ref!r} in degree {deg}", path)
            return labels[deg].index(ref)
        k = _int(ref, path, 0)
        if k >= groups.size(deg):
            raise InputError(f"index {k} out of range for degree {deg} "
                             f"({groups.size(deg)} basis elements)", path)
        return k

    products: dict[tuple[int, int, int, int], list[int]] = {}
    seen = set()
    for n, entry in enumerate(_list(doc["products"], "products")):
        p = _join("products", n)
        _obj(entry, p, PRODUCT_KEYS, PRODUCT_KEYS)
        i = _int(entry["i"], _join(p, "i"), 0)
        j = _int(entry["j"], _join(p, "j"), 0)
        if i > j:
            raise InputError(f"products must have i <= j, got i={i}, j={j}", p)
        if i + j > TOP:
            raise InputError(f"degree {i} + {j} exceeds {TOP}", p)
        a = index(entry["a"], i, _join(p, "a"))
        b = index(entry["b"], j, _join(p, "b"))
        key = (i, a, j, b)
        unordered = (i, min(a, b), j, max(a, b)) if i == j else key
        if unordered in seen:
            raise InputError("product listed twice", p)
        seen.add(unordered)
        products[key] = coords(entry["value"], i + j, _join(p, "value"))

    orientation = coords(doc["orientation"], TOP, "orientation")
    ring = CohomologyRing(groups, products, orientation, labels)

    def cls(v: Any, deg: int, path: str) -> CohClass:
        return ring.cls(deg, coords(v, deg, path))

    def w6(v: Any, path: str) -> W6Spec:
        if v == "nonliftable":
            return W6Spec.nonliftable()
        _obj(v, path, ("lift",), ("lift",))
        return W6Spec(cls(v["lift"], 6, _join(path, "lift")))

    def opt(d: dict, key: str, deg: int, path: str) -> CohClass | None:
        return cls(d[key], deg, _join(path, key)) if key in d else None

    ch = _obj(doc["char"], "char", CHAR_KEYS, ("c", "q1", "w6"))
    char = ManifoldCharData(cls(ch["c"], 2, "char.c"), cls(ch["q1"], 4, "char.q1"),
                            w6(ch["w6"], "char.w6"), opt(ch, "p1", 4, "char"),
                            opt(ch, "p2", 8, "char"))

    bundles = []
    names = set()
    for n, b in enumerate(_list(doc.get("bundles", []), "bundles")):
        p = _join("bundles", n)
        _obj(b, p, BUNDLE_KEYS, BUNDLE_KEYS[:5])
        bname = b["name"]
        if not isinstance(bname, str) or not bname:
            raise InputError("expected a non-empty string", _join(p, "name"))
        if bname in names:
            raise InputError(f"duplicate bundle name {bname!r}", _join(p, "name"))
        names.add(bname)
        bundles.append(BundleCharData(bname, cls(b["d0"], 2, _join(p, "d0")),
                                      cls(b["q1p"], 4, _join(p, "q1p")),
                                      w6(b["w6"], _join(p, "w6")),
                                      cls(b["w8lift"], 8, _join(p, "w8lift")),
                                      opt(b, "p1", 4, p)))
    return ManifoldData(name, ring, char, tuple(bundles))


def load(path: str | Path) -> ManifoldData:
    return parse(Path(path).read_text(encoding="utf-8"))


# serialization


def _dump(v: Any) -> str:
    return json.dumps(v, separators=(",", ":"), ensure_ascii=False)


def _w6(spec: W6Spec) -> Any:
    return "nonliftable" if spec.lift is None else {"lift": list(spec.lift.coords)}


def canonical_products(ring: CohomologyRing) -> list[tuple[int, int, int, int, tuple[int, ...]]]:
    """Stored products with ``i <= j`` (``a <= b`` within a degree), zeros dropped, sorted."""
    out = {}
    for (i, a, j, b), value in ring.products.items():
        sign = 1
        if i > j or (i == j and a > b):
            i, a, j, b = j, b, i, a
            if (i * j) % 2:
                sign = -1
        value = ring.groups.reduce(i + j, [sign * v for v in value])
        if any(value):
            out[(i, j, a, b)] = value
    return [(i, j, a, b, v) for (i, j, a, b), v in sorted(out.items())]


def to_dict(M: ManifoldData) -> dict:
    ring = M.ring
    g = ring.groups
    labels = ring.labels

    def ref(deg: int, k: int):
        return labels[deg][k] if labels is not None else k

    doc: dict[str, Any] = {"name": M.name,
                           "groups": [{"free": g.free[d], "torsion": list(g.torsion[d])}
                                      for d in range(TOP + 1)]}
    if labels is not None:
        doc["basis_labels"] = [list(l) for l in labels]
    doc["products"] = [{"i": i, "j": j, "a": ref(i, a), "b": ref(j, b), "value": list(v)}
                       for i, j, a, b, v in canonical_products(ring)]
    doc["orientation"] = list(ring.orientation)
    ch = M.char
    char: dict[str, Any] = {"c": list(ch.c.coords), "q1": list(ch.q1.coords), "w6": _w6(ch.w6)}
    if ch.p1 is not None:
        char["p1"] = list(ch.p1.coords)
    if ch.p2 is not None:
        char["p2"] = list(ch.p2.coords)
    doc["char"] = char
    bundles = []
    for b in M.bundles:
        bd: dict[str, Any] = {"name": b.name, "d0": list(b.d0.coords), "q1p": list(b.q1p.coords),
                              "w6": _w6(b.w6), "w8lift": list(b.w8lift.coords)}
        if b.p1 is not None:
            bd["p1"] = list(b.p1.coords)
        bundles.append(bd)
    doc["bundles"] = bundles
    return doc


def serialize(M: ManifoldData) -> str:
    """Canonical text: schema key order, one product or bundle per line, no extra spaces."""
    doc = to_dict(M)
    lines = ["{"]
    keys = [k for k in TOP_KEYS if k in doc]
    for n, key in enumerate(keys):
        sep = "," if n < len(keys) - 1 else ""
        value = doc[key]
        if key in ("products", "bundles") and value:
            lines.append(f"{_dump(key)}:[")
            lines.extend(_dump(v) + ("," if m < len(value) - 1 else "") for m, v in enumerate(value))
            lines.append("]" + sep)
        else:
            lines.append(f"{_dump(key)}:{_dump(value)}{sep}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def save(M: ManifoldData, path: str | Path) -> None:
    Path(path).write_text(serialize(M), encoding="utf-8")
