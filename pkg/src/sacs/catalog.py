"""Built-in example manifolds, plus user ``.m10`` files from ``$SACS_CATALOG_DIR``."""

from __future__ import annotations

import os
from pathlib import Path

from . import io
from .charclass import ManifoldData

ENV_VAR = "SACS_CATALOG_DIR"


def _groups(free: dict[int, int], torsion: dict[int, list[int]] | None = None) -> list[dict]:
    torsion = torsion or {}
    return [{"free": free.get(d, 0), "torsion": torsion.get(d, [])} for d in range(11)]


def _labels(by_degree: dict[int, list[str]]) -> list[list[str]]:
    return [by_degree.get(d, []) for d in range(11)]


def _prod(i, j, a, b, value):
    return {"i": i, "j": j, "a": a, "b": b, "value": value}


_CP5 = {
    "name": "cp5",
    "groups": _groups({0: 1, 2: 1, 4: 1, 6: 1, 8: 1, 10: 1}),
    "basis_labels": _labels({0: ["1"], 2: ["h"], 4: ["h2"], 6: ["h3"], 8: ["h4"], 10: ["h5"]}),
    "products": [_prod(2, 2, "h", "h", [1]), _prod(2, 4, "h", "h2", [1]),
                 _prod(2, 6, "h", "h3", [1]), _prod(2, 8, "h", "h4", [1]),
                 _prod(4, 4, "h2", "h2", [1]), _prod(4, 6, "h2", "h3", [1])],
    "orientation": [1],
    # p(CP^5) = (1 + h^2)^6, w(CP^5) = (1 + h)^6 mod 2
    "char": {"c": [0], "q1": [3], "w6": {"lift": [0]}, "p1": [6], "p2": [15]},
    "bundles": [
        {"name": "trivial", "d0": [0], "q1p": [0], "w6": {"lift": [0]}, "w8lift": [0], "p1": [0]},
        {"name": "realified_hopf", "d0": [1], "q1p": [0], "w6": {"lift": [0]}, "w8lift": [0],
         "p1": [1]},
        {"name": "tangent", "d0": [0], "q1p": [3], "w6": {"lift": [0]}, "w8lift": [9], "p1": [6]},
    ],
}

_S10 = {
    "name": "s10",
    "groups": _groups({0: 1, 10: 1}),
    "basis_labels": _labels({0: ["1"], 10: ["mu"]}),
    "products": [],
    "orientation": [1],
    "char": {"c": [], "q1": [], "w6": {"lift": []}},
    "bundles": [{"name": "trivial", "d0": [], "q1p": [], "w6": {"lift": []}, "w8lift": []}],
}

_S4XS6 = {
    "name": "s4xs6",
    "groups": _groups({0: 1, 4: 1, 6: 1, 10: 1}),
    "basis_labels": _labels({0: ["1"], 4: ["s4"], 6: ["s6"], 10: ["s4s6"]}),
    "products": [_prod(4, 6, "s4", "s6", [1])],
    "orientation": [1],
    "char": {"c": [], "q1": [0], "w6": {"lift": [0]}, "p1": [0], "p2": []},
    "bundles": [],
}

_GADGET_A = {
    "name": "gadget_a",
    "groups": _groups({0: 1, 2: 1, 4: 1, 6: 1, 8: 1, 10: 1}),
    "basis_labels": _labels({0: ["1"], 2: ["x"], 4: ["y"], 6: ["y'"], 8: ["x'"], 10: ["mu"]}),
    "products": [_prod(2, 2, "x", "x", [2]), _prod(2, 4, "x", "y", [1]),
                 _prod(2, 6, "x", "y'", [2]), _prod(2, 8, "x", "x'", [1]),
                 _prod(4, 4, "y", "y", [1]), _prod(4, 6, "y", "y'", [1])],
    "orientation": [1],
    "char": {"c": [0], "q1": [1], "w6": {"lift": [0]}},
    "bundles": [
        {"name": "flat-ish", "d0": [0], "q1p": [1], "w6": {"lift": [0]}, "w8lift": [0]},
    ],
}

_CP2XS6 = {
    "name": "cp2xs6",
    "groups": _groups({0: 1, 2: 1, 4: 1, 6: 1, 8: 1, 10: 1}),
    "basis_labels": _labels({0: ["1"], 2: ["h"], 4: ["h2"], 6: ["s"], 8: ["hs"], 10: ["h2s"]}),
    "products": [_prod(2, 2, "h", "h", [1]), _prod(2, 6, "h", "s", [1]),
                 _prod(2, 8, "h", "hs", [1]), _prod(4, 6, "h2", "s", [1])],
    "orientation": [1],
    # w2 = h, p1 = 3h^2, q1 = (p1 - c^2) / 2 = h^2
    "char": {"c": [1], "q1": [1], "w6": {"lift": [0]}, "p1": [3], "p2": [0]},
    "bundles": [],
}



def _cp2xcp3() -> dict:
    """Z[a, b] / (a^3, b^4) with monomial bases, a^i b^j ordered by falling i."""
    mono = {d: [(i, d // 2 - i) for i in (2, 1, 0) if 0 <= d // 2 - i <= 3] if d % 2 == 0 else []
            for d in range(11)}
    name = {m: "".join(f"{v}{e if e > 1 else ''}" for v, e in zip("ab", m) if e) or "1"
            for ms in mono.values() for m in ms}
    products = []
    for i in range(2, 11, 2):
        for j in range(i, 11 - i, 2):
            for ka, ma in enumerate(mono[i]):
                for kb, mb in enumerate(mono[j]):
                    if i == j and kb < ka:
                        continue
                    m = (ma[0] + mb[0], ma[1] + mb[1])
                    if m in mono[i + j]:
                        value = [int(m == t) for t in mono[i + j]]
                        products.append(_prod(i, j, name[ma], name[mb], value))
    return {
        "name": "cp2xcp3",
        "groups": _groups({d: len(mono[d]) for d in range(11)}),
        "basis_labels": _labels({d: [name[m] for m in mono[d]] for d in range(11)}),
        "products": products,
        "orientation": [1],
        # p = (1 + 3a^2)(1 + b^2)^4, w = (1 + a)^3 (1 + b)^4; c = a, q1 = (p1 - a^2) / 2
        "char": {"c": [1, 0], "q1": [1, 0, 2], "w6": {"lift": [0, 0, 0]},
                 "p1": [3, 0, 4], "p2": [12, 0]},
        "bundles": [
            {"name": "hopf_a", "d0": [1, 0], "q1p": [0, 0, 0], "w6": {"lift": [0, 0, 0]},
             "w8lift": [0, 0], "p1": [1, 0, 0]},
        ],
    }


NOTES = {
    "gadget_a": "decision-logic test data, realizability as a smooth manifold unknown",
}

_BUILTIN = (_CP5, _S10, _S4XS6, _GADGET_A, _CP2XS6, _cp2xcp3())


def builtin() -> dict[str, ManifoldData]:
    out = {}
    for doc in _BUILTIN:
        M = io.from_dict(doc)
        out[M.name] = M.replace(note=NOTES.get(M.name, ""))
    return out


def user_entries(directory: str | Path | None = None) -> dict[str, ManifoldData]:
    directory = directory if directory is not None else os.environ.get(ENV_VAR)
    if not directory:
        return {}
    out = {}
    for path in sorted(Path(directory).glob(f"*{io.SUFFIX}")):
        M = io.load(path)
        out[M.name] = M
    return out


def catalog() -> dict[str, ManifoldData]:
    """Built-in entries, overridden or extended by ``$SACS_CATALOG_DIR``."""
    out = builtin()
    out.update(user_entries())
    return out


def get(name: str) -> ManifoldData:
    entries = catalog()
    if name not in entries:
        raise KeyError(f"no catalog entry {name!r}; known: {', '.join(sorted(entries))}")
    return entries[name]
