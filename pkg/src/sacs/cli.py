"""Command-line front end.

Exit codes: 0 YES / valid, 1 NO, 2 input or validator error (including a
fast path disagreeing with the main path), 3 integrality violation, 4 usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import TextIO

from . import catalog as cat
from . import io
from .charclass import ManifoldData, validate_all
from .cohomology import TOP
from .decide import DEFAULT_SEARCH_BOUND, Verdict, compute_D, decide_all, decide_bundle, split_zx
from .errors import InconsistentInput, InputError, IntegralityViolation, SacsError, SearchBoundError

EXIT_YES, EXIT_NO, EXIT_INPUT, EXIT_INTEGRALITY, EXIT_USAGE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = _Parser(prog="sacs", description="Decide stable almost complex structures on 10-manifolds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_ in (("validate", "run all structural validators"),
                        ("dm", "print the generators of D(M) with their z_x / t_x split"),
                        ("decide", "decide whether TM admits a stable complex structure")):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("input", help=f"path to a {io.SUFFIX} file or a catalog name")

    sp = sub.add_parser("decide-bundle", parents=[common],
                        help="decide whether a real bundle admits a stable complex structure")
    sp.add_argument("input")
    sp.add_argument("--bundle", required=True,
                    help="bundle name from the file ('tangent' always available)")
    sp.add_argument("--search-bound", type=int, default=DEFAULT_SEARCH_BOUND,
                    help="largest rank of H^2 for the Spin^c class search (default %(default)s)")

    cp = sub.add_parser("catalog", parents=[common], help="list, show or export catalog entries")
    csub = cp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    csub.add_parser("list", parents=[common])
    for action in ("show", "export"):
        a = csub.add_parser(action, parents=[common])
        a.add_argument("name")
    return p


def resolve(ref: str) -> ManifoldData:
    path = Path(ref)
    if path.is_file():
        return io.load(path)
    entries = cat.catalog()
    if ref in entries:
        return entries[ref]
    raise InputError(f"no such file or catalog entry: {ref!r}")


class Output:
    """Collects one command's result for text or JSON rendering."""

    def __init__(self, fmt: str, stream: TextIO):
        self.fmt = fmt
        self.stream = stream
        self.lines: list[str] = []
        self.data: dict = {}

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def flush(self, code: int) -> int:
        if self.fmt == "json":
            self.data["exit_code"] = code
            self.stream.write(json.dumps(self.data, indent=2, sort_keys=True) + "\n")
        else:
            self.stream.write("\n".join(self.lines) + "\n")
        return code


def run(argv: list[str] | None = None, stream: TextIO | None = None) -> int:
    stream = stream or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(str(exc))
        return EXIT_USAGE
    out = Output(args.format, stream)
    out.data["command"] = args.command
    try:
        if args.command == "catalog":
            return _catalog(args, out)
        M = resolve(args.input)
        out.data["manifold"] = M.name
        out.text(f"manifold: {M.name}")
        rep = validate_all(M)
        out.data["valid"] = rep.ok
        out.data["violations"] = [{"check": v.check, "message": v.message} for v in rep.violations]
        if args.command == "validate" or not rep.ok:
            if rep.ok:
                out.text("valid: all checks passed")
                return out.flush(EXIT_YES)
            out.text(f"invalid: {len(rep.violations)} violation(s)")
            for v in rep.violations:
                out.text(f"  {v}")
            return out.flush(EXIT_INPUT)
        if args.command == "dm":
            return _dm(M, out)
        if args.command == "decide":
            return _decide(M, out)
        return _decide_bundle(M, args, out)
    except IntegralityViolation as exc:
        out.data["error"] = {"kind": "integrality", "message": str(exc)}
        if exc.d is not None:
            out.data["error"].update(d=list(exc.d.coords), x=list(exc.x.coords), N=exc.value)
        out.text(f"integrality violation: {exc}")
        out.text("the input cannot be the data of a closed smooth manifold")
        return out.flush(EXIT_INTEGRALITY)
    except (InputError, InconsistentInput, SearchBoundError, KeyError, OSError) as exc:
        kind = type(exc).__name__
        msg = exc.args[0] if isinstance(exc, KeyError) else str(exc)
        out.data["error"] = {"kind": kind, "message": msg}
        out.text(f"error ({kind}): {msg}")
        return out.flush(EXIT_INPUT)
    except SacsError as exc:
        out.data["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        out.text(f"error: {exc}")
        return out.flush(EXIT_INPUT)


def _catalog(args, out: Output) -> int:
    entries = cat.catalog()
    if args.action == "list":
        out.data["entries"] = [{"name": n, "note": m.note} for n, m in sorted(entries.items())]
        for n, m in sorted(entries.items()):
            out.text(f"{n}" + (f"  ({m.note})" if m.note else ""))
        return out.flush(EXIT_YES)
    if args.name not in entries:
        raise InputError(f"no catalog entry {args.name!r}")
    M = entries[args.name]
    if args.action == "export":
        if out.fmt == "json":
            out.data["document"] = io.to_dict(M)
            return out.flush(EXIT_YES)
        out.stream.write(io.serialize(M))
        return EXIT_YES
    R = M.ring
    out.data["document"] = io.to_dict(M)
    out.data["note"] = M.note
    out.text(f"{M.name}" + (f": {M.note}" if M.note else ""))
    for d in range(TOP + 1):
        g = R.groups
        if g.size(d):
            parts = ["Z"] * g.free[d] + [f"Z/{m}" for m in g.torsion[d]]
            out.text(f"  H^{d} = {' + '.join(parts)}  basis {', '.join(R.labels_for(d))}")
    ch = M.char
    out.text(f"  c = {ch.c.label()}, q1 = {ch.q1.label()}, "
             f"w6 = {'nonliftable' if ch.w6.lift is None else 'lift ' + ch.w6.lift.label()}")
    for b in M.bundles:
        out.text(f"  bundle {b.name}: d0 = {b.d0.label()}, q1' = {b.q1p.label()}")
    return out.flush(EXIT_YES)


def _cls(a) -> dict:
    return {"coords": list(a.coords), "label": a.label()}


def _dm(M: ManifoldData, out: Output) -> int:
    D = compute_D(M)
    rows = []
    out.text("D(M) generators:")
    for x in D.generators:
        z, t = split_zx(M, x)
        rows.append({"x": _cls(x), "z": _cls(z), "t": _cls(t)})
        out.text(f"  x = {x.label():<12} z_x = {z.label():<12} t_x = {t.label()}")
    if not D.generators:
        out.text("  (none: H^2 = 0)")
    out.data["generators"] = rows
    out.data["kernel_basis"] = [list(v) for v in D.kernel]
    return out.flush(EXIT_YES)


def _rows_text(out: Output, v: Verdict) -> None:
    for r in v.rows:
        extra = f"   A = {r.value}" if r.value is not None else ""
        z = f"   z_x = {r.z.label()}" if r.z is not None else ""
        out.text(f"  x = {r.x.label():<10}{z}   lhs {r.lhs}   rhs {r.rhs}{extra}   "
                 f"{'ok' if r.holds else 'FAILS'}")


def _verdict_json(v: Verdict) -> dict:
    d = v.to_dict()
    d["rows_labelled"] = [{"x": r.x.label(), "lhs": r.lhs, "rhs": r.rhs} for r in v.rows]
    if v.witness is not None:
        d["witness_label"] = v.witness.x.label()
    if v.d is not None:
        d["d_label"] = v.d.label()
    return d


def _decide(M: ManifoldData, out: Output) -> int:
    dec = decide_all(M)
    v = dec.main
    out.data["verdict"] = _verdict_json(v)
    out.data["fast_paths"] = {k: _verdict_json(f) for k, f in dec.fast.items()}
    out.data["disagreements"] = dec.disagreements
    out.text(f"verdict: {'YES' if v.answer else 'NO'} (main path)")
    if v.gate:
        out.text(f"  gate: {v.gate}")
    if v.rows:
        out.text("generator checks (lhs = <w4^2 x>, rhs = <z_x w6>):")
        _rows_text(out, v)
    elif v.gate is None:
        out.text("  D(M) has no generators; the condition holds vacuously")
    if v.witness is not None:
        out.text(f"witness: x = {v.witness.x.label()} (lhs {v.witness.lhs}, rhs {v.witness.rhs})")
    for name, f in dec.fast.items():
        agree = "agrees" if f.answer == v.answer else "DISAGREES"
        out.text(f"fast path {name}: {'YES' if f.answer else 'NO'} ({agree})")
    if dec.disagreements:
        out.text("internal error: fast path and main path disagree")
        return out.flush(EXIT_INPUT)
    return out.flush(EXIT_YES if v.answer else EXIT_NO)


def _decide_bundle(M: ManifoldData, args, out: Output) -> int:
    if args.bundle == "tangent" and all(b.name != "tangent" for b in M.bundles):
        xi = M.tangent_bundle()
    else:
        xi = M.bundle(args.bundle)
    v = decide_bundle(M, xi, search_bound=args.search_bound)
    out.data["bundle"] = xi.name
    out.data["verdict"] = _verdict_json(v)
    out.text(f"bundle: {xi.name}")
    out.text(f"verdict: {'YES' if v.answer else 'NO'}")
    if v.gate:
        out.text(f"  gate: {v.gate}")
    if v.d is not None:
        out.text(f"chosen d = {v.d.label()}")
        _rows_text(out, v)
    for d, r in v.attempts:
        out.text(f"  d = {d.label():<10} fails at x = {r.x.label()} (A mod 2 = {r.lhs}, rhs {r.rhs})")
    return out.flush(EXIT_YES if v.answer else EXIT_NO)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
