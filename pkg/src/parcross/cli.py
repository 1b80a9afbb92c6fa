"""Command-line front end.

Exit codes: 0 pass, 1 an exact identity failed, 2 unknown, 3 bad input,
4 an enumeration cap was hit.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import __version__
from .coordinate_algebra import DEFAULT_CAP, Context
from .errors import EnumerationCapError, ParseError
from .expressions import infer_context, parse_boolfn, parse_cp, parse_point
from .group_words import FreeGroup, group_from_json
from .partial_action import alpha
from .presentations import (Presentation, build_ck, build_graph, check_morphism,
                            check_partial_isometries, dualize_ck, GeneratorMap, load_graph,
                            load_matrices, permutation_morphism)
from .relations import RelationSet, vanishes_on_omega

EXIT_PASS, EXIT_FAIL, EXIT_UNKNOWN, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3, 4


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, obj: dict, text: str):
        if self.fmt == "json":
            self.stream.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
        else:
            self.stream.write(text.rstrip("\n") + "\n")


# -- inputs -------------------------------------------------------------------


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg})") from None


def presentation_from_json(obj, base: str = ".") -> Presentation:
    """A matrix file, a graph file, or a generic relation file."""
    if isinstance(obj, str):
        obj = _read_json(os.path.join(base, obj))
    if not isinstance(obj, dict):
        raise ParseError("presentation must be a JSON object")
    if "A" in obj and "B" in obj:
        A, B = load_matrices(obj)
        return build_ck(A, B)
    if "vertices" in obj:
        return build_graph(load_graph(obj))
    if "relations" in obj:
        grp = group_from_json(obj.get("group", {"free": ["a"]}))
        ctx = Context(grp, tuple(str(x) for x in obj.get("projections", [])))
        rels = tuple(parse_boolfn(ctx, t) for t in obj["relations"])
        return Presentation(ctx, RelationSet(ctx, rels, bool(obj.get("length_additivity", False))))
    raise ParseError("unrecognised presentation file: expected keys A/B, vertices, or relations")


def _context(args, texts) -> Context:
    if getattr(args, "rel", None):
        return presentation_from_json(args.rel).ctx
    gens = args.gens.split(",") if args.gens else None
    labels = args.proj.split(",") if args.proj is not None else None
    if labels == [""]:
        labels = []
    if gens is not None:
        return Context(FreeGroup(gens), tuple(labels or ()))
    return infer_context(texts, labels, None)


def _norm_json(x):
    return {"exact": str(x), "float": float(x)}


def _point_texts(point: str) -> list:
    """Point items rewritten as factors so the context can be inferred from them."""
    out = []
    for item in point.split(","):
        word, _, label = item.strip().partition(";")
        word = "" if word.strip() == "e" else word
        out.append(f"1[{word};{label}]" if label else f"1[{word}]")
    return out


# -- commands -----------------------------------------------------------------


def cmd_eval(args, out: Output) -> int:
    ctx = _context(args, [args.expr] + _point_texts(args.point))
    f = parse_boolfn(ctx, args.expr)
    xi = parse_point(ctx, args.point)
    v = f.evaluate(xi)
    out.emit({"value": str(v), "point": xi.format(), "expr": f.format()}, str(v))
    return EXIT_PASS


def cmd_act(args, out: Output) -> int:
    ctx = _context(args, [args.expr, f"d({args.t})"])
    t = ctx.group.parse(args.t)
    f = parse_boolfn(ctx, args.expr)
    g = alpha(t, f)
    out.emit({"result": g.format()}, g.format())
    return EXIT_PASS


def cmd_cp_mul(args, out: Output) -> int:
    ctx = _context(args, args.expr)
    xs = [parse_cp(ctx, e) for e in args.expr]
    r = xs[0]
    for x in xs[1:]:
        r = r * x
    out.emit({"result": r.format()}, r.format())
    return EXIT_PASS


def cmd_cp_star(args, out: Output) -> int:
    ctx = _context(args, [args.expr])
    r = parse_cp(ctx, args.expr).star()
    out.emit({"result": r.format()}, r.format())
    return EXIT_PASS


def cmd_cp_norm(args, out: Output) -> int:
    ctx = _context(args, [args.expr])
    n = parse_cp(ctx, args.expr).one_norm(args.cap)
    out.emit({"one_norm": _norm_json(n)}, str(n))
    return EXIT_PASS


def cmd_check_vanish(args, out: Output) -> int:
    P = presentation_from_json(args.rel)
    f = parse_boolfn(P.ctx, args.expr)
    r = vanishes_on_omega(f, P.relations, args.bound, args.cap)
    obj = r.to_json()
    obj["expr"] = f.format()
    text = f"{r.verdict} (L={r.bound})"
    if not r.vanishes:
        text += f"\nwitness {r.witness.format()}\nvalue {r.value}"
    out.emit(obj, text)
    return EXIT_PASS if r.vanishes else EXIT_UNKNOWN


def _presentation_text(P: Presentation) -> str:
    lines = [f"generators: {' '.join(P.ctx.group.alphabet)}",
             f"projections: {' '.join(P.ctx.labels)}", "relations:"]
    lines += [f"  {f.format()} = 0" for f in P.relations.explicit]
    if P.relations.length_additivity:
        lines.append("  1[rs]1[r] - 1[rs] = 0 whenever |rs| = |r| + |s|")
    return "\n".join(lines)


def cmd_ck_build(args, out: Output) -> int:
    A, B = load_matrices(_read_json(args.matrices))
    P = dualize_ck(A, B) if args.dual else build_ck(A, B)
    out.emit(P.to_json(), _presentation_text(P))
    return EXIT_PASS


def cmd_graph_build(args, out: Output) -> int:
    P = build_graph(load_graph(_read_json(args.graph)))
    out.emit(P.to_json(), _presentation_text(P))
    return EXIT_PASS


def _bounds(args):
    lo = args.bound if args.bound is not None else 2
    hi = max(lo, args.max_bound if args.max_bound is not None else lo)
    return range(lo, hi + 1)


def _emit_report(out: Output, report, extra=None) -> int:
    obj = report.to_json()
    if extra:
        obj.update(extra)
    out.emit(obj, report.format())
    return EXIT_PASS if report.passed else EXIT_UNKNOWN


def cmd_check_ck_iso(args, out: Output) -> int:
    A, B = load_matrices(_read_json(args.matrices))
    via = "B"
    if not B.is_permutation() and A.is_permutation():
        # O_{A,B} and O_{B,A} are isomorphic; check the dual presentation
        A, B, via = B, A, "A (dual)"
    M, tgt = permutation_morphism(A, B)
    src = build_ck(A, B)
    for L in _bounds(args):
        report = check_morphism(M, src, tgt, L, args.cap)
        if report.passed:
            break
    At = B.transpose().matmul(A)
    report.title = f"check-ck-iso L={L}"
    return _emit_report(out, report, {"bound": L, "permutation": via, "target_A": At.to_json()})


def cmd_check_graph(args, out: Output) -> int:
    E = load_graph(_read_json(args.graph))
    P = build_graph(E)
    for L in _bounds(args):
        report = check_partial_isometries(E, args.word_bound, L, args.cap, P)
        if report.passed:
            break
    report.title = f"check-graph L={L}"
    return _emit_report(out, report, {"bound": L, "word_bound": args.word_bound})


def load_map(obj, base: str = "."):
    """``{"source", "target", "generators": {name: word}, "projections": {label: cp}}``."""
    src = presentation_from_json(obj["source"], base)
    tgt = presentation_from_json(obj["target"], base)
    sg, tg = src.ctx.group, tgt.ctx.group
    gm = {}
    for name, word in obj.get("generators", {}).items():
        gm[sg.gen(name)[0]] = tg.parse(word)
    pm = {}
    for label, text in obj.get("projections", {}).items():
        pm[src.ctx.index(label)] = parse_cp(tgt.ctx, text)
    for k in range(1, sg.rank + 1):
        if k not in gm:
            raise ParseError(f"no image for generator {sg.alphabet[k - 1]!r}")
    for j in range(1, len(src.ctx.labels) + 1):
        if j not in pm:
            raise ParseError(f"no image for projection {src.ctx.label(j)!r}")
    return GeneratorMap(gm, pm), src, tgt


def cmd_check_morphism(args, out: Output) -> int:
    obj = _read_json(args.map)
    try:
        M, src, tgt = load_map(obj, os.path.dirname(args.map) or ".")
    except KeyError as exc:
        raise ParseError(f"map file is missing {exc}") from None
    for L in _bounds(args):
        report = check_morphism(M, src, tgt, L, args.cap)
        if report.passed:
            break
    report.title = f"check-morphism L={L}"
    return _emit_report(out, report, {"bound": L})


def cmd_verify_core(args, out: Output) -> int:
    from .verify import SUITES, run_all

    names = args.suite or None
    for n in names or ():
        if n not in SUITES:
            raise ParseError(f"unknown suite {n!r}; choose from {', '.join(SUITES)}")
    results = run_all(args.seed, args.samples, names)
    ok = all(r.passed for r in results)
    lines = [f"{r.name:24} {'PASS' if r.passed else 'FAIL'}  ({r.samples} samples)" for r in results]
    for r in results:
        lines += [f"  {m}" for m in r.failures[:3]]
    out.emit({"seed": args.seed, "samples": args.samples, "passed": ok,
              "suites": [r.to_json() for r in results]}, "\n".join(lines))
    return EXIT_PASS if ok else EXIT_FAIL


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--bound", "-L", type=_natural, default=None)
    common.add_argument("--max-bound", type=_natural, default=None,
                        help="retry with larger bounds up to this value while the verdict is Unknown")
    common.add_argument("--word-bound", type=_natural, default=2)

    ctxopts = argparse.ArgumentParser(add_help=False)
    ctxopts.add_argument("--gens", help="comma-separated free generators (default: inferred)")
    ctxopts.add_argument("--proj", help="comma-separated projection labels (default: inferred)")
    ctxopts.add_argument("--rel", help="take the context from a presentation file")

    p = argparse.ArgumentParser(prog="parcross", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common, ctxopts], help="evaluate a function at a point")
    s.add_argument("--expr", required=True)
    s.add_argument("--point", required=True, help="comma-separated coordinates, e.g. 'a, a;1'")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("act", parents=[common, ctxopts], help="apply alpha_t")
    s.add_argument("--t", required=True)
    s.add_argument("--expr", required=True)
    s.set_defaults(func=cmd_act)

    s = sub.add_parser("cp-mul", parents=[common, ctxopts], help="multiply crossed-product elements")
    s.add_argument("--expr", action="append", required=True, help="repeat for each factor")
    s.set_defaults(func=cmd_cp_mul)

    s = sub.add_parser("cp-star", parents=[common, ctxopts], help="involution")
    s.add_argument("--expr", required=True)
    s.set_defaults(func=cmd_cp_star)

    s = sub.add_parser("cp-norm", parents=[common, ctxopts], help="l1 norm")
    s.add_argument("--expr", required=True)
    s.set_defaults(func=cmd_cp_norm)

    s = sub.add_parser("check-vanish", parents=[common], help="does a function vanish on Omega_R")
    s.add_argument("--rel", required=True, help="relation, matrix or graph file")
    s.add_argument("--expr", required=True)
    s.set_defaults(func=cmd_check_vanish)

    s = sub.add_parser("ck-build", parents=[common], help="relations of O_(A,B)")
    s.add_argument("--matrices", required=True)
    s.add_argument("--dual", action="store_true", help="build O_(B,A) instead")
    s.set_defaults(func=cmd_ck_build)

    s = sub.add_parser("graph-build", parents=[common], help="relations of a graph presentation")
    s.add_argument("--graph", required=True)
    s.set_defaults(func=cmd_graph_build)

    s = sub.add_parser("check-morphism", parents=[common], help="check a generator map preserves relations")
    s.add_argument("--map", required=True)
    s.set_defaults(func=cmd_check_morphism)

    s = sub.add_parser("check-ck-iso", parents=[common], help="O_(A,B) -> O_(B^t A) for permutation B")
    s.add_argument("--matrices", required=True)
    s.set_defaults(func=cmd_check_ck_iso)

    s = sub.add_parser("check-graph", parents=[common], help="partial isometries and commuting ranges")
    s.add_argument("--graph", required=True)
    s.set_defaults(func=cmd_check_graph)

    s = sub.add_parser("verify-core", parents=[common], help="seeded identity suites")
    s.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    s.set_defaults(func=cmd_verify_core)
    return p


def _natural(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("bounds must be >= 0")
    return v


def main(argv: Optional[list] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; usage errors are input errors here
        return EXIT_INPUT if exc.code else EXIT_PASS
    out = Output(args.format, stdout)
    try:
        return args.func(args, out)
    except EnumerationCapError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_CAP
    except (ValueError, KeyError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
