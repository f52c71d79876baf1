"""Command-line front end: ``ribbonknots <subcommand> ...``.

Exit status: 0 on success, 1 when a diagram fails validation or a rendered
width is not allowed (or a computation on a valid diagram fails), 2 on bad
arguments, 3 when optimization finds no feasible configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bounds import (ngon_ribbonlength_bound, three_stick_bounds,
                     triangle_width_bound)
from .diagram import (DEFAULT_TOL, KnotDiagram, diagram_length, loads_diagram,
                      validate_diagram)
from .errors import InfeasibleError, RibbonError
from .invariants import (diagram_equivalent, geometric_linking_number,
                         invariant_report, link_equivalent,
                         ribbon_linking_number, topologically_equivalent)
from .optimizer import OptimizationConfig, minimize_ribbonlength
from .render import render_svg
from .ribbon import max_width
from .samples import load_sample, sample_names

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InvalidDiagram(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _sources(args) -> list[tuple[str, str]]:
    out = []
    for kind in ("input", "sample"):
        for v in getattr(args, kind) or []:
            out.append((kind, v))
    return out


def _load(kind: str, value: str) -> KnotDiagram:
    if kind == "sample":
        try:
            return load_sample(value)
        except (KeyError, ValueError) as exc:
            raise UsageError(str(exc).strip('"')) from exc
    path = Path(value)
    if not path.is_file():
        raise UsageError(f"no such file: {value}")
    try:
        return loads_diagram(path.read_text(encoding="utf-8"))
    except ValueError as exc:
        raise InvalidDiagram(f"{value}: {exc}") from exc


def _one_diagram(args, check: bool = True) -> KnotDiagram:
    src = _sources(args)
    if len(src) != 1:
        raise UsageError("give exactly one of --input FILE or --sample NAME")
    d = _load(*src[0])
    if check:
        rep = validate_diagram(d)
        if not rep.ok:
            raise InvalidDiagram("; ".join(i.message for i in rep.issues))
    return d


def _label(d: KnotDiagram) -> str:
    return d.name or "diagram"


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    d = _one_diagram(args, check=False)
    rep = validate_diagram(d)
    payload = {"name": d.name, "ok": rep.ok,
               "issues": [{"code": i.code, "message": i.message} for i in rep.issues]}
    lines = [f"{_label(d)}: {'valid' if rep.ok else 'INVALID'}"]
    lines += [f"  [{i.code}] {i.message}" for i in rep.issues]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_report(args) -> int:
    d = _one_diagram(args)
    r = invariant_report(d, args.tol)
    rows = [("name", r.name), ("knot_type", r.knot_type),
            ("linking_number", r.linking_number), ("topo_type", r.topo_type.value),
            ("length", repr(r.length)), ("max_width", repr(r.max_width)),
            ("ribbonlength", repr(r.ribbonlength))]
    _emit(args, r.to_dict(), "\n".join(f"{k:<15} {v}" for k, v in rows))
    return EXIT_OK


def cmd_ribbonlength(args) -> int:
    d = _one_diagram(args)
    L = diagram_length(d)
    w = args.width if args.width is not None else max_width(d, args.tol)
    value = L / w
    _emit(args, {"name": d.name, "width": w, "ribbonlength": value}, repr(value))
    return EXIT_OK


def cmd_maxwidth(args) -> int:
    d = _one_diagram(args)
    w = max_width(d, args.tol)
    _emit(args, {"name": d.name, "max_width": w}, repr(w))
    return EXIT_OK


def cmd_linking(args) -> int:
    d = _one_diagram(args)
    lk = ribbon_linking_number(d)
    geo = geometric_linking_number(d, args.width, args.tol)
    payload = {"name": d.name, "linking_number": lk, "geometric": geo.total,
               "width": geo.width, "per_component": geo.per_component}
    text = f"{lk}"
    if geo.total != lk:
        text += f" (geometric count {geo.total} disagrees)"
    _emit(args, payload, text)
    return EXIT_OK


_COMPARE = {"link": link_equivalent, "topo": topologically_equivalent,
            "diagram": diagram_equivalent}


def cmd_compare(args) -> int:
    src = _sources(args)
    if len(src) != 2:
        raise UsageError("compare needs exactly two diagrams (--input/--sample, repeatable)")
    a, b = (_load(*s) for s in src)
    for d in (a, b):
        rep = validate_diagram(d)
        if not rep.ok:
            raise InvalidDiagram(f"{_label(d)}: " + "; ".join(i.message for i in rep.issues))
    result = _COMPARE[args.mode](a, b)
    _emit(args, {"mode": args.mode, "a": a.name, "b": b.name, "result": result.value},
          result.value)
    return EXIT_OK


def cmd_optimize(args) -> int:
    data = {}
    if args.config:
        path = Path(args.config)
        if not path.is_file():
            raise UsageError(f"no such file: {args.config}")
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except ValueError as exc:
            raise UsageError(f"{args.config}: {exc}") from exc
    for key in ("n", "folds", "perimeter", "restarts"):
        v = getattr(args, key)
        if v is not None:
            data[key] = v
    if args.seed is not None:
        data["rng_seed"] = args.seed
    try:
        cfg = OptimizationConfig.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad optimization config: {exc}") from exc
    try:
        result = minimize_ribbonlength(cfg)
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    payload = {"config": cfg.to_dict(), **result.to_dict()}
    if args.output:
        Path(args.output).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    if args.svg:
        d = result.best_diagram
        render_svg(d, max_width(d, cfg.width_tol), args.svg)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        verts = ", ".join(f"({x:.6f}, {y:.6f})" for x, y in result.best_diagram.vertices)
        print(f"best ribbonlength {result.best_value!r} "
              f"(restart {result.best_restart}, converged={result.converged})\n"
              f"vertices {verts}")
    return EXIT_OK


def cmd_render(args) -> int:
    d = _one_diagram(args)
    w = args.width
    if w is None:
        w = 0.5 * max_width(d, args.tol)
    res = render_svg(d, w, args.output, args.tol)
    if args.output is None:
        sys.stdout.write(res.svg)
    if not res.allowed:
        print(f"width {w!r} is not allowed; conflict regions highlighted", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_bounds(args) -> int:
    if _sources(args):
        d = _one_diagram(args)
        b = triangle_width_bound(d)
        _emit(args, {"name": d.name, "width_bound": b}, repr(b))
        return EXIT_OK
    if args.n is None:
        raise UsageError("bounds needs --n N or a triangle via --input/--sample")
    try:
        if args.n == 3:
            value = three_stick_bounds(args.pattern)
        else:
            value = ngon_ribbonlength_bound(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, {"n": args.n, "pattern": args.pattern, "ribbonlength_bound": value},
          repr(value))
    return EXIT_OK


def cmd_samples(args) -> int:
    names = sample_names()
    _emit(args, {"samples": names}, "\n".join(names))
    return EXIT_OK


# ---------------------------------------------------------------------------


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ribbonknots",
                                description="Folded ribbon knots over polygonal diagrams.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, width=False):
        sp.add_argument("--input", action="append", metavar="FILE", help="diagram JSON file")
        sp.add_argument("--sample", action="append", metavar="NAME", help="bundled sample name")
        sp.add_argument("--tol", type=_positive, default=DEFAULT_TOL,
                        help="tolerance, relative to diagram length")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if width:
            sp.add_argument("--width", type=_positive, metavar="W")
        return sp

    sp = common(sub.add_parser("validate", help="check a diagram"))
    sp.set_defaults(func=cmd_validate)
    sp = common(sub.add_parser("report", help="invariant report"))
    sp.set_defaults(func=cmd_report)
    sp = common(sub.add_parser("ribbonlength", help="length / width (max width by default)"),
                width=True)
    sp.set_defaults(func=cmd_ribbonlength)
    sp = common(sub.add_parser("maxwidth", help="largest allowed width"))
    sp.set_defaults(func=cmd_maxwidth)
    sp = common(sub.add_parser("linking", help="ribbon linking number"), width=True)
    sp.set_defaults(func=cmd_linking)
    sp = common(sub.add_parser("compare", help="ribbon equivalence of two diagrams"))
    sp.add_argument("--mode", choices=sorted(_COMPARE), default="link")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("optimize", help="minimise ribbonlength over vertex placements")
    sp.add_argument("--config", metavar="FILE", help="OptimizationConfig JSON")
    sp.add_argument("--n", type=int)
    sp.add_argument("--folds", help="all-same, one-different, over or under")
    sp.add_argument("--perimeter", type=_positive)
    sp.add_argument("--restarts", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--output", metavar="PATH", help="write the result JSON here")
    sp.add_argument("--svg", metavar="PATH", help="render the best diagram at its max width")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_optimize)

    sp = common(sub.add_parser("render", help="SVG of the ribbon"), width=True)
    sp.add_argument("--output", metavar="PATH", help="SVG file (stdout if omitted)")
    sp.set_defaults(func=cmd_render)

    sp = common(sub.add_parser("bounds", help="closed-form ribbonlength and width bounds"))
    sp.add_argument("--n", type=int, help="regular n-gon (n >= 4) or 3-stick (n = 3)")
    sp.add_argument("--pattern", choices=["all-same", "one-different"], default="all-same",
                    help="fold pattern for n = 3")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("samples", help="list bundled samples")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_samples)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidDiagram as exc:
        print(f"invalid diagram: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except RibbonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
