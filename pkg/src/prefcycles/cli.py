"""Command-line front end.

Exit codes: 0 success, 1 domain/semantic/precondition errors, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import complex as cx
from .errors import PrefCyclesError
from .models import ALL_KINDS, PUNCTURE_MODES, arrow_check, build_model, punctured_variant, table1_report
from .nerve import cover_U, cover_V, nerve, reference_orientation_signature
from .preferences import (
    encode,
    enumerate_codes,
    enumerate_strict_orders,
    enumerate_weak_orders,
    valid_cycles,
)
from .social_choice import CYCLE_READINGS, parse_swf

KIND_NAMES = [k.name for k in ALL_KINDS]


def _alternatives(args) -> tuple[int, ...]:
    return tuple(range(1, args.alternatives + 1))


def _triple(text: str | None):
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--triple expects a,b,c, got {text!r}") from None


def _removals(text: str | None) -> list[str]:
    return [r.strip() for r in text.split(",") if r.strip()] if text else []


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _render_complex(c: cx.DeltaComplex, fmt: str, annex: dict | None = None, name: str = "complex") -> str:
    if fmt == "json":
        return _dump(cx.to_json(c, **(annex or {})))
    if fmt == "off":
        return cx.to_off(c)
    if fmt == "dot":
        return cx.to_dot(c, name)
    v, e, f = c.counts
    lines = [f"V={v} E={e} F={f} chi={cx.euler_characteristic(c)}"]
    report = cx.is_surface(c)
    if report:
        for comp in cx.connected_components(c):
            lines.append(f"surface: {cx.classify(comp)}" if comp.faces else "surface: (no faces)")
    else:
        lines.append("not a surface: " + "; ".join(report.defects))
    try:
        for b in cx.boundary_components(c):
            lines.append(f"boundary: ({','.join(b.vertices)})")
    except PrefCyclesError:
        pass
    return "\n".join(lines) + "\n"


# -- verbs --------------------------------------------------------------------


def cmd_enumerate(args) -> str:
    alts = _alternatives(args)
    if args.what == "codes":
        items = [(str(c), str(c)) for c in enumerate_codes(alts)]
    else:
        source = {"weak": enumerate_weak_orders, "strict": enumerate_strict_orders,
                  "cycles": valid_cycles}[args.what]
        items = [(str(x), str(encode(x, alts))) for x in source(alts)]
    if args.format == "json":
        return _dump({"alternatives": list(alts), "kind": args.what, "count": len(items),
                      "elements": [{"element": x, "code": c} for x, c in items]})
    return "".join(f"{x}\t{c}\n" for x, c in items)


def cmd_nerve(args) -> str:
    cover = (cover_U if args.cover == "U" else cover_V)(_alternatives(args))
    n = nerve(cover)
    if args.format == "json":
        return _dump({**n.to_json(), "signature": reference_orientation_signature(n)})
    if args.format != "text":
        return _render_complex(n.complex, args.format, name=f"nerve_{args.cover}")
    out = _render_complex(n.complex, "text")
    sig = reference_orientation_signature(n)
    for name, order in list(n.face_orientation.items()) + list(n.boundary_orientation.items()):
        out += f"{name}: [{','.join(order)}] {sig[name]}\n"
    return out


def _model(args):
    if args.remove:
        return punctured_variant(args.kind, _removals(args.remove), mode=args.puncture_mode)
    return build_model(args.kind)


def cmd_model(args) -> str:
    model = _model(args)
    c = model.complex
    if args.double_cover:
        c = cx.orientation_double_cover(c).cover
    if args.classify:
        surface = cx.classify(c)
        return _dump(surface.to_json()) if args.format == "json" else f"{surface}\n"
    if args.format == "json" and not args.double_cover:
        return _dump(model.to_json())
    return _render_complex(c, args.format, name=args.kind.replace("-", "_"))


def _read_complex(path: str) -> cx.DeltaComplex:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise PrefCyclesError(f"cannot read complex from {path}: {exc}") from None
    return cx.from_json(data)


def cmd_classify(args) -> str:
    c = _read_complex(args.input) if args.input else build_model(args.kind).complex
    surface = cx.classify(c)
    return _dump(surface.to_json()) if args.format == "json" else f"{surface}\n"


def cmd_puncture(args) -> str:
    if args.input:
        c = _read_complex(args.input)
        faces = _removals(args.remove)
        c = (cx.puncture if args.puncture_mode == "faces" else cx.puncture_disc)(c, *faces)
        out = cx.to_json(c)
    else:
        model = punctured_variant(args.kind, _removals(args.remove), mode=args.puncture_mode)
        c, out = model.complex, model.to_json()
    if args.classify:
        surface = cx.classify(c)
        return _dump(surface.to_json()) if args.format == "json" else f"{surface}\n"
    return _dump(out) if args.format == "json" else _render_complex(c, args.format)


def cmd_arrow_check(args) -> str:
    swf = parse_swf(args.swf, args.individuals, args.alternatives)
    verdict = arrow_check(swf, args.triple, domain=args.domain, cycles=args.cycles)
    if args.format == "json":
        return _dump(verdict.to_json())
    lines = [
        f"swf: {verdict.swf}",
        f"triple: {','.join(map(str, verdict.triple))}",
        f"cycles: {verdict.cycles}",
        f"image: {' '.join(map(str, verdict.image))}",
        f"surface: {verdict.surface} (chi={verdict.surface.euler})",
        f"orientable: {verdict.orientable}",
        f"non_dictatorship: {verdict.non_dictatorship}",
        f"theorem_holds: {verdict.theorem_holds}",
    ]
    return "\n".join(lines) + "\n"


def cmd_table1(args) -> str:
    report = table1_report()
    return _dump(report.to_json()) if args.format == "json" else report.text()


def cmd_export(args) -> str:
    if args.cover:
        n = nerve((cover_U if args.cover == "U" else cover_V)())
        c, annex = n.complex, {k: v for k, v in n.to_json().items() if k in ("provenance", "reference_orientation")}
    else:
        model = _model(args)
        c, annex = model.complex, {"kind": model.kind.name}
    if args.double_cover:
        c, annex = cx.orientation_double_cover(c).cover, {}
    return _render_complex(c, args.format, annex, name="export")


# -- parser -------------------------------------------------------------------


def _common(default_format: str = "text") -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "off", "dot"), default=default_format)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--error-json", action="store_true", help="report errors as JSON on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:

    parser = argparse.ArgumentParser(prog="prefcycles", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("enumerate", parents=[_common()], help="list orders, cycles or ternary codes")
    p.add_argument("--alternatives", type=int, default=3)
    p.add_argument("--what", choices=("weak", "strict", "cycles", "codes"), default="weak")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("nerve", parents=[_common()], help="nerve of the strict-order or cycle cover")
    p.add_argument("--cover", choices=("U", "V"), default="U")
    p.add_argument("--alternatives", type=int, default=3)
    p.set_defaults(func=cmd_nerve)

    def model_flags(p, kind_required=True):
        p.add_argument("--kind", choices=KIND_NAMES, required=kind_required)
        p.add_argument("--remove", help="comma-separated elements (or face labels with --input)")
        p.add_argument("--puncture-mode", choices=PUNCTURE_MODES, default="faces")
        p.add_argument("--classify", action="store_true", help="print the surface type only")

    p = sub.add_parser("model", parents=[_common()], help="build one of the four models")
    model_flags(p)
    p.add_argument("--double-cover", action="store_true")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("classify", parents=[_common()], help="classify a model or a complex JSON file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--kind", choices=KIND_NAMES)
    g.add_argument("--input")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("puncture", parents=[_common()], help="puncture a model or a complex JSON file")
    model_flags(p, kind_required=False)
    p.add_argument("--input")
    p.set_defaults(func=cmd_puncture)

    p = sub.add_parser("arrow-check", parents=[_common()], help="orientability verdict for a welfare function")
    p.add_argument("--swf", default="pairwise-majority",
                   help="pairwise-majority | dictator:<i> | table:<path>")
    p.add_argument("--individuals", type=int, default=2)
    p.add_argument("--alternatives", type=int, default=3)
    p.add_argument("--triple", type=_triple)
    p.add_argument("--domain", choices=("weak", "strict"), default="weak")
    p.add_argument("--cycles", choices=CYCLE_READINGS, default="contradictory",
                   help="which intransitive aggregates count as strict on the triple")
    p.set_defaults(func=cmd_arrow_check)

    p = sub.add_parser("table1", parents=[_common()], help="classify all four models")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("export", parents=[_common("json")], help="export a nerve or model as JSON/OFF/DOT")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--kind", choices=KIND_NAMES)
    g.add_argument("--cover", choices=("U", "V"))
    p.add_argument("--remove")
    p.add_argument("--puncture-mode", choices=PUNCTURE_MODES, default="faces")
    p.add_argument("--double-cover", action="store_true")
    p.set_defaults(func=cmd_export)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.verb == "puncture" and not (args.kind or args.input):
        print("prefcycles puncture: error: one of --kind or --input is required", file=stderr)
        return 2
    try:
        text = args.func(args)
    except PrefCyclesError as exc:
        if args.error_json:
            print(json.dumps(exc.to_json(), sort_keys=True), file=stderr)
        else:
            print(f"error ({exc.kind}): {exc}", file=stderr)
            if exc.certificate is not None:
                print(f"certificate: {json.dumps(exc.certificate, sort_keys=True)}", file=stderr)
        return 1
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
