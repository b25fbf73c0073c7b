"""Command-line driver.

Exit codes: 0 when every requested check passes, 1 when one fails, 2 for
configuration or argument errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import polylog
from .config import RunConfig, load_config
from .cyclosyn import chern_cocycle
from .errors import ConfigError, CyclosyntomicError
from .exactalg import NumberRing, cyclotomic_integers, divisors, integers
from .qwitt import QWittElement, cyclotomic_norm, q_dwork_membership
from .report import dumps
from .suites import SUITES, run_suites
from .witt import GhostTuple, WittVector, dwork_check, ghost

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
Z_HALF = NumberRing((0, 1), 2, "Z[1/2]")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def _zeta(text: str) -> tuple[int, int]:
    order, _, exp = text.partition(":")
    try:
        return int(order), int(exp or 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected order[:exponent], got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclosyn", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--json", dest="json_path", help="also write the JSON output to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    va = sub.add_parser("verify-all", parents=[common], help="run verification suites")
    va.add_argument("--suite", type=lambda s: tuple(x for x in s.split(",") if x), help="comma-separated suite names")
    va.add_argument("--m", type=_int_list, help="levels")
    va.add_argument("--d", type=_int_list, help="divisors")
    va.add_argument("--zeta", type=_zeta, action="append", help="root of unity order[:exponent]")
    va.add_argument("--jobs", type=int, help="worker processes")
    va.add_argument("--adjoin-half", action="store_true", help="work over Z[1/2] with zeta = -1")

    for name, what in (("chern", "Chern cocycle of 1 - zeta"), ("li1", "first q-polylogarithm class")):
        p = sub.add_parser(name, parents=[common], help=what)
        p.add_argument("--zeta", type=_zeta, required=True)
        p.add_argument("--m", type=_int_list, required=True)
        p.add_argument("--d", type=_int_list, required=True)
        p.add_argument("--adjoin-half", action="store_true")

    nm = sub.add_parser("norm", parents=[common], help="cyclotomic norm of constant q-ghost components")
    nm.add_argument("--m", type=int, required=True)
    nm.add_argument("--to", type=int, required=True)
    nm.add_argument("--components", type=_int_list, required=True, help="constants c_e for e | m")

    gh = sub.add_parser("ghost", parents=[common], help="ghost map on integer Witt coordinates")
    gh.add_argument("--m", type=int, required=True)
    gh.add_argument("--witt", type=_int_list, required=True)

    dw = sub.add_parser("dwork", parents=[common], help="Dwork test of integer ghost coordinates")
    dw.add_argument("--m", type=int, required=True)
    dw.add_argument("--ghost", type=_int_list, required=True)
    dw.add_argument("--q", action="store_true", help="treat the entries as constant q-ghost components")
    return parser


def _ring(args, default: NumberRing) -> NumberRing:
    if getattr(args, "config", None):
        return load_config(args.config).ring
    return default


def _root_ring(args, order: int) -> NumberRing:
    if getattr(args, "adjoin_half", False):
        if order != 2:
            raise ConfigError("--adjoin-half goes with --zeta 2 (zeta = -1)", "zeta")
        return Z_HALF
    if getattr(args, "config", None):
        return load_config(args.config).ring
    if order == 2:
        raise ConfigError("zeta = -1 needs 1/2; pass --adjoin-half", "zeta")
    return cyclotomic_integers(order)


def _emit(payload, args, out) -> None:
    text = dumps(payload)
    print(text, file=out)
    if getattr(args, "json_path", None):
        Path(args.json_path).write_text(text + "\n")


def _components_json(comps) -> dict:
    return {str(e): {"rows": c.rational_rows(), "render": c.render()} for e, c in sorted(comps.items())}


def _constants(ring: NumberRing, m: int, values) -> QWittElement:
    keys = divisors(m)
    if len(values) != len(keys):
        raise ConfigError(f"level {m} needs {len(keys)} entries, got {len(values)}", "components")
    table = dict(zip(keys, values))
    return QWittElement.build(ring, m, lambda e: table[e])


def cmd_verify_all(args, out) -> int:
    config = load_config(args.config) if args.config else RunConfig()
    roots = tuple(args.zeta) if args.zeta else None
    ring, levels = None, args.m
    if args.adjoin_half:
        ring = Z_HALF
        roots = roots or ((2, 1),)
        levels = levels or tuple(m for m in config.levels if m % 2)
    config = config.with_overrides(
        ring=ring, levels=levels, divisors=args.d, roots=roots, jobs=args.jobs, suites=args.suite
    ).validate()
    names = config.suites or tuple(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ConfigError(f"unknown suite(s) {', '.join(unknown)}; known: {', '.join(SUITES)}", "suite")
    reports = run_suites(names, config)
    lines = [dumps(r.to_json()) for r in reports]
    for line in lines:
        print(line, file=out)
    if args.json_path:
        Path(args.json_path).write_text("\n".join(lines) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _grid(args):
    order, exp = args.zeta
    ring = _root_ring(args, order)
    zeta = polylog.RootOfUnity(ring, order, exp)
    for m in args.m:
        RunConfig(ring=ring, levels=(m,), roots=((order, exp),)).validate()
        for d in args.d:
            yield zeta, m, d


def cmd_chern(args, out) -> int:
    results = []
    for zeta, m, d in _grid(args):
        c = chern_cocycle(1 - zeta.value, m, d, polylog.canonical_unit_lift(zeta, m))
        results.append({"zeta": zeta.label(), "m": m, "d": d, "components": _components_json(c.comps)})
    _emit(results, args, out)
    return EXIT_OK


def cmd_li1(args, out) -> int:
    results = []
    for zeta, m, d in _grid(args):
        c = polylog.li1_class(zeta, d, m)
        results.append({"zeta": zeta.label(), "m": m, "d": d, "components": _components_json(c.comps)})
    _emit(results, args, out)
    return EXIT_OK


def cmd_norm(args, out) -> int:
    ring = _ring(args, integers())
    if args.to % args.m:
        raise ConfigError(f"target level {args.to} is not a multiple of {args.m}", "to")
    result = cyclotomic_norm(_constants(ring, args.m, args.components), args.to)
    _emit({"m": args.to, "components": _components_json(result.comps)}, args, out)
    return EXIT_OK


def cmd_ghost(args, out) -> int:
    ring = _ring(args, integers())
    g = ghost(WittVector.of(ring, args.m, args.witt))
    print(g.render(), file=out)
    if args.json_path:
        Path(args.json_path).write_text(dumps([v.render() for v in g.values]) + "\n")
    return EXIT_OK


def cmd_dwork(args, out) -> int:
    ring = _ring(args, integers())
    if args.q:
        ok = q_dwork_membership(_constants(ring, args.m, args.ghost)).member
    else:
        ok = dwork_check(GhostTuple.of(ring, args.m, args.ghost))
    print("true" if ok else "false", file=out)
    if args.json_path:
        Path(args.json_path).write_text(dumps({"m": args.m, "member": ok}) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "verify-all": cmd_verify_all,
    "chern": cmd_chern,
    "li1": cmd_li1,
    "norm": cmd_norm,
    "ghost": cmd_ghost,
    "dwork": cmd_dwork,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (CyclosyntomicError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
