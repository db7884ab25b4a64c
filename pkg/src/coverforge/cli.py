"""Command line front end: ``coverforge <command> ...``.

Exit codes: 0 success or verified, 1 refuted or invalid input, 2 not decided
at the available depth, 3 usage error.  Documents are read from a path or
from standard input when the path is ``-``.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import analysis, io
from .dynamics import Thread, itinerary, minimal_thread, project, step
from .errors import CoverForgeError, KeaneTie, ParseError
from .generators import (IETConfig, full_shift_oracle, iet_rauzy_induction, odometer_cover,
                         ostrowski_cover, sturmian_oracle)
from .tower import CoverTower, validate_tower
from .translators import (BrattelliDiagram, KRTower, LanguageOracle, SAdicSystem, Substitution,
                          bv_to_cover, cover_to_bv, cover_to_sadic, kr_to_cover, rauzy_tower,
                          sadic_to_cover, validate_kr)

EXIT_OK, EXIT_INVALID, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _load(path: str, *kinds):
    obj = io.parse_document(_read(path))
    if kinds and not any(isinstance(obj, k) for k in kinds):
        raise UsageError(f"{path}: expected a {' or '.join(k.__name__ for k in kinds)} document")
    return obj


def _tower(path: str) -> CoverTower:
    obj = _load(path, CoverTower, SAdicSystem)
    return sadic_to_cover(obj) if isinstance(obj, SAdicSystem) else obj


def _ints(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x]
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {s!r}") from None


def _param(params: list[str], key: str, default=None):
    """``key=value`` or a bare positional value for the first parameter."""
    for p in params:
        if p.startswith(key + "="):
            return p.split("=", 1)[1]
    bare = [p for p in params if "=" not in p]
    if bare:
        return bare[0]
    if default is None:
        raise UsageError(f"missing parameter {key}=...")
    return default


def _emit(obj, fmt: str | None) -> str:
    if fmt in (None, "report"):
        return io.print_document(obj)
    if fmt == "tower":
        if isinstance(obj, SAdicSystem):
            obj = sadic_to_cover(obj)
        if not isinstance(obj, CoverTower):
            raise UsageError("cannot print this object as a tower")
        return io.print_tower(obj)
    if fmt == "sadic":
        return io.print_sadic(obj if isinstance(obj, SAdicSystem) else cover_to_sadic(obj))
    if fmt == "diagram":
        tower = sadic_to_cover(obj) if isinstance(obj, SAdicSystem) else obj
        return io.print_diagram(tower if isinstance(tower, BrattelliDiagram) else cover_to_bv(tower))
    if fmt == "dot":
        return io.to_dot(sadic_to_cover(obj) if isinstance(obj, SAdicSystem) else obj)
    raise UsageError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------- commands

def cmd_validate(args) -> int:
    obj = io.parse_document(_read(args.input))
    if isinstance(obj, CoverTower):
        report = validate_tower(obj)
        print(report)
        return EXIT_OK if report.legal else EXIT_INVALID
    if isinstance(obj, KRTower):
        problems = list(validate_kr(obj).problems)
    elif isinstance(obj, BrattelliDiagram):
        problems = obj.problems()
    elif isinstance(obj, LanguageOracle):
        problems = obj.problems()
    else:
        problems = []
    print(f"legal: {not problems}")
    for p in problems:
        print(p)
    return EXIT_INVALID if problems else EXIT_OK


def _generate(args):
    kind, params = args.kind, args.params
    if kind == "ostrowski":
        cf = _ints(_param(params, "a"))
        return ostrowski_cover(cf, len(cf) if args.depth is None else args.depth)
    if kind == "odometer":
        q = _ints(_param(params, "q"))
        depth = args.depth if args.depth is not None else (len(q) if len(q) > 1 else 4)
        return odometer_cover(q[0] if len(q) == 1 else q, depth)
    if kind == "sturmian":
        depth = 6 if args.depth is None else args.depth
        cf = _ints(_param(params, "a", "1"))
        if len(cf) == 1:
            cf = cf * (2 * depth + 8)
        return rauzy_tower(sturmian_oracle(cf, depth + 1), depth)
    if kind == "fullshift":
        k = int(_param(params, "k", "2"))
        depth = 3 if args.depth is None else args.depth
        return rauzy_tower(full_shift_oracle(k, depth + 1), depth)
    if kind == "substitution":
        rules = {}
        for rule in _param(params, "rules").split(","):
            if "->" not in rule:
                raise UsageError(f"substitution rule {rule!r} must look like a->img")
            a, img = rule.split("->", 1)
            rules[a] = img
        depth = 4 if args.depth is None else args.depth
        return SAdicSystem.stationary(Substitution.from_dict(rules), depth)
    if kind == "iet":
        lengths = [Fraction(x) for x in _param(params, "lengths").split(",")]
        perm = _ints(_param([p for p in params if p.startswith("perm=")], "perm",
                            ",".join(str(i) for i in range(len(lengths), 0, -1))))
        steps = 4 if args.depth is None else args.depth
        try:
            run = iet_rauzy_induction(IETConfig(tuple(lengths), tuple(perm)), steps)
            subs, tape = run.system.substitutions, run.tape
        except KeaneTie as e:
            print(f"KeaneTie: {e}", file=sys.stderr)
            if not e.substitutions:
                raise
            subs, tape = e.substitutions, e.tape
        print("tape: " + " ".join(map(str, tape)), file=sys.stderr)
        return SAdicSystem(tuple(subs))
    raise UsageError(f"unknown generator {kind!r}")


def cmd_generate(args) -> int:
    sys.stdout.write(_emit(_generate(args), args.format))
    return EXIT_OK


def cmd_translate(args) -> int:
    mode = args.mode
    if mode == "cover-to-bv":
        out = cover_to_bv(_tower(args.input))
    elif mode == "bv-to-cover":
        res = bv_to_cover(_load(args.input, BrattelliDiagram), args.follower_depth)
        print(f"complete: {'yes' if res.complete else 'no'}", file=sys.stderr)
        out = res.tower
    elif mode == "sadic-to-cover":
        out = sadic_to_cover(_load(args.input, SAdicSystem))
    elif mode == "cover-to-sadic":
        out = cover_to_sadic(_load(args.input, CoverTower))
    elif mode == "rauzy":
        oracle = _load(args.input, LanguageOracle)
        out = rauzy_tower(oracle, oracle.n_max - 1 if args.depth is None else args.depth)
    elif mode == "kr-to-cover":
        out = kr_to_cover(_load(args.input, KRTower), strict=not args.lenient)
    else:
        raise UsageError(f"unknown translation {mode!r}")
    sys.stdout.write(_emit(out, args.format))
    return EXIT_OK


def _print_verdict(v: analysis.Verdict, args) -> int:
    print(f"verdict: {v.status}")
    print(f"level: {v.level}")
    if v.details:
        print(f"details: {v.details}")
    w = v.witness
    if isinstance(w, analysis.RigidityWitness):
        print("q: " + " ".join(map(str, w.q)))
        for n, (c, p) in enumerate(zip(w.loops, w.periods)):
            print(f"loop {n}: {' '.join(map(str, c))} (period {p})")
    elif isinstance(w, dict):
        for k in sorted(w, key=str):
            print(f"witness {k}: {w[k]}")
    elif w is not None:
        print(f"witness: {w}")
    return v.exit_code


def cmd_analyze(args) -> int:
    t = _tower(args.input)
    which = args.which
    if which == "chain":
        return _print_verdict(analysis.check_chain_transitive(t), args)
    if which == "minimal":
        return _print_verdict(analysis.check_minimal(t, args.level, args.budget_cycles), args)
    if which == "transitive":
        return _print_verdict(analysis.check_transitive(t, args.level, args.loop_length, args.mode,
                                                        args.budget_cycles), args)
    if which == "rigidity":
        return _print_verdict(analysis.uniform_rigidity_check(t), args)
    if which == "ue":
        for c in analysis.unique_ergodicity_diameters(t, args.level):
            ratio = "inf" if c.ratio is None else f"{c.ratio}"
            print(f"level {c.level}: diameter {c.diameter:.6g} cross-ratio {ratio}")
        return EXIT_OK
    if which == "specials":
        for n, g in enumerate(t.levels):
            c = analysis.special_vertex_counts(g)
            print(f"level {n}: left {c.left} right {c.right} bispecial {c.bispecial} "
                  f"measure-value-bound {analysis.measure_value_bound(g)}")
        return EXIT_OK
    if which == "linrec":
        rc = analysis.linear_recurrence_constants(t, args.orbit_length, args.depth_cap)
        print(f"K1: {rc.K1}\nK2: {rc.K2}\nD: {rc.D}\nL: {rc.L}")
        print("telescoping: " + " ".join(map(str, rc.telescoping)))
        return EXIT_OK
    raise UsageError(f"unknown analysis {which!r}")


def _thread(t: CoverTower, text: str | None) -> Thread:
    if text is None:
        return minimal_thread(t)
    parts = _ints(text.replace(":", ","))
    if len(parts) not in (2, 3):
        raise UsageError("thread is level:arrow[:offset]")
    return project(t, *parts)


def cmd_orbit(args) -> int:
    t = _tower(args.input)
    x = _thread(t, args.thread)
    print("itinerary: " + itinerary(t, x, args.orbit_length, truncate=True, partial=True))
    for i in range(args.orbit_length):
        print(f"{i}: " + " ".join(f"{a}+{o}" for a, o in zip(x.arrows, x.offsets)))
        if i + 1 < args.orbit_length:
            try:
                x = step(t, x, truncate=True)
            except CoverForgeError as e:
                print(f"stopped: {type(e).__name__}: {e}")
                break
    return EXIT_OK


def cmd_export_dot(args) -> int:
    t = _tower(args.input)
    level = None if args.level == "all" else int(args.level)
    sys.stdout.write(io.to_dot(t, level))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coverforge", description="Graph covers of Cantor dynamical systems.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    formats = ["tower", "diagram", "sadic", "dot", "report"]

    s = sub.add_parser("validate", help="check a document")
    s.add_argument("input")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("generate", help="build a standard example")
    s.add_argument("kind", choices=["ostrowski", "sturmian", "fullshift", "odometer",
                                    "substitution", "iet"])
    s.add_argument("params", nargs="*", help="e.g. a=3,3,3 or q=2 or rules=0->01,1->0")
    s.add_argument("--depth", type=int)
    s.add_argument("--format", choices=formats)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("translate", help="convert between representations")
    s.add_argument("mode", choices=["cover-to-bv", "bv-to-cover", "sadic-to-cover",
                                    "cover-to-sadic", "rauzy", "kr-to-cover"])
    s.add_argument("input")
    s.add_argument("--follower-depth", type=int)
    s.add_argument("--depth", type=int)
    s.add_argument("--lenient", action="store_true", help="tolerate KR5/KR6 violations")
    s.add_argument("--format", choices=formats)
    s.set_defaults(func=cmd_translate)

    s = sub.add_parser("analyze", help="evaluate a dynamical criterion")
    s.add_argument("which", choices=["chain", "minimal", "transitive", "ue", "rigidity",
                                     "linrec", "specials"])
    s.add_argument("input")
    s.add_argument("--level", type=int, default=0, help="base level m")
    s.add_argument("--loop-length", type=int, default=4)
    s.add_argument("--mode", choices=["arrow-set", "subpath"], default="arrow-set")
    s.add_argument("--budget-cycles", type=int)
    s.add_argument("--orbit-length", type=int, default=10_000)
    s.add_argument("--depth-cap", type=int, default=4)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("orbit", help="follow a thread")
    s.add_argument("input")
    s.add_argument("--thread", help="level:arrow[:offset], default the top minimal thread")
    s.add_argument("--orbit-length", "-k", type=int, default=20)
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("export-dot", help="graph description of one level or all")
    s.add_argument("input")
    s.add_argument("--level", default="all")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CoverForgeError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
