"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when a mathematical
check fails (a counterexample, or an obstruction where a conjugacy was
requested), 2 for unusable input.  Reports are JSON on stdout; when
``REGROUP_REPORT_DIR`` is set a copy is written there as
``<subcommand>.json``.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from .dynamics import (
    MAdicValuation,
    ResidueBlocks,
    bijection_report,
    example_map,
    monotone_to_shift,
    orbit_decomposition,
    periodic_point,
    radius_window,
    scheme_from_text,
    shift_obstruction,
)
from .errors import GroupMismatchError, ParseError, PreconditionError, RegroupError
from .groups import Cyclic, MAdic, Window, enumerate_window, group_from_json, window_from_json
from .involution import normalize, positive_part, unique_fixed_point
from .maps import (
    Monotonicity,
    PLMap,
    Piece,
    TableMap,
    Tail,
    compose,
    fixed_points,
    identity,
    invert,
    is_involution,
    map_from_json,
    monotonicity,
    negation,
)
from .reports import FAIL, PASS, CheckReport, jsonable, merge
from .transport import (
    TransportedGroup,
    round_trip,
    verify_axioms,
    verify_inversion_law,
    verify_isomorphism,
    verify_shift_law,
)

REPORT_DIR_ENV = "REGROUP_REPORT_DIR"
DEFAULT_RADII = (16, 32, 64, 128, 256, 512, 1024, 2048, 4096)


@dataclass
class RunConfig:
    subcommand: str
    inputs: dict = field(default_factory=dict)
    window: Optional[Window] = None
    output_format: str = "json"
    seed: int = 0


class UsageError(RegroupError):
    pass


def _load(arg, base: Optional[Path] = None):
    """Inline JSON (starting with '{') or a path to a JSON file."""
    if arg is None:
        return None
    text = arg.strip()
    if not text.startswith("{"):
        path = Path(text)
        if base is not None and not path.is_absolute():
            path = base / path
        try:
            text = path.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {arg}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {arg}: {exc.msg}") from None


def _group_and_map(args, base):
    f = map_from_json(_load(args.map, base))
    if args.group is not None:
        g = group_from_json(_load(args.group, base))
        if g != f.group:
            raise GroupMismatchError(f"map is defined on {f.group}, group file says {g}")
    return f.group, f


def _window(args, base):
    if args.window is None:
        raise UsageError("--window is required")
    return window_from_json(_load(args.window, base))


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, report)


def cmd_verify_involution(args, base):
    g, f = _group_and_map(args, base)
    w = _window(args, base)
    report = {"command": "verify-involution", "group": g.to_json(), "window": w.to_json()}
    report["is_involution"] = is_involution(f)
    if not report["is_involution"]:
        report["status"] = FAIL
        return 1, report
    try:
        e = unique_fixed_point(f)
    except RegroupError as exc:
        report.update(status=FAIL, fixed_point_error=str(exc))
        return 1, report
    report["fixed_point"] = str(e)
    try:
        A = positive_part(f, w)
    except RegroupError as exc:
        report.update(status=FAIL, partition=FAIL, partition_error=str(exc))
        return 1, report
    report.update(status=PASS, partition=PASS, A_window_size=len(A))
    return 0, report


def cmd_normalize(args, base):
    g, f = _group_and_map(args, base)
    w = _window(args, base)
    nf = normalize(f, g, w, method=args.method)
    report = {"command": "normalize-involution", "group": g.to_json(), **nf.to_json()}
    report["status"] = PASS if nf.ok else FAIL
    return (0 if nf.ok else 1), report


def cmd_transport(args, base):
    g, h = _group_and_map(args, base)
    w = _window(args, base)
    T = TransportedGroup(g, h)
    if args.check == "axioms":
        rep = verify_axioms(T, w)
    elif args.check == "iso":
        rep = verify_isomorphism(T, w)
    elif args.check == "inversion":
        rep = verify_inversion_law(T, w)
    else:
        c = Fraction(args.shift_constant)
        if c == 0:
            raise UsageError("shift constant must be non-zero")
        rep = verify_shift_law(T, c, w)
    report = {
        "command": "transport",
        "group": g.to_json(),
        "window": w.to_json(),
        "transported_neutral": str(T.neutral),
        **rep.to_json(),
    }
    return (0 if rep.ok else 1), report


def cmd_orbits(args, base):
    f = map_from_json(_load(args.map, base))
    w = _window(args, base)
    rep = orbit_decomposition(f, w)
    return 0, {"command": "orbits", **rep.to_json()}


def _radii(text):
    try:
        radii = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"bad window list {text!r}") from None
    if len(radii) < 2 or any(r < 1 for r in radii):
        raise ParseError("need at least two positive window radii")
    return radii


def cmd_counterexample(args, base):
    scheme = scheme_from_text(args.scheme)
    f = example_map(scheme)
    radii = _radii(args.windows)
    largest = radius_window(max(radii))
    bij = bijection_report(f, largest)
    scan = Window(-args.periodic_radius, args.periodic_radius)
    per = periodic_point(f, scan, args.max_iter)
    periodic = CheckReport("no_periodic_point", checked=len(enumerate_window(f.group, scan)),
                           details={"max_iterate": args.max_iter, "window": scan.to_json()})
    if per is not None:
        periodic.fail(x=per[0], period=per[1])
    verdict = shift_obstruction(f, radii)
    report = {
        "command": "counterexample",
        "scheme": scheme.to_text(),
        "window": largest.to_json(),
        "bijection": bij.to_json(),
        "periodic": periodic.to_json(),
        **verdict.to_json(),
    }
    ok = bij.ok and periodic.ok and verdict.kind == "UNBOUNDED_EVIDENCE"
    report["status"] = PASS if ok else FAIL
    return (0 if ok else 1), report


def cmd_conjugate_shift(args, base):
    g, f = _group_and_map(args, base)
    w = _window(args, base)
    report = {"command": "conjugate-shift", "group": g.to_json(), "window": w.to_json()}
    try:
        attempt = monotone_to_shift(f, g, w, max_steps=args.max_steps)
    except PreconditionError as exc:
        if not isinstance(g, Cyclic):
            raise
        # on a lattice, failing the preconditions is itself the obstruction
        report["precondition"] = str(exc)
        radii = _radii(args.windows) if args.windows else list(DEFAULT_RADII)
        report.update(shift_obstruction(f, radii).to_json())
        report["status"] = FAIL
        return 1, report
    report.update(attempt.to_json())
    report["status"] = PASS if attempt.ok else FAIL
    return (0 if attempt.ok else 1), report


# ---------------------------------------------------------------------------
# selftest


def _random_pl(rng, group, increasing=True):
    cuts = sorted({Fraction(rng.randint(-16, 16), 4) for _ in range(rng.randint(0, 3))})
    slopes = [Fraction(2) ** rng.randint(-2, 2) for _ in range(len(cuts) + 1)]
    if not increasing:
        slopes = [-s for s in slopes]
    b = Fraction(rng.randint(-8, 8), 2)
    pieces, lo = [], None
    for i, s in enumerate(slopes):
        hi = cuts[i] if i < len(cuts) else None
        pieces.append(Piece(lo, hi, s, b))
        if hi is not None:
            b = b + (s - slopes[i + 1]) * hi
        lo = hi
    return PLMap(pieces, group)


def _random_table_perm(rng, n):
    block = list(range(-n, n + 1))
    image = block[:]
    rng.shuffle(image)
    return TableMap(dict(zip(block, image)), Tail(1, 0), Tail(1, 0))


def _property_suite(seed: int, cases: int = 4):
    rng = random.Random(seed)
    D, Z = MAdic(2), Cyclic(1)
    small = Window(-1, 1, 2)
    zwin = Window(-8, 8)
    out = []
    for i in range(cases):
        h = _random_pl(rng, D)
        checks = []
        ident = identity(D)
        rt = CheckReport("inverse_round_trip", checked=1)
        if invert(invert(h)) != h or compose(h, invert(h)) != ident:
            rt.fail(map=i)
        checks.append(rt)
        T = TransportedGroup(D, h)
        checks.append(verify_axioms(T, small))
        checks.append(verify_isomorphism(T, small))
        f = compose(invert(h), compose(negation(D), h))
        checks.append(round_trip(D, f, h, small, role="inversion"))
        nf = normalize(f, D, Window(-2, 2, 2))
        checks.append(nf.claim6)
        s = _random_table_perm(rng, 3)
        fz = compose(invert(s), compose(as_neg_table(), s))
        nz = normalize(fz, Z, zwin)
        checks.append(nz.claim6)
        out.append(merge(f"random_case_{i}", checks))
    return out


def as_neg_table():
    return TableMap.affine(-1, 0)


def _corpus_dir():
    return resources.files("regroup") / "corpus"


def _lookup(report, dotted):
    cur = report
    for part in dotted.split("."):
        if isinstance(cur, list):
            cur = cur[int(part)]
        else:
            cur = cur[part]
    return cur


def cmd_selftest(args, base):
    corpus = _corpus_dir()
    manifest = json.loads((corpus / "cases.json").read_text())
    results = []
    all_ok = True
    with resources.as_file(corpus) as corpus_path:
        for case in manifest["cases"]:
            code, rep = dispatch(case["argv"], base=Path(corpus_path))
            problems = []
            if code != case["exit"]:
                problems.append(f"exit {code}, expected {case['exit']}")
            for key, want in case.get("expect", {}).items():
                try:
                    got = _lookup(rep, key)
                except (KeyError, IndexError, TypeError):
                    got = None
                if got != want:
                    problems.append(f"{key} = {got!r}, expected {want!r}")
            all_ok &= not problems
            results.append({"case": case["name"], "status": FAIL if problems else PASS, "problems": problems})
    props = _property_suite(args.seed, args.cases)
    all_ok &= all(r.ok for r in props)
    report = {
        "command": "selftest",
        "seed": args.seed,
        "corpus": results,
        "properties": [r.to_json() for r in props],
        "status": PASS if all_ok else FAIL,
    }
    return (0 if all_ok else 1), report


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="regroup", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, group=True, window=True):
        if group:
            sp.add_argument("--group", help="group descriptor JSON (path or inline)")
        sp.add_argument("--map", required=True, help="map JSON (path or inline)")
        if window:
            sp.add_argument("--window", required=True, help="window JSON (path or inline)")

    sp = sub.add_parser("verify-involution")
    common(sp)
    sp.set_defaults(func=cmd_verify_involution)

    sp = sub.add_parser("normalize-involution")
    common(sp)
    sp.add_argument("--method", choices=("back_and_forth", "translation"), default="back_and_forth")
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("transport")
    common(sp)
    sp.add_argument("--check", choices=("axioms", "iso", "inversion", "shift"), default="axioms")
    sp.add_argument("--shift-constant", default="1")
    sp.set_defaults(func=cmd_transport)

    sp = sub.add_parser("orbits")
    common(sp, group=False)
    sp.set_defaults(func=cmd_orbits)

    sp = sub.add_parser("counterexample")
    sp.add_argument("--scheme", default="madic:2")
    sp.add_argument("--windows", default=",".join(map(str, DEFAULT_RADII)),
                    help="comma-separated radii; radius N covers |x| < N")
    sp.add_argument("--max-iter", type=int, default=256, help="longest period searched for")
    sp.add_argument("--periodic-radius", type=int, default=1024, help="periodic points searched in [-R, R]")
    sp.set_defaults(func=cmd_counterexample)

    sp = sub.add_parser("conjugate-shift")
    common(sp)
    sp.add_argument("--max-steps", type=int, default=None)
    sp.add_argument("--windows", default=None, help="radii for the orbit obstruction fallback")
    sp.set_defaults(func=cmd_conjugate_shift)

    sp = sub.add_parser("selftest")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cases", type=int, default=4)
    sp.set_defaults(func=cmd_selftest)
    return p


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def dispatch(argv, base: Optional[Path] = None):
    """Parse and run; returns ``(exit code, report dict)`` without printing."""
    parser = build_parser()
    parser.__class__ = _Parser
    for action in parser._subparsers._group_actions:
        for sp in action.choices.values():
            sp.__class__ = _Parser
    try:
        args = parser.parse_args(argv)
    except _ArgError as exc:
        return 2, {"status": "error", "error": f"usage: {exc}"}
    try:
        code, report = args.func(args, base)
    except RegroupError as exc:
        return 2, {"command": args.subcommand, "status": "error", "error": type(exc).__name__, "message": str(exc)}
    except (KeyError, TypeError, ValueError) as exc:
        return 2, {"command": args.subcommand, "status": "error", "error": type(exc).__name__, "message": str(exc)}
    report.setdefault("command", args.subcommand)
    return code, report


def _text(report, indent=0):
    lines = []
    pad = "  " * indent
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.extend(_text(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {v}")
    return lines


def render(report, fmt="json") -> str:
    if fmt == "text":
        return "\n".join(_text(jsonable(report)))
    return json.dumps(jsonable(report), indent=2, sort_keys=True)


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    fmt = "json"
    if "--format" in argv:
        i = argv.index("--format")
        if i + 1 < len(argv):
            fmt = argv[i + 1]
            del argv[i : i + 2]
    code, report = dispatch(argv)
    out = render(report, "text" if fmt == "text" else "json")
    print(out)
    target = os.environ.get(REPORT_DIR_ENV)
    if target and "command" in report:
        path = Path(target)
        path.mkdir(parents=True, exist_ok=True)
        (path / f"{report['command']}.json").write_text(render(report) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
