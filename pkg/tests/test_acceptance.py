"""Acceptance criteria, one test each.

Run ``pytest tests/test_acceptance.py`` for a PASS/FAIL line per criterion
in the terminal summary, or ``python tests/test_acceptance.py`` directly.
"""
import os
import random
import subprocess
import sys
import time
from fractions import Fraction as F

from regroup import (
    PLMap,
    TransportedGroup,
    Window,
    check_conjugacy,
    compose,
    enumerate_window,
    example_map,
    identity,
    invert,
    is_involution,
    monotone_to_shift,
    negation,
    normalize,
    round_trip,
    shift_obstruction,
    translation,
    unique_fixed_point,
    verify_axioms,
)
from regroup.dynamics import MAdicValuation, bijection_report, periodic_point
from regroup.errors import ContinuumOfFixedPointsError, FixedPointError, RegroupError

sys.path.insert(0, os.path.dirname(__file__))
from conftest import D, Q, Z, bent_involution, pl, three_piece  # noqa: E402

RESULTS = {}


def record(number, title, ok, detail):
    RESULTS[number] = (title, ok, detail)
    assert ok, detail


def transported_axioms():
    start = time.perf_counter()
    cases = [
        ("identity", identity(Z), Window(-20, 20)),
        ("x-1", PLMap.affine(1, -1, Z), Window(-20, 20)),
        ("-x", negation(Z), Window(-20, 20)),
        ("2x on Z[1/2]", PLMap.affine(2, 0, D), Window(-2, 2, 4)),
    ]
    failures, sizes = [], []
    for name, h, w in cases:
        n = len(enumerate_window(h.group, w))
        sizes.append(n)
        rep = verify_axioms(TransportedGroup(h.group, h), w)
        if not rep.ok:
            failures.append((name, rep.counterexample))
    elapsed = time.perf_counter() - start
    ok = not failures and min(sizes[:3]) >= 41 and sizes[3] >= 65 and elapsed < 10
    return ok, f"sizes={sizes} failures={failures} runtime={elapsed:.2f}s (limit 10s)"


def involution_end_to_end():
    f = PLMap.affine(-1, 2, Z)
    nf = normalize(f, w=Window(-50, 50))
    T = nf.transported
    xs = range(-50, 51)
    sums = sum(T.add(x, y) != x + y - 1 for x in xs for y in xs)
    negs = sum(T.neg(x) != f(x) for x in xs)
    dense = normalize(bent_involution(), w=Window(-2, 2, 4))
    ok = (nf.claim6.ok and T.neutral == 1 and sums == 0 and negs == 0 and nf.claim6.checked == 101
          and dense.claim6.ok and dense.claim6.checked == 65)
    return ok, (f"Z: neutral={T.neutral} sum mismatches={sums} neg mismatches={negs}/101; "
                f"Z[1/2]: claim6={dense.claim6.status} at {dense.claim6.checked} points")


def _random_h(rng):
    cuts = sorted({F(rng.randint(-8, 8), 4) for _ in range(rng.randint(1, 2))})
    slopes = [F(2) ** rng.randint(-1, 1) for _ in range(len(cuts) + 1)]
    pieces, lo, b = [], None, F(rng.randint(-4, 4), 2)
    for i, s in enumerate(slopes):
        hi = cuts[i] if i < len(cuts) else None
        pieces.append((lo, hi, s, b))
        if hi is not None:
            b += (s - slopes[i + 1]) * hi
        lo = hi
    return pl(D, *pieces)


def equivalence_round_trips():
    lines, ok = [], True
    w = Window(-1, 1, 2)
    for seed in (11, 22, 33):
        h = _random_h(random.Random(seed))
        T = TransportedGroup(D, h)
        inversion = compose(invert(h), compose(negation(D), h))
        shift = T.shift_map(1)
        for role, f in (("inversion", inversion), ("shift", shift)):
            rep = round_trip(D, f, h, w, role=role)
            ok &= rep.ok
            lines.append(f"seed {seed} {role}: {rep.status}")
    return ok, "; ".join(lines)


def obstruction():
    f = example_map(MAdicValuation(2))
    w = Window(-(2**10), 2**10)
    bij = bijection_report(f, w)
    per = periodic_point(f, w, 2**8)
    verdict = shift_obstruction(f, [2**k for k in range(4, 13)])
    counts = [n for _, n in verdict.growth]
    shifts = {c: shift_obstruction(translation(c, Z), [16, 32, 64]).bound for c in range(1, 9)}
    ok = (bij.ok and per is None and counts == list(range(4, 13))
          and all(counts[i] < counts[i + 1] for i in range(len(counts) - 1))
          and all(shifts[c] == c for c in shifts))
    return ok, f"bijection={bij.status} periodic={per} counts={counts} shift bounds={shifts}"


def fundamental_domain():
    f = three_piece()
    w = Window(-4, 4, 5)
    att = monotone_to_shift(f, w=w)
    rep = check_conjugacy(att.t, f, translation(1, D), w) if att.t is not None else None
    ok = att.ok and rep is not None and rep.ok and rep.checked == 257
    return ok, f"status={att.status} c={att.shift_constant} checked={rep.checked if rep else 0}"


def negative_controls():
    checks = {}
    checks["x+1 not involution"] = not is_involution(translation(1, Z))
    try:
        unique_fixed_point(identity(Q))
        checks["identity continuum"] = False
    except ContinuumOfFixedPointsError:
        checks["identity continuum"] = True
    try:
        unique_fixed_point(PLMap.affine(-1, 1, Z))
        checks["1-x no lattice point"] = False
    except FixedPointError as exc:
        checks["1-x no lattice point"] = F(1, 2) in exc.rejected
    rep = check_conjugacy(identity(Z), translation(1, Z), translation(2, Z), Window(0, 10))
    checks["counterexample at 0"] = not rep.ok and rep.counterexample["x"] == 0
    return all(checks.values()), ", ".join(f"{k}={'ok' if v else 'FAILED'}" for k, v in checks.items())


def determinism():
    outs = []
    for hashseed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        env.pop("REGROUP_REPORT_DIR", None)
        proc = subprocess.run([sys.executable, "-m", "regroup", "selftest", "--seed", "5"],
                              capture_output=True, env=env)
        outs.append((proc.returncode, proc.stdout))
    ok = outs[0] == outs[1] and outs[0][0] == 0
    return ok, f"exit codes={[o[0] for o in outs]} identical={outs[0][1] == outs[1][1]} bytes={len(outs[0][1])}"


CRITERIA = [
    (1, "transported-group axioms", transported_axioms),
    (2, "involution normal form end to end", involution_end_to_end),
    (3, "regroup/conjugacy round trips", equivalence_round_trips),
    (4, "orbit obstruction for the valuation example", obstruction),
    (5, "fundamental-domain conjugacy", fundamental_domain),
    (6, "negative controls", negative_controls),
    (7, "selftest determinism", determinism),
]


def _run(number):
    _, title, fn = CRITERIA[number - 1]
    try:
        ok, detail = fn()
    except RegroupError as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    record(number, title, ok, detail)


def test_criterion_1_transported_axioms():
    _run(1)


def test_criterion_2_involution_end_to_end():
    _run(2)


def test_criterion_3_round_trips():
    _run(3)


def test_criterion_4_obstruction():
    _run(4)


def test_criterion_5_fundamental_domain():
    _run(5)


def test_criterion_6_negative_controls():
    _run(6)


def test_criterion_7_determinism():
    _run(7)


def summary_lines():
    for n in sorted(RESULTS):
        title, ok, detail = RESULTS[n]
        yield f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"


if __name__ == "__main__":
    failed = 0
    for number, _, _ in CRITERIA:
        try:
            _run(number)
        except AssertionError:
            failed += 1
    print("\n".join(summary_lines()))
    sys.exit(1 if failed else 0)
