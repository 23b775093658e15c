"""Acceptance criteria 1-8.

Each test prints one ``PASS criterion N: ...`` or ``FAIL criterion N: ...`` line
straight to the terminal and then asserts.  Run alone with

    pytest tests/test_acceptance.py -v

or as a script: ``python3 tests/test_acceptance.py``.
"""
import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction as Q

import pytest

from mgn_divisors.ample_model import GridSpec, Model, RationalRange, recover_walls, sweep, uniqueness_check
from mgn_divisors.divisor_algebra import (
    DivisorClass,
    Space,
    canonical_divisor,
    canonical_pullback,
    from_adjoint,
    index_set_of,
    pullback_upsilon,
    push_pull_defect,
    pushforward_upsilon,
)
from mgn_divisors.fcurves import intersect_bridge, weight
from mgn_divisors.geometry_props import descends, is_q_factorial
from mgn_divisors.index_set import MarkedGenus, count_admissible, enumerate_admissible, t_adm, t_div, bridge_types
from mgn_divisors.positivity import (
    Mode,
    Status,
    adjoint_fnef_closed_form,
    brute_force_verdict,
    ps_adjoint_fnef_for_T,
    random_adjoint_params,
    verdict_matches_T,
    wall_params,
)

MGN, PS = Space.MGN, Space.MGN_PS
ORACLE_INSTANCES = [(2, 1), (3, 1), (2, 2), (4, 0), (1, 3)]
SAMPLES = 1000
SEED = 20240601


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
        with capsys.disabled():
            print("\n" + line)
        return ok
    return emit


def _random_class(amb, space, rng):
    r = lambda: Q(rng.randint(-48, 48), rng.choice([1, 2, 3, 4, 6, 12, 24]))
    return DivisorClass(space, amb, r(), r(), {k: r() for k in index_set_of(amb, space)})


# 1

def test_criterion_1_counting(report):
    t0 = time.perf_counter()
    rows = []
    for gn in [(1, 1), (2, 0), (3, 0), (4, 0), (5, 0), (1, 2), (2, 1), (2, 2), (1, 3)]:
        amb = MarkedGenus(*gn)
        rows.append((gn, sum(1 for _ in enumerate_admissible(amb)), count_admissible(amb)))
    dt = time.perf_counter() - t0
    bad = [r for r in rows if r[1] != r[2]]
    ok = not bad and dt < 10
    detail = ", ".join(f"{g},{n}:{e}" for (g, n), e, _ in rows)
    report(1, ok, f"enumerated = closed form on 9 instances ({detail}); {dt:.2f}s" + (f"; mismatches {bad}" if bad else ""))
    assert ok


# 2

def _criterion_2_ambients():
    return [MarkedGenus(g, n) for g in range(2, 7) for n in range(0, 4) if g + n <= 7]


def test_criterion_2_constants(report):
    t0 = time.perf_counter()
    irr_vals, pair_vals, weight_bad = set(), set(), []
    for amb in _criterion_2_ambients():
        K = canonical_divisor(amb, PS)
        for B in bridge_types(amb):
            if B.is_irr:
                irr_vals.add(intersect_bridge(K, B))
            elif B.tau == 0 and len(B.marks) == 1:
                pair_vals.add(intersect_bridge(K, B))
            if weight(DivisorClass.lambda_class(amb, PS), B) != 1:
                weight_bad.append((str(amb), str(B), "lambda"))
            if weight(DivisorClass.delta_irr(amb, PS), B) != (10 if B.is_irr else 12):
                weight_bad.append((str(amb), str(B), "irr"))
            for key in index_set_of(amb, PS):
                w = weight(DivisorClass.basis_element(amb, key, PS), B)
                if w != (-1 if key in B.slots else 0):
                    weight_bad.append((str(amb), str(B), f"delta{key} = {w}"))
    dt = time.perf_counter() - t0
    ok = irr_vals == {-7} and pair_vals == {-8} and not weight_bad and dt < 1
    detail = (f"K.C(irr) values {sorted(map(str, irr_vals))}, K.C(0,{{j}}) values {sorted(map(str, pair_vals))} "
              f"on {len(_criterion_2_ambients())} instances; {dt:.2f}s")
    if weight_bad:
        detail += (f"; weight table off on {len(weight_bad)} entries, e.g. {weight_bad[0]} "
                   "(a bridge whose two slots are one class counts it twice)")
    report(2, ok, detail)
    assert ok


# 3

def _mgn_oracle(amb):
    rng = random.Random(SEED + 1)
    t0 = time.perf_counter()
    bad, on_wall = 0, 0
    for _ in range(SAMPLES):
        p = random_adjoint_params(amb, rng)
        # force the threshold of the first condition on every fourth draw
        if rng.random() < 0.25:
            w = (9 - p.a + p.alpha_tail) / 12
            if 0 <= w <= 1:
                p = p.replace(alpha_irr=w)
        if p.alpha_irr == (9 - p.a + p.alpha_tail) / 12:
            on_wall += 1
        status = brute_force_verdict(from_adjoint(p)).status
        bad += adjoint_fnef_closed_form(p, Mode.AMPLE) != (status is Status.F_AMPLE)
        bad += adjoint_fnef_closed_form(p, Mode.NEF_ELL_ONLY) != (status is Status.F_NEF_STRICT_EXCEPT_ELL)
    return bad, on_wall, time.perf_counter() - t0


def test_criterion_3_mgn_oracle(report):
    parts, ok = [], True
    for gn in ORACLE_INSTANCES:
        bad, on_wall, dt = _mgn_oracle(MarkedGenus(*gn))
        ok = ok and bad == 0 and dt < 60
        parts.append(f"({gn[0]},{gn[1]}) {bad} discrepancies, {on_wall} on threshold, {dt:.1f}s")
    report(3, ok, f"{SAMPLES} points per instance, both modes: " + "; ".join(parts))
    assert ok


# 4

def _ps_oracle(amb):
    rng = random.Random(SEED + 2)
    Ts = list(enumerate_admissible(amb))
    if len(Ts) > 64:
        Ts = rng.sample(Ts, 64)
    t0 = time.perf_counter()
    points = [random_adjoint_params(amb, rng, PS) for _ in range(SAMPLES)]
    # equality cases of the irr condition and of every pair condition at once
    for T in Ts:
        for a in (Q(0), Q(1, 2), Q(1)):
            for ai in [(7 - a) / 10] + [Q(k, 24) for k in range(12, 25)]:
                w = wall_params(amb, T, a, ai)
                if w is not None:
                    points.append(w)
    bad, matches = 0, 0
    for p in points:
        L = from_adjoint(p)
        for T in Ts:
            closed = ps_adjoint_fnef_for_T(p, T)
            matches += closed
            bad += closed != verdict_matches_T(L, T)
    return len(points), len(Ts), matches, bad, time.perf_counter() - t0


def test_criterion_4_ps_oracle(report):
    parts, ok = [], True
    for gn in ORACLE_INSTANCES:
        n_pts, n_t, matches, bad, dt = _ps_oracle(MarkedGenus(*gn))
        ok = ok and bad == 0
        parts.append(f"({gn[0]},{gn[1]}) {n_pts} points x {n_t} T, {matches} positive, {bad} discrepancies, {dt:.1f}s")
    report(4, ok, "; ".join(parts))
    assert ok


# 5

def test_criterion_5_push_pull(report):
    parts, ok = [], True
    for gn in ORACLE_INSTANCES:
        amb = MarkedGenus(*gn)
        rng = random.Random(SEED + 3)
        tail = DivisorClass.delta(amb, 1)
        bad_defect = bad_round = 0
        for _ in range(SAMPLES):
            p = random_adjoint_params(amb, rng)
            L = from_adjoint(p)
            diff = L - pullback_upsilon(pushforward_upsilon(L))
            expected = 9 + p.alpha_tail - p.a - 12 * p.alpha_irr
            if push_pull_defect(p) != expected or diff != tail.scale(expected):
                bad_defect += 1
            M = _random_class(amb, PS, rng)
            if pushforward_upsilon(pullback_upsilon(M)) != M:
                bad_round += 1
        ok = ok and bad_defect == 0 and bad_round == 0
        parts.append(f"({gn[0]},{gn[1]}) {bad_defect}/{bad_round}")
    report(5, ok, f"{SAMPLES} adjoint points and {SAMPLES} classes per instance, "
                  f"push-pull/round-trip failures: " + ", ".join(parts))
    assert ok


# 6

EXPECTED_WALLS = {
    (Q(3, 4), Q(1, 12)): "alpha_irr = (9+alpha)/12",
    (Q(3, 4), Q(0)): "alpha_irr = 9/12",
    (Q(7, 10), Q(0)): "alpha_irr = 7/10",
    (Q(7, 12), Q(1, 6)): "alpha_irr = (7+2 alpha)/12",
}


def test_criterion_6_walls(report):
    amb = MarkedGenus(3, 1)
    step = Q(1, 60)
    grid = GridSpec(amb, RationalRange.point(0), RationalRange(0, 1, step), alpha=RationalRange(0, 1, step))
    t0 = time.perf_counter()
    records = list(sweep(grid))
    rep = recover_walls(records)
    found = rep.lines()
    failed_unique = 0
    checked = 0
    for r in records:
        res = r.result
        if res.t is not None and res.model in (Model.UPSILON_T, Model.UPSILON_PS):
            checked += 1
            if not uniqueness_check(r.point, res):
                failed_unique += 1
    dt = time.perf_counter() - t0
    ok = found == set(EXPECTED_WALLS) and failed_unique == 0
    names = sorted(EXPECTED_WALLS[l] for l in found if l in EXPECTED_WALLS)
    extra = sorted(found - set(EXPECTED_WALLS))
    missing = sorted(set(EXPECTED_WALLS) - found)
    detail = (f"{len(records)} points, walls {names}; "
              f"{checked} UpsilonT points, {failed_unique} fail uniqueness; "
              f"region boundary {[str(w) for w in rep.region_boundary]}; {dt:.1f}s")
    if extra or missing:
        detail += f"; extra {extra} missing {missing}"
    report(6, ok, detail)
    assert ok


# 7

def test_criterion_7_descent(report):
    rows = []
    problems = []
    for gn in [(3, 1), (2, 2)]:
        amb = MarkedGenus(*gn)
        K = canonical_divisor(amb, PS)
        for T in enumerate_admissible(amb):
            qf = is_q_factorial(T)
            if qf != (t_adm(T) == t_div(T)):
                problems.append(f"Q-factorial mismatch at {T}")
            try:
                C = canonical_pullback(T)
            except ValueError:
                C = None
            if C is not None and not descends(C, T):
                problems.append(f"canonical pullback does not descend at {T}")
            if len(t_adm(T)) and descends(K, T):
                problems.append(f"K descends at {T}")
            rows.append(T)
    ok = not problems
    report(7, ok, f"{len(rows)} admissible T on (3,1),(2,2); " + ("; ".join(problems) if problems else "all three checks hold"))
    assert ok


# 8

def _cli(argv, cwd):
    env = dict(os.environ)
    return subprocess.run([sys.executable, "-m", "mgn_divisors.cli_io", *argv], capture_output=True, cwd=cwd, env=env)


def test_criterion_8_determinism(report, tmp_path):
    files = {
        "lam.json": {"space": "Mgn", "g": 2, "n": 0, "lambda": "1", "irr": "0", "boundary": []},
        "ell.json": {"family": "Ell", "parts": []},
        "kps.json": {"space": "MgnPs", "g": 3, "n": 1, "lambda": "13", "irr": "-2",
                     "boundary": [{"i": 0, "I": [1], "c": "-1"}, {"i": 1, "I": [1], "c": "-2"}]},
        "t.json": {"g": 3, "n": 1, "irr": False, "pairs": [[0, [1]], [1, [1]]]},
        "p.json": {"g": 3, "n": 1, "a": "0", "alpha_irr": "7/10", "alpha": "7/10"},
        "grid.json": {"g": 3, "n": 1, "a": "0", "alpha": {"start": "0", "stop": "1", "step": "1/6"},
                      "alpha_irr": {"start": "1/2", "stop": "1", "step": "1/12"}},
    }
    for name, obj in files.items():
        (tmp_path / name).write_text(json.dumps(obj))
    commands = [
        ["indices", "list", "--g", "3", "--n", "2"],
        ["admissible", "count", "--g", "2", "--n", "2"],
        ["admissible", "list", "--g", "2", "--n", "2"],
        ["fcurves", "list", "--g", "3", "--n", "1"],
        ["intersect", "--divisor", "lam.json", "--curve", "ell.json"],
        ["nef", "check", "--divisor", "lam.json"],
        ["nef", "check", "--divisor", "kps.json", "--space", "ps", "--t", "t.json"],
        ["ample-model", "classify", "--params", "p.json"],
        ["sweep", "--spec", "grid.json", "--walls"],
        ["space", "props", "--t", "t.json"],
        ["descend", "--divisor", "kps.json", "--t", "t.json"],
        ["crosscheck", "--g", "3", "--n", "1", "--samples", "30", "--seed", "7"],
    ]
    differing = []
    for argv in commands:
        a, b = _cli(argv, tmp_path), _cli(argv, tmp_path)
        if (a.stdout, a.stderr, a.returncode) != (b.stdout, b.stderr, b.returncode) or not a.stdout:
            differing.append(argv[0])
    ok = not differing
    report(8, ok, f"{len(commands)} commands run twice, byte-identical stdout/stderr" if ok else f"differ: {differing}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
