"""Exit criteria of the artifact, one test per criterion.

Each criterion returns ``(passed, detail)``; the tests print one
``criterion K: PASS|FAIL ...`` line each (also collected into the pytest
terminal summary).  ``python3 tests/test_acceptance.py`` runs them standalone.
"""

import math
import os
import subprocess
import sys
import tempfile
import time

import numpy as np
import pytest

from hardy_cones import cli
from hardy_cones.eigensolver import ConeSpec, WeightKind, assemble, build_mesh, lambda1_star, smallest_eigenpair
from hardy_cones.hardy import asymptotic_ratio, bounds_report, mu_cone, subcritical_witness, sweep
from hardy_cones.special_functions import cone_bessel_order, first_bessel_zero
from hardy_cones.suite import SLACK_TOL, load_suite, run_suite
from hardy_cones.verify import IdentityCheckParams, identity_l11_check

HALF = math.pi / 2


def criterion_1():
    worst_rel, worst_t = 0.0, 0.0
    for dim in (3, 4, 5, 7):
        t0 = time.perf_counter()
        h = mu_cone(ConeSpec(dim, HALF))
        worst_t = max(worst_t, time.perf_counter() - t0)
        rel = max(abs(h.lambda1 - (dim - 1)) / (dim - 1), abs(h.mu - dim * dim / 4) / (dim * dim / 4))
        worst_rel = max(worst_rel, rel)
    ok = worst_rel <= 1e-6 and worst_t <= 2.0
    return ok, f"max rel err {worst_rel:.2e} (tol 1e-6), slowest case {worst_t:.3f}s (limit 2s)"


def criterion_2():
    worst = 0.0
    for dim in (3, 4, 5):
        b1 = first_bessel_zero(cone_bessel_order(dim)).value
        for g in (0.3, 1.0, 2.5):
            val = lambda1_star(ConeSpec(dim, g)).lam * g * g
            worst = max(worst, abs(val / b1 ** 2 - 1))
            if dim == 4:
                worst = max(worst, abs(val / math.pi ** 2 - 1))
    return worst <= 1e-6, f"max rel deviation from B1^2 {worst:.2e} (tol 1e-6)"


_SWEEPS = {}


def _grid_sweep(dim):
    if dim not in _SWEEPS:
        _SWEEPS[dim] = sweep(dim, 0.1, 3.0, 50)
    return _SWEEPS[dim]


def criterion_3():
    t0 = time.perf_counter()
    bad, min_slack, failed = 0, math.inf, 0
    for dim in (3, 4, 5):
        for r in _grid_sweep(dim).rows:
            if r.failed:
                failed += 1
                continue
            for name in ("lower_bessel", "upper_bessel"):
                s = r.bounds.check(name).slack  # slack already includes eps = err + 1e-8
                min_slack = min(min_slack, s)
                bad += s < 0
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and failed == 0 and elapsed <= 120
    return ok, f"150 points, {bad} violations, {failed} failed rows, min slack {min_slack:.3e}, {elapsed:.1f}s (limit 120s)"


def criterion_4():
    gammas = np.linspace(HALF / 20, HALF, 20)
    bad, tight = 0, 0.0
    for dim in (3, 4, 5):
        for g in gammas:
            rep = bounds_report(ConeSpec(dim, float(g)))
            bad += rep.check("lower_convex").slack < 0
        rep = bounds_report(ConeSpec(dim, HALF))
        tight = max(tight, abs(rep.lambda1_numeric - rep.lower_convex))
    ok = bad == 0 and tight <= 1e-6
    return ok, f"60 cones, {bad} violations; |lambda1 - bound| at pi/2 max {tight:.2e} (tol 1e-6)"


def criterion_5():
    ratios = {dim: asymptotic_ratio(dim, 0.05) for dim in (3, 4, 5)}
    dev = max(abs(r - 1) for r in ratios.values())
    return dev <= 2e-3, "ratios " + ", ".join(f"N={d}: {r:.6f}" for d, r in ratios.items()) + " (|r-1| <= 2e-3)"


def criterion_6():
    problems = []
    for dim in (3, 4, 5):
        lam = _grid_sweep(dim).lambdas
        if not np.all(np.diff(lam) < 0):
            problems.append(f"N={dim} grid sweep not strictly decreasing")
        t = sweep(dim, HALF - 0.01, HALF + 0.01, 21)  # spacing 1e-3
        lam = t.lambdas
        if not (np.all(np.diff(lam) < 0) and t.monotone):
            problems.append(f"N={dim} fine sweep not strictly decreasing")
        if not lam[0] > dim - 1 > lam[-1]:
            problems.append(f"N={dim} fine sweep does not bracket N-1")
        # continuity: neighbouring values differ by O(grid spacing)
        if np.max(np.abs(np.diff(lam))) > 10 * 1e-3 * dim:
            problems.append(f"N={dim} jump in fine sweep")
        if abs(lam[10] - (dim - 1)) > 1e-6:
            problems.append(f"N={dim} midpoint {lam[10]} != N-1")
    return not problems, "; ".join(problems) or "grid and 1e-3 sweeps strictly decreasing; N-1 bracketed continuously"


def _dense_oracle(dim, gamma, n=2 ** 14):
    # raw Galerkin eigenvalue on a fine mesh: an upper bound for lambda1
    pencil = assemble(build_mesh(ConeSpec(dim, gamma), n), dim, WeightKind.TRIG_POWER)
    return smallest_eigenpair(pencil)[0]


def criterion_7():
    parts, ok = [], True
    for dim, g in ((3, 2.2), (4, 2.0)):
        h = subcritical_witness(dim, g)
        margin = dim * dim / 4 - h.mu
        oracle_margin = dim * dim / 4 - ((dim - 2) ** 2 / 4 + _dense_oracle(dim, g))
        agree = abs(margin - oracle_margin) <= 1e-6
        ok &= margin > 0.05 and oracle_margin > 0.05 and agree
        parts.append(f"N={dim}, gamma={g}: mu={h.mu:.6f}, margin {margin:.4f} (dense oracle {oracle_margin:.4f})")
    return ok, "; ".join(parts)


def criterion_8():
    parts, ok = [], True
    for g in (1.0, 0.0, -0.5):
        rep = identity_l11_check(IdentityCheckParams(g, 1.0), raise_on_residual=False)
        ok &= rep.relative_residual <= 1e-6 and rep.min_order >= 2
        parts.append(f"g={g}: res {rep.relative_residual:.1e}, min order {rep.min_order:.2f}")
    return ok, "; ".join(parts)


def criterion_9():
    with tempfile.TemporaryDirectory() as tmp:
        code = cli.main(["verify", "--fmt", "csv", "--out", os.path.join(tmp, "verify.csv")])
    results = run_suite(load_suite())
    min_slack = min(r.slack for r in results if not math.isnan(r.slack))
    all_pass = all(r.passed for r in results)
    checks = {r.check for r in results}
    covered = {"hardy_1d", "log_lemma", "half_space", "improved_log"} <= checks

    def best_gap(pred, target):
        vals = [r.value for r in results if pred(r)]
        return (min(vals) - target) / target

    gap_1d = best_gap(lambda r: r.check == "hardy_1d", 0.25)
    gaps_hs = {}
    for r in results:
        if r.check == "half_space":
            dim = int(r.record.values[0])
            gaps_hs[dim] = min(gaps_hs.get(dim, math.inf), (r.value - r.target) / r.target)
    near = gap_1d <= 0.05 and all(g <= 0.05 for g in gaps_hs.values())
    ok = code == 0 and all_pass and min_slack >= -SLACK_TOL and covered and near and len(results) >= 20
    hs = ", ".join(f"N={d}: {g:.2%}" for d, g in sorted(gaps_hs.items()))
    return ok, (f"{len(results)} trials, cli exit {code}, min slack {min_slack:.3e}; "
                f"closest to 1/4: {gap_1d:.2%}; closest to N^2/4: {hs}")


def criterion_10():
    cmd = [sys.executable, "-m", "hardy_cones", "sweep", "--dim", "3", "--gamma-min", "0.5",
           "--gamma-max", "2.5", "--steps", "21", "--fmt", "csv"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    ok = a.returncode == 0 and a.stdout == b.stdout and len(a.stdout) > 0
    return ok, f"two runs, {len(a.stdout)} bytes each, identical={a.stdout == b.stdout}, exit {a.returncode}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _line(k, ok, detail):
    return f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.acceptance
@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k, acceptance_log):
    ok, detail = CRITERIA[k - 1]()
    acceptance_log(_line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for k, crit in enumerate(CRITERIA, start=1):
        ok, detail = crit()
        failures += not ok
        print(_line(k, ok, detail), flush=True)
    sys.exit(1 if failures else 0)
