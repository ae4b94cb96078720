"""Acceptance suite: one PASS/FAIL line per criterion, printed in the pytest
summary. Run standalone with ``python tests/test_acceptance.py``."""
import subprocess
import sys
import time
import warnings
from math import sqrt

import numpy as np
import pytest

from mebgeom import certify, cli
from mebgeom.convexsets import ConvexSet, hull_distance
from mebgeom.errors import HypothesisFailed
from mebgeom.extent import extent_profile
from mebgeom.meb import meb_oracle, minimum_enclosing_ball
from mebgeom.partition import (
    caratheodory_reduce,
    colorful_caratheodory_bruteforce,
    nd_caratheodory,
    nd_helly_point,
    nd_tverberg_search,
    radon_partition,
    tverberg_bruteforce,
)
from mebgeom.simplex import regular_simplex
from mebgeom.tolerance import Tolerance, coordinate_scale

# largest n per dimension for oracle equivalence; keeps enumeration desk-scale
ORACLE_N_CAP = {2: 40, 3: 40, 4: 30, 5: 25, 6: 20}


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_criterion_01_regular_closed_forms(acceptance):
    worst = 0.0
    t0 = time.perf_counter()
    for d in range(1, 11):
        cfg = cli.RunConfig("regular", None, True, 0, Tolerance(), 30,
                            cli.build_parser().parse_args(["regular", "--dim", str(d), "--diam", "1"]))
        _, out = cli.run(cfg)
        res = out["result"]
        width = sqrt(2 / (d + 1)) if d % 2 else sqrt(2 * (d + 1) / (d * (d + 2)))
        expected = {
            "circumradius": sqrt(d / (2 * (d + 1))),
            "inradius": sqrt(1 / (2 * d * (d + 1))),
            "width": width,
            "median_length": sqrt((d + 1) / (2 * d)),
        }
        for key, val in expected.items():
            worst = max(worst, _rel(res[key], val))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 1.0
    acceptance("1 regular-simplex closed forms d=1..10", ok, f"max rel err {worst:.2e}, {elapsed:.3f}s")
    assert ok


def test_criterion_01_regular_geometry_agrees(acceptance):
    # independent check: measure the constructed simplex directly
    worst = 0.0
    for d in range(1, 11):
        s = regular_simplex(d, 1.0)
        prof = extent_profile(s.vertices)
        m = cli.run(cli.RunConfig("regular", None, True, 0, Tolerance(), 30,
                                  cli.build_parser().parse_args(["regular", "--dim", str(d)])))[1]["result"]
        face_bary = (s.vertices.sum(axis=0) - s.vertices[0]) / d
        median = np.linalg.norm(s.vertices[0] - face_bary)
        for got, exp in [(prof.circumradius, m["circumradius"]), (prof.inradius, m["inradius"]),
                         (prof.width, m["width"]), (median, m["median_length"])]:
            worst = max(worst, _rel(got, exp))
    ok = worst <= 1e-9
    acceptance("1 regular-simplex measures agree with constructed geometry", ok, f"max rel err {worst:.2e}")
    assert ok


def test_criterion_02_worked_example(acceptance):
    tri = regular_simplex(2, 1.0).vertices
    pts = np.array([tri.mean(axis=0), tri[1], tri[2]])
    rep = certify.variant_jung_check(pts)
    beta = rep.details["barycentric_circumradius"]
    jung = rep.details["jung_bound"]
    r = rep.quantity
    ok = (abs(beta - sqrt(7 / 27)) <= 1e-9 and abs(jung - 0.5773502691896258) <= 1e-9
          and abs(r - 0.5) <= 1e-9 and rep.details["active_branch"] == "barycentric" and rep.holds)
    acceptance("2 worked example beta/jung/meb/branch", ok,
               f"beta={beta:.10f} jung={jung:.10f} r={r:.10f} branch={rep.details['active_branch']}")
    assert ok


def test_criterion_03_meb_oracle_equivalence(acceptance):
    rng = np.random.default_rng(3)
    worst, max_support_excess, mismatches = 0.0, -1, 0
    t0 = time.perf_counter()
    for i in range(500):
        d = int(rng.integers(2, 7))
        n = int(rng.integers(1, ORACLE_N_CAP[d] + 1))
        pts = rng.uniform(-1.0, 1.0, (n, d))
        solver = minimum_enclosing_ball(pts, seed=i)
        oracle = meb_oracle(pts)
        err = abs(solver.radius - oracle.radius) / max(1.0, oracle.radius)
        worst = max(worst, err)
        mismatches += err > 1e-9
        max_support_excess = max(max_support_excess, len(solver.support) - (d + 1))
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and max_support_excess <= 0 and elapsed < 60.0
    acceptance("3 MEB solver matches brute-force oracle (500 instances)", ok,
               f"max rel err {worst:.2e}, {elapsed:.1f}s")
    assert ok


def test_criterion_04_jung(acceptance):
    rng = np.random.default_rng(4)
    min_slack = np.inf
    for d in range(2, 9):
        for _ in range(1000):
            n = int(rng.integers(2, 25))
            rep = certify.jung_check(rng.uniform(-1, 1, (n, d)))
            min_slack = min(min_slack, rep.slack)
    sharp = max(abs(certify.jung_check(regular_simplex(d, 1.0).vertices).slack) for d in range(2, 9))
    ok = min_slack >= -1e-9 and sharp <= 1e-9
    acceptance("4 Jung bound on 7000 random sets, sharp on regular simplices", ok,
               f"min slack {min_slack:.3g}, regular |slack| <= {sharp:.2e}")
    assert ok


def test_criterion_05_steinhagen(acceptance):
    rng = np.random.default_rng(5)
    failures = 0
    count = 0
    for d in (1, 2, 3):
        for _ in range(300):
            n = int(rng.integers(d + 1, 20))
            pts = rng.uniform(-1, 1, (n, d))
            failures += not certify.steinhagen_check(pts).holds
            count += 1
    for d in range(4, 7):
        for _ in range(50):
            failures += not certify.steinhagen_check(rng.standard_normal((d + 1, d))).holds
            count += 1
    eq = {d: abs(certify.steinhagen_check(regular_simplex(d, 1.0).vertices).slack) for d in (2, 3)}
    ok = failures == 0 and max(eq.values()) <= 1e-9
    acceptance("5 Steinhagen bound holds, equality on regular d=2,3", ok,
               f"{count} instances, {failures} failures, equality gaps {eq[2]:.1e}/{eq[3]:.1e}")
    assert ok


def test_criterion_06_eggleston(acceptance):
    rng = np.random.default_rng(6)
    bad = 0
    rows = 0
    for i in range(1000):
        d = 2 + (i % 2)
        n = int(rng.integers(d + 1, 25))
        prof = extent_profile(rng.uniform(-1, 1, (n, d)), check=False)
        for _name, lhs, rhs in prof.eggleston():
            rows += 1
            bad += not Tolerance().leq(lhs, rhs)
    ok = bad == 0 and rows == 6000
    acceptance("6 six extent inequalities on 1000 random d=2,3 hulls", ok, f"{rows} checks, {bad} violations")
    assert ok


def test_criterion_07_perelman_pukhov(acceptance):
    rng = np.random.default_rng(7)
    bad = 0
    for d in (2, 3):
        for _ in range(200):
            pts = rng.uniform(-1, 1, (int(rng.integers(d + 1, 20)), d))
            for rep in certify.perelman_pukhov_extremes(pts):
                bad += not (rep.holds and rep.details["coarse_holds"])
    for d in range(4, 7):
        for _ in range(30):
            for rep in certify.perelman_pukhov_extremes(rng.standard_normal((d + 1, d))):
                bad += not (rep.holds and rep.details["coarse_holds"])
    gap = 0.0
    for d in range(2, 9):
        for rep in certify.perelman_pukhov_extremes(regular_simplex(d, 1.0).vertices):
            gap = max(gap, abs(rep.slack))
    ok = bad == 0 and gap <= 1e-9
    acceptance("7 radius-quotient extremes bounded, equality on regular simplices", ok,
               f"{bad} violations, regular gap {gap:.1e}")
    assert ok


def test_criterion_08_polytope_radii(acceptance):
    err_outer = err_measured = 0.0
    for d in range(2, 11):
        half_width = certify.regular_polytope_radii("simplex", d, 1).outer
        measured = extent_profile(regular_simplex(d, 1.0).vertices)
        derived = measured.width / (2 * measured.circumradius)
        closed = (sqrt(2 / (d + 1)) if d % 2 else sqrt(2 * (d + 1) / (d * (d + 2)))) / (2 * sqrt(d / (2 * (d + 1))))
        err_outer = max(err_outer, abs(half_width - closed))
        err_measured = max(err_measured, abs(derived - closed))
    err_inner = 0.0
    for d in range(1, 11):
        with warnings.catch_warnings():
            warnings.simplefilter("error", certify.FormulaConsistencyWarning)
            err_inner = max(err_inner, abs(certify.regular_polytope_radii("simplex", d, d).inner - 1 / d))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        certify.regular_polytope_radii("cube", 3, 3)
        certify.regular_polytope_radii("cross", 4, 4)
    warned = sum(issubclass(w.category, certify.FormulaConsistencyWarning) for w in caught)
    ok = err_outer <= 1e-12 and err_measured <= 1e-9 and err_inner <= 1e-12 and warned == 2
    acceptance("8 simplex outer r_1 = half-width, inner r_d = 1/d, cube/cross probe warns", ok,
               f"errors {err_outer:.1e}/{err_inner:.1e}, measured {err_measured:.1e}, {warned} consistency warnings")
    assert ok


def test_criterion_09_partitions(acceptance):
    rng = np.random.default_rng(9)
    radon_bad = 0
    for _ in range(1000):
        d = int(rng.integers(1, 6))
        pts = rng.uniform(-1, 1, (d + 2, d))
        cert = radon_partition(pts)
        radon_bad += cert.residual > 1e-9 * coordinate_scale(pts)

    tverberg_runs = 0
    for d in (1, 2):
        for p in range(2, 6):
            n = (p - 1) * (d + 1) + 1
            if n > 9:
                continue
            for _ in range(5):
                cert = tverberg_bruteforce(rng.uniform(-1, 1, (n, d)), p)
                assert len(cert.parts) == p
                tverberg_runs += 1

    cara_bad = 0
    for _ in range(500):
        d = int(rng.integers(1, 7))
        n = int(rng.integers(1, 30))
        pts = rng.uniform(-1, 1, (n, d))
        a = rng.dirichlet(np.ones(n)) @ pts
        comb = caratheodory_reduce(pts, a)
        cara_bad += (len(comb.indices) > d + 1 or comb.reconstruction_error > 1e-9 * coordinate_scale(pts)
                     or comb.weights.min() < 0 or abs(comb.weights.sum() - 1) > 1e-12)

    colorful = 0
    origin = np.zeros(2)
    while colorful < 100:
        classes = []
        for _ in range(3):
            while True:
                c = rng.uniform(-1, 1, (int(rng.integers(3, 6)), 2))
                if hull_distance(origin, c)[0] <= 1e-12:
                    break
            classes.append(c)
        sel = colorful_caratheodory_bruteforce(classes, origin)
        assert hull_distance(origin, sel.points)[0] <= 1e-9
        colorful += 1
    ok = radon_bad == 0 and cara_bad == 0
    acceptance("9 Radon/Tverberg/Caratheodory/colorful suite", ok,
               f"radon bad {radon_bad}/1000, tverberg {tverberg_runs} threshold runs, "
               f"caratheodory bad {cara_bad}/500, colorful {colorful}/100")
    assert ok


def _helly_family(rng):
    d = int(rng.integers(2, 4))
    b = rng.uniform(-1, 1, d)
    sets = []
    for _ in range(int(rng.integers(2, 6))):
        kind = rng.integers(3)
        u = rng.standard_normal(d)
        u /= np.linalg.norm(u)
        gap = rng.uniform(0.0, 0.95)
        if kind == 0:
            sets.append(ConvexSet.halfspace(-u, -(u @ b) - gap))
        elif kind == 1:
            rad = rng.uniform(0.3, 1.5)
            sets.append(ConvexSet.from_ball(b + u * (gap + rad), rad))
        else:
            centre = b + u * (gap + 0.6)
            sets.append(ConvexSet.hull(centre + rng.uniform(-0.6, 0.6, (d + 2, d))))
    k = int(rng.integers(1, min(3, len(sets)) + 1))
    return sets, k, b


def test_criterion_10_no_dimension(acceptance):
    rng = np.random.default_rng(10)
    cara_bad = 0
    for _ in range(500):
        d = int(rng.integers(1, 9))
        n = int(rng.integers(1, 65))
        r = int(rng.integers(1, min(32, n) + 1))
        pts = rng.uniform(-1, 1, (n, d))
        a = rng.dirichlet(np.ones(n)) @ pts
        cara_bad += not nd_caratheodory(pts, a, r).holds

    tverberg_bad = tverberg_runs = 0
    for n in range(1, 10):
        for _ in range(3):
            d = int(rng.integers(1, 5))
            k = int(rng.integers(1, n + 1))
            cert = nd_tverberg_search(rng.uniform(-1, 1, (n, d)), k)
            assert cert.exhaustive
            tverberg_runs += 1
            tverberg_bad += not cert.details["holds"]

    helly_done = helly_bad = 0
    worst_margin = -np.inf
    while helly_done < 100:
        family, k, b = _helly_family(rng)
        try:
            res = nd_helly_point(family, k, b)
        except HypothesisFailed:
            continue
        helly_done += 1
        worst_margin = max(worst_margin, res.max_distance - res.bound)
        helly_bad += res.max_distance > 1 / sqrt(k) + 1e-12
    ok = cara_bad == 0 and tverberg_bad == 0 and helly_bad == 0
    acceptance("10 no-dimension Caratheodory/Tverberg/Helly bounds", ok,
               f"caratheodory bad {cara_bad}/500, tverberg bad {tverberg_bad}/{tverberg_runs}, "
               f"helly bad {helly_bad}/100 (worst dist - bound {worst_margin:.3f})")
    assert ok


def test_criterion_11_cli(acceptance, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("0,0\n1,zz\n")
    ragged = tmp_path / "ragged.csv"
    ragged.write_text("0,0\n1\n")
    good = tmp_path / "pts.csv"
    good.write_text("# x,y\n" + "\n".join(f"{x:.17g},{y:.17g}" for x, y in
                                            np.random.default_rng(11).uniform(-1, 1, (30, 2))) + "\n")

    def call(*args):
        return subprocess.run([sys.executable, "-m", "mebgeom", *args], capture_output=True, text=True)

    r1 = call("meb", "--input", str(bad))
    r2 = call("meb", "--input", str(ragged))
    parse_ok = (r1.returncode == 2 and "row 2, column 2" in r1.stderr
                and r2.returncode == 2 and "row 2" in r2.stderr)
    runs = [call("profile", "--input", str(good), "--json", "--seed", "7") for _ in range(2)]
    stable = runs[0].returncode == 0 and runs[0].stdout == runs[1].stdout and runs[0].stdout
    ok = bool(parse_ok and stable)
    acceptance("11 CLI parse errors exit 2 with location; JSON byte-stable", ok,
               f"exit codes {r1.returncode}/{r2.returncode}, identical output {bool(stable)}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
