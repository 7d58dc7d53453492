"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines while
passing; tolerances are pinned here and nowhere else.
"""

import itertools
import math
import time

import numpy as np
import pytest

from hadamard6.classify import (
    canonical_condition,
    contraction_precheck,
    fourier6,
    is_hadamard,
    s6_detect,
    tao_s6,
)
from hadamard6.core import TWO_PI, DegenerateFamilyError, turns_from_unit, unit_from_turns
from hadamard6.cli import main, scan_rows
from hadamard6.dilation import Quadruple, circle_roots, dilate, example_quadruple
from hadamard6.oracle import (
    completion_recheck,
    mil_check,
    poly_roots,
    sixth_root_triplets,
)
from hadamard6.triplet import decomposition, haagerup_poly, triplet_residual

SQRT3 = math.sqrt(3.0)


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture(scope="module")
def production_matrices():
    """Example-seed matrices plus the first few scan-found ones."""
    mats = list(dilate(example_quadruple()).matrices)
    rows = scan_rows(60, 11)
    taken = 0
    for row in rows:
        if taken >= 8 or int(row["n_found"]) == 0:
            continue
        quad = Quadruple.from_turns(*(float(row[f"p{i}"]) for i in (1, 2, 3, 4)))
        mats.extend(dilate(quad).matrices)
        taken += 1
    return mats


def test_criterion_1_example_seed():
    # independent oracle for the cubic root: bisection on 4x^3 - 2x + 1
    lo, hi = -1.0, 0.0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if (4 * mid**3 - 2 * mid + 1 < 0) == (4 * lo**3 - 2 * lo + 1 < 0):
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    assert abs(root - (-0.884646)) < 1e-6

    quad = example_quadruple()
    assert abs(quad.a.real - root) < 1e-12
    assert abs(quad.a.imag - math.sqrt(1 - root * root)) < 1e-12

    t0 = time.perf_counter()
    report = dilate(quad)
    elapsed = time.perf_counter() - t0

    ok_found = len(report.matrices) >= 1
    ok_resid = all(is_hadamard(h)[1] < 1e-8 for h in report.matrices)
    ok_core = all(
        np.abs(h[1:, 1:] + 1.0).min() > 1e-6 for h in report.matrices
    )
    ok_pairs = True
    for h in report.matrices:
        for line in itertools.chain(h, h.T):
            for i, j in itertools.combinations(range(6), 2):
                if abs(line[i] + line[j]) <= 1e-6:
                    ok_pairs = False
    ok_s6 = all(not s6_detect(h) for h in report.matrices)
    ok_time = elapsed < 2.0
    _report(
        1,
        all((ok_found, ok_resid, ok_core, ok_pairs, ok_s6, ok_time)),
        f"{len(report.matrices)} matrices, max residual "
        f"{max(is_hadamard(h)[1] for h in report.matrices):.2e}, "
        f"runtime {elapsed:.3f}s",
    )
    assert ok_found and ok_resid and ok_core and ok_pairs and ok_s6 and ok_time


def test_criterion_2_identity_suite(production_matrices):
    worst_res = 0.0
    worst_im = 0.0
    worst_bound = -math.inf
    mats = [fourier6(), tao_s6()] + production_matrices
    for h in mats:
        for mat in (h, h.T):
            for i, j in itertools.permutations(range(1, 6), 2):
                a, b, e = mat[i, 1], mat[i, 2], mat[i, 3]
                c, d, f = mat[j, 1], mat[j, 2], mat[j, 3]
                res, _ = triplet_residual(a, b, c, d, e, f)
                hg = haagerup_poly(a, b, c, d, e, f)
                worst_res = max(worst_res, res)
                worst_im = max(worst_im, abs(hg.imag))
                worst_bound = max(worst_bound, abs(hg) - 8.0)
    ok = worst_res < 1e-7 and worst_im < 1e-7 and worst_bound <= 1e-7
    _report(
        2,
        ok,
        f"{len(mats)} matrices: max identity residual {worst_res:.2e}, "
        f"max Im {worst_im:.2e}, max(|H|-8) {worst_bound:.2e}",
    )
    assert ok


def test_criterion_3_sixth_root_remark():
    t0 = time.perf_counter()
    recs = sixth_root_triplets()
    elapsed = time.perf_counter() - t0
    found1 = found2 = False
    for rec in recs:
        s, d, p = abs(rec.stats.sigma), abs(rec.stats.delta), abs(rec.stats.psi)
        if abs(s - SQRT3) < 1e-9 and abs(d - SQRT3) < 1e-9:
            found1 = found1 or abs(p - 1.0) < 1e-9
            found2 = found2 or abs(p - 2.0) < 1e-9
    ok = found1 and found2 and elapsed < 60.0
    _report(
        3,
        ok,
        f"{len(recs)} orthogonal pairs, (sqrt3,sqrt3,1): {found1}, "
        f"(sqrt3,sqrt3,2): {found2}, runtime {elapsed:.2f}s",
    )
    assert ok


def _theta_set(roots):
    return sorted(turns_from_unit(z) * TWO_PI for z in roots)


def _hausdorff(xs, ys):
    if not xs and not ys:
        return 0.0
    if not xs or not ys:
        return math.inf

    def d(t, s):
        raw = abs(t - s) % TWO_PI
        return min(raw, TWO_PI - raw)

    return max(
        max(min(d(x, y) for y in ys) for x in xs),
        max(min(d(y, x) for x in xs) for y in ys),
    )


def test_criterion_4_oracle_root_agreement():
    rng = np.random.default_rng(2024)
    checked = 0
    worst = 0.0
    degenerate_agreements = 0
    while checked < 50:
        quad = Quadruple.from_turns(*rng.random(4))
        if not canonical_condition(quad)[0]:
            continue
        if not contraction_precheck(quad.block())[0]:
            continue
        checked += 1
        try:
            grid = _theta_set(circle_roots(quad))
            grid_degen = False
        except DegenerateFamilyError:
            grid_degen = True
        try:
            comp = _theta_set(poly_roots(quad))
            poly_degen = False
        except DegenerateFamilyError:
            poly_degen = True
        assert grid_degen == poly_degen
        if grid_degen:
            degenerate_agreements += 1
            continue
        worst = max(worst, _hausdorff(grid, comp))
    ok = worst < 1e-7
    _report(
        4,
        ok,
        f"50 seeds: worst theta Hausdorff distance {worst:.2e}, "
        f"degenerate agreements {degenerate_agreements}",
    )
    assert ok


def test_criterion_5_decomposition_property():
    rng = np.random.default_rng(5)
    worst_sum = 0.0
    worst_mod = 0.0
    n = 0
    while n < 100_000:
        sigma = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(sigma) > 2.0:
            continue
        n += 1
        s1, s2 = decomposition(sigma)
        worst_sum = max(worst_sum, abs(s1 + s2 + sigma))
        worst_mod = max(worst_mod, abs(abs(s1) - 1.0), abs(abs(s2) - 1.0))
    ok = worst_sum <= 1e-12 and worst_mod <= 1e-12
    _report(
        5,
        ok,
        f"1e5 draws: max |s1+s2+sigma| {worst_sum:.2e}, "
        f"max ||s|-1| {worst_mod:.2e}",
    )
    assert ok


def test_criterion_6_mil_and_completion(production_matrices):
    rng = np.random.default_rng(6)
    worst_mil = 0.0
    for _ in range(1000):
        u = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        v = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        u *= 0.9 / np.linalg.norm(u, 2)
        v *= 0.9 / np.linalg.norm(v, 2)
        worst_mil = max(worst_mil, mil_check(u, v))
    worst_completion = max(completion_recheck(h) for h in production_matrices)
    ok = worst_mil < 1e-10 and worst_completion < 1e-9
    _report(
        6,
        ok,
        f"1000 pairs: max inversion residual {worst_mil:.2e}; "
        f"{len(production_matrices)} matrices: max completion residual "
        f"{worst_completion:.2e}",
    )
    assert ok


def test_criterion_7_filters():
    one = 1.0 + 0.0j
    all_ones = Quadruple(one, one, one, one)
    flag, lam = contraction_precheck(all_ones.block())
    ok_contraction = (not flag) and abs(lam - 9.0) <= 1e-12
    ok_canon_ones = not canonical_condition(all_ones)[0]
    rng = np.random.default_rng(7)
    ok_canon_bc = True
    for _ in range(50):
        t = rng.random(3)
        quad = Quadruple.from_turns(t[0], t[1], t[1], t[2])
        if canonical_condition(quad)[0]:
            ok_canon_bc = False
    ok = ok_contraction and ok_canon_ones and ok_canon_bc
    _report(
        7,
        ok,
        f"all-ones lambda_max = {lam!r} rejected: {ok_contraction}; "
        f"canonical rejects (1,1,1,1): {ok_canon_ones}, b=c seeds: {ok_canon_bc}",
    )
    assert ok


def test_criterion_8_scan_determinism_and_soundness(tmp_path):
    out1 = tmp_path / "scan1.csv"
    out2 = tmp_path / "scan2.csv"
    assert main(["scan", "--count", "1000", "--seed", "7", "--out", str(out1)]) == 0
    assert main(["scan", "--count", "1000", "--seed", "7", "--out", str(out2)]) == 0
    identical = out1.read_bytes() == out2.read_bytes()

    lines = out1.read_text().splitlines()
    header = lines[0].split(",")
    idx = {name: k for k, name in enumerate(header)}
    worst = 0.0
    found_rows = 0
    sol_counts: dict[str, int] = {}
    for line in lines[1:]:
        cells = line.split(",")
        n_found = int(cells[idx["n_found"]])
        key = f"{cells[idx['n_sol_b']]}x{cells[idx['n_sol_c']]}"
        if int(cells[idx["canonical_ok"]]) and int(cells[idx["contraction_ok"]]):
            sol_counts[key] = sol_counts.get(key, 0) + 1
        if n_found == 0:
            continue
        found_rows += 1
        quad = Quadruple.from_turns(
            *(float(cells[idx[f"p{i}"]]) for i in (1, 2, 3, 4))
        )
        rep = dilate(quad)
        assert len(rep.matrices) == n_found
        worst = max(worst, max(is_hadamard(h)[1] for h in rep.matrices))
    ok = identical and found_rows > 0 and worst < 1e-8
    dist = ", ".join(f"{k}:{v}" for k, v in sorted(sol_counts.items()))
    _report(
        8,
        ok,
        f"byte-identical: {identical}; {found_rows} found rows re-verified, "
        f"max residual {worst:.2e}; sextuple-count distribution {{{dist}}}",
    )
    assert ok
