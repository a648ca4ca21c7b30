"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v``; the per-criterion lines appear
in the "acceptance criteria" section of the terminal summary.
"""

from __future__ import annotations

import math
import time

import numpy as np

from entcorr import cli, epr, ghz, infotheory, sampler, verify
from entcorr import inequalities as ineq
from entcorr.sampler import EmpiricalEstimate, LhvModel, SeedSpec

PI = math.pi
DEG1 = np.deg2rad(np.arange(360.0))
SPINS_UP_TO_5 = range(1, 11)


def test_criterion_1_oracle_equivalence(criterion):
    t0 = time.perf_counter()
    epr_leg = verify.compare_epr([1, 2, 3, 4, 10], grid_deg=5.0)
    ghz_leg = verify.compare_ghz(grid_deg=10.0)
    elapsed = time.perf_counter() - t0
    worst = max(epr_leg.max_deviation, ghz_leg.max_deviation)
    ok = worst < 1e-10 and elapsed < 60.0 and epr_leg.checked == 5 * 72 and ghz_leg.checked == 36**3
    detail = f"max deviation {worst:.2e} over {epr_leg.checked}+{ghz_leg.checked} points in {elapsed:.1f} s"
    assert criterion(1, ok, detail), detail


def test_criterion_2_perfect_correlation_points(criterion):
    p_pi = ghz.ghz_transmission((PI, 0.0, 0.0))
    p_zero = ghz.ghz_transmission((0.0, 0.0, 0.0))
    c = epr.epr_conditional(1, PI)
    errs = [abs(p_pi - 0.25), abs(p_zero), abs(c[1, 1] - 1.0), abs(c[0, 0] - 1.0)]
    ok = max(errs) <= 1e-12
    detail = f"p(pi)={p_pi!r} p(0)={p_zero!r} P(0|0)={c[0, 0]!r} P(1|1)={c[1, 1]!r}"
    assert criterion(2, ok, detail), detail


def test_criterion_3_entropy_constants(criterion):
    failures = []
    e = infotheory.epr_entropies(1, 0.7)
    if abs(e.H_a - 1) > 1e-12 or abs(e.H_b - 1) > 1e-12:
        failures.append(f"EPR marginals {e.H_a}, {e.H_b}")
    rng = np.random.default_rng(2024)
    for phis in rng.uniform(0, 2 * PI, size=(100, 3)):
        g = infotheory.ghz_entropies(phis)
        if max(abs(h - 1) for h in g.H_singles) > 1e-12 or max(abs(h - 2) for h in g.H_pairs.values()) > 1e-12:
            failures.append(f"GHZ constants at {phis}")
        if g.H_triple > 3 + 1e-12:
            failures.append(f"H_triple {g.H_triple} > 3 at {phis}")
    top = infotheory.ghz_entropies((PI / 2, 0.0, 0.0)).H_triple
    if abs(top - 3) > 1e-12:
        failures.append(f"H_triple(pi/2) = {top}")
    detail = "EPR H(a)=H(b)=1, GHZ singles 1 / pairs 2 on 100 triples, H_triple(pi/2)=3" if not failures else "; ".join(failures[:3])
    assert criterion(3, not failures, detail), detail


def test_criterion_4_inequality_suites(criterion):
    failures = []
    checked = 0
    for twice_s in SPINS_UP_TO_5:
        for alpha in DEG1:
            e = infotheory.epr_entropies(twice_s, alpha)
            checked += 1
            if abs(e.H_joint - (e.H_a_given_b + e.H_b)) > 1e-12 or abs(e.H_joint - (e.H_b_given_a + e.H_a)) > 1e-12:
                failures.append(f"chain rule s={twice_s}/2 alpha={alpha}")
            if not (e.H_a_given_b <= e.H_a + 1e-12 and e.H_a <= e.H_joint + 1e-12):
                failures.append(f"conditioning s={twice_s}/2 alpha={alpha}")
            if ineq.araki_lieb_epr(twice_s, alpha).violated:
                failures.append(f"Araki-Lieb s={twice_s}/2 alpha={alpha}")
    for phi in DEG1:
        for phis in [(phi, 0.0, 0.0), (phi / 3, phi / 3, phi / 3)]:
            lr = ineq.lieb_ruskai_ghz(phis)
            if lr.violated or abs(lr.lhs - 2) > 1e-12 or abs(lr.margin + 2) > 1e-12:
                failures.append(f"Lieb-Ruskai at {phis}: lhs {lr.lhs}")
            if ineq.three_party_subadditivity(phis).violated:
                failures.append(f"subadditivity at {phis}")
    detail = (f"{checked} EPR points and {2 * len(DEG1)} GHZ points, zero violations; Lieb-Ruskai lhs 2, margin -2"
              if not failures else f"{len(failures)} failures, first: {failures[0]}")
    assert criterion(4, not failures, detail), detail


def test_criterion_5_bc_epr_violation(criterion):
    value = ineq.bc_epr_coplanar(1, PI / 12).lhs
    axis = np.deg2rad(np.arange(3600) * 0.1)
    maxima = [ineq.scan_max_violation("bc_epr_coplanar", {"alpha": axis}, s=n).max_margin for n in (1, 2, 4, 10)]
    decreasing = all(b < a for a, b in zip(maxima, maxima[1:]))
    ok = abs(value - 0.2275) <= 5e-4 and decreasing
    detail = f"lhs(s=1/2, pi/12)={value:.5f}; scanned maxima s=1/2,1,2,5: " + ", ".join(f"{m:.4f}" for m in maxima)
    assert criterion(5, ok, detail), detail


def test_criterion_6_bell_contrast(criterion):
    res = cli.bell_scan("epr", twice_s=1, grid_deg=1.0)
    scan_ok = abs(res["max_margin"] - 0.2071) <= 2e-3
    rng = np.random.default_rng(606)
    model = LhvModel(epr.SpinMagnitude(1))
    worst_z = -math.inf
    below = []
    for k, angles in enumerate(rng.uniform(0, 2 * PI, size=(50, 4))):
        value, se = sampler.lhv_bell_functional(model, *angles, 10**6, SeedSpec(6000 + k))
        worst_z = max(worst_z, value / se if se > 0 else (math.inf if value > 0 else -math.inf))
        if value < -1 - 4 * se:
            below.append(k)
    ok = scan_ok and worst_z <= 4.0 and not below
    detail = f"quantum scan max {res['max_margin']:.5f}; LHV largest excess over 0 is {worst_z:+.2f} sigma (50 configs)"
    assert criterion(6, ok, detail), detail


def test_criterion_7_ghz_bc_dual(criterion):
    reduced = ineq.bc_ghz_reduced(PI / 4)
    g = ineq.GHZ_BC_GEOMETRY
    general = [ineq.bc_ghz(g["phi1"], g["phi1_p"], g["phi2"], g["phi2_p"], phi3).lhs for phi3 in DEG1]
    ok = abs(reduced.lhs - 1.0) <= 1e-9 and reduced.violated and max(general) <= 1e-12
    detail = f"reduced lhs(pi/4)={reduced.lhs:.12f} (violated); general max over 1-degree phi3 grid {max(general):.2e}"
    assert criterion(7, ok, detail), detail


def _converged(twice_s, alpha, seed) -> bool:
    est = EmpiricalEstimate.from_samples(sampler.sample_epr(twice_s, alpha, 10**6, seed))
    return bool(np.all(np.abs(sampler.sigma_deltas(est, epr.epr_joint(twice_s, alpha).table)) <= 4.0))


def test_criterion_8_monte_carlo(criterion):
    grid = np.deg2rad(np.arange(0.0, 360.0, 15.0))
    failed, retried = [], 0
    for twice_s in (1, 2, 3, 4):
        for k, alpha in enumerate(grid):
            if _converged(twice_s, alpha, SeedSpec(800 + 100 * twice_s + k)):
                continue
            retried += 1
            if not _converged(twice_s, alpha, SeedSpec(800 + 100 * twice_s + k, stream_id=1)):
                failed.append((twice_s, float(alpha)))
    n = 200_003
    streams = {}
    for workers in (1, 2, 8):
        e = sampler.sample_epr(3, 1.3, n, SeedSpec(42, 7), workers=workers)
        g = sampler.sample_ghz((0.2, 0.4, 0.9), n, SeedSpec(42, 8), workers=workers)
        streams[workers] = e.tobytes() + g.tobytes()
    identical = streams[1] == streams[2] == streams[8]
    ok = not failed and identical
    detail = (f"{4 * len(grid)} (s, alpha) sets within 4 sigma at n=1e6 ({retried} retried, {len(failed)} failed); "
              f"byte-identical across 1/2/8 workers: {identical}")
    assert criterion(8, ok, detail), detail


FIGURE_COMMANDS = [
    ["fig", "epr-cond", "--which", "p10"],
    ["fig", "epr-cond", "--which", "p01"],
    ["fig", "epr-entropy", "--spin", "1"],
    ["fig", "bc-epr"],
    ["fig", "ghz-entropy"],
    ["fig", "bc-ghz"],
]


def test_criterion_9_figure_regeneration(criterion, tmp_path):
    t0 = time.perf_counter()
    first = []
    for k, argv in enumerate(FIGURE_COMMANDS):
        path = tmp_path / f"fig{k}.csv"
        assert cli.main([*argv, "--out", str(path)]) == 0
        first.append(path.read_bytes())
    elapsed = time.perf_counter() - t0
    second = []
    for k, argv in enumerate(FIGURE_COMMANDS):
        path = tmp_path / f"again{k}.csv"
        cli.main([*argv, "--out", str(path)])
        second.append(path.read_bytes())
    stable = first == second
    ok = elapsed < 10.0 and stable
    detail = f"six figure commands in {elapsed:.2f} s, byte-stable across runs: {stable}"
    assert criterion(9, ok, detail), detail
