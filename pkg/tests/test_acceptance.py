"""Acceptance suite: one test per criterion, printed as pass/fail lines.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines; every
tolerance is the one fixed in the criterion, never recalibrated.
"""

import math
import time

import numpy as np
import pytest

from permlin import (
    LinearRegimeParams,
    block_form_check,
    check_linear_regime,
    construct_covariance,
    helmert_q,
    linear_decode,
    map_decode,
    n2_params,
    origin_uniformity,
    perr_geometric,
    perr_simulation,
    random_q,
    sym_eigen,
)
from testutil import cov, random_params, rel_fro


def report(num: int, ok: bool, detail: str) -> None:
    print(f"[criterion {num}] {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num}: {detail}"


@pytest.fixture(scope="module")
def paper_k():
    return construct_covariance(
        LinearRegimeParams(gamma=0.5, a=0.5, v=0.2, q=helmert_q(3)))


@pytest.fixture(scope="module")
def constructed_matrices():
    rng = np.random.default_rng(1001)
    out = []
    for _ in range(500):
        n = int(rng.integers(2, 9))
        p = random_params(rng, n)
        out.append((p, construct_covariance(p)))
    return out


@pytest.fixture(scope="module")
def two_by_two_matrices():
    rng = np.random.default_rng(1002)
    out = []
    for _ in range(1000):
        g = rng.standard_normal((2, 2))
        out.append(cov(g @ g.T + 0.05 * np.eye(2)))
    return out


@pytest.fixture(scope="module")
def diagonal_matrices():
    rng = np.random.default_rng(1003)
    non_iso, iso = [], []
    for n in (3, 4, 5):
        for _ in range(200):
            d = rng.uniform(0.2, 3.0, size=n)
            while d.max() - d.min() < 1e-3:
                d = rng.uniform(0.2, 3.0, size=n)
            non_iso.append(cov(np.diag(d)))
        for _ in range(5):
            c = float(rng.uniform(0.1, 5.0))
            iso.append((c, cov(c * np.eye(n))))
    return non_iso, iso


def test_criterion_1_spectrum_reproduction(paper_k):
    t0 = time.time()
    lam = sym_eigen(paper_k).eigenvalues
    expected = np.array([7.0 / 3.0, 1.0, 3.0 / 7.0])
    err = float(np.abs(lam - expected).max())
    elapsed = time.time() - t0
    report(1, err <= 1e-9 and elapsed < 1.0,
           f"eigenvalues {lam.tolist()} vs {{7/3, 1, 3/7}}, "
           f"max err {err:.2e} (tol 1e-9), {elapsed:.2f}s")


def test_criterion_2_regime_classification(constructed_matrices):
    t0 = time.time()
    diag_res = check_linear_regime(cov(np.diag([1.0, 1.0, 2.0])))
    all_linear = True
    worst_round_trip = 0.0
    for p, k in constructed_matrices:
        res = check_linear_regime(k)
        if not res.is_linear:
            all_linear = False
            break
        err = rel_fro(construct_covariance(res.params).entries, k.entries)
        worst_round_trip = max(worst_round_trip, err)
    elapsed = time.time() - t0
    report(2, (not diag_res.is_linear) and all_linear
           and worst_round_trip <= 1e-9 and elapsed < 30.0,
           f"diag(1,1,2) non-linear, 500 constructed matrices linear, "
           f"worst round-trip {worst_round_trip:.2e} (tol 1e-9), {elapsed:.1f}s")


def test_criterion_3_every_2x2_linear(two_by_two_matrices):
    t0 = time.time()
    all_linear = all(check_linear_regime(k).is_linear for k in two_by_two_matrices)
    worst = max(rel_fro(construct_covariance(n2_params(k)).entries, k.entries)
                for k in two_by_two_matrices)
    elapsed = time.time() - t0
    report(3, all_linear and worst <= 1e-10 and elapsed < 5.0,
           f"1000 random 2x2 PD matrices all linear, worst n2 round-trip "
           f"{worst:.2e} (tol 1e-10), {elapsed:.1f}s")


def test_criterion_4_diagonal_dichotomy(diagonal_matrices):
    t0 = time.time()
    non_iso, iso = diagonal_matrices
    none_linear = not any(check_linear_regime(k).is_linear for k in non_iso)
    worst_gamma = 0.0
    iso_linear = True
    for c, k in iso:
        res = check_linear_regime(k)
        iso_linear &= res.is_linear
        worst_gamma = max(worst_gamma, abs(res.params.gamma - c / (1 + c)))
    elapsed = time.time() - t0
    report(4, none_linear and iso_linear and worst_gamma <= 1e-10 and elapsed < 10.0,
           f"600 non-isotropic diagonals non-linear, isotropic gamma err "
           f"{worst_gamma:.2e} (tol 1e-10), {elapsed:.1f}s")


def test_criterion_5_decoder_equivalence(paper_k):
    t0 = time.time()
    rng = np.random.default_rng(2026)
    ys = rng.multivariate_normal(np.zeros(3), np.eye(3) + paper_k.entries, size=500)
    agree = sum(map_decode(paper_k, y, 200_000, seed=17) == linear_decode(paper_k, y)
                for y in ys)
    elapsed = time.time() - t0
    report(5, agree >= 490 and elapsed < 300.0,
           f"map (2e5 samples) vs linear agreement {agree}/500 "
           f"(need >= 490), {elapsed:.0f}s")


def test_criterion_6_error_probability_cross_check(paper_k):
    t0 = time.time()
    sim2 = perr_simulation(cov(np.eye(2)), "linear", trials=1_000_000, seed=41)
    oracle = math.acos(1.0 / math.sqrt(2.0)) / math.pi  # = 0.25
    ok2 = abs(sim2.value - oracle) <= 3 * sim2.stderr

    sim3 = perr_simulation(paper_k, "linear", trials=1_000_000, seed=42)
    geo3 = perr_geometric(paper_k, samples=1_000_000, seed=43)
    comb = math.hypot(sim3.stderr, geo3.stderr)
    ok3 = abs(sim3.value - geo3.value) <= 3 * comb
    elapsed = time.time() - t0
    report(6, ok2 and ok3 and elapsed < 180.0,
           f"n=2 sim {sim2.value:.5f} vs oracle {oracle:.5f} "
           f"(3se {3 * sim2.stderr:.5f}); n=3 sim {sim3.value:.5f} vs geo "
           f"{geo3.value:.5f} (3 comb se {3 * comb:.5f}), {elapsed:.0f}s")


def test_criterion_7_origin_uniformity(paper_k):
    t0 = time.time()
    table = origin_uniformity(paper_k, 1_000_000, seed=44)
    se = math.sqrt((1 / 6) * (5 / 6) / 1_000_000)
    max_dev = max(abs(p - 1 / 6) for p in table.entries.values())
    uniform_ok = max_dev <= 3 * se

    skewed = origin_uniformity(cov(np.diag([1.0, 1.0, 2.0])), 1_000_000, seed=45)
    probs = np.array(list(skewed.entries.values()))
    spread = float(probs.max() - probs.min())
    spread_ok = spread > 6 * se
    elapsed = time.time() - t0
    report(7, uniform_ok and spread_ok and elapsed < 120.0,
           f"linear-regime max dev {max_dev:.2e} <= 3se {3 * se:.2e}; "
           f"diag(1,1,2) spread {spread:.2e} > 6se {6 * se:.2e}, {elapsed:.0f}s")


def test_criterion_8_point_symmetry(paper_k):
    t0 = time.time()
    rng = np.random.default_rng(2027)
    linear_ok = 0
    checked = 0
    while checked < 10_000:
        n = int(rng.integers(2, 7))
        g = rng.standard_normal((n, n))
        k = cov(g @ g.T + 0.1 * np.eye(n))
        y = rng.standard_normal(n)
        x_hat = np.linalg.solve(np.eye(n) + k.entries, y)
        if np.unique(x_hat).size != n:
            continue  # tie-free draws only
        checked += 1
        linear_ok += linear_decode(k, -y) == linear_decode(k, y).reversed()

    crn_ok = 0
    for i in range(100):
        y = rng.standard_normal(3) * 1.5
        fwd = map_decode(paper_k, y, 100_000, seed=300 + i)
        bwd = map_decode(paper_k, -y, 100_000, seed=300 + i, negate_samples=True)
        crn_ok += bwd == fwd.reversed()
    elapsed = time.time() - t0
    report(8, linear_ok == 10_000 and crn_ok == 100 and elapsed < 120.0,
           f"linear decoder symmetry {linear_ok}/10000 exact; map with common "
           f"random numbers {crn_ok}/100 exact, {elapsed:.0f}s")


def test_criterion_9_projection_block_form_agreement(
        constructed_matrices, two_by_two_matrices, diagonal_matrices):
    t0 = time.time()
    rng = np.random.default_rng(1004)
    non_iso, iso = diagonal_matrices
    everything = ([k for _, k in constructed_matrices] + two_by_two_matrices
                  + non_iso + [k for _, k in iso] + [cov(np.diag([1.0, 1.0, 2.0]))])
    mismatches = 0
    q_flips = 0
    for k in everything:
        reference = check_linear_regime(k).is_linear
        helmert_verdict, _ = block_form_check(k, helmert_q(k.n))
        mismatches += helmert_verdict != reference
        for _ in range(10):
            verdict, _ = block_form_check(k, random_q(k.n, rng))
            q_flips += verdict != reference
    elapsed = time.time() - t0
    report(9, mismatches == 0 and q_flips == 0 and elapsed < 300.0,
           f"{len(everything)} matrices: projection vs block-form verdicts agree, "
           f"invariant over 10 random bases each ({q_flips} flips), {elapsed:.0f}s")
