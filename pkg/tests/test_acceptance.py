"""Acceptance criteria, one test each.

Every test records a one-line PASS/FAIL verdict; the lines are printed in
the terminal summary (and by ``python tests/test_acceptance.py``).
Criteria 7-10 are Monte-Carlo BLER runs and take several minutes.
"""

import math
import sys
import time

import numpy as np
import pytest

from polarquant import CodeConfig, encode
from polarquant.channel import design_uniform_grid, ebn0_to_sigma, grid_distribution, quantize_to_grid
from polarquant._kernels import scl_kernel
from polarquant.decoders import decode_float
from polarquant.density_evolution import run_quantized_de
from polarquant.experiments import bler_gap
from polarquant.quantized import decode_indices, quantize_channel_llrs
from polarquant.quantizer import (
    brute_force_quantizer,
    centroid,
    design_min_distortion_quantizer,
    design_uniform_quantizer,
    merge_duplicates,
)

from reference import ml_by_path_metric

RESULTS = {}
MC_ERRORS = 300


def record(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def _random_distributions(count, seed=2024):
    rng = np.random.default_rng(seed)
    out = []
    for t in range(count):
        M = int(rng.integers(1, 13))
        kind = t % 4
        if kind == 0:
            vals = rng.normal(0, 3, M)
        elif kind == 1:
            vals = rng.integers(-20, 21, M) / 4.0  # lattice, many exact ties
        elif kind == 2:
            vals = np.cumsum(rng.exponential(1.0, M))
        else:
            h = rng.normal(0, 3, M)
            vals = np.concatenate((h, -h))
        probs = rng.dirichlet(np.full(vals.size, 0.6)) + 1e-6
        if kind == 3:
            probs = np.concatenate((probs[: vals.size // 2],) * 2)
        d = merge_duplicates(vals, probs / probs.sum())
        if d.size <= 12:
            out.append((d, int(rng.integers(1, d.size + 1))))
    return out


@pytest.fixture(scope="module")
def sweep():
    return _random_distributions(1300)


def test_criterion_1_dp_optimality(sweep):
    t0 = time.perf_counter()
    worst = max(
        abs(design_min_distortion_quantizer(d, K).distortion - brute_force_quantizer(d, K).distortion)
        for d, K in sweep
    )
    dt = time.perf_counter() - t0
    record(1, len(sweep) >= 1000 and worst <= 1e-12 and dt < 10,
           f"{len(sweep)} distributions, max |D_dp - D_brute| = {worst:.2e}, {dt:.1f} s")


def test_criterion_2_centroid_condition(sweep):
    worst = 0.0
    for d, K in sweep:
        q = design_min_distortion_quantizer(d, K)
        b = q.boundaries
        for k in range(q.levels):
            worst = max(worst, abs(q.recon[k] - centroid(d, b[k] + 1, b[k + 1])))
    record(2, worst <= 1e-12, f"max |t_k - centroid| = {worst:.2e}")


def test_criterion_3_uniform_dominance(sweep):
    violations, strict = 0, 0
    for d, K in sweep:
        if K < 2:
            continue
        u = design_uniform_quantizer(d, K).distortion
        q = design_min_distortion_quantizer(d, K).distortion
        violations += u < q - 1e-12
        asym = not np.array_equal(d.values, -d.values[::-1])
        strict += asym and u > q + 1e-12
    record(3, violations == 0 and strict > 0,
           f"{violations} violations; strictly worse on {strict} asymmetric cases")


def test_criterion_4_de_normalization_and_symmetry():
    worst_norm = worst_sym = 0.0
    nodes = 0
    for N, rate in [(2**n, 0.5) for n in range(1, 10)] + [(512, 0.25)]:
        sigma = ebn0_to_sigma(0.0, rate)
        g = design_uniform_grid(sigma)
        luts = run_quantized_de(grid_distribution(sigma, g), N.bit_length() - 1, 32, g,
                                keep_distributions=True)
        for d in luts.distributions:
            nodes += 1
            worst_norm = max(worst_norm, abs(d.probs.sum() - 1.0))
            worst_sym = max(worst_sym, np.abs(d.values + d.values[::-1]).max(),
                            np.abs(d.probs - d.probs[::-1]).max())
    record(4, worst_norm <= 1e-9 and worst_sym <= 1e-9,
           f"{nodes} nodes up to N=512: max |sum-1| = {worst_norm:.1e}, max asymmetry = {worst_sym:.1e}")


def test_criterion_5_oracle_equivalence():
    rng = np.random.default_rng(5)
    g = design_uniform_grid(1.0)
    luts = run_quantized_de(grid_distribution(1.0, g), 2, 10**6, g)
    mismatches = frames = 0
    for K in (1, 2, 3, 4):
        c = CodeConfig.from_beta(4, K)
        m = rng.integers(0, 2, (2500, K))
        llrs = 2.0 * ((1.0 - 2.0 * encode(c, m)) + rng.normal(size=(2500, 4)))
        idx = quantize_channel_llrs(llrs, luts)
        snapped = g.midpoints()[quantize_to_grid(llrs, g)]
        for L in (1, 2, 4):
            uq = decode_indices(c, idx, luts, L)[0]
            uf = decode_float(c, snapped, L)[0]
            mismatches += int(np.any(uq != uf, axis=1).sum())
        frames += 2500
    record(5, mismatches == 0 and frames >= 10**4,
           f"{frames} frames x L in (1,2,4): {mismatches} decision mismatches")


def test_criterion_6_list_degeneracies():
    rng = np.random.default_rng(6)
    c = CodeConfig.from_beta(256, 128)
    sigma = ebn0_to_sigma(2.0, 0.5)
    m = rng.integers(0, 2, (10**4, 128))
    llrs = 2.0 * ((1.0 - 2.0 * encode(c, m)) + sigma * rng.normal(size=(10**4, 256))) / sigma**2
    sc = decode_float(c, llrs, 1)[0]
    # the list kernel itself with L = 1 (decode_float routes L = 1 to SC)
    frozen = c.frozen_mask
    dummy = (np.zeros((1, 1, 1), np.int32), np.zeros((1, 1, 1, 2), np.int32), np.zeros((1, 1)))
    list_one = np.stack([scl_kernel(f, frozen, 8, 1, False, *dummy)[0] for f in llrs])
    diff1 = int(np.any(list_one != sc, axis=1).sum())
    diff_ml = 0
    for K in (1, 2, 3, 4):
        ck = CodeConfig.from_beta(8, K)
        s = ebn0_to_sigma(1.0, K / 8)
        mk = rng.integers(0, 2, (250, K))
        lk = 2.0 * ((1.0 - 2.0 * encode(ck, mk)) + s * rng.normal(size=(250, 8))) / s**2
        u = decode_float(ck, lk, 2**K)[0]
        for row, frame in zip(u, lk):
            diff_ml += not np.array_equal(row[ck.info_set], ml_by_path_metric(ck, frame)[0])
    record(6, diff1 == 0 and diff_ml == 0,
           f"scl(L=1) vs sc: {diff1} of 10000 differ; scl(L=2^K) vs ML (N=8, K<=4): {diff_ml} of 1000 differ")


_GAPS = {}


def _gap(N, K, ref, cand, bits, start):
    key = (N, K, ref, cand, bits)
    if key not in _GAPS:
        _GAPS[key] = bler_gap(N, K, ref, cand, bits=bits, start=start, target_errors=MC_ERRORS)
    return _GAPS[key]


def _fmt(r):
    return (f"{r.reference} crosses 1e-2 at {r.ref_crossing:.3f} dB, {r.candidate} at "
            f"{r.cand_crossing:.3f} dB (+/- {r.sigma:.3f})")


@pytest.mark.slow
def test_criterion_7_scl_5bit_gap():
    r = _gap(256, 128, "float-scl", "q-scl", 5, 1.5)
    record(7, r.gap is not None and r.gap <= 0.15, f"P(256,128) SCL-8 5-bit gap {r.gap:.3f} dB <= 0.15; {_fmt(r)}")


@pytest.mark.slow
def test_criterion_8_sc_5bit_gap():
    r = _gap(256, 128, "float-sc", "q-sc", 5, 2.0)
    record(8, r.gap is not None and r.gap <= 0.1, f"P(256,128) SC 5-bit gap {r.gap:.3f} dB <= 0.1; {_fmt(r)}")


@pytest.mark.slow
def test_criterion_9_nonuniform_vs_uniform_4bit():
    r = _gap(256, 128, "q-sc", "u-sc", 4, 2.0)
    record(9, r.gap is not None and r.gap >= 0.3,
           f"P(256,128) SC 4-bit gain over uniform {r.gap:.3f} dB >= 0.3; {_fmt(r)}")


@pytest.mark.slow
def test_criterion_10_longer_code_loses_more():
    a = _gap(256, 128, "float-scl", "q-scl", 5, 1.5)
    b = _gap(512, 128, "float-scl", "q-scl", 5, 1.0)
    slack = 3 * math.hypot(a.sigma, b.sigma)
    record(10, b.gap >= a.gap - slack,
           f"gap N=512 {b.gap:.3f} dB >= gap N=256 {a.gap:.3f} dB - 3 sigma ({slack:.3f})")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
