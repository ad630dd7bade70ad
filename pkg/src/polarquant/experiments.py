"""BLER-gap experiments: sweep two decoders on common frames and compare
the Eb/N0 at which each crosses a target BLER."""

import math
from dataclasses import dataclass, replace

import numpy as np

from .sim import SimConfig, crossing_ebn0, load_or_build_tables, run_bler_point


def curve_until_crossing(cfg, tables=None, target=1e-2, start=0.0, stop=5.0, step=0.25, overshoot=3.0):
    """Points from ``start`` upward until the BLER falls below ``target / overshoot``."""
    points = []
    e = start
    while e <= stop + 1e-9:
        p = run_bler_point(cfg, round(e, 10), tables)
        points.append(p)
        if p.bler < target / overshoot:
            break
        e += step
    return points


def crossing_sigma(points, target=1e-2):
    """Rough standard deviation of the interpolated crossing.

    Relative BLER error ~ 1/sqrt(errors) at the two bracketing points (the
    interpolated log-BLER is a convex combination, so the larger variance
    bounds it), mapped to dB through the local log-slope of the curve.
    """
    pts = sorted(points, key=lambda p: p.ebn0_db)
    for a, b in zip(pts, pts[1:]):
        if a.bler >= target > b.bler and b.block_errors > 0:
            slope = (math.log10(a.bler) - math.log10(b.bler)) / (b.ebn0_db - a.ebn0_db)
            s = 0.4343 / math.sqrt(min(a.block_errors, b.block_errors))
            return s / slope
    return math.inf


@dataclass
class GapResult:
    reference: str
    candidate: str
    ref_crossing: float | None
    cand_crossing: float | None
    sigma: float
    ref_points: list
    cand_points: list

    @property
    def gap(self):
        if self.ref_crossing is None or self.cand_crossing is None:
            return None
        return self.cand_crossing - self.ref_crossing


def bler_gap(code_len, info_len, reference, candidate, bits=5, list_size=8,
             target=1e-2, start=0.0, step=0.25, target_errors=100, max_frames=400_000, seed=0):
    """Horizontal gap (dB) of ``candidate`` behind ``reference`` at ``target`` BLER."""
    base = SimConfig(code_len, info_len, reference, list_size=list_size, quant_bits=bits,
                     target_block_errors=target_errors, max_frames=max_frames, seed=seed,
                     batch_size=512)
    curves = {}
    for kind in (reference, candidate):
        cfg = replace(base, decoder=kind)
        tables = load_or_build_tables(cfg) if cfg.needs_lut else None
        curves[kind] = curve_until_crossing(cfg, tables, target, start, start + 6.0, step)
    ref, cand = curves[reference], curves[candidate]
    sig = float(np.hypot(crossing_sigma(ref, target), crossing_sigma(cand, target)))
    return GapResult(reference, candidate, crossing_ebn0(ref, target), crossing_ebn0(cand, target),
                     sig, ref, cand)
