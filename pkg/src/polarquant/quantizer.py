"""Minimum-distortion scalar quantizers for discrete distributions.

The optimal quantizer maps a sorted alphabet ``l_1 < ... < l_M`` onto ``K``
contiguous cells with centroid reconstructions.  The partition is found by
dynamic programming over cell upper boundaries.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from numba import njit

from .errors import ParameterError

PROB_ATOL = 1e-9


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    values: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        p = np.asarray(self.probs, dtype=np.float64)
        if v.ndim != 1 or v.shape != p.shape or v.size == 0:
            raise ParameterError("values and probs must be equal-length 1-D arrays")
        if np.any(np.diff(v) <= 0):
            raise ParameterError("values must be strictly ascending")
        if np.any(p <= 0) or not np.all(np.isfinite(p)):
            raise ParameterError("probabilities must be positive and finite")
        if abs(p.sum() - 1.0) > PROB_ATOL:
            raise ParameterError(f"probabilities sum to {p.sum()!r}, not 1")
        v.flags.writeable = False
        p.flags.writeable = False
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "probs", p)

    @property
    def size(self):
        return self.values.size

    def __len__(self):
        return self.values.size

    def __eq__(self, other):
        if not isinstance(other, DiscreteDistribution):
            return NotImplemented
        return np.array_equal(self.values, other.values) and np.array_equal(
            self.probs, other.probs
        )

    def mean(self):
        return float(self.values @ self.probs)

    def variance(self):
        mu = self.mean()
        return float(((self.values - mu) ** 2) @ self.probs)


def merge_duplicates(values, probs):
    """Sort, merge exactly-equal values, drop zero-mass symbols, normalize."""
    v = np.asarray(values, dtype=np.float64).ravel()
    p = np.asarray(probs, dtype=np.float64).ravel()
    if v.size == 0 or v.shape != p.shape:
        raise ParameterError("values and probs must be non-empty and equal length")
    if np.any(p < 0) or not np.all(np.isfinite(v)):
        raise ParameterError("probabilities must be >= 0 and values finite")
    uniq, inv = np.unique(v, return_inverse=True)
    mass = np.bincount(inv.ravel(), weights=p, minlength=uniq.size)
    keep = mass > 0
    total = mass[keep].sum()
    if total <= 0:
        raise ParameterError("total probability is zero")
    return DiscreteDistribution(uniq[keep], mass[keep] / total)


def centroid(dist, first, last):
    """Probability-weighted mean of symbols ``first..last`` (1-based, inclusive)."""
    _check_range(dist, first, last)
    if first == last:
        return float(dist.values[first - 1])
    v = dist.values[first - 1 : last]
    p = dist.probs[first - 1 : last]
    return float(v @ p / p.sum())


def partial_distortion(dist, first, last):
    """Squared error of one cell covering symbols ``first..last`` (1-based)."""
    t = centroid(dist, first, last)
    v = dist.values[first - 1 : last]
    p = dist.probs[first - 1 : last]
    return float(((v - t) ** 2) @ p)


def _check_range(dist, first, last):
    if not 1 <= first <= last <= dist.size:
        raise ParameterError(f"invalid symbol range {first}..{last} for M={dist.size}")


@dataclass(frozen=True, eq=False)
class Quantizer:
    """Contiguous partition of a sorted alphabet.

    Cell ``k`` covers symbols ``boundaries[k] .. boundaries[k+1]-1``
    (0-based), so ``boundaries[0] == 0`` and ``boundaries[-1] == M``.
    ``step`` is only set for uniform-step quantizers.
    """

    boundaries: np.ndarray
    recon: np.ndarray
    distortion: float
    step: float | None = field(default=None)

    def __post_init__(self):
        b = np.asarray(self.boundaries, dtype=np.int64)
        r = np.asarray(self.recon, dtype=np.float64)
        if b.ndim != 1 or b.size < 2 or b[0] != 0 or np.any(np.diff(b) <= 0):
            raise ParameterError("boundaries must start at 0 and strictly increase")
        if r.shape != (b.size - 1,):
            raise ParameterError("need one reconstruction value per cell")
        if np.any(np.diff(r) <= 0):
            raise ParameterError("reconstruction values must be strictly ascending")
        object.__setattr__(self, "boundaries", b)
        object.__setattr__(self, "recon", r)
        object.__setattr__(self, "distortion", float(self.distortion))

    @property
    def levels(self):
        return self.recon.size

    @property
    def alphabet_size(self):
        return int(self.boundaries[-1])

    def __eq__(self, other):
        if not isinstance(other, Quantizer):
            return NotImplemented
        return (
            np.array_equal(self.boundaries, other.boundaries)
            and np.array_equal(self.recon, other.recon)
            and self.distortion == other.distortion
            and self.step == other.step
        )

    def cell_map(self):
        """Cell index of every source symbol, shape (M,)."""
        return np.repeat(np.arange(self.levels), np.diff(self.boundaries))


def _quantizer_from_boundaries(dist, boundaries, step=None):
    recon = np.empty(len(boundaries) - 1)
    dist_total = 0.0
    for k in range(len(boundaries) - 1):
        a, b = boundaries[k], boundaries[k + 1]
        recon[k] = centroid(dist, a + 1, b)
        dist_total += float(((dist.values[a:b] - recon[k]) ** 2) @ dist.probs[a:b])
    return Quantizer(np.asarray(boundaries), recon, dist_total, step)


@njit(cache=True)
def _partial_distortion_table(values, probs, width):
    """c[e, w] = distortion of the cell ending at symbol e with w+1 symbols.

    Only cells of at most ``width`` symbols are valid (each of the other
    cells needs one symbol).  Sums are shifted by the cell's last value to
    limit cancellation; the result is clamped at 0.
    """
    M = values.size
    c = np.full((M, width), np.inf)
    for e in range(M):
        l0 = values[e]
        sp = 0.0
        s1 = 0.0
        s2 = 0.0
        for w in range(min(width, e + 1)):
            d = values[e - w] - l0
            p = probs[e - w]
            sp += p
            s1 += p * d
            s2 += p * d * d
            v = s2 - s1 * s1 / sp
            c[e, w] = v if v > 0.0 else 0.0
    return c


@njit(cache=True)
def _dp_tables(cost, M, K):
    # S[z, a]: least distortion of symbols 1..a (1-based) in z cells;
    # the last cell covers symbols a'+1..a, i.e. 0-based end a-1, width a-a'.
    S = np.full((K + 1, M + 1), np.inf)
    arg = np.zeros((K + 1, M + 1), dtype=np.int64)
    S[0, 0] = 0.0
    for z in range(1, K + 1):
        prev = S[z - 1]
        for a in range(z, z + M - K + 1):
            row = cost[a - 1]
            best = np.inf
            best_ap = -1
            # a' = a - 1 - w runs downward; <= keeps the smallest a' on ties
            for w in range(a - z + 1):
                v = prev[a - 1 - w] + row[w]
                if v <= best:
                    best = v
                    best_ap = a - 1 - w
            S[z, a] = best
            arg[z, a] = best_ap
    return S, arg


def _backtrack(arg, K, end):
    bounds = np.zeros(K + 1, dtype=np.int64)
    bounds[K] = end
    for z in range(K - 1, 0, -1):
        bounds[z] = arg[z + 1, bounds[z + 1]]
    return bounds


def design_min_distortion_quantizer(dist, K):
    """Globally optimal K-cell contiguous quantizer of ``dist``."""
    M = dist.size
    if not 1 <= K <= M:
        raise ParameterError(f"need 1 <= K <= M, got K={K}, M={M}")
    if K == M:
        return Quantizer(np.arange(M + 1), dist.values.copy(), 0.0)
    cost = _partial_distortion_table(dist.values, dist.probs, M - K + 1)
    S, arg = _dp_tables(cost, M, K)
    return _quantizer_from_boundaries(dist, _backtrack(arg, K, M))


def is_symmetric(dist, rtol=1e-9, atol=1e-15):
    """Values mirror exactly about 0 and probabilities mirror within tolerance."""
    v, p = dist.values, dist.probs
    return bool(np.array_equal(v, -v[::-1]) and np.allclose(p, p[::-1], rtol=rtol, atol=atol))


def design_symmetric_quantizer(dist, K):
    """Least-distortion quantizer among partitions that mirror about 0.

    ``dist`` must be symmetric.  Cells either split at 0 (an even count) or
    include a centre cell holding the symbols nearest 0 (an odd count); the
    best option with at most K cells is returned.  An odd alphabet contains
    0 and thus admits only odd counts, so with even K one level goes unused.
    The positive side is designed with the DP on the reversed tail so every
    centre width is scored from one table; reconstructions and cell masses
    are mirrored, which keeps the output exactly symmetric.
    """
    M = dist.size
    if not 1 <= K:
        raise ParameterError(f"need K >= 1, got {K}")
    if not is_symmetric(dist):
        raise ParameterError("distribution is not symmetric about 0")
    if K >= M:
        return Quantizer(np.arange(M + 1), dist.values.copy(), 0.0)
    H = M // 2  # symbols strictly above 0
    zero = M % 2
    pos_v = dist.values[M - H :]
    pos_p = dist.probs[M - H :]
    # reversed, negated tail: prefixes of length a are the a largest symbols
    rv = -pos_v[::-1]
    rp = pos_p[::-1].copy()
    best = (np.inf, None)
    # even count 2e: cells split at 0, e cells on each side over all H symbols
    if not zero:
        e = min(K // 2, H)
        if e >= 1:
            cost = _partial_distortion_table(rv, rp, H - e + 1)
            S, arg = _dp_tables(cost, H, e)
            best = (2.0 * S[e, H], ("even", e, arg, H))
    # odd count 2e+1: centre cell covers the j smallest positive symbols,
    # their mirrors and 0 (centroid 0 by symmetry)
    e = min((K - 1) // 2, H)
    centre = 2.0 * np.concatenate(([0.0], np.cumsum(pos_p * pos_v * pos_v)))
    if e >= 1:
        cost = _partial_distortion_table(rv, rp, H - e + 1)
        S, arg = _dp_tables(cost, H, e)
        for j in range(1 - zero, H - e + 1):
            v = centre[j] + 2.0 * S[e, H - j]
            if v < best[0]:
                best = (v, ("odd", e, arg, H - j))
    if best[1] is None:
        # a single centre cell holding everything
        bounds = np.array([0, M])
    else:
        kind, e, arg, span = best[1]
        # reversed-tail prefix ends -> upper cell starts in dist order
        starts = M - _backtrack(arg, e, span)[::-1]
        up = [(int(starts[k]), int(starts[k + 1])) for k in range(e)]
        low = [(M - hi, M - lo) for lo, hi in reversed(up)]
        cells = low + [(span, M - span)] * (kind == "odd") + up
        bounds = np.array([c[0] for c in cells] + [M])
    q = _quantizer_from_boundaries(dist, bounds)
    # copy the positive side onto the negative one: recon exactly antisymmetric
    recon = q.recon.copy()
    n = recon.size
    recon[: n // 2] = -recon[::-1][: n // 2]
    if n % 2:
        recon[n // 2] = 0.0
    return Quantizer(q.boundaries, recon, q.distortion)


def apply_quantizer(dist, q):
    """Distribution of the quantizer output (recon values, cell masses)."""
    if q.alphabet_size != dist.size:
        raise ParameterError(
            f"quantizer covers {q.alphabet_size} symbols, distribution has {dist.size}"
        )
    mass = np.add.reduceat(dist.probs, q.boundaries[:-1])
    return DiscreteDistribution(q.recon, mass / mass.sum())


def uniform_cell_index(x, step, K):
    """Cell of ``x`` among K equal-width cells centred on 0, outer cells open."""
    j = np.floor(np.asarray(x, dtype=np.float64) / step + K / 2.0)
    return np.clip(j, 0, K - 1).astype(np.int64)


def _uniform_distortion(dist, step, K):
    cells = uniform_cell_index(dist.values, step, K)
    p = dist.probs
    mass = np.bincount(cells, weights=p, minlength=K)
    s1 = np.bincount(cells, weights=p * dist.values, minlength=K)
    occupied = mass > 0
    t = np.zeros(K)
    t[occupied] = s1[occupied] / mass[occupied]
    return float(((dist.values - t[cells]) ** 2) @ p)


def design_uniform_quantizer(dist, K, n_scan=4000):
    """Symmetric equal-width quantizer whose step minimizes the MSE.

    Cell edges sit at ``(j - K/2) * step`` for ``j = 1..K-1``; the two outer
    cells saturate.  The step is chosen by a dense scan; reconstructions are
    cell centroids.  Empty cells are dropped from the returned partition.
    """
    if K < 2:
        raise ParameterError("uniform quantizer needs K >= 2")
    vmax = float(np.max(np.abs(dist.values)))
    if vmax == 0.0:
        step = 1.0
    elif K == 2:
        step = 2.0 * vmax
    else:
        # beyond this step every symbol sits in the two centre cells
        step_max = 2.0 * vmax
        steps = np.linspace(step_max / n_scan, step_max, n_scan)
        D = np.array([_uniform_distortion(dist, s, K) for s in steps])
        step = float(steps[np.argmin(D)])
    cells = uniform_cell_index(dist.values, step, K)
    edges = np.flatnonzero(np.diff(cells)) + 1
    bounds = np.concatenate(([0], edges, [dist.size]))
    return _quantizer_from_boundaries(dist, bounds, step=step)


def uniform_codebook(dist, q, K):
    """Reconstruction value of all K uniform cells, empty ones at cell midpoints."""
    step = q.step
    mids = (np.arange(K) - K / 2.0 + 0.5) * step
    cells = uniform_cell_index(dist.values, step, K)
    mass = np.bincount(cells, weights=dist.probs, minlength=K)
    s1 = np.bincount(cells, weights=dist.probs * dist.values, minlength=K)
    recon = mids.copy()
    occupied = mass > 0
    recon[occupied] = s1[occupied] / mass[occupied]
    # single-symbol cells keep the exact symbol value
    counts = np.bincount(cells, minlength=K)
    for j in np.flatnonzero(counts == 1):
        recon[j] = dist.values[cells == j][0]
    return recon


def brute_force_quantizer(dist, K, max_symbols=16):
    """Exhaustive search over all contiguous K-cell partitions (test oracle)."""
    M = dist.size
    if M > max_symbols:
        raise ParameterError(f"brute force refuses M={M} > {max_symbols}")
    if not 1 <= K <= M:
        raise ParameterError(f"need 1 <= K <= M, got K={K}, M={M}")
    best = None
    for inner in combinations(range(1, M), K - 1):
        bounds = (0,) + inner + (M,)
        D = 0.0
        for a, b in zip(bounds[:-1], bounds[1:]):
            v = dist.values[a:b]
            p = dist.probs[a:b]
            t = (v @ p) / p.sum()
            D += float(((v - t) ** 2) @ p)
        if best is None or D < best[0]:
            best = (D, bounds)
    return _quantizer_from_boundaries(dist, np.array(best[1]))
