"""BPSK/AWGN channel, LLR conversion and the uniform LLR pre-quantizer."""

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .errors import ParameterError
from .quantizer import DiscreteDistribution

DEFAULT_GRID_LEVELS = 128
GRID_SPAN_STDS = 4.0


def ebn0_to_sigma(ebn0_db, rate):
    if not 0.0 < rate <= 1.0:
        raise ParameterError(f"rate must lie in (0, 1], got {rate}")
    return float(np.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0))))


@dataclass(frozen=True)
class ChannelParams:
    sigma: float
    ebn0_db: float
    rate: float

    @classmethod
    def from_ebn0(cls, ebn0_db, rate):
        return cls(ebn0_to_sigma(ebn0_db, rate), float(ebn0_db), float(rate))


def bpsk(bits):
    """0 -> +1, 1 -> -1."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


def transmit(codeword, sigma, rng):
    s = bpsk(codeword)
    return s + sigma * rng.standard_normal(s.shape)


def llr_convert(y, sigma):
    return 2.0 * np.asarray(y, dtype=np.float64) / sigma**2


@dataclass(frozen=True)
class UniformGrid:
    levels: int
    lo: float
    step: float

    def __post_init__(self):
        if self.levels < 2 or not self.step > 0:
            raise ParameterError("grid needs levels >= 2 and step > 0")

    @property
    def hi(self):
        return self.lo + self.levels * self.step

    def midpoints(self):
        # symmetric by construction: mid[i] == -mid[levels-1-i] exactly
        return (np.arange(self.levels) - self.levels / 2.0 + 0.5) * self.step


def design_uniform_grid(sigma, levels=DEFAULT_GRID_LEVELS):
    """Symmetric grid over [-R, R] with R = LLR mode mean + 4 mode stds."""
    if levels < 2:
        raise ParameterError("levels must be >= 2")
    r_max = 2.0 / sigma**2 + GRID_SPAN_STDS * 2.0 / sigma
    step = 2.0 * r_max / levels
    return UniformGrid(int(levels), -levels * step / 2.0, step)


def quantize_to_grid(m, grid):
    idx = np.floor((np.asarray(m, dtype=np.float64) - grid.lo) / grid.step)
    return np.clip(idx, 0, grid.levels - 1).astype(np.int64)


def grid_distribution(sigma, grid):
    """Exact cell probabilities of the bimodal channel LLR on ``grid``.

    Tail mass beyond the grid is folded into the edge cells.  Cells whose
    mass underflows are floored at the smallest normal double so that every
    grid index stays a symbol of the distribution.
    """
    mu = 2.0 / sigma**2
    s = 2.0 / sigma
    edges = grid.lo + grid.step * np.arange(grid.levels + 1)
    edges[0], edges[-1] = -np.inf, np.inf
    half = (grid.levels + 1) // 2
    a, b = edges[:half], edges[1 : half + 1]
    # lower half only, mirrored below for exact symmetry
    p = 0.5 * (ndtr((b - mu) / s) - ndtr((a - mu) / s) + ndtr((b + mu) / s) - ndtr((a + mu) / s))
    probs = np.empty(grid.levels)
    probs[:half] = p
    probs[grid.levels - half :] = p[::-1]
    probs = np.maximum(probs, np.finfo(np.float64).tiny)
    probs /= probs.sum()
    # re-impose exact mirror symmetry after normalization
    probs[grid.levels - half :] = probs[:half][::-1]
    return DiscreteDistribution(grid.midpoints(), probs)
