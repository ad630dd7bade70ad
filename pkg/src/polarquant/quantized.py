"""Lookup-table SC/SCL decoders and the uniform-quantized baseline.

Every decoder message is a symbol index into the alphabet of its tree node.
``f``/``g`` become table lookups; only leaves fetch reconstruction values,
for the bit decision and the path-metric update.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .channel import design_uniform_grid, ebn0_to_sigma, grid_distribution, quantize_to_grid
from ._kernels import decode_batch
from .density_evolution import f_values, g_values
from .errors import ParameterError
from .quantizer import design_uniform_quantizer, uniform_cell_index, uniform_codebook


def _check_tables(config, tables):
    if tables.code_len != config.code_len:
        raise ParameterError(
            f"tables are for N={tables.code_len}, code has N={config.code_len}"
        )


def _frames(config, frame):
    x = np.asarray(frame)
    if x.shape[-1] != config.code_len or x.ndim not in (1, 2):
        raise ParameterError(f"expected {config.code_len} indices per frame, got {x.shape}")
    return x


def quantize_channel_llrs(llrs, tables):
    """Channel LLRs -> root symbol indices (uniform grid, then channel quantizer)."""
    return tables.quantize(llrs).astype(np.int32)


def decode_indices(config, frame, tables, list_size=1):
    """LUT decode of index frames (N,) or (F, N); returns u vectors and metrics."""
    _check_tables(config, tables)
    if list_size < 1:
        raise ParameterError("list size must be >= 1")
    x = _frames(config, frame)
    ftab, gtab, recon = tables.packed
    if x.size and (x.min() < 0 or x.max() >= len(tables.quantize_alphabet)):
        raise ParameterError("channel symbol index out of range")
    frames = np.ascontiguousarray(np.atleast_2d(x), dtype=np.float64)
    u, pm = decode_batch(frames, config.frozen_mask, config.n_bits, int(list_size), True, ftab, gtab, recon)
    if x.ndim == 1:
        return u[0], pm[0]
    return u, pm


def qsc_decode(config, frame, tables):
    return decode_indices(config, frame, tables, 1)[0][..., config.info_set]


def qscl_decode(config, frame, tables, list_size):
    return decode_indices(config, frame, tables, list_size)[0][..., config.info_set]


@dataclass(eq=False)
class UniformTables:
    """Baseline decoder tables: one uniform codebook shared by every node.

    f/g are evaluated in reals on the codebook values and re-quantized to the
    same equal-width cells, saturating at the outer cells; the results are
    tabulated once, so the LUT kernels run the baseline unchanged.
    """

    grid: object
    channel_quantizer: object
    codebook: np.ndarray
    channel_map: np.ndarray
    f_table: np.ndarray
    g_table: np.ndarray
    n_bits: int

    @property
    def code_len(self):
        return 1 << self.n_bits

    @property
    def levels(self):
        return self.codebook.size

    def quantize(self, llrs):
        return self.channel_map[quantize_to_grid(llrs, self.grid)]

    @property
    def quantize_alphabet(self):
        return self.codebook

    @cached_property
    def packed(self):
        H = max((1 << self.n_bits) - 1, 1)
        ftab = np.ascontiguousarray(np.broadcast_to(self.f_table, (H,) + self.f_table.shape))
        gtab = np.ascontiguousarray(np.broadcast_to(self.g_table, (H,) + self.g_table.shape))
        recon = np.ascontiguousarray(
            np.broadcast_to(self.codebook, (2 * (1 << self.n_bits) - 1, self.codebook.size))
        )
        return ftab, gtab, recon


def build_uniform_tables(grid, channel_dist, bits, n):
    K = 2**bits
    q = design_uniform_quantizer(channel_dist, K)
    book = uniform_codebook(channel_dist, q, K)
    chmap = uniform_cell_index(channel_dist.values, q.step, K).astype(np.int32)
    a = book[:, None]
    b = book[None, :]
    f_table = uniform_cell_index(f_values(a, b), q.step, K).astype(np.int32)
    g_table = np.stack(
        [uniform_cell_index(g_values(a, b, u), q.step, K) for u in (0, 1)], axis=-1
    ).astype(np.int32)
    return UniformTables(grid, q, book, chmap, f_table, g_table, n)


@lru_cache(maxsize=16)
def _cached_uniform_tables(n, bits, design_ebn0_db, rate, grid_levels):
    sigma = ebn0_to_sigma(design_ebn0_db, rate)
    grid = design_uniform_grid(sigma, grid_levels)
    return build_uniform_tables(grid, grid_distribution(sigma, grid), bits, n)


def uniform_baseline_decode(config, llrs, bits, list_size=1, design_ebn0_db=0.0, grid_levels=128):
    """Decode channel LLRs with the uniform-quantized baseline decoder."""
    if not 2 <= bits <= 8:
        raise ParameterError("bits must lie in [2, 8]")
    tables = _cached_uniform_tables(config.n_bits, bits, float(design_ebn0_db), config.rate, grid_levels)
    idx = tables.quantize(np.asarray(llrs, dtype=np.float64))
    return decode_indices(config, idx, tables, list_size)[0][..., config.info_set]
