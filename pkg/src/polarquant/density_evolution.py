"""Quantized density evolution and lookup-table generation.

Every node of the SC decoding tree carries a discrete LLR distribution.  The
two children of a node are fed by ``f`` and ``g`` applied to two i.i.d. copies
of the node's distribution; each output distribution is computed exactly by
enumeration and then compressed by the minimum-distortion quantizer.  The
cell index of each (input, input[, u]) combination is stored in the node's
f/g lookup tables.

Nodes are identified by a path string over ``{f, g}`` (root = ``""``) or by
their heap index ``2**depth - 1 + k`` where the bits of ``k`` spell the path
with ``f = 0`` and ``g = 1``.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .channel import UniformGrid, quantize_to_grid
from .errors import ParameterError
from .quantizer import (
    DiscreteDistribution,
    Quantizer,
    apply_quantizer,
    design_min_distortion_quantizer,
    design_symmetric_quantizer,
    is_symmetric,
    merge_duplicates,
)


def sign(x):
    """Sign with sign(0) = +1."""
    return np.where(np.asarray(x) < 0, -1.0, 1.0)


def f_values(a, b):
    return sign(a) * sign(b) * np.minimum(np.abs(a), np.abs(b))


def g_values(a, b, u):
    return np.where(np.asarray(u) == 1, -np.asarray(a), a) + b


def _f_pairs(da, db):
    vals = f_values(da.values[:, None], db.values[None, :])
    probs = da.probs[:, None] * db.probs[None, :]
    return vals, probs


def _g_triples(da, db):
    a = da.values[:, None, None]
    b = db.values[None, :, None]
    u = np.arange(2)[None, None, :]
    vals = g_values(a, b, u)
    probs = 0.5 * da.probs[:, None, None] * db.probs[None, :, None] * np.ones(2)
    return vals, probs


def f_output_distribution(da, db):
    return merge_duplicates(*_f_pairs(da, db))


def g_output_distribution(da, db):
    return merge_duplicates(*_g_triples(da, db))


def _cell_of_values(dist, q, vals, probs):
    """Cell of each f/g output value under ``q`` (designed on ``dist``).

    Values whose probability underflowed to zero were dropped by the merge;
    they go to the first cell whose largest symbol is >= the value.
    """
    uppers = dist.values[q.boundaries[1:] - 1]
    cells = np.minimum(np.searchsorted(uppers, vals, side="left"), q.levels - 1)
    pos = probs > 0
    idx = np.minimum(np.searchsorted(dist.values, vals[pos]), dist.size - 1)
    if not np.array_equal(dist.values[idx], vals[pos]):
        raise RuntimeError("f/g output missing from the merged alphabet")
    return cells.astype(np.int32)


def build_node_luts(da, db, qf, qg):
    """Tables mapping input symbol indices to output cell indices.

    ``f_table[i, j]`` and ``g_table[i, j, u]`` index the cells of ``qf`` and
    ``qg``, which must be designed on the merged f/g output distributions.
    """
    fo = f_output_distribution(da, db)
    go = g_output_distribution(da, db)
    return (
        _cell_of_values(fo, qf, *_f_pairs(da, db)),
        _cell_of_values(go, qg, *_g_triples(da, db)),
    )


def heap_index(path):
    k = 0
    for c in path:
        if c not in "fg":
            raise ParameterError(f"bad node path {path!r}")
        k = 2 * k + (c == "g")
    return (1 << len(path)) - 1 + k


def node_path(heap):
    depth = (heap + 1).bit_length() - 1
    k = heap - ((1 << depth) - 1)
    return "".join("g" if (k >> (depth - 1 - d)) & 1 else "f" for d in range(depth))


@dataclass(eq=False)
class LutSet:
    """Lookup tables of a quantized SC decoder for one code length.

    ``recon[h]`` holds the reconstruction values of node ``h`` (heap order,
    ``2N - 1`` nodes); ``f_tables[h]`` / ``g_tables[h]`` exist for the
    ``N - 1`` internal nodes and produce the alphabets of children
    ``2h + 1`` and ``2h + 2``.
    """

    levels: int
    grid: UniformGrid
    channel_quantizer: Quantizer
    recon: list
    f_tables: list
    g_tables: list
    design_ebn0_db: float = 0.0
    distributions: list | None = field(default=None, repr=False)

    def __post_init__(self):
        n_nodes = len(self.recon)
        if n_nodes < 1 or (n_nodes + 1) & n_nodes:
            raise ParameterError("recon must have 2N - 1 entries")
        if len(self.f_tables) != n_nodes // 2 or len(self.g_tables) != n_nodes // 2:
            raise ParameterError("need N - 1 f and g tables")
        if self.channel_quantizer.alphabet_size != self.grid.levels:
            raise ParameterError("channel quantizer must cover the whole grid")

    @property
    def code_len(self):
        return (len(self.recon) + 1) // 2

    @property
    def n_bits(self):
        return self.code_len.bit_length() - 1

    def alphabet_size(self, heap):
        return len(self.recon[heap])

    def __eq__(self, other):
        if not isinstance(other, LutSet):
            return NotImplemented
        return (
            self.levels == other.levels
            and self.grid == other.grid
            and self.design_ebn0_db == other.design_ebn0_db
            and self.channel_quantizer == other.channel_quantizer
            and len(self.recon) == len(other.recon)
            and all(np.array_equal(a, b) for a, b in zip(self.recon, other.recon))
            and all(np.array_equal(a, b) for a, b in zip(self.f_tables, other.f_tables))
            and all(np.array_equal(a, b) for a, b in zip(self.g_tables, other.g_tables))
        )

    @cached_property
    def channel_map(self):
        """Root symbol index of every grid index."""
        return self.channel_quantizer.cell_map().astype(np.int32)

    def quantize(self, llrs):
        return self.channel_map[quantize_to_grid(llrs, self.grid)]

    @property
    def quantize_alphabet(self):
        return self.recon[0]

    @cached_property
    def packed(self):
        """Zero-padded (f, g, recon) arrays for the compiled decoders."""
        A = max(len(r) for r in self.recon)
        H = len(self.f_tables)
        ftab = np.zeros((max(H, 1), A, A), dtype=np.int32)
        gtab = np.zeros((max(H, 1), A, A, 2), dtype=np.int32)
        for h in range(H):
            m = self.f_tables[h].shape[0]
            ftab[h, :m, :m] = self.f_tables[h]
            gtab[h, :m, :m] = self.g_tables[h]
        recon = np.zeros((len(self.recon), A))
        for h, r in enumerate(self.recon):
            recon[h, : len(r)] = r
        return ftab, gtab, recon


def design_node_quantizer(dist, K, symmetric=True):
    """Node quantizer with at most K cells.

    With ``symmetric`` set, a distribution symmetric about 0 gets the best
    mirror-symmetric partition, so symmetry survives every tree stage; the
    unconstrained optimum of a symmetric input is often lopsided.
    """
    K = min(K, dist.size)
    if symmetric and is_symmetric(dist):
        return design_symmetric_quantizer(dist, K)
    return design_min_distortion_quantizer(dist, K)


def run_quantized_de(channel_dist, n, K, grid, design_ebn0_db=0.0, keep_distributions=False,
                     symmetric=True):
    """Design all node quantizers for a code of length ``2**n``.

    ``K`` is the number of quantizer levels.  Alphabets already no larger than
    ``K`` pass through unchanged (identity quantizer), so a very large ``K``
    yields exact, uncompressed density evolution.  ``symmetric=False`` uses
    the unconstrained minimum-distortion design at every node.
    """
    if n < 0 or K < 1:
        raise ParameterError("need n >= 0 and K >= 1")
    chq = design_node_quantizer(channel_dist, K, symmetric)
    n_nodes = 2 ** (n + 1) - 1
    dists = [None] * n_nodes
    dists[0] = apply_quantizer(channel_dist, chq)
    f_tables, g_tables = [], []
    for h in range(n_nodes // 2):
        p = dists[h]
        fo = f_output_distribution(p, p)
        go = g_output_distribution(p, p)
        qf = design_node_quantizer(fo, K, symmetric)
        qg = design_node_quantizer(go, K, symmetric)
        ft, gt = build_node_luts(p, p, qf, qg)
        f_tables.append(ft)
        g_tables.append(gt)
        dists[2 * h + 1] = apply_quantizer(fo, qf)
        dists[2 * h + 2] = apply_quantizer(go, qg)
    return LutSet(
        levels=K,
        grid=grid,
        channel_quantizer=chq,
        recon=[d.values.copy() for d in dists],
        f_tables=f_tables,
        g_tables=g_tables,
        design_ebn0_db=float(design_ebn0_db),
        distributions=dists if keep_distributions else None,
    )
