"""Monte-Carlo BLER/BER simulation over BPSK-AWGN.

Frame ``t`` of a run draws its message bits and noise from its own Philox
stream (key = seed, counter offset t * 2**128), so results do not depend on
batch size or on the order in which frames are processed.  A point stops at
the frame where the block-error count reaches the target, or at
``max_frames``; the decision to continue never looks at frames not yet
counted.
"""

import csv
import logging
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .channel import design_uniform_grid, ebn0_to_sigma, grid_distribution
from .construction import CodeConfig, polar_transform
from .decoders import decode_float
from .density_evolution import run_quantized_de
from .errors import ConfigError, ParameterError
from .quantized import _cached_uniform_tables, decode_indices

log = logging.getLogger(__name__)

DECODERS = ("float-sc", "float-scl", "q-sc", "q-scl", "u-sc", "u-scl")
CSV_FIELDS = ("ebn0_db", "frames", "block_errors", "bit_errors", "bler", "ber")


@dataclass
class SimConfig:
    code_len: int
    info_len: int
    decoder: str = "float-sc"
    list_size: int = 8
    quant_bits: int = 5
    design_ebn0_db: float = 0.0
    ebn0_start: float = 0.0
    ebn0_stop: float = 3.0
    ebn0_step: float = 0.25
    max_frames: int = 100_000
    target_block_errors: int = 100
    seed: int = 0
    out: str | None = None
    tables_path: str | None = None
    grid_levels: int = 128
    batch_size: int = 256

    def __post_init__(self):
        if self.decoder not in DECODERS:
            raise ConfigError(f"unknown decoder {self.decoder!r}; choose from {', '.join(DECODERS)}")
        if not 2 <= self.quant_bits <= 7:
            raise ConfigError("quant_bits must lie in [2, 7]")
        if self.max_frames < 1 or self.target_block_errors < 1 or self.batch_size < 1:
            raise ConfigError("max_frames, target_block_errors and batch_size must be >= 1")
        if self.list_size < 1:
            raise ConfigError("list_size must be >= 1")
        if self.ebn0_step <= 0 and self.ebn0_stop != self.ebn0_start:
            raise ConfigError("ebn0_step must be > 0")
        if self.ebn0_stop < self.ebn0_start:
            raise ConfigError("empty Eb/N0 sweep (stop < start)")
        try:
            self.code = CodeConfig.from_beta(self.code_len, self.info_len)
        except ParameterError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def rate(self):
        return self.info_len / self.code_len

    @property
    def effective_list_size(self):
        return 1 if self.decoder.endswith("-sc") else self.list_size

    @property
    def needs_lut(self):
        return self.decoder.startswith("q-")

    def ebn0_points(self):
        if self.ebn0_stop == self.ebn0_start:
            return [float(self.ebn0_start)]
        n = int(np.floor((self.ebn0_stop - self.ebn0_start) / self.ebn0_step + 1e-9)) + 1
        return [round(self.ebn0_start + i * self.ebn0_step, 10) for i in range(n)]


@dataclass
class BlerPoint:
    ebn0_db: float
    frames: int
    block_errors: int
    bit_errors: int
    bler: float
    ber: float
    elapsed: float = field(default=0.0, compare=False)

    def csv_row(self):
        return [repr(float(self.ebn0_db)), self.frames, self.block_errors,
                self.bit_errors, repr(self.bler), repr(self.ber)]


def frame_rng(seed, index):
    """Independent generator for frame ``index`` of a run."""
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, index, 0]))


def draw_frames(seed, start, count, K, N):
    """Message bits (count, K) and unit-variance noise (count, N)."""
    msgs = np.empty((count, K), dtype=np.uint8)
    noise = np.empty((count, N))
    for t in range(count):
        rng = frame_rng(seed, start + t)
        msgs[t] = rng.integers(0, 2, K, dtype=np.uint8)
        noise[t] = rng.standard_normal(N)
    return msgs, noise


def design_tables(code_len, bits, design_ebn0_db, rate, grid_levels=128):
    sigma = ebn0_to_sigma(design_ebn0_db, rate)
    grid = design_uniform_grid(sigma, grid_levels)
    n = code_len.bit_length() - 1
    return run_quantized_de(grid_distribution(sigma, grid), n, 2**bits, grid, design_ebn0_db)


def cache_dir():
    return Path(os.environ.get("POLARQUANT_CACHE", Path.home() / ".cache" / "polarquant"))


def cache_path(code_len, bits, design_ebn0_db, rate, grid_levels):
    name = f"lut_N{code_len}_b{bits}_d{design_ebn0_db!r}_r{rate!r}_g{grid_levels}.txt"
    return cache_dir() / name


def load_or_build_tables(cfg, path=None):
    """LutSet for ``cfg``: read from ``path`` (or the cache) or design and save it."""
    from .tables_io import export_tables, import_tables

    key = (cfg.code_len, cfg.quant_bits, float(cfg.design_ebn0_db), cfg.rate, cfg.grid_levels)
    explicit = path is not None
    path = Path(path) if explicit else cache_path(*key)
    if path.exists():
        tables = import_tables(path)
        if tables.code_len != cfg.code_len or tables.levels != 2**cfg.quant_bits:
            raise ConfigError(
                f"{path}: tables are for N={tables.code_len}, K={tables.levels}; "
                f"run needs N={cfg.code_len}, K={2**cfg.quant_bits}"
            )
        return tables
    log.info("designing tables N=%d bits=%d design=%g dB", cfg.code_len, cfg.quant_bits, cfg.design_ebn0_db)
    tables = design_tables(*key)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        export_tables(tables, tmp)
        os.replace(tmp, path)
    except OSError:
        if explicit:
            raise
        log.warning("could not write table cache %s", path)
    return tables


def _decode(cfg, llrs, tables):
    L = cfg.effective_list_size
    if cfg.decoder.startswith("float"):
        return decode_float(cfg.code, llrs, L)[0]
    if cfg.decoder.startswith("u-"):
        tables = _cached_uniform_tables(
            cfg.code.n_bits, cfg.quant_bits, float(cfg.design_ebn0_db), cfg.rate, cfg.grid_levels
        )
    return decode_indices(cfg.code, tables.quantize(llrs), tables, L)[0]


def run_bler_point(cfg, ebn0_db, tables=None):
    if cfg.needs_lut and tables is None:
        raise ConfigError(f"decoder {cfg.decoder} needs lookup tables")
    if tables is not None and cfg.needs_lut and tables.code_len != cfg.code_len:
        raise ConfigError(f"tables are for N={tables.code_len}, code has N={cfg.code_len}")
    code = cfg.code
    N, K = code.code_len, code.info_len
    info = code.info_set
    sigma = ebn0_to_sigma(ebn0_db, cfg.rate)
    frames = block_errors = bit_errors = 0
    t0 = time.perf_counter()
    while frames < cfg.max_frames and block_errors < cfg.target_block_errors:
        count = min(cfg.batch_size, cfg.max_frames - frames)
        msgs, noise = draw_frames(cfg.seed, frames, count, K, N)
        u = np.zeros((count, N), dtype=np.uint8)
        u[:, info] = msgs
        x = polar_transform(u)
        llrs = 2.0 * ((1.0 - 2.0 * x) + sigma * noise) / sigma**2
        u_hat = _decode(cfg, llrs, tables)
        errs = np.count_nonzero(u_hat[:, info] != msgs, axis=1)
        for e in errs:
            frames += 1
            bit_errors += int(e)
            block_errors += e > 0
            if block_errors >= cfg.target_block_errors:
                break
    block_errors = int(block_errors)
    return BlerPoint(
        ebn0_db=float(ebn0_db),
        frames=frames,
        block_errors=block_errors,
        bit_errors=bit_errors,
        bler=block_errors / frames,
        ber=bit_errors / (frames * K),
        elapsed=time.perf_counter() - t0,
    )


def write_csv(points, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for p in points:
            w.writerow(p.csv_row())


def read_csv(path):
    with open(path, newline="") as fh:
        return [
            BlerPoint(float(r["ebn0_db"]), int(r["frames"]), int(r["block_errors"]),
                      int(r["bit_errors"]), float(r["bler"]), float(r["ber"]))
            for r in csv.DictReader(fh)
        ]


def run_sweep(cfg, tables=None, progress=None):
    """One point per sweep value; tables are resolved once, before the sweep."""
    if cfg.out is not None:
        # fail before simulating if the output cannot be written
        write_csv([], cfg.out)
    if cfg.needs_lut and tables is None:
        tables = load_or_build_tables(cfg, cfg.tables_path)
    points = []
    for ebn0 in cfg.ebn0_points():
        p = run_bler_point(cfg, ebn0, tables)
        log.info("%s Eb/N0=%.2f frames=%d errors=%d bler=%.3e",
                 cfg.decoder, ebn0, p.frames, p.block_errors, p.bler)
        if progress is not None:
            progress(p)
        points.append(p)
    if cfg.out is not None:
        write_csv(points, cfg.out)
    return points


def crossing_ebn0(points, target=1e-2):
    """Eb/N0 where the BLER curve crosses ``target`` (log-linear interpolation).

    Returns None when the sweep does not bracket the target.
    """
    pts = sorted(points, key=lambda p: p.ebn0_db)
    for a, b in zip(pts, pts[1:]):
        if a.bler >= target > b.bler:
            if b.bler == 0:
                return b.ebn0_db
            la, lb, lt = np.log10(a.bler), np.log10(b.bler), np.log10(target)
            return a.ebn0_db + (la - lt) / (la - lb) * (b.ebn0_db - a.ebn0_db)
    return None
