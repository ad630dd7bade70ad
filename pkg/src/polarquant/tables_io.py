"""Text serialization of lookup-table sets.

Layout (one item per line, whitespace separated)::

    polarquant-lut 1 N=<N> K=<levels> design_ebn0_db=<x> grid=<levels>,<lo>,<step>
    channel_boundaries <a_0> ... <a_K>
    channel_recon <t_1> ... <t_K>
    channel_distortion <D>
    node <path> <alphabet size>        # path over {f,g}, "-" for the root
    recon <values...>
    f <row>                            # alphabet-size rows, internal nodes only
    g0 <row>
    g1 <row>
    end

Nodes appear in heap order.  Floats are written with ``repr`` so the round
trip is exact.
"""

import numpy as np

from .channel import UniformGrid
from .density_evolution import LutSet, heap_index, node_path
from .errors import ParameterError, TableFormatError
from .quantizer import Quantizer

MAGIC = "polarquant-lut"
VERSION = 1


def _floats(xs):
    return " ".join(repr(float(x)) for x in xs)


def _ints(xs):
    return " ".join(str(int(x)) for x in xs)


def export_tables(lutset, path):
    g = lutset.grid
    q = lutset.channel_quantizer
    with open(path, "w") as fh:
        fh.write(
            f"{MAGIC} {VERSION} N={lutset.code_len} K={lutset.levels} "
            f"design_ebn0_db={lutset.design_ebn0_db!r} grid={g.levels},{g.lo!r},{g.step!r}\n"
        )
        fh.write(f"channel_boundaries {_ints(q.boundaries)}\n")
        fh.write(f"channel_recon {_floats(q.recon)}\n")
        fh.write(f"channel_distortion {q.distortion!r}\n")
        n_internal = len(lutset.f_tables)
        for h, recon in enumerate(lutset.recon):
            fh.write(f"node {node_path(h) or '-'} {len(recon)}\n")
            fh.write(f"recon {_floats(recon)}\n")
            if h < n_internal:
                for tag, rows in (
                    ("f", lutset.f_tables[h]),
                    ("g0", lutset.g_tables[h][..., 0]),
                    ("g1", lutset.g_tables[h][..., 1]),
                ):
                    for row in rows:
                        fh.write(f"{tag} {_ints(row)}\n")
        fh.write("end\n")


class _Reader:
    def __init__(self, path):
        with open(path) as fh:
            self.lines = fh.read().splitlines()
        self.pos = 0
        self.path = path
        self.node = None

    def where(self):
        loc = f"{self.path}:{self.pos}"
        if self.node is not None:
            loc += f" (node {self.node!r})"
        return loc

    def fail(self, msg):
        raise TableFormatError(msg, self.where())

    def next(self, tag):
        if self.pos >= len(self.lines):
            self.pos += 1
            self.fail(f"truncated file, expected {tag!r}")
        parts = self.lines[self.pos].split()
        self.pos += 1
        if not parts or parts[0] != tag:
            self.fail(f"expected {tag!r}, got {self.lines[self.pos - 1][:40]!r}")
        return parts[1:]

    def ints(self, tag, count=None):
        try:
            vals = np.array([int(x) for x in self.next(tag)], dtype=np.int64)
        except ValueError:
            self.fail(f"non-integer entry in {tag!r}")
        if count is not None and vals.size != count:
            self.fail(f"{tag!r} has {vals.size} entries, expected {count}")
        return vals

    def floats(self, tag, count=None):
        try:
            vals = np.array([float(x) for x in self.next(tag)])
        except ValueError:
            self.fail(f"non-numeric entry in {tag!r}")
        if count is not None and vals.size != count:
            self.fail(f"{tag!r} has {vals.size} entries, expected {count}")
        return vals


def _parse_header(rd):
    if not rd.lines:
        rd.fail("empty file")
    parts = rd.lines[0].split()
    rd.pos = 1
    if len(parts) < 2 or parts[0] != MAGIC:
        rd.fail("not a polarquant lookup-table file")
    if parts[1] != str(VERSION):
        rd.fail(f"unsupported format version {parts[1]!r} (expected {VERSION})")
    try:
        fields = dict(p.split("=", 1) for p in parts[2:])
        N = int(fields["N"])
        K = int(fields["K"])
        design = float(fields["design_ebn0_db"])
        levels, lo, step = fields["grid"].split(",")
        grid = UniformGrid(int(levels), float(lo), float(step))
    except (KeyError, ValueError, ParameterError) as exc:
        rd.fail(f"bad header: {exc}")
    if N < 1 or N & (N - 1):
        rd.fail(f"N={N} is not a power of two")
    return N, K, design, grid


def import_tables(path):
    rd = _Reader(path)
    N, K, design, grid = _parse_header(rd)
    bounds = rd.ints("channel_boundaries")
    recon0 = rd.floats("channel_recon")
    dist0 = rd.floats("channel_distortion", 1)[0]
    try:
        chq = Quantizer(bounds, recon0, dist0)
    except ParameterError as exc:
        rd.fail(f"invalid channel quantizer: {exc}")
    n_nodes = 2 * N - 1
    sizes, recon, f_tables, g_tables, table_lines = [], [], [], [], []
    for h in range(n_nodes):
        rd.node = None
        hdr = rd.next("node")
        if len(hdr) != 2:
            rd.fail("node line needs a path and an alphabet size")
        path = "" if hdr[0] == "-" else hdr[0]
        rd.node = path or "-"
        try:
            ok = heap_index(path) == h
            size = int(hdr[1])
        except (ParameterError, ValueError):
            rd.fail("bad node header")
        if not ok:
            rd.fail(f"node out of order, expected {node_path(h) or '-'!r}")
        r = rd.floats("recon", size)
        if np.any(np.diff(r) <= 0):
            rd.fail("reconstruction values not strictly ascending")
        sizes.append(size)
        recon.append(r)
        if h < n_nodes // 2:
            table_lines.append(rd.pos)
            ft = np.stack([rd.ints("f", size) for _ in range(size)])
            g0 = np.stack([rd.ints("g0", size) for _ in range(size)])
            g1 = np.stack([rd.ints("g1", size) for _ in range(size)])
            f_tables.append(ft.astype(np.int32))
            g_tables.append(np.stack([g0, g1], axis=-1).astype(np.int32))
    # children come later in heap order, so ranges are checked afterwards
    for h, (ft, gt) in enumerate(zip(f_tables, g_tables)):
        for tab, child in ((ft, 2 * h + 1), (gt, 2 * h + 2)):
            if tab.min() < 0 or tab.max() >= sizes[child]:
                rd.pos = table_lines[h]
                rd.node = node_path(h) or "-"
                rd.fail(
                    f"table entry out of range for child {node_path(child)!r} "
                    f"(alphabet {sizes[child]})"
                )
    rd.node = None
    rd.next("end")
    if sizes[0] != chq.levels or not np.array_equal(recon[0], chq.recon):
        raise TableFormatError("root alphabet differs from the channel quantizer", rd.path)
    try:
        return LutSet(K, grid, chq, recon, f_tables, g_tables, design)
    except ParameterError as exc:
        raise TableFormatError(str(exc), rd.path) from exc

