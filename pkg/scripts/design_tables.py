"""Design and export LUT sets, e.g. ``python scripts/design_tables.py --n 256 --k 128 --bits 4 5``."""

import argparse
import time
from pathlib import Path

from polarquant.sim import design_tables
from polarquant.tables_io import export_tables


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=256)
    ap.add_argument("--k", type=int, default=128)
    ap.add_argument("--bits", type=int, nargs="+", default=[5])
    ap.add_argument("--design-ebn0", type=float, default=0.0)
    ap.add_argument("--outdir", default="tables")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for bits in args.bits:
        t0 = time.perf_counter()
        luts = design_tables(args.n, bits, args.design_ebn0, args.k / args.n)
        path = out / f"lut_N{args.n}_K{args.k}_b{bits}.txt"
        export_tables(luts, path)
        sizes = sorted({len(r) for r in luts.recon})
        print(f"{path}: {time.perf_counter() - t0:.1f} s, alphabet sizes {sizes}")


if __name__ == "__main__":
    main()
