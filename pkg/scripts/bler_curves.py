"""BLER/BER curves for every decoder kind, one CSV per curve.

    python scripts/bler_curves.py --n 256 --k 128 --bits 5 --outdir results
"""

import argparse
import logging
from pathlib import Path

from polarquant.sim import SimConfig, run_sweep

KINDS = ["float-sc", "q-sc", "u-sc", "float-scl", "q-scl", "u-scl"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=256)
    ap.add_argument("--k", type=int, default=128)
    ap.add_argument("--bits", type=int, default=5)
    ap.add_argument("--list-size", type=int, default=8)
    ap.add_argument("--kinds", nargs="+", default=KINDS)
    ap.add_argument("--start", type=float, default=1.0)
    ap.add_argument("--stop", type=float, default=3.5)
    ap.add_argument("--step", type=float, default=0.25)
    ap.add_argument("--target-errors", type=int, default=100)
    ap.add_argument("--max-frames", type=int, default=200_000)
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for kind in args.kinds:
        cfg = SimConfig(args.n, args.k, kind, list_size=args.list_size, quant_bits=args.bits,
                        ebn0_start=args.start, ebn0_stop=args.stop, ebn0_step=args.step,
                        target_block_errors=args.target_errors, max_frames=args.max_frames,
                        out=str(out / f"bler_N{args.n}_K{args.k}_{kind}_b{args.bits}.csv"))
        run_sweep(cfg)


if __name__ == "__main__":
    main()
