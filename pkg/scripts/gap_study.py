"""Horizontal BLER gaps at 1e-2 for the comparisons of the reproduction study.

Each comparison runs both decoders on the same frames (shared seed), sweeping
upward in 0.25 dB steps until the curve drops well below the target.
"""

import argparse
import logging

from polarquant.experiments import bler_gap

STUDIES = {
    "scl5": (256, 128, "float-scl", "q-scl", 5, 1.5),
    "sc5": (256, 128, "float-sc", "q-sc", 5, 2.0),
    "sc4-uniform": (256, 128, "q-sc", "u-sc", 4, 2.0),
    "scl5-512": (512, 128, "float-scl", "q-scl", 5, 1.0),
    "sc4": (256, 128, "float-sc", "q-sc", 4, 2.0),
    "scl4-uniform": (256, 128, "q-scl", "u-scl", 4, 1.5),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("studies", nargs="*", default=list(STUDIES))
    ap.add_argument("--target-errors", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")
    for name in args.studies:
        N, K, ref, cand, bits, start = STUDIES[name]
        r = bler_gap(N, K, ref, cand, bits=bits, start=start,
                     target_errors=args.target_errors, seed=args.seed)
        print(f"{name:14s} {ref:>9s} {r.ref_crossing:.3f} dB  {cand:>6s} {r.cand_crossing:.3f} dB  "
              f"gap {r.gap:+.3f} dB (sigma {r.sigma:.3f})", flush=True)
        for p in r.ref_points + r.cand_points:
            logging.debug("%s", p)


if __name__ == "__main__":
    main()
