"""Command-line entry point: ``polarquant --n 256 --k 128 --decoder q-sc ...``.

Exit codes: 0 success, 2 configuration error, 3 I/O error (including
unreadable table files), 4 internal error.
"""

import argparse
import logging
import sys

from .errors import ConfigError, ParameterError, TableFormatError
from .sim import DECODERS, SimConfig, run_sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_INTERNAL = 4


def build_parser():
    p = argparse.ArgumentParser(
        prog="polarquant",
        description="BLER/BER simulation of float, nonuniform-LUT and uniform quantized polar decoders.",
    )
    p.add_argument("--n", type=int, required=True, help="code length N (power of two)")
    p.add_argument("--k", type=int, required=True, help="number of information bits")
    p.add_argument("--decoder", choices=DECODERS, default="float-sc")
    p.add_argument("--list-size", type=int, default=8)
    p.add_argument("--bits", type=int, default=5, help="quantizer resolution, K = 2**bits levels")
    p.add_argument("--design-ebn0", type=float, default=0.0, help="table design Eb/N0 in dB")
    p.add_argument("--ebn0-start", type=float, default=0.0)
    p.add_argument("--ebn0-stop", type=float, default=3.0)
    p.add_argument("--ebn0-step", type=float, default=0.25)
    p.add_argument("--max-frames", type=int, default=100_000)
    p.add_argument("--target-errors", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tables", default=None, help="LUT file; loaded if present, else designed and written")
    p.add_argument("--out", default=None, help="CSV output path (stdout if omitted)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def config_from_args(args):
    return SimConfig(
        code_len=args.n,
        info_len=args.k,
        decoder=args.decoder,
        list_size=args.list_size,
        quant_bits=args.bits,
        design_ebn0_db=args.design_ebn0,
        ebn0_start=args.ebn0_start,
        ebn0_stop=args.ebn0_stop,
        ebn0_step=args.ebn0_step,
        max_frames=args.max_frames,
        target_block_errors=args.target_errors,
        seed=args.seed,
        out=args.out,
        tables_path=args.tables,
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(message)s",
    )
    try:
        cfg = config_from_args(args)
        points = run_sweep(cfg)
    except (ConfigError, ParameterError) as exc:
        print(f"polarquant: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, TableFormatError) as exc:
        print(f"polarquant: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # noqa: BLE001
        print(f"polarquant: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.out is None:
        from .sim import CSV_FIELDS

        print(",".join(CSV_FIELDS))
        for p in points:
            print(",".join(str(x) for x in p.csv_row()))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
