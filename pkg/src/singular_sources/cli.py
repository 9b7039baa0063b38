"""Command-line entry point ``sss``.

Exit codes: 0 success, 1 solver or certification failure, 2 configuration
error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .certify import SUITES, certify
from .config import load_config
from .errors import ConfigError, SolverError
from .experiment import default_out_root, fmt, reproduce_table1, run_experiment
from .presets import PRESETS

EXIT_OK, EXIT_SOLVER, EXIT_CONFIG = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=None,
                        help="output root directory (default: $SSS_OUT_DIR or ./sss-out)")
    common.add_argument("--quiet", action="store_true", help="suppress the summary output")
    common.add_argument("--max-steps", type=int, default=None, metavar="K",
                        help="override the time-step budget")

    p = argparse.ArgumentParser(prog="sss", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("solve", parents=[common], help="run an experiment from a config file")
    s.add_argument("config", type=Path)
    s = sub.add_parser("preset", parents=[common], help="run a compiled-in preset")
    s.add_argument("name")
    sub.add_parser("table1", parents=[common], help="degree-m error ratio table")
    s = sub.add_parser("certify", parents=[common], help="run invariant checks (JSON lines)")
    s.add_argument("suite", nargs="?", default="all", choices=["all", *SUITES])
    sub.add_parser("list-presets", parents=[common], help="list preset names")
    return p


def _run(cfg, args) -> int:
    res = run_experiment(cfg, out_root=args.out, max_steps=args.max_steps)
    if not args.quiet:
        print(res.summary, end="")
        print(f"output: {res.out_dir}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.max_steps is not None and args.max_steps < 1:
        print("error: max-steps: must be a positive integer", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "list-presets":
            for name, cfg in PRESETS.items():
                print(f"{name}\t{cfg.dimension}D {cfg.equation} {cfg.scheme} {cfg.grid} n={cfg.n}")
            return EXIT_OK
        if args.command == "solve":
            try:
                cfg = load_config(args.config)
            except OSError as exc:
                raise ConfigError("config", str(exc)) from None
            return _run(cfg, args)
        if args.command == "preset":
            if args.name not in PRESETS:
                raise ConfigError("name", f"unknown preset {args.name!r}")
            return _run(PRESETS[args.name], args)
        if args.command == "table1":
            out = args.out if args.out is not None else default_out_root()
            kwargs = {} if args.max_steps is None else {"max_steps": args.max_steps}
            rows = reproduce_table1(out_root=out, **kwargs)
            if not args.quiet:
                print("m,max_error_prev,max_error_new,ratio")
                for r in rows:
                    print(f"{r.degree},{fmt(r.max_error_prev)},{fmt(r.max_error_new)},{fmt(r.ratio)}")
                print(f"output: {Path(out) / 'table1.csv'}")
            return EXIT_OK
        if args.command == "certify":
            results = certify(args.suite, emit=None if args.quiet else print)
            failed = [c for c in results if not c.passed]
            for c in failed:
                print(f"FAILED {c.suite}: {c.name} ({c.value} vs {c.tolerance}) {c.detail}",
                      file=sys.stderr)
            return EXIT_SOLVER if failed else EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    parser.error(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
