"""Command-line driver.

    gaussent run (CONFIG | --preset NAME) [--out DIR] [--threads N]
                 [--log-base {2,e}] [--memory-cap GIB]
    gaussent verify (CONFIG | --preset NAME)

run writes results.csv, results.json, and manifest.json into the output
directory. verify prints one residual line per invariant check. Exit codes:
0 success, 2 invariant failure, 1 error.
"""
from __future__ import annotations

import argparse
import sys

from .errors import (
    ConfigError,
    GaussentError,
    MemoryCapExceeded,
    NonPhysical,
    NumericalFailure,
    SymmetryViolation,
    Unstable,
)
from .harness import load_preset, load_scenario, run_scenario, verify_scenario, write_outputs

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVARIANT = 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gaussent",
                                description="Gaussian-state entanglement experiments")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate a scenario and write result tables")
    run.add_argument("config", nargs="?", help="scenario JSON file")
    run.add_argument("--preset", help="named built-in scenario (fig2, fig4, fig5, fig6, lmg)")
    run.add_argument("--out", default=".", help="output directory (default: current)")
    run.add_argument("--threads", type=int, default=1, help="parallel sweep points")
    run.add_argument("--log-base", choices=["2", "e"], default=None,
                     help="logarithm base for entropies and negativities")
    run.add_argument("--memory-cap", type=float, default=4.0, metavar="GIB",
                     help="abort if the estimated working set exceeds this many GiB")

    ver = sub.add_parser("verify", help="run the invariant suite on a scenario's state")
    ver.add_argument("config", nargs="?", help="scenario JSON file")
    ver.add_argument("--preset", help="named built-in scenario")
    return p


def _scenario(args):
    if args.preset and args.config:
        raise ConfigError("give either a config file or --preset, not both")
    if args.preset:
        return load_preset(args.preset)
    if args.config:
        return load_scenario(args.config)
    raise ConfigError("need a config file or --preset")


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        sc = _scenario(args)
        if args.command == "run":
            rows, timings = run_scenario(
                sc, threads=args.threads, log_base=args.log_base,
                memory_cap_gib=args.memory_cap)
            manifest = write_outputs(sc, rows, timings, args.out)
            print(f"{sc.id}: {manifest['rows']} rows -> {args.out}/results.csv "
                  f"({timings['total_seconds']:.1f} s)")
            return EXIT_OK
        checks = verify_scenario(sc)
        ok = True
        for c in checks:
            status = "PASS" if c.passed else "FAIL"
            ok = ok and c.passed
            print(f"{status} {c.name}: residual {c.residual:.3e} (tol {c.tolerance:.1e})")
        return EXIT_OK if ok else EXIT_INVARIANT
    except (SymmetryViolation, NonPhysical, NumericalFailure) as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ConfigError, MemoryCapExceeded, Unstable, GaussentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
