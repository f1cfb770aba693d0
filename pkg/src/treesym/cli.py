"""Command-line interface.

Exit codes: 0 success, 1 a verification failed (or input records were
rejected), 2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys

from .cherries import exact_moments
from .experiments import (
    GRAPH_COLUMNS,
    TREE_COLUMNS,
    ExperimentConfig,
    classify_stream,
    format_rows,
    graph_experiment,
    tree_experiment,
    verify_formulas,
)
from .graph6 import graph6_encode
from .symmetry import DEFAULT_BRUTE_CAP
from .coherent import DEFAULT_WL_CAP
from .trees import DEFAULT_ENUM_CAP, SampleStream

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def parse_n_values(values: list[str]) -> list[int]:
    """``--n 5 --n 10..12 --n 20,50`` -> ``[5, 10, 11, 12, 20, 50]``."""
    out: list[int] = []
    for item in values:
        for part in item.split(","):
            part = part.strip()
            if not part:
                continue
            if ".." in part:
                a, b = part.split("..", 1)
                lo, hi = int(a), int(b)
                if hi < lo:
                    raise ValueError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    return out


def _common(p: argparse.ArgumentParser, sampling: bool) -> None:
    p.add_argument("--n", action="append", default=[], metavar="N",
                   help="vertex count; repeatable, accepts a..b ranges and comma lists")
    if sampling:
        p.add_argument("--trials", type=int, default=1000, help="samples per n (default 1000)")
        p.add_argument("--seed", type=int, required=True, help="master seed (mandatory)")
        p.add_argument("--workers", type=int, default=1, help="worker processes (output does not depend on it)")
    p.add_argument("--cap-enum", type=int, default=DEFAULT_ENUM_CAP, help="largest n for exhaustive tree enumeration")
    p.add_argument("--cap-brute", type=int, default=DEFAULT_BRUTE_CAP, help="largest n for brute-force automorphisms")
    p.add_argument("--cap-wl", type=int, default=DEFAULT_WL_CAP, help="largest n for 2-dim Weisfeiler-Leman")
    p.add_argument("--format", choices=("csv", "text"), default="csv", dest="fmt")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treesym", description="Cherries, tree symmetry and quantum symmetry criteria.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-formulas", help="check the cherry moment formulas against exhaustive enumeration")
    p.add_argument("--n-max", type=int, required=True)
    _common(p, sampling=False)

    p = sub.add_parser("tree-experiment", help="Monte Carlo over uniform labeled trees")
    _common(p, sampling=True)

    p = sub.add_parser("graph-experiment", help="Monte Carlo over G(n, 1/2): full coherent algebra frequency")
    _common(p, sampling=True)

    p = sub.add_parser("classify", help="classify graph6 records (file or stdin), one verdict per line")
    p.add_argument("input", nargs="?", default="-", help="graph6 file, '-' for stdin")
    _common(p, sampling=False)
    p.set_defaults(fmt="text")

    p = sub.add_parser("sample-trees", help="emit uniform labeled trees as graph6 lines")
    _common(p, sampling=True)

    p = sub.add_parser("moments", help="exact moments of the cherry count")
    _common(p, sampling=False)
    return parser


@contextlib.contextmanager
def _output(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="\n") as fh:
            yield fh


def _config(args: argparse.Namespace) -> ExperimentConfig:
    return ExperimentConfig(
        command=args.command,
        ns=parse_n_values(args.n),
        trials=getattr(args, "trials", 1),
        master_seed=getattr(args, "seed", None),
        cap_enum=args.cap_enum,
        cap_brute=args.cap_brute,
        cap_wl=args.cap_wl,
        fmt=args.fmt,
        out=args.out,
        workers=getattr(args, "workers", 1),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = _config(args)
        if args.command in ("tree-experiment", "graph-experiment", "sample-trees", "moments") and not cfg.ns:
            raise ValueError("at least one --n is required")
    except ValueError as exc:
        parser.error(str(exc))

    if args.command == "verify-formulas":
        if not 4 <= args.n_max <= cfg.cap_enum:
            print(f"usage error: --n-max must lie in 4..{cfg.cap_enum}", file=sys.stderr)
            return EXIT_USAGE
        checks = verify_formulas(args.n_max, cap=cfg.cap_enum)
        with _output(cfg.out) as out:
            for c in checks:
                out.write(c.line() + "\n")
        bad = [msg for c in checks for msg in c.failures()]
        for msg in bad:
            print(f"FAILED: {msg}", file=sys.stderr)
        return EXIT_FAIL if bad else EXIT_OK

    if args.command == "tree-experiment":
        rows = tree_experiment(cfg)
        with _output(cfg.out) as out:
            out.write(format_rows(TREE_COLUMNS, rows, cfg.fmt))
        return EXIT_OK

    if args.command == "graph-experiment":
        try:
            rows = graph_experiment(cfg)
        except ValueError as exc:
            print(f"usage error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        with _output(cfg.out) as out:
            out.write(format_rows(GRAPH_COLUMNS, rows, cfg.fmt))
        return EXIT_OK

    if args.command == "classify":
        src = sys.stdin if args.input == "-" else open(args.input)
        try:
            with _output(cfg.out) as out:
                errors = classify_stream(src, out, sys.stderr, cfg.classify_options, cfg.fmt)
        finally:
            if src is not sys.stdin:
                src.close()
        return EXIT_FAIL if errors else EXIT_OK

    if args.command == "sample-trees":
        with _output(cfg.out) as out:
            for n in cfg.ns:
                for t in SampleStream(cfg.master_seed, n, cfg.trials):
                    out.write(graph6_encode(t).decode("ascii") + "\n")
        return EXIT_OK

    if args.command == "moments":
        with _output(cfg.out) as out:
            for n in cfg.ns:
                if n < 4:
                    print(f"usage error: moments need n >= 4, got {n}", file=sys.stderr)
                    return EXIT_USAGE
                rep = exact_moments(n)
                if cfg.fmt == "text":
                    out.write(json.dumps(rep.to_dict()) + "\n")
                else:
                    d = rep.to_dict()
                    if n == cfg.ns[0]:
                        out.write(",".join(d) + "\n")
                    out.write(",".join("" if v is None else str(v) for v in d.values()) + "\n")
        return EXIT_OK
    return EXIT_USAGE  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
