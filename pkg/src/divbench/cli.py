"""Command line entry point.

    divbench run --config exp.cfg [--algorithm NAME] [--problem NAME] [--runs N]
                 [--generations N] [--seed S] [--out DIR]
    divbench list algorithms | problems
    divbench compare --config exp.cfg --algorithms basic,clearing,hybrid

Exit status: 0 on success, 1 on invalid configuration, 2 on I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .harness import (
    ExperimentConfig,
    config_from_mapping,
    config_to_text,
    load_config,
    run_replicated,
    write_generation_csv,
    write_outputs,
    write_summary,
)
from .landscapes import PRESET_NAMES
from .mechanisms import ALGORITHMS


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # usage mistakes count as invalid configuration (exit 1), leaving 2 for I/O
    def error(self, message):
        raise UsageError(message)


def _add_overrides(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("--problem", help=", ".join(PRESET_NAMES))
    p.add_argument("--runs", type=int)
    p.add_argument("--generations", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output directory (default: $DIVBENCH_OUT or ./results)")
    p.add_argument("--workers", type=int, default=1, help="parallel processes for runs")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="divbench", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="replicated runs of one algorithm")
    _add_overrides(run)
    run.add_argument("--algorithm", help=", ".join(ALGORITHMS))

    lst = sub.add_parser("list", help="list algorithms or problems")
    lst.add_argument("what", choices=("algorithms", "problems"))

    cmp_ = sub.add_parser("compare", help="run several algorithms and write one summary")
    _add_overrides(cmp_)
    cmp_.add_argument("--algorithms", required=True, help="comma-separated algorithm names")
    return parser


def _config(args: argparse.Namespace) -> tuple[ExperimentConfig, Path]:
    values: dict[str, object] = dict(load_config(args.config)) if args.config else {}
    for key, attr in (("problem", "problem"), ("runs", "runs"), ("generations", "generations"),
                      ("seed", "seed"), ("algorithm", "algorithm")):
        v = getattr(args, attr, None)
        if v is not None:
            values[key] = v
    cfg = config_from_mapping(values)
    out = args.out or cfg.output_dir or os.environ.get("DIVBENCH_OUT") or "results"
    return cfg, Path(out)


def _cmd_run(args) -> None:
    cfg, out = _config(args)
    result = run_replicated(cfg, workers=args.workers)
    write_outputs(result, cfg, out)
    periods = " / ".join(f"{v:.2f}" for v in result.max_achieved_per_period)
    print(f"{cfg.algorithm} on {cfg.problem}: offline {result.offline_performance:.3f}, "
          f"max per period {periods} -> {out}")


def _cmd_compare(args) -> None:
    names = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    bad = [a for a in names if a not in ALGORITHMS]
    if bad or not names:
        raise ValueError(f"unknown algorithm(s): {', '.join(bad) or '(none given)'}")
    base, out = _config(args)
    results = {}
    for name in names:
        cfg = config_from_mapping({"algorithm": name}, base)
        results[name] = run_replicated(cfg, workers=args.workers)
        (out / name).mkdir(parents=True, exist_ok=True)
        write_generation_csv(results[name].records, out / name / "generations.csv")
        (out / name / "config.txt").write_text(config_to_text(cfg))
        print(f"{name}: offline {results[name].offline_performance:.3f}")
    write_summary(results, out / "summary.csv")


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "list":
            print("\n".join(ALGORITHMS if args.what == "algorithms" else PRESET_NAMES))
        elif args.command == "run":
            _cmd_run(args)
        else:
            _cmd_compare(args)
    except OSError as exc:
        print(f"divbench: I/O error: {exc}", file=sys.stderr)
        return 2
    except UsageError as exc:
        build_parser().print_usage(sys.stderr)
        print(f"divbench: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError) as exc:
        print(f"divbench: invalid configuration: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
