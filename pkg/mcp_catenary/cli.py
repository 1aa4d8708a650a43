from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from . import commands
from .config import CatenaryConfig
from .errors import MonoidError
from .output import FORMATS, OutputEnvelope

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", default="text", choices=FORMATS, help="Output format")
    common.add_argument("--config", default=None, help="Path to a catenary configuration JSON")
    common.add_argument("--workers", type=int, default=None, help="Worker processes for element sweeps")
    common.add_argument("--log-level", default="WARNING", help="Python logging level (INFO, DEBUG, ...)")
    common.add_argument(
        "--timestamp", action="store_true", help="Add a timestamp to the provenance block"
    )

    parser = argparse.ArgumentParser(
        prog="mcp-catenary-cli",
        description="Factorization invariants and catenary-set realization for numerical monoids",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="Summary of a monoid")
    p.add_argument("generators", help="Comma-separated generators, e.g. 3,8,13")
    p.add_argument("--window", type=int, default=None, help="Window for the catenary set")

    p = sub.add_parser("factorize", parents=[common], help="All factorizations of an element")
    p.add_argument("generators")
    p.add_argument("n", type=int)

    p = sub.add_parser("catenary", parents=[common], help="Catenary degree of an element")
    p.add_argument("generators")
    p.add_argument("n", type=int)
    p.add_argument("--use-oracle", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("betti", parents=[common], help="Betti elements")
    p.add_argument("generators")
    p.add_argument("--use-oracle", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("cset", parents=[common], help="Set of catenary degrees")
    p.add_argument("generators")
    p.add_argument("--window", type=int, default=None)

    p = sub.add_parser("glue", parents=[common], help="Gluing d1*S1 + d2*S2")
    p.add_argument("g1")
    p.add_argument("d1", type=int)
    p.add_argument("g2")
    p.add_argument("d2", type=int)

    p = sub.add_parser("adjoin", parents=[common], help="Build <c*S, b>")
    p.add_argument("generators")
    p.add_argument("c", type=int)
    p.add_argument("b", type=int)

    p = sub.add_parser("realize", parents=[common], help="Monoid with a prescribed catenary set")
    p.add_argument("target", help="Comma-separated target set, e.g. 0,2,7,20")
    p.add_argument("--b-list", default=None, help="Comma-separated b values, one per adjoin step")
    p.add_argument(
        "--verify",
        nargs="?",
        type=int,
        const=0,
        default=None,
        metavar="BUDGET",
        help="Recompute the trace; optional window budget",
    )

    p = sub.add_parser("plot-data", parents=[common], help="CSV rows n,c(n) over a window")
    p.add_argument("generators")
    p.add_argument("--window", type=int, default=None)
    return parser


Handler = Callable[[argparse.Namespace, CatenaryConfig], OutputEnvelope]

HANDLERS: Dict[str, Handler] = {
    "analyze": lambda a, cfg: commands.analyze(a.generators, a.window, cfg),
    "factorize": lambda a, cfg: commands.factorize(a.generators, a.n),
    "catenary": lambda a, cfg: commands.catenary(a.generators, a.n, a.use_oracle, cfg),
    "betti": lambda a, cfg: commands.betti(a.generators, a.use_oracle, cfg),
    "cset": lambda a, cfg: commands.cset(a.generators, a.window, cfg),
    "glue": lambda a, cfg: commands.glue_command(a.g1, a.d1, a.g2, a.d2),
    "adjoin": lambda a, cfg: commands.adjoin_command(a.generators, a.c, a.b, cfg),
    "realize": lambda a, cfg: commands.realize_command(a.target, a.b_list, a.verify, cfg),
    "plot-data": lambda a, cfg: commands.plot_data(a.generators, a.window, cfg),
}


def load_config(args: argparse.Namespace) -> CatenaryConfig:
    config = CatenaryConfig()
    if args.config is not None:
        config_path = Path(args.config)
        if not config_path.exists():
            raise FileNotFoundError(f"{config_path} missing. Copy config/catenary.example.json and edit it.")
        config = CatenaryConfig.from_file(config_path)
    if args.workers is not None:
        config = replace(config, workers=args.workers)
    return config


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    logging.basicConfig(
        level=getattr(logging, args.log_level.upper(), logging.WARNING), stream=sys.stderr
    )

    try:
        config = load_config(args)
    except (OSError, ValueError, TypeError) as exc:
        print(f"error: --config: {exc}", file=sys.stderr)
        return 2

    try:
        envelope = HANDLERS[args.command](args, config)
    except MonoidError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 1
    if args.timestamp:
        envelope.stamp()
    output = envelope.render(args.format)
    if output:
        sys.stdout.write(output + "\n")
    return 0


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":  # pragma: no cover
    main()
