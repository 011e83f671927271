"""
Command-line interface for assocmink.
Reports go to stdout as canonical JSON or aligned text; errors go to stderr.
"""

import argparse
import json
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .application import get_application
from .exceptions import AssocMinkError, InvariantViolationError
from .logging_config import get_logger, setup_from_env
from .metrics import metrics_collector
from .models import CommandConfig, Method
from .subsets import format_subset, mask_of

logger = get_logger("cli")

EPILOG = """
Examples:
  # Minkowski coefficients by every method, with an agreement flag per set
  assocmink decompose --n 4 --up 2

  # Tight right-hand sides from custom facet values
  assocmink zvalues --n 4 --up 2 --z-file facets.json

  # Right-hand sides sampled from the deformation cone
  assocmink zvalues --n 4 --up 2 --seed 7 --spec-out facets.json

  # Decompose a z table stored by zvalues --output
  assocmink decompose --n 4 --up 2 --z-table z.json

  # Exhaustive invariant suites
  assocmink verify --max-n 6

  # Vertices of the realisation, as a table
  assocmink vertices --n 3 --format table

  # The cyclohedron table whose decomposition fails
  assocmink cyclo-check --metrics-file metrics.prom
"""


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=["json", "table"], default="json", help="Output format"
    )
    common.add_argument("--output", help="Also store the JSON report at this path")
    common.add_argument(
        "--metrics-file", help="Write Prometheus metrics to this path after the run"
    )
    common.add_argument(
        "--log-level", help="Logging level (default: LOG_LEVEL or WARNING)"
    )

    partition = argparse.ArgumentParser(add_help=False)
    partition.add_argument("--n", type=int, required=True, help="Size of [n]")
    partition.add_argument(
        "--up",
        type=int,
        nargs="*",
        default=[],
        help="Up labels, each strictly between 1 and n",
    )

    spec = argparse.ArgumentParser(add_help=False)
    spec.add_argument("--z-file", help="JSON file with facet right-hand sides")
    spec.add_argument(
        "--seed", type=int, help="Sample right-hand sides from the deformation cone"
    )
    spec.add_argument(
        "--spec-out", help="Store the facet values used, in the --z-file format"
    )

    parser = argparse.ArgumentParser(
        prog="assocmink",
        description="Exact right-hand sides and Minkowski coefficients "
        "of associahedron realisations",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    parser.add_argument(
        "--version", action="version", version=f"assocmink {__version__}"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    decompose = sub.add_parser(
        "decompose",
        parents=[common, partition, spec],
        help="Minkowski coefficients y_I",
    )
    decompose.add_argument(
        "--method",
        choices=[m.value for m in Method],
        help="Single method (default: every applicable one)",
    )
    decompose.add_argument(
        "--z-table",
        help="Full z table to decompose, as written by zvalues --output",
    )
    sub.add_parser(
        "zvalues", parents=[common, partition, spec], help="Tight right-hand sides"
    )
    verify = sub.add_parser("verify", parents=[common], help="Invariant suites")
    verify.add_argument("--max-n", type=int, help="Largest n to check (default 6)")
    sub.add_parser(
        "vertices", parents=[common, partition, spec], help="Vertex enumeration"
    )
    sub.add_parser(
        "cyclo-check", parents=[common], help="Cyclohedron vertex counts"
    )
    sub.add_parser(
        "classify", parents=[common, partition], help="Frame case labels per subset"
    )
    sub.add_parser(
        "facets", parents=[common, partition], help="Facet diagonals and right sets"
    )
    return parser


def _command_config(args: argparse.Namespace) -> CommandConfig:
    method = getattr(args, "method", None)
    return CommandConfig(
        subcommand=args.subcommand,
        n=getattr(args, "n", 0),
        up=tuple(getattr(args, "up", ())),
        z_file=getattr(args, "z_file", None),
        method=Method(method) if method else None,
        format=args.format,
        seed=getattr(args, "seed", None),
        max_n=getattr(args, "max_n", None),
        output=args.output,
        metrics_file=args.metrics_file,
        z_table=getattr(args, "z_table", None),
        spec_out=getattr(args, "spec_out", None),
    )


# === Table rendering ===


def _set(elements: Sequence[int]) -> str:
    return format_subset(mask_of(elements))


def _diagonal(endpoints: Sequence[int]) -> str:
    return "{" + ",".join(str(e) for e in endpoints) + "}"


def _aligned(headers: List[str], rows: List[List[str]]) -> List[str]:
    widths = [
        max(len(cell) for cell in column) for column in zip(headers, *rows)
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return lines


def _header(report: Dict[str, Any]) -> str:
    ups = ",".join(str(u) for u in report["up"])
    return f"n={report['n']}, Up={{{ups}}}"


def render_table(subcommand: str, report: Dict[str, Any]) -> str:
    lines: List[str] = []
    if subcommand == "facets":
        lines.append(_header(report))
        lines += _aligned(
            ["diagonal", "R", "z"],
            [
                [_diagonal(f["diagonal"]), _set(f["right_set"]), f["z"]]
                for f in report["facets"]
            ],
        )
    elif subcommand == "zvalues":
        lines.append(f"{_header(report)}, total={report['total']}")
        lines += _aligned(
            ["I", "z"], [[_set(e["set"]), e["z"]] for e in report["entries"]]
        )
    elif subcommand == "decompose":
        methods = report["methods"]
        lines.append(f"{_header(report)}, spec={report['spec']}")
        lines += _aligned(
            ["I"] + methods + ["agree"],
            [
                [_set(e["set"])]
                + [e["y"][m] for m in methods]
                + ["yes" if e["agree"] else "NO"]
                for e in report["entries"]
            ],
        )
    elif subcommand == "classify":
        lines.append(_header(report))
        rows = []
        for e in report["entries"]:
            frame = e["frame"]
            rows.append(
                [
                    _set(e["set"]),
                    "({},{})".format(*e["type"]),
                    f"({frame['a']},{frame['b']})" if frame else "-",
                    f"{frame['gamma']},{frame['Gamma']}" if frame else "-",
                    e["case"] or "-",
                ]
            )
        lines += _aligned(["I", "type", "(a,b)", "gamma,Gamma", "case"], rows)
    elif subcommand == "vertices":
        lines.append(
            f"{_header(report)}: {report['vertex_count']} vertices "
            f"(Catalan {report['catalan']}), {report['facet_count']} facets"
        )
        lines += ["(" + ", ".join(v) + ")" for v in report["vertices"]]
    elif subcommand == "cyclo-check":
        lines.append(
            f"left={report['left']} right={report['right']} "
            f"prop_2_3_holds={str(report['prop_2_3_holds']).lower()}"
        )
        lines += _aligned(
            ["I", "y"], [[_set(e["set"]), e["y"]] for e in report["y"]]
        )
    elif subcommand == "verify":
        lines.append(
            f"max_n={report['max_n']} {'PASSED' if report['passed'] else 'FAILED'}"
        )
        lines += _aligned(
            ["suite", "checked", "failed", "first failure"],
            [
                [
                    s["name"],
                    str(s["checked"]),
                    str(s["failed"]),
                    s["first_failure"] or "",
                ]
                for s in report["suites"]
            ],
        )
    return "\n".join(lines)


def render(config: CommandConfig, report: Dict[str, Any]) -> str:
    if config.format == "table":
        return render_table(config.subcommand, report)
    return json.dumps(report, sort_keys=True, indent=2)


def _fail(error: str, message: str) -> int:
    logger.error("%s: %s", error, message)
    payload = {"error": error, "message": message}
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the process exit status."""
    args = _parser().parse_args(argv)
    try:
        setup_from_env(args.log_level)
    except AttributeError:
        return _fail("InvalidLogLevel", f"unknown log level {args.log_level!r}")

    config = _command_config(args)
    app = get_application()
    try:
        report, ok = app.run(config)
    except AssocMinkError as e:
        return _fail(type(e).__name__, str(e))
    finally:
        if config.metrics_file:
            metrics_collector.export(config.metrics_file)

    print(render(config, report))
    if not ok:
        violation = InvariantViolationError(
            config.subcommand, "failing checks are listed in the report"
        )
        return _fail(type(violation).__name__, str(violation))
    return 0
