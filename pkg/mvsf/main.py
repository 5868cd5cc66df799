"""Command-line front end: closed forms against numeric evaluation, as CSV or JSON.

Exit status is 0 when every row passes, 1 when some row fails and 2 on bad flags
or parameters outside a formula's domain.
"""

import argparse
import csv
import io
import json
import logging
import sys

from mvsf.config import settings
from mvsf.schemas.result import COLUMNS, ResultRow
from mvsf.services.checks import CHECKS, run_check
from mvsf.services.checks._base import CheckOptions
from mvsf.services.checks.kober import CASES

logger = logging.getLogger(__name__)


def _number(x: float) -> str:
    return format(x, ".12g")


def _cells(row: ResultRow) -> dict[str, str | float | bool]:
    data = row.model_dump(by_alias=True)
    return {k: (v if isinstance(v, (str, bool)) else float(_number(v))) for k, v in data.items()}


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    return _number(value)


def format_csv(rows: list[ResultRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        data = row.model_dump(by_alias=True)
        writer.writerow([_csv_cell(data[c]) for c in COLUMNS])
    return buf.getvalue()


def format_json(rows: list[ResultRow]) -> str:
    return json.dumps([_cells(r) for r in rows], indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=settings.SEED)
    common.add_argument("--samples", type=int, default=settings.SAMPLES)
    common.add_argument("--batch-size", type=int, default=settings.BATCH_SIZE)
    common.add_argument("--nodes", type=int, default=settings.QUAD_NODES, help="Gauss-Legendre nodes per axis")
    common.add_argument("--p", type=int, choices=(1, 2, 3))
    common.add_argument("--alpha", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--gamma", type=float)
    common.add_argument("--delta", type=float)
    common.add_argument("--kind", type=int, choices=(1, 2), help="Kober operator kind")
    common.add_argument("--case", choices=CASES, help="Kober special case")
    common.add_argument("--kmax", type=int, default=settings.K_MAX, help="series truncation degree")
    common.add_argument("--u", type=float, help="anchor U = u I (or scalar argument for hyp)")
    common.add_argument("--a-params", type=float, nargs="*")
    common.add_argument("--b-params", type=float, nargs="*")
    common.add_argument("--instances", type=int, default=20, help="random instances per Jacobian lemma")

    parser = argparse.ArgumentParser(prog="mvsf", description=__doc__.splitlines()[0])
    verbs = parser.add_subparsers(dest="verb", required=True)
    for verb in CHECKS:
        verbs.add_parser(verb, parents=[common])
    return parser


def _options(args: argparse.Namespace) -> CheckOptions:
    return CheckOptions(
        p=args.p,
        alpha=args.alpha,
        beta=args.beta,
        gamma=args.gamma,
        delta=args.delta,
        kind=args.kind,
        case=args.case,
        u=args.u,
        a_params=tuple(args.a_params) if args.a_params is not None else None,
        b_params=tuple(args.b_params) if args.b_params is not None else None,
        kmax=args.kmax,
        seed=args.seed,
        samples=args.samples,
        batch_size=args.batch_size,
        nodes=args.nodes,
        instances=args.instances,
    )


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=settings.LOG_LEVEL)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        opts = _options(args)
        opts.mc()
        opts.quad()
        rows = run_check(args.verb, opts)
    except ValueError as e:
        logger.error(f"{args.verb}: {e}")
        return 2

    out = format_json(rows) if args.format == "json" else format_csv(rows)
    sys.stdout.write(out)
    return 0 if all(r.passed for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
