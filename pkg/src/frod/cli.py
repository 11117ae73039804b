"""Command-line front end: detect, eval, example, serve.

Every subcommand is a thin wrapper over the library; nothing here computes
anything the public API cannot. Exit codes: 0 success, 1 usage error,
2 data error, 3 degenerate labels, 4 demo-check mismatch.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .dataset import Label, load_csv, normalize
from .detector import FrodConfig, detect, write_scores_csv, write_sidecar_json
from .errors import (
    DegenerateLabels,
    DegenerateTruth,
    EmptyNormals,
    FrodError,
    LabelError,
    LoadError,
    ParamError,
    SchemaError,
    SplitError,
)
from .evaluation import GridSpec, run_experiment
from .golden import first_failure, run_checks

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_LABELS = 3
EXIT_EXAMPLE = 4


class _Parser(argparse.ArgumentParser):
    # argparse defaults to exit code 2; the CLI contract reserves 2 for data errors
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frod", description="Semi-supervised outlier detection for mixed-attribute tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_detect = sub.add_parser("detect", help="score a partially labeled CSV")
    p_detect.add_argument("--input", required=True, help="input CSV (header row required)")
    p_detect.add_argument("--schema", default=None, help="optional schema file, one name:kind per line")
    p_detect.add_argument("--label-col", default="label", help="label column name (default: label)")
    p_detect.add_argument("--delta", type=float, default=1.0, help="fuzzy radius multiplier")
    p_detect.add_argument("--beta", type=float, default=1.0, help="outlier-class weight")
    p_detect.add_argument("--threshold", type=float, default=None, help="override the adaptive threshold")
    p_detect.add_argument("--output", default="scores.csv", help="score CSV path (JSON sidecar written next to it)")
    p_detect.set_defaults(func=cmd_detect)

    p_eval = sub.add_parser("eval", help="repeated stratified evaluation on a fully labeled CSV")
    p_eval.add_argument("--input", required=True)
    p_eval.add_argument("--schema", default=None)
    p_eval.add_argument("--label-col", default="label")
    p_eval.add_argument("--delta", type=float, default=1.0)
    p_eval.add_argument("--beta", type=float, default=1.0)
    p_eval.add_argument("--labeled-fraction", type=float, default=0.01)
    p_eval.add_argument("--seeds", default=None, help="comma-separated seeds (default: 0..9)")
    p_eval.add_argument("--grid", action="store_true", help="grid-search delta/beta on the labeled split")
    p_eval.add_argument("--output", default="report.json", help="report JSON path")
    p_eval.set_defaults(func=cmd_eval)

    p_example = sub.add_parser("example", help="run the built-in demo checks")
    p_example.add_argument("--perturb-radius", type=float, default=1.0, help=argparse.SUPPRESS)
    p_example.set_defaults(func=cmd_example)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def _sidecar_path(output: Path) -> Path:
    candidate = output.with_suffix(".json")
    if candidate == output:
        candidate = output.with_name(output.stem + ".meta.json")
    return candidate


def cmd_detect(args: argparse.Namespace) -> int:
    table = load_csv(args.input, label_column=args.label_col, schema=args.schema)
    table = normalize(table)
    labeled = [i for i, s in enumerate(table.labels) if s is not Label.UNLABELED]
    unlabeled = [i for i, s in enumerate(table.labels) if s is Label.UNLABELED]
    if not labeled:
        raise DegenerateLabels("input has no labeled objects")
    if not unlabeled:
        raise ParamError("input has no unlabeled objects to score")
    config = FrodConfig(delta=args.delta, beta=args.beta, threshold_override=args.threshold)
    result = detect(table, labeled, unlabeled, config)

    output = Path(args.output)
    write_scores_csv(result, output)
    write_sidecar_json(result, config, _sidecar_path(output))
    print(
        f"scored {len(unlabeled)} objects; threshold {result.threshold:.4f} "
        f"({result.threshold_source}); {int(result.predictions.sum())} flagged -> {output}"
    )
    return EXIT_OK


def _parse_seeds(raw: Optional[str]) -> Optional[list[int]]:
    if raw is None:
        return None
    try:
        return [int(tok) for tok in raw.split(",") if tok.strip() != ""]
    except ValueError:
        raise ParamError(f"--seeds must be comma-separated integers, got {raw!r}") from None


def cmd_eval(args: argparse.Namespace) -> int:
    table = load_csv(args.input, label_column=args.label_col, schema=args.schema)
    table = normalize(table)
    seeds = _parse_seeds(args.seeds)
    grid = GridSpec() if args.grid else None
    config = FrodConfig(delta=args.delta, beta=args.beta)
    report = run_experiment(
        table,
        labeled_fraction=args.labeled_fraction,
        seeds=seeds,
        grid=grid,
        config=config,
    )
    payload = report.to_dict()
    payload["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    with open(args.output, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(report.format_table())
    print(f"report -> {args.output}")
    return EXIT_OK


def cmd_example(args: argparse.Namespace) -> int:
    checks = run_checks(radius_scale=args.perturb_radius)
    for check in checks:
        print(check.describe())
    failed = first_failure(checks)
    if failed is not None:
        print(f"mismatch in {failed.name}", file=sys.stderr)
        return EXIT_EXAMPLE
    print(f"all {len(checks)} checks passed")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (LoadError, SchemaError, LabelError, SplitError, DegenerateTruth) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (DegenerateLabels, EmptyNormals) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LABELS
    except ParamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FrodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    raise SystemExit(main())
