"""Command-line front end: ingestion, estimation, fitting, simulation,
capacity analysis.

Outputs are plot-ready CSV/JSON; diagnostics go to stderr. Exit codes:
0 success, 1 flag/validation error, 2 data error.
"""

import argparse
import csv
import json
import sys
from datetime import date

import numpy as np

from . import __version__
from .backend import active_backend
from .conditional import (
    CovariateQuery,
    KernelConfig,
    beran_estimate,
    npmcm_conditional_estimate,
)
from .curves import SurvivalCurve
from .linelist import Endpoint, derive_endpoint, parse_linelist, summarize
from .observations import OBSERVATION_COLUMNS, read_observations_csv, write_observations_csv
from .simulate import (
    SimulationConfig,
    capacity_excess,
    compare_conditional,
    simulate_outbreak,
    write_capacity_csv,
)
from .survival import empirical_estimate, km_estimate, km_estimate_reduced, npmcm_estimate
from .weibull import fit_weibull

ESTIMATORS = ("km", "km-reduced", "empirical", "npmcm", "beran", "npmcm-cond")
_CONDITIONAL = ("beran", "npmcm-cond")


class UsageError(Exception):
    """Flag combination problems detected after argparse (exit code 1)."""


class _Parser(argparse.ArgumentParser):
    """argparse with exit code 1 for flag/validation errors (2 is reserved
    for data errors)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_date(text: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid date {text!r}: {exc}") from None


def _parse_range(text: str) -> range:
    try:
        low, high = text.split(":")
        out = range(int(low), int(high) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LOW:HIGH, got {text!r}") from None
    if len(out) == 0:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="loscure", description=__doc__)
    parser.add_argument("--version", action="version", version=f"loscure {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_ingest = sub.add_parser("ingest",
                              help="derive an endpoint observation set from a line list")
    p_ingest.add_argument("--input", required=True, help="line-list CSV")
    p_ingest.add_argument("--endpoint", required=True, choices=[e.value for e in Endpoint])
    p_ingest.add_argument("--study-end", type=_parse_date, default=None,
                          help="ISO date; defaults to the latest date in the file")
    p_ingest.add_argument("--output", required=True, help="observations CSV to write")
    p_ingest.add_argument("--summary", default=None, help="optional summary JSON to write")
    p_ingest.set_defaults(func=cmd_ingest)

    p_est = sub.add_parser("estimate",
                           help="estimate a survival curve from a line list or observations CSV")
    p_est.add_argument("--input", required=True,
                       help="line-list CSV or a derived observations CSV (detected by header)")
    p_est.add_argument("--estimator", required=True, choices=ESTIMATORS)
    p_est.add_argument("--endpoint", choices=[e.value for e in Endpoint], default=None,
                       help="required when the input is a line list")
    p_est.add_argument("--study-end", type=_parse_date, default=None)
    p_est.add_argument("--age", type=float, default=None, help="query age for conditional estimators")
    p_est.add_argument("--sex", choices=("male", "female", "any"), default="any")
    p_est.add_argument("--bandwidth", default="auto", help="years, or 'auto' for the rule of thumb")
    p_est.add_argument("--kernel", choices=("epanechnikov", "gaussian"), default="epanechnikov")
    p_est.add_argument("--format", choices=("csv", "json"), default="csv")
    p_est.add_argument("--output", default="-", help="output path, '-' for stdout")
    p_est.set_defaults(func=cmd_estimate)

    p_fit = sub.add_parser("weibull",
                           help="fit a Weibull survival law to a curve CSV")
    p_fit.add_argument("--input", required=True, help="curve CSV (t,survival)")
    p_fit.add_argument("--output", default="-", help="fit report JSON, '-' for stdout")
    p_fit.set_defaults(func=cmd_weibull)

    p_sim = sub.add_parser("simulate",
                           help="run the seeded outbreak simulation")
    p_sim.add_argument("--config", required=True, help="simulation config JSON")
    p_sim.add_argument("--seed", type=int, default=None, help="override the config seed")
    p_sim.add_argument("--output-dir", required=True)
    p_sim.add_argument("--workers", type=int, default=1)
    p_sim.set_defaults(func=cmd_simulate)

    p_cap = sub.add_parser("capacity",
                           help="capacity exceedance table from an occupancy CSV")
    p_cap.add_argument("--occupancy", required=True, help="occupancy.csv from 'simulate'")
    p_cap.add_argument("--hw-range", type=_parse_range, default=range(15, 91), metavar="LOW:HIGH")
    p_cap.add_argument("--icu-range", type=_parse_range, default=range(5, 16), metavar="LOW:HIGH")
    p_cap.add_argument("--output", default="-")
    p_cap.set_defaults(func=cmd_capacity)

    p_cmp = sub.add_parser("compare",
                           help="paired unconditional-vs-conditional simulation")
    p_cmp.add_argument("--config-unconditional", required=True)
    p_cmp.add_argument("--config-conditional", required=True)
    p_cmp.add_argument("--seed", type=int, default=None, help="override both config seeds")
    p_cmp.add_argument("--output-dir", required=True)
    p_cmp.add_argument("--workers", type=int, default=1)
    p_cmp.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"loscure {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"loscure {args.command}: error: {exc}", file=sys.stderr)
        return 2


def _load_records(path: str, study_end: date | None):
    result = parse_linelist(path)
    for issue in result.rejected:
        print(f"loscure: {path}: {issue}", file=sys.stderr)
    if study_end is None:
        candidates = [
            getattr(record, column)
            for record in result.records
            for column in (
                "date_diagnosis",
                "date_hw_admission",
                "date_icu_admission",
                "date_icu_exit",
                "date_discharge",
                "date_death",
            )
            if getattr(record, column) is not None
        ]
        if not candidates:
            raise ValueError("no dated records; supply --study-end")
        study_end = max(candidates)
        print(f"loscure: using study end {study_end.isoformat()} (latest date on file)", file=sys.stderr)
    return result.records, study_end


def cmd_ingest(args) -> int:
    records, study_end = _load_records(args.input, args.study_end)
    dataset = derive_endpoint(records, Endpoint(args.endpoint), study_end)
    write_observations_csv(dataset.observations, args.output)
    if args.summary:
        summary = summarize(records, study_end)
        with open(args.summary, "w") as handle:
            json.dump(summary.to_json_dict(), handle, indent=2)
            handle.write("\n")
    print(
        f"loscure: {args.endpoint}: {len(dataset.observations)} observations "
        f"({dataset.n_skipped} skipped) -> {args.output}",
        file=sys.stderr,
    )
    return 0


def _read_estimation_input(args) -> list:
    with open(args.input, newline="") as handle:
        header = next(csv.reader(handle), None)
    if header is not None and set(OBSERVATION_COLUMNS) <= set(c.strip() for c in header):
        return read_observations_csv(args.input)
    if args.endpoint is None:
        raise UsageError("--endpoint is required when the input is a line list")
    records, study_end = _load_records(args.input, args.study_end)
    return list(derive_endpoint(records, Endpoint(args.endpoint), study_end).observations)


def cmd_estimate(args) -> int:
    observations = _read_estimation_input(args)
    if args.estimator in _CONDITIONAL:
        if args.age is None:
            raise UsageError(f"--age is required for the {args.estimator} estimator")
        query = CovariateQuery(age=args.age, sex=args.sex)
        bandwidth = args.bandwidth if args.bandwidth == "auto" else float(args.bandwidth)
        config = KernelConfig(kernel=args.kernel, bandwidth=bandwidth)
        if args.estimator == "beran":
            curve = beran_estimate(observations, query, config)
        else:
            curve = npmcm_conditional_estimate(observations, query, config)
    else:
        curve = {
            "km": km_estimate,
            "km-reduced": km_estimate_reduced,
            "empirical": empirical_estimate,
            "npmcm": npmcm_estimate,
        }[args.estimator](observations)
    _write_curve(curve, args.output, args.format)
    return 0


def _write_curve(curve: SurvivalCurve, output: str, fmt: str) -> None:
    if fmt == "json":
        text = json.dumps(curve.to_dict(), indent=2) + "\n"
        if output == "-":
            sys.stdout.write(text)
        else:
            with open(output, "w") as handle:
                handle.write(text)
    else:
        if output == "-":
            curve.write_csv(sys.stdout)
        else:
            curve.write_csv(output)


def cmd_weibull(args) -> int:
    curve = SurvivalCurve.read_csv(args.input)
    report = fit_weibull(curve)
    if args.output == "-":
        sys.stdout.write(report.to_json() + "\n")
    else:
        report.to_json(args.output)
    if not report.converged:
        print("loscure weibull: warning: fit did not converge", file=sys.stderr)
    return 0


def cmd_simulate(args) -> int:
    import os

    config = SimulationConfig.from_file(args.config)
    if args.seed is not None:
        config = config.replace(seed=args.seed)
    series = simulate_outbreak(config, workers=args.workers)
    os.makedirs(args.output_dir, exist_ok=True)
    series.write_occupancy_csv(os.path.join(args.output_dir, "occupancy.csv"))
    write_capacity_csv(capacity_excess(series), os.path.join(args.output_dir, "capacity.csv"))
    series.write_metadata(os.path.join(args.output_dir, "metadata.json"))
    print(
        f"loscure simulate: {series.n_replications} replications of {series.n_infected} "
        f"individuals on the {active_backend()} backend -> {args.output_dir}",
        file=sys.stderr,
    )
    return 0


def cmd_capacity(args) -> int:
    days, mean_hw, mean_icu = _read_occupancy(args.occupancy)
    rows = []
    from .simulate import CapacityRow

    rows += [CapacityRow("hw", int(c), int(np.count_nonzero(mean_hw > c))) for c in args.hw_range]
    rows += [CapacityRow("icu", int(c), int(np.count_nonzero(mean_icu > c))) for c in args.icu_range]
    if args.output == "-":
        write_capacity_csv(rows, sys.stdout)
    else:
        write_capacity_csv(rows, args.output)
    return 0


def _read_occupancy(path: str):
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        needed = {"day", "mean_hw", "mean_icu"}
        if not needed <= set(reader.fieldnames or ()):
            raise ValueError(f"occupancy CSV must carry columns {sorted(needed)}")
        days, hw, icu = [], [], []
        for row in reader:
            days.append(int(row["day"]))
            hw.append(float(row["mean_hw"]))
            icu.append(float(row["mean_icu"]))
    return np.array(days), np.array(hw), np.array(icu)


def cmd_compare(args) -> int:
    import os

    config_a = SimulationConfig.from_file(args.config_unconditional)
    config_b = SimulationConfig.from_file(args.config_conditional)
    if args.seed is not None:
        config_a = config_a.replace(seed=args.seed)
        config_b = config_b.replace(seed=args.seed)
    result = compare_conditional(config_a, config_b, workers=args.workers)
    os.makedirs(args.output_dir, exist_ok=True)
    result.unconditional.write_occupancy_csv(os.path.join(args.output_dir, "occupancy_unconditional.csv"))
    result.conditional.write_occupancy_csv(os.path.join(args.output_dir, "occupancy_conditional.csv"))
    tables = result.capacity_tables()
    write_capacity_csv(tables["unconditional"], os.path.join(args.output_dir, "capacity_unconditional.csv"))
    write_capacity_csv(tables["conditional"], os.path.join(args.output_dir, "capacity_conditional.csv"))
    diff = result.mean_difference
    with open(os.path.join(args.output_dir, "divergence.csv"), "w", newline="") as handle:
        handle.write("day,diff_hw,diff_icu,diff_dead,diff_discharged\n")
        for d in range(diff.shape[0]):
            handle.write(f"{d}," + ",".join(repr(float(v)) for v in diff[d]) + "\n")
    payload = {
        "summary": result.summary(),
        "unconditional": result.unconditional.metadata(),
        "conditional": result.conditional.metadata(),
    }
    with open(os.path.join(args.output_dir, "comparison.json"), "w") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
