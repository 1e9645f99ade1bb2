"""
Command-line entry point.

    qentropy ingest  --prices prices.csv
    qentropy oracle  --prices prices.csv --window 5 --format csv
    qentropy encode  --method gasp --target-fidelity 0.9 --window-index 0 --out circuit.json
    qentropy vqsvd   --method exact --layers 3 --iterations 2000 --seed 3
    qentropy sweep   --plan plan.yaml --out results/ --workers 4
    qentropy report  --records results/ --out plots/

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 optimization failure or a single run that missed its target fidelity.
"""

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import pandas as pd

from .config.loader import ConfigLoader
from .config.schemas.experiment_schema import DEFAULT_TARGET_FIDELITIES, ExperimentPlan, Method
from .config.schemas.optimizer_schema import AaeConfig, GaConfig, SpsaConfig
from .core.aae import train_aae
from .core.gasp import synthesize
from .core.market.prices import PriceTable, bundled_prices_path, read_prices_csv
from .core.market.returns import build_return_panel, correlation_matrix, data_statevector
from .core.market.spectrum import svd_entropy_oracle
from .harness.cells import CellJob, run_cell
from .harness.records import emit_plot_data, read_records, summarize
from .harness.runner import run_plan
from .harness.windows import Window, enumerate_windows, window_label
from .utils.errors import ArgumentError, DataError, OptimizationError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NOT_CONVERGED = 3


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors map to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise ArgumentError(message)


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


# -- output helpers -----------------------------------------------------------

def _write_text(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"Cannot write {path}: {exc}") from exc


def _emit_rows(rows: List[Dict], fmt: str, out: Optional[str], extra: Optional[Dict] = None) -> None:
    if fmt == "json":
        payload = {'rows': rows, **(extra or {})}
        _write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", out)
    else:
        _write_text(pd.DataFrame(rows).to_csv(index=False), out)


# -- shared loading -----------------------------------------------------------

def _load_table(args) -> PriceTable:
    return read_prices_csv(args.prices or bundled_prices_path())


def _select_window(table: PriceTable, args) -> Window:
    windows = enumerate_windows(table, args.window)
    if not 0 <= args.window_index < len(windows):
        raise ArgumentError(
            f"--window-index {args.window_index} outside 0..{len(windows) - 1}"
        )
    return windows[args.window_index]


# -- subcommands --------------------------------------------------------------

def cmd_ingest(args) -> int:
    table = _load_table(args)
    n_windows = max(0, table.n_months - args.window + 1)
    row = {
        'symbols': " ".join(table.symbols),
        'months': table.n_months,
        'first_date': table.dates[0].isoformat() if table.dates else "",
        'last_date': table.dates[-1].isoformat() if table.dates else "",
        'windows': n_windows,
    }
    _emit_rows([row], args.format, args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    table = _load_table(args)
    rows = []
    for window in enumerate_windows(table, args.window):
        sub_table = table.window(window)
        panel = build_return_panel(sub_table.all_series(), sub_table.dates)
        report = svd_entropy_oracle(correlation_matrix(panel))
        row = {'window_label': window_label(window), 'entropy': report.entropy}
        for i, value in enumerate(report.eigenvalues):
            row[f'lambda_{i}'] = float(value)
        rows.append(row)
    _emit_rows(rows, args.format, args.out)
    return EXIT_OK


def cmd_encode(args) -> int:
    table = _load_table(args)
    window = _select_window(table, args)
    sub_table = table.window(window)
    target = data_statevector(build_return_panel(sub_table.all_series(), sub_table.dates))

    if args.method == Method.GASP.value:
        overrides = {'target_fidelity': args.target_fidelity, 'seed': args.seed}
        if args.population is not None:
            overrides['population_size'] = args.population
        if args.generations is not None:
            overrides['max_generations'] = args.generations
        result = synthesize(target, GaConfig(**overrides))
        converged = result.converged
    elif args.method == Method.AAE.value:
        overrides = {'seed': args.seed}
        if args.layers is not None:
            overrides['layers'] = args.layers
        if args.iterations is not None:
            overrides['iterations'] = args.iterations
        result = train_aae(target, AaeConfig(**overrides))
        converged = True
    else:
        raise ArgumentError("encode supports --method gasp or aae")

    payload = result.to_dict(include_wall_time=args.timing)
    payload['window_label'] = window_label(window)
    _write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    if not converged:
        logger.warning("Target fidelity %.2f not reached", args.target_fidelity)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_vqsvd(args) -> int:
    table = _load_table(args)
    window = _select_window(table, args)
    method = Method(args.method)
    solver = {}
    if args.layers is not None:
        solver['vqsvd_layers'] = args.layers
    if args.restarts is not None:
        solver['vqsvd_restarts'] = args.restarts
    plan = ExperimentPlan(
        input_path=str(args.prices or bundled_prices_path()),
        window_length_months=args.window,
        methods=[method],
        gasp_target_fidelities=(args.target_fidelity,),
        seeds=[args.seed],
        spsa=SpsaConfig(iterations=args.iterations if args.iterations is not None else 2000),
        shots=args.shots,
        record_wall_time=args.timing,
        **solver,
    )
    job = CellJob(
        window_index=args.window_index,
        window_label=window_label(window),
        table=table.window(window),
        method=method,
        target_fidelity=args.target_fidelity if method is Method.GASP else None,
        fidelity_index=0,
        seed=args.seed,
        plan=plan,
    )
    outcome = run_cell(job)
    if outcome.skipped is not None:
        if outcome.skipped.reason.startswith("DegenerateExtractionError"):
            raise OptimizationError(outcome.skipped.reason)
        raise DataError(outcome.skipped.reason)
    record = outcome.record
    extra = {'loss_trace': outcome.loss_trace, 'config': plan.to_dict()}
    _emit_rows([record.to_row()], args.format, args.out, extra=extra)
    if not record.converged:
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _plan_from_args(args) -> ExperimentPlan:
    if args.plan:
        plan = ConfigLoader.load_experiment_plan(args.plan)
    else:
        plan = ExperimentPlan(input_path=str(args.prices or bundled_prices_path()))

    overrides = {}
    if args.plan and args.prices:
        overrides['input_path'] = str(args.prices)
    if args.out:
        overrides['output_path'] = args.out
    if args.window is not None:
        overrides['window_length_months'] = args.window
    if args.method:
        overrides['methods'] = [Method(m) for m in args.method]
    if args.target_fidelities:
        overrides['gasp_target_fidelities'] = tuple(args.target_fidelities)
    if args.seeds:
        overrides['seeds'] = args.seeds
    if args.layers:
        overrides['vqsvd_layers'] = args.layers
    if args.restarts:
        overrides['vqsvd_restarts'] = args.restarts
    if args.iterations is not None:
        overrides['spsa'] = replace(plan.spsa, iterations=args.iterations)
    if args.shots is not None:
        overrides['shots'] = args.shots
    if args.workers is not None:
        overrides['workers'] = args.workers
    if args.timing:
        overrides['record_wall_time'] = True
    if args.plot_data:
        overrides['plot_data'] = True
    return replace(plan, **overrides)


def cmd_sweep(args) -> int:
    plan = _plan_from_args(args)
    result = run_plan(plan)
    result.emit(plan.output_path, plan=plan, plot_data=plan.plot_data)
    print(f"{len(result.records)} records, {len(result.skipped)} skipped -> {plan.output_path}")
    return EXIT_OK


def cmd_report(args) -> int:
    records = read_records(args.records)
    out = args.out or args.records
    written = emit_plot_data(records, summarize(records), out)
    for path in written:
        print(path)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qentropy", description="SVD entropy of stock data on a simulated quantum computer")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    common = _Parser(add_help=False)
    common.add_argument("--prices", help="price CSV (default: bundled XOM/WMT/PG/MSFT data)")
    common.add_argument("--out", help="output file or directory (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--timing", action="store_true", help="record wall-clock times")

    single = _Parser(add_help=False)
    single.add_argument("--window", type=int, default=5, help="window length in months")
    single.add_argument("--window-index", type=int, default=0)
    single.add_argument("--target-fidelity", type=float, default=0.90)
    single.add_argument("--layers", type=int)
    single.add_argument("--iterations", type=int)
    single.add_argument("--seed", type=int, default=0)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[common], help="validate a price CSV")
    p.add_argument("--window", type=int, default=5)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("oracle", parents=[common], help="classical entropy per window")
    p.add_argument("--window", type=int, default=5)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("encode", parents=[common, single], help="synthesize a preparation circuit")
    p.add_argument("--method", choices=("gasp", "aae"), default="gasp")
    p.add_argument("--population", type=int)
    p.add_argument("--generations", type=int)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("vqsvd", parents=[common, single], help="one VQSVD run on one window")
    p.add_argument("--method", choices=[m.value for m in Method], default="exact")
    p.add_argument("--shots", type=int)
    p.add_argument("--restarts", type=int, help="SPSA restarts, best kept")
    p.set_defaults(func=cmd_vqsvd)

    p = sub.add_parser("sweep", parents=[common], help="run a full experiment plan")
    p.add_argument("--plan", help="YAML or JSON experiment plan")
    p.add_argument("--window", type=int)
    p.add_argument("--method", action="append", choices=[m.value for m in Method],
                   help="repeat for several methods")
    p.add_argument("--target-fidelities", type=_float_list,
                   help=f"comma list (default {','.join(map(str, DEFAULT_TARGET_FIDELITIES))})")
    p.add_argument("--seeds", type=_int_list, help="comma list of seeds")
    p.add_argument("--layers", type=int)
    p.add_argument("--iterations", type=int)
    p.add_argument("--shots", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--restarts", type=int, help="SPSA restarts, best kept")
    p.add_argument("--plot-data", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="emit plot data from a results directory")
    p.add_argument("--records", required=True, help="results directory or records.csv")
    p.add_argument("--out", help="output directory (default: alongside records)")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (ArgumentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OptimizationError as exc:
        print(f"optimization failed: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED


if __name__ == "__main__":
    sys.exit(main())
