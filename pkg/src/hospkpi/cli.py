"""Operator command line: ingest files, generate synthetic data, compute and
print KPI reports, evaluate alerts, run the API service.

Exit codes: 0 success, 1 data errors, 2 usage errors. ``--format json``
prints exactly the bytes the API would return for the same query (no
trailing newline), which keeps the two surfaces interchangeable.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import jsonio
from .alerts import AlertBook, load_rules
from .api import AppState, serve
from .config import CliConfig, EngineConfig, load_cli_config
from .engine import DrilldownError, Engine
from .goals import load_goals
from .ingest import parse_records, serialize_batch
from .periods import DimensionFilter, PeriodError, parse_period
from .present import alert_payload, drilldown_payload, kpi_value_payload
from .registry import Registry, RegistryError, default_registry, load_registry
from .store import EventStore
from .synth import SynthConfig, generate_synthetic
from .views import VIEWS, build_view

USAGE_ERROR = 2
DATA_ERROR = 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hospkpi",
        description="Hospital KPI analytics: ingest records, compute the KPI catalog, serve dashboards.",
    )
    parser.add_argument("--data-dir", default="./data", help="store directory (default ./data)")
    parser.add_argument("--registry", help="KPI definitions file (.kpi); default: built-in catalog")
    parser.add_argument("--goals", help="goals file")
    parser.add_argument("--rules", help="alert rules file")
    parser.add_argument("--tz", help="reporting time zone (default UTC)")
    parser.add_argument("--fiscal-start", type=int, help="fiscal year start month 1-12 (default 1)")

    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="parse and ingest a record file")
    p_ingest.add_argument("file")
    p_ingest.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p_ingest.add_argument("--type", dest="record_type", help="record type tag (csv only)")

    p_gen = sub.add_parser("gen", help="generate deterministic synthetic data")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--months", type=int, required=True)
    p_gen.add_argument("--mean", type=float, default=8.0, help="daily admissions mean")
    p_gen.add_argument("--out", help="write JSONL here instead of stdout")
    p_gen.add_argument("--ingest", action="store_true", help="also ingest into the data dir")

    p_compute = sub.add_parser("compute", help="compute KPI values")
    p_compute.add_argument("--period", required=True, help="YYYY-MM")
    p_compute.add_argument("--scope", choices=("month", "ytd"), default="month")
    p_compute.add_argument("--kpi", action="append", default=[], help="kpi id (repeatable; default all)")
    p_compute.add_argument("--drilldown", help="dimension to drill down by (single --kpi only)")
    p_compute.add_argument("--department")
    p_compute.add_argument("--doctor")
    p_compute.add_argument("--location")
    p_compute.add_argument("--drg")
    p_compute.add_argument("--organ")
    p_compute.add_argument("--format", choices=("table", "json", "csv"), default="table")

    p_report = sub.add_parser("report", help="print one dashboard view")
    p_report.add_argument("--view", choices=VIEWS, required=True)
    p_report.add_argument("--period", required=True)
    p_report.add_argument("--format", choices=("table", "json"), default="table")

    p_alerts = sub.add_parser("alerts", help="evaluate alert rules for a period")
    p_alerts.add_argument("--period", required=True)
    p_alerts.add_argument("--format", choices=("table", "json"), default="table")

    p_serve = sub.add_parser("serve", help="run the HTTP API")
    p_serve.add_argument("--bind", default="127.0.0.1:8000")

    return parser


class _Env:
    def __init__(self, args):
        overrides = {
            "registry": args.registry,
            "goals": args.goals,
            "rules": args.rules,
            "reporting_tz": args.tz,
            "fiscal_year_start_month": args.fiscal_start,
        }
        self.cfg: CliConfig = load_cli_config(Path(args.data_dir), overrides)
        self.cfg.data_dir.mkdir(parents=True, exist_ok=True)

    @property
    def engine_config(self) -> EngineConfig:
        return self.cfg.engine

    def store(self) -> EventStore:
        return EventStore(self.cfg.data_dir)

    def registry(self) -> Registry:
        path = self.cfg.registry_path
        if path is None:
            candidate = self.cfg.data_dir / "registry.kpi"
            path = candidate if candidate.exists() else None
        return load_registry(path) if path else default_registry()

    def goals(self, registry):
        path = self.cfg.goals_path
        if path is None:
            candidate = self.cfg.data_dir / "goals.txt"
            path = candidate if candidate.exists() else None
        return load_goals(path, registry) if path else None

    def rules(self, registry):
        path = self.cfg.rules_path
        if path is None:
            candidate = self.cfg.data_dir / "rules.txt"
            path = candidate if candidate.exists() else None
        return load_rules(path, registry) if path else []

    def engine(self) -> Engine:
        registry = self.registry()
        return Engine(self.store().snapshot(), registry, self.engine_config, self.goals(registry))


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return DATA_ERROR


def _parse_filter(args) -> DimensionFilter:
    return DimensionFilter(
        department=args.department, doctor_id=args.doctor, location=args.location,
        drg_code=args.drg, organ=args.organ,
    )


def _cmd_ingest(env: _Env, args) -> int:
    path = Path(args.file)
    if not path.exists():
        return _fail(f"file not found: {path}")
    if args.format == "csv" and not args.record_type:
        print("error: --type is required for csv input", file=sys.stderr)
        return USAGE_ERROR
    try:
        with open(path, "rb") as fh:
            batch, errors = parse_records(fh, args.format, args.record_type, source_name=str(path))
    except ValueError as exc:
        return _fail(str(exc))
    store = env.store()
    summary = store.ingest(batch)
    for err in errors:
        print(f"{path}:{err.line}: {err.reason}", file=sys.stderr)
    print(
        f"accepted={summary.accepted} rejected_duplicates={summary.rejected_duplicates} "
        f"rejected_invalid={summary.rejected_invalid} parse_errors={len(errors)}"
    )
    for detail in summary.invalid_details:
        print(f"invalid: {detail}", file=sys.stderr)
    return DATA_ERROR if errors or summary.rejected_invalid else 0


def _cmd_gen(env: _Env, args) -> int:
    try:
        config = SynthConfig(seed=args.seed, months=args.months, daily_admissions_mean=args.mean)
    except ValueError as exc:
        return _fail(str(exc))
    batch = generate_synthetic(config)
    text = serialize_batch(batch)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {len(batch.records)} records to {args.out}")
    if args.ingest:
        summary = env.store().ingest(batch)
        print(
            f"accepted={summary.accepted} rejected_duplicates={summary.rejected_duplicates} "
            f"rejected_invalid={summary.rejected_invalid}"
        )
    if not args.out and not args.ingest:
        sys.stdout.write(text)
    return 0


def _cmd_compute(env: _Env, args) -> int:
    try:
        period = parse_period(args.period, args.scope)
    except PeriodError as exc:
        return _fail(str(exc))
    engine = env.engine()
    filt = _parse_filter(args)
    kpi_ids = args.kpi or engine.registry.ids()
    for kpi_id in kpi_ids:
        if engine.registry.get(kpi_id) is None:
            return _fail(f"unknown kpi {kpi_id!r}")
    if args.drilldown and len(kpi_ids) != 1:
        print("error: --drilldown requires exactly one --kpi", file=sys.stderr)
        return USAGE_ERROR

    if args.drilldown:
        try:
            total, rows = engine.drilldown(kpi_ids[0], period, args.drilldown, filt)
        except DrilldownError as exc:
            return _fail(str(exc))
        payload = drilldown_payload(engine, kpi_ids[0], period, args.drilldown, total, rows)
        if args.format == "json":
            sys.stdout.write(jsonio.dumps(payload))
            return 0
        print(f"{payload['display_name']} by {args.drilldown} ({period.label} {period.kind})")
        print(f"{'key':30s} {'value':>18s}")
        for row in payload["components"]:
            print(f"{row['key']:30s} {_render_cell(row):>18s}")
        print(f"{'TOTAL':30s} {_render_cell(payload['total']):>18s}")
        return 0

    payloads = [kpi_value_payload(engine, engine.kpi_value(k, period, filt)) for k in kpi_ids]
    if args.format == "json":
        body = payloads[0] if len(payloads) == 1 and args.kpi else payloads
        sys.stdout.write(jsonio.dumps(body))
        return 0
    if args.format == "csv":
        print("kpi_id,period,scope,value,numerator,denominator,undefined_reason")
        for p in payloads:
            print(",".join(str(x) if x is not None else "" for x in (
                p["kpi_id"], p["period"]["label"], p["period"]["kind"], p["value"],
                p["numerator"], p["denominator"], p["undefined_reason"],
            )))
        return 0
    print(f"{'kpi':34s} {'value':>20s}  {'goal':10s}")
    for p in payloads:
        goal = p["goal"]["status"] if p["goal"] else "-"
        print(f"{p['kpi_id']:34s} {_render_cell(p):>20s}  {goal:10s}")
    return 0


def _render_cell(p: dict) -> str:
    if p["value"] is None:
        return f"n/a ({p['undefined_reason']})"
    return p["display"]


def _cmd_report(env: _Env, args) -> int:
    try:
        period = parse_period(args.period)
    except PeriodError as exc:
        return _fail(str(exc))
    engine = env.engine()
    book = AlertBook(env.cfg.data_dir / "alerts.json")
    payload = build_view(engine, args.view, period, book.open_alerts())
    if args.format == "json":
        sys.stdout.write(jsonio.dumps(payload))
        return 0
    print(f"== {payload['title']} ({period.label}) ==")
    print(f"{'kpi':34s} {'month':>18s} {'ytd':>18s}  {'goal':10s}")
    for tile in payload["tiles"]:
        goal = tile["goal"]["status"] if tile["goal"] else "-"
        print(
            f"{tile['kpi_id']:34s} {_render_cell(tile['month']):>18s} "
            f"{_render_cell(tile['ytd']):>18s}  {goal:10s}"
        )
    if payload["alerts"]:
        print("\nopen alerts:")
        for a in payload["alerts"]:
            print(f"  [{a['severity']}] {a['kpi_id']} {a['state']}: {a['reason']}")
    return 0


def _cmd_alerts(env: _Env, args) -> int:
    try:
        period = parse_period(args.period)
    except PeriodError as exc:
        return _fail(str(exc))
    registry = env.registry()
    try:
        rules = env.rules(registry)
    except ValueError as exc:
        return _fail(str(exc))
    if not rules:
        print("no alert rules configured", file=sys.stderr)
        return 0
    engine = env.engine()
    book = AlertBook(env.cfg.data_dir / "alerts.json")
    values = {r.kpi_id: engine.kpi_value(r.kpi_id, period) for r in rules}
    touched = book.evaluate(rules, values, period)
    if args.format == "json":
        sys.stdout.write(jsonio.dumps([alert_payload(a, env.engine_config.currency) for a in touched]))
        return 0
    if not touched:
        print("no alerts")
        return 0
    for a in touched:
        print(f"[{a.severity}] {a.alert_id} {a.kpi_id} state={a.state} observed={a.observed_value} ({a.reason})")
    return 0


def _cmd_serve(env: _Env, args) -> int:
    host, _, port = args.bind.rpartition(":")
    if not host or not port.isdigit():
        print(f"error: --bind expects host:port, got {args.bind!r}", file=sys.stderr)
        return USAGE_ERROR
    registry = env.registry()
    state = AppState(
        store=env.store(),
        registry=registry,
        goals=env.goals(registry),
        rules=env.rules(registry),
        config=env.engine_config,
        alert_book=AlertBook(env.cfg.data_dir / "alerts.json"),
    )
    serve(state, host, int(port))
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "gen": _cmd_gen,
    "compute": _cmd_compute,
    "report": _cmd_report,
    "alerts": _cmd_alerts,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        env = _Env(args)
    except (OSError, ValueError, RegistryError) as exc:
        return _fail(str(exc))
    try:
        return _COMMANDS[args.command](env, args)
    except (RegistryError, ValueError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
