"""Payload construction for the API and CLI.

Both surfaces serialize the dicts built here through ``jsonio.dumps``, which
is what makes ``compute --format json`` byte-identical to the HTTP body for
the same query. Every numeric also gets a preformatted ``display`` string so
dashboards can render values verbatim without doing arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .alerts import AlertEvent
from .config import EngineConfig
from .engine import Engine, KpiValue
from .goals import GoalComparison
from .jsonio import format_ts
from .periods import DimensionFilter, Period, PeriodWindow
from .registry import KpiDefinition

N_A = "n/a"


def format_value(unit: str, value: Optional[float], currency: str) -> str:
    if value is None:
        return N_A
    if unit == "percent":
        return f"{value * 100:.1f}%"
    if unit == "ratio":
        return f"{value:.2f}"
    if unit == "days":
        return f"{value:.1f} d"
    if unit == "minutes":
        return f"{value:.0f} min"
    if unit == "score":
        return f"{value:.2f}"
    if unit == "money":
        return f"{value / 100:,.2f} {currency}"
    # count
    if float(value).is_integer():
        return str(int(value))
    return f"{value:.2f}"


def _opt_float(value: Optional[Fraction]) -> Optional[float]:
    return None if value is None else float(value)


def period_payload(period: Period, window: PeriodWindow) -> dict:
    return {
        "kind": period.kind,
        "year": period.year,
        "month": period.month,
        "label": period.label,
        "start_date": window.start_date.isoformat(),
        "end_date": window.end_date.isoformat(),
        "days": window.days,
    }


def filter_payload(filt: DimensionFilter) -> dict:
    return dict(filt.constraints())


def goal_payload(gc: GoalComparison, unit: str, currency: str) -> dict:
    return {
        "target": gc.target,
        "target_display": format_value(unit, gc.target, currency),
        "warn_band_pct": gc.warn_band_pct,
        "variance": gc.variance,
        "variance_display": format_value(unit, gc.variance, currency),
        "variance_pct": gc.variance_pct,
        "status": gc.status,
        "reason": gc.reason,
    }


def _value_fields(kv: KpiValue, defn: KpiDefinition, config: EngineConfig) -> dict:
    value = _opt_float(kv.value)
    return {
        "value": value,
        "display": format_value(defn.unit, value, config.currency),
        "undefined_reason": kv.reason,
        "numerator": _opt_float(kv.numerator),
        "denominator": _opt_float(kv.denominator),
    }


def kpi_value_payload(engine: Engine, kv: KpiValue) -> dict:
    defn = engine.registry.require(kv.kpi_id)
    config = engine.config
    payload = {
        "kpi_id": kv.kpi_id,
        "display_name": defn.display_name,
        "unit": defn.unit,
        "direction": defn.direction,
        "category": defn.category,
        "period": period_payload(kv.period, engine.window(kv.period)),
        "filter": filter_payload(kv.filter),
        **_value_fields(kv, defn, config),
    }
    if defn.unit == "money":
        payload["currency"] = config.currency
    gc = engine.goal_for(kv)
    payload["goal"] = goal_payload(gc, defn.unit, config.currency) if gc else None
    return payload


def drilldown_payload(
    engine: Engine, kpi_id: str, period: Period, dimension: str,
    total: KpiValue, rows: list[tuple[str, KpiValue]],
) -> dict:
    defn = engine.registry.require(kpi_id)
    return {
        "kpi_id": kpi_id,
        "display_name": defn.display_name,
        "unit": defn.unit,
        "dimension": dimension,
        "period": period_payload(period, engine.window(period)),
        "filter": filter_payload(total.filter),
        "additive": defn.additive,
        "total": _value_fields(total, defn, engine.config),
        "components": [
            {"key": key, **_value_fields(kv, defn, engine.config)}
            for key, kv in rows
        ],
    }


def series_payload(engine: Engine, kpi_id: str, points: list[KpiValue]) -> dict:
    defn = engine.registry.require(kpi_id)
    return {
        "kpi_id": kpi_id,
        "display_name": defn.display_name,
        "unit": defn.unit,
        "filter": filter_payload(points[0].filter) if points else {},
        "points": [
            {
                "period": kv.period.label,
                **_value_fields(kv, defn, engine.config),
            }
            for kv in points
        ],
    }


def definition_payload(defn: KpiDefinition) -> dict:
    return {
        "kpi_id": defn.kpi_id,
        "display_name": defn.display_name,
        "unit": defn.unit,
        "direction": defn.direction,
        "category": defn.category,
        "expression": defn.expression_text,
        "dims": sorted(defn.dims),
        "additive": defn.additive,
    }


def alert_payload(alert: AlertEvent, currency: str) -> dict:
    return {
        "alert_id": alert.alert_id,
        "rule_id": alert.rule_id,
        "kpi_id": alert.kpi_id,
        "kind": alert.kind,
        "severity": alert.severity,
        "state": alert.state,
        "period": alert.period,
        "first_period": alert.first_period,
        "observed_value": alert.observed_value,
        "observed_display": (
            N_A if alert.observed_value is None else f"{alert.observed_value:g}"
        ),
        "reason": alert.reason,
        "opened_at": format_ts(alert.opened_at),
        "updated_at": format_ts(alert.updated_at),
    }


def rank_payload(engine: Engine, period: Period, key: str, order: str, rows: list[dict]) -> dict:
    currency = engine.config.currency
    return {
        "key": key,
        "order": order,
        "period": period_payload(period, engine.window(period)),
        "rows": [
            {
                "drg_code": r["drg_code"],
                "revenue": r["revenue"],
                "revenue_display": format_value("money", float(r["revenue"]), currency),
                "margin": r["margin"],
                "margin_display": format_value("money", float(r["margin"]), currency),
                "encounters": r["encounters"],
            }
            for r in rows
        ],
    }


def provider_payload(engine: Engine, period: Period, data: dict) -> dict:
    currency = engine.config.currency
    doctors = []
    for row in data["doctors"]:
        revenue = float(row["revenue"])
        doctors.append({
            "doctor_id": row["doctor_id"],
            "revenue": revenue,
            "revenue_display": format_value("money", revenue, currency),
            "encounters": int(row["encounters"]),
            "revenue_per_encounter": _opt_float(row["revenue_per_encounter"]),
            "revenue_per_encounter_display": format_value(
                "money", _opt_float(row["revenue_per_encounter"]), currency
            ),
            "occupancy_share": _opt_float(row["occupancy_share"]),
            "occupancy_share_display": format_value(
                "percent", _opt_float(row["occupancy_share"]), currency
            ),
        })
    return {
        "period": period_payload(period, engine.window(period)),
        "doctors": doctors,
        "hospital": [kpi_value_payload(engine, kv) for kv in data["hospital"]],
    }
