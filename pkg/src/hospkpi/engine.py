"""KPI computation over store snapshots: values, YTD rollups, drilldowns,
goal comparison, DRG ranking, and per-provider productivity.

Everything here is a pure function of an immutable snapshot, so results are
identical regardless of ingestion order, and measure contexts are cached per
(period, filter) to make drilldowns cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import dsl
from .config import EngineConfig
from .goals import GoalBook, GoalComparison, compare_to_goal
from .measures import (
    BALANCE_MEASURES,
    MEASURES,
    MeasureContext,
    STAGE_PAIRS,
    build_measure_context,
    dims_for,
    lag_prefix,
)
from .periods import (
    DIMENSIONS,
    DimensionFilter,
    EMPTY_FILTER,
    Period,
    PeriodWindow,
    UNASSIGNED,
    resolve_window,
)
from .records import TxnCategory, TxnType
from .registry import KpiDefinition, Registry
from .store import Snapshot


class DrilldownError(ValueError):
    pass


@dataclass(frozen=True)
class KpiValue:
    kpi_id: str
    period: Period
    filter: DimensionFilter
    value: Optional[Fraction]          # None when undefined
    reason: Optional[str] = None       # why it is undefined
    numerator: Optional[Fraction] = None
    denominator: Optional[Fraction] = None

    @property
    def defined(self) -> bool:
        return self.value is not None


FINANCIAL_CORE_KPIS = (
    "ebitda", "ebitda_margin", "ebit", "operating_margin", "pbt",
    "net_income", "eps", "return_on_capital", "return_on_asset",
)
CASHFLOW_KPIS = ("days_cash_on_hand", "current_ratio", "debt_equity_ratio", "collection_ratio_days")
OPERATIONAL_KPIS = (
    "admissions", "unplanned_readmit_rate", "alos", "bed_occupancy",
    "extended_stay_count", "long_stay_count", "er_presents", "er_admit_rate",
    "divert_count", "time_to_treatment", "surgeries", "or_utilization",
    "or_idle_minutes", "avg_pre_op_minutes", "or_wait_minutes",
    "outpatient_visits", "rvu_total", "no_show_rate",
    "appointment_wait_minutes", "registration_wait_minutes",
)
QUALITY_KPIS = (
    "patients_treated", "satisfaction_patient_care", "satisfaction_customer_service",
    "satisfaction_overall", "recommend_score", "nursing_score_rn", "nursing_score_patient",
    "incident_count", "incident_count_professional_conduct", "incident_count_communication",
    "incident_count_treatment_care", "incident_count_wait_time", "incident_count_other",
    "complaint_resolution_days",
)
REVENUE_CYCLE_KPIS = (
    "pos_collection", "ar_days", "denial_rate_count", "denial_rate_amount",
    "days_to_bill", "write_off_total", "deposit_compliance",
)
TRANSPLANT_KPIS = (
    "transplants_performed", "avg_cit_minutes", "cit_compliance_rate",
    "avg_wait_days_transplanted", "avg_wait_days_active",
    "transplant_failure_rate", "living_donor_share",
)
PROVIDER_HOSPITAL_KPIS = ("revenue_per_bed", "revenue_per_fte", "cost_per_fte")


def process_lag_kpi_ids(er_flag: bool) -> tuple[str, ...]:
    suffix = "er" if er_flag else "non_er"
    return tuple(f"{lag_prefix(a, b)}_{suffix}" for a, b in STAGE_PAIRS)


_NO_DATA_UNITS = ("minutes", "days", "score")


class Engine:
    def __init__(
        self,
        snapshot: Snapshot,
        registry: Registry,
        config: Optional[EngineConfig] = None,
        goals: Optional[GoalBook] = None,
    ):
        self.snapshot = snapshot
        self.registry = registry
        self.config = config or EngineConfig()
        self.goals = goals
        self._contexts: dict[tuple, MeasureContext] = {}

    # -- contexts ----------------------------------------------------------------

    def window(self, period: Period) -> PeriodWindow:
        return resolve_window(period, self.config)

    def context(self, period: Period, filt: DimensionFilter = EMPTY_FILTER) -> MeasureContext:
        key = (period.kind, period.year, period.month, filt.cache_key())
        ctx = self._contexts.get(key)
        if ctx is None:
            ctx = build_measure_context(self.snapshot, self.window(period), filt, self.config)
            self._contexts[key] = ctx
        return ctx

    # -- single values -------------------------------------------------------------

    def kpi_value(
        self, kpi_id: str, period: Period, filt: DimensionFilter = EMPTY_FILTER
    ) -> KpiValue:
        defn = self.registry.require(kpi_id)
        ctx = self.context(period, filt)
        result = dsl.evaluate(defn.expression, ctx.values)

        numerator = denominator = None
        expr = defn.expression
        if isinstance(expr, dsl.Binary) and expr.op == "/":
            left = dsl.evaluate(expr.left, ctx.values)
            right = dsl.evaluate(expr.right, ctx.values)
            if not isinstance(left, dsl.Undefined):
                numerator = left
            if not isinstance(right, dsl.Undefined):
                denominator = right

        if isinstance(result, dsl.Undefined):
            return KpiValue(
                kpi_id, period, filt, None,
                reason=self._map_reason(defn, ctx, result.reason),
                numerator=numerator, denominator=denominator,
            )
        return KpiValue(kpi_id, period, filt, result,
                        numerator=numerator, denominator=denominator)

    def _map_reason(self, defn: KpiDefinition, ctx: MeasureContext, reason: str) -> str:
        if reason.startswith("missing measure "):
            name = reason[len("missing measure "):]
            if name in BALANCE_MEASURES:
                return "missing balance snapshot"
        if (
            reason == "division by zero"
            and defn.unit in _NO_DATA_UNITS
            and defn.count_denominator is not None
            and ctx.values.get(defn.count_denominator) == 0
        ):
            return "no data"
        return reason

    def values(
        self, kpi_ids, period: Period, filt: DimensionFilter = EMPTY_FILTER
    ) -> list[KpiValue]:
        return [self.kpi_value(k, period, filt) for k in kpi_ids]

    def goal_for(self, kv: KpiValue) -> Optional[GoalComparison]:
        if self.goals is None or not kv.filter.is_empty():
            return None
        goal = self.goals.lookup(kv.kpi_id, kv.period)
        if goal is None:
            return None
        direction = self.registry.require(kv.kpi_id).direction
        return compare_to_goal(kv.value, goal, direction, reason=kv.reason)

    # -- series / YTD -----------------------------------------------------------------

    def series(
        self, kpi_id: str, start: Period, end: Period, filt: DimensionFilter = EMPTY_FILTER
    ) -> list[KpiValue]:
        if (start.year, start.month) > (end.year, end.month):
            raise ValueError("series start is after end")
        out = []
        year, month = start.year, start.month
        while (year, month) <= (end.year, end.month):
            out.append(self.kpi_value(kpi_id, Period("month", year, month), filt))
            year, month = (year + 1, 1) if month == 12 else (year, month + 1)
        return out

    def ytd(self, kpi_id: str, year: int, through_month: int,
            filt: DimensionFilter = EMPTY_FILTER) -> KpiValue:
        """Recomputed over the fiscal-year-to-date window: sums accumulate and
        ratios are rebuilt from window numerator/denominator, never averaged
        across months."""
        return self.kpi_value(kpi_id, Period("ytd", year, through_month), filt)

    # -- drilldown -----------------------------------------------------------------

    def drilldown(
        self,
        kpi_id: str,
        period: Period,
        dimension: str,
        base_filter: DimensionFilter = EMPTY_FILTER,
    ) -> tuple[KpiValue, list[tuple[str, KpiValue]]]:
        defn = self.registry.require(kpi_id)
        if dimension not in DIMENSIONS:
            raise DrilldownError(
                f"unknown dimension {dimension!r}; valid: {', '.join(DIMENSIONS)}"
            )
        if dimension not in defn.dims:
            valid = ", ".join(sorted(defn.dims)) or "none"
            raise DrilldownError(
                f"dimension {dimension!r} not applicable to {kpi_id}; valid dimensions: {valid}"
            )
        if getattr(base_filter, dimension) is not None:
            raise DrilldownError(f"dimension {dimension!r} already constrained by the filter")

        values, has_missing = self._dimension_values(defn, dimension, base_filter)
        rows = []
        for value in values:
            f = base_filter.with_constraint(dimension, value)
            rows.append((value, self.kpi_value(kpi_id, period, f)))
        if has_missing:
            f = base_filter.with_constraint(dimension, UNASSIGNED)
            rows.append((UNASSIGNED, self.kpi_value(kpi_id, period, f)))
        total = self.kpi_value(kpi_id, period, base_filter)
        return total, rows

    def _dimension_values(
        self, defn: KpiDefinition, dimension: str, base_filter: DimensionFilter
    ) -> tuple[list[str], bool]:
        tags = set()
        for name in dsl.measure_names(defn.expression):
            tags |= MEASURES[name].sources
        enc_by_id = self.snapshot.encounters_by_id()
        values: set[str] = set()
        has_missing = False
        collections = {
            "encounter": self.snapshot.encounters, "surgery": self.snapshot.surgeries,
            "appointment": self.snapshot.appointments, "process_event": self.snapshot.process_events,
            "txn": self.snapshot.txns, "claim": self.snapshot.claims,
            "survey": self.snapshot.surveys, "incident": self.snapshot.incidents,
            "transplant": self.snapshot.transplants, "capacity": self.snapshot.capacity,
            "staff": self.snapshot.staff, "divert": self.snapshot.diverts,
        }
        for tag in sorted(tags):
            for record in collections[tag]:
                dims = dims_for(record, enc_by_id)
                if not base_filter.matches(dims):
                    continue
                value = dims.get(dimension)
                if value is None:
                    has_missing = True
                else:
                    values.add(value)
        return sorted(values), has_missing

    # -- DRG ranking ---------------------------------------------------------------

    def rank_drg(self, period: Period, key: str = "revenue", order: str = "top", n: int = 10) -> list[dict]:
        if key not in ("revenue", "margin"):
            raise ValueError(f"rank key must be revenue or margin, got {key!r}")
        if order not in ("top", "bottom"):
            raise ValueError(f"rank order must be top or bottom, got {order!r}")
        if n < 1:
            raise ValueError("n must be >= 1")
        window = self.window(period)
        enc_by_id = self.snapshot.encounters_by_id()
        groups: dict[str, dict] = {}

        def group(drg: Optional[str]) -> dict:
            label = drg if drg is not None else UNASSIGNED
            g = groups.get(label)
            if g is None:
                g = {"drg_code": label, "revenue": 0, "expense": 0, "encounters": 0}
                groups[label] = g
            return g

        for t in self.snapshot.txns:
            if t.txn_type is not TxnType.CHARGE or not window.contains(t.ts):
                continue
            enc = enc_by_id.get(t.encounter_id) if t.encounter_id else None
            drg = enc.drg_code if enc is not None else None
            if t.category is TxnCategory.REVENUE:
                group(drg)["revenue"] += t.amount_minor
            elif t.encounter_id:
                # expense attribution needs an encounter link; overhead is excluded
                group(drg)["expense"] += t.amount_minor
        for e in self.snapshot.encounters:
            if window.contains(e.admit_ts):
                group(e.drg_code)["encounters"] += 1

        rows = []
        for g in groups.values():
            rows.append({
                "drg_code": g["drg_code"],
                "revenue": g["revenue"],
                "margin": g["revenue"] - g["expense"],
                "encounters": g["encounters"],
            })
        reverse = order == "top"
        rows.sort(key=lambda r: ((-r[key]) if reverse else r[key], r["drg_code"]))
        return rows[:n]

    # -- provider productivity -------------------------------------------------------

    def provider_kpis(self, period: Period) -> dict:
        window = self.window(period)
        doctors: set[str] = set()
        for e in self.snapshot.encounters:
            if window.contains(e.admit_ts):
                doctors.add(e.doctor_id)
        for t in self.snapshot.txns:
            if t.doctor_id and window.contains(t.ts):
                doctors.add(t.doctor_id)

        total_patient_days = self.context(period).values["patient_days"]
        rows = []
        for doc in sorted(doctors):
            ctx = self.context(period, DimensionFilter(doctor_id=doc))
            revenue = ctx.values["revenue"]
            encounters = ctx.values["encounters_all"]
            patient_days = ctx.values["patient_days"]
            rows.append({
                "doctor_id": doc,
                "revenue": revenue,
                "encounters": encounters,
                "revenue_per_encounter": revenue / encounters if encounters else None,
                "occupancy_share": patient_days / total_patient_days if total_patient_days else None,
            })
        hospital = self.values(PROVIDER_HOSPITAL_KPIS, period)
        return {"doctors": rows, "hospital": hospital}


# ---------------------------------------------------------------------------
# operation-style wrappers over the Engine

def _engine(snapshot, registry, config=None) -> Engine:
    return Engine(snapshot, registry, config)


def compute_financial_core(snapshot, registry, period, config=None) -> list[KpiValue]:
    return _engine(snapshot, registry, config).values(FINANCIAL_CORE_KPIS, period)


def compute_cashflow(snapshot, registry, period, config=None) -> list[KpiValue]:
    return _engine(snapshot, registry, config).values(CASHFLOW_KPIS, period)


def compute_operational(snapshot, registry, period, filt=EMPTY_FILTER, config=None) -> list[KpiValue]:
    return _engine(snapshot, registry, config).values(OPERATIONAL_KPIS, period, filt)


def compute_process_lags(snapshot, registry, period, er_flag: bool, config=None) -> list[KpiValue]:
    return _engine(snapshot, registry, config).values(process_lag_kpi_ids(er_flag), period)


def compute_quality(snapshot, registry, period, filt=EMPTY_FILTER, config=None) -> list[KpiValue]:
    return _engine(snapshot, registry, config).values(QUALITY_KPIS, period, filt)


def compute_revenue_cycle(snapshot, registry, period, location=None, config=None) -> list[KpiValue]:
    filt = DimensionFilter(location=location) if location else EMPTY_FILTER
    return _engine(snapshot, registry, config).values(REVENUE_CYCLE_KPIS, period, filt)


def compute_transplant(snapshot, registry, period, config=None) -> list[KpiValue]:
    return _engine(snapshot, registry, config).values(TRANSPLANT_KPIS, period)


def compute_provider(snapshot, registry, period, config=None) -> dict:
    return _engine(snapshot, registry, config).provider_kpis(period)


def rank_drg(snapshot, period, key="revenue", order="top", n=10, registry=None, config=None) -> list[dict]:
    from .registry import default_registry

    return _engine(snapshot, registry or default_registry(), config).rank_drg(period, key, order, n)


def aggregate_ytd(snapshot, registry, year, through_month, kpi_id, filt=EMPTY_FILTER, config=None) -> KpiValue:
    return _engine(snapshot, registry, config).ytd(kpi_id, year, through_month, filt)


def drilldown(snapshot, registry, kpi_id, period, dimension, config=None):
    return _engine(snapshot, registry, config).drilldown(kpi_id, period, dimension)
