"""The four dashboard views: each is just a list of kpi ids, so adding a
tile is configuration, not code."""

from __future__ import annotations

from .engine import (
    Engine,
    OPERATIONAL_KPIS,
    PROVIDER_HOSPITAL_KPIS,
)
from .periods import DimensionFilter, EMPTY_FILTER, Period
from .present import (
    alert_payload,
    filter_payload,
    kpi_value_payload,
    period_payload,
    provider_payload,
)

VIEW_TITLES = {
    "executive": "Executive Overview",
    "quality": "Healthcare Management",
    "operations": "Operational Management",
    "finance": "Financial Management",
}

VIEW_KPIS: dict[str, tuple[str, ...]] = {
    "executive": (
        "revenue", "ebitda_margin", "operating_margin", "net_income",
        "admissions", "alos", "bed_occupancy", "er_presents", "or_utilization",
        "satisfaction_overall", "incident_count", "ar_days", "current_ratio",
        "days_cash_on_hand",
    ),
    "quality": (
        "patients_treated", "satisfaction_patient_care", "satisfaction_customer_service",
        "satisfaction_overall", "recommend_score", "nursing_score_rn", "nursing_score_patient",
        "incident_count", "incident_count_professional_conduct", "incident_count_communication",
        "incident_count_treatment_care", "incident_count_wait_time", "incident_count_other",
        "complaint_resolution_days",
    ),
    "operations": OPERATIONAL_KPIS + (
        "transplants_performed", "avg_cit_minutes", "cit_compliance_rate",
        "avg_wait_days_transplanted", "avg_wait_days_active", "living_donor_share",
    ),
    "finance": (
        "revenue", "operating_expense_total", "ebitda", "ebitda_margin", "ebit",
        "operating_margin", "pbt", "net_income", "eps", "return_on_capital",
        "return_on_asset", "days_cash_on_hand", "current_ratio", "debt_equity_ratio",
        "collection_ratio_days", "pos_collection", "ar_days", "denial_rate_count",
        "denial_rate_amount", "days_to_bill", "write_off_total", "deposit_compliance",
    ) + PROVIDER_HOSPITAL_KPIS,
}

VIEWS = tuple(VIEW_KPIS)


def build_view(
    engine: Engine,
    view: str,
    period: Period,
    alerts: list,
    filt: DimensionFilter = EMPTY_FILTER,
) -> dict:
    """Bundle of tiles (month + YTD values, goal status), open alerts, and,
    for the finance view, the per-provider table. A dimension filter (the
    dashboard's drill path) applies to every tile; goal comparison only
    exists for the unfiltered hospital-wide scope."""
    kpi_ids = VIEW_KPIS[view]
    ytd_period = Period("ytd", period.year, period.month)
    tiles = []
    for kpi_id in kpi_ids:
        defn = engine.registry.require(kpi_id)
        month_kv = engine.kpi_value(kpi_id, period, filt)
        ytd_kv = engine.kpi_value(kpi_id, ytd_period, filt)
        month_payload = kpi_value_payload(engine, month_kv)
        ytd_payload = kpi_value_payload(engine, ytd_kv)
        tiles.append({
            "kpi_id": kpi_id,
            "display_name": defn.display_name,
            "unit": defn.unit,
            "direction": defn.direction,
            "category": defn.category,
            "dims": sorted(defn.dims),
            "month": {k: month_payload[k] for k in
                      ("value", "display", "undefined_reason", "numerator", "denominator")},
            "ytd": {k: ytd_payload[k] for k in
                    ("value", "display", "undefined_reason", "numerator", "denominator")},
            "goal": month_payload["goal"],
        })
    payload = {
        "view": view,
        "title": VIEW_TITLES[view],
        "period": period_payload(period, engine.window(period)),
        "filter": filter_payload(filt),
        "tiles": tiles,
        "alerts": [alert_payload(a, engine.config.currency) for a in alerts],
    }
    if view == "finance":
        payload["providers"] = provider_payload(
            engine, period, engine.provider_kpis(period)
        )
    return payload
