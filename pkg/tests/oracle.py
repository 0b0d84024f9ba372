"""Brute-force KPI oracle: flat scans over raw records, no indexes, no shared
code with the engine's aggregation. Used to cross-check every financial-core
and cash-flow KPI plus a sample of operational ratios.

All window math is recomputed here from the calendar module, and every value
is built from plain Python ints/floats so a bug in the engine's exact-fraction
pipeline cannot hide in the oracle too.
"""

from __future__ import annotations

import calendar
from datetime import datetime, timedelta, timezone

from hospkpi.records import (
    AppointmentStatus,
    Channel,
    ClaimStatus,
    Disposition,
    EncounterKind,
    TransplantStatus,
    TxnCategory,
    TxnType,
)

EBITDA_EXPENSE = (
    TxnCategory.OPERATING_EXPENSE, TxnCategory.FTE_COST, TxnCategory.ADMIN_COST,
    TxnCategory.OVERTIME_COST, TxnCategory.REFERRAL_COMMISSION,
)


def month_bounds(year: int, month: int) -> tuple[datetime, datetime, int]:
    start = datetime(year, month, 1, tzinfo=timezone.utc)
    days = calendar.monthrange(year, month)[1]
    if month == 12:
        end = datetime(year + 1, 1, 1, tzinfo=timezone.utc)
    else:
        end = datetime(year, month + 1, 1, tzinfo=timezone.utc)
    return start, end, days


def ytd_bounds(year: int, month: int, fiscal_start: int = 1) -> tuple[datetime, datetime, int]:
    if month >= fiscal_start:
        start = datetime(year, fiscal_start, 1, tzinfo=timezone.utc)
    else:
        start = datetime(year - 1, fiscal_start, 1, tzinfo=timezone.utc)
    _, end, _ = month_bounds(year, month)
    days = (end - start).days
    return start, end, days


def bounds(year: int, month: int, scope: str = "month", fiscal_start: int = 1):
    if scope == "month":
        return month_bounds(year, month)
    return ytd_bounds(year, month, fiscal_start)


def _sum_category(records, start, end, category) -> int:
    total = 0
    for r in records:
        if (
            type(r).__name__ == "FinancialTxn"
            and r.txn_type is TxnType.CHARGE
            and r.category is category
            and start <= r.ts < end
        ):
            total += r.amount_minor
    return total


def revenue(records, start, end) -> int:
    return _sum_category(records, start, end, TxnCategory.REVENUE)


def ebitda(records, start, end) -> int:
    total = revenue(records, start, end)
    for cat in EBITDA_EXPENSE:
        total -= _sum_category(records, start, end, cat)
    return total


def ebit(records, start, end) -> int:
    return (
        ebitda(records, start, end)
        - _sum_category(records, start, end, TxnCategory.DEPRECIATION)
        - _sum_category(records, start, end, TxnCategory.AMORTIZATION)
    )


def pbt(records, start, end) -> int:
    return ebit(records, start, end) - _sum_category(records, start, end, TxnCategory.INTEREST)


def net_income(records, start, end) -> int:
    return pbt(records, start, end) - _sum_category(records, start, end, TxnCategory.TAX)


def _ratio(num, den):
    if den == 0:
        return None
    return num / den


def ebitda_margin(records, start, end):
    return _ratio(ebitda(records, start, end), revenue(records, start, end))


def operating_margin(records, start, end):
    return _ratio(ebit(records, start, end), revenue(records, start, end))


def latest_snapshot(records, end):
    end_date = (end - timedelta(seconds=1)).date()
    best = None
    for r in records:
        if type(r).__name__ == "BalanceSnapshot" and r.as_of_date <= end_date:
            if best is None or r.as_of_date > best.as_of_date:
                best = r
    return best


def eps(records, start, end):
    snap = latest_snapshot(records, end)
    if snap is None:
        return None
    return _ratio(net_income(records, start, end), snap.shares_outstanding)


def return_on_capital(records, start, end):
    snap = latest_snapshot(records, end)
    if snap is None:
        return None
    return _ratio(ebit(records, start, end), snap.capital_employed_minor)


def average_total_assets(records, start, end):
    start_date = start.date()
    end_date = (end - timedelta(seconds=1)).date()
    in_period = sorted(
        (r for r in records
         if type(r).__name__ == "BalanceSnapshot" and start_date <= r.as_of_date <= end_date),
        key=lambda r: r.as_of_date,
    )
    if in_period:
        return (in_period[0].total_assets_minor + in_period[-1].total_assets_minor) / 2
    snap = latest_snapshot(records, end)
    return None if snap is None else float(snap.total_assets_minor)


def return_on_asset(records, start, end):
    avg = average_total_assets(records, start, end)
    if avg is None:
        return None
    return _ratio(net_income(records, start, end), avg)


def operating_expense_total(records, start, end) -> int:
    total = 0
    for cat in EBITDA_EXPENSE + (TxnCategory.DEPRECIATION, TxnCategory.AMORTIZATION):
        total += _sum_category(records, start, end, cat)
    return total


def days_cash_on_hand(records, start, end, days):
    snap = latest_snapshot(records, end)
    if snap is None:
        return None
    daily = (
        operating_expense_total(records, start, end)
        - _sum_category(records, start, end, TxnCategory.DEPRECIATION)
    ) / days
    return _ratio(snap.cash_minor, daily)


def current_ratio(records, start, end):
    snap = latest_snapshot(records, end)
    if snap is None:
        return None
    return _ratio(snap.current_assets_minor, snap.current_liabilities_minor)


def debt_equity_ratio(records, start, end):
    snap = latest_snapshot(records, end)
    if snap is None:
        return None
    return _ratio(snap.total_liabilities_minor, snap.shareholders_equity_minor)


def net_credit_sales(records, start, end) -> int:
    total = 0
    for r in records:
        if (
            type(r).__name__ == "FinancialTxn"
            and r.txn_type is TxnType.CHARGE
            and r.category is TxnCategory.REVENUE
            and r.channel is Channel.INSURANCE
            and start <= r.ts < end
        ):
            total += r.amount_minor
    return total


def collection_ratio_days(records, start, end, days):
    snap = latest_snapshot(records, end)
    if snap is None:
        return None
    return _ratio(snap.debtors_minor * days, net_credit_sales(records, start, end))


FORMULA_ORACLES = {
    "ebitda": lambda rs, s, e, d: float(ebitda(rs, s, e)),
    "ebitda_margin": lambda rs, s, e, d: ebitda_margin(rs, s, e),
    "operating_margin": lambda rs, s, e, d: operating_margin(rs, s, e),
    "eps": lambda rs, s, e, d: eps(rs, s, e),
    "return_on_capital": lambda rs, s, e, d: return_on_capital(rs, s, e),
    "return_on_asset": lambda rs, s, e, d: return_on_asset(rs, s, e),
    "days_cash_on_hand": days_cash_on_hand,
    "current_ratio": lambda rs, s, e, d: current_ratio(rs, s, e),
    "debt_equity_ratio": lambda rs, s, e, d: debt_equity_ratio(rs, s, e),
    "collection_ratio_days": collection_ratio_days,
}

EXACT_MONEY_KPIS = frozenset({"ebitda"})


# --- operational ratio oracles (used by the YTD consistency suite) -----------

def no_show_rate(records, start, end):
    no_shows = scheduled = cancelled = 0
    for r in records:
        if type(r).__name__ == "AppointmentRecord" and start <= r.scheduled_ts < end:
            scheduled += 1
            if r.status is AppointmentStatus.NO_SHOW:
                no_shows += 1
            elif r.status is AppointmentStatus.CANCELLED:
                cancelled += 1
    return _ratio(no_shows, scheduled - cancelled)


def er_admit_rate(records, start, end):
    presents = admits = 0
    for r in records:
        if (
            type(r).__name__ == "EncounterRecord"
            and r.kind is EncounterKind.EMERGENCY
            and start <= r.admit_ts < end
        ):
            presents += 1
            if r.disposition is Disposition.ADMITTED:
                admits += 1
    return _ratio(admits, presents)


def alos(records, start, end):
    total_days = 0.0
    discharges = 0
    for r in records:
        if (
            type(r).__name__ == "EncounterRecord"
            and r.kind is EncounterKind.INPATIENT
            and r.discharge_ts is not None
            and start <= r.discharge_ts < end
        ):
            discharges += 1
            total_days += (r.discharge_ts - r.admit_ts).total_seconds() / 86400.0
    return _ratio(total_days, discharges)


def denial_rate_count(records, start, end):
    adjudicated = denied = 0
    for r in records:
        if type(r).__name__ == "ClaimRecord" and start <= r.discharge_ts < end:
            if r.status in (ClaimStatus.PAID, ClaimStatus.PARTIAL, ClaimStatus.DENIED):
                adjudicated += 1
                if r.status is ClaimStatus.DENIED:
                    denied += 1
    return _ratio(denied, adjudicated)


def satisfaction_overall(records, start, end):
    total = count = 0
    for r in records:
        if (
            type(r).__name__ == "SurveyResponse"
            and r.respondent.value == "patient"
            and r.category.value == "overall"
            and start <= r.ts < end
        ):
            total += r.score
            count += 1
    return _ratio(total, count)


def cit_compliance_rate(records, start, end, threshold_minutes=540):
    transplants = compliant = 0
    for r in records:
        if (
            type(r).__name__ == "TransplantCase"
            and r.status is TransplantStatus.TRANSPLANTED
            and r.transplant_ts is not None
            and start <= r.transplant_ts < end
        ):
            transplants += 1
            if r.cold_ischemia_minutes is not None and r.cold_ischemia_minutes < threshold_minutes:
                compliant += 1
    return _ratio(compliant, transplants)


RATIO_ORACLES = {
    "no_show_rate": no_show_rate,
    "er_admit_rate": er_admit_rate,
    "alos": alos,
    "denial_rate_count": denial_rate_count,
    "satisfaction_overall": satisfaction_overall,
    "cit_compliance_rate": cit_compliance_rate,
}


# --- count/sum oracles (exact integer comparison) ------------------------------

def admissions(records, start, end) -> int:
    return sum(
        1 for r in records
        if type(r).__name__ == "EncounterRecord"
        and r.kind is EncounterKind.INPATIENT
        and start <= r.admit_ts < end
    )


def er_presents(records, start, end) -> int:
    return sum(
        1 for r in records
        if type(r).__name__ == "EncounterRecord"
        and r.kind is EncounterKind.EMERGENCY
        and start <= r.admit_ts < end
    )


def pos_collection(records, start, end) -> int:
    return sum(
        r.amount_minor for r in records
        if type(r).__name__ == "FinancialTxn"
        and r.txn_type is TxnType.PAYMENT
        and r.channel is Channel.POS
        and start <= r.ts < end
    )


def write_off_total(records, start, end) -> int:
    return sum(
        r.amount_minor for r in records
        if type(r).__name__ == "FinancialTxn"
        and r.txn_type is TxnType.WRITE_OFF
        and start <= r.ts < end
    )


COUNT_ORACLES = {
    "admissions": admissions,
    "er_presents": er_presents,
    "revenue": revenue,
    "pos_collection": pos_collection,
    "write_off_total": write_off_total,
}
