"""Named measures: exact per-period aggregates the KPI expressions combine.

Every measure is computed in one pass over its record collection as an exact
``Fraction`` (integer money, counts, and duration sums), so results never
depend on record order and drilldown components add up exactly. Count and sum
measures default to 0 when nothing matches; balance-sheet measures are simply
absent when no snapshot exists on or before the period end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timedelta
from fractions import Fraction
from typing import Optional
from zoneinfo import ZoneInfo

from .config import EngineConfig
from .periods import DimensionFilter, PeriodWindow
from .records import (
    AppointmentStatus,
    Channel,
    ClaimStatus,
    DonorType,
    Disposition,
    EncounterKind,
    CapacityResource,
    ProcessStage,
    Respondent,
    SurveyCategory,
    TransplantOutcome,
    TransplantStatus,
    TxnCategory,
    TxnType,
)

ENCOUNTER_DIMS = frozenset({"department", "doctor_id", "location", "drg_code"})
TXN_DIMS = frozenset({"department", "doctor_id", "location", "drg_code"})
APPOINTMENT_DIMS = frozenset({"department", "doctor_id"})
SURGERY_DIMS = frozenset({"doctor_id"})
CAPACITY_DIMS = frozenset({"department"})
INCIDENT_DIMS = frozenset({"department"})
STAFF_DIMS = frozenset({"department"})
ORGAN_DIMS = frozenset({"organ"})
NO_DIMS: frozenset[str] = frozenset()
ALL_DIMS = frozenset({"department", "doctor_id", "location", "drg_code", "organ"})


@dataclass(frozen=True)
class MeasureSpec:
    name: str
    kind: str        # count | money | minutes | days | score | decimal | calendar | balance
    dims: frozenset[str]
    flow: bool       # True: in-period event aggregate; False: as-of / roster value

    @property
    def sources(self) -> frozenset[str]:
        """Record type tags this measure aggregates over."""
        return _MEASURE_SOURCES.get(self.name, frozenset())


CLINICAL_SEQUENCE = (
    ProcessStage.INITIAL_ASSESSMENT,
    ProcessStage.CONSULTANT_INFORMED,
    ProcessStage.BED_ALLOCATED,
    ProcessStage.FIRST_INWARD_ASSESSMENT,
    ProcessStage.RESULTS_REPORTED,
    ProcessStage.DIAGNOSIS,
    ProcessStage.TREATMENT_STARTED,
)

NONCLINICAL_SEQUENCE = (
    ProcessStage.PREAUTH_DONE,
    ProcessStage.COUNSELLING_DONE,
    ProcessStage.MEDICATION_GIVEN,
    ProcessStage.DISCHARGE_BILLED,
    ProcessStage.PAYMENT_DONE,
)

STAGE_PAIRS: tuple[tuple[ProcessStage, ProcessStage], ...] = tuple(
    zip(CLINICAL_SEQUENCE, CLINICAL_SEQUENCE[1:])
) + tuple(zip(NONCLINICAL_SEQUENCE, NONCLINICAL_SEQUENCE[1:]))


def lag_prefix(a: ProcessStage, b: ProcessStage) -> str:
    return f"lag_{a.value}_to_{b.value}"


def _specs() -> list[MeasureSpec]:
    out = [
        MeasureSpec("days_in_period", "calendar", ALL_DIMS, False),
        MeasureSpec("working_days", "calendar", ALL_DIMS, False),
        # encounters
        MeasureSpec("admissions", "count", ENCOUNTER_DIMS, True),
        MeasureSpec("discharges", "count", ENCOUNTER_DIMS, True),
        MeasureSpec("encounters_all", "count", ENCOUNTER_DIMS, True),
        MeasureSpec("los_days", "days", ENCOUNTER_DIMS, True),
        MeasureSpec("extended_stay_count", "count", ENCOUNTER_DIMS, True),
        MeasureSpec("long_stay_count", "count", ENCOUNTER_DIMS, True),
        MeasureSpec("readmissions_30d", "count", ENCOUNTER_DIMS, True),
        MeasureSpec("patient_days", "days", ENCOUNTER_DIMS, True),
        MeasureSpec("er_presents", "count", ENCOUNTER_DIMS, True),
        MeasureSpec("er_admits", "count", ENCOUNTER_DIMS, True),
        # surgeries
        MeasureSpec("surgeries", "count", SURGERY_DIMS, True),
        MeasureSpec("or_used_minutes", "minutes", SURGERY_DIMS, True),
        MeasureSpec("pre_op_minutes_sum", "minutes", SURGERY_DIMS, True),
        MeasureSpec("or_wait_minutes_sum", "minutes", SURGERY_DIMS, True),
        # capacity
        MeasureSpec("bed_days", "count", CAPACITY_DIMS, True),
        MeasureSpec("or_available_minutes", "minutes", CAPACITY_DIMS, True),
        # appointments
        MeasureSpec("scheduled_appointments", "count", APPOINTMENT_DIMS, True),
        MeasureSpec("no_shows", "count", APPOINTMENT_DIMS, True),
        MeasureSpec("cancelled_appointments", "count", APPOINTMENT_DIMS, True),
        MeasureSpec("completed_appointments", "count", APPOINTMENT_DIMS, True),
        MeasureSpec("rvu_sum", "decimal", APPOINTMENT_DIMS, True),
        MeasureSpec("appointment_wait_minutes_sum", "minutes", APPOINTMENT_DIMS, True),
        # process timeline (joined to the encounter for dimensions / ER split)
        MeasureSpec("ttt_minutes_sum", "minutes", ENCOUNTER_DIMS, True),
        MeasureSpec("ttt_count", "count", ENCOUNTER_DIMS, True),
        MeasureSpec("registration_wait_minutes_sum", "minutes", ENCOUNTER_DIMS, True),
        MeasureSpec("registration_wait_count", "count", ENCOUNTER_DIMS, True),
        # financial transactions
        MeasureSpec("revenue", "money", TXN_DIMS, True),
        MeasureSpec("operating_expense", "money", TXN_DIMS, True),
        MeasureSpec("fte_cost", "money", TXN_DIMS, True),
        MeasureSpec("admin_cost", "money", TXN_DIMS, True),
        MeasureSpec("overtime_cost", "money", TXN_DIMS, True),
        MeasureSpec("referral_commission", "money", TXN_DIMS, True),
        MeasureSpec("interest", "money", TXN_DIMS, True),
        MeasureSpec("tax", "money", TXN_DIMS, True),
        MeasureSpec("depreciation", "money", TXN_DIMS, True),
        MeasureSpec("amortization", "money", TXN_DIMS, True),
        MeasureSpec("operating_expense_total", "money", TXN_DIMS, True),
        MeasureSpec("net_credit_sales", "money", TXN_DIMS, True),
        MeasureSpec("pos_collection", "money", TXN_DIMS, True),
        MeasureSpec("write_off_total", "money", TXN_DIMS, True),
        MeasureSpec("pos_payment_count", "count", TXN_DIMS, True),
        MeasureSpec("pos_deposit_compliant", "count", TXN_DIMS, True),
        # claims (joined to the encounter for dimensions)
        MeasureSpec("adjudicated_claims", "count", ENCOUNTER_DIMS, True),
        MeasureSpec("denied_claims", "count", ENCOUNTER_DIMS, True),
        MeasureSpec("adjudicated_billed", "money", ENCOUNTER_DIMS, True),
        MeasureSpec("adjudicated_paid", "money", ENCOUNTER_DIMS, True),
        MeasureSpec("billed_claims", "count", ENCOUNTER_DIMS, True),
        MeasureSpec("bill_lag_days_sum", "days", ENCOUNTER_DIMS, True),
        # surveys
        MeasureSpec("survey_score_patient_care", "score", NO_DIMS, True),
        MeasureSpec("survey_count_patient_care", "count", NO_DIMS, True),
        MeasureSpec("survey_score_customer_service", "score", NO_DIMS, True),
        MeasureSpec("survey_count_customer_service", "count", NO_DIMS, True),
        MeasureSpec("survey_score_overall", "score", NO_DIMS, True),
        MeasureSpec("survey_count_overall", "count", NO_DIMS, True),
        MeasureSpec("survey_score_recommend", "score", NO_DIMS, True),
        MeasureSpec("survey_count_recommend", "count", NO_DIMS, True),
        MeasureSpec("nursing_rn_score_sum", "score", NO_DIMS, True),
        MeasureSpec("nursing_rn_count", "count", NO_DIMS, True),
        MeasureSpec("nursing_patient_score_sum", "score", NO_DIMS, True),
        MeasureSpec("nursing_patient_count", "count", NO_DIMS, True),
        # incidents
        MeasureSpec("incident_count", "count", INCIDENT_DIMS, True),
        MeasureSpec("incident_count_professional_conduct", "count", INCIDENT_DIMS, True),
        MeasureSpec("incident_count_communication", "count", INCIDENT_DIMS, True),
        MeasureSpec("incident_count_treatment_care", "count", INCIDENT_DIMS, True),
        MeasureSpec("incident_count_wait_time", "count", INCIDENT_DIMS, True),
        MeasureSpec("incident_count_other", "count", INCIDENT_DIMS, True),
        MeasureSpec("incidents_resolved", "count", INCIDENT_DIMS, True),
        MeasureSpec("incident_resolution_days_sum", "days", INCIDENT_DIMS, True),
        # transplants
        MeasureSpec("transplants", "count", ORGAN_DIMS, True),
        MeasureSpec("cit_minutes_sum", "minutes", ORGAN_DIMS, True),
        MeasureSpec("cit_compliant", "count", ORGAN_DIMS, True),
        MeasureSpec("transplant_wait_days_sum", "days", ORGAN_DIMS, True),
        MeasureSpec("transplant_failures", "count", ORGAN_DIMS, True),
        MeasureSpec("transplant_successes", "count", ORGAN_DIMS, True),
        MeasureSpec("living_donor_transplants", "count", ORGAN_DIMS, True),
        MeasureSpec("active_waiting", "count", ORGAN_DIMS, False),
        MeasureSpec("active_wait_days_sum", "days", ORGAN_DIMS, False),
        # diverts
        MeasureSpec("divert_count", "count", NO_DIMS, True),
        MeasureSpec("divert_minutes", "minutes", NO_DIMS, True),
        # staffing roster
        MeasureSpec("fte_total", "decimal", STAFF_DIMS, False),
        # balance sheet (absent without a snapshot)
        MeasureSpec("cash", "balance", NO_DIMS, False),
        MeasureSpec("current_assets", "balance", NO_DIMS, False),
        MeasureSpec("current_liabilities", "balance", NO_DIMS, False),
        MeasureSpec("total_liabilities", "balance", NO_DIMS, False),
        MeasureSpec("shareholders_equity", "balance", NO_DIMS, False),
        MeasureSpec("total_assets", "balance", NO_DIMS, False),
        MeasureSpec("capital_employed", "balance", NO_DIMS, False),
        MeasureSpec("debtors", "balance", NO_DIMS, False),
        MeasureSpec("shares_outstanding", "balance", NO_DIMS, False),
        MeasureSpec("average_total_assets", "balance", NO_DIMS, False),
    ]
    for a, b in STAGE_PAIRS:
        for flag in ("er", "non_er"):
            prefix = f"{lag_prefix(a, b)}_{flag}"
            out.append(MeasureSpec(f"{prefix}_minutes_sum", "minutes", ENCOUNTER_DIMS, True))
            out.append(MeasureSpec(f"{prefix}_count", "count", ENCOUNTER_DIMS, True))
    return out


MEASURES: dict[str, MeasureSpec] = {spec.name: spec for spec in _specs()}

BALANCE_MEASURES = frozenset(n for n, s in MEASURES.items() if s.kind == "balance")


def _source_tags(name: str) -> frozenset[str]:
    spec = MEASURES[name]
    if spec.kind in ("calendar", "balance"):
        return frozenset()
    if name.startswith("lag_") or name.startswith("ttt_") or name.startswith("registration_wait_"):
        return frozenset({"process_event"})
    if name.startswith("survey_") or name.startswith("nursing_"):
        return frozenset({"survey"})
    if name.startswith("incident"):
        return frozenset({"incident"})
    by_name = {
        "admissions": "encounter", "discharges": "encounter", "encounters_all": "encounter",
        "los_days": "encounter", "extended_stay_count": "encounter", "long_stay_count": "encounter",
        "readmissions_30d": "encounter", "patient_days": "encounter",
        "er_presents": "encounter", "er_admits": "encounter",
        "surgeries": "surgery", "or_used_minutes": "surgery",
        "pre_op_minutes_sum": "surgery", "or_wait_minutes_sum": "surgery",
        "bed_days": "capacity", "or_available_minutes": "capacity",
        "scheduled_appointments": "appointment", "no_shows": "appointment",
        "cancelled_appointments": "appointment", "completed_appointments": "appointment",
        "rvu_sum": "appointment", "appointment_wait_minutes_sum": "appointment",
        "revenue": "txn", "operating_expense": "txn", "fte_cost": "txn", "admin_cost": "txn",
        "overtime_cost": "txn", "referral_commission": "txn", "interest": "txn", "tax": "txn",
        "depreciation": "txn", "amortization": "txn", "operating_expense_total": "txn",
        "net_credit_sales": "txn", "pos_collection": "txn", "write_off_total": "txn",
        "pos_payment_count": "txn", "pos_deposit_compliant": "txn",
        "adjudicated_claims": "claim", "denied_claims": "claim", "adjudicated_billed": "claim",
        "adjudicated_paid": "claim", "billed_claims": "claim", "bill_lag_days_sum": "claim",
        "transplants": "transplant", "cit_minutes_sum": "transplant", "cit_compliant": "transplant",
        "transplant_wait_days_sum": "transplant", "transplant_failures": "transplant",
        "transplant_successes": "transplant", "living_donor_transplants": "transplant",
        "active_waiting": "transplant", "active_wait_days_sum": "transplant",
        "divert_count": "divert", "divert_minutes": "divert",
        "fte_total": "staff",
    }
    return frozenset({by_name[name]})


_MEASURE_SOURCES: dict[str, frozenset[str]] = {name: _source_tags(name) for name in MEASURES}


def dims_for(record, encounters_by_id: dict) -> dict[str, Optional[str]]:
    """Dimension values one record carries; dimensions the record type does
    not have are omitted. Process events, claims, and transactions inherit
    encounter dimensions through their encounter_id."""
    from . import records as R

    if isinstance(record, R.EncounterRecord):
        return {
            "department": record.department, "doctor_id": record.doctor_id,
            "location": record.location, "drg_code": record.drg_code,
        }
    if isinstance(record, R.SurgeryRecord):
        return {"doctor_id": record.surgeon_id}
    if isinstance(record, R.AppointmentRecord):
        return {"department": record.department, "doctor_id": record.doctor_id}
    if isinstance(record, (R.ProcessEventRecord, R.ClaimRecord)):
        enc = encounters_by_id.get(record.encounter_id)
        if enc is None:
            return {}
        return {
            "department": enc.department, "doctor_id": enc.doctor_id,
            "location": enc.location, "drg_code": enc.drg_code,
        }
    if isinstance(record, R.FinancialTxn):
        enc = encounters_by_id.get(record.encounter_id) if record.encounter_id else None
        return {
            "department": record.department, "doctor_id": record.doctor_id,
            "location": record.location,
            "drg_code": enc.drg_code if enc is not None else None,
        }
    if isinstance(record, R.IncidentRecord):
        return {"department": record.department}
    if isinstance(record, R.TransplantCase):
        return {"organ": record.organ}
    if isinstance(record, R.CapacityRecord):
        return {"department": record.department}
    if isinstance(record, R.StaffRecord):
        return {"department": record.department}
    return {}

EXPENSE_CATEGORIES_EBITDA = (
    TxnCategory.OPERATING_EXPENSE,
    TxnCategory.FTE_COST,
    TxnCategory.ADMIN_COST,
    TxnCategory.OVERTIME_COST,
    TxnCategory.REFERRAL_COMMISSION,
)


@dataclass
class MeasureContext:
    """All measure values for one (period, dimension filter) slice."""

    window: PeriodWindow
    filter: DimensionFilter
    values: dict[str, Fraction] = field(default_factory=dict)

    def get(self, name: str) -> Optional[Fraction]:
        return self.values.get(name)


def _frac_days(td: timedelta) -> Fraction:
    micros = (td.days * 86400 + td.seconds) * 1_000_000 + td.microseconds
    return Fraction(micros, 86400 * 1_000_000)


def _frac_minutes(td: timedelta) -> Fraction:
    micros = (td.days * 86400 + td.seconds) * 1_000_000 + td.microseconds
    return Fraction(micros, 60 * 1_000_000)


def build_measure_context(
    snapshot,
    window: PeriodWindow,
    filt: DimensionFilter,
    config: EngineConfig,
) -> MeasureContext:
    """One exact aggregate per catalog measure, over records in the window
    that match the filter.

    Process-event and claim records take their dimensions from the encounter
    they reference; records whose encounter is unknown fall in the
    "(unassigned)" bucket for every encounter dimension.
    """
    tz = ZoneInfo(config.reporting_tz)
    v: dict[str, Fraction] = {
        spec.name: Fraction(0) for spec in MEASURES.values() if spec.kind not in ("calendar", "balance")
    }
    v["days_in_period"] = Fraction(window.days)
    v["working_days"] = Fraction(window.days if config.working_days == "calendar" else window.weekdays())

    encounters_by_id = snapshot.encounters_by_id()

    # --- encounters ---------------------------------------------------------
    prior_discharges: dict[str, list[tuple[str, datetime]]] = {}
    for e in snapshot.encounters:
        if e.kind is EncounterKind.INPATIENT and e.discharge_ts is not None:
            prior_discharges.setdefault(e.patient_id, []).append((e.encounter_id, e.discharge_ts))

    readmit_window = timedelta(days=config.readmit_window_days)
    extended_threshold = Fraction(config.extended_stay_days)
    long_threshold = Fraction(config.long_stay_days)
    for e in snapshot.encounters:
        if not filt.matches(dims_for(e, encounters_by_id)):
            continue
        admitted_in = window.contains(e.admit_ts)
        if admitted_in:
            v["encounters_all"] += 1
        if e.kind is EncounterKind.EMERGENCY and admitted_in:
            v["er_presents"] += 1
            if e.disposition is Disposition.ADMITTED:
                v["er_admits"] += 1
        if e.kind is not EncounterKind.INPATIENT:
            continue
        if admitted_in:
            v["admissions"] += 1
            if not e.planned:
                for other_id, d_ts in prior_discharges.get(e.patient_id, ()):
                    if other_id != e.encounter_id and timedelta(0) <= e.admit_ts - d_ts <= readmit_window:
                        v["readmissions_30d"] += 1
                        break
        if e.discharge_ts is not None and window.contains(e.discharge_ts):
            v["discharges"] += 1
            los = _frac_days(e.discharge_ts - e.admit_ts)
            v["los_days"] += los
            if los > extended_threshold:
                v["extended_stay_count"] += 1
            if los > long_threshold:
                v["long_stay_count"] += 1
        stay_end = e.discharge_ts if e.discharge_ts is not None else window.end_utc
        overlap_start = max(e.admit_ts, window.start_utc)
        overlap_end = min(stay_end, window.end_utc)
        if overlap_end > overlap_start:
            v["patient_days"] += _frac_days(overlap_end - overlap_start)

    # --- surgeries ----------------------------------------------------------
    for s in snapshot.surgeries:
        if not filt.matches(dims_for(s, encounters_by_id)):
            continue
        if not window.contains(s.actual_start):
            continue
        v["surgeries"] += 1
        v["or_used_minutes"] += _frac_minutes(s.actual_end - s.actual_start)
        v["pre_op_minutes_sum"] += s.pre_op_minutes
        v["or_wait_minutes_sum"] += _frac_minutes(s.actual_start - s.scheduled_start)

    # --- capacity -----------------------------------------------------------
    for c in snapshot.capacity:
        if not filt.matches(dims_for(c, encounters_by_id)):
            continue
        if not window.contains_date(c.date):
            continue
        if c.resource is CapacityResource.BEDS:
            v["bed_days"] += c.available_units
        elif c.resource is CapacityResource.OR_ROOMS and c.available_minutes is not None:
            v["or_available_minutes"] += c.available_minutes

    # --- appointments -------------------------------------------------------
    for a in snapshot.appointments:
        if not filt.matches(dims_for(a, encounters_by_id)):
            continue
        if not window.contains(a.scheduled_ts):
            continue
        v["scheduled_appointments"] += 1
        if a.status is AppointmentStatus.NO_SHOW:
            v["no_shows"] += 1
        elif a.status is AppointmentStatus.CANCELLED:
            v["cancelled_appointments"] += 1
        elif a.status is AppointmentStatus.COMPLETED:
            v["completed_appointments"] += 1
            v["rvu_sum"] += Fraction(a.rvu)
            if a.arrival_ts is not None and a.seen_ts is not None:
                v["appointment_wait_minutes_sum"] += _frac_minutes(a.seen_ts - a.arrival_ts)

    # --- process events (per encounter) -------------------------------------
    stage_by_encounter: dict[str, dict[ProcessStage, datetime]] = {}
    for p in snapshot.process_events:
        stage_by_encounter.setdefault(p.encounter_id, {})[p.stage] = p.ts
    for enc_id, stages in stage_by_encounter.items():
        enc = encounters_by_id.get(enc_id)
        if enc is None:
            continue
        dims = {
            "department": enc.department, "doctor_id": enc.doctor_id,
            "location": enc.location, "drg_code": enc.drg_code,
        }
        if not filt.matches(dims) or not window.contains(enc.admit_ts):
            continue
        er = enc.kind is EncounterKind.EMERGENCY
        if er and ProcessStage.TREATMENT_STARTED in stages:
            v["ttt_minutes_sum"] += _frac_minutes(stages[ProcessStage.TREATMENT_STARTED] - enc.admit_ts)
            v["ttt_count"] += 1
        if ProcessStage.INITIAL_ASSESSMENT in stages:
            v["registration_wait_minutes_sum"] += _frac_minutes(
                stages[ProcessStage.INITIAL_ASSESSMENT] - enc.admit_ts
            )
            v["registration_wait_count"] += 1
        flag = "er" if er else "non_er"
        for a, b in STAGE_PAIRS:
            if a in stages and b in stages:
                prefix = f"{lag_prefix(a, b)}_{flag}"
                v[f"{prefix}_minutes_sum"] += _frac_minutes(stages[b] - stages[a])
                v[f"{prefix}_count"] += 1

    # --- financial transactions ---------------------------------------------
    for t in snapshot.txns:
        if not filt.matches(dims_for(t, encounters_by_id)):
            continue
        if not window.contains(t.ts):
            continue
        if t.txn_type is TxnType.CHARGE:
            v[t.category.value] += t.amount_minor
            if t.category is TxnCategory.REVENUE and t.channel is Channel.INSURANCE:
                v["net_credit_sales"] += t.amount_minor
        if t.txn_type is TxnType.PAYMENT and t.channel is Channel.POS:
            v["pos_collection"] += t.amount_minor
            v["pos_payment_count"] += 1
            received = t.received_ts if t.received_ts is not None else t.ts
            if t.deposited_ts is not None:
                lag = t.deposited_ts.astimezone(tz).date() - received.astimezone(tz).date()
                if lag.days <= config.deposit_lag_days:
                    v["pos_deposit_compliant"] += 1
        if t.txn_type is TxnType.WRITE_OFF:
            v["write_off_total"] += t.amount_minor

    v["operating_expense_total"] = (
        v["operating_expense"] + v["fte_cost"] + v["admin_cost"] + v["overtime_cost"]
        + v["referral_commission"] + v["depreciation"] + v["amortization"]
    )

    # --- claims --------------------------------------------------------------
    for cl in snapshot.claims:
        if not filt.matches(dims_for(cl, encounters_by_id)):
            continue
        if not window.contains(cl.discharge_ts):
            continue
        if cl.status in (ClaimStatus.PAID, ClaimStatus.PARTIAL, ClaimStatus.DENIED):
            v["adjudicated_claims"] += 1
            v["adjudicated_billed"] += cl.amount_billed_minor
            v["adjudicated_paid"] += cl.amount_paid_minor
            if cl.status is ClaimStatus.DENIED:
                v["denied_claims"] += 1
        if cl.billed_ts is not None:
            v["billed_claims"] += 1
            v["bill_lag_days_sum"] += _frac_days(cl.billed_ts - cl.discharge_ts)

    # --- surveys --------------------------------------------------------------
    for r in snapshot.surveys:
        if not filt.matches({}):
            continue
        if not window.contains(r.ts):
            continue
        if r.respondent is Respondent.RN:
            v["nursing_rn_score_sum"] += r.score
            v["nursing_rn_count"] += 1
        elif r.category is SurveyCategory.NURSING:
            v["nursing_patient_score_sum"] += r.score
            v["nursing_patient_count"] += 1
        elif r.category in (
            SurveyCategory.PATIENT_CARE,
            SurveyCategory.CUSTOMER_SERVICE,
            SurveyCategory.OVERALL,
            SurveyCategory.RECOMMEND,
        ):
            v[f"survey_score_{r.category.value}"] += r.score
            v[f"survey_count_{r.category.value}"] += 1

    # --- incidents -------------------------------------------------------------
    for inc in snapshot.incidents:
        if not filt.matches(dims_for(inc, encounters_by_id)):
            continue
        if not window.contains(inc.ts):
            continue
        v["incident_count"] += 1
        v[f"incident_count_{inc.category.value}"] += 1
        if inc.resolved_ts is not None:
            v["incidents_resolved"] += 1
            v["incident_resolution_days_sum"] += _frac_days(inc.resolved_ts - inc.ts)

    # --- transplants -------------------------------------------------------------
    for tc in snapshot.transplants:
        if not filt.matches(dims_for(tc, encounters_by_id)):
            continue
        if (
            tc.status is TransplantStatus.TRANSPLANTED
            and tc.transplant_ts is not None
            and window.contains(tc.transplant_ts)
        ):
            v["transplants"] += 1
            if tc.cold_ischemia_minutes is not None:
                v["cit_minutes_sum"] += tc.cold_ischemia_minutes
                if tc.cold_ischemia_minutes < config.cit_threshold_minutes:
                    v["cit_compliant"] += 1
            v["transplant_wait_days_sum"] += _frac_days(tc.transplant_ts - tc.listed_ts)
            if tc.outcome is TransplantOutcome.FAILURE:
                v["transplant_failures"] += 1
            elif tc.outcome is TransplantOutcome.SUCCESS:
                v["transplant_successes"] += 1
            if tc.donor_type is DonorType.LIVING:
                v["living_donor_transplants"] += 1
        if tc.status in (TransplantStatus.ACTIVE, TransplantStatus.NEW) and tc.listed_ts < window.end_utc:
            v["active_waiting"] += 1
            v["active_wait_days_sum"] += _frac_days(window.end_utc - tc.listed_ts)

    # --- diverts -------------------------------------------------------------
    for d in snapshot.diverts:
        if not filt.matches({}):
            continue
        if not window.contains(d.start_ts):
            continue
        v["divert_count"] += 1
        v["divert_minutes"] += d.duration_minutes

    # --- staffing roster -------------------------------------------------------
    for st in snapshot.staff:
        if not filt.matches(dims_for(st, encounters_by_id)):
            continue
        v["fte_total"] += Fraction(st.fte_fraction)

    # --- balance sheet -----------------------------------------------------------
    snaps = sorted(snapshot.balances, key=lambda b: b.as_of_date)
    latest = None
    for b in snaps:
        if b.as_of_date <= window.end_date:
            latest = b
    if latest is not None:
        v["cash"] = Fraction(latest.cash_minor)
        v["current_assets"] = Fraction(latest.current_assets_minor)
        v["current_liabilities"] = Fraction(latest.current_liabilities_minor)
        v["total_liabilities"] = Fraction(latest.total_liabilities_minor)
        v["shareholders_equity"] = Fraction(latest.shareholders_equity_minor)
        v["total_assets"] = Fraction(latest.total_assets_minor)
        v["capital_employed"] = Fraction(latest.capital_employed_minor)
        v["debtors"] = Fraction(latest.debtors_minor)
        v["shares_outstanding"] = Fraction(latest.shares_outstanding)
        in_period = [b for b in snaps if window.start_date <= b.as_of_date <= window.end_date]
        if in_period:
            v["average_total_assets"] = Fraction(
                in_period[0].total_assets_minor + in_period[-1].total_assets_minor, 2
            )
        else:
            v["average_total_assets"] = Fraction(latest.total_assets_minor)

    return MeasureContext(window=window, filter=filt, values=v)
