"""Deterministic synthetic hospital data for tests and demos.

Same config (including seed) -> byte-identical batch. The generator draws
only from ``random.Random`` (Mersenne Twister) using ``random``, ``randrange``,
``choice``, and ``sample``, so output is stable across platforms and Python
versions; variable daily volumes come from a binomial built on plain uniform
draws instead of libm-backed distributions.
"""

from __future__ import annotations

import calendar
import random
from dataclasses import dataclass
from datetime import date, datetime, timedelta, timezone
from decimal import Decimal

from .ingest import RecordBatch
from .records import (
    AppointmentRecord,
    AppointmentStatus,
    BalanceSnapshot,
    CapacityRecord,
    CapacityResource,
    Channel,
    ClaimRecord,
    ClaimStatus,
    Disposition,
    DivertEventRecord,
    DonorType,
    EncounterKind,
    EncounterRecord,
    FinancialTxn,
    IncidentCategory,
    IncidentRecord,
    ProcessEventRecord,
    ProcessStage,
    Respondent,
    Severity,
    StaffRecord,
    StaffRole,
    SurgeryRecord,
    SurveyCategory,
    SurveyResponse,
    TransplantCase,
    TransplantOutcome,
    TransplantStatus,
    TxnCategory,
    TxnType,
)

_MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 42
    months: int = 3
    daily_admissions_mean: float = 8.0
    departments: tuple[str, ...] = ("cardiology", "orthopedics", "general_medicine")
    doctors: int = 8
    no_show_rate: float = 0.1
    denial_rate: float = 0.15
    start_year: int = 2015
    start_month: int = 1

    def __post_init__(self):
        if not 0 <= self.seed <= _MAX_SEED:
            raise ValueError("seed must fit in 64 bits")
        if self.months <= 0:
            raise ValueError("months must be positive")
        if self.daily_admissions_mean <= 0:
            raise ValueError("daily_admissions_mean must be positive")
        if not self.departments:
            raise ValueError("departments must be non-empty")
        if self.doctors <= 0:
            raise ValueError("doctors must be positive")
        if not 0 <= self.no_show_rate <= 1:
            raise ValueError("no_show_rate must be in [0,1]")
        if not 0 <= self.denial_rate <= 1:
            raise ValueError("denial_rate must be in [0,1]")


# volume dials relative to daily_admissions_mean
_ER_SHARE = 0.12
_APPT_SHARE = 0.25
_SURGERY_SHARE = 0.15
_CLINICAL_TIMELINE_SHARE = 0.06
_NONCLINICAL_TIMELINE_SHARE = 0.25  # of encounters with a clinical timeline
_ER_TIMELINE_SHARE = 0.3
_SURVEY_SHARE = 0.08
_INPATIENT_CLAIM_SHARE = 0.4
_ER_CLAIM_SHARE = 0.25
_READMIT_SHARE = 0.08

_LOCATIONS = ("main_campus", "annex")
_DRG_CODES = ("drg_291", "drg_470", "drg_194", "drg_603", "drg_871")
_PROCEDURES = ("proc_cabg", "proc_hip", "proc_appendectomy", "proc_cataract")
_ORGANS = ("kidney", "liver", "heart")
_DENIAL_REASONS = ("missing_preauth", "coding_error", "not_covered", "late_submission")
_DIVERT_REASONS = ("er_full", "staff_shortage", "equipment_down")


def _binomial(rng: random.Random, mean: float) -> int:
    n = max(1, int(round(mean * 2)))
    p = mean / n
    return sum(1 for _ in range(n) if rng.random() < p)


def _ts(d: date, hour: int, minute: int) -> datetime:
    return datetime(d.year, d.month, d.day, hour, minute, tzinfo=timezone.utc)


class _Gen:
    def __init__(self, config: SynthConfig):
        self.cfg = config
        self.rng = random.Random(config.seed)
        self.records: list = []
        self.counters: dict[str, int] = {}
        first = date(config.start_year, config.start_month, 1)
        self.month_firsts: list[date] = []
        y, m = config.start_year, config.start_month
        for _ in range(config.months):
            self.month_firsts.append(date(y, m, 1))
            y, m = (y + 1, 1) if m == 12 else (y, m + 1)
        last_first = self.month_firsts[-1]
        self.horizon_end = date(
            last_first.year, last_first.month,
            calendar.monthrange(last_first.year, last_first.month)[1],
        )
        self.horizon_start = first
        self.doctor_ids = [f"doc_{i:03d}" for i in range(1, config.doctors + 1)]
        self.recent_discharges: list[tuple[str, datetime]] = []

    def next_id(self, prefix: str) -> str:
        self.counters[prefix] = self.counters.get(prefix, 0) + 1
        return f"{prefix}_{self.counters[prefix]:05d}"

    def run(self) -> list:
        self._staff()
        self._capacity()
        dept_weights = {d: 1.0 for d in self.cfg.departments}
        for first in self.month_firsts:
            days = calendar.monthrange(first.year, first.month)[1]
            for offset in range(days):
                day = first + timedelta(days=offset)
                self._inpatient_day(day)
                self._emergency_day(day)
                self._appointments_day(day)
            self._month_expenses(first, days)
            self._month_incidents(first, days)
            self._month_transplants(first, days)
            self._month_diverts(first, days)
            self._month_rn_surveys(first, days)
            self._balance_snapshot(first, days)
        del dept_weights
        return self.records

    # --- rosters and capacity -------------------------------------------------

    def _staff(self) -> None:
        rng = self.rng
        for i, doc in enumerate(self.doctor_ids):
            self.records.append(StaffRecord(
                staff_id=doc,
                role=StaffRole.DOCTOR,
                fte_fraction=Decimal(rng.choice(("1", "1", "0.75", "0.5"))),
                department=self.cfg.departments[i % len(self.cfg.departments)],
            ))
        for i in range(max(2, self.cfg.doctors // 3)):
            self.records.append(StaffRecord(
                staff_id=self.next_id("phy"),
                role=StaffRole.PHYSICIAN,
                fte_fraction=Decimal(rng.choice(("1", "0.75"))),
                department=rng.choice(self.cfg.departments),
            ))
        for i in range(self.cfg.doctors * 2):
            self.records.append(StaffRecord(
                staff_id=self.next_id("rn"),
                role=StaffRole.RN,
                fte_fraction=Decimal(rng.choice(("1", "1", "0.5"))),
                department=rng.choice(self.cfg.departments),
            ))
        for i in range(self.cfg.doctors):
            self.records.append(StaffRecord(
                staff_id=self.next_id("sup"),
                role=StaffRole.SUPPORT,
                fte_fraction=Decimal("1"),
                department=rng.choice(self.cfg.departments),
            ))

    def _capacity(self) -> None:
        rng = self.rng
        beds_per_dept = {d: rng.randrange(24, 40) for d in self.cfg.departments}
        day = self.horizon_start
        while day <= self.horizon_end:
            for dept in self.cfg.departments:
                self.records.append(CapacityRecord(
                    resource=CapacityResource.BEDS,
                    department=dept,
                    date=day,
                    available_units=beds_per_dept[dept],
                    available_minutes=None,
                ))
            self.records.append(CapacityRecord(
                resource=CapacityResource.OR_ROOMS,
                department=None,
                date=day,
                available_units=4,
                available_minutes=4 * 600,
            ))
            self.records.append(CapacityRecord(
                resource=CapacityResource.ER_BAYS,
                department=None,
                date=day,
                available_units=10,
                available_minutes=None,
            ))
            day += timedelta(days=1)

    # --- patient activity -------------------------------------------------------

    def _pick_patient(self, admit_ts: datetime) -> str:
        rng = self.rng
        cutoff = admit_ts - timedelta(days=25)
        candidates = [p for p, d_ts in self.recent_discharges if cutoff <= d_ts <= admit_ts]
        if candidates and rng.random() < _READMIT_SHARE:
            return rng.choice(candidates)
        return self.next_id("pat")

    def _inpatient_day(self, day: date) -> None:
        rng = self.rng
        n = _binomial(rng, self.cfg.daily_admissions_mean)
        for _ in range(n):
            admit = _ts(day, rng.randrange(0, 24), rng.choice((0, 15, 30, 45)))
            patient = self._pick_patient(admit)
            enc_id = self.next_id("enc")
            dept = rng.choice(self.cfg.departments)
            doctor = rng.choice(self.doctor_ids)
            location = rng.choice(_LOCATIONS)
            drg = rng.choice(_DRG_CODES) if rng.random() >= 0.12 else None
            planned = rng.random() < 0.3

            r = rng.random()
            if r < 0.01:
                los = timedelta(days=rng.randrange(31, 42), hours=rng.randrange(0, 24))
            elif r < 0.05:
                los = timedelta(days=rng.randrange(11, 20), hours=rng.randrange(0, 24))
            else:
                los = timedelta(days=rng.randrange(1, 10), hours=rng.randrange(0, 24))
            discharge: datetime | None = admit + los
            still_open = day >= self.horizon_end - timedelta(days=7) and rng.random() < 0.2
            if still_open:
                discharge = None
                disposition = Disposition.ADMITTED
            else:
                dr = rng.random()
                if dr < 0.92:
                    disposition = Disposition.DISCHARGED
                elif dr < 0.96:
                    disposition = Disposition.TRANSFERRED
                elif dr < 0.98:
                    disposition = Disposition.DECEASED
                else:
                    disposition = Disposition.OTHER

            self.records.append(EncounterRecord(
                encounter_id=enc_id, patient_id=patient, kind=EncounterKind.INPATIENT,
                admit_ts=admit, discharge_ts=discharge, department=dept,
                doctor_id=doctor, location=location, drg_code=drg,
                planned=planned, disposition=disposition,
            ))
            if discharge is not None:
                self.recent_discharges.append((patient, discharge))

            if rng.random() < _SURGERY_SHARE:
                self._surgery(enc_id, admit, discharge, doctor)
            if discharge is not None:
                self._inpatient_billing(enc_id, admit, discharge, los, dept, doctor, location)
                if rng.random() < _SURVEY_SHARE:
                    self._patient_survey(enc_id, discharge)
            if rng.random() < _CLINICAL_TIMELINE_SHARE:
                self._clinical_timeline(enc_id, admit, discharge)

    def _surgery(self, enc_id: str, admit: datetime, discharge: datetime | None, doctor: str) -> None:
        rng = self.rng
        scheduled = admit + timedelta(hours=rng.randrange(12, 48))
        if discharge is not None and scheduled >= discharge:
            scheduled = admit + (discharge - admit) / 2
            scheduled = scheduled.replace(minute=0, second=0, microsecond=0)
        actual = scheduled + timedelta(minutes=rng.randrange(0, 90))
        duration = timedelta(minutes=rng.randrange(30, 240))
        self.records.append(SurgeryRecord(
            surgery_id=self.next_id("sur"),
            encounter_id=enc_id,
            or_room_id=f"or_{rng.randrange(1, 5)}",
            scheduled_start=scheduled,
            actual_start=actual,
            actual_end=actual + duration,
            procedure_code=rng.choice(_PROCEDURES),
            surgeon_id=doctor,
            pre_op_minutes=rng.randrange(15, 120),
        ))

    def _inpatient_billing(
        self, enc_id: str, admit: datetime, discharge: datetime, los: timedelta,
        dept: str, doctor: str, location: str,
    ) -> None:
        rng = self.rng
        amount = 80_000 + los.days * rng.randrange(20_000, 60_000)
        route = rng.random()
        if route < _INPATIENT_CLAIM_SHARE:
            channel = Channel.INSURANCE
        elif route < _INPATIENT_CLAIM_SHARE + 0.2:
            channel = Channel.POS
        else:
            channel = Channel.BANK
        self.records.append(FinancialTxn(
            txn_id=self.next_id("txn"), ts=discharge, amount_minor=amount,
            category=TxnCategory.REVENUE, txn_type=TxnType.CHARGE,
            department=dept, location=location, doctor_id=doctor,
            encounter_id=enc_id, channel=channel, received_ts=None, deposited_ts=None,
        ))
        if channel is Channel.INSURANCE:
            self._claim(enc_id, discharge, amount, dept, doctor, location)
        elif channel is Channel.POS:
            self._pos_payment(enc_id, discharge, amount, dept, doctor, location)
        elif rng.random() < 0.6:
            self.records.append(FinancialTxn(
                txn_id=self.next_id("txn"), ts=discharge + timedelta(days=rng.randrange(1, 10)),
                amount_minor=amount, category=TxnCategory.REVENUE, txn_type=TxnType.PAYMENT,
                department=dept, location=location, doctor_id=doctor,
                encounter_id=enc_id, channel=Channel.BANK, received_ts=None, deposited_ts=None,
            ))

    def _pos_payment(
        self, enc_id: str | None, received: datetime, amount: int,
        dept: str, doctor: str | None, location: str,
    ) -> None:
        rng = self.rng
        if rng.random() < 0.93:
            deposited = received + timedelta(hours=rng.randrange(2, 30))
        else:
            deposited = received + timedelta(days=rng.randrange(2, 5))
        self.records.append(FinancialTxn(
            txn_id=self.next_id("txn"), ts=received, amount_minor=amount,
            category=TxnCategory.REVENUE, txn_type=TxnType.PAYMENT,
            department=dept, location=location, doctor_id=doctor,
            encounter_id=enc_id, channel=Channel.POS,
            received_ts=received, deposited_ts=deposited,
        ))

    def _claim(
        self, enc_id: str, discharge: datetime, amount: int,
        dept: str, doctor: str, location: str,
    ) -> None:
        rng = self.rng
        billed = discharge + timedelta(days=rng.randrange(1, 6), hours=rng.randrange(0, 12))
        submitted = billed + timedelta(days=1)
        if rng.random() < self.cfg.denial_rate:
            status = ClaimStatus.DENIED
            paid = 0
            reason = rng.choice(_DENIAL_REASONS)
        else:
            reason = None
            v = rng.random()
            if v < 0.7:
                status, paid = ClaimStatus.PAID, amount
            elif v < 0.85:
                status, paid = ClaimStatus.PARTIAL, amount * rng.randrange(50, 90) // 100
            else:
                status, paid = ClaimStatus.OPEN, 0
        self.records.append(ClaimRecord(
            claim_id=self.next_id("clm"), encounter_id=enc_id, discharge_ts=discharge,
            billed_ts=billed, submitted_ts=submitted, status=status,
            amount_billed_minor=amount, amount_paid_minor=paid, denial_reason=reason,
        ))
        if paid > 0:
            self.records.append(FinancialTxn(
                txn_id=self.next_id("txn"), ts=billed + timedelta(days=rng.randrange(10, 45)),
                amount_minor=paid, category=TxnCategory.REVENUE, txn_type=TxnType.PAYMENT,
                department=dept, location=location, doctor_id=doctor,
                encounter_id=enc_id, channel=Channel.INSURANCE,
                received_ts=None, deposited_ts=None,
            ))
        if status is ClaimStatus.DENIED and rng.random() < 0.4:
            self.records.append(FinancialTxn(
                txn_id=self.next_id("txn"), ts=billed + timedelta(days=rng.randrange(20, 60)),
                amount_minor=amount, category=TxnCategory.REVENUE, txn_type=TxnType.WRITE_OFF,
                department=dept, location=location, doctor_id=doctor,
                encounter_id=enc_id, channel=None, received_ts=None, deposited_ts=None,
            ))

    def _clinical_timeline(self, enc_id: str, admit: datetime, discharge: datetime | None) -> None:
        rng = self.rng
        ts = admit
        lags = (
            (ProcessStage.INITIAL_ASSESSMENT, (10, 40)),
            (ProcessStage.CONSULTANT_INFORMED, (10, 30)),
            (ProcessStage.BED_ALLOCATED, (15, 60)),
            (ProcessStage.FIRST_INWARD_ASSESSMENT, (30, 120)),
            (ProcessStage.RESULTS_REPORTED, (60, 360)),
            (ProcessStage.DIAGNOSIS, (30, 120)),
            (ProcessStage.TREATMENT_STARTED, (15, 90)),
        )
        for stage, (lo, hi) in lags:
            ts = ts + timedelta(minutes=rng.randrange(lo, hi))
            self.records.append(ProcessEventRecord(encounter_id=enc_id, stage=stage, ts=ts))
        if rng.random() < _NONCLINICAL_TIMELINE_SHARE:
            preauth = admit + timedelta(minutes=rng.randrange(5, 30))
            counselling = preauth + timedelta(minutes=rng.randrange(30, 90))
            medication = counselling + timedelta(minutes=rng.randrange(60, 180))
            self.records.append(ProcessEventRecord(enc_id, ProcessStage.PREAUTH_DONE, preauth))
            self.records.append(ProcessEventRecord(enc_id, ProcessStage.COUNSELLING_DONE, counselling))
            self.records.append(ProcessEventRecord(enc_id, ProcessStage.MEDICATION_GIVEN, medication))
            if discharge is not None:
                billed = discharge - timedelta(hours=2)
                paid = discharge + timedelta(hours=rng.randrange(1, 72))
                self.records.append(ProcessEventRecord(enc_id, ProcessStage.DISCHARGE_BILLED, billed))
                self.records.append(ProcessEventRecord(enc_id, ProcessStage.PAYMENT_DONE, paid))

    def _patient_survey(self, enc_id: str, discharge: datetime) -> None:
        rng = self.rng
        categories = rng.sample(
            (SurveyCategory.PATIENT_CARE, SurveyCategory.CUSTOMER_SERVICE,
             SurveyCategory.OVERALL, SurveyCategory.RECOMMEND, SurveyCategory.NURSING),
            rng.choice((1, 2)),
        )
        for cat in categories:
            self.records.append(SurveyResponse(
                response_id=self.next_id("srv"),
                encounter_id=enc_id,
                ts=discharge + timedelta(days=rng.randrange(1, 7)),
                respondent=Respondent.PATIENT,
                category=cat,
                question_code=f"q_{cat.value}",
                score=rng.choice((2, 3, 3, 4, 4, 4, 5, 5)),
            ))

    def _emergency_day(self, day: date) -> None:
        rng = self.rng
        n = _binomial(rng, self.cfg.daily_admissions_mean * _ER_SHARE)
        for _ in range(n):
            admit = _ts(day, rng.randrange(0, 24), rng.choice((0, 10, 20, 30, 40, 50)))
            enc_id = self.next_id("enc")
            patient = self._pick_patient(admit)
            doctor = rng.choice(self.doctor_ids)
            location = rng.choice(_LOCATIONS)
            admitted = rng.random() < 0.3
            discharge = admit + timedelta(hours=rng.randrange(2, 20))
            self.records.append(EncounterRecord(
                encounter_id=enc_id, patient_id=patient, kind=EncounterKind.EMERGENCY,
                admit_ts=admit, discharge_ts=discharge, department="emergency",
                doctor_id=doctor, location=location, drg_code=None,
                planned=False,
                disposition=Disposition.ADMITTED if admitted else Disposition.DISCHARGED,
            ))
            self.recent_discharges.append((patient, discharge))
            amount = rng.randrange(15_000, 80_000)
            route = rng.random()
            channel = Channel.INSURANCE if route < _ER_CLAIM_SHARE else (
                Channel.POS if route < _ER_CLAIM_SHARE + 0.35 else Channel.BANK
            )
            self.records.append(FinancialTxn(
                txn_id=self.next_id("txn"), ts=discharge, amount_minor=amount,
                category=TxnCategory.REVENUE, txn_type=TxnType.CHARGE,
                department="emergency", location=location, doctor_id=doctor,
                encounter_id=enc_id, channel=channel, received_ts=None, deposited_ts=None,
            ))
            if channel is Channel.INSURANCE:
                self._claim(enc_id, discharge, amount, "emergency", doctor, location)
            elif channel is Channel.POS:
                self._pos_payment(enc_id, discharge, amount, "emergency", doctor, location)
            if rng.random() < _ER_TIMELINE_SHARE:
                assessed = admit + timedelta(minutes=rng.randrange(5, 20))
                treated = assessed + timedelta(minutes=rng.randrange(10, 110))
                self.records.append(ProcessEventRecord(enc_id, ProcessStage.INITIAL_ASSESSMENT, assessed))
                self.records.append(ProcessEventRecord(enc_id, ProcessStage.TREATMENT_STARTED, treated))
                if admitted:
                    self.records.append(ProcessEventRecord(
                        enc_id, ProcessStage.BED_ALLOCATED,
                        treated + timedelta(minutes=rng.randrange(30, 180)),
                    ))

    def _appointments_day(self, day: date) -> None:
        rng = self.rng
        n = _binomial(rng, self.cfg.daily_admissions_mean * _APPT_SHARE)
        for _ in range(n):
            scheduled = _ts(day, rng.randrange(8, 17), rng.choice((0, 15, 30, 45)))
            dept = rng.choice(self.cfg.departments)
            doctor = rng.choice(self.doctor_ids)
            u = rng.random()
            if u < self.cfg.no_show_rate:
                status, arrival, seen = AppointmentStatus.NO_SHOW, None, None
            elif u < self.cfg.no_show_rate + 0.05:
                status, arrival, seen = AppointmentStatus.CANCELLED, None, None
            else:
                status = AppointmentStatus.COMPLETED
                arrival = scheduled + timedelta(minutes=rng.randrange(-10, 20))
                seen = arrival + timedelta(minutes=rng.randrange(5, 50))
            appt_id = self.next_id("app")
            self.records.append(AppointmentRecord(
                appointment_id=appt_id,
                patient_id=self.next_id("pat"),
                scheduled_ts=scheduled, arrival_ts=arrival, seen_ts=seen,
                status=status, department=dept, doctor_id=doctor,
                rvu=Decimal(rng.choice(("0.5", "1.0", "1.5", "2.0", "2.5"))),
            ))
            if status is AppointmentStatus.COMPLETED:
                amount = rng.randrange(3_000, 15_000)
                location = rng.choice(_LOCATIONS)
                pos = rng.random() < 0.3
                self.records.append(FinancialTxn(
                    txn_id=self.next_id("txn"), ts=seen, amount_minor=amount,
                    category=TxnCategory.REVENUE, txn_type=TxnType.CHARGE,
                    department=dept, location=location, doctor_id=doctor,
                    encounter_id=None, channel=Channel.POS if pos else Channel.BANK,
                    received_ts=None, deposited_ts=None,
                ))
                if pos:
                    self._pos_payment(None, seen, amount, dept, doctor, location)

    # --- monthly blocks ------------------------------------------------------

    def _month_expenses(self, first: date, days: int) -> None:
        rng = self.rng
        mid = _ts(first + timedelta(days=14), 12, 0)
        for dept in self.cfg.departments:
            for category, lo, hi in (
                (TxnCategory.OPERATING_EXPENSE, 9_000_000, 15_000_000),
                (TxnCategory.FTE_COST, 6_000_000, 10_000_000),
            ):
                self.records.append(FinancialTxn(
                    txn_id=self.next_id("txn"), ts=mid, amount_minor=rng.randrange(lo, hi),
                    category=category, txn_type=TxnType.CHARGE,
                    department=dept, location="main_campus", doctor_id=None,
                    encounter_id=None, channel=None, received_ts=None, deposited_ts=None,
                ))
        for category, lo, hi in (
            (TxnCategory.ADMIN_COST, 3_000_000, 6_000_000),
            (TxnCategory.OVERTIME_COST, 1_000_000, 2_500_000),
            (TxnCategory.REFERRAL_COMMISSION, 500_000, 1_500_000),
            (TxnCategory.INTEREST, 800_000, 1_400_000),
            (TxnCategory.TAX, 1_000_000, 2_000_000),
            (TxnCategory.DEPRECIATION, 1_500_000, 2_500_000),
            (TxnCategory.AMORTIZATION, 300_000, 600_000),
        ):
            self.records.append(FinancialTxn(
                txn_id=self.next_id("txn"), ts=mid, amount_minor=rng.randrange(lo, hi),
                category=category, txn_type=TxnType.CHARGE,
                department="finance", location="main_campus", doctor_id=None,
                encounter_id=None, channel=None, received_ts=None, deposited_ts=None,
            ))

    def _month_incidents(self, first: date, days: int) -> None:
        rng = self.rng
        for _ in range(_binomial(rng, 5)):
            ts = _ts(first + timedelta(days=rng.randrange(0, days)), rng.randrange(8, 20), 0)
            resolved = ts + timedelta(days=rng.randrange(1, 20)) if rng.random() < 0.8 else None
            self.records.append(IncidentRecord(
                incident_id=self.next_id("inc"), ts=ts,
                department=rng.choice(self.cfg.departments + ("emergency",)),
                category=rng.choice(tuple(IncidentCategory)),
                severity=rng.choice(tuple(Severity)),
                resolved_ts=resolved,
            ))

    def _month_transplants(self, first: date, days: int) -> None:
        rng = self.rng
        horizon = datetime(self.horizon_end.year, self.horizon_end.month,
                           self.horizon_end.day, 23, 59, tzinfo=timezone.utc)
        for _ in range(2):
            listed = _ts(first + timedelta(days=rng.randrange(0, days)), rng.randrange(6, 20), 0)
            organ = rng.choice(_ORGANS)
            r = rng.random()
            wait = timedelta(days=rng.randrange(15, 220))
            if r < 0.05:
                status, t_ts, cit, donor, outcome = TransplantStatus.REMOVED, None, None, None, None
            elif listed + wait <= horizon:
                status = TransplantStatus.TRANSPLANTED
                t_ts = listed + wait
                cit = rng.randrange(300, 700)
                donor = DonorType.LIVING if rng.random() < 0.3 else DonorType.DECEASED
                outcome = TransplantOutcome.SUCCESS if rng.random() < 0.88 else TransplantOutcome.FAILURE
            else:
                recent = (horizon - listed) <= timedelta(days=45)
                status = TransplantStatus.NEW if recent else TransplantStatus.ACTIVE
                t_ts, cit, donor, outcome = None, None, None, None
            self.records.append(TransplantCase(
                case_id=self.next_id("tpl"), organ=organ, listed_ts=listed,
                status=status, transplant_ts=t_ts, cold_ischemia_minutes=cit,
                donor_type=donor, outcome=outcome,
            ))

    def _month_diverts(self, first: date, days: int) -> None:
        rng = self.rng
        for _ in range(rng.randrange(1, 4)):
            self.records.append(DivertEventRecord(
                divert_id=self.next_id("div"),
                start_ts=_ts(first + timedelta(days=rng.randrange(0, days)), rng.randrange(0, 24), 0),
                duration_minutes=rng.randrange(30, 240),
                reason=rng.choice(_DIVERT_REASONS),
            ))

    def _month_rn_surveys(self, first: date, days: int) -> None:
        rng = self.rng
        ts = _ts(first + timedelta(days=days - 1), 12, 0)
        for _ in range(6):
            self.records.append(SurveyResponse(
                response_id=self.next_id("srv"), encounter_id=None, ts=ts,
                respondent=Respondent.RN, category=SurveyCategory.NURSING,
                question_code="q_rn_satisfaction",
                score=rng.choice((2, 3, 3, 4, 4, 5)),
            ))

    def _balance_snapshot(self, first: date, days: int) -> None:
        rng = self.rng
        as_of = first + timedelta(days=days - 1)
        month_index = self.month_firsts.index(first)
        base = 60_000_000 + month_index * 3_000_000
        cash = base + rng.randrange(0, 4_000_000)
        debtors = 40_000_000 + rng.randrange(0, 25_000_000)
        current_assets = cash + debtors + rng.randrange(2_000_000, 6_000_000)
        current_liabilities = rng.randrange(9_000_000, 18_000_000)
        total_liabilities = current_liabilities + 60_000_000
        equity = 150_000_000 + month_index * 3_000_000 + rng.randrange(0, 5_000_000)
        total_assets = total_liabilities + equity
        self.records.append(BalanceSnapshot(
            as_of_date=as_of,
            cash_minor=cash,
            current_assets_minor=current_assets,
            current_liabilities_minor=current_liabilities,
            total_liabilities_minor=total_liabilities,
            shareholders_equity_minor=equity,
            total_assets_minor=total_assets,
            capital_employed_minor=total_assets - current_liabilities,
            debtors_minor=debtors,
            shares_outstanding=1_000_000,
        ))


def generate_synthetic(config: SynthConfig) -> RecordBatch:
    """Deterministic batch; all records pass validation and cross-references
    resolve (surgeries, claims, and process events point at real encounters)."""
    records = _Gen(config).run()
    ingested_at = datetime(config.start_year, config.start_month, 1, tzinfo=timezone.utc)
    return RecordBatch(tuple(records), source_name=f"synthetic(seed={config.seed})", ingested_at=ingested_at)
