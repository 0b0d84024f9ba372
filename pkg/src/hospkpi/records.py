"""Domain records: every event type the engine ingests.

All records are immutable dataclasses. Structural problems (missing fields,
unknown enum members, unparseable timestamps) are rejected at parse time;
value-range and cross-field rules are reported by :func:`validate_record`
as data violations, not exceptions.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from datetime import date, datetime
from decimal import Decimal, InvalidOperation
from enum import Enum
from typing import Optional

from .jsonio import parse_date, parse_ts


class RecordParseError(ValueError):
    """A line or object could not be turned into a typed record."""


class EncounterStillOpen(ValueError):
    """Raised when an operation needs a discharge timestamp that is not set."""


class EncounterKind(str, Enum):
    INPATIENT = "inpatient"
    OUTPATIENT = "outpatient"
    EMERGENCY = "emergency"


class Disposition(str, Enum):
    DISCHARGED = "discharged"
    ADMITTED = "admitted"
    TRANSFERRED = "transferred"
    DECEASED = "deceased"
    OTHER = "other"


class AppointmentStatus(str, Enum):
    COMPLETED = "completed"
    NO_SHOW = "no_show"
    CANCELLED = "cancelled"


class ProcessStage(str, Enum):
    INITIAL_ASSESSMENT = "initial_assessment"
    CONSULTANT_INFORMED = "consultant_informed"
    BED_ALLOCATED = "bed_allocated"
    FIRST_INWARD_ASSESSMENT = "first_inward_assessment"
    RESULTS_REPORTED = "results_reported"
    DIAGNOSIS = "diagnosis"
    TREATMENT_STARTED = "treatment_started"
    PREAUTH_DONE = "preauth_done"
    COUNSELLING_DONE = "counselling_done"
    MEDICATION_GIVEN = "medication_given"
    DISCHARGE_BILLED = "discharge_billed"
    PAYMENT_DONE = "payment_done"


class TxnCategory(str, Enum):
    REVENUE = "revenue"
    OPERATING_EXPENSE = "operating_expense"
    FTE_COST = "fte_cost"
    ADMIN_COST = "admin_cost"
    OVERTIME_COST = "overtime_cost"
    REFERRAL_COMMISSION = "referral_commission"
    INTEREST = "interest"
    TAX = "tax"
    DEPRECIATION = "depreciation"
    AMORTIZATION = "amortization"


class TxnType(str, Enum):
    CHARGE = "charge"
    PAYMENT = "payment"
    WRITE_OFF = "write_off"
    DEPOSIT = "deposit"


class Channel(str, Enum):
    POS = "pos"
    BANK = "bank"
    INSURANCE = "insurance"


class ClaimStatus(str, Enum):
    OPEN = "open"
    PAID = "paid"
    PARTIAL = "partial"
    DENIED = "denied"


class Respondent(str, Enum):
    PATIENT = "patient"
    RN = "rn"


class SurveyCategory(str, Enum):
    PATIENT_CARE = "patient_care"
    CUSTOMER_SERVICE = "customer_service"
    NURSING = "nursing"
    OVERALL = "overall"
    RECOMMEND = "recommend"


class IncidentCategory(str, Enum):
    PROFESSIONAL_CONDUCT = "professional_conduct"
    COMMUNICATION = "communication"
    TREATMENT_CARE = "treatment_care"
    WAIT_TIME = "wait_time"
    OTHER = "other"


class Severity(str, Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


class TransplantStatus(str, Enum):
    ACTIVE = "active"
    NEW = "new"
    TRANSPLANTED = "transplanted"
    REMOVED = "removed"


class DonorType(str, Enum):
    LIVING = "living"
    DECEASED = "deceased"


class TransplantOutcome(str, Enum):
    SUCCESS = "success"
    FAILURE = "failure"


class CapacityResource(str, Enum):
    BEDS = "beds"
    OR_ROOMS = "or_rooms"
    ER_BAYS = "er_bays"


class StaffRole(str, Enum):
    DOCTOR = "doctor"
    PHYSICIAN = "physician"
    RN = "rn"
    SUPPORT = "support"


@dataclass(frozen=True)
class EncounterRecord:
    encounter_id: str
    patient_id: str
    kind: EncounterKind
    admit_ts: datetime
    discharge_ts: Optional[datetime]
    department: str
    doctor_id: str
    location: str
    drg_code: Optional[str]
    planned: bool
    disposition: Disposition


@dataclass(frozen=True)
class SurgeryRecord:
    surgery_id: str
    encounter_id: str
    or_room_id: str
    scheduled_start: datetime
    actual_start: datetime
    actual_end: datetime
    procedure_code: str
    surgeon_id: str
    pre_op_minutes: int


@dataclass(frozen=True)
class AppointmentRecord:
    appointment_id: str
    patient_id: str
    scheduled_ts: datetime
    arrival_ts: Optional[datetime]
    seen_ts: Optional[datetime]
    status: AppointmentStatus
    department: str
    doctor_id: str
    rvu: Decimal


@dataclass(frozen=True)
class ProcessEventRecord:
    encounter_id: str
    stage: ProcessStage
    ts: datetime


@dataclass(frozen=True)
class FinancialTxn:
    txn_id: str
    ts: datetime
    amount_minor: int
    category: TxnCategory
    txn_type: TxnType
    department: str
    location: str
    doctor_id: Optional[str]
    encounter_id: Optional[str]
    channel: Optional[Channel]
    received_ts: Optional[datetime]
    deposited_ts: Optional[datetime]


@dataclass(frozen=True)
class ClaimRecord:
    claim_id: str
    encounter_id: str
    discharge_ts: datetime
    billed_ts: Optional[datetime]
    submitted_ts: Optional[datetime]
    status: ClaimStatus
    amount_billed_minor: int
    amount_paid_minor: int
    denial_reason: Optional[str]


@dataclass(frozen=True)
class BalanceSnapshot:
    as_of_date: date
    cash_minor: int
    current_assets_minor: int
    current_liabilities_minor: int
    total_liabilities_minor: int
    shareholders_equity_minor: int
    total_assets_minor: int
    capital_employed_minor: int
    debtors_minor: int
    shares_outstanding: int


@dataclass(frozen=True)
class SurveyResponse:
    response_id: str
    encounter_id: Optional[str]
    ts: datetime
    respondent: Respondent
    category: SurveyCategory
    question_code: str
    score: int


@dataclass(frozen=True)
class IncidentRecord:
    incident_id: str
    ts: datetime
    department: str
    category: IncidentCategory
    severity: Severity
    resolved_ts: Optional[datetime]


@dataclass(frozen=True)
class TransplantCase:
    case_id: str
    organ: str
    listed_ts: datetime
    status: TransplantStatus
    transplant_ts: Optional[datetime]
    cold_ischemia_minutes: Optional[int]
    donor_type: Optional[DonorType]
    outcome: Optional[TransplantOutcome]


@dataclass(frozen=True)
class CapacityRecord:
    resource: CapacityResource
    department: Optional[str]
    date: date
    available_units: int
    available_minutes: Optional[int]


@dataclass(frozen=True)
class StaffRecord:
    staff_id: str
    role: StaffRole
    fte_fraction: Decimal
    department: str


@dataclass(frozen=True)
class DivertEventRecord:
    divert_id: str
    start_ts: datetime
    duration_minutes: int
    reason: str


Record = (
    EncounterRecord
    | SurgeryRecord
    | AppointmentRecord
    | ProcessEventRecord
    | FinancialTxn
    | ClaimRecord
    | BalanceSnapshot
    | SurveyResponse
    | IncidentRecord
    | TransplantCase
    | CapacityRecord
    | StaffRecord
    | DivertEventRecord
)

TYPE_TAGS: dict[type, str] = {
    EncounterRecord: "encounter",
    SurgeryRecord: "surgery",
    AppointmentRecord: "appointment",
    ProcessEventRecord: "process_event",
    FinancialTxn: "txn",
    ClaimRecord: "claim",
    BalanceSnapshot: "balance",
    SurveyResponse: "survey",
    IncidentRecord: "incident",
    TransplantCase: "transplant",
    CapacityRecord: "capacity",
    StaffRecord: "staff",
    DivertEventRecord: "divert",
}

TAG_TYPES: dict[str, type] = {tag: cls for cls, tag in TYPE_TAGS.items()}


def record_tag(record: Record) -> str:
    return TYPE_TAGS[type(record)]


# ---------------------------------------------------------------------------
# field conversion (shared by JSONL and CSV parsing)

def _conv_str(v):
    if isinstance(v, str):
        return v
    raise ValueError(f"expected string, got {type(v).__name__}")


def _conv_ts(v):
    if isinstance(v, datetime):
        return v
    if isinstance(v, str):
        try:
            return parse_ts(v)
        except ValueError as exc:
            raise ValueError(f"bad timestamp {v!r}: {exc}") from None
    raise ValueError(f"expected ISO timestamp string, got {type(v).__name__}")


def _conv_date(v):
    if isinstance(v, date) and not isinstance(v, datetime):
        return v
    if isinstance(v, str):
        try:
            return parse_date(v)
        except ValueError:
            raise ValueError(f"bad date {v!r}") from None
    raise ValueError(f"expected ISO date string, got {type(v).__name__}")


def _conv_int(v):
    if isinstance(v, bool):
        raise ValueError("expected integer, got boolean")
    if isinstance(v, int):
        return v
    if isinstance(v, str) and v.strip().lstrip("+-").isdigit():
        return int(v)
    raise ValueError(f"expected integer, got {v!r}")


def _conv_bool(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, str) and v.lower() in ("true", "false"):
        return v.lower() == "true"
    raise ValueError(f"expected boolean, got {v!r}")


def _conv_decimal(v):
    if isinstance(v, bool):
        raise ValueError("expected number, got boolean")
    if isinstance(v, (int, Decimal)):
        return Decimal(v)
    if isinstance(v, str):
        try:
            return Decimal(v)
        except InvalidOperation:
            raise ValueError(f"bad decimal {v!r}") from None
    if isinstance(v, float):
        return Decimal(str(v))
    raise ValueError(f"expected number, got {type(v).__name__}")


def _conv_enum(enum_cls):
    def conv(v):
        if isinstance(v, enum_cls):
            return v
        if isinstance(v, str):
            try:
                return enum_cls(v)
            except ValueError:
                allowed = ", ".join(m.value for m in enum_cls)
                raise ValueError(f"{v!r} not one of: {allowed}") from None
        raise ValueError(f"expected one of {enum_cls.__name__}, got {type(v).__name__}")

    return conv


_CONVERTERS = {
    EncounterRecord: {
        "encounter_id": _conv_str, "patient_id": _conv_str,
        "kind": _conv_enum(EncounterKind), "admit_ts": _conv_ts, "discharge_ts": _conv_ts,
        "department": _conv_str, "doctor_id": _conv_str, "location": _conv_str,
        "drg_code": _conv_str, "planned": _conv_bool, "disposition": _conv_enum(Disposition),
    },
    SurgeryRecord: {
        "surgery_id": _conv_str, "encounter_id": _conv_str, "or_room_id": _conv_str,
        "scheduled_start": _conv_ts, "actual_start": _conv_ts, "actual_end": _conv_ts,
        "procedure_code": _conv_str, "surgeon_id": _conv_str, "pre_op_minutes": _conv_int,
    },
    AppointmentRecord: {
        "appointment_id": _conv_str, "patient_id": _conv_str, "scheduled_ts": _conv_ts,
        "arrival_ts": _conv_ts, "seen_ts": _conv_ts, "status": _conv_enum(AppointmentStatus),
        "department": _conv_str, "doctor_id": _conv_str, "rvu": _conv_decimal,
    },
    ProcessEventRecord: {
        "encounter_id": _conv_str, "stage": _conv_enum(ProcessStage), "ts": _conv_ts,
    },
    FinancialTxn: {
        "txn_id": _conv_str, "ts": _conv_ts, "amount_minor": _conv_int,
        "category": _conv_enum(TxnCategory), "txn_type": _conv_enum(TxnType),
        "department": _conv_str, "location": _conv_str, "doctor_id": _conv_str,
        "encounter_id": _conv_str, "channel": _conv_enum(Channel),
        "received_ts": _conv_ts, "deposited_ts": _conv_ts,
    },
    ClaimRecord: {
        "claim_id": _conv_str, "encounter_id": _conv_str, "discharge_ts": _conv_ts,
        "billed_ts": _conv_ts, "submitted_ts": _conv_ts, "status": _conv_enum(ClaimStatus),
        "amount_billed_minor": _conv_int, "amount_paid_minor": _conv_int,
        "denial_reason": _conv_str,
    },
    BalanceSnapshot: {
        "as_of_date": _conv_date, "cash_minor": _conv_int, "current_assets_minor": _conv_int,
        "current_liabilities_minor": _conv_int, "total_liabilities_minor": _conv_int,
        "shareholders_equity_minor": _conv_int, "total_assets_minor": _conv_int,
        "capital_employed_minor": _conv_int, "debtors_minor": _conv_int,
        "shares_outstanding": _conv_int,
    },
    SurveyResponse: {
        "response_id": _conv_str, "encounter_id": _conv_str, "ts": _conv_ts,
        "respondent": _conv_enum(Respondent), "category": _conv_enum(SurveyCategory),
        "question_code": _conv_str, "score": _conv_int,
    },
    IncidentRecord: {
        "incident_id": _conv_str, "ts": _conv_ts, "department": _conv_str,
        "category": _conv_enum(IncidentCategory), "severity": _conv_enum(Severity),
        "resolved_ts": _conv_ts,
    },
    TransplantCase: {
        "case_id": _conv_str, "organ": _conv_str, "listed_ts": _conv_ts,
        "status": _conv_enum(TransplantStatus), "transplant_ts": _conv_ts,
        "cold_ischemia_minutes": _conv_int, "donor_type": _conv_enum(DonorType),
        "outcome": _conv_enum(TransplantOutcome),
    },
    CapacityRecord: {
        "resource": _conv_enum(CapacityResource), "department": _conv_str,
        "date": _conv_date, "available_units": _conv_int, "available_minutes": _conv_int,
    },
    StaffRecord: {
        "staff_id": _conv_str, "role": _conv_enum(StaffRole),
        "fte_fraction": _conv_decimal, "department": _conv_str,
    },
    DivertEventRecord: {
        "divert_id": _conv_str, "start_ts": _conv_ts,
        "duration_minutes": _conv_int, "reason": _conv_str,
    },
}

_OPTIONAL_FIELDS = {
    EncounterRecord: {"discharge_ts", "drg_code"},
    SurgeryRecord: set(),
    AppointmentRecord: {"arrival_ts", "seen_ts"},
    ProcessEventRecord: set(),
    FinancialTxn: {"doctor_id", "encounter_id", "channel", "received_ts", "deposited_ts"},
    ClaimRecord: {"billed_ts", "submitted_ts", "denial_reason"},
    BalanceSnapshot: set(),
    SurveyResponse: {"encounter_id"},
    IncidentRecord: {"resolved_ts"},
    TransplantCase: {"transplant_ts", "cold_ischemia_minutes", "donor_type", "outcome"},
    CapacityRecord: {"department", "available_minutes"},
    StaffRecord: set(),
    DivertEventRecord: set(),
}


def record_from_dict(tag: str, data: dict) -> Record:
    """Build a typed record from a plain dict (JSONL object or CSV row)."""
    cls = TAG_TYPES.get(tag)
    if cls is None:
        raise RecordParseError(f"unknown record type tag {tag!r}")
    converters = _CONVERTERS[cls]
    optional = _OPTIONAL_FIELDS[cls]
    kwargs = {}
    for name, conv in converters.items():
        value = data.get(name)
        if value is None or value == "":
            if name in optional:
                kwargs[name] = None
                continue
            raise RecordParseError(f"{tag}: missing required field {name!r}")
        try:
            kwargs[name] = conv(value)
        except ValueError as exc:
            raise RecordParseError(f"{tag}: field {name!r}: {exc}") from None
    unknown = set(data) - set(converters) - {"type"}
    if unknown:
        raise RecordParseError(f"{tag}: unknown fields {sorted(unknown)}")
    return cls(**kwargs)


def record_to_dict(record: Record) -> dict:
    """Plain dict with the ``type`` tag first; enum values as strings."""
    out: dict = {"type": record_tag(record)}
    for f in fields(record):
        value = getattr(record, f.name)
        if isinstance(value, Enum):
            value = value.value
        out[f.name] = value
    return out


# ---------------------------------------------------------------------------
# invariant validation

@dataclass(frozen=True)
class Violation:
    field_path: str
    message: str


def _require_ids(record, names, out) -> None:
    for name in names:
        if not getattr(record, name):
            out.append(Violation(name, f"{name} must be non-empty"))


def _validate_encounter(r: EncounterRecord, out: list[Violation]) -> None:
    _require_ids(r, ("encounter_id", "patient_id", "doctor_id"), out)
    if r.discharge_ts is not None and r.discharge_ts < r.admit_ts:
        out.append(Violation("discharge_ts", "discharge_ts earlier than admit_ts"))


def _validate_surgery(r: SurgeryRecord, out: list[Violation]) -> None:
    _require_ids(r, ("surgery_id", "encounter_id", "surgeon_id"), out)
    if r.actual_end < r.actual_start:
        out.append(Violation("actual_end", "actual_end earlier than actual_start"))
    if r.pre_op_minutes < 0:
        out.append(Violation("pre_op_minutes", "pre_op_minutes must be >= 0"))


def _validate_appointment(r: AppointmentRecord, out: list[Violation]) -> None:
    _require_ids(r, ("appointment_id", "patient_id", "doctor_id"), out)
    if r.status is AppointmentStatus.COMPLETED:
        if r.arrival_ts is None:
            out.append(Violation("arrival_ts", "completed appointment without arrival_ts"))
        if r.seen_ts is None:
            out.append(Violation("seen_ts", "completed appointment without seen_ts"))
        if r.arrival_ts is not None and r.seen_ts is not None and r.seen_ts < r.arrival_ts:
            out.append(Violation("seen_ts", "seen_ts earlier than arrival_ts"))
    if r.status is AppointmentStatus.NO_SHOW and r.seen_ts is not None:
        out.append(Violation("seen_ts", "no_show appointment cannot have seen_ts"))
    if r.rvu < 0:
        out.append(Violation("rvu", "rvu must be >= 0"))


def _validate_process_event(r: ProcessEventRecord, out: list[Violation]) -> None:
    _require_ids(r, ("encounter_id",), out)


def _validate_txn(r: FinancialTxn, out: list[Violation]) -> None:
    _require_ids(r, ("txn_id",), out)
    if r.amount_minor == 0:
        out.append(Violation("amount_minor", "amount_minor must be non-zero"))
    if r.deposited_ts is not None and r.received_ts is not None and r.deposited_ts < r.received_ts:
        out.append(Violation("deposited_ts", "deposited_ts earlier than received_ts"))


def _validate_claim(r: ClaimRecord, out: list[Violation]) -> None:
    _require_ids(r, ("claim_id", "encounter_id"), out)
    if r.amount_billed_minor <= 0:
        out.append(Violation("amount_billed_minor", "amount_billed_minor must be positive"))
    if r.amount_paid_minor < 0:
        out.append(Violation("amount_paid_minor", "amount_paid_minor must be >= 0"))
    if r.amount_paid_minor > r.amount_billed_minor:
        out.append(Violation("amount_paid_minor", "amount_paid_minor exceeds amount_billed_minor"))
    if r.status is ClaimStatus.DENIED and not r.denial_reason:
        out.append(Violation("denial_reason", "denied claim requires denial_reason"))


def _validate_balance(r: BalanceSnapshot, out: list[Violation]) -> None:
    if r.shares_outstanding <= 0:
        out.append(Violation("shares_outstanding", "shares_outstanding must be positive"))


def _validate_survey(r: SurveyResponse, out: list[Violation]) -> None:
    _require_ids(r, ("response_id",), out)
    if not 1 <= r.score <= 5:
        out.append(Violation("score", "score out of [1,5]"))
    if r.respondent is Respondent.RN and r.category is not SurveyCategory.NURSING:
        out.append(Violation("category", "rn responses must be category nursing"))


def _validate_incident(r: IncidentRecord, out: list[Violation]) -> None:
    _require_ids(r, ("incident_id",), out)
    if r.resolved_ts is not None and r.resolved_ts < r.ts:
        out.append(Violation("resolved_ts", "resolved_ts earlier than ts"))


def _validate_transplant(r: TransplantCase, out: list[Violation]) -> None:
    _require_ids(r, ("case_id",), out)
    if r.status is TransplantStatus.TRANSPLANTED:
        if r.transplant_ts is None:
            out.append(Violation("transplant_ts", "transplanted case requires transplant_ts"))
        if r.cold_ischemia_minutes is None:
            out.append(Violation("cold_ischemia_minutes", "transplanted case requires cold_ischemia_minutes"))
    if r.transplant_ts is not None and r.transplant_ts < r.listed_ts:
        out.append(Violation("transplant_ts", "transplant_ts earlier than listed_ts"))
    if r.cold_ischemia_minutes is not None and r.cold_ischemia_minutes < 0:
        out.append(Violation("cold_ischemia_minutes", "cold_ischemia_minutes must be >= 0"))


def _validate_capacity(r: CapacityRecord, out: list[Violation]) -> None:
    if r.available_units < 0:
        out.append(Violation("available_units", "available_units must be >= 0"))
    if r.available_minutes is not None and r.available_minutes < 0:
        out.append(Violation("available_minutes", "available_minutes must be >= 0"))


def _validate_staff(r: StaffRecord, out: list[Violation]) -> None:
    _require_ids(r, ("staff_id",), out)
    if not (0 < r.fte_fraction <= 1):
        out.append(Violation("fte_fraction", "fte_fraction must be in (0,1]"))


def _validate_divert(r: DivertEventRecord, out: list[Violation]) -> None:
    _require_ids(r, ("divert_id",), out)
    if r.duration_minutes <= 0:
        out.append(Violation("duration_minutes", "duration_minutes must be positive"))


_VALIDATORS = {
    EncounterRecord: _validate_encounter,
    SurgeryRecord: _validate_surgery,
    AppointmentRecord: _validate_appointment,
    ProcessEventRecord: _validate_process_event,
    FinancialTxn: _validate_txn,
    ClaimRecord: _validate_claim,
    BalanceSnapshot: _validate_balance,
    SurveyResponse: _validate_survey,
    IncidentRecord: _validate_incident,
    TransplantCase: _validate_transplant,
    CapacityRecord: _validate_capacity,
    StaffRecord: _validate_staff,
    DivertEventRecord: _validate_divert,
}


def validate_record(record: Record) -> list[Violation]:
    """Empty list iff every invariant holds; pure function of the record."""
    out: list[Violation] = []
    _VALIDATORS[type(record)](record, out)
    return out


def length_of_stay(encounter: EncounterRecord) -> float:
    """Stay length in days (seconds / 86400)."""
    if encounter.discharge_ts is None:
        raise EncounterStillOpen(f"encounter still open: {encounter.encounter_id}")
    return (encounter.discharge_ts - encounter.admit_ts).total_seconds() / 86400.0


def record_primary_key(record: Record):
    """The identity used for duplicate rejection on ingest."""
    if isinstance(record, EncounterRecord):
        return record.encounter_id
    if isinstance(record, SurgeryRecord):
        return record.surgery_id
    if isinstance(record, AppointmentRecord):
        return record.appointment_id
    if isinstance(record, ProcessEventRecord):
        return (record.encounter_id, record.stage.value)
    if isinstance(record, FinancialTxn):
        return record.txn_id
    if isinstance(record, ClaimRecord):
        return record.claim_id
    if isinstance(record, BalanceSnapshot):
        return record.as_of_date.isoformat()
    if isinstance(record, SurveyResponse):
        return record.response_id
    if isinstance(record, IncidentRecord):
        return record.incident_id
    if isinstance(record, TransplantCase):
        return record.case_id
    if isinstance(record, CapacityRecord):
        return (record.resource.value, record.department or "", record.date.isoformat())
    if isinstance(record, StaffRecord):
        return record.staff_id
    if isinstance(record, DivertEventRecord):
        return record.divert_id
    raise TypeError(f"unsupported record type {type(record)!r}")


__all__ = [
    "AppointmentRecord", "AppointmentStatus", "BalanceSnapshot", "CapacityRecord",
    "CapacityResource", "Channel", "ClaimRecord", "ClaimStatus", "Disposition",
    "DivertEventRecord", "DonorType", "EncounterKind", "EncounterRecord",
    "EncounterStillOpen", "FinancialTxn", "IncidentCategory", "IncidentRecord",
    "ProcessEventRecord", "ProcessStage", "Record", "RecordParseError", "Respondent",
    "Severity", "StaffRecord", "StaffRole", "SurgeryRecord",
    "SurveyCategory", "SurveyResponse", "TAG_TYPES", "TYPE_TAGS", "TransplantCase",
    "TransplantOutcome", "TransplantStatus", "TxnCategory", "TxnType", "Violation",
    "length_of_stay", "record_from_dict", "record_primary_key", "record_tag",
    "record_to_dict", "validate_record",
]
