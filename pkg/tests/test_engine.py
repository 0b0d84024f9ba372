import random
from datetime import date
from decimal import Decimal
from fractions import Fraction

import pytest

from hospkpi import records as R
from hospkpi.config import EngineConfig
from hospkpi.engine import (
    CASHFLOW_KPIS,
    DrilldownError,
    Engine,
    FINANCIAL_CORE_KPIS,
    compute_cashflow,
    compute_financial_core,
    compute_operational,
    compute_process_lags,
    compute_provider,
    compute_quality,
    compute_revenue_cycle,
    compute_transplant,
)
from hospkpi.ingest import RecordBatch
from hospkpi.periods import DimensionFilter, Period, UNASSIGNED
from hospkpi.registry import default_registry
from hospkpi.store import EventStore

from .builders import (
    JUNE,
    appointment,
    balance,
    bed_capacity_june,
    capacity,
    claim,
    divert,
    encounter,
    engine_for,
    incident,
    process_event,
    snap,
    staff,
    surgery,
    survey,
    transplant,
    ts,
    txn,
)

REGISTRY = default_registry()


class TestMeasureContext:
    def test_empty_store_counts_zero(self):
        ctx = engine_for().context(JUNE)
        for name in ("admissions", "discharges", "revenue", "er_presents",
                     "no_shows", "incident_count", "transplants", "surgeries"):
            assert ctx.values[name] == 0

    def test_empty_store_balance_absent(self):
        ctx = engine_for().context(JUNE)
        assert "cash" not in ctx.values
        assert "shares_outstanding" not in ctx.values

    def test_single_revenue_txn(self):
        ctx = engine_for(txn(amount_minor=100_000)).context(JUNE)
        assert ctx.values["revenue"] == 100_000

    def test_department_filter(self):
        eng = engine_for(
            encounter(department="cardiology"),
            encounter(department="orthopedics"),
        )
        assert eng.context(JUNE).values["admissions"] == 2
        filtered = eng.context(JUNE, DimensionFilter(department="cardiology"))
        assert filtered.values["admissions"] == 1

    def test_out_of_period_excluded(self):
        ctx = engine_for(txn(ts=ts("2015-07-01T00:00:00"))).context(JUNE)
        assert ctx.values["revenue"] == 0

    def test_payments_not_counted_as_revenue(self):
        ctx = engine_for(
            txn(amount_minor=100_000),
            txn(amount_minor=100_000, txn_type=R.TxnType.PAYMENT, channel=R.Channel.BANK),
        ).context(JUNE)
        assert ctx.values["revenue"] == 100_000

    def test_days_in_period(self):
        eng = engine_for()
        assert eng.context(JUNE).values["days_in_period"] == 30
        assert eng.context(Period("ytd", 2015, 6)).values["days_in_period"] == 181


class TestFinancialCore:
    def test_zero_expense_case(self):
        eng = engine_for(txn(amount_minor=100_000))
        assert eng.kpi_value("ebitda", JUNE).value == 100_000
        assert eng.kpi_value("ebitda_margin", JUNE).value == 1

    def test_hand_arithmetic(self):
        eng = engine_for(
            txn(amount_minor=100_000),
            txn(amount_minor=60_000, category=R.TxnCategory.OPERATING_EXPENSE),
        )
        assert eng.kpi_value("ebitda", JUNE).value == 40_000
        kv = eng.kpi_value("ebitda_margin", JUNE)
        assert kv.value == Fraction(2, 5)
        assert kv.numerator == 40_000 and kv.denominator == 100_000

    def test_zero_revenue_margin_undefined(self):
        eng = engine_for(txn(amount_minor=60_000, category=R.TxnCategory.OPERATING_EXPENSE))
        kv = eng.kpi_value("ebitda_margin", JUNE)
        assert kv.value is None
        assert kv.reason == "division by zero"

    def test_income_chain(self):
        eng = engine_for(
            txn(amount_minor=100_000),
            txn(amount_minor=20_000, category=R.TxnCategory.OPERATING_EXPENSE),
            txn(amount_minor=10_000, category=R.TxnCategory.DEPRECIATION),
            txn(amount_minor=4_000, category=R.TxnCategory.AMORTIZATION),
            txn(amount_minor=6_000, category=R.TxnCategory.INTEREST),
            txn(amount_minor=12_000, category=R.TxnCategory.TAX),
            balance(),
        )
        assert eng.kpi_value("ebitda", JUNE).value == 80_000
        assert eng.kpi_value("ebit", JUNE).value == 66_000
        assert eng.kpi_value("operating_margin", JUNE).value == Fraction(66_000, 100_000)
        assert eng.kpi_value("pbt", JUNE).value == 60_000
        assert eng.kpi_value("net_income", JUNE).value == 48_000
        assert eng.kpi_value("eps", JUNE).value == Fraction(48_000, 1000)
        assert eng.kpi_value("return_on_capital", JUNE).value == Fraction(66_000, 800_000)
        assert eng.kpi_value("return_on_asset", JUNE).value == Fraction(48_000, 900_000)

    def test_roa_two_snapshots_average(self):
        eng = engine_for(
            txn(amount_minor=90_000),
            balance(as_of_date=date(2015, 6, 1), total_assets_minor=800_000),
            balance(as_of_date=date(2015, 6, 30), total_assets_minor=1_000_000),
        )
        assert eng.kpi_value("return_on_asset", JUNE).value == Fraction(90_000, 900_000)

    def test_wrapper_returns_all_nine(self, registry):
        values = compute_financial_core(snap(txn()), registry, JUNE)
        assert tuple(v.kpi_id for v in values) == FINANCIAL_CORE_KPIS


class TestCashflow:
    def test_current_ratio_symmetry(self):
        eng = engine_for(balance(current_assets_minor=5_000, current_liabilities_minor=5_000))
        assert eng.kpi_value("current_ratio", JUNE).value == 1

    def test_collection_ratio_hand_arithmetic(self):
        eng = engine_for(
            balance(debtors_minor=30_000),
            txn(amount_minor=90_000, channel=R.Channel.INSURANCE),
        )
        kv = eng.kpi_value("collection_ratio_days", JUNE)
        assert kv.value == 10  # 30000 * 30 days / 90000
        assert eng.kpi_value("ar_days", JUNE).value == 10

    def test_days_cash_on_hand_day_normalized(self):
        eng = engine_for(
            balance(cash_minor=9_000),
            txn(amount_minor=90_000, category=R.TxnCategory.OPERATING_EXPENSE),
        )
        assert eng.kpi_value("days_cash_on_hand", JUNE).value == 3  # 9000 / (90000/30)

    def test_days_cash_on_hand_raw_variant(self):
        eng = engine_for(
            balance(cash_minor=9_000),
            txn(amount_minor=90_000, category=R.TxnCategory.OPERATING_EXPENSE),
        )
        assert eng.kpi_value("days_cash_on_hand_raw", JUNE).value == Fraction(9_000, 90_000)

    def test_debt_equity(self):
        eng = engine_for(balance(total_liabilities_minor=300_000, shareholders_equity_minor=600_000))
        assert eng.kpi_value("debt_equity_ratio", JUNE).value == Fraction(1, 2)

    def test_missing_snapshot_all_undefined(self, registry):
        values = compute_cashflow(snap(txn()), registry, JUNE)
        assert tuple(v.kpi_id for v in values) == CASHFLOW_KPIS
        for v in values:
            assert v.value is None
            assert v.reason == "missing balance snapshot"

    def test_weekday_collection_ratio(self):
        cfg = EngineConfig(working_days="weekdays")
        eng = engine_for(
            balance(debtors_minor=30_000),
            txn(amount_minor=66_000, channel=R.Channel.INSURANCE),
            config=cfg,
        )
        # June 2015 has 22 weekdays
        assert eng.kpi_value("collection_ratio_days", JUNE).value == Fraction(30_000 * 22, 66_000)


class TestOperational:
    def test_alos_single_discharge(self):
        eng = engine_for(encounter())  # June 1 -> June 6
        assert eng.kpi_value("alos", JUNE).value == 5

    def test_alos_no_discharges_no_data(self):
        eng = engine_for(encounter(discharge_ts=None, disposition=R.Disposition.ADMITTED))
        kv = eng.kpi_value("alos", JUNE)
        assert kv.value is None and kv.reason == "no data"

    def test_no_show_rate_denominator_rule(self):
        records = []
        for i in range(7):
            records.append(appointment())
        records.append(appointment(status=R.AppointmentStatus.CANCELLED,
                                   arrival_ts=None, seen_ts=None))
        for _ in range(2):
            records.append(appointment(status=R.AppointmentStatus.NO_SHOW,
                                       arrival_ts=None, seen_ts=None))
        eng = engine_for(*records)
        assert eng.kpi_value("no_show_rate", JUNE).value == Fraction(2, 9)

    def test_bed_occupancy_zero_patient_days(self):
        eng = engine_for(*bed_capacity_june(10))
        assert eng.kpi_value("bed_occupancy", JUNE).value == 0

    def test_bed_occupancy_fraction(self):
        eng = engine_for(encounter(), *bed_capacity_june(10))
        assert eng.kpi_value("bed_occupancy", JUNE).value == Fraction(5, 300)

    def test_patient_days_clipped_to_window(self):
        eng = engine_for(encounter(
            admit_ts=ts("2015-05-20T00:00:00"), discharge_ts=ts("2015-06-04T00:00:00")
        ))
        assert eng.context(JUNE).values["patient_days"] == 3

    def test_readmission_rules(self):
        records = [
            encounter(encounter_id="first", patient_id="px",
                      admit_ts=ts("2015-05-01T00:00:00"), discharge_ts=ts("2015-05-20T00:00:00")),
            # unplanned, 12 days after prior discharge -> readmit
            encounter(encounter_id="readmit", patient_id="px",
                      admit_ts=ts("2015-06-01T00:00:00"), discharge_ts=ts("2015-06-05T00:00:00")),
            # planned readmission is not counted
            encounter(encounter_id="planned", patient_id="px", planned=True,
                      admit_ts=ts("2015-06-10T00:00:00"), discharge_ts=ts("2015-06-12T00:00:00")),
            # outside the 30-day window
            encounter(encounter_id="late", patient_id="py",
                      admit_ts=ts("2015-01-01T00:00:00"), discharge_ts=ts("2015-01-05T00:00:00")),
            encounter(encounter_id="far", patient_id="py",
                      admit_ts=ts("2015-06-20T00:00:00"), discharge_ts=ts("2015-06-22T00:00:00")),
        ]
        eng = engine_for(*records)
        assert eng.context(JUNE).values["readmissions_30d"] == 1

    def test_extended_and_long_stay(self):
        eng = engine_for(
            encounter(discharge_ts=ts("2015-06-12T00:00:00")),   # 11 days
            encounter(admit_ts=ts("2015-05-01T00:00:00"),
                      discharge_ts=ts("2015-06-02T00:00:00")),   # 32 days
            encounter(),                                          # 5 days
        )
        assert eng.kpi_value("extended_stay_count", JUNE).value == 2
        assert eng.kpi_value("long_stay_count", JUNE).value == 1

    def test_er_admit_rate(self):
        records = [encounter(kind=R.EncounterKind.EMERGENCY,
                             disposition=R.Disposition.ADMITTED if i < 2 else R.Disposition.DISCHARGED,
                             discharge_ts=ts("2015-06-01T12:00:00"))
                   for i in range(5)]
        eng = engine_for(*records, divert())
        assert eng.kpi_value("er_presents", JUNE).value == 5
        assert eng.kpi_value("er_admit_rate", JUNE).value == Fraction(2, 5)
        assert eng.kpi_value("divert_count", JUNE).value == 1

    def test_or_utilization_and_idle(self):
        eng = engine_for(
            surgery(encounter_id="e_x"),  # 120 minutes
            encounter(encounter_id="e_x"),
            capacity(resource=R.CapacityResource.OR_ROOMS, department=None,
                     available_units=4, available_minutes=2_400),
        )
        assert eng.kpi_value("or_utilization", JUNE).value == Fraction(120, 2400)
        assert eng.kpi_value("or_idle_minutes", JUNE).value == 2_280
        assert eng.kpi_value("avg_pre_op_minutes", JUNE).value == 30
        assert eng.kpi_value("or_wait_minutes", JUNE).value == 0

    def test_outpatient_measures(self):
        eng = engine_for(
            appointment(rvu=Decimal("1.5")),
            appointment(rvu=Decimal("2.0"),
                        seen_ts=ts("2015-06-03T09:40:00")),
        )
        assert eng.kpi_value("outpatient_visits", JUNE).value == 2
        assert eng.kpi_value("rvu_total", JUNE).value == Fraction(7, 2)
        assert eng.kpi_value("appointment_wait_minutes", JUNE).value == 30  # (20+40)/2

    def test_operational_wrapper(self, registry):
        values = compute_operational(snap(encounter()), registry, JUNE)
        by_id = {v.kpi_id: v for v in values}
        assert by_id["admissions"].value == 1


class TestProcessLags:
    def test_single_pair_lag(self):
        eng = engine_for(
            encounter(encounter_id="e_p"),
            process_event("e_p", R.ProcessStage.INITIAL_ASSESSMENT, "2015-06-01T00:10:00"),
            process_event("e_p", R.ProcessStage.BED_ALLOCATED, "2015-06-01T01:00:00"),
            process_event("e_p", R.ProcessStage.CONSULTANT_INFORMED, "2015-06-01T00:30:00"),
        )
        kv = eng.kpi_value("lag_initial_assessment_to_consultant_informed_non_er", JUNE)
        assert kv.value == 20
        kv = eng.kpi_value("lag_consultant_informed_to_bed_allocated_non_er", JUNE)
        assert kv.value == 30

    def test_missing_stage_no_data(self):
        eng = engine_for(encounter())
        kv = eng.kpi_value("lag_results_reported_to_diagnosis_non_er", JUNE)
        assert kv.value is None and kv.reason == "no data"

    def test_two_encounter_average(self):
        records = []
        for i, lag in enumerate((10, 30)):
            eid = f"e_lag{i}"
            records.append(encounter(encounter_id=eid))
            records.append(process_event(eid, R.ProcessStage.DIAGNOSIS, "2015-06-01T10:00:00"))
            records.append(process_event(
                eid, R.ProcessStage.TREATMENT_STARTED, f"2015-06-01T10:{lag}:00"
            ))
        eng = engine_for(*records)
        assert eng.kpi_value("lag_diagnosis_to_treatment_started_non_er", JUNE).value == 20

    def test_er_split(self):
        eng = engine_for(
            encounter(encounter_id="e_er", kind=R.EncounterKind.EMERGENCY,
                      discharge_ts=ts("2015-06-01T12:00:00")),
            process_event("e_er", R.ProcessStage.INITIAL_ASSESSMENT, "2015-06-01T00:05:00"),
            process_event("e_er", R.ProcessStage.CONSULTANT_INFORMED, "2015-06-01T00:15:00"),
        )
        assert eng.kpi_value("lag_initial_assessment_to_consultant_informed_er", JUNE).value == 10
        kv = eng.kpi_value("lag_initial_assessment_to_consultant_informed_non_er", JUNE)
        assert kv.value is None

    def test_time_to_treatment_er_only(self):
        eng = engine_for(
            encounter(encounter_id="e_er", kind=R.EncounterKind.EMERGENCY,
                      discharge_ts=ts("2015-06-01T12:00:00")),
            process_event("e_er", R.ProcessStage.TREATMENT_STARTED, "2015-06-01T00:45:00"),
            encounter(encounter_id="e_in"),
            process_event("e_in", R.ProcessStage.TREATMENT_STARTED, "2015-06-01T03:00:00"),
        )
        assert eng.kpi_value("time_to_treatment", JUNE).value == 45

    def test_registration_wait(self):
        eng = engine_for(
            encounter(encounter_id="e_r"),
            process_event("e_r", R.ProcessStage.INITIAL_ASSESSMENT, "2015-06-01T00:25:00"),
        )
        assert eng.kpi_value("registration_wait_minutes", JUNE).value == 25

    def test_wrapper_er_flag(self, registry):
        values = compute_process_lags(snap(encounter()), registry, JUNE, er_flag=True)
        assert all(v.kpi_id.endswith("_er") for v in values)
        assert len(values) == 10


class TestQuality:
    def test_constant_scores(self):
        eng = engine_for(
            survey(category=R.SurveyCategory.PATIENT_CARE, score=5),
            survey(category=R.SurveyCategory.CUSTOMER_SERVICE, score=5),
            survey(category=R.SurveyCategory.OVERALL, score=5),
            survey(category=R.SurveyCategory.RECOMMEND, score=5),
        )
        for kpi in ("satisfaction_patient_care", "satisfaction_customer_service",
                    "satisfaction_overall", "recommend_score"):
            assert eng.kpi_value(kpi, JUNE).value == 5

    def test_hand_average(self):
        eng = engine_for(*[
            survey(category=R.SurveyCategory.PATIENT_CARE, score=s) for s in (3, 4, 5)
        ])
        assert eng.kpi_value("satisfaction_patient_care", JUNE).value == 4

    def test_zero_incidents(self):
        eng = engine_for()
        assert eng.kpi_value("incident_count", JUNE).value == 0
        for cat in ("professional_conduct", "communication", "treatment_care",
                    "wait_time", "other"):
            assert eng.kpi_value(f"incident_count_{cat}", JUNE).value == 0

    def test_incident_counts_by_category(self):
        eng = engine_for(incident(category=R.IncidentCategory.WAIT_TIME))
        assert eng.kpi_value("incident_count", JUNE).value == 1
        assert eng.kpi_value("incident_count_wait_time", JUNE).value == 1

    def test_complaint_resolution_days(self):
        eng = engine_for(
            incident(resolved_ts=ts("2015-06-08T12:00:00")),  # 3 days
            incident(resolved_ts=ts("2015-06-10T12:00:00")),  # 5 days
            incident(),                                       # unresolved, excluded
        )
        assert eng.kpi_value("complaint_resolution_days", JUNE).value == 4

    def test_nursing_scorecard_split(self):
        eng = engine_for(
            survey(respondent=R.Respondent.RN, category=R.SurveyCategory.NURSING, score=3),
            survey(respondent=R.Respondent.RN, category=R.SurveyCategory.NURSING, score=5),
            survey(category=R.SurveyCategory.NURSING, score=2),
        )
        assert eng.kpi_value("nursing_score_rn", JUNE).value == 4
        assert eng.kpi_value("nursing_score_patient", JUNE).value == 2

    def test_patients_treated_counts_discharges(self, registry):
        values = compute_quality(snap(encounter(), encounter()), registry, JUNE)
        by_id = {v.kpi_id: v for v in values}
        assert by_id["patients_treated"].value == 2


class TestRevenueCycle:
    def test_all_paid_zero_denials(self):
        eng = engine_for(
            encounter(encounter_id="e_c"),
            *[claim(encounter_id="e_c") for _ in range(3)],
        )
        assert eng.kpi_value("denial_rate_count", JUNE).value == 0
        assert eng.kpi_value("denial_rate_amount", JUNE).value == 0

    def test_one_denied_of_four(self):
        eng = engine_for(
            encounter(encounter_id="e_c"),
            *[claim(encounter_id="e_c") for _ in range(3)],
            claim(encounter_id="e_c", status=R.ClaimStatus.DENIED,
                  amount_paid_minor=0, denial_reason="coding"),
        )
        assert eng.kpi_value("denial_rate_count", JUNE).value == Fraction(1, 4)
        assert eng.kpi_value("denial_rate_amount", JUNE).value == Fraction(100_000, 400_000)

    def test_open_claims_not_adjudicated(self):
        eng = engine_for(
            encounter(encounter_id="e_c"),
            claim(encounter_id="e_c", status=R.ClaimStatus.OPEN, amount_paid_minor=0),
        )
        kv = eng.kpi_value("denial_rate_count", JUNE)
        assert kv.value is None

    def test_deposit_compliance_same_or_next_day(self):
        # received Monday June 1; Tuesday deposit compliant, Wednesday not
        eng = engine_for(
            txn(txn_type=R.TxnType.PAYMENT, channel=R.Channel.POS,
                received_ts=ts("2015-06-01T10:00:00"), deposited_ts=ts("2015-06-02T10:00:00")),
            txn(txn_type=R.TxnType.PAYMENT, channel=R.Channel.POS,
                received_ts=ts("2015-06-01T10:00:00"), deposited_ts=ts("2015-06-03T10:00:00")),
        )
        assert eng.kpi_value("deposit_compliance", JUNE).value == Fraction(1, 2)

    def test_missing_deposit_not_compliant(self):
        eng = engine_for(
            txn(txn_type=R.TxnType.PAYMENT, channel=R.Channel.POS,
                received_ts=ts("2015-06-01T10:00:00")),
        )
        assert eng.kpi_value("deposit_compliance", JUNE).value == 0

    def test_days_to_bill(self):
        eng = engine_for(
            encounter(encounter_id="e_c"),
            claim(encounter_id="e_c", billed_ts=ts("2015-06-08T00:00:00")),  # 2 days
            claim(encounter_id="e_c", billed_ts=ts("2015-06-12T00:00:00")),  # 6 days
        )
        assert eng.kpi_value("days_to_bill", JUNE).value == 4

    def test_pos_collection_and_write_offs(self):
        eng = engine_for(
            txn(txn_type=R.TxnType.PAYMENT, channel=R.Channel.POS, amount_minor=30_000),
            txn(txn_type=R.TxnType.PAYMENT, channel=R.Channel.BANK, amount_minor=99_000),
            txn(txn_type=R.TxnType.WRITE_OFF, amount_minor=7_000),
        )
        assert eng.kpi_value("pos_collection", JUNE).value == 30_000
        assert eng.kpi_value("write_off_total", JUNE).value == 7_000

    def test_location_filter(self, registry):
        store = snap(
            txn(txn_type=R.TxnType.PAYMENT, channel=R.Channel.POS,
                amount_minor=30_000, location="annex"),
            txn(txn_type=R.TxnType.PAYMENT, channel=R.Channel.POS,
                amount_minor=20_000, location="main_campus"),
        )
        values = compute_revenue_cycle(store, registry, JUNE, location="annex")
        by_id = {v.kpi_id: v for v in values}
        assert by_id["pos_collection"].value == 30_000


class TestProvider:
    def test_revenue_per_fte(self):
        eng = engine_for(
            txn(amount_minor=100_000),
            staff(fte_fraction=Decimal("1")),
            staff(fte_fraction=Decimal("1")),
            staff(fte_fraction=Decimal("1")),
            staff(fte_fraction=Decimal("1")),
        )
        assert eng.kpi_value("revenue_per_fte", JUNE).value == 25_000

    def test_cost_per_fte(self):
        eng = engine_for(
            txn(amount_minor=50_000, category=R.TxnCategory.FTE_COST),
            staff(fte_fraction=Decimal("0.5")),
            staff(fte_fraction=Decimal("0.5")),
        )
        assert eng.kpi_value("cost_per_fte", JUNE).value == 50_000

    def test_revenue_per_bed(self):
        eng = engine_for(txn(amount_minor=300_000), *bed_capacity_june(10))
        # 10 beds on each of 30 days -> average 10 beds
        assert eng.kpi_value("revenue_per_bed", JUNE).value == 30_000

    def test_single_doctor_occupancy_share(self, registry):
        data = compute_provider(snap(encounter(doctor_id="d9")), registry, JUNE)
        rows = {r["doctor_id"]: r for r in data["doctors"]}
        assert rows["d9"]["occupancy_share"] == 1

    def test_doctor_without_encounters(self, registry):
        data = compute_provider(
            snap(encounter(doctor_id="d1"),
                 txn(doctor_id="d2", txn_type=R.TxnType.PAYMENT, channel=R.Channel.BANK)),
            registry, JUNE,
        )
        rows = {r["doctor_id"]: r for r in data["doctors"]}
        assert rows["d2"]["revenue_per_encounter"] is None
        assert set(rows) == {"d1", "d2"}

    def test_hospital_block(self, registry):
        data = compute_provider(snap(encounter()), registry, JUNE)
        assert [kv.kpi_id for kv in data["hospital"]] == [
            "revenue_per_bed", "revenue_per_fte", "cost_per_fte",
        ]


class TestTransplant:
    def test_cit_compliance_two_thirds(self):
        eng = engine_for(
            transplant(cold_ischemia_minutes=360),
            transplant(cold_ischemia_minutes=600),
            transplant(cold_ischemia_minutes=480),
        )
        assert eng.kpi_value("cit_compliance_rate", JUNE).value == Fraction(2, 3)
        assert eng.kpi_value("avg_cit_minutes", JUNE).value == 480

    def test_boundary_exactly_nine_hours_not_compliant(self):
        eng = engine_for(transplant(cold_ischemia_minutes=540))
        assert eng.kpi_value("cit_compliance_rate", JUNE).value == 0

    def test_zero_transplants_no_data(self):
        kv = engine_for().kpi_value("avg_cit_minutes", JUNE)
        assert kv.value is None and kv.reason == "no data"

    def test_all_success_failure_rate_zero(self):
        eng = engine_for(transplant(), transplant())
        assert eng.kpi_value("transplant_failure_rate", JUNE).value == 0

    def test_wait_times(self):
        eng = engine_for(
            transplant(listed_ts=ts("2015-06-01T00:00:00"),
                       transplant_ts=ts("2015-06-11T00:00:00")),
            transplant(status=R.TransplantStatus.ACTIVE, transplant_ts=None,
                       cold_ischemia_minutes=None, outcome=None,
                       listed_ts=ts("2015-06-21T00:00:00")),
        )
        assert eng.kpi_value("avg_wait_days_transplanted", JUNE).value == 10
        assert eng.kpi_value("avg_wait_days_active", JUNE).value == 10  # through July 1

    def test_living_donor_share(self, registry):
        store = snap(
            transplant(donor_type=R.DonorType.LIVING),
            transplant(donor_type=R.DonorType.DECEASED),
        )
        values = {v.kpi_id: v for v in compute_transplant(store, registry, JUNE)}
        assert values["living_donor_share"].value == Fraction(1, 2)
        assert values["transplants_performed"].value == 2


class TestRankDrg:
    def _store(self):
        records = []
        for drg, amount in (("drg_a", 10_000), ("drg_b", 30_000), ("drg_c", 20_000)):
            eid = f"e_{drg}"
            records.append(encounter(encounter_id=eid, drg_code=drg))
            records.append(txn(encounter_id=eid, amount_minor=amount))
        return snap(*records)

    def test_single_drg(self, registry):
        store = snap(encounter(encounter_id="e_1", drg_code="drg_x"),
                     txn(encounter_id="e_1"))
        eng = Engine(store, registry)
        for key in ("revenue", "margin"):
            for order in ("top", "bottom"):
                rows = eng.rank_drg(JUNE, key, order, 5)
                assert [r["drg_code"] for r in rows] == ["drg_x"]

    def test_top_two_by_revenue(self, registry):
        rows = Engine(self._store(), registry).rank_drg(JUNE, "revenue", "top", 2)
        assert [r["drg_code"] for r in rows] == ["drg_b", "drg_c"]

    def test_bottom_by_revenue(self, registry):
        rows = Engine(self._store(), registry).rank_drg(JUNE, "revenue", "bottom", 2)
        assert [r["drg_code"] for r in rows] == ["drg_a", "drg_c"]

    def test_tie_broken_by_drg_code(self, registry):
        store = snap(
            encounter(encounter_id="e_1", drg_code="drg_a"),
            encounter(encounter_id="e_2", drg_code="drg_b"),
            txn(encounter_id="e_1", amount_minor=10_000),
            txn(encounter_id="e_2", amount_minor=10_000),
        )
        rows = Engine(store, registry).rank_drg(JUNE, "revenue", "top", 2)
        assert [r["drg_code"] for r in rows] == ["drg_a", "drg_b"]

    def test_margin_uses_attributed_expense_only(self, registry):
        store = snap(
            encounter(encounter_id="e_1", drg_code="drg_a"),
            txn(encounter_id="e_1", amount_minor=50_000),
            txn(encounter_id="e_1", amount_minor=20_000,
                category=R.TxnCategory.OPERATING_EXPENSE),
            # overhead without encounter link is excluded from margins
            txn(amount_minor=500_000, category=R.TxnCategory.OPERATING_EXPENSE),
        )
        rows = Engine(store, registry).rank_drg(JUNE, "margin", "top", 1)
        assert rows[0]["margin"] == 30_000

    def test_fewer_groups_than_n(self, registry):
        rows = Engine(self._store(), registry).rank_drg(JUNE, "revenue", "top", 10)
        assert len(rows) == 3


class TestYtd:
    def _monthly_store(self):
        records = []
        counts = {1: 1, 2: 2, 3: 3}
        for month, count in counts.items():
            for i in range(count):
                records.append(encounter(
                    admit_ts=ts(f"2015-{month:02d}-05T00:00:00"),
                    discharge_ts=ts(f"2015-{month:02d}-08T00:00:00"),
                ))
        return engine_for(*records)

    def test_sum_of_months(self):
        eng = self._monthly_store()
        assert eng.ytd("admissions", 2015, 3).value == 6

    def test_single_month_identity(self):
        eng = self._monthly_store()
        assert eng.ytd("admissions", 2015, 1).value == eng.kpi_value(
            "admissions", Period("month", 2015, 1)).value

    def test_ratio_recomputed_not_averaged(self):
        records = []
        # January: 1 no-show of 10 scheduled; February: 1 of 20
        for month, total in ((1, 10), (2, 20)):
            for i in range(total):
                status = R.AppointmentStatus.NO_SHOW if i == 0 else R.AppointmentStatus.COMPLETED
                kw = {}
                if status is R.AppointmentStatus.NO_SHOW:
                    kw = dict(arrival_ts=None, seen_ts=None)
                records.append(appointment(
                    scheduled_ts=ts(f"2015-{month:02d}-10T09:00:00"), status=status, **kw
                ))
        eng = engine_for(*records)
        ytd = eng.ytd("no_show_rate", 2015, 2)
        assert ytd.value == Fraction(2, 30)
        mean_of_ratios = (Fraction(1, 10) + Fraction(1, 20)) / 2
        assert ytd.value != mean_of_ratios

    def test_ytd_balance_uses_latest_snapshot(self):
        eng = engine_for(
            balance(as_of_date=date(2015, 1, 31), cash_minor=10_000),
            balance(as_of_date=date(2015, 3, 31), cash_minor=50_000),
            txn(ts=ts("2015-02-10T00:00:00"), category=R.TxnCategory.OPERATING_EXPENSE,
                amount_minor=90_000),
        )
        ctx = eng.context(Period("ytd", 2015, 3))
        assert ctx.values["cash"] == 50_000

    def test_fiscal_year_start(self):
        cfg = EngineConfig(fiscal_year_start_month=4)
        eng = engine_for(
            encounter(admit_ts=ts("2015-03-10T00:00:00"), discharge_ts=ts("2015-03-12T00:00:00")),
            encounter(admit_ts=ts("2015-04-10T00:00:00"), discharge_ts=ts("2015-04-12T00:00:00")),
            encounter(admit_ts=ts("2015-06-01T00:00:00")),
            config=cfg,
        )
        # fiscal YTD through June starts in April; March stays out
        assert eng.ytd("admissions", 2015, 6).value == 2


class TestDrilldown:
    def test_partition_property(self):
        eng = engine_for(
            *[encounter(department="cardiology") for _ in range(10)],
            *[encounter(department="orthopedics") for _ in range(20)],
        )
        total, rows = eng.drilldown("admissions", JUNE, "department")
        assert total.value == 30
        assert sum(kv.value for _, kv in rows) == 30
        by_key = {k: kv.value for k, kv in rows}
        assert by_key == {"cardiology": 10, "orthopedics": 20}

    def test_single_department_equals_total(self):
        eng = engine_for(encounter())
        total, rows = eng.drilldown("admissions", JUNE, "department")
        assert len(rows) == 1
        assert rows[0][1].value == total.value

    def test_unassigned_row_for_unattributed_revenue(self):
        eng = engine_for(
            txn(doctor_id="d1", amount_minor=70_000),
            txn(doctor_id=None, amount_minor=30_000),
        )
        total, rows = eng.drilldown("revenue", JUNE, "doctor_id")
        keys = [k for k, _ in rows]
        assert UNASSIGNED in keys
        assert sum(kv.value for _, kv in rows) == total.value == 100_000

    def test_inapplicable_dimension_lists_valid(self):
        eng = engine_for()
        with pytest.raises(DrilldownError, match="organ"):
            eng.drilldown("satisfaction_overall", JUNE, "organ")
        with pytest.raises(DrilldownError, match="valid dimensions"):
            eng.drilldown("admissions", JUNE, "organ")

    def test_unknown_dimension(self):
        with pytest.raises(DrilldownError, match="unknown dimension"):
            engine_for().drilldown("admissions", JUNE, "ward")

    def test_drilldown_under_base_filter(self):
        eng = engine_for(
            encounter(department="cardiology", doctor_id="d1"),
            encounter(department="cardiology", doctor_id="d2"),
            encounter(department="orthopedics", doctor_id="d1"),
        )
        base = DimensionFilter(department="cardiology")
        total, rows = eng.drilldown("admissions", JUNE, "doctor_id", base)
        assert total.value == 2
        assert {k: kv.value for k, kv in rows} == {"d1": 1, "d2": 1}

    def test_already_constrained_dimension_rejected(self):
        eng = engine_for(encounter())
        with pytest.raises(DrilldownError, match="already constrained"):
            eng.drilldown("admissions", JUNE, "department",
                          DimensionFilter(department="cardiology"))


class TestFilterMonotonicity:
    def test_count_sum_measures_never_increase(self, seed42_engine):
        period = Period("month", 2015, 2)
        base = seed42_engine.context(period).values
        from hospkpi.measures import MEASURES

        flow_names = [n for n, s in MEASURES.items()
                      if s.flow and s.kind in ("count", "money", "minutes", "days", "score", "decimal")]
        for filt in (
            DimensionFilter(department="cardiology"),
            DimensionFilter(doctor_id="doc_001"),
            DimensionFilter(location="annex"),
            DimensionFilter(department="cardiology", doctor_id="doc_002"),
            DimensionFilter(organ="kidney"),
        ):
            filtered = seed42_engine.context(period, filt).values
            for name in flow_names:
                if name in ("or_wait_minutes_sum",):
                    continue  # signed sum, not monotone
                assert filtered[name] <= base[name], name


class TestOracleEquivalence:
    def test_counts_and_sums_match_brute_force(self, seed42_engine):
        from . import oracle

        records = seed42_engine.snapshot.all_records()
        for month in (1, 2, 3):
            start, end, _ = oracle.month_bounds(2015, month)
            period = Period("month", 2015, month)
            for kpi_id, fn in oracle.COUNT_ORACLES.items():
                assert seed42_engine.kpi_value(kpi_id, period).value == fn(records, start, end)

    def test_ratios_match_brute_force(self, seed42_engine):
        from . import oracle

        records = seed42_engine.snapshot.all_records()
        for month in (1, 2, 3):
            start, end, _ = oracle.month_bounds(2015, month)
            period = Period("month", 2015, month)
            for kpi_id, fn in oracle.RATIO_ORACLES.items():
                expected = fn(records, start, end)
                kv = seed42_engine.kpi_value(kpi_id, period)
                if expected is None:
                    assert kv.value is None
                else:
                    assert abs(float(kv.value) - expected) <= 1e-9 * max(1.0, abs(expected))


BOUNDED_RATE_KPIS = (
    "no_show_rate", "er_admit_rate", "denial_rate_count", "denial_rate_amount",
    "deposit_compliance", "cit_compliance_rate", "living_donor_share",
    "transplant_failure_rate",
)


class TestNaturalRanges:
    def test_rates_within_unit_interval(self, seed42_engine):
        for month in (1, 2, 3):
            period = Period("month", 2015, month)
            for kpi_id in BOUNDED_RATE_KPIS:
                kv = seed42_engine.kpi_value(kpi_id, period)
                if kv.value is not None:
                    assert 0 <= kv.value <= 1, (kpi_id, month)

    def test_margins_at_most_one_with_nonnegative_expenses(self, seed42_engine):
        for month in (1, 2, 3):
            period = Period("month", 2015, month)
            for kpi_id in ("ebitda_margin", "operating_margin"):
                kv = seed42_engine.kpi_value(kpi_id, period)
                if kv.value is not None:
                    assert kv.value <= 1


class TestDeterminism:
    def test_shuffled_reingestion_identical_values(self, registry, seed42_engine):
        from hospkpi.synth import generate_synthetic
        from .conftest import SEED42

        batch = generate_synthetic(SEED42)
        records = list(batch.records)
        random.Random(99).shuffle(records)
        store = EventStore()
        store.ingest(RecordBatch(tuple(records), "shuffled"))
        shuffled_engine = Engine(store.snapshot(), registry)
        period = Period("month", 2015, 3)
        for kpi_id in ("revenue", "ebitda_margin", "alos", "no_show_rate",
                       "bed_occupancy", "ar_days", "denial_rate_count"):
            a = seed42_engine.kpi_value(kpi_id, period)
            b = shuffled_engine.kpi_value(kpi_id, period)
            assert (a.value, a.reason) == (b.value, b.reason)
