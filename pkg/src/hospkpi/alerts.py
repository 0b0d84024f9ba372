"""Threshold alerting: rules, evaluation, and the alert lifecycle.

Rules file: one per line::

    alert <rule_id> on <kpi_id> when <lt|le|gt|ge> <threshold> severity <level> escalate_after <n>

Lifecycle: ``open -> acknowledged``, ``open -> escalated``, and any of the
three non-resolved states ``-> resolved``; nothing else. Evaluating a period
updates rather than duplicates the active alert per rule, escalates open
alerts older than the rule's period budget, and auto-resolves alerts whose
predicate stopped holding.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .periods import DimensionFilter, EMPTY_FILTER, Period, months_between, parse_period
from .store import utc_now

OPEN = "open"
ACKNOWLEDGED = "acknowledged"
ESCALATED = "escalated"
RESOLVED = "resolved"

STATES = (OPEN, ACKNOWLEDGED, ESCALATED, RESOLVED)

LEGAL_TRANSITIONS = frozenset({
    (OPEN, ACKNOWLEDGED),
    (OPEN, ESCALATED),
    (OPEN, RESOLVED),
    (ACKNOWLEDGED, RESOLVED),
    (ESCALATED, RESOLVED),
})

COMPARATORS = {
    "lt": lambda v, t: v < t,
    "le": lambda v, t: v <= t,
    "gt": lambda v, t: v > t,
    "ge": lambda v, t: v >= t,
}

THRESHOLD = "threshold"
DATA_QUALITY = "data_quality"


class RuleError(ValueError):
    pass


class TransitionError(ValueError):
    pass


class UnknownAlertError(KeyError):
    pass


@dataclass(frozen=True)
class AlertRule:
    rule_id: str
    kpi_id: str
    comparator: str
    threshold: float
    severity: str  # info | warning | critical
    filter: DimensionFilter = EMPTY_FILTER
    escalate_after_periods: int = 1

    def __post_init__(self):
        if self.comparator not in COMPARATORS:
            raise RuleError(f"unknown comparator {self.comparator!r}")
        if self.severity not in ("info", "warning", "critical"):
            raise RuleError(f"unknown severity {self.severity!r}")
        if self.escalate_after_periods <= 0:
            raise RuleError("escalate_after_periods must be positive")

    def holds(self, value: Fraction) -> bool:
        return COMPARATORS[self.comparator](value, Fraction(str(self.threshold)))


@dataclass(frozen=True)
class AlertEvent:
    alert_id: str
    rule_id: str
    kpi_id: str
    kind: str                       # threshold | data_quality
    severity: str
    state: str
    period: str                     # label of the latest evaluation that updated it
    first_period: str               # label of the evaluation that opened it
    observed_value: Optional[float]
    reason: Optional[str]
    opened_at: datetime
    updated_at: datetime


def apply_transition(state: str, target: str) -> str:
    if (state, target) not in LEGAL_TRANSITIONS:
        raise TransitionError(f"illegal transition {state} -> {target}")
    return target


_RULE_RE = re.compile(
    r"^alert\s+(?P<rule>\S+)\s+on\s+(?P<kpi>\S+)\s+when\s+(?P<cmp>lt|le|gt|ge)\s+"
    r"(?P<thr>-?[\d.]+)\s+severity\s+(?P<sev>\S+)\s+escalate_after\s+(?P<esc>\d+)$"
)


def parse_rules(text: str, registry=None, source: str = "<rules>") -> list[AlertRule]:
    rules = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _RULE_RE.match(line)
        if not m:
            raise RuleError(f"{source}:{lineno}: cannot parse rule line")
        if registry is not None and m.group("kpi") not in registry:
            raise RuleError(f"{source}:{lineno}: unknown kpi {m.group('kpi')!r}")
        try:
            rule = AlertRule(
                rule_id=m.group("rule"),
                kpi_id=m.group("kpi"),
                comparator=m.group("cmp"),
                threshold=float(m.group("thr")),
                severity=m.group("sev"),
                escalate_after_periods=int(m.group("esc")),
            )
        except RuleError as exc:
            raise RuleError(f"{source}:{lineno}: {exc}") from None
        key = (rule.kpi_id, rule.filter.cache_key(), rule.comparator, rule.threshold)
        if key in seen:
            raise RuleError(f"{source}:{lineno}: duplicate rule predicate")
        seen.add(key)
        if rule.rule_id in {r.rule_id for r in rules}:
            raise RuleError(f"{source}:{lineno}: duplicate rule id {rule.rule_id!r}")
        rules.append(rule)
    return rules


def load_rules(path, registry=None) -> list[AlertRule]:
    with open(path, encoding="utf-8") as fh:
        return parse_rules(fh.read(), registry, source=str(path))


class AlertBook:
    """Holds every alert ever fired plus the active one per rule.

    Mutations (evaluation, manual transitions) are persisted to
    ``alerts.json`` when a path is configured.
    """

    def __init__(self, path: Optional[Path] = None):
        self._path = path
        self._alerts: dict[str, AlertEvent] = {}
        self._active: dict[str, str] = {}  # rule_id -> alert_id
        self._seq = 0
        if path is not None and path.exists():
            self._load()

    # -- persistence ---------------------------------------------------------

    def _load(self) -> None:
        from .jsonio import parse_ts

        data = json.loads(self._path.read_text(encoding="utf-8"))
        self._seq = data["seq"]
        self._active = dict(data["active"])
        for item in data["alerts"]:
            item["opened_at"] = parse_ts(item["opened_at"])
            item["updated_at"] = parse_ts(item["updated_at"])
            event = AlertEvent(**item)
            self._alerts[event.alert_id] = event

    def _save(self) -> None:
        if self._path is None:
            return
        from .jsonio import dumps, format_ts

        items = []
        for a in self._alerts.values():
            d = a.__dict__.copy()
            d["opened_at"] = format_ts(a.opened_at)
            d["updated_at"] = format_ts(a.updated_at)
            items.append(d)
        payload = {"seq": self._seq, "active": self._active, "alerts": items}
        tmp = self._path.with_suffix(".tmp")
        tmp.write_text(dumps(payload), encoding="utf-8")
        tmp.replace(self._path)

    # -- queries ---------------------------------------------------------------

    def get(self, alert_id: str) -> AlertEvent:
        alert = self._alerts.get(alert_id)
        if alert is None:
            raise UnknownAlertError(alert_id)
        return alert

    def list(self, state: Optional[str] = None) -> list[AlertEvent]:
        alerts = sorted(self._alerts.values(), key=lambda a: a.alert_id)
        if state is None:
            return alerts
        return [a for a in alerts if a.state == state]

    def open_alerts(self) -> list[AlertEvent]:
        return [a for a in self.list() if a.state != RESOLVED]

    # -- lifecycle ---------------------------------------------------------------

    def _store(self, alert: AlertEvent) -> AlertEvent:
        self._alerts[alert.alert_id] = alert
        return alert

    def transition(self, alert_id: str, action: str, now: Optional[datetime] = None) -> AlertEvent:
        if action not in ("acknowledge", "resolve"):
            raise TransitionError(f"unknown action {action!r}")
        alert = self.get(alert_id)
        target = ACKNOWLEDGED if action == "acknowledge" else RESOLVED
        new_state = apply_transition(alert.state, target)
        updated = replace(alert, state=new_state, updated_at=now or utc_now())
        self._store(updated)
        if new_state == RESOLVED and self._active.get(alert.rule_id) == alert_id:
            del self._active[alert.rule_id]
        self._save()
        return updated

    def evaluate(
        self,
        rules: list[AlertRule],
        values: dict[str, "object"],
        period: Period,
        now: Optional[datetime] = None,
    ) -> list[AlertEvent]:
        """Evaluate every rule against the period's KPI values.

        Returns the alerts touched this round. Undefined KPI values raise an
        info-severity data-quality alert instead of the threshold alert.
        """
        now = now or utc_now()
        touched: list[AlertEvent] = []
        for rule in rules:
            kv = values.get(rule.kpi_id)
            if kv is None:
                continue
            active_id = self._active.get(rule.rule_id)
            active = self._alerts.get(active_id) if active_id else None
            if kv.value is None:
                touched.extend(self._handle_undefined(rule, kv, period, now, active))
            elif rule.holds(kv.value):
                touched.append(self._handle_firing(rule, kv, period, now, active))
            else:
                if active is not None:
                    touched.append(self._auto_resolve(active, now))
        self._save()
        return touched

    def _next_id(self) -> str:
        self._seq += 1
        return f"al_{self._seq:05d}"

    def _open(self, rule, kind, severity, period, observed, reason, now) -> AlertEvent:
        alert = AlertEvent(
            alert_id=self._next_id(),
            rule_id=rule.rule_id,
            kpi_id=rule.kpi_id,
            kind=kind,
            severity=severity,
            state=OPEN,
            period=period.label,
            first_period=period.label,
            observed_value=observed,
            reason=reason,
            opened_at=now,
            updated_at=now,
        )
        self._active[rule.rule_id] = alert.alert_id
        return self._store(alert)

    def _auto_resolve(self, alert: AlertEvent, now: datetime) -> AlertEvent:
        resolved = replace(alert, state=RESOLVED, updated_at=now)
        self._store(resolved)
        if self._active.get(alert.rule_id) == alert.alert_id:
            del self._active[alert.rule_id]
        return resolved

    def _handle_undefined(self, rule, kv, period, now, active) -> list[AlertEvent]:
        touched = []
        if active is not None and active.kind == THRESHOLD:
            touched.append(self._auto_resolve(active, now))
            active = None
        reason = f"kpi {rule.kpi_id} undefined: {kv.reason}"
        if active is None:
            touched.append(self._open(rule, DATA_QUALITY, "info", period, None, reason, now))
        else:
            touched.append(self._store(replace(
                active, period=period.label, reason=reason, updated_at=now,
            )))
        return touched

    def _handle_firing(self, rule, kv, period, now, active) -> AlertEvent:
        observed = float(kv.value)
        if active is not None and active.kind == DATA_QUALITY:
            self._auto_resolve(active, now)
            active = None
        if active is None:
            return self._open(
                rule, THRESHOLD, rule.severity, period, observed,
                f"{rule.kpi_id} {rule.comparator} {rule.threshold}", now,
            )
        updated = replace(active, period=period.label, observed_value=observed, updated_at=now)
        first = parse_period(updated.first_period)
        if updated.state == OPEN and months_between(first, period) >= rule.escalate_after_periods:
            updated = replace(updated, state=apply_transition(updated.state, ESCALATED))
        return self._store(updated)
