"""Goal targets and status comparison.

Goals file: one per line, ``goal <kpi_id> <YYYY-MM[:ytd]|*> target <value>
[warn <pct>]``. A ``*`` period is a fallback that applies to any period
without an exact goal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .periods import Period, parse_period

ON_TRACK = "on_track"
AT_RISK = "at_risk"
OFF_TRACK = "off_track"


class GoalError(ValueError):
    pass


@dataclass(frozen=True)
class GoalTarget:
    kpi_id: str
    period: Optional[Period]  # None: applies to any period
    target: float
    warn_band_pct: float = 10.0


@dataclass(frozen=True)
class GoalComparison:
    target: float
    warn_band_pct: float
    variance: float                  # value - target
    variance_pct: Optional[float]    # variance / target
    status: str
    reason: Optional[str] = None     # set when the value itself was undefined


def compare_to_goal(value: Optional[Fraction], goal: GoalTarget, direction: str,
                    reason: Optional[str] = None) -> GoalComparison:
    """Banded status: on_track at or past the target, at_risk when within
    ``warn_band_pct`` of it on the wrong side, off_track beyond that.
    An undefined value is off_track with the reason carried along."""
    if value is None:
        return GoalComparison(goal.target, goal.warn_band_pct, 0.0, None, OFF_TRACK,
                              reason=reason or "value undefined")
    target = Fraction(goal.target) if goal.target else Fraction(0)
    band = Fraction(goal.warn_band_pct) / 100
    if direction == "higher_better":
        if value >= target:
            status = ON_TRACK
        elif value >= target * (1 - band):
            status = AT_RISK
        else:
            status = OFF_TRACK
    else:
        if value <= target:
            status = ON_TRACK
        elif value <= target * (1 + band):
            status = AT_RISK
        else:
            status = OFF_TRACK
    variance = value - target
    variance_pct = float(variance / target) if target != 0 else None
    return GoalComparison(goal.target, goal.warn_band_pct, float(variance), variance_pct, status)


class GoalBook:
    def __init__(self, goals: list[GoalTarget]):
        self._exact: dict[tuple[str, str, str], GoalTarget] = {}
        self._fallback: dict[str, GoalTarget] = {}
        for g in goals:
            if g.period is None:
                if g.kpi_id in self._fallback:
                    raise GoalError(f"duplicate fallback goal for {g.kpi_id}")
                self._fallback[g.kpi_id] = g
            else:
                key = (g.kpi_id, g.period.kind, g.period.label)
                if key in self._exact:
                    raise GoalError(f"duplicate goal for {g.kpi_id} {g.period.label}")
                self._exact[key] = g

    def lookup(self, kpi_id: str, period: Period) -> Optional[GoalTarget]:
        return self._exact.get((kpi_id, period.kind, period.label)) or self._fallback.get(kpi_id)

    def __len__(self) -> int:
        return len(self._exact) + len(self._fallback)


_GOAL_RE = re.compile(
    r"^goal\s+(?P<id>\S+)\s+(?P<period>\S+)\s+target\s+(?P<target>-?[\d.]+)"
    r"(?:\s+warn\s+(?P<warn>[\d.]+))?$"
)


def parse_goals(text: str, registry=None, source: str = "<goals>") -> GoalBook:
    goals = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _GOAL_RE.match(line)
        if not m:
            raise GoalError(f"{source}:{lineno}: cannot parse goal line")
        kpi_id = m.group("id")
        if registry is not None and kpi_id not in registry:
            raise GoalError(f"{source}:{lineno}: unknown kpi {kpi_id!r}")
        token = m.group("period")
        if token == "*":
            period = None
        else:
            scope = "month"
            if token.endswith(":ytd"):
                scope, token = "ytd", token[:-4]
            period = parse_period(token, scope)
        goals.append(GoalTarget(
            kpi_id=kpi_id,
            period=period,
            target=float(m.group("target")),
            warn_band_pct=float(m.group("warn")) if m.group("warn") else 10.0,
        ))
    return GoalBook(goals)


def load_goals(path, registry=None) -> GoalBook:
    with open(path, encoding="utf-8") as fh:
        return parse_goals(fh.read(), registry, source=str(path))
