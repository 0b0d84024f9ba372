"""KPI registry: the catalog of KPI definitions is data, not code.

One definition per line::

    kpi <id> "<display name>" unit=<unit> dir=<direction> cat=<category> := <expression>

``#`` starts a comment. Expressions combine catalog measures with the DSL.
Resolution checks every referenced measure exists, infers which dimensions
a KPI can be drilled down by (the intersection over its measures), and
classifies KPIs as additive (pure +/- over in-period count/sum measures),
which is what makes drilldown components sum exactly to the total.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Iterator, Optional

from . import dsl
from .measures import ALL_DIMS, MEASURES

UNITS = ("ratio", "percent", "days", "count", "money", "minutes", "score")
DIRECTIONS = ("higher_better", "lower_better")
CATEGORIES = ("financial", "operational", "quality", "revenue_cycle", "provider", "transplant")

_SUMMABLE_KINDS = {"count", "money", "minutes", "days", "score", "decimal"}


class RegistryError(ValueError):
    pass


@dataclass(frozen=True)
class KpiDefinition:
    kpi_id: str
    display_name: str
    unit: str
    direction: str
    category: str
    expression: dsl.Expression
    expression_text: str
    dims: frozenset[str]
    additive: bool
    count_denominator: Optional[str]  # measure name when the root is "x / <count measure>"


_ID_RE = re.compile(r"^[a-z_][a-z0-9_]*$")
_LINE_RE = re.compile(
    r'^kpi\s+(?P<id>\S+)\s+"(?P<name>[^"]*)"\s+'
    r"unit=(?P<unit>\S+)\s+dir=(?P<dir>\S+)\s+cat=(?P<cat>\S+)\s*:=\s*(?P<expr>.+)$"
)


def _infer_dims(expr: dsl.Expression) -> frozenset[str]:
    dims = set(ALL_DIMS)
    for name in dsl.measure_names(expr):
        dims &= MEASURES[name].dims
    return frozenset(dims)


def _is_additive(expr: dsl.Expression) -> bool:
    for node in dsl.iter_nodes(expr):
        if isinstance(node, dsl.Literal):
            return False
        if isinstance(node, dsl.Binary) and node.op not in ("+", "-"):
            return False
        if isinstance(node, dsl.MeasureRef):
            spec = MEASURES[node.name]
            if not spec.flow or spec.kind not in _SUMMABLE_KINDS:
                return False
    return True


def _count_denominator(expr: dsl.Expression) -> Optional[str]:
    if (
        isinstance(expr, dsl.Binary)
        and expr.op == "/"
        and isinstance(expr.right, dsl.MeasureRef)
        and MEASURES[expr.right.name].kind == "count"
    ):
        return expr.right.name
    return None


def _build_definition(
    kpi_id: str, name: str, unit: str, direction: str, category: str, expr_text: str,
    where: str,
) -> KpiDefinition:
    if not _ID_RE.match(kpi_id):
        raise RegistryError(f"{where}: bad kpi id {kpi_id!r}")
    if unit not in UNITS:
        raise RegistryError(f"{where}: unknown unit {unit!r}")
    if direction not in DIRECTIONS:
        raise RegistryError(f"{where}: unknown direction {direction!r}")
    if category not in CATEGORIES:
        raise RegistryError(f"{where}: unknown category {category!r}")
    try:
        expr = dsl.parse_text(expr_text)
    except dsl.DslError as exc:
        raise RegistryError(f"{where}: {exc}") from None
    unknown = dsl.measure_names(expr) - set(MEASURES)
    if unknown:
        raise RegistryError(f"{where}: unknown measures {sorted(unknown)}")
    return KpiDefinition(
        kpi_id=kpi_id,
        display_name=name,
        unit=unit,
        direction=direction,
        category=category,
        expression=expr,
        expression_text=dsl.print_expression(expr),
        dims=_infer_dims(expr),
        additive=_is_additive(expr),
        count_denominator=_count_denominator(expr),
    )


class Registry:
    def __init__(self, definitions: list[KpiDefinition]):
        self._defs: dict[str, KpiDefinition] = {}
        for d in definitions:
            if d.kpi_id in self._defs:
                raise RegistryError(f"duplicate kpi id {d.kpi_id!r}")
            self._defs[d.kpi_id] = d

    def __contains__(self, kpi_id: str) -> bool:
        return kpi_id in self._defs

    def __iter__(self) -> Iterator[KpiDefinition]:
        return iter(self._defs.values())

    def __len__(self) -> int:
        return len(self._defs)

    def get(self, kpi_id: str) -> Optional[KpiDefinition]:
        return self._defs.get(kpi_id)

    def require(self, kpi_id: str) -> KpiDefinition:
        d = self._defs.get(kpi_id)
        if d is None:
            raise RegistryError(f"unknown kpi {kpi_id!r}")
        return d

    def by_category(self, category: str) -> list[KpiDefinition]:
        return [d for d in self._defs.values() if d.category == category]

    def ids(self) -> list[str]:
        return list(self._defs)


def parse_registry(text: str, source: str = "<registry>") -> Registry:
    definitions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE_RE.match(line)
        if not m:
            raise RegistryError(f"{source}:{lineno}: cannot parse definition line")
        definitions.append(
            _build_definition(
                m.group("id"), m.group("name"), m.group("unit"),
                m.group("dir"), m.group("cat"), m.group("expr"),
                where=f"{source}:{lineno}",
            )
        )
    return Registry(definitions)


def load_registry(path) -> Registry:
    with open(path, encoding="utf-8") as fh:
        return parse_registry(fh.read(), source=str(path))


def default_registry() -> Registry:
    text = resources.files("hospkpi").joinpath("data/default.kpi").read_text(encoding="utf-8")
    return parse_registry(text, source="default.kpi")
