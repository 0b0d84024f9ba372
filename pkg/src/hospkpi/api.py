"""HTTP interface for the dashboard and other clients.

All read endpoints serve from one immutable snapshot per request and are
side-effect free; only ``POST /ingest`` and ``POST /alerts/{id}/{action}``
mutate state. Bodies are rendered through the same canonical serializer the
CLI uses, so equal queries produce byte-equal JSON.

Auth: if the ``HOSPKPI_TOKEN`` environment variable is set, every request
must carry ``Authorization: Bearer <token>``; without the variable the
service runs open for local use.
"""

from __future__ import annotations

import os
from typing import Optional

from fastapi import Depends, FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import jsonio
from .alerts import AlertBook, AlertRule, TransitionError, UnknownAlertError
from .config import EngineConfig
from .engine import DrilldownError, Engine
from .goals import GoalBook
from .ingest import parse_records
from .periods import DimensionFilter, Period, PeriodError, parse_period
from .present import (
    alert_payload,
    definition_payload,
    drilldown_payload,
    kpi_value_payload,
    rank_payload,
    series_payload,
)
from .registry import Registry, default_registry
from .store import EventStore
from .views import VIEWS, build_view


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class AppState:
    def __init__(
        self,
        store: EventStore,
        registry: Optional[Registry] = None,
        goals: Optional[GoalBook] = None,
        rules: Optional[list[AlertRule]] = None,
        config: Optional[EngineConfig] = None,
        alert_book: Optional[AlertBook] = None,
        token: Optional[str] = None,
    ):
        self.store = store
        self.registry = registry or default_registry()
        self.goals = goals
        self.rules = rules or []
        self.config = config or EngineConfig()
        if alert_book is None:
            path = store.data_dir / "alerts.json" if store.data_dir else None
            alert_book = AlertBook(path)
        self.alert_book = alert_book
        self.token = token if token is not None else os.environ.get("HOSPKPI_TOKEN")
        self._engine: Optional[Engine] = None

    def engine(self) -> Engine:
        snapshot = self.store.snapshot()
        if self._engine is None or self._engine.snapshot.version != snapshot.version:
            self._engine = Engine(snapshot, self.registry, self.config, self.goals)
        return self._engine

    def latest_month(self) -> Optional[Period]:
        snapshot = self.store.snapshot()
        latest = None
        for e in snapshot.encounters:
            if latest is None or e.admit_ts > latest:
                latest = e.admit_ts
        for t in snapshot.txns:
            if latest is None or t.ts > latest:
                latest = t.ts
        if latest is None:
            return None
        return Period("month", latest.year, latest.month)


def _json(payload, status: int = 200) -> Response:
    return Response(
        content=jsonio.dumps(payload),
        status_code=status,
        media_type="application/json",
    )


def _parse_period_params(period: Optional[str], scope: str) -> Period:
    if not period:
        raise ApiError(400, "missing_period", "query parameter 'period' is required")
    try:
        return parse_period(period, scope)
    except PeriodError as exc:
        raise ApiError(400, "invalid_period", str(exc)) from None


def _parse_filter(
    department: Optional[str], doctor: Optional[str], location: Optional[str],
    drg: Optional[str], organ: Optional[str],
) -> DimensionFilter:
    return DimensionFilter(
        department=department, doctor_id=doctor, location=location,
        drg_code=drg, organ=organ,
    )


def create_app(state: AppState) -> FastAPI:
    app = FastAPI(title="hospkpi", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError):
        return _json({"code": exc.code, "message": exc.message}, status=exc.status)

    async def require_auth(request: Request) -> None:
        if state.token is None:
            return
        header = request.headers.get("authorization", "")
        if header != f"Bearer {state.token}":
            raise ApiError(401, "unauthorized", "missing or invalid bearer token")

    auth = Depends(require_auth)

    @app.get("/health")
    async def health(_: None = auth):
        return _json({"status": "ok"})

    @app.get("/kpis")
    async def list_kpis(_: None = auth):
        return _json([definition_payload(d) for d in state.registry])

    def _require_kpi(kpi_id: str) -> None:
        if state.registry.get(kpi_id) is None:
            raise ApiError(404, "unknown_kpi", f"unknown kpi {kpi_id!r}")

    @app.get("/kpis/{kpi_id}/value")
    async def kpi_value(
        kpi_id: str,
        period: Optional[str] = None,
        scope: str = "month",
        department: Optional[str] = None,
        doctor: Optional[str] = None,
        location: Optional[str] = None,
        drg: Optional[str] = None,
        organ: Optional[str] = None,
        drilldown: Optional[str] = None,
        _: None = auth,
    ):
        _require_kpi(kpi_id)
        p = _parse_period_params(period, scope)
        filt = _parse_filter(department, doctor, location, drg, organ)
        engine = state.engine()
        if drilldown:
            try:
                total, rows = engine.drilldown(kpi_id, p, drilldown, filt)
            except DrilldownError as exc:
                raise ApiError(400, "invalid_dimension", str(exc)) from None
            return _json(drilldown_payload(engine, kpi_id, p, drilldown, total, rows))
        kv = engine.kpi_value(kpi_id, p, filt)
        return _json(kpi_value_payload(engine, kv))

    @app.get("/kpis/{kpi_id}/series")
    async def kpi_series(
        kpi_id: str,
        request: Request,
        department: Optional[str] = None,
        doctor: Optional[str] = None,
        location: Optional[str] = None,
        drg: Optional[str] = None,
        organ: Optional[str] = None,
        _: None = auth,
    ):
        _require_kpi(kpi_id)
        start = _parse_period_params(request.query_params.get("from"), "month")
        end = _parse_period_params(request.query_params.get("to"), "month")
        if (start.year, start.month) > (end.year, end.month):
            raise ApiError(400, "invalid_period", "'from' is after 'to'")
        filt = _parse_filter(department, doctor, location, drg, organ)
        engine = state.engine()
        points = engine.series(kpi_id, start, end, filt)
        return _json(series_payload(engine, kpi_id, points))

    @app.get("/dashboards/{view}")
    async def dashboard(
        view: str,
        period: Optional[str] = None,
        department: Optional[str] = None,
        doctor: Optional[str] = None,
        location: Optional[str] = None,
        drg: Optional[str] = None,
        organ: Optional[str] = None,
        _: None = auth,
    ):
        if view not in VIEWS:
            raise ApiError(404, "unknown_view", f"unknown view {view!r}; valid: {', '.join(VIEWS)}")
        p = _parse_period_params(period, "month")
        filt = _parse_filter(department, doctor, location, drg, organ)
        engine = state.engine()
        alerts = state.alert_book.open_alerts()
        return _json(build_view(engine, view, p, alerts, filt))

    @app.get("/alerts")
    async def list_alerts(request: Request, _: None = auth):
        wanted = request.query_params.get("state")  # query name clashes with AppState
        alerts = state.alert_book.list(wanted)
        return _json([alert_payload(a, state.config.currency) for a in alerts])

    @app.post("/alerts/{alert_id}/{action}")
    async def transition_alert(alert_id: str, action: str, _: None = auth):
        if action not in ("acknowledge", "resolve"):
            raise ApiError(400, "unknown_action", f"unknown action {action!r}")
        try:
            alert = state.alert_book.transition(alert_id, action)
        except UnknownAlertError:
            raise ApiError(404, "unknown_alert", f"unknown alert {alert_id!r}") from None
        except TransitionError as exc:
            raise ApiError(409, "illegal_transition", str(exc)) from None
        return _json(alert_payload(alert, state.config.currency))

    @app.post("/ingest")
    async def ingest(request: Request, _: None = auth):
        body = await request.body()
        batch, errors = parse_records(body, "jsonl", source_name="http")
        summary = state.store.ingest(batch)
        latest = state.latest_month()
        if state.rules and latest is not None:
            engine = state.engine()
            values = {r.kpi_id: engine.kpi_value(r.kpi_id, latest) for r in state.rules}
            state.alert_book.evaluate(state.rules, values, latest)
        payload = summary.as_dict()
        payload["parse_errors"] = [{"line": e.line, "reason": e.reason} for e in errors]
        return _json(payload)

    @app.get("/drg/rank")
    async def drg_rank(
        period: Optional[str] = None,
        key: str = "revenue",
        order: str = "top",
        n: int = 10,
        _: None = auth,
    ):
        p = _parse_period_params(period, "month")
        engine = state.engine()
        try:
            rows = engine.rank_drg(p, key, order, n)
        except ValueError as exc:
            raise ApiError(400, "invalid_rank_query", str(exc)) from None
        return _json(rank_payload(engine, p, key, order, rows))

    return app


def serve(state: AppState, host: str = "127.0.0.1", port: int = 8000) -> None:
    import uvicorn

    uvicorn.run(create_app(state), host=host, port=port, log_level="warning")
