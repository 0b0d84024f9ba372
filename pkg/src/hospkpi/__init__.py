"""Hospital KPI analytics: ingestion, KPI engine, alerting, dashboard API."""

__version__ = "0.1.0"
