import pytest

from hospkpi.config import EngineConfig
from hospkpi.engine import Engine
from hospkpi.registry import default_registry
from hospkpi.store import EventStore
from hospkpi.synth import SynthConfig, generate_synthetic

SEED42 = SynthConfig(seed=42, months=3, daily_admissions_mean=10.0)
TWELVE_MONTH = SynthConfig(seed=7, months=12, daily_admissions_mean=3.0)


@pytest.fixture(scope="session")
def registry():
    return default_registry()


@pytest.fixture(scope="session")
def seed42_store():
    store = EventStore()
    summary = store.ingest(generate_synthetic(SEED42))
    assert summary.rejected_invalid == 0
    return store


@pytest.fixture(scope="session")
def seed42_engine(seed42_store, registry):
    return Engine(seed42_store.snapshot(), registry, EngineConfig())


@pytest.fixture(scope="session")
def twelve_month_engine(registry):
    store = EventStore()
    store.ingest(generate_synthetic(TWELVE_MONTH))
    return Engine(store.snapshot(), registry, EngineConfig())


# one pass/fail line per acceptance criterion at the end of the run
_acceptance_results: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        name = report.nodeid.split("::")[-1]
        _acceptance_results[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, outcome in sorted(_acceptance_results.items()):
        terminalreporter.write_line(f"{outcome}: {name}")
