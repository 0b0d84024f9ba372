#!/usr/bin/env python3
"""Rough timings for the hot engine paths on a synthetic store.

Useful when touching the measure builder: context construction is the only
O(records) step, everything else should be cache hits.
"""

import argparse
import time

from hospkpi.engine import Engine
from hospkpi.periods import Period
from hospkpi.registry import default_registry
from hospkpi.store import EventStore
from hospkpi.synth import SynthConfig, generate_synthetic


def timed(label: str, fn, repeat: int = 1):
    start = time.perf_counter()
    result = None
    for _ in range(repeat):
        result = fn()
    elapsed = (time.perf_counter() - start) / repeat
    print(f"{label:45s} {elapsed * 1000:9.2f} ms")
    return result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--months", type=int, default=3)
    parser.add_argument("--mean", type=float, default=10.0)
    args = parser.parse_args()

    config = SynthConfig(seed=args.seed, months=args.months, daily_admissions_mean=args.mean)
    batch = timed("generate_synthetic", lambda: generate_synthetic(config))
    store = EventStore()
    timed(f"ingest ({len(batch.records)} records)", lambda: store.ingest(batch))

    registry = default_registry()
    period = Period("month", config.start_year, min(2, args.months))

    engine = Engine(store.snapshot(), registry)
    timed("measure context (cold)", lambda: engine.context(period))
    timed("measure context (cached)", lambda: engine.context(period), repeat=100)
    timed("full catalog, one period", lambda: [
        engine.kpi_value(d.kpi_id, period) for d in registry
    ])
    timed("drilldown revenue by department",
          lambda: engine.drilldown("revenue", period, "department"))
    timed("ytd full catalog", lambda: [
        engine.ytd(d.kpi_id, config.start_year, args.months) for d in registry
    ])
    timed("drg ranking", lambda: engine.rank_drg(period, "revenue", "top", 10))
    timed("provider table", lambda: engine.provider_kpis(period))


if __name__ == "__main__":
    main()
