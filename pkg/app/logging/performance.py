import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional

import structlog


def performance_log(
    operation: str,
    duration_ms: float,
    success: bool,
    details: Optional[Dict[str, Any]] = None,
) -> None:
    """Log a timing record for monitoring the slow paths (oracle, training, bench)."""

    perf_entry = {
        "operation": operation,
        "duration_ms": round(duration_ms, 3),
        "success": success,
        "details": details or {},
    }

    perf_logger = structlog.get_logger("performance")
    perf_logger.info("performance_metric", **perf_entry)


class Stopwatch:
    """Accumulates elapsed milliseconds; `elapsed_ms` is set when the block exits."""

    def __init__(self) -> None:
        self.elapsed_ms = 0.0

    @contextmanager
    def measure(self) -> Iterator["Stopwatch"]:
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.elapsed_ms = (time.perf_counter() - start) * 1000.0


@contextmanager
def timed(operation: str, **details: Any) -> Iterator[Stopwatch]:
    """Time a block and emit a performance record, marking failures."""
    watch = Stopwatch()
    success = False
    try:
        with watch.measure():
            yield watch
        success = True
    finally:
        performance_log(operation, watch.elapsed_ms, success, details)
