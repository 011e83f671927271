"""
Prometheus metrics for assocmink computations.
"""

import time
from functools import wraps
from typing import Any, Callable, Optional, TypeVar

from prometheus_client import (
    REGISTRY,
    CollectorRegistry,
    Counter,
    Gauge,
    Histogram,
    write_to_textfile,
)

F = TypeVar("F", bound=Callable[..., Any])

operations_total = Counter(
    "assocmink_operations_total",
    "Total number of library operations",
    ["operation", "status"],
)

operation_duration_seconds = Histogram(
    "assocmink_operation_duration_seconds",
    "Time spent on operations",
    ["operation"],
)

invariant_checks_total = Counter(
    "assocmink_invariant_checks_total",
    "Invariant checks performed by verification suites",
    ["suite", "status"],
)

last_vertex_count = Gauge(
    "assocmink_last_vertex_count",
    "Vertex count of the most recently enumerated polytope",
    ["polytope"],
)


class MetricsCollector:
    """Collects and exports metrics for Prometheus."""

    def __init__(self, registry: CollectorRegistry = REGISTRY):
        self.registry = registry

    def record_operation(
        self, operation: str, success: bool, error_type: Optional[str] = None
    ) -> None:
        status = "success" if success else error_type or "failed"
        operations_total.labels(operation=operation, status=status).inc()

    def record_check(self, suite: str, passed: int, failed: int) -> None:
        if passed:
            invariant_checks_total.labels(suite=suite, status="passed").inc(passed)
        if failed:
            invariant_checks_total.labels(suite=suite, status="failed").inc(failed)

    def record_vertex_count(self, polytope: str, count: int) -> None:
        last_vertex_count.labels(polytope=polytope).set(count)

    def time_operation(self, operation: str) -> Callable[[F], F]:
        """Decorator to time operations and count their outcome."""

        def decorator(func: F) -> F:
            @wraps(func)
            def wrapper(*args: Any, **kwargs: Any) -> Any:
                start_time = time.perf_counter()
                try:
                    result = func(*args, **kwargs)
                except Exception as e:
                    self.record_operation(operation, False, type(e).__name__)
                    raise
                finally:
                    duration = time.perf_counter() - start_time
                    operation_duration_seconds.labels(operation=operation).observe(
                        duration
                    )
                self.record_operation(operation, True)
                return result

            return wrapper  # type: ignore[return-value]

        return decorator

    def export(self, path: str) -> None:
        """Write the text exposition format to path."""
        write_to_textfile(path, self.registry)


# Global metrics collector
metrics_collector = MetricsCollector()
