"""
Performance Optimization Module for the quantum Minkowski engine
Wall-time metrics for the verification suites and a thread-pool fan-out for
independent suite cases.
"""

import functools
import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime
from typing import Any, Callable, Dict, Iterable, List, Optional, TypeVar

from config import MAX_WORKERS

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


class PerformanceOptimizer:
    """Records per-operation timings and runs independent cases concurrently."""

    def __init__(self, max_workers: int = MAX_WORKERS):
        self.max_workers = max(1, max_workers)
        self.performance_metrics: Dict[str, Dict[str, Any]] = {}
        self._lock = threading.Lock()

    def timed(self, operation: Optional[str] = None):
        """Decorator recording the wall time of every call under ``operation``."""
        def decorator(func: Callable) -> Callable:
            name = operation or func.__name__

            @functools.wraps(func)
            def wrapper(*args, **kwargs):
                start_time = time.perf_counter()
                try:
                    return func(*args, **kwargs)
                finally:
                    self.record_performance_metric(name, time.perf_counter() - start_time)
            return wrapper
        return decorator

    def record_performance_metric(self, operation: str, execution_time: float):
        """Record performance metrics for monitoring."""
        with self._lock:
            if operation not in self.performance_metrics:
                self.performance_metrics[operation] = {
                    'total_calls': 0,
                    'total_time': 0.0,
                    'avg_time': 0.0,
                    'min_time': float('inf'),
                    'max_time': 0.0,
                    'last_call': None
                }

            metrics = self.performance_metrics[operation]
            metrics['total_calls'] += 1
            metrics['total_time'] += execution_time
            metrics['avg_time'] = metrics['total_time'] / metrics['total_calls']
            metrics['min_time'] = min(metrics['min_time'], execution_time)
            metrics['max_time'] = max(metrics['max_time'], execution_time)
            metrics['last_call'] = datetime.now().isoformat()

    def batch_process(self, func: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """Map ``func`` over ``items`` on the thread pool, preserving order.

        Exceptions raised by ``func`` propagate.
        """
        items = list(items)
        if self.max_workers == 1 or len(items) < 2:
            return [func(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            return list(pool.map(func, items))

    def get_performance_report(self) -> Dict[str, Any]:
        """Generate performance report."""
        with self._lock:
            operations = {name: dict(metrics) for name, metrics in self.performance_metrics.items()}
        return {
            'operations': operations,
            'total_time': sum(m['total_time'] for m in operations.values()),
        }

    def reset(self):
        with self._lock:
            self.performance_metrics.clear()


# Global instance
performance_optimizer = PerformanceOptimizer()
