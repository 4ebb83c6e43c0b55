from concurrent.futures import ThreadPoolExecutor
import logging
import os
from typing import Callable, Iterable, List, Optional, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

WORKERS_ENV = "MOMENTS_WORKERS"


def resolve_workers(requested: Optional[int] = None) -> int:
    """
    Worker count: explicit request, else the MOMENTS_WORKERS env var, else 1.
    """
    if requested is not None:
        return max(1, int(requested))
    value = os.getenv(WORKERS_ENV)
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            logger.warning(f"Ignoring non-integer {WORKERS_ENV}={value!r}")
    return 1


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """Map fn over items, in parallel when workers > 1; results keep input order."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))
