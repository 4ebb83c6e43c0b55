# Worker pool helpers
from .pool import ordered_map, resolve_workers

__all__ = ['ordered_map', 'resolve_workers']
