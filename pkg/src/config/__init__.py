# Configuration module
from .limits import DEFAULT_LIMITS, Limits
from .loader import ConfigLoader
from .settings import Settings

__all__ = ['DEFAULT_LIMITS', 'Limits', 'ConfigLoader', 'Settings']
