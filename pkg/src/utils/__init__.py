# Utilities
from .logging_utils import LoggingUtils

__all__ = ['LoggingUtils']
