# Acceptance suite
from .acceptance import CheckResult, check_registry, register_check, run_suite

__all__ = ['CheckResult', 'check_registry', 'register_check', 'run_suite']
