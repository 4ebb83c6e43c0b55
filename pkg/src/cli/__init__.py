# Command line front end
from .runner import build_parser, run

__all__ = ['build_parser', 'run']
