# Reporting module
from .reporter import Reporter
from .csv_reporter import CsvReporter
from .json_reporter import JsonReporter
from .frames import convergence_frame, render_table

__all__ = ['Reporter', 'CsvReporter', 'JsonReporter', 'convergence_frame', 'render_table']
