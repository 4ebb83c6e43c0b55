import csv
from fractions import Fraction
import json
import os
import tempfile
import threading
import unittest
from unittest.mock import patch

from src.randmat.estimator import REPORT_FIELDS, ConvergenceRow
from src.reporting import CsvReporter, JsonReporter, convergence_frame, render_table
from src.threads.pool import ordered_map, resolve_workers

ROW = ConvergenceRow(n=100, r=None, trials=50, seed=42, estimate=0.49, stderr=0.001, exact=Fraction(1, 2))


class TestReporters(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def test_csv_columns(self):
        path = os.path.join(self.tmp.name, 'out', 'report.csv')
        reporter = CsvReporter(path, REPORT_FIELDS)
        reporter.record(ROW.to_record())
        reporter.record({'n': 10, 'ignored': 'x'})
        reporter.finalize()
        with open(path, newline='') as f:
            rows = list(csv.DictReader(f))
        self.assertEqual(list(rows[0]), REPORT_FIELDS)
        self.assertEqual(rows[0]['exact_num'], '1')
        self.assertEqual(rows[0]['exact_den'], '2')
        self.assertEqual(rows[0]['r'], '')
        self.assertEqual(rows[1]['n'], '10')
        self.assertEqual(rows[1]['estimate'], '')

    def test_json_list(self):
        path = os.path.join(self.tmp.name, 'report.json')
        reporter = JsonReporter(path)
        reporter.record(ROW.to_record())
        reporter.finalize()
        with open(path) as f:
            payload = json.load(f)
        self.assertEqual(len(payload), 1)
        self.assertAlmostEqual(payload[0]['abs_gap'], 0.01)

    def test_row_dict(self):
        payload = ROW.to_dict()
        self.assertEqual(payload['exact'], {'num': '1', 'den': '2'})
        self.assertIsNone(payload['r'])

    def test_frame(self):
        frame = convergence_frame([ROW, ROW.to_record()], columns=REPORT_FIELDS)
        self.assertEqual(list(frame.columns), REPORT_FIELDS)
        self.assertEqual(len(frame), 2)
        self.assertIn('exact_num', render_table(frame))
        self.assertEqual(render_table(convergence_frame([])), '(no rows)')


class TestPool(unittest.TestCase):
    def test_order_preserved(self):
        self.assertEqual(ordered_map(lambda x: x * x, range(20), workers=4), [x * x for x in range(20)])

    def test_uses_threads(self):
        names = ordered_map(lambda _: threading.current_thread().name, range(8), workers=2)
        self.assertTrue(all(name != 'MainThread' for name in names))
        self.assertEqual(ordered_map(lambda _: threading.current_thread().name, range(3), workers=1),
                         ['MainThread'] * 3)

    def test_resolve_workers(self):
        with patch.dict(os.environ, {'MOMENTS_WORKERS': '6'}):
            self.assertEqual(resolve_workers(), 6)
            self.assertEqual(resolve_workers(2), 2)
        with patch.dict(os.environ, {'MOMENTS_WORKERS': 'lots'}):
            self.assertEqual(resolve_workers(), 1)
        self.assertEqual(resolve_workers(0), 1)


if __name__ == '__main__':
    unittest.main()
