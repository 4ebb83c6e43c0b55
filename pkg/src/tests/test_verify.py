import unittest
from unittest.mock import patch

from src.verify.acceptance import CheckFailed, check_registry, register_check, run_suite

EXACT_CHECKS = ['closed-form', 'tt3-volumes', 'creation-examples', 'tree-counts', 'bijection',
                'oracles', 'circular-catalan', 'grid-refinement']


class TestAcceptanceSuite(unittest.TestCase):
    def test_registry_covers_every_criterion(self):
        self.assertEqual(list(check_registry)[:len(EXACT_CHECKS)], EXACT_CHECKS)
        self.assertIn('monte-carlo', check_registry)
        self.assertIn('structure', check_registry)

    def test_exact_checks_pass(self):
        results = run_suite(max_n=4, names=EXACT_CHECKS)
        self.assertEqual([r.name for r in results], EXACT_CHECKS)
        for result in results:
            self.assertTrue(result.passed, f"{result.name}: {result.detail}")

    def test_structure_check(self):
        (result,) = run_suite(max_n=3, names=['structure'])
        self.assertTrue(result.passed, result.detail)

    def test_monte_carlo_anchors(self):
        (result,) = run_suite(max_n=3, names=['monte-carlo'], seed=42, sim_n=200, trials=200)
        self.assertTrue(result.passed, result.detail)
        for anchor in ('strict-upper^2', 'strict-upper^3', 'iid^2'):
            self.assertIn(anchor, result.detail)

    def test_small_monte_carlo(self):
        (result,) = run_suite(max_n=1, names=['monte-carlo'], sim_n=100, trials=50)
        self.assertTrue(result.passed, result.detail)

    def test_failure_is_reported(self):
        with patch.dict(check_registry):
            @register_check('broken')
            def broken(opts):
                raise CheckFailed("expected failure")

            (result,) = run_suite(max_n=1, names=['broken'])
        self.assertFalse(result.passed)
        self.assertEqual(result.detail, "expected failure")
        self.assertNotIn('broken', check_registry)

    def test_arguments_validated(self):
        with self.assertRaises(ValueError):
            run_suite(max_n=0)
        with self.assertRaises(ValueError):
            run_suite(names=['missing'])


if __name__ == '__main__':
    unittest.main()
