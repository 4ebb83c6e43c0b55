from fractions import Fraction
import unittest

from hypothesis import given, settings, strategies as st

from src.core.errors import LimitExceeded, NotAdapted
from src.core.partitions import PairPartition, adapted_partitions, enumerate_nc2
from src.core.volumes import (
    ColorPoset, brute_force_extension_count, count_linear_extensions, forest_extension_count,
    iter_linear_extensions, monte_carlo_volume, region_constraints, volume,
)
from src.core.words import StarWord


@st.composite
def acyclic_posets(draw):
    """Random posets on up to 6 elements; edges only go from lower to higher index."""
    size = draw(st.integers(min_value=1, max_value=6))
    pairs = [(a, b) for a in range(size) for b in range(a + 1, size)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return ColorPoset(size, frozenset(chosen))


class TestColorPoset(unittest.TestCase):
    def test_cycle_rejected(self):
        with self.assertRaises(ValueError):
            ColorPoset(3, frozenset({(0, 1), (1, 2), (2, 0)}))

    def test_bad_index_rejected(self):
        with self.assertRaises(ValueError):
            ColorPoset(2, frozenset({(0, 2)}))

    def test_chain(self):
        self.assertEqual(ColorPoset.chain(3).constraints, frozenset({(1, 0), (2, 1)}))


class TestExtensionCounts(unittest.TestCase):
    def test_chain_has_one(self):
        self.assertEqual(count_linear_extensions(ColorPoset.chain(4)), 1)

    def test_fork(self):
        """z < y, w < y, y < x has two orderings"""
        q = ColorPoset(4, frozenset({(2, 1), (3, 1), (1, 0)}))
        self.assertEqual(count_linear_extensions(q), 2)
        self.assertEqual(forest_extension_count(q), 2)

    def test_antichain(self):
        self.assertEqual(count_linear_extensions(ColorPoset(4, frozenset())), 24)

    def test_forest_oracle_declines_two_uppers(self):
        self.assertIsNone(forest_extension_count(ColorPoset(3, frozenset({(0, 1), (0, 2)}))))

    def test_limit(self):
        with self.assertRaises(LimitExceeded):
            count_linear_extensions(ColorPoset(23, frozenset()))
        with self.assertRaises(LimitExceeded):
            count_linear_extensions(ColorPoset(5, frozenset()), limit=4)

    @settings(max_examples=60, deadline=None)
    @given(acyclic_posets())
    def test_dp_matches_oracles(self, q):
        expected = brute_force_extension_count(q)
        self.assertEqual(count_linear_extensions(q), expected)
        extensions = list(iter_linear_extensions(q))
        self.assertEqual(len(extensions), expected)
        self.assertEqual(len(set(extensions)), expected)
        for ranks in extensions:
            self.assertTrue(q.holds(ranks))
            self.assertEqual(sorted(ranks), list(range(1, q.size + 1)))
        forest = forest_extension_count(q)
        if forest is not None:
            self.assertEqual(forest, expected)

    def test_partition_posets_match_brute_force(self):
        for m in range(2, 11, 2):
            word = StarWord.tt_power(m // 2)
            for p in enumerate_nc2(m):
                q = region_constraints(p, word)
                self.assertEqual(count_linear_extensions(q), brute_force_extension_count(q))
                forest = forest_extension_count(q)
                if forest is not None:
                    self.assertEqual(forest, brute_force_extension_count(q))


class TestVolumes(unittest.TestCase):
    def test_tt3_volumes(self):
        word = StarWord.tt_power(3)
        volumes = [volume(p, word) for p in adapted_partitions(word)]
        self.assertEqual(volumes, [Fraction(k, 24) for k in (6, 5, 5, 6, 5)])
        self.assertEqual(sum(volumes), Fraction(9, 8))

    def test_simplex_count(self):
        """Sum of extension counts over adapted partitions is n^n"""
        for n in range(1, 7):
            word = StarWord.tt_power(n)
            total = sum(count_linear_extensions(region_constraints(p, word)) for p in adapted_partitions(word))
            self.assertEqual(total, n ** n)

    def test_creation_chain(self):
        word = StarWord.parse("*1,*1,*1,1,1,1")
        p = PairPartition.from_blocks([(1, 6), (2, 5), (3, 4)])
        self.assertEqual(region_constraints(p, word, "creation"), ColorPoset.chain(4))
        self.assertEqual(volume(p, word, "creation"), Fraction(1, 24))

    def test_reverse_flips_constraints(self):
        word = StarWord.tt_power(1)
        p = PairPartition.from_blocks([(1, 2)])
        self.assertEqual(region_constraints(p, word).constraints, frozenset({(1, 0)}))
        self.assertEqual(region_constraints(p, word, reverse=True).constraints, frozenset({(0, 1)}))

    def test_single_block_is_half(self):
        self.assertEqual(volume(PairPartition.from_blocks([(1, 2)]), "1,*1"), Fraction(1, 2))

    def test_not_adapted(self):
        with self.assertRaises(NotAdapted):
            volume(PairPartition.from_blocks([(1, 2)]), "1,1")


class TestMonteCarloVolume(unittest.TestCase):
    def test_chain_of_four(self):
        estimate = monte_carlo_volume(ColorPoset.chain(4), 1_000_000, seed=42)
        self.assertLessEqual(abs(estimate.estimate - 1 / 24), 4 * estimate.stderr)

    def test_tt3_partitions(self):
        word = StarWord.tt_power(3)
        for p in adapted_partitions(word):
            estimate = monte_carlo_volume(region_constraints(p, word), 1_000_000, seed=42)
            self.assertLessEqual(abs(estimate.estimate - float(volume(p, word))), 4 * estimate.stderr, str(p))

    def test_strictness_immaterial(self):
        q = ColorPoset(4, frozenset({(2, 1), (3, 1), (1, 0)}))
        strict = monte_carlo_volume(q, 100_000, seed=7)
        loose = monte_carlo_volume(q, 100_000, seed=7, strict=False)
        self.assertAlmostEqual(strict.estimate, loose.estimate, places=4)

    def test_no_constraints(self):
        estimate = monte_carlo_volume(ColorPoset(3, frozenset()), 10)
        self.assertEqual((estimate.estimate, estimate.stderr), (1.0, 0.0))

    def test_samples_must_be_positive(self):
        with self.assertRaises(ValueError):
            monte_carlo_volume(ColorPoset.chain(2), 0)


if __name__ == '__main__':
    unittest.main()
