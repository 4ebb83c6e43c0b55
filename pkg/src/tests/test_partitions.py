from itertools import product
import unittest

from hypothesis import given, strategies as st

from src.core.errors import (
    InvalidWordLength, LengthMismatch, LimitExceeded, NoOuterBlock, NotAdapted, WordSyntaxError,
)
from src.core.partitions import (
    IMAGINARY, AdaptationMode, BlockPairType, PairPartition, adapted_partitions, block_pair_types,
    brute_force_nc2, catalan, classify_block_pair, enumerate_nc2, is_adapted, nearest_outer,
)
from src.core.words import StarLetter, StarWord, as_word


class TestStarWord(unittest.TestCase):
    def test_parse_round_trip(self):
        """Token syntax parses into letters and prints back unchanged"""
        word = StarWord.parse("*1, 1,*2,2")
        self.assertEqual(len(word), 4)
        self.assertEqual(word.at(1), StarLetter(True, 1))
        self.assertEqual(word.at(4), StarLetter(False, 2))
        self.assertEqual(str(word), "*1,1,*2,2")
        self.assertEqual(word.labels, [1, 2])

    def test_blank_is_empty_word(self):
        self.assertEqual(len(StarWord.parse("")), 0)

    def test_malformed_tokens_rejected(self):
        for text in ("x1", "*", "1,,1", "**1"):
            with self.assertRaises(WordSyntaxError):
                StarWord.parse(text)

    def test_non_ascii_digits_rejected(self):
        for text in ("*²", "1,٣"):
            with self.assertRaises(WordSyntaxError):
                StarWord.parse(text)

    def test_tt_power(self):
        self.assertEqual(str(StarWord.tt_power(2)), "*1,1,*1,1")
        self.assertEqual(str(StarWord.tt_power(1, label=3)), "*3,3")

    def test_adjoint_reverses_and_flips(self):
        self.assertEqual(str(StarWord.parse("*1,*1,2").adjoint()), "*2,1,1")

    def test_as_word_accepts_pairs(self):
        self.assertEqual(as_word([(True, 1), (False, 1)]), StarWord.tt_power(1))


class TestEnumeration(unittest.TestCase):
    def test_counts_are_catalan(self):
        """|NC2(2n)| = C_n"""
        for m in range(0, 15, 2):
            self.assertEqual(len(enumerate_nc2(m)), catalan(m // 2))

    def test_small_cases(self):
        self.assertEqual([p.blocks for p in enumerate_nc2(0)], [()])
        self.assertEqual([p.blocks for p in enumerate_nc2(2)], [((1, 2),)])
        self.assertEqual(len(enumerate_nc2(6)), 5)

    def test_matches_brute_force(self):
        for m in range(0, 11, 2):
            self.assertEqual(enumerate_nc2(m), brute_force_nc2(m))

    def test_canonical_order(self):
        blocks = [p.blocks for p in enumerate_nc2(8)]
        self.assertEqual(blocks, sorted(blocks))

    def test_odd_m_rejected(self):
        with self.assertRaises(InvalidWordLength):
            enumerate_nc2(5)

    def test_limit(self):
        with self.assertRaises(LimitExceeded):
            enumerate_nc2(22)
        with self.assertRaises(LimitExceeded):
            enumerate_nc2(8, limit=6)

    def test_crossing_blocks_rejected(self):
        with self.assertRaises(ValueError):
            PairPartition.from_blocks([(1, 3), (2, 4)])

    def test_to_json(self):
        self.assertEqual(PairPartition.from_blocks([(3, 4), (1, 2)]).to_json(), "[[1,2],[3,4]]")

    @given(st.sampled_from([2, 4, 6, 8, 10]), st.data())
    def test_outer_block_encloses(self, m, data):
        """o(k) is the innermost block containing block k"""
        p = data.draw(st.sampled_from(enumerate_nc2(m)))
        for k in range(1, p.s + 1):
            left, right = p.block(k)
            o = nearest_outer(p, k)
            enclosing = [j for j in range(1, p.s + 1)
                         if p.block(j)[0] < left and right < p.block(j)[1]]
            if o == IMAGINARY:
                self.assertEqual(enclosing, [])
            else:
                self.assertIn(o, enclosing)
                self.assertEqual(max(enclosing, key=lambda j: p.block(j)[0]), o)


class TestNearestOuter(unittest.TestCase):
    def test_nested_chain(self):
        p = PairPartition.from_blocks([(1, 6), (2, 5), (3, 4)])
        self.assertEqual([nearest_outer(p, k) for k in (1, 2, 3)], [0, 1, 2])

    def test_shared_outer(self):
        p = PairPartition.from_blocks([(1, 6), (2, 3), (4, 5)])
        self.assertEqual(nearest_outer(p, 2), 1)
        self.assertEqual(nearest_outer(p, 3), 1)
        self.assertEqual(p.children(1), [2, 3])

    def test_outer_chains_reach_imaginary(self):
        """Following o from any block reaches 0 within s steps"""
        for m in range(2, 11, 2):
            for p in enumerate_nc2(m):
                for k in range(1, p.s + 1):
                    steps, j = 0, k
                    while j != IMAGINARY:
                        j = nearest_outer(p, j)
                        steps += 1
                        self.assertLessEqual(steps, p.s)
                    self.assertEqual(steps, p.depth(k))

    def test_invalid_index(self):
        p = PairPartition.from_blocks([(1, 2)])
        for k in (0, 2):
            with self.assertRaises(IndexError):
                nearest_outer(p, k)


class TestAdaptedness(unittest.TestCase):
    def test_creation_word_nested(self):
        word = StarWord.parse("*1,*1,*1,1,1,1")
        nested = PairPartition.from_blocks([(1, 6), (2, 5), (3, 4)])
        self.assertTrue(is_adapted(nested, word, AdaptationMode.CREATION))
        self.assertEqual(adapted_partitions(word, "creation"), [nested])

    def test_creation_at_most_one(self):
        for m in range(0, 13, 2):
            partitions = enumerate_nc2(m)
            for stars in product((True, False), repeat=m):
                word = StarWord(tuple(StarLetter(s, 1) for s in stars))
                adapted = [p for p in partitions if is_adapted(p, word, AdaptationMode.CREATION)]
                self.assertLessEqual(len(adapted), 1, str(word))

    def test_eta_tt_power(self):
        self.assertEqual(len(adapted_partitions(StarWord.tt_power(3))), 5)

    def test_labels_must_match(self):
        self.assertEqual(adapted_partitions("*1,2"), [])

    def test_odd_word_has_none(self):
        self.assertEqual(adapted_partitions("*1,1,*1"), [])

    def test_length_mismatch(self):
        with self.assertRaises(LengthMismatch):
            is_adapted(PairPartition.from_blocks([(1, 2)]), "*1,1,*1,1")


class TestBlockPairTypes(unittest.TestCase):
    def test_alternating_word(self):
        word = StarWord.tt_power(3)
        p = PairPartition.from_blocks([(1, 6), (2, 5), (3, 4)])
        self.assertEqual(classify_block_pair(p, word, 2), BlockPairType.TYPE1)
        self.assertEqual(classify_block_pair(p, word, 3), BlockPairType.TYPE2)
        with self.assertRaises(NoOuterBlock):
            classify_block_pair(p, word, 1)

    def test_both_left_and_both_right(self):
        p = PairPartition.from_blocks([(1, 4), (2, 3)])
        self.assertEqual(classify_block_pair(p, "*1,*1,1,1", 2), BlockPairType.TYPE3)
        self.assertEqual(classify_block_pair(p, "1,1,*1,*1", 2), BlockPairType.TYPE4)

    def test_not_adapted(self):
        p = PairPartition.from_blocks([(1, 4), (2, 3)])
        with self.assertRaises(NotAdapted):
            classify_block_pair(p, "*1,*1,*1,*1", 2)

    def test_alternating_words_only_types_one_and_two(self):
        for n in range(1, 6):
            word = StarWord.tt_power(n)
            for p in adapted_partitions(word):
                self.assertLessEqual(set(block_pair_types(p, word).values()),
                                     {BlockPairType.TYPE1, BlockPairType.TYPE2})


if __name__ == '__main__':
    unittest.main()
