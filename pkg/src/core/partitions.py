"""Noncrossing pair partitions, nearest outer blocks and adaptedness to star words."""
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations
from math import comb
import json
import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..config.limits import DEFAULT_LIMITS
from .errors import InvalidWordLength, LengthMismatch, LimitExceeded, NoOuterBlock, NotAdapted
from .words import StarWord, as_word

logger = logging.getLogger(__name__)

IMAGINARY = 0

Block = Tuple[int, int]


class AdaptationMode(Enum):
    """How a pair partition must match the star pattern of a word."""
    CREATION = "creation"   # (eps_left, eps_right) = (*, 1)
    ETA = "eta"             # eps_left != eps_right

    @classmethod
    def parse(cls, value) -> "AdaptationMode":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


class BlockPairType(Enum):
    """Star placement on a block V and its nearest outer block o(V)."""
    TYPE1 = 1   # right leg of V, left leg of o(V)
    TYPE2 = 2   # left leg of V, right leg of o(V)
    TYPE3 = 3   # left legs of both
    TYPE4 = 4   # right legs of both


@dataclass(frozen=True)
class PairPartition:
    """
    A noncrossing pair partition of [m].

    Blocks are stored sorted by left leg and indexed 1..s in that order;
    index 0 is the implicit imaginary block {0, m+1}.
    """
    m: int
    blocks: Tuple[Block, ...]
    _outer: Tuple[int, ...] = field(default=(), repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.m % 2:
            raise InvalidWordLength(f"Pair partitions need an even ground set, got m={self.m}")
        if self.blocks != tuple(sorted(self.blocks)):
            raise ValueError("Blocks must be sorted by left leg")
        legs = sorted(leg for block in self.blocks for leg in block)
        if legs != list(range(1, self.m + 1)):
            raise ValueError(f"Blocks {self.blocks} do not partition [1, {self.m}]")
        for left, right in self.blocks:
            if not left < right:
                raise ValueError(f"Block {(left, right)} must have left < right")
        if not self._outer:
            object.__setattr__(self, "_outer", _compute_outer(self.blocks))

    @property
    def s(self) -> int:
        return len(self.blocks)

    def block(self, k: int) -> Block:
        """Legs of real block k (1-based)."""
        if not 1 <= k <= self.s:
            raise IndexError(f"Block index {k} outside 1..{self.s}")
        return self.blocks[k - 1]

    def outer_map(self) -> Tuple[int, ...]:
        """o(k) for k = 1..s, as a tuple indexed from 0."""
        return self._outer

    def children(self, k: int) -> List[int]:
        """Blocks whose nearest outer block is k, left to right."""
        return [j for j, o in enumerate(self._outer, start=1) if o == k]

    def depth(self, k: int) -> int:
        depth = 0
        while k != IMAGINARY:
            k = self._outer[k - 1]
            depth += 1
        return depth

    def to_list(self) -> List[List[int]]:
        return [[left, right] for left, right in self.blocks]

    def to_json(self) -> str:
        return json.dumps(self.to_list(), separators=(",", ":"))

    @classmethod
    def from_blocks(cls, blocks, m: Optional[int] = None) -> "PairPartition":
        ordered = tuple(sorted((min(b), max(b)) for b in blocks))
        if m is None:
            m = 2 * len(ordered)
        if _crosses(ordered):
            raise ValueError(f"Blocks {ordered} are crossing")
        return cls(m, ordered)

    def __str__(self) -> str:
        return "{" + ",".join("{%d,%d}" % b for b in self.blocks) + "}"


def _crosses(blocks: Sequence[Block]) -> bool:
    for (l1, r1), (l2, r2) in combinations(blocks, 2):
        if l1 < l2 < r1 < r2 or l2 < l1 < r2 < r1:
            return True
    return False


def _compute_outer(blocks: Sequence[Block]) -> Tuple[int, ...]:
    # A stack of open blocks while sweeping the positions left to right.
    opens = {left: k for k, (left, _) in enumerate(blocks, start=1)}
    closes = {right: k for k, (_, right) in enumerate(blocks, start=1)}
    outer = [IMAGINARY] * len(blocks)
    stack: List[int] = []
    for position in range(1, 2 * len(blocks) + 1):
        if position in opens:
            k = opens[position]
            outer[k - 1] = stack[-1] if stack else IMAGINARY
            stack.append(k)
        else:
            k = closes[position]
            if not stack or stack[-1] != k:
                raise ValueError("Blocks are crossing")
            stack.pop()
    return tuple(outer)


def catalan(n: int) -> int:
    """The n-th Catalan number C_n = binom(2n, n)/(n+1)."""
    return comb(2 * n, n) // (n + 1)


def _check_m(m: int, limit: Optional[int]) -> None:
    if m % 2:
        raise InvalidWordLength(f"Ground set size m={m} is odd")
    if m < 0:
        raise InvalidWordLength(f"Ground set size m={m} is negative")
    limit = DEFAULT_LIMITS.max_m if limit is None else limit
    if m > limit:
        raise LimitExceeded("m", m, limit)


@lru_cache(maxsize=None)
def _pairings(first: int, last: int) -> Tuple[Tuple[Block, ...], ...]:
    # All noncrossing pairings of [first, last], blocks sorted by left leg.
    if first > last:
        return ((),)
    result = []
    for partner in range(first + 1, last + 1, 2):
        for inside in _pairings(first + 1, partner - 1):
            for outside in _pairings(partner + 1, last):
                result.append(((first, partner),) + inside + outside)
    return tuple(result)


def enumerate_nc2(m: int, limit: Optional[int] = None) -> List[PairPartition]:
    """
    Enumerate all noncrossing pair partitions of [m] in canonical order.

    The block containing position 1 pairs with an even-offset partner and the
    recursion runs on the inside and the outside; the resulting order is
    lexicographic in the block list.

    Args:
        m: Even size of the ground set
        limit: Largest allowed m (defaults to the configured limit)

    Returns:
        List of PairPartition, Catalan(m/2) of them

    Raises:
        InvalidWordLength: If m is odd
        LimitExceeded: If m exceeds the limit
    """
    _check_m(m, limit)
    partitions = [PairPartition(m, blocks) for blocks in _pairings(1, m)]
    logger.debug(f"Enumerated {len(partitions)} noncrossing pair partitions of [{m}]")
    return partitions


def brute_force_nc2(m: int) -> List[PairPartition]:
    """All perfect matchings of [m] filtered for crossings; an independent oracle."""
    if m % 2:
        raise InvalidWordLength(f"Ground set size m={m} is odd")

    def matchings(points: Tuple[int, ...]) -> Iterator[Tuple[Block, ...]]:
        if not points:
            yield ()
            return
        first, rest = points[0], points[1:]
        for i, partner in enumerate(rest):
            for tail in matchings(rest[:i] + rest[i + 1:]):
                yield ((first, partner),) + tail

    found = [tuple(sorted(match)) for match in matchings(tuple(range(1, m + 1)))]
    return [PairPartition(m, blocks) for blocks in sorted(found) if not _crosses(blocks)]


def nearest_outer(p: PairPartition, k: int) -> int:
    """
    Index of the nearest outer block o(V_k).

    Args:
        p: Pair partition
        k: Block index 1..s

    Returns:
        Block index 0..s, 0 meaning the imaginary block

    Raises:
        IndexError: If k is not a valid block index
    """
    if not 1 <= k <= p.s:
        raise IndexError(f"Block index {k} outside 1..{p.s}")
    return p.outer_map()[k - 1]


def _block_adapted(left, right, mode: AdaptationMode) -> bool:
    if left.label != right.label:
        return False
    if mode is AdaptationMode.CREATION:
        return left.starred and not right.starred
    return left.starred != right.starred


def is_adapted(p: PairPartition, word, mode=AdaptationMode.ETA) -> bool:
    """
    Check whether every block of p respects the star condition and label equality.

    Raises:
        LengthMismatch: If p.m differs from the word length
    """
    word = as_word(word)
    mode = AdaptationMode.parse(mode)
    if p.m != len(word):
        raise LengthMismatch(f"Partition on {p.m} points vs word of length {len(word)}")
    return all(_block_adapted(word.at(left), word.at(right), mode) for left, right in p.blocks)


def adapted_partitions(word, mode=AdaptationMode.ETA, limit: Optional[int] = None) -> List[PairPartition]:
    """
    Noncrossing pair partitions adapted to a word, in canonical order.

    Odd-length words yield an empty list rather than an error.
    """
    word = as_word(word)
    mode = AdaptationMode.parse(mode)
    if len(word) % 2:
        return []
    return [p for p in enumerate_nc2(len(word), limit=limit) if is_adapted(p, word, mode)]


def left_leg_starred(p: PairPartition, word: StarWord, k: int) -> bool:
    return word.at(p.block(k)[0]).starred


def require_adapted(p: PairPartition, word: StarWord, mode: AdaptationMode) -> None:
    if not is_adapted(p, word, mode):
        raise NotAdapted(f"Partition {p} is not {mode.value}-adapted to word {word}")


def classify_block_pair(p: PairPartition, word, k: int) -> BlockPairType:
    """
    Type of the pair (V_k, o(V_k)) by the placement of their starred legs.

    Raises:
        NoOuterBlock: If o(V_k) is the imaginary block, whose legs carry no stars
        NotAdapted: If the word is not eta-adapted to p
    """
    word = as_word(word)
    require_adapted(p, word, AdaptationMode.ETA)
    outer = nearest_outer(p, k)
    if outer == IMAGINARY:
        raise NoOuterBlock(f"Block {k} of {p} has no real outer block")
    inner_left = left_leg_starred(p, word, k)
    outer_left = left_leg_starred(p, word, outer)
    if not inner_left and outer_left:
        return BlockPairType.TYPE1
    if inner_left and not outer_left:
        return BlockPairType.TYPE2
    if inner_left and outer_left:
        return BlockPairType.TYPE3
    return BlockPairType.TYPE4


def block_pair_types(p: PairPartition, word) -> Dict[int, BlockPairType]:
    """Types of every block that has a real nearest outer block."""
    word = as_word(word)
    return {k: classify_block_pair(p, word, k)
            for k in range(1, p.s + 1) if nearest_outer(p, k) != IMAGINARY}
