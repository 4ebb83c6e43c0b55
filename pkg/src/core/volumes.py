"""Color-order posets of colored pair partitions and their exact volumes."""
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial, sqrt
import logging
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

import numpy as np

from ..config.limits import DEFAULT_LIMITS
from .errors import LimitExceeded
from .partitions import AdaptationMode, PairPartition, left_leg_starred, require_adapted
from .words import as_word

logger = logging.getLogger(__name__)

Constraint = Tuple[int, int]


@dataclass(frozen=True)
class ColorPoset:
    """
    Strict order constraints among the colors x_0..x_s of a colored partition.

    A constraint (a, b) means x_a < x_b; element 0 is the imaginary block.
    """
    size: int
    constraints: FrozenSet[Constraint]

    def __post_init__(self):
        object.__setattr__(self, "constraints", frozenset(self.constraints))
        for a, b in self.constraints:
            if not (0 <= a < self.size and 0 <= b < self.size) or a == b:
                raise ValueError(f"Invalid constraint {(a, b)} on {self.size} elements")
        if self._has_cycle():
            raise ValueError(f"Constraints {sorted(self.constraints)} contain a directed cycle")

    def _has_cycle(self) -> bool:
        indegree = [0] * self.size
        successors: List[List[int]] = [[] for _ in range(self.size)]
        for a, b in self.constraints:
            successors[a].append(b)
            indegree[b] += 1
        ready = [e for e in range(self.size) if indegree[e] == 0]
        visited = 0
        while ready:
            element = ready.pop()
            visited += 1
            for nxt in successors[element]:
                indegree[nxt] -= 1
                if indegree[nxt] == 0:
                    ready.append(nxt)
        return visited != self.size

    def predecessor_masks(self) -> List[int]:
        masks = [0] * self.size
        for a, b in self.constraints:
            masks[b] |= 1 << a
        return masks

    def holds(self, ranks) -> bool:
        return all(ranks[a] < ranks[b] for a, b in self.constraints)

    def to_dict(self) -> Dict:
        return {"size": self.size, "constraints": [list(c) for c in sorted(self.constraints)]}

    @classmethod
    def chain(cls, size: int) -> "ColorPoset":
        """x_{size-1} < ... < x_1 < x_0."""
        return cls(size, frozenset((k, k - 1) for k in range(1, size)))


def block_orientations(p: PairPartition, word, mode=AdaptationMode.ETA) -> List[bool]:
    """
    For each block k = 1..s, whether its weight reads g(x_k, x_o(k)) (True) or the transpose.

    Eta words orient a block by its starred left leg; creation words always
    read g(x_k, x_o(k)).

    Raises:
        NotAdapted: If p is not adapted to the word in the given mode
    """
    word = as_word(word)
    mode = AdaptationMode.parse(mode)
    require_adapted(p, word, mode)
    if mode is AdaptationMode.CREATION:
        return [True] * p.s
    return [left_leg_starred(p, word, k) for k in range(1, p.s + 1)]


def region_constraints(p: PairPartition, word, mode=AdaptationMode.ETA, reverse: bool = False) -> ColorPoset:
    """
    The poset cutting out the region V(pi) for triangle indicators.

    Block k contributes x_k < x_o(k) when its orientation is direct and
    x_k > x_o(k) otherwise; ``reverse`` flips every constraint (lower triangle).
    """
    orientation = block_orientations(p, word, mode)
    outer = p.outer_map()
    constraints = set()
    for k, direct in enumerate(orientation, start=1):
        below = direct != reverse
        constraints.add((k, outer[k - 1]) if below else (outer[k - 1], k))
    return ColorPoset(p.s + 1, frozenset(constraints))


def _check_poset_limit(q: ColorPoset, limit: Optional[int]) -> None:
    limit = DEFAULT_LIMITS.max_poset if limit is None else limit
    if q.size > limit:
        raise LimitExceeded("poset size", q.size, limit)


def count_linear_extensions(q: ColorPoset, limit: Optional[int] = None) -> int:
    """
    Number of strict total orders extending q.

    Dynamic programming over order ideals: layer t holds every downset of
    size t with the number of ways to list it as an increasing prefix.

    Raises:
        LimitExceeded: If the ground set exceeds the configured size
    """
    _check_poset_limit(q, limit)
    preds = q.predecessor_masks()
    layer: Dict[int, int] = {0: 1}
    for _ in range(q.size):
        following: Dict[int, int] = {}
        for ideal, ways in layer.items():
            for element in range(q.size):
                bit = 1 << element
                if ideal & bit or preds[element] & ~ideal:
                    continue
                grown = ideal | bit
                following[grown] = following.get(grown, 0) + ways
        layer = following
    return sum(layer.values())


def brute_force_extension_count(q: ColorPoset) -> int:
    """Count over all permutations; an oracle for small posets."""
    count = 0
    for order in permutations(range(q.size)):
        ranks = [0] * q.size
        for position, element in enumerate(order):
            ranks[element] = position
        if q.holds(ranks):
            count += 1
    return count


def forest_extension_count(q: ColorPoset) -> Optional[int]:
    """
    Hook-length count k!/prod(subtree sizes) for posets whose elements each
    have at most one element directly above them; None for any other poset.
    """
    above: Dict[int, int] = {}
    for a, b in q.constraints:
        if a in above:
            return None
        above[a] = b
    below: Dict[int, List[int]] = {}
    for a, b in above.items():
        below.setdefault(b, []).append(a)
    sizes: Dict[int, int] = {}

    def subtree(element: int) -> int:
        if element not in sizes:
            sizes[element] = 1 + sum(subtree(child) for child in below.get(element, []))
        return sizes[element]

    product = 1
    for element in range(q.size):
        product *= subtree(element)
    return factorial(q.size) // product


def iter_linear_extensions(q: ColorPoset) -> Iterator[Tuple[int, ...]]:
    """Each linear extension as a rank vector: ranks[e] in 1..size, 1 for the smallest color."""
    preds = q.predecessor_masks()
    ranks = [0] * q.size

    def extend(ideal: int, rank: int) -> Iterator[Tuple[int, ...]]:
        if rank > q.size:
            yield tuple(ranks)
            return
        for element in range(q.size):
            bit = 1 << element
            if ideal & bit or preds[element] & ~ideal:
                continue
            ranks[element] = rank
            yield from extend(ideal | bit, rank + 1)

    yield from extend(0, 1)


def volume(p: PairPartition, word, mode=AdaptationMode.ETA, limit: Optional[int] = None) -> Fraction:
    """
    Vol(pi): the Lebesgue volume of V(pi) in the cube of s+1 colors.

    Equals count_linear_extensions / (s+1)!.

    Raises:
        NotAdapted: If p is not adapted to the word
    """
    q = region_constraints(p, word, mode)
    return Fraction(count_linear_extensions(q, limit=limit), factorial(q.size))


@dataclass(frozen=True)
class VolumeEstimate:
    estimate: float
    stderr: float
    samples: int


def monte_carlo_volume(q: ColorPoset, samples: int, seed: int = 0, strict: bool = True,
                       chunk_size: int = 200_000) -> VolumeEstimate:
    """
    Fraction of uniform points in [0,1]^size satisfying every constraint.

    Args:
        q: Constraint poset
        samples: Number of uniform points (at least 1)
        seed: Seed for numpy's default generator
        strict: Compare with < (True) or <= (False)
        chunk_size: Points drawn per batch

    Returns:
        VolumeEstimate with the binomial standard error
    """
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    if not q.constraints:
        return VolumeEstimate(1.0, 0.0, samples)
    rng = np.random.default_rng(seed)
    lows = np.array([a for a, _ in sorted(q.constraints)])
    highs = np.array([b for _, b in sorted(q.constraints)])
    hits = 0
    remaining = samples
    while remaining:
        batch = min(chunk_size, remaining)
        points = rng.random((batch, q.size))
        compare = np.less if strict else np.less_equal
        inside = compare(points[:, lows], points[:, highs]).all(axis=1)
        hits += int(inside.sum())
        remaining -= batch
    estimate = hits / samples
    stderr = sqrt(estimate * (1.0 - estimate) / (samples - 1)) if samples > 1 else 0.0
    logger.debug(f"Monte Carlo volume {estimate:.6f} +- {stderr:.6f} from {samples} samples")
    return VolumeEstimate(estimate, stderr, samples)
