"""Exact mixed *-moments of triangular, circular and step-profile operators."""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from math import factorial
import logging
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from ..threads.pool import ordered_map
from .errors import ProfileError
from .partitions import AdaptationMode, PairPartition, adapted_partitions, catalan
from .profiles import VarianceProfile
from .rationals import rational_to_json
from .volumes import ColorPoset, block_orientations, count_linear_extensions
from .words import StarWord, as_word

logger = logging.getLogger(__name__)


class OperatorKind(Enum):
    CIRCULAR = "circular"                   # g = indicator of the whole square
    TRIANGULAR = "triangular"               # g = indicator of {x < y}
    LOWER_TRIANGULAR = "lower-triangular"   # g = indicator of {x > y}
    PROFILE = "profile"                     # g^2 = step function of a VarianceProfile

    @classmethod
    def parse(cls, value) -> "OperatorKind":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower().replace("_", "-"))


@dataclass(frozen=True)
class OperatorSpec:
    """
    Which kernel g the operators of a word are built from.

    For PROFILE, ``label_profiles`` gives per-label covariances; labels not
    listed use ``profile``. All profiles must share their widths.
    """
    kind: OperatorKind
    profile: Optional[VarianceProfile] = None
    label_profiles: Tuple[Tuple[int, VarianceProfile], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", OperatorKind.parse(self.kind))
        if isinstance(self.label_profiles, Mapping):
            object.__setattr__(self, "label_profiles", tuple(sorted(self.label_profiles.items())))
        if self.kind is OperatorKind.PROFILE:
            profiles = self.all_profiles()
            if not profiles:
                raise ProfileError("Profile operators need a profile")
            if len({p.widths for p in profiles}) > 1:
                raise ProfileError("All label profiles must share the same widths")

    @classmethod
    def circular(cls) -> "OperatorSpec":
        return cls(OperatorKind.CIRCULAR)

    @classmethod
    def triangular(cls) -> "OperatorSpec":
        return cls(OperatorKind.TRIANGULAR)

    @classmethod
    def lower_triangular(cls) -> "OperatorSpec":
        return cls(OperatorKind.LOWER_TRIANGULAR)

    @classmethod
    def from_profile(cls, profile: VarianceProfile,
                     label_profiles: Optional[Mapping[int, VarianceProfile]] = None) -> "OperatorSpec":
        return cls(OperatorKind.PROFILE, profile, tuple(sorted((label_profiles or {}).items())))

    def all_profiles(self) -> List[VarianceProfile]:
        found = [self.profile] if self.profile is not None else []
        return found + [p for _, p in self.label_profiles]

    def profile_for(self, label: int) -> VarianceProfile:
        for key, profile in self.label_profiles:
            if key == label:
                return profile
        if self.profile is None:
            raise ProfileError(f"No profile for label {label}")
        return self.profile

    @property
    def widths(self) -> Tuple[Fraction, ...]:
        return self.all_profiles()[0].widths


@dataclass(frozen=True)
class MomentResult:
    """An exact moment together with its per-partition contributions."""
    value: Fraction
    contributions: Tuple[Tuple[PairPartition, Fraction], ...] = field(default=())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": rational_to_json(self.value),
            "contributions": {p.to_json(): rational_to_json(v) for p, v in self.contributions},
        }


def _indicator_volume(p: PairPartition, orientation: Sequence[Optional[bool]]) -> Fraction:
    # orientation[k-1]: True -> x_k < x_o(k), False -> x_k > x_o(k), None -> no constraint
    outer = p.outer_map()
    constraints = set()
    for k, below in enumerate(orientation, start=1):
        if below is None:
            continue
        constraints.add((k, outer[k - 1]) if below else (outer[k - 1], k))
    q = ColorPoset(p.s + 1, frozenset(constraints))
    return Fraction(count_linear_extensions(q), factorial(q.size))


def colored_forest_sum(p: PairPartition, orientation: Sequence[bool],
                       matrices: Sequence[Sequence[Sequence[Fraction]]],
                       widths: Sequence[Fraction]) -> Fraction:
    """
    Sum over colorings c of blocks 0..s of prod_k w_k(c) * prod_j widths[c(j)].

    w_k(c) = M_k[c(k)][c(o(k))] for a direct block and its transpose entry
    otherwise. Children are folded into their nearest outer block; blocks
    are numbered so that every child comes after its parent.
    """
    r = len(widths)
    outer = p.outer_map()
    # message[k][c]: sum over the subtree of block k given its outer block has color c
    pending: List[List[Fraction]] = [[Fraction(1)] * r for _ in range(p.s + 1)]
    for k in range(p.s, 0, -1):
        down = [widths[a] * pending[k][a] for a in range(r)]
        matrix = matrices[k - 1]
        parent = outer[k - 1]
        for b in range(r):
            if orientation[k - 1]:
                message = sum((matrix[a][b] * down[a] for a in range(r)), Fraction(0))
            else:
                message = sum((matrix[b][a] * down[a] for a in range(r)), Fraction(0))
            pending[parent][b] *= message
    return sum((widths[b] * pending[0][b] for b in range(r)), Fraction(0))


def brute_force_colored_sum(p: PairPartition, orientation: Sequence[bool],
                            matrices: Sequence[Sequence[Sequence[Fraction]]],
                            widths: Sequence[Fraction]) -> Fraction:
    """Direct summation over all r^(s+1) colorings; an oracle for colored_forest_sum."""
    r = len(widths)
    outer = p.outer_map()
    total = Fraction(0)
    for colors in product(range(r), repeat=p.s + 1):
        term = Fraction(1)
        for color in colors:
            term *= widths[color]
        for k in range(1, p.s + 1):
            a, b = colors[k], colors[outer[k - 1]]
            term *= matrices[k - 1][a][b] if orientation[k - 1] else matrices[k - 1][b][a]
            if not term:
                break
        total += term
    return total


def _block_matrices(p: PairPartition, word: StarWord, spec: OperatorSpec):
    return [spec.profile_for(word.at(left).label).values for left, _ in p.blocks]


def eta_contribution(p: PairPartition, word, spec: OperatorSpec) -> Fraction:
    """Contribution of one eta-adapted partition to the moment of a word."""
    word = as_word(word)
    orientation = block_orientations(p, word, AdaptationMode.ETA)
    if spec.kind is OperatorKind.CIRCULAR:
        return Fraction(1)
    if spec.kind is OperatorKind.TRIANGULAR:
        return _indicator_volume(p, orientation)
    if spec.kind is OperatorKind.LOWER_TRIANGULAR:
        return _indicator_volume(p, [not o for o in orientation])
    return colored_forest_sum(p, orientation, _block_matrices(p, word, spec), spec.widths)


def eta_moment(word, spec: OperatorSpec, workers: int = 1, limit: Optional[int] = None) -> MomentResult:
    """
    phi(T^{e1}(u1)...T^{em}(um)) as a sum over eta-adapted pair partitions.

    Odd-length or unpairable words give 0 with no contributions; the empty
    word gives 1.

    Args:
        word: StarWord or token string
        spec: Operator kernel
        workers: Threads used to evaluate partitions
        limit: Largest word length enumerated

    Returns:
        MomentResult with the exact value and canonical-order contributions
    """
    word = as_word(word)
    partitions = adapted_partitions(word, AdaptationMode.ETA, limit=limit)
    values = ordered_map(lambda p: eta_contribution(p, word, spec), partitions, workers)
    contributions = tuple(zip(partitions, values))
    total = sum(values, Fraction(0))
    logger.debug(f"{spec.kind.value} moment of {word or '(empty)'}: {total} over {len(partitions)} partitions")
    return MomentResult(total, contributions)


def brute_force_profile_moment(word, spec: OperatorSpec) -> Fraction:
    """Profile moment by summing every coloring of every adapted partition."""
    word = as_word(word)
    total = Fraction(0)
    for p in adapted_partitions(word, AdaptationMode.ETA):
        orientation = block_orientations(p, word, AdaptationMode.ETA)
        total += brute_force_colored_sum(p, orientation, _block_matrices(p, word, spec), spec.widths)
    return total


def creation_moment(word, regions) -> Fraction:
    """
    phi of a word of creation (*) and annihilation (no star) operators.

    Args:
        word: StarWord whose starred letters precede their partners
        regions: One OperatorSpec per position, or a single spec for all positions.
            Circular, Triangular and LowerTriangular act as indicators of the
            whole square, {x < y} and {x > y}; Profile specs weight a block by
            v[c(k)][c(o(k))].

    Returns:
        Exact value; 0 when no partition is adapted or a block's two
        positions carry different regions or labels
    """
    word = as_word(word)
    if isinstance(regions, OperatorSpec):
        regions = [regions] * len(word)
    if len(regions) != len(word):
        raise ValueError(f"Expected {len(word)} regions, got {len(regions)}")
    candidates = adapted_partitions(word, AdaptationMode.CREATION)
    if not candidates:
        return Fraction(0)
    p = candidates[0]
    block_specs = []
    for left, right in p.blocks:
        if regions[left - 1] != regions[right - 1]:
            return Fraction(0)
        block_specs.append(regions[left - 1])
    kinds = {spec.kind for spec in block_specs}
    if OperatorKind.PROFILE in kinds:
        if kinds != {OperatorKind.PROFILE}:
            raise ProfileError("Cannot mix profile regions with indicator regions in one word")
        widths = {spec.widths for spec in block_specs}
        if len(widths) > 1:
            raise ProfileError("All profile regions must share the same widths")
        matrices = [spec.profile_for(word.at(left).label).values
                    for spec, (left, _) in zip(block_specs, p.blocks)]
        return colored_forest_sum(p, [True] * p.s, matrices, widths.pop())
    below = {OperatorKind.CIRCULAR: None, OperatorKind.TRIANGULAR: True, OperatorKind.LOWER_TRIANGULAR: False}
    return _indicator_volume(p, [below[spec.kind] for spec in block_specs])


def triangular_moment_closed_form(n: int) -> Fraction:
    """M_n = phi((T*T)^n) = n^n/(n+1)!."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return Fraction(n ** n, factorial(n + 1))


def catalan_moment(n: int) -> Fraction:
    """phi((c*c)^n) = C_n for a circular element c."""
    return Fraction(catalan(n))


def profile_refinement_sequence(word, kind, rs: Sequence[int], workers: int = 1) -> List[Tuple[int, Fraction]]:
    """
    Moments of the grid profiles approximating a continuous kernel.

    Args:
        word: StarWord
        kind: TRIANGULAR (grid 1 iff p < q), LOWER_TRIANGULAR or CIRCULAR (all ones)
        rs: Ascending resolutions

    Returns:
        List of (r, exact moment of the r-grid profile)
    """
    kind = OperatorKind.parse(kind)
    grid_kind = {
        OperatorKind.TRIANGULAR: "strict-upper",
        OperatorKind.LOWER_TRIANGULAR: "lower",
        OperatorKind.CIRCULAR: "full",
    }.get(kind)
    if grid_kind is None:
        raise ValueError(f"No grid approximation for {kind.value}")
    if list(rs) != sorted(rs):
        raise ValueError(f"Resolutions must be ascending, got {list(rs)}")
    sequence = []
    for r in rs:
        spec = OperatorSpec.from_profile(VarianceProfile.grid(grid_kind, r))
        value = eta_moment(word, spec, workers=workers).value
        logger.debug(f"r={r}: {value}")
        sequence.append((r, value))
    return sequence
