from dataclasses import dataclass
from fractions import Fraction
from math import factorial, isnan
import logging
import time
from typing import Callable, Dict, List, Optional, Sequence

from ..core.moments import (
    OperatorSpec, brute_force_profile_moment, catalan_moment, creation_moment, eta_moment,
    profile_refinement_sequence, triangular_moment_closed_form,
)
from ..core.partitions import (
    BlockPairType, adapted_partitions, block_pair_types, catalan, enumerate_nc2,
)
from ..core.profiles import VarianceProfile
from ..core.trees import (
    alternating_labelings, count_labeled_ordered_trees, enumerate_alternating, enumerate_ordered_trees,
    partition_to_tree, tree_to_partition,
)
from ..core.volumes import brute_force_extension_count, count_linear_extensions, region_constraints, volume
from ..core.words import StarWord
from ..randmat.ensembles import EnsembleSpec
from ..randmat.estimator import estimate_moment

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_dict(self) -> Dict:
        return {"check": self.name, "passed": self.passed, "detail": self.detail,
                "seconds": round(self.seconds, 3)}


class CheckFailed(AssertionError):
    pass


@dataclass(frozen=True)
class SuiteOptions:
    max_n: int = 7
    seed: int = 42
    workers: int = 1
    sim_n: int = 200
    trials: int = 200
    max_m: Optional[int] = None


# Registry of acceptance checks, in run order
check_registry: Dict[str, Callable[[SuiteOptions], str]] = {}


def register_check(name: str):
    def decorator(fn):
        check_registry[name] = fn
        return fn
    return decorator


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailed(message)


@register_check("closed-form")
def check_closed_form(opts: SuiteOptions) -> str:
    for n in range(1, opts.max_n + 1):
        value = eta_moment(StarWord.tt_power(n), OperatorSpec.triangular(), workers=opts.workers, limit=opts.max_m).value
        expected = triangular_moment_closed_form(n)
        _expect(value == expected, f"M_{n} = {value}, expected {expected}")
    return f"M_n = n^n/(n+1)! for n <= {opts.max_n}"


@register_check("tt3-volumes")
def check_tt3_volumes(opts: SuiteOptions) -> str:
    word = StarWord.tt_power(3)
    volumes = [volume(p, word) for p in adapted_partitions(word)]
    expected = [Fraction(k, 24) for k in (6, 5, 5, 6, 5)]
    _expect(volumes == expected, f"volumes {[str(v) for v in volumes]}")
    simplices = sum(count_linear_extensions(region_constraints(p, word)) for p in adapted_partitions(word))
    _expect(simplices == 27, f"{simplices} simplices, expected 27")
    return "five volumes 6,5,5,6,5 /24; 27 simplices"


@register_check("creation-examples")
def check_creation_examples(opts: SuiteOptions) -> str:
    triangle = OperatorSpec.triangular()
    chain = creation_moment(StarWord.parse("*1,*1,*1,1,1,1"), triangle)
    _expect(chain == Fraction(1, 24), f"nested chain gave {chain}")
    fork = creation_moment(StarWord.parse("*1,*1,1,*1,1,1"), triangle)
    _expect(fork == Fraction(1, 12), f"fork gave {fork}")
    return "1/24 and 1/12"


@register_check("tree-counts")
def check_tree_counts(opts: SuiteOptions) -> str:
    top_v = min(8, opts.max_n + 1)
    for v in range(1, top_v + 1):
        count = len(enumerate_ordered_trees(v))
        _expect(count == catalan(v - 1), f"{count} ordered trees on {v} vertices")
    top_n = min(6, opts.max_n)
    for n in range(0, top_n + 1):
        labeled = len(enumerate_ordered_trees(n + 1)) * factorial(n + 1)
        _expect(labeled == count_labeled_ordered_trees(n), f"{labeled} labeled trees for n={n}")
    for n in range(1, top_n + 1):
        count = len(enumerate_alternating(n))
        _expect(count == n ** n, f"{count} TypeI alternating trees for n={n}")
    return f"shapes v <= {top_v}, labeled and alternating n <= {top_n}"


@register_check("bijection")
def check_bijection(opts: SuiteOptions) -> str:
    top_v = min(8, opts.max_n + 1)
    for v in range(1, top_v + 1):
        for tree in enumerate_ordered_trees(v):
            _expect(partition_to_tree(tree_to_partition(tree)) == tree, f"round trip failed for {tree}")
    top_n = min(5, opts.max_n)
    for n in range(1, top_n + 1):
        word = StarWord.tt_power(n)
        for p in enumerate_nc2(2 * n):
            extensions = count_linear_extensions(region_constraints(p, word))
            labelings = sum(1 for _ in alternating_labelings(partition_to_tree(p)))
            _expect(extensions == labelings, f"{p}: {extensions} extensions vs {labelings} labelings")
    return f"round trip v <= {top_v}; extensions = alternating labelings n <= {top_n}"


def _oracle_profiles() -> List[OperatorSpec]:
    skewed = VarianceProfile.create(
        [[1, 2, 0], [0, 1, 3], ["1/2", 0, 1]],
        widths=["1/2", "1/3", "1/6"],
    )
    return [
        OperatorSpec.from_profile(VarianceProfile.grid("strict-upper", 2)),
        OperatorSpec.from_profile(VarianceProfile.grid("strict-upper", 3)),
        OperatorSpec.from_profile(skewed),
    ]


@register_check("oracles")
def check_oracles(opts: SuiteOptions) -> str:
    top_m = min(10, 2 * opts.max_n)
    for m in range(2, top_m + 1, 2):
        word = StarWord.tt_power(m // 2)
        for p in enumerate_nc2(m):
            q = region_constraints(p, word)
            _expect(count_linear_extensions(q) == brute_force_extension_count(q), f"extension count for {p}")
    profile_m = min(8, 2 * opts.max_n)
    words = [StarWord.tt_power(k) for k in range(1, profile_m // 2 + 1)]
    if profile_m >= 4:
        words += [StarWord.parse("*1,*1,1,1"), StarWord.parse("*1,1,1,*1")]
    for spec in _oracle_profiles():
        for word in words:
            dp = eta_moment(word, spec).value
            oracle = brute_force_profile_moment(word, spec)
            _expect(dp == oracle, f"profile moment of {word}: {dp} vs oracle {oracle}")
    return f"extension DP m <= {top_m}; coloring DP m <= {profile_m}, r <= 3"


@register_check("circular-catalan")
def check_circular(opts: SuiteOptions) -> str:
    for n in range(1, opts.max_n + 1):
        value = eta_moment(StarWord.tt_power(n), OperatorSpec.circular(), workers=opts.workers, limit=opts.max_m).value
        _expect(value == catalan_moment(n), f"circular moment {n} = {value}")
    return f"C_n for n <= {opts.max_n}"


@register_check("grid-refinement")
def check_grid_refinement(opts: SuiteOptions) -> str:
    for r, value in profile_refinement_sequence(StarWord.tt_power(1), "triangular", [2, 4, 8, 16, 32]):
        _expect(value == Fraction(r - 1, 2 * r), f"M_1({r}) = {value}")
    for n in (2, 3):
        if n > opts.max_n:
            continue
        exact = triangular_moment_closed_form(n)
        gaps = [abs(exact - value) for _, value in
                profile_refinement_sequence(StarWord.tt_power(n), "triangular", [2, 4, 8, 16])]
        _expect(all(a > b for a, b in zip(gaps, gaps[1:])), f"gaps for n={n} not decreasing: {gaps}")
    return "M_1(r) = (r-1)/(2r); gaps shrink in r"


def _anchors(max_n: int):
    half = VarianceProfile.create([[0, 1], [0, 0]])
    anchors = [
        ("strict-upper", None, 1, Fraction(1, 2), 0.01),
        ("strict-upper", None, 2, Fraction(2, 3), 0.02),
        ("strict-upper", None, 3, Fraction(9, 8), 0.03),
        ("iid", None, 2, Fraction(2), 0.02),
        ("profile", half, 1, Fraction(1, 4), 0.01),
    ]
    return [a for a in anchors if a[2] <= max_n]


@register_check("monte-carlo")
def check_monte_carlo(opts: SuiteOptions) -> str:
    lines = []
    for kind, profile, power, target, allowance in _anchors(opts.max_n):
        spec = EnsembleSpec(opts.sim_n, kind, profile=profile)
        estimate = estimate_moment(StarWord.tt_power(power), spec, opts.trials, opts.seed, opts.workers)
        gap = abs(estimate.mean - float(target))
        tolerance = allowance if isnan(estimate.stderr) else max(4 * estimate.stderr, allowance)
        _expect(gap <= tolerance, f"{kind} (*,1)^{power}: {estimate.mean:.5f} vs {target} (gap {gap:.5f})")
        lines.append(f"{kind}^{power} gap {gap:.4f}")
    return "; ".join(lines)


@register_check("structure")
def check_structure(opts: SuiteOptions) -> str:
    for n in range(1, min(5, opts.max_n) + 1):
        word = StarWord.tt_power(n)
        for p in adapted_partitions(word):
            found = set(block_pair_types(p, word).values())
            _expect(found <= {BlockPairType.TYPE1, BlockPairType.TYPE2}, f"{p} has types {found}")
    n = 4
    estimate = estimate_moment(StarWord.parse(",".join(["1"] * n)), EnsembleSpec(n, "strict-upper"), 5, opts.seed)
    _expect(all(v == 0.0 for v in estimate.values), "strict upper product of length n is not exactly zero")
    for spec in (OperatorSpec.triangular(), OperatorSpec.circular()):
        value = eta_moment(StarWord.parse("*1,2"), spec).value
        _expect(value == 0, f"label mismatch gave {value}")
    value = eta_moment(StarWord.parse("1,1"), OperatorSpec.triangular()).value
    _expect(value == 0, f"(1,1) gave {value}")
    return "no Type3/Type4 pairs; nilpotency; vanishing words"


def run_suite(max_n: int = 7, seed: int = 42, workers: int = 1, names: Optional[Sequence[str]] = None,
              sim_n: int = 200, trials: int = 200, max_m: Optional[int] = None) -> List[CheckResult]:
    """
    Run the registered acceptance checks.

    Args:
        max_n: Largest power n of (T*T)^n exercised; smaller runs finish faster
        seed: Monte Carlo seed
        workers: Threads for partition sums and trials
        names: Subset of checks to run, default all
        sim_n: Matrix dimension for Monte Carlo anchors
        trials: Trials per Monte Carlo anchor
        max_m: Word-length limit for the exact sums (default: configured limit)

    Returns:
        One CheckResult per check, in the order run
    """
    if max_n < 1:
        raise ValueError(f"max_n must be at least 1, got {max_n}")
    opts = SuiteOptions(max_n=max_n, seed=seed, workers=workers, sim_n=sim_n, trials=trials, max_m=max_m)
    selected = list(names) if names else list(check_registry)
    unknown = [n for n in selected if n not in check_registry]
    if unknown:
        raise ValueError(f"Unknown checks: {unknown}")
    results = []
    for name in selected:
        started = time.perf_counter()
        try:
            detail = check_registry[name](opts)
            result = CheckResult(name, True, detail)
        except CheckFailed as e:
            result = CheckResult(name, False, str(e))
        result.seconds = time.perf_counter() - started
        level = logging.INFO if result.passed else logging.ERROR
        logger.log(level, f"[{'PASS' if result.passed else 'FAIL'}] {name}: {result.detail} ({result.seconds:.2f}s)")
        results.append(result)
    return results
