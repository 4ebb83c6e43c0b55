from dataclasses import dataclass, field
from fractions import Fraction
import logging
from math import sqrt
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np

from ..core.moments import OperatorSpec, eta_moment
from ..core.profiles import VarianceProfile
from ..core.rationals import rational_to_json
from ..core.words import StarWord, as_word
from ..threads.pool import ordered_map
from .ensembles import EnsembleSpec, sample_matrix, trial_rng

logger = logging.getLogger(__name__)

REPORT_FIELDS = ['n', 'r', 'trials', 'seed', 'estimate', 'stderr', 'exact_num', 'exact_den', 'abs_gap']


@dataclass(frozen=True)
class MomentEstimate:
    mean: float
    stderr: float
    trials: int
    n: int
    word: StarWord
    mean_imag: float = 0.0
    values: Sequence[float] = field(default=(), repr=False, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "word": str(self.word),
            "n": self.n,
            "trials": self.trials,
            "mean": self.mean,
            "stderr": self.stderr,
            "mean_imag": self.mean_imag,
        }


def trial_trace(word, spec: EnsembleSpec, seed: int, trial: int) -> complex:
    """
    Normalized trace tr(Y^{e1}(u1)...Y^{em}(um))/n for one trial.

    One matrix is drawn per distinct label from its own substream, so the
    value does not depend on how trials are scheduled.
    """
    word = as_word(word)
    if not len(word):
        return complex(1.0)
    matrices = {label: sample_matrix(spec, label, trial_rng(seed, trial, label)) for label in word.labels}
    product = None
    for letter in word:
        factor = matrices[letter.label]
        if letter.starred:
            factor = factor.conj().T
        product = factor if product is None else product @ factor
    return complex(np.trace(product)) / spec.n


def estimate_moment(word, spec: EnsembleSpec, trials: int, seed: int, workers: int = 1) -> MomentEstimate:
    """
    Monte Carlo estimate of E tr(word)/n over independent trials.

    Args:
        word: StarWord or token string
        spec: Ensemble description
        trials: Number of independent trials (at least 1)
        seed: Root seed; trial t, label u use substream (seed, t, u)
        workers: Threads evaluating trials

    Returns:
        MomentEstimate of the real part; the mean imaginary part is kept for diagnostics
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    word = as_word(word)
    traces = ordered_map(lambda t: trial_trace(word, spec, seed, t), range(trials), workers)
    values = np.array([z.real for z in traces])
    imag = np.array([z.imag for z in traces])
    stderr = float(values.std(ddof=1) / sqrt(trials)) if trials >= 2 else float("nan")
    estimate = MomentEstimate(
        mean=float(values.mean()),
        stderr=stderr,
        trials=trials,
        n=spec.n,
        word=word,
        mean_imag=float(imag.mean()),
        values=tuple(values.tolist()),
    )
    logger.info(f"Estimated {spec.kind} moment of {word} at n={spec.n}: "
                f"{estimate.mean:.6f} +- {estimate.stderr:.6f} ({trials} trials)")
    return estimate


def finite_n_first_moment(kind: str, n: int) -> Fraction:
    """Exact E tr(Y*Y)/n at finite n: (n-1)/(2n) for strict-upper, 1 for iid."""
    if kind == "strict-upper":
        return Fraction(n - 1, 2 * n)
    if kind == "iid":
        return Fraction(1)
    raise ValueError(f"No finite-n formula for {kind}")


def prediction_for(word, spec: EnsembleSpec) -> Fraction:
    """Large-n limit of the normalized trace, from the exact engine."""
    if spec.kind == "iid":
        operator = OperatorSpec.circular()
    elif spec.kind == "strict-upper":
        operator = OperatorSpec.triangular()
    else:
        operator = OperatorSpec.from_profile(spec.profile, dict(spec.label_profiles))
    return eta_moment(word, operator).value


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    r: Optional[int]
    trials: int
    seed: int
    estimate: float
    stderr: float
    exact: Fraction

    @property
    def abs_gap(self) -> float:
        return abs(self.estimate - float(self.exact))

    def to_record(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'r': '' if self.r is None else self.r,
            'trials': self.trials,
            'seed': self.seed,
            'estimate': self.estimate,
            'stderr': self.stderr,
            'exact_num': str(self.exact.numerator),
            'exact_den': str(self.exact.denominator),
            'abs_gap': self.abs_gap,
        }

    def to_dict(self) -> Dict[str, Any]:
        record = self.to_record()
        record['r'] = self.r
        record['exact'] = rational_to_json(self.exact)
        return record


def convergence_report(word, kind: str, ns: Sequence[int], rs: Optional[Sequence[int]] = None,
                       profile: Optional[VarianceProfile] = None, trials: int = 200, seed: int = 42,
                       workers: int = 1,
                       label_profiles: Optional[Mapping[int, VarianceProfile]] = None) -> List[ConvergenceRow]:
    """
    Estimates over a family of dimensions and grid resolutions against exact predictions.

    Without rs, kind 'strict-upper' and 'iid' are compared with the
    triangular and circular moments and 'profile' with the given profile
    and its per-label overrides.
    With rs, each resolution r replaces the ensemble by the r-grid block
    profile ('strict-upper' -> strict upper blocks, 'iid' -> all blocks) and
    the prediction by that profile's exact moment. Gaps are reported, not asserted.
    """
    word = as_word(word)
    grid_kind = {"strict-upper": "strict-upper", "iid": "full"}
    rows = []
    resolutions = list(rs) if rs else [None]
    for r in resolutions:
        for n in ns:
            if r is None:
                spec = EnsembleSpec(n, kind, profile=profile, label_profiles=label_profiles or {})
            else:
                if kind not in grid_kind:
                    raise ValueError(f"Grid refinement is defined for {sorted(grid_kind)}, not {kind}")
                spec = EnsembleSpec(n, "profile", profile=VarianceProfile.grid(grid_kind[kind], r))
            estimate = estimate_moment(word, spec, trials, seed, workers)
            exact = prediction_for(word, spec)
            row_r = r if r is not None else (profile.r if kind == "profile" and profile else None)
            rows.append(ConvergenceRow(n, row_r, trials, seed, estimate.mean, estimate.stderr, exact))
            logger.info(f"n={n} r={row_r}: estimate {estimate.mean:.6f}, exact {exact}, gap {rows[-1].abs_gap:.6f}")
    return rows
