from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import ProfileError
from ..core.profiles import VarianceProfile

# Registry for ensemble kinds
ensemble_registry = {}


def register_ensemble(kind):
    def decorator(cls):
        ensemble_registry[kind.lower()] = cls
        return cls
    return decorator


def get_ensemble(kind):
    ensemble_cls = ensemble_registry.get(str(kind).lower())
    if not ensemble_cls:
        raise ValueError(f"No ensemble registered for kind: {kind} (known: {sorted(ensemble_registry)})")
    return ensemble_cls()


@dataclass(frozen=True)
class EnsembleSpec:
    """
    An n x n complex Gaussian ensemble.

    kind is one of the registered kinds ('iid', 'strict-upper', 'profile');
    profile kinds take a VarianceProfile and optional per-label profiles.
    """
    n: int
    kind: str = "iid"
    profile: Optional[VarianceProfile] = None
    label_profiles: Tuple[Tuple[int, VarianceProfile], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"Matrix dimension must be at least 1, got {self.n}")
        object.__setattr__(self, "kind", str(self.kind).lower())
        if isinstance(self.label_profiles, Mapping):
            object.__setattr__(self, "label_profiles", tuple(sorted(self.label_profiles.items())))
        get_ensemble(self.kind)
        if self.kind == "profile" and self.profile is None and not self.label_profiles:
            raise ProfileError("Profile ensembles need a variance profile")

    def profile_for(self, label: int) -> VarianceProfile:
        for key, profile in self.label_profiles:
            if key == label:
                return profile
        if self.profile is None:
            raise ProfileError(f"No profile for label {label}")
        return self.profile


def block_sizes(widths: Sequence[Fraction], n: int) -> List[int]:
    """
    Integer block sizes summing to n, by largest-remainder rounding of widths*n.

    Ties in the remainder go to the lower block index.
    """
    quotas = [Fraction(w) * n for w in widths]
    sizes = [int(q) for q in quotas]
    leftover = n - sum(sizes)
    order = sorted(range(len(widths)), key=lambda p: (-(quotas[p] - sizes[p]), p))
    for p in order[:leftover]:
        sizes[p] += 1
    return sizes


class Ensemble(ABC):
    """Per-entry variance pattern of an ensemble kind; entries are scaled by 1/n."""

    @abstractmethod
    def variances(self, spec: EnsembleSpec, label: int) -> np.ndarray:
        pass

    def sample(self, spec: EnsembleSpec, label: int, rng: np.random.Generator) -> np.ndarray:
        # real and imaginary parts each carry half of the entry variance
        scale = np.sqrt(self.variances(spec, label) / 2.0)
        shape = (spec.n, spec.n)
        matrix = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        return matrix * scale


@register_ensemble('iid')
class IIDSquareEnsemble(Ensemble):
    def variances(self, spec, label):
        return np.full((spec.n, spec.n), 1.0 / spec.n)


@register_ensemble('strict-upper')
class StrictUpperEnsemble(Ensemble):
    def variances(self, spec, label):
        return np.triu(np.ones((spec.n, spec.n)), k=1) / spec.n


@register_ensemble('profile')
class BlockProfileEnsemble(Ensemble):
    def variances(self, spec, label):
        profile = spec.profile_for(label)
        sizes = block_sizes(profile.widths, spec.n)
        bounds = np.concatenate(([0], np.cumsum(sizes)))
        pattern = np.zeros((spec.n, spec.n))
        for p in range(profile.r):
            for q in range(profile.r):
                pattern[bounds[p]:bounds[p + 1], bounds[q]:bounds[q + 1]] = float(profile.values[p][q])
        return pattern / spec.n


def trial_rng(seed: int, trial: int, label: int) -> np.random.Generator:
    """Independent substream for one (trial, label) pair."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial, label)))


def sample_matrix(spec: EnsembleSpec, label: int, rng: np.random.Generator) -> np.ndarray:
    """
    Draw one n x n complex matrix of the given ensemble.

    Args:
        spec: Ensemble description
        label: Label whose profile applies (profile kinds)
        rng: numpy Generator, normally from trial_rng(seed, trial, label)

    Returns:
        complex128 array; zero-variance entries are exactly zero
    """
    return get_ensemble(spec.kind).sample(spec, label, rng)
