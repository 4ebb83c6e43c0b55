"""Variance profiles: step functions of |g|^2 on an r x r grid of intervals."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple

from .errors import ProfileError
from .rationals import to_rational

GRID_KINDS = ("strict-upper", "lower", "full")


@dataclass(frozen=True)
class VarianceProfile:
    """
    Block covariances b_{p,q} on intervals I_1..I_r of [0,1].

    values[p][q] is the value of |g|^2 on I_p x I_q; widths[p] is |I_p|.
    """
    r: int
    widths: Tuple[Fraction, ...]
    values: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.r < 1:
            raise ProfileError(f"Profile resolution r must be positive, got {self.r}")
        if len(self.widths) != self.r:
            raise ProfileError(f"Expected {self.r} widths, got {len(self.widths)}")
        if any(w <= 0 for w in self.widths):
            raise ProfileError(f"Widths must be positive: {[str(w) for w in self.widths]}")
        if sum(self.widths) != 1:
            raise ProfileError(f"Widths must sum to 1, got {sum(self.widths)}")
        if len(self.values) != self.r or any(len(row) != self.r for row in self.values):
            raise ProfileError(f"Profile values must be a {self.r}x{self.r} matrix")
        if any(v < 0 for row in self.values for v in row):
            raise ProfileError("Profile values must be nonnegative")

    @classmethod
    def create(cls, values: Sequence[Sequence[Any]], widths: Optional[Sequence[Any]] = None) -> "VarianceProfile":
        """Build from rational-like entries; widths default to uniform 1/r."""
        r = len(values)
        matrix = tuple(tuple(to_rational(v) for v in row) for row in values)
        if widths is None:
            ws = tuple(Fraction(1, r) for _ in range(r)) if r else ()
        else:
            ws = tuple(to_rational(w) for w in widths)
        return cls(r, ws, matrix)

    @classmethod
    def grid(cls, kind: str, r: int) -> "VarianceProfile":
        """
        Uniform grid approximations of the model kernels.

        strict-upper: 1 iff p < q (triangle x < y); lower: 1 iff p > q;
        full: all ones (whole square).
        """
        if kind not in GRID_KINDS:
            raise ProfileError(f"Unknown grid kind {kind!r}; expected one of {GRID_KINDS}")
        if r < 1:
            raise ProfileError(f"Grid resolution must be positive, got {r}")

        def cell(p: int, q: int) -> int:
            if kind == "strict-upper":
                return int(p < q)
            if kind == "lower":
                return int(p > q)
            return 1

        return cls.create([[cell(p, q) for q in range(r)] for p in range(r)])

    @classmethod
    def from_config(cls, config: Dict[str, Any]) -> "VarianceProfile":
        """Build from the profile file schema {"r": int, "widths": [...]?, "v": [[...]]}."""
        try:
            profile = cls.create(config["v"], config.get("widths"))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            if isinstance(e, ProfileError):
                raise
            raise ProfileError(f"Malformed profile: {e}")
        if "r" in config and int(config["r"]) != profile.r:
            raise ProfileError(f"Profile declares r={config['r']} but v is {profile.r}x{profile.r}")
        return profile

    def to_config(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "widths": [str(w) for w in self.widths],
            "v": [[str(v) for v in row] for row in self.values],
        }


def label_profiles_from_config(config: Dict[str, Any]) -> Dict[int, VarianceProfile]:
    """
    Per-label profiles from the optional "labels" section of a profile file.

    Each entry inherits the top-level widths unless it gives its own.
    """
    labels = config.get("labels") or {}
    if not isinstance(labels, dict):
        raise ProfileError("'labels' must map label -> profile")
    found = {}
    for key, entry in labels.items():
        try:
            label = int(key)
        except (TypeError, ValueError):
            raise ProfileError(f"Profile label must be an integer, got {key!r}")
        if not isinstance(entry, dict):
            raise ProfileError(f"Profile for label {label} must be an object")
        merged = dict(entry)
        if "widths" not in merged and "widths" in config:
            merged["widths"] = config["widths"]
        found[label] = VarianceProfile.from_config(merged)
    return found
