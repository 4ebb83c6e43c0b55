from dataclasses import dataclass
import sys


@dataclass(frozen=True)
class Limits:
    """Resource limits protecting casual users from Catalan-scale blow-ups."""
    max_m: int = 20
    max_vertices: int = 10
    max_alternating_n: int = 6
    max_poset: int = 22

    @classmethod
    def unbounded(cls) -> "Limits":
        big = sys.maxsize
        return cls(max_m=big, max_vertices=big, max_alternating_n=big, max_poset=big)


DEFAULT_LIMITS = Limits()
