from fractions import Fraction
from typing import Any, Dict, Union

RationalLike = Union[Fraction, int, str]


def to_rational(value: RationalLike) -> Fraction:
    """Parse an exact rational from an int, a Fraction or a string such as '1/3' or '0.25'."""
    if isinstance(value, float):
        raise TypeError(f"Refusing inexact float {value!r}; pass a string such as '1/3'")
    return Fraction(value)


def rational_to_json(value: Fraction) -> Dict[str, str]:
    value = Fraction(value)
    return {"num": str(value.numerator), "den": str(value.denominator)}


def rational_from_json(payload: Dict[str, Any]) -> Fraction:
    return Fraction(int(payload["num"]), int(payload["den"]))
