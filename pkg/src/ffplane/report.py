"""Check records shared by the verification routines and the CLI."""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

_RELATIONS = {
    "==": operator.eq,
    "<=": operator.le,
    "<": operator.lt,
    ">=": operator.ge,
    ">": operator.gt,
}


def jsonable(v: Any) -> Any:
    """Integers stay integers; fractions become reduced "n/d" strings."""
    if isinstance(v, bool) or v is None or isinstance(v, (str, float)):
        return v
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return int(v)
    if hasattr(v, "item"):
        return jsonable(v.item())
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    return str(v)


@dataclass
class Check:
    """One comparison ``lhs relation rhs`` with exact operands.

    ``asserted`` is False for diagnostics that are reported but never gate
    the exit status.
    """

    name: str
    anchor: str
    lhs: Any
    rhs: Any
    relation: str
    asserted: bool = True
    note: str | None = None
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = bool(_RELATIONS[self.relation](self.lhs, self.rhs))

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "anchor": self.anchor,
            "lhs": jsonable(self.lhs),
            "rhs": jsonable(self.rhs),
            "relation": self.relation,
            "pass": self.passed,
        }
        if not self.asserted:
            d["asserted"] = False
        if self.note:
            d["note"] = self.note
        return d


def failures(checks: list[Check]) -> list[Check]:
    return [c for c in checks if c.asserted and not c.passed]


def root_bounds(x: Fraction | int, n: int, digits: int = 6) -> tuple[Fraction, Fraction]:
    """Rational lower and upper bounds for the real n-th root of x >= 0,
    accurate to 10**-digits."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    scale = 10**digits
    # floor((x * scale^n)^(1/n)) via integer root on numerator/denominator
    num = x.numerator * scale**n
    target = num // x.denominator
    lo = _iroot(target, n)
    hi = lo if lo**n * x.denominator == num else lo + 1
    return Fraction(lo, scale), Fraction(hi, scale)


def _iroot(m: int, n: int) -> int:
    if m < 2:
        return m
    if n == 2:
        return math.isqrt(m)
    # Newton iteration from an upper bound converges to the floor
    r = 1 << ((m.bit_length() + n - 1) // n)
    while True:
        s = ((n - 1) * r + m // r ** (n - 1)) // n
        if s >= r:
            return r
        r = s


def ratio_bounds(num: Fraction | int, den_lo: Fraction, den_hi: Fraction) -> tuple[Fraction, Fraction]:
    """Bounds on num/den given den in [den_lo, den_hi], num >= 0."""
    num = Fraction(num)
    if den_lo <= 0:
        return Fraction(0), Fraction(0)
    return num / den_hi, num / den_lo
