"""Exact 64-bit fixed-point fractions on the dyadic grid.

A :class:`DyadicFraction` stores an integer numerator ``q`` and denotes the
value ``q / 2**64``.  Comparisons, addition and subtraction of values whose
denominators divide ``2**64`` are exact integer operations, which is what
makes the interval exchange map and the sign thresholds testable bit for bit.

Numerators live in ``[0, 2**64)``; the single exceptional numerator
``2**64`` is admitted as a sentinel for the exact value 1, which is needed
as a sign threshold ("always -1") but never as a sample point.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import DomainError

#: Implied denominator of every DyadicFraction.
SCALE_BITS = 64
SCALE = 1 << SCALE_BITS


@dataclass(frozen=True, order=True)
class DyadicFraction:
    """Value ``numerator / 2**64`` in ``[0, 1]``.

    The dataclass ordering is the integer ordering of numerators, which
    coincides with the ordering of the denoted values.
    """

    numerator: int

    def __post_init__(self):
        if not 0 <= self.numerator <= SCALE:
            raise DomainError(
                f"numerator {self.numerator} outside [0, 2**64]")

    @classmethod
    def from_fraction(cls, k: int, bits: int) -> "DyadicFraction":
        """Exact value ``k / 2**bits`` with ``bits <= 64``."""
        if not 0 <= bits <= SCALE_BITS:
            raise DomainError(f"bits {bits} outside [0, 64]")
        if not 0 <= k <= (1 << bits):
            raise DomainError(f"k={k} outside [0, 2**{bits}]")
        return cls(k << (SCALE_BITS - bits))

    @classmethod
    def one(cls) -> "DyadicFraction":
        return cls(SCALE)

    def __float__(self) -> float:
        return self.numerator / SCALE

    def __add__(self, other: "DyadicFraction") -> "DyadicFraction":
        return DyadicFraction(self.numerator + other.numerator)

    def __sub__(self, other: "DyadicFraction") -> "DyadicFraction":
        return DyadicFraction(self.numerator - other.numerator)

    @property
    def is_one(self) -> bool:
        return self.numerator == SCALE

    def as_fraction_string(self) -> str:
        """Reduced representation ``k/2^m`` (``"0"`` and ``"1"`` at the ends)."""
        if self.numerator == 0:
            return "0"
        if self.numerator == SCALE:
            return "1"
        g = gcd(self.numerator, SCALE)
        k = self.numerator // g
        m = SCALE_BITS - (g.bit_length() - 1)
        return f"{k}/2^{m}"


#: Convenience constants used throughout the experiments.
HALF = DyadicFraction.from_fraction(1, 1)
ONE = DyadicFraction.one()


def beta_for_level(n: int) -> DyadicFraction:
    """The threshold ``1 - 2**-(n+1)`` attached to exchange level ``n``."""
    if not 1 <= n <= 62:
        raise DomainError(f"level n={n} outside [1, 62]")
    return DyadicFraction(SCALE - (1 << (SCALE_BITS - 1 - n)))
