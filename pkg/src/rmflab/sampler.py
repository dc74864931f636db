"""Seeded realization of one sample point of the coupled sign family.

One uniform dyadic value ``omega_p`` is attached to each prime ``p`` by a
counter-based hash of (master seed, rank of p), so any single coordinate is
addressable in O(1) without storing the whole assignment.  All thresholds
``beta`` share the same coordinates: the sign at p is -1 exactly when
``omega_p < beta``, which couples the entire family monotonically.

The sign convention is right-open: -1 on [0, beta), +1 on [beta, 1).  On the
2**64-point dyadic grid this makes P(-1) = beta exact, and it differs from
the closed-interval convention only at grid endpoints (a measure-zero set).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dyadic import HALF, DyadicFraction
from .errors import CoverageError, DomainError, PreconditionError
from .sieve import SpfTable, primes_up_to

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def splitmix64(x: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer applied elementwise to a uint64 array."""
    z = x + _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


@dataclass(frozen=True)
class OmegaAssignment:
    """Deterministic map prime -> uniform dyadic coordinate, fixed by a seed."""

    master_seed: int
    prime_limit: int
    _primes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_primes", primes_up_to(self.prime_limit))

    @property
    def primes(self) -> np.ndarray:
        return self._primes

    def numerators(self, primes: np.ndarray | None = None) -> np.ndarray:
        """uint64 numerators of omega_p for the given primes (default: all).

        Each prime's value comes from an independent counter position
        (its rank), so streams never overlap within one seed.
        """
        if primes is None:
            ranks = np.arange(len(self._primes), dtype=np.uint64)
        else:
            primes = np.asarray(primes, dtype=np.int64)
            ranks = np.searchsorted(self._primes, primes)
            bad = (ranks >= len(self._primes)) | (self._primes[np.minimum(
                ranks, len(self._primes) - 1)] != primes)
            if np.any(bad):
                raise DomainError(
                    f"not a covered prime: {primes[bad][:5].tolist()}")
            ranks = ranks.astype(np.uint64)
        with np.errstate(over="ignore"):
            seeded = splitmix64(np.uint64(self.master_seed & (2**64 - 1)) +
                                _GOLDEN * ranks)
        return seeded

    def omega_at(self, p: int) -> DyadicFraction:
        """The coordinate omega_p as an exact dyadic fraction."""
        num = self.numerators(np.array([p], dtype=np.int64))[0]
        return DyadicFraction(int(num))


def sign_at_prime(beta: DyadicFraction, omega_p: DyadicFraction) -> int:
    """-1 if omega_p < beta else +1 (exact threshold comparison)."""
    if not HALF <= beta:
        raise PreconditionError(f"beta={float(beta)} below 1/2")
    return -1 if omega_p.numerator < beta.numerator else 1


def prime_signs(beta: DyadicFraction, assignment: OmegaAssignment,
                primes: np.ndarray | None = None) -> np.ndarray:
    """Vector of signs at the given primes, int8."""
    if not HALF <= beta:
        raise PreconditionError(f"beta={float(beta)} below 1/2")
    nums = assignment.numerators(primes)
    if beta.is_one:
        return np.full(len(nums), -1, dtype=np.int8)
    return np.where(nums < np.uint64(beta.numerator),
                    np.int8(-1), np.int8(1))


@dataclass(frozen=True)
class SignSeries:
    """f_beta(n) for n <= limit plus exact integer prefix sums."""

    beta: DyadicFraction
    limit: int
    values: np.ndarray  # int8, index 0..limit, values[0] = 0, values[1] = 1
    prefix: np.ndarray  # int64, prefix[n] = sum_{m<=n} values[m]

    def partial_sum(self, x: int) -> int:
        if not 1 <= x <= self.limit:
            raise CoverageError(f"x={x} outside [1, {self.limit}]")
        return int(self.prefix[x])


def build_sign_series(beta: DyadicFraction, assignment: OmegaAssignment,
                      limit: int, mobius: np.ndarray) -> SignSeries:
    """Extend the prime signs multiplicatively over the squarefree integers.

    On squarefree n, f(n) = mu(n) * (-1)^#{p | n : sign(p) = +1}; elsewhere 0.
    Starting from the Mobius table and flipping the multiples of each
    plus-signed prime realizes exactly that, since non-squarefree entries
    stay zero under sign flips.
    """
    if assignment.prime_limit < limit:
        raise CoverageError(
            f"assignment covers primes <= {assignment.prime_limit} < {limit}")
    if len(mobius) < limit + 1:
        raise CoverageError(f"mobius table shorter than limit {limit}")
    primes = assignment.primes
    primes = primes[primes <= limit]
    signs = prime_signs(beta, assignment, primes)
    values = mobius[: limit + 1].astype(np.int8, copy=True)
    for p in primes[signs == 1].tolist():
        values[p:: p] = -values[p:: p]
    values[0] = 0
    if limit >= 1:
        values[1] = 1
    prefix = np.cumsum(values, dtype=np.int64)
    return SignSeries(beta=beta, limit=limit, values=values, prefix=prefix)


def coupling_monotone_check(beta1: DyadicFraction, beta2: DyadicFraction,
                            assignment: OmegaAssignment, limit: int) -> bool:
    """True iff a -1 at beta1 forces a -1 at beta2 at every prime <= limit."""
    if not (HALF <= beta1 <= beta2):
        raise PreconditionError("need 1/2 <= beta1 <= beta2 <= 1")
    primes = assignment.primes
    primes = primes[primes <= limit]
    s1 = prime_signs(beta1, assignment, primes)
    s2 = prime_signs(beta2, assignment, primes)
    return bool(np.all((s1 != -1) | (s2 == -1)))
