"""Complex evaluation of truncated Euler products and the coupled identities.

Every product over primes p <= P is computed in log space as a sum of
per-prime principal logarithms, accumulated with exact (fsum) summation of
the real and imaginary parts.  For sigma > 0 every factor 1 + c_p * p**-s
with |c_p| <= 1 has modulus of the perturbation strictly below 1 only for
|c_p| < p**sigma, which holds for the sign factors; the weighted factors
additionally require the documented beta threshold.

With both sides truncated to the same prime set, the zeta identity that
links 1/zeta**(2**n - 1) to the family of sign products is exact prime by
prime, so its residual is pure floating-point noise.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .dyadic import HALF, DyadicFraction, beta_for_level
from .errors import DomainError, PreconditionError
from .iet import IetSpec, apply_T_omega
from .sampler import prime_signs

#: Weighted products need beta above this (so |g(p)| < sqrt(2)).
WEIGHT_BETA_THRESHOLD = 0.5 + 0.5 / math.sqrt(2.0)


@dataclass(frozen=True)
class EulerEvaluation:
    """A truncated Euler product at one point, in log and linear form."""

    prime_limit: int
    point: complex
    log_value: complex
    value: complex


def _fsum_complex(terms: np.ndarray) -> complex:
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def _prime_powers(primes: np.ndarray, s: complex) -> np.ndarray:
    """p**-s for each prime, complex128."""
    logs = np.log(primes.astype(np.float64))
    return np.exp(-s * logs)


def _log_product(primes: np.ndarray, coeffs: np.ndarray, s: complex,
                 P: int) -> EulerEvaluation:
    """sum of log(1 + c_p * p**-s) over p <= P, principal branch per factor."""
    if s.real <= 0:
        raise DomainError(f"Re(s)={s.real} <= 0: factors may vanish")
    mask = primes <= P
    pr = primes[mask]
    cs = np.asarray(coeffs, dtype=np.float64)[mask]
    terms = np.log(1.0 + cs * _prime_powers(pr, s))
    log_value = _fsum_complex(terms)
    return EulerEvaluation(prime_limit=P, point=s, log_value=log_value,
                           value=cmath.exp(log_value))


def euler_F(beta: DyadicFraction, assignment, P: int,
            s: complex) -> EulerEvaluation:
    """Truncated product of (1 + f_beta(p) * p**-s) over p <= P."""
    s = complex(s)
    if s.real <= 0:
        raise DomainError(f"Re(s)={s.real} <= 0")
    primes = assignment.primes
    primes = primes[primes <= P]
    signs = prime_signs(beta, assignment, primes)
    return _log_product(primes, signs, s, P)


def zeta_truncated(P: int, s: complex, primes: np.ndarray | None = None
                   ) -> EulerEvaluation:
    """Truncated zeta: product of (1 - p**-s)**-1 over p <= P."""
    s = complex(s)
    if s.real <= 0:
        raise DomainError(f"Re(s)={s.real} <= 0")
    if primes is None:
        from .sieve import primes_up_to
        primes = primes_up_to(P)
    inner = _log_product(primes, np.full(len(primes), -1.0), s, P)
    return EulerEvaluation(prime_limit=P, point=s,
                           log_value=-inner.log_value,
                           value=cmath.exp(-inner.log_value))


def identity_residual(level: int, assignment, P: int, s: complex,
                      strict_domain: bool = True) -> float:
    """|L - R| for the telescoping zeta identity at threshold level n.

    L = -(2**n - 1) * log zeta_P(s); R = -log F_{1/2}(s, omega)
    + sum_{k=1..2**n} log F_beta(s, T^k omega), with beta = 1 - 2**-(n+1).
    Both sides run over the same primes p <= P.
    """
    s = complex(s)
    if strict_domain and s.real <= 1:
        raise PreconditionError(
            f"identity stated for Re(s) > 1, got Re(s)={s.real}")
    spec = IetSpec(level)
    beta = beta_for_level(level)
    primes = assignment.primes
    primes = primes[primes <= P]
    left = -(spec.intervals - 1) * zeta_truncated(P, s, primes).log_value
    right = -euler_F(HALF, assignment, P, s).log_value
    parts = [right]
    for k in range(1, spec.intervals + 1):
        view = apply_T_omega(spec, assignment, k)
        parts.append(euler_F(beta, view, P, s).log_value)
    right_total = complex(math.fsum(z.real for z in parts),
                          math.fsum(z.imag for z in parts))
    return abs(left - right_total)


def exp_form_F(beta: DyadicFraction, assignment, P: int, s: complex,
               tail_cutoff: float = 1e-18) -> tuple[complex, complex]:
    """Split log F into the prime linear sum and the m >= 2 Taylor tail.

    Returns (prime_sum, A_tail) with
    prime_sum = sum f(p) * p**-s and
    A_tail = sum_p sum_{m>=2} (-1)**(m+1) f(p)**m / (m * p**(m s)),
    the m-series stopped once its largest term drops below ``tail_cutoff``.
    """
    s = complex(s)
    if s.real <= 0.5:
        raise DomainError(f"tail series needs Re(s) > 1/2, got {s.real}")
    primes = assignment.primes
    primes = primes[primes <= P]
    signs = prime_signs(beta, assignment, primes).astype(np.float64)
    z = signs * _prime_powers(primes, s)
    prime_sum = _fsum_complex(z)
    tail_terms = []
    zm = z * z
    m = 2
    while np.max(np.abs(zm)) / m >= tail_cutoff:
        sign = -1.0 if m % 2 == 0 else 1.0
        tail_terms.append(sign / m * zm)
        zm = zm * z
        m += 1
    if tail_terms:
        flat = np.concatenate(tail_terms)
        A_tail = _fsum_complex(flat)
    else:
        A_tail = 0j
    return prime_sum, A_tail


def weight_factor(beta: DyadicFraction) -> float:
    """1 / (2*beta - 1), the per-prime magnitude of the weighted signs."""
    _require_weight_beta(beta)
    return 1.0 / (2.0 * float(beta) - 1.0)


def _require_weight_beta(beta: DyadicFraction) -> None:
    b = float(beta)
    if not (WEIGHT_BETA_THRESHOLD < b < 1.0):
        raise PreconditionError(
            f"beta={b} outside (1/2 + 1/(2*sqrt(2)), 1) ~ "
            f"({WEIGHT_BETA_THRESHOLD:.6f}, 1)")


def weighted_euler_G(beta: DyadicFraction, assignment, P: int,
                     s: complex) -> EulerEvaluation:
    """Truncated product of (1 + g(p) * p**-s) with g(p) = f(p)/(2*beta-1)."""
    s = complex(s)
    if s.real <= 0.5:
        raise DomainError(f"weighted product needs Re(s) > 1/2, got {s.real}")
    w = weight_factor(beta)
    primes = assignment.primes
    primes = primes[primes <= P]
    signs = prime_signs(beta, assignment, primes).astype(np.float64)
    return _log_product(primes, w * signs, s, P)


def H_eval(beta: DyadicFraction, assignment, P: int, s: complex
           ) -> EulerEvaluation:
    """H = G * zeta on the shared truncated prime set, combined in log space."""
    g = weighted_euler_G(beta, assignment, P, s)
    primes = assignment.primes
    z = zeta_truncated(P, complex(s), primes[primes <= P])
    log_value = g.log_value + z.log_value
    return EulerEvaluation(prime_limit=P, point=complex(s),
                           log_value=log_value, value=cmath.exp(log_value))
