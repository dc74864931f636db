import cmath
import math
from dataclasses import dataclass

import numpy as np
import pytest

from rmflab import (DomainError, DyadicFraction, H_eval, OmegaAssignment,
                    PreconditionError, WEIGHT_BETA_THRESHOLD, euler_F,
                    exp_form_F, identity_residual, primes_up_to,
                    weight_factor, weighted_euler_G, zeta_truncated)
from rmflab.dyadic import HALF, ONE

B34 = DyadicFraction.from_fraction(3, 2)
B78 = DyadicFraction.from_fraction(7, 3)


@dataclass(frozen=True)
class FixedOmega:
    """Test double: every prime gets the same omega numerator."""

    prime_limit: int
    num: int

    @property
    def primes(self):
        return primes_up_to(self.prime_limit)

    def numerators(self, primes=None):
        count = len(self.primes) if primes is None else len(primes)
        return np.full(count, self.num, dtype=np.uint64)


def test_zeta_truncated_single_prime():
    z = zeta_truncated(2, 2)
    assert abs(z.value - 4 / 3) < 1e-15


def test_zeta_truncated_basel():
    z = zeta_truncated(10**6, 2)
    assert abs(z.value - math.pi**2 / 6) < 1e-6


def test_zeta_reciprocal_of_mobius_product(assignment_1e5):
    z = zeta_truncated(10**5, 2)
    f1 = euler_F(ONE, assignment_1e5, 10**5, 2)
    assert abs(z.value * f1.value - 1) < 1e-12


def test_euler_F_beta1_matches_direct_product(assignment_1e5):
    ev = euler_F(ONE, assignment_1e5, 10**5, 2)
    p = primes_up_to(10**5).astype(float)
    direct = np.prod(1 - p**-2.0)
    assert abs(ev.value - direct) < 1e-14
    assert abs(ev.value - 6 / math.pi**2) < 1e-5


def test_euler_F_single_prime_plus_sign():
    # omega_2 at the top of the grid, beta = 1/2 -> sign +1 at p = 2
    a = FixedOmega(prime_limit=2, num=2**64 - 1)
    ev = euler_F(HALF, a, 2, 2)
    assert abs(ev.value - 1.25) < 1e-15


def test_euler_F_degenerate_all_minus():
    # omega = 0 everywhere gives sign -1 for every beta >= 1/2
    a = FixedOmega(prime_limit=10**3, num=0)
    for beta in (HALF, B34, ONE):
        ev = euler_F(beta, a, 10**3, 1.5)
        z = zeta_truncated(10**3, 1.5)
        assert abs(ev.value * z.value - 1) < 1e-12


def test_euler_domain_error():
    a = FixedOmega(prime_limit=10**2, num=0)
    with pytest.raises(DomainError):
        euler_F(HALF, a, 10**2, complex(-0.2, 3))


def test_log_exp_self_consistency(assignment_1e5):
    for s in (1.5, 2 + 10j, 0.8 + 3j):
        ev = euler_F(B34, assignment_1e5, 10**4, s)
        assert abs(ev.value - cmath.exp(ev.log_value)) < 1e-12


def test_conjugate_symmetry(assignment_1e5):
    s = 1.3 + 7j
    ev = euler_F(B34, assignment_1e5, 10**4, s)
    ev_conj = euler_F(B34, assignment_1e5, 10**4, s.conjugate())
    assert abs(ev_conj.value - ev.value.conjugate()) < 1e-12


def test_identity_residual_examples(assignment_1e5):
    for seed in (1, 2, 42):
        a = OmegaAssignment(master_seed=seed, prime_limit=10**4)
        assert identity_residual(1, a, 10**4, 1.5) < 1e-10
    assert identity_residual(3, assignment_1e5, 10**4, 2 + 10j) < 1e-10


def test_identity_residual_degenerate_fixed_region():
    # every omega below 1/2: T acts trivially, both sides telescope to zeta
    a = FixedOmega(prime_limit=10**4, num=12345)
    assert identity_residual(2, a, 10**4, 1.5) < 1e-12


def test_identity_residual_domain():
    a = FixedOmega(prime_limit=10**3, num=0)
    with pytest.raises(PreconditionError):
        identity_residual(1, a, 10**3, 0.9)
    # still computable outside the stated domain when asked to
    assert identity_residual(1, a, 10**3, 0.9, strict_domain=False) < 1e-10


def test_local_factor_ratio_oracle():
    """Consecutive-threshold Euler factors: ratio is (p^s+1)/(p^s-1)
    exactly when omega sits in the interval where the two signs differ."""
    from rmflab import IetSpec, sign_at_prime
    spec = IetSpec(2)
    s = 1.7 + 0.4j
    for p in primes_up_to(73)[:20]:
        ps = complex(p) ** s
        for k in range(spec.intervals):
            lo, hi = spec.endpoint(k), spec.endpoint(k + 1)
            for omega in (DyadicFraction(0), lo, hi,
                          DyadicFraction(hi.numerator - 1)):
                e_lo = sign_at_prime(lo, omega)
                e_hi = sign_at_prime(hi, omega)
                ratio = (1 + e_lo / ps) / (1 + e_hi / ps)
                in_gap = lo <= omega < hi
                want = (ps + 1) / (ps - 1) if in_gap else 1.0
                assert abs(ratio - want) < 1e-12


def test_exp_form_consistency(assignment_1e5):
    for seed in range(1, 6):
        a = OmegaAssignment(master_seed=seed, prime_limit=10**4)
        ps, at = exp_form_F(B34, a, 10**4, 1.2)
        ev = euler_F(B34, a, 10**4, 1.2)
        assert abs(cmath.exp(ps + at) - ev.value) < 1e-10


def test_exp_form_tail_bound_sigma06():
    a = OmegaAssignment(master_seed=3, prime_limit=10**6)
    _, tail = exp_form_F(B34, a, 10**6, 0.6)
    p = primes_up_to(10**6).astype(float)
    z = p**-0.6
    bound = 0.0
    zm = z * z
    m = 2
    while zm.max() / m >= 1e-18:
        bound += float(np.sum(zm)) / m
        zm = zm * z
        m += 1
    assert abs(tail) <= bound


def test_exp_form_domain():
    a = FixedOmega(prime_limit=10**2, num=0)
    with pytest.raises(DomainError):
        exp_form_F(B34, a, 10**2, 0.4)


def test_prime_sum_ensemble_mean_at_s1():
    # E f(p) = 1 - 2 beta: ensemble mean of sum f(p)/p tracks -(1/2) sum 1/p
    from rmflab import prime_reciprocal_sign_sum
    P = 10**5
    a0 = OmegaAssignment(master_seed=0, prime_limit=P)
    target = -0.5 * float(np.sum(1.0 / a0.primes))
    vals = [prime_reciprocal_sign_sum(
        B34, OmegaAssignment(master_seed=s, prime_limit=P), P)
        for s in range(100)]
    vals = np.array(vals)
    se = vals.std(ddof=1) / math.sqrt(len(vals))
    assert abs(vals.mean() - target) <= 4 * se


def test_weight_factor_and_threshold():
    assert abs(weight_factor(B78) - 4 / 3) < 1e-15
    with pytest.raises(PreconditionError) as exc:
        weight_factor(B34)
    assert "0.853553" in str(exc.value)
    assert WEIGHT_BETA_THRESHOLD == pytest.approx(0.8535533905932737)


def test_weighted_G_degenerate_direct_product():
    a = FixedOmega(prime_limit=10**3, num=0)  # all signs -1
    g = weighted_euler_G(B78, a, 10**3, 0.8)
    p = primes_up_to(10**3).astype(float)
    direct = np.prod(1 - (4 / 3) * p**-0.8)
    assert abs(g.value - direct) < 1e-12
    assert direct != 0


def test_weighted_G_mean_minus_one(assignment_1e6):
    from rmflab import prime_signs
    signs = prime_signs(B78, assignment_1e6).astype(float)
    g = signs * (4 / 3)
    n = len(g)
    se = g.std(ddof=1) / math.sqrt(n)
    assert abs(g.mean() - (-1)) <= 4 * se


def test_weighted_G_domain_errors(assignment_1e5):
    with pytest.raises(PreconditionError):
        weighted_euler_G(B34, assignment_1e5, 10**3, 0.8)
    with pytest.raises(DomainError):
        weighted_euler_G(B78, assignment_1e5, 10**3, 0.4)


def test_H_is_G_times_zeta(assignment_1e5):
    for s in (0.8, 0.75 + 10j, 2):
        g = weighted_euler_G(B78, assignment_1e5, 10**3, s)
        z = zeta_truncated(10**3, s)
        h = H_eval(B78, assignment_1e5, 10**3, s)
        assert abs(h.log_value - g.log_value - z.log_value) < 1e-12


def test_H_degenerate_per_prime():
    a = FixedOmega(prime_limit=100, num=0)
    s = 0.8
    h = H_eval(B78, a, 100, s)
    p = primes_up_to(100).astype(float)
    direct = np.prod((1 - (4 / 3) * p**-s) / (1 - p**-s))
    assert abs(h.value - direct) < 1e-12
