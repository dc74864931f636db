import numpy as np
import pytest

from rmflab import OmegaAssignment, build_spf, mobius_sieve


@pytest.fixture(scope="session")
def spf_1e5():
    return build_spf(10**5)


@pytest.fixture(scope="session")
def mu_1e6():
    return mobius_sieve(10**6)


@pytest.fixture(scope="session")
def assignment_1e5():
    return OmegaAssignment(master_seed=42, prime_limit=10**5)


@pytest.fixture(scope="session")
def assignment_1e6():
    return OmegaAssignment(master_seed=42, prime_limit=10**6)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260826)
