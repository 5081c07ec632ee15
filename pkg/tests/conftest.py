from pathlib import Path

import numpy as np
import pytest

from schmidtkit import BipartiteVector, GramEnsemble

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

S3 = 1.0 / np.sqrt(3.0)


def random_unitary(rng, n):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))[np.newaxis, :]


def random_state(rng, da, db):
    z = rng.standard_normal(da * db) + 1j * rng.standard_normal(da * db)
    return BipartiteVector(da, db, z / np.linalg.norm(z))


def nonssd_pair():
    """4x4 pair whose cross products commute but whose joint spectra do not
    factorize: A-row 1 pairs with B-column 2 in one vector and 3 in the other."""
    v1 = np.zeros(16, complex)
    v1[[0, 6, 9]] = S3  # |00>, |12>, |21>
    v2 = np.zeros(16, complex)
    v2[[0, 7, 9]] = S3  # |00>, |13>, |21>
    return BipartiteVector(4, 4, v1), BipartiteVector(4, 4, v2)


def ssd_pair():
    """4x4 orthogonal pair admitting a common Schmidt basis."""
    v1 = np.zeros(16, complex)
    v1[[5, 10]] = 0.5  # |11>, |22>
    v1[[6, 9]] = -0.5  # |12>, |21>
    v2 = np.zeros(16, complex)
    v2[[0, 15]] = 2.0 / np.sqrt(12.0)  # |00>, |33>
    v2[[5, 6, 9, 10]] = 1.0 / np.sqrt(12.0)
    return BipartiteVector(4, 4, v1), BipartiteVector(4, 4, v2)


def ssd_mixture():
    """Rank-2 mixture of the decomposable pair with weights (1/4, 3/4)."""
    v1, v2 = ssd_pair()
    return GramEnsemble((v1, v2), np.diag([0.25, 0.75]).astype(complex))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
