import random

import pytest

from bhm.core import Bicomplex


@pytest.fixture
def rng():
    return random.Random(20240817)


def rand_complex(rng, scale=2.0):
    return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))


def rand_bicomplex(rng, scale=2.0):
    return Bicomplex(rand_complex(rng, scale), rand_complex(rng, scale))


def rand_unit(rng, scale=2.0, min_cn=1e-3):
    while True:
        q = rand_bicomplex(rng, scale)
        if abs(q.cn()) > min_cn:
            return q


def rand_null_cvec(rng, scale=1.5):
    """Random nonzero complex null 3-vector (a^2-b^2, i(a^2+b^2), 2ab)."""
    while True:
        a = rand_complex(rng, scale)
        b = rand_complex(rng, scale)
        if abs(a) + abs(b) > 0.3:
            return (a * a - b * b, 1j * (a * a + b * b), 2 * a * b)
