import cmath
import math

import numpy as np
import pytest

from swallowtail import QuadratureConfig


@pytest.fixture
def cfg():
    return QuadratureConfig()


@pytest.fixture
def cfg_fast():
    return QuadratureConfig(target_abs_tol=1e-8)


@pytest.fixture
def cfg_tight():
    return QuadratureConfig(target_abs_tol=1e-11)


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def q_axis_series(z: float, n_max: int = 160) -> complex:
    """Independent axis evaluator: entire-series expansion of Q(0, 0, z).

    Expanding exp(izt) and integrating term by term over the decay rays,
    each power integral reduces to a gamma function:

        Q(0,0,z) = sum_n (iz)^n / n! * M_n,
        M_n = (e^{i(n+1)pi/10} - e^{i(n+1)9pi/10}) * 5^{(n-4)/5} Gamma((n+1)/5).

    No quadrature is involved, so this is a genuinely independent oracle for
    on-axis values (accurate to roundoff for |z| up to ~8).
    """
    total = 0.0 + 0.0j
    term_pow = 1.0 + 0.0j  # (iz)^n / n!
    for n in range(n_max):
        pref = cmath.exp(1j * (n + 1) * math.pi / 10) - cmath.exp(1j * (n + 1) * 9 * math.pi / 10)
        total += term_pow * pref * 5.0 ** ((n - 4) / 5) * math.gamma((n + 1) / 5)
        term_pow *= 1j * z / (n + 1)
    return total
