import cmath
import math

import numpy as np
import pytest

from swallowtail import (
    DegenerateScaling,
    Direction,
    Params,
    PathStalled,
    Regime,
    ScaledParams,
    ZSign,
    caustic_gamma,
    classify_regime,
    phase_at_saddle,
    saddles,
    scale,
    trace_steepest,
)
from swallowtail.saddle import VALLEY_ANGLES, phase, phase_derivative

GAMMA_CAUSTIC = 4.0 * 3.0 ** -0.75


def _angdist(a, b):
    d = (a - b) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d)


# ---------------------------------------------------------------- scaling


def test_scale_examples():
    sp = scale(Params(0.0, 0.0, 16.0))
    assert sp.lam == 32.0 and sp.gamma == 0.0 and sp.sign_z is ZSign.POSITIVE
    sp = scale(Params(0.0, 8.0, 16.0))
    assert sp.lam == 32.0 and abs(sp.gamma - 1.0) < 1e-15
    sp = scale(Params(0.0, 1.0, -1.0))
    assert sp.lam == 1.0 and sp.gamma == 1.0 and sp.sign_z is ZSign.NEGATIVE


def test_scale_rejects_degenerate_and_off_plane():
    with pytest.raises(DegenerateScaling):
        scale(Params(0.0, 1.0, 0.0))
    with pytest.raises(ValueError):
        scale(Params(0.5, 1.0, 1.0))


# ---------------------------------------------------------------- roots


def test_roots_at_gamma_zero_positive():
    sset = saddles(ScaledParams(1.0, 0.0, ZSign.POSITIVE))
    assert sset.regime is Regime.TWO_CONJUGATE_PAIRS
    for k in range(4):
        assert abs(sset.roots[k] - 1j ** k * cmath.exp(0.25j * math.pi)) < 1e-12


def test_roots_at_gamma_zero_negative():
    sset = saddles(ScaledParams(1.0, 0.0, ZSign.NEGATIVE))
    assert sset.regime is Regime.REAL_PAIR_PLUS_CONJUGATE_PAIR
    for k in range(4):
        assert abs(sset.roots[k] - 1j ** k) < 1e-12


def test_pair_identity_at_gamma_one():
    sset = saddles(ScaledParams(1.0, 1.0, ZSign.POSITIVE))
    assert sset.regime is Regime.TWO_CONJUGATE_PAIRS
    assert abs(sset.q1 ** 2 + sset.q2 ** 2 - 2.0 * sset.p ** 2) < 1e-10


def test_pair_identity_across_regime(rng):
    for _ in range(200):
        g = rng.uniform(0.0, GAMMA_CAUSTIC - 1e-3)
        sset = saddles(ScaledParams(1.0, g, ZSign.POSITIVE))
        assert sset.regime is Regime.TWO_CONJUGATE_PAIRS
        assert abs(sset.q1 ** 2 + sset.q2 ** 2 - 2.0 * sset.p ** 2) < 1e-10
        assert sset.p >= 0.0 and sset.q1 >= 0.0 and sset.q2 >= 0.0


def test_residuals_and_vieta(rng):
    for _ in range(400):
        g = rng.uniform(0.0, 3.0)
        sign = ZSign.POSITIVE if rng.uniform() < 0.5 else ZSign.NEGATIVE
        sset = saddles(ScaledParams(1.0, g, sign))
        roots = sset.roots
        for t in roots:
            assert abs(phase_derivative(t, g, sign)) < 1e-12
        assert abs(sum(roots)) < 1e-11
        e2 = sum(roots[i] * roots[j] for i in range(4) for j in range(i + 1, 4))
        assert abs(e2) < 1e-11
        # closed under conjugation
        for t in roots:
            assert any(abs(t.conjugate() - u) < 1e-9 for u in roots)


def test_classification_matches_root_count(rng):
    for _ in range(1000):
        g = rng.uniform(0.0, 3.0)
        if abs(g - GAMMA_CAUSTIC) < 1e-6:
            continue
        sign = ZSign.POSITIVE if rng.uniform() < 0.5 else ZSign.NEGATIVE
        sp = ScaledParams(1.0, g, sign)
        assert classify_regime(sp) is saddles(sp).regime


def test_caustic_value_and_degeneracy():
    assert abs(caustic_gamma() - GAMMA_CAUSTIC) < 1e-15
    sp = ScaledParams(1.0, caustic_gamma(), ZSign.POSITIVE)
    assert classify_regime(sp) is Regime.DEGENERATE
    assert saddles(sp).regime is Regime.DEGENERATE


def test_classification_examples():
    assert classify_regime(ScaledParams(1.0, 0.0, ZSign.POSITIVE)) is Regime.TWO_CONJUGATE_PAIRS
    assert classify_regime(ScaledParams(1.0, 0.0, ZSign.NEGATIVE)) is Regime.REAL_PAIR_PLUS_CONJUGATE_PAIR
    assert classify_regime(ScaledParams(1.0, 2.5, ZSign.POSITIVE)) is Regime.REAL_PAIR_PLUS_CONJUGATE_PAIR


def test_real_roots_accessor():
    sset = saddles(ScaledParams(1.0, 0.5, ZSign.NEGATIVE))
    t1, t2 = sset.real_roots()
    assert t1 < t2
    with pytest.raises(ValueError):
        saddles(ScaledParams(1.0, 0.0, ZSign.POSITIVE)).real_roots()


# ---------------------------------------------------------------- phases


def test_phase_at_saddle_gamma_zero():
    sp = ScaledParams(1.0, 0.0, ZSign.POSITIVE)
    assert abs(phase_at_saddle(sp, 0) - 0.8 * cmath.exp(0.25j * math.pi)) < 1e-14
    sn = ScaledParams(1.0, 0.0, ZSign.NEGATIVE)
    assert abs(phase_at_saddle(sn, 0) - (-0.8)) < 1e-14
    # k-dependence: f(t_k) = +-(4/5) i^k (rotation factor per index)
    for k in range(4):
        assert abs(phase_at_saddle(sp, k) - 0.8 * 1j ** k * cmath.exp(0.25j * math.pi)) < 1e-13
        assert abs(phase_at_saddle(sn, k) - (-0.8) * 1j ** k) < 1e-13


def test_reduced_phase_agrees_with_direct(rng):
    for _ in range(100):
        g = rng.uniform(0.0, 3.0)
        sign = ZSign.POSITIVE if rng.uniform() < 0.5 else ZSign.NEGATIVE
        sp = ScaledParams(1.0, g, sign)
        sset = saddles(sp)
        for k in range(4):
            direct = phase(sset.roots[k], g, sign)
            assert abs(phase_at_saddle(sp, k, sset) - direct) < 1e-12


# ---------------------------------------------------------------- tracing

EXPECTED_SECTORS = {
    # (sign, saddle): set of valley indices the two descending branches reach;
    # valley j sits at angle pi/10 + 2 pi j / 5
    (ZSign.POSITIVE, 1): {2, 1},
    (ZSign.POSITIVE, 0): {1, 0},
    (ZSign.NEGATIVE, 2): {2, 3},
    (ZSign.NEGATIVE, 3): {3, 4},
    (ZSign.NEGATIVE, 0): {4, 0},
}


@pytest.mark.parametrize("sign,k", sorted(EXPECTED_SECTORS, key=str))
def test_terminal_sectors_gamma_zero(sign, k):
    sp = ScaledParams(1.0, 0.0, sign)
    sectors = set()
    for d in (Direction.LEFT, Direction.RIGHT):
        path = trace_steepest(sp, k, d)
        sectors.add(path.terminal_sector)
        end = path.points[-1]
        ang = cmath.phase(end) % (2.0 * math.pi)
        assert _angdist(ang, VALLEY_ANGLES[path.terminal_sector]) < 0.05
    assert sectors == EXPECTED_SECTORS[(sign, k)]


def test_path_is_level_set_and_descending():
    sp = ScaledParams(1.0, 0.0, ZSign.POSITIVE)
    path = trace_steepest(sp, 1, Direction.RIGHT)
    t0 = path.points[0]
    f0 = phase(t0, 0.0, ZSign.POSITIVE)
    heights = []
    for t in path.points[1:]:
        df = phase(t, 0.0, ZSign.POSITIVE) - f0
        assert abs(df.real) <= 1e-9 * max(1.0, abs(f0) + abs(df))
        heights.append(-df.imag)
    assert all(b < a for a, b in zip(heights, heights[1:]))


def test_path_off_axis_gamma():
    sp = ScaledParams(1.0, 1.2, ZSign.POSITIVE)
    path = trace_steepest(sp, 0, Direction.RIGHT)
    assert abs(path.points[-1]) >= 8.0
    assert path.terminal_sector in range(5)


def test_trace_stalls_on_saddle_connection():
    # gamma = 0, z < 0: the two purely imaginary saddles share a level line,
    # so the downward branch from the upper one runs straight into the lower
    sp = ScaledParams(1.0, 0.0, ZSign.NEGATIVE)
    with pytest.raises(PathStalled):
        trace_steepest(sp, 1, Direction.LEFT)


def test_trace_rejects_degenerate():
    sp = ScaledParams(1.0, caustic_gamma(), ZSign.POSITIVE)
    with pytest.raises(PathStalled):
        trace_steepest(sp, 1, Direction.LEFT)


def test_polyline_serialization():
    path = trace_steepest(ScaledParams(1.0, 0.0, ZSign.NEGATIVE), 0, Direction.RIGHT)
    poly = path.to_polyline()
    assert len(poly) == len(path.points)
    assert all(len(pt) == 2 for pt in poly)
    assert poly[0][0] == pytest.approx(1.0, abs=1e-12)
