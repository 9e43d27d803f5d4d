"""Brute-force contour quadrature for the swallowtail integral.

The real-line contour is deformed onto two straight rays through the origin,
entering from infinity at angle 9*pi/10 and leaving at angle pi/10.  Both
angles sit at the centre of a decay sector of exp(i t^5/5): with t = r e^{i
theta} and 5*theta = pi/2 (mod 2*pi) the quintic term contributes exactly
exp(-r^5/5), so the integrand decays super-Gaussianly on each ray no matter
what (x, y, z) are.  Everything else is standard machinery: an a-priori
truncation radius with a certified tail bound, and an adaptive Gauss-Kronrod
rule on each truncated ray.

The moment evaluator integrates t^k times the same exponential and feeds the
parameter derivatives used by Newton refinement:

    dQ/dz = i * moment_1,   dQ/dy = (i/2) * moment_2,   dQ/dx = (i/3) * moment_3.
"""

from __future__ import annotations

import cmath
import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import ToleranceNotReached
from .params import Form, Params, s_to_q

DEFAULT_RAY_ANGLES = (9.0 * math.pi / 10.0, math.pi / 10.0)

# 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full 15-node layout: negative nodes, centre, positive nodes.
_NODES = np.concatenate((-_XGK[:7], _XGK[::-1]))
_WK_FULL = np.concatenate((_WGK[:7], _WGK[::-1]))
_WG_FULL = np.zeros(15)
_WG_FULL[1:7:2] = _WG[:3]          # Gauss nodes sit at every second Kronrod node
_WG_FULL[7] = _WG[3]
_WG_FULL[9:15:2] = _WG[2::-1]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerance and budget knobs for the contour evaluator."""

    target_abs_tol: float = 1e-10
    max_subdivisions: int = 1500   # panel budget per ray
    truncation_safety: float = 10.0

    def __post_init__(self):
        if not (self.target_abs_tol > 0.0 and math.isfinite(self.target_abs_tol)):
            raise ValueError("target_abs_tol must be a positive finite number")
        if self.max_subdivisions < 8:
            raise ValueError("max_subdivisions must be at least 8")
        if self.truncation_safety <= 1.0:
            raise ValueError("truncation_safety must exceed 1")


@dataclass(frozen=True)
class EvalResult:
    """A complex value with a certified absolute error estimate."""

    value: complex
    abs_error_estimate: float
    subdivisions_used: int

    def __post_init__(self):
        if not (self.abs_error_estimate >= 0.0 and math.isfinite(self.abs_error_estimate)):
            raise ValueError("abs_error_estimate must be finite and nonnegative")


def _gk15(f, a: float, b: float):
    """One Gauss-Kronrod panel: Kronrod value plus error estimate."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fx = f(c + h * _NODES)
    k15 = h * np.dot(_WK_FULL, fx)
    g7 = h * np.dot(_WG_FULL, fx)
    d = abs(k15 - g7)
    err = min(d, (200.0 * d) ** 1.5) if d > 0.0 else 0.0
    return complex(k15), err


def _adaptive(f, a: float, b: float, abs_tol: float, max_panels: int):
    """Worst-panel-first bisection until the summed estimate meets abs_tol.

    Returns (value, error_sum, panel_count, converged).
    """
    n0 = 8
    edges = np.linspace(a, b, n0 + 1)
    heap = []
    total = 0.0 + 0.0j
    err_sum = 0.0
    for i in range(n0):
        v, e = _gk15(f, edges[i], edges[i + 1])
        total += v
        err_sum += e
        heapq.heappush(heap, (-e, edges[i], edges[i + 1], v))
    panels = n0
    while err_sum > abs_tol and panels < max_panels:
        neg_e, lo, hi, v_old = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        total += v1 + v2 - v_old
        err_sum += e1 + e2 - (-neg_e)
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
        panels += 1
    return total, err_sum, panels, err_sum <= abs_tol


def _truncation_radius(x: float, y: float, z: float, k: int, log_target: float,
                       sin5: float) -> float:
    """Smallest radius beyond which the integrand tail is provably negligible.

    On a ray at angle theta with s = sin(5*theta) > 0 the integrand modulus of
    r^k exp(i*phase) is at most r^k exp(-g(r)) with

        g(r) = s r^5/5 - |x| r^3/3 - |y| r^2/2 - |z| r.

    Using r^k <= exp(k (r-1)) for r >= 1, the tail beyond R is bounded by
    exp(-gk(R)) once gk(r) = g(r) - k(r-1) satisfies gk >= log_target and
    gk' >= 1 for all r >= R.
    """
    ax, ay, az = abs(x), abs(y), abs(z)
    # gk(r) - log_target as a polynomial in r (leading coefficient first)
    val_poly = [sin5 / 5.0, 0.0, -ax / 3.0, -ay / 2.0, -(az + k), k - log_target]
    # gk'(r) - 1
    slope_poly = [sin5, 0.0, -ax, -ay, -(az + k + 1.0)]
    r_min = 1.0
    for poly in (val_poly, slope_poly):
        roots = np.roots(poly)
        real = roots.real[np.abs(roots.imag) < 1e-9 * (1.0 + np.abs(roots))]
        if real.size:
            r_min = max(r_min, float(real.max()))
    return r_min * (1.0 + 1e-9) + 1e-12


def _contour_integral(x: float, y: float, z: float, k: int, cfg: QuadratureConfig,
                      ray_angles=DEFAULT_RAY_ANGLES, radius_factor: float = 1.0) -> EvalResult:
    """Integrate t^k exp[i(t^5/5 + x t^3/3 + y t^2/2 + z t)] over the contour."""
    theta_in, theta_out = ray_angles
    sin5 = min(math.sin(5.0 * theta_in), math.sin(5.0 * theta_out))
    if sin5 <= 1e-6:
        raise ValueError("ray angles must lie strictly inside decay sectors")
    if radius_factor < 1.0:
        raise ValueError("radius_factor below 1 would void the tail bound")

    safety = cfg.truncation_safety
    tol = cfg.target_abs_tol
    log_target = math.log(2.0 * safety / tol)
    radius = _truncation_radius(x, y, z, k, log_target, sin5) * radius_factor
    trunc_bound = tol / safety          # both ray tails combined
    ray_budget = 0.5 * tol * (1.0 - 1.0 / safety)

    def make_integrand(theta: float):
        w = cmath.exp(1j * theta)
        w2, w3, w5 = w * w, w ** 3, w ** 5
        wk = w ** k

        def integrand(r: np.ndarray) -> np.ndarray:
            phase = (
                (r ** 5) * (w5 / 5.0)
                + (r ** 3) * (x * w3 / 3.0)
                + (r ** 2) * (y * w2 / 2.0)
                + r * (z * w)
            )
            base = np.exp(1j * phase)
            if k:
                base = base * (r ** k * wk)
            return base

        return integrand, w

    f_out, w_out = make_integrand(theta_out)
    f_in, w_in = make_integrand(theta_in)

    val_out, err_out, n_out, ok_out = _adaptive(f_out, 0.0, radius, ray_budget, cfg.max_subdivisions)
    val_in, err_in, n_in, ok_in = _adaptive(f_in, 0.0, radius, ray_budget, cfg.max_subdivisions)

    value = w_out * val_out - w_in * val_in
    estimate = err_out + err_in + trunc_bound
    result = EvalResult(value, estimate, n_out + n_in)
    if not (ok_out and ok_in):
        raise ToleranceNotReached(
            f"quadrature estimate {estimate:.3e} above target {tol:.3e} "
            f"after {n_out + n_in} panels",
            partial=result,
        )
    return result


def eval_q(p: Params, cfg: QuadratureConfig | None = None, *,
           ray_angles=DEFAULT_RAY_ANGLES, radius_factor: float = 1.0) -> EvalResult:
    """Evaluate Q(x, y, z) by deformed-contour quadrature.

    ``ray_angles`` and ``radius_factor`` exist for validation: perturbing the
    rays within the decay sectors or doubling the truncation radius must not
    change the value beyond the reported estimates.
    """
    if p.form is not Form.Q:
        raise ValueError("eval_q expects form=Q parameters; use eval_s or s_to_q")
    cfg = cfg or QuadratureConfig()
    return _contour_integral(p.x, p.y, p.z, 0, cfg, ray_angles, radius_factor)


def eval_s(p: Params, cfg: QuadratureConfig | None = None) -> EvalResult:
    """Evaluate S(x, y, z) via the rescaling onto Q."""
    if p.form is not Form.S:
        raise ValueError("eval_s expects form=S parameters")
    mapped, factor = s_to_q(p)
    r = eval_q(mapped, cfg)
    return EvalResult(factor * r.value, factor * r.abs_error_estimate, r.subdivisions_used)


def eval_q_moment(p: Params, k: int, cfg: QuadratureConfig | None = None) -> EvalResult:
    """Evaluate the k-th moment: integral of t^k times the Q integrand.

    Differentiating under the integral sign gives the parameter derivatives
    listed in the module docstring; k is restricted to 1, 2, 3 accordingly.
    """
    if k not in (1, 2, 3):
        raise ValueError("moment order k must be 1, 2 or 3")
    if p.form is not Form.Q:
        raise ValueError("eval_q_moment expects form=Q parameters")
    cfg = cfg or QuadratureConfig()
    return _contour_integral(p.x, p.y, p.z, k, cfg)
