"""Parameter triples for the swallowtail integral and its rescaled form.

Two normalizations of the same function are in play:

    S(x,y,z) = integral of exp[i(u^5 + x u^3 + y u^2 + z u)] du
    Q(x,y,z) = integral of exp[i(t^5/5 + x t^3/3 + y t^2/2 + z t)] dt

They are related by the substitution u = t / 5^(1/5), which rescales each
coordinate by a fixed power of 5 and the value by 5^(-1/5).  Every Params
carries its normalization tag so the two conventions cannot be mixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple


class Form(Enum):
    """Which normalization a parameter triple refers to."""

    S = "S"
    Q = "Q"


@dataclass(frozen=True)
class Params:
    """A real parameter triple (x, y, z) tagged with its normalization."""

    x: float
    y: float
    z: float
    form: Form = Form.Q

    def __post_init__(self):
        for name in ("x", "y", "z"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"coordinate {name} must be finite, got {v!r}")
        if not isinstance(self.form, Form):
            raise ValueError(f"form must be a Form enum member, got {self.form!r}")


class MappedParams(NamedTuple):
    """A rescaled triple plus the scalar relating function values.

    For ``s_to_q``:  S(p) = value_factor * Q(params).
    For ``q_to_s``:  Q(p) = value_factor * S(params).
    """

    params: Params
    value_factor: float


def s_to_q(p: Params) -> MappedParams:
    """Map S-normalized parameters to the Q convention.

    The powers of 5 are evaluated at call time rather than stored as decimal
    literals, so round trips stay at rounding level.
    """
    if p.form is not Form.S:
        raise ValueError("s_to_q expects form=S parameters")
    mapped = Params(
        x=3.0 * p.x / 5.0 ** 0.6,
        y=2.0 * p.y / 5.0 ** 0.4,
        z=p.z / 5.0 ** 0.2,
        form=Form.Q,
    )
    return MappedParams(mapped, 5.0 ** -0.2)


def q_to_s(p: Params) -> MappedParams:
    """Map Q-normalized parameters to the S convention (inverse of s_to_q)."""
    if p.form is not Form.Q:
        raise ValueError("q_to_s expects form=Q parameters")
    mapped = Params(
        x=5.0 ** 0.6 * p.x / 3.0,
        y=5.0 ** 0.4 * p.y / 2.0,
        z=5.0 ** 0.2 * p.z,
        form=Form.S,
    )
    return MappedParams(mapped, 5.0 ** 0.2)


def conjugate_reflection(p: Params) -> Params:
    """Reflect y to -y.

    Evaluators satisfy value(reflected) == conj(value(original)); in
    particular the integral is real-valued whenever y = 0.
    """
    return Params(p.x, -p.y, p.z, p.form)
