"""Boundary magnetic field model, gauge family, and the fixing transform.

The longitudinal field switches on across z = 0.  A divergence-free
switch-on forces transverse components proportional to the derivative of
the ramp; their x/y split is the ellipticity beta:

    B = B0 * ( -(1 - beta) x delta(z),  -beta y delta(z),  theta(z) ).

The hard step/delta pair is regularized here by a smooth ramp of width
eps,

    theta_eps(z) = (1 + tanh(z / eps)) / 2,     delta_eps = d theta_eps / dz,

which keeps every identity testable pointwise while preserving the exact
limits on both sides of the boundary.

The quadratic gauge family for this field is

    A = B0 * ( theta [a x + b y],
               theta [(1 + b) x + c y],
               delta [a x^2 / 2 + d x y + c y^2 / 2] ),      d - b = beta,

and the scalar gauge function

    chi = -B0 theta(z) (a x^2 / 2 + d x y + c y^2 / 2)

removes the longitudinal component, leaving the fixed transverse
potential B0 * (-beta y, (1 - beta) x, 0) inside, which is divergence
free (Coulomb gauge).

This module is diagnostic only: the quantum side consumes the fixed
gauge directly and nothing here feeds state construction except beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FieldModel:
    """Boundary field: strength, transverse ellipticity, ramp width."""

    beta: float
    b0: float = 1.0
    eps: float = 0.1

    def __post_init__(self):
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must lie in [0, 1], got {self.beta}")
        if self.eps <= 0.0:
            raise ValueError(f"regularization width must be positive, got {self.eps}")


@dataclass(frozen=True)
class GaugeParams:
    """Quadratic gauge-family parameters; the field fixes d - b = beta."""

    a: float
    b: float
    c: float
    d: float

    @classmethod
    def for_beta(cls, beta: float, a: float = 0.0, b: float = 0.0, c: float = 0.0):
        """Parameters with d chosen to satisfy the curl constraint."""
        return cls(a=a, b=b, c=c, d=b + beta)

    def check(self, model: FieldModel) -> None:
        if abs((self.d - self.b) - model.beta) > 1e-12:
            raise ValueError(
                f"gauge constraint violated: d - b = {self.d - self.b} "
                f"but the field has beta = {model.beta}"
            )


def theta_eps(z: float, eps: float) -> float:
    """Smooth ramp replacing the hard step at z = 0."""
    return 0.5 * (1.0 + math.tanh(z / eps))


def delta_eps(z: float, eps: float) -> float:
    """Derivative of the ramp (regularized surface delta)."""
    t = abs(z) / eps
    # sech(t) written overflow-safe
    sech = 2.0 * math.exp(-t) / (1.0 + math.exp(-2.0 * t))
    return 0.5 * sech * sech / eps


def b_field(model: FieldModel, x: float, y: float, z: float) -> np.ndarray:
    """Regularized boundary field; exactly divergence free."""
    th = theta_eps(z, model.eps)
    de = delta_eps(z, model.eps)
    return model.b0 * np.array(
        [-(1.0 - model.beta) * x * de, -model.beta * y * de, th]
    )


def vector_potential(
    params: GaugeParams, model: FieldModel, x: float, y: float, z: float
) -> np.ndarray:
    """Member of the quadratic gauge family with curl equal to b_field."""
    params.check(model)
    th = theta_eps(z, model.eps)
    de = delta_eps(z, model.eps)
    return model.b0 * np.array(
        [
            th * (params.a * x + params.b * y),
            th * ((1.0 + params.b) * x + params.c * y),
            de * (0.5 * params.a * x * x + params.d * x * y + 0.5 * params.c * y * y),
        ]
    )


def grad_chi(
    params: GaugeParams, model: FieldModel, x: float, y: float, z: float
) -> np.ndarray:
    """Gradient of the fixing gauge function chi."""
    th = theta_eps(z, model.eps)
    de = delta_eps(z, model.eps)
    quad = 0.5 * params.a * x * x + params.d * x * y + 0.5 * params.c * y * y
    return -model.b0 * np.array(
        [
            th * (params.a * x + params.d * y),
            th * (params.d * x + params.c * y),
            de * quad,
        ]
    )


@dataclass(frozen=True)
class GaugeFixResult:
    """Outcome of the gauge fixing transform A' = A + grad(chi)."""

    original: GaugeParams
    fixed: GaugeParams
    model: FieldModel

    def chi(self, x: float, y: float, z: float) -> float:
        p = self.original
        quad = 0.5 * p.a * x * x + p.d * x * y + 0.5 * p.c * y * y
        return -self.model.b0 * theta_eps(z, self.model.eps) * quad

    def potential(self, x: float, y: float, z: float) -> np.ndarray:
        """A' evaluated as A + grad(chi); algebraically the fixed member."""
        return vector_potential(self.original, self.model, x, y, z) + grad_chi(
            self.original, self.model, x, y, z
        )


def gauge_fix(params: GaugeParams, model: FieldModel) -> GaugeFixResult:
    """Gauge transformation removing the longitudinal component.

    The returned fixed parameters are (0, -beta, 0, 0), whose potential is
    B0 (-beta y theta, (1 - beta) x theta, 0): transverse, and divergence
    free wherever the ramp is flat.
    """
    params.check(model)
    fixed = GaugeParams(a=0.0, b=-model.beta, c=0.0, d=0.0)
    return GaugeFixResult(original=params, fixed=fixed, model=model)
