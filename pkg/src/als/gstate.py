"""Exact algebra of polynomial x Gaussian wavefunctions.

A state is a finite complex polynomial multiplied by a Gaussian envelope,

    psi(x, y) = P(x, y) * exp(-ax*x^2 - ay*y^2),

in dimensionless transverse coordinates (lengths in units of the
characteristic transverse radius).  The default envelope is the isotropic
``ax = ay = 1``; the anisotropic generalization exists only to support
unitary coordinate dilations.

Operators are finite sums ``c * x^p y^q (d/dx)^dx (d/dy)^dy``, normal
ordered (all derivatives to the right), tagged in units of the rotation
frequency omega.  Differentiating a state reproduces a state of the same
form, so operator action, composition, commutators and inner products are
all exact up to float rounding; no grids are involved.

Inner products reduce to Gaussian moments

    integral x^p y^q exp(-2ax*x^2 - 2ay*y^2) dx dy,

evaluated from the half-integer Gamma recurrence.
"""

from __future__ import annotations

import math
from functools import lru_cache
from math import comb

import numpy as np

# Coefficients below this magnitude are dropped from term maps.
_PRUNE = 1e-300

Monomial = tuple[int, int]
OpTerm = tuple[int, int, int, int]


class GaussianPolyState:
    """Sparse polynomial term map over a fixed Gaussian envelope.

    ``terms`` maps ``(p, q)`` monomial powers to complex coefficients.
    Instances are treated as immutable values: every operation returns a
    new state.
    """

    __slots__ = ("terms", "envelope")

    def __init__(self, terms=None, envelope: tuple[float, float] = (1.0, 1.0)):
        ax, ay = float(envelope[0]), float(envelope[1])
        if not (ax > 0 and ay > 0):
            raise ValueError(f"envelope exponents must be positive, got {envelope}")
        clean: dict[Monomial, complex] = {}
        for (p, q), c in (terms or {}).items():
            c = complex(c)
            if abs(c) >= _PRUNE:
                clean[(int(p), int(q))] = c
        self.terms = clean
        self.envelope = (ax, ay)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total polynomial degree; -1 for the zero state."""
        return max((p + q for p, q in self.terms), default=-1)

    def _require_same_envelope(self, other: "GaussianPolyState") -> None:
        if self.envelope != other.envelope:
            raise ValueError(
                f"envelope mismatch: {self.envelope} vs {other.envelope}"
            )

    def __add__(self, other: "GaussianPolyState") -> "GaussianPolyState":
        self._require_same_envelope(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0j) + c
        return GaussianPolyState(out, self.envelope)

    def __sub__(self, other: "GaussianPolyState") -> "GaussianPolyState":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "GaussianPolyState":
        s = complex(scalar)
        return GaussianPolyState(
            {k: s * c for k, c in self.terms.items()}, self.envelope
        )

    def __repr__(self) -> str:
        return f"GaussianPolyState({len(self.terms)} terms, envelope={self.envelope})"


class PolyDiffOperator:
    """Linear differential operator with polynomial coefficients.

    ``terms`` maps ``(p, q, dx, dy)`` to complex coefficients, meaning
    ``coeff * x^p y^q d^dx/dx^dx d^dy/dy^dy`` (normal ordered).  The set is
    closed under composition, so commutators are exact.  Coefficients are
    in multiples of omega.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[OpTerm, complex] = {}
        for (p, q, dx, dy), c in (terms or {}).items():
            c = complex(c)
            if abs(c) >= _PRUNE:
                clean[(int(p), int(q), int(dx), int(dy))] = c
        self.terms = clean

    @classmethod
    def identity(cls) -> "PolyDiffOperator":
        return cls({(0, 0, 0, 0): 1.0})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def max_coeff(self) -> float:
        """Largest coefficient magnitude; 0 for the zero operator."""
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def __add__(self, other: "PolyDiffOperator") -> "PolyDiffOperator":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0j) + c
        return PolyDiffOperator(out)

    def __sub__(self, other: "PolyDiffOperator") -> "PolyDiffOperator":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "PolyDiffOperator":
        s = complex(scalar)
        return PolyDiffOperator({k: s * c for k, c in self.terms.items()})

    def __repr__(self) -> str:
        return f"PolyDiffOperator({len(self.terms)} terms)"


def linear_combine(coeffs, states) -> GaussianPolyState:
    """Termwise linear combination sum_i coeffs[i] * states[i]."""
    coeffs = list(coeffs)
    states = list(states)
    if len(coeffs) != len(states):
        raise ValueError(
            f"got {len(coeffs)} coefficients for {len(states)} states"
        )
    if not states:
        return GaussianPolyState({})
    envelope = states[0].envelope
    out: dict[Monomial, complex] = {}
    for c, s in zip(coeffs, states):
        if s.envelope != envelope:
            raise ValueError("all states must share one envelope")
        c = complex(c)
        for key, v in s.terms.items():
            out[key] = out.get(key, 0j) + c * v
    return GaussianPolyState(out, envelope)


@lru_cache(maxsize=None)
def _moment_1d(k: int, a: float) -> float:
    """integral u^k exp(-a u^2) du over the real line (even k only)."""
    if k % 2:
        return 0.0
    if k == 0:
        return math.sqrt(math.pi / a)
    return _moment_1d(k - 2, a) * (k - 1) / (2.0 * a)


def gaussian_moment(p: int, q: int) -> float:
    """Moment of the squared isotropic envelope:

    integral x^p y^q exp(-2x^2 - 2y^2) dx dy.
    """
    if p < 0 or q < 0:
        raise ValueError(f"moment powers must be >= 0, got ({p}, {q})")
    return _moment_1d(p, 2.0) * _moment_1d(q, 2.0)


def inner_product(a: GaussianPolyState, b: GaussianPolyState) -> complex:
    """<a|b>, conjugate-linear in the first argument.

    Envelopes may differ; the product of the two Gaussians supplies the
    integration weight.
    """
    ax = a.envelope[0] + b.envelope[0]
    ay = a.envelope[1] + b.envelope[1]
    total = 0j
    for (p, q), ca in a.terms.items():
        cc = ca.conjugate()
        for (r, s), cb in b.terms.items():
            if (p + r) % 2 or (q + s) % 2:
                continue
            total += cc * cb * _moment_1d(p + r, ax) * _moment_1d(q + s, ay)
    return total


def norm(s: GaussianPolyState) -> float:
    return math.sqrt(max(inner_product(s, s).real, 0.0))


def _diff_x(poly: dict[Monomial, complex], ax: float) -> dict[Monomial, complex]:
    # d/dx acting on P * exp(-ax x^2 - ...): P -> dP/dx - 2 ax x P
    out: dict[Monomial, complex] = {}
    for (p, q), c in poly.items():
        if p:
            key = (p - 1, q)
            out[key] = out.get(key, 0j) + p * c
        key = (p + 1, q)
        out[key] = out.get(key, 0j) - 2.0 * ax * c
    return out


def _diff_y(poly: dict[Monomial, complex], ay: float) -> dict[Monomial, complex]:
    out: dict[Monomial, complex] = {}
    for (p, q), c in poly.items():
        if q:
            key = (p, q - 1)
            out[key] = out.get(key, 0j) + q * c
        key = (p, q + 1)
        out[key] = out.get(key, 0j) - 2.0 * ay * c
    return out


def apply(D: PolyDiffOperator, s: GaussianPolyState) -> GaussianPolyState:
    """Exact operator action D s, staying inside the representation."""
    ax, ay = s.envelope
    out: dict[Monomial, complex] = {}
    for (p, q, dx, dy), c in D.terms.items():
        poly = s.terms
        for _ in range(dx):
            poly = _diff_x(poly, ax)
        for _ in range(dy):
            poly = _diff_y(poly, ay)
        for (i, j), v in poly.items():
            key = (i + p, j + q)
            out[key] = out.get(key, 0j) + c * v
    return GaussianPolyState(out, s.envelope)


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def compose(D1: PolyDiffOperator, D2: PolyDiffOperator) -> PolyDiffOperator:
    """Operator product D1 D2, normal ordered via the Leibniz rule.

    Each pair of terms expands through

        d^a x^r = sum_i C(a, i) r!/(r-i)! x^(r-i) d^(a-i)

    applied independently in x and y.
    """
    out: dict[OpTerm, complex] = {}
    for (p1, q1, a1, b1), c1 in D1.terms.items():
        for (p2, q2, a2, b2), c2 in D2.terms.items():
            c12 = c1 * c2
            for i in range(min(a1, p2) + 1):
                fx = comb(a1, i) * _falling(p2, i)
                for j in range(min(b1, q2) + 1):
                    f = fx * comb(b1, j) * _falling(q2, j)
                    key = (p1 + p2 - i, q1 + q2 - j, a1 - i + a2, b1 - j + b2)
                    out[key] = out.get(key, 0j) + c12 * f
    return PolyDiffOperator(out)


def op_commutator(D1: PolyDiffOperator, D2: PolyDiffOperator) -> PolyDiffOperator:
    """[D1, D2] = D1 D2 - D2 D1."""
    return compose(D1, D2) - compose(D2, D1)


def evaluate(s: GaussianPolyState, x: float, y: float) -> complex:
    """Pointwise value P(x, y) exp(-ax x^2 - ay y^2)."""
    ax, ay = s.envelope
    total = 0j
    for (p, q), c in s.terms.items():
        total += c * x**p * y**q
    return total * math.exp(-ax * x * x - ay * y * y)


def evaluate_grid(s: GaussianPolyState, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Vectorized ``evaluate`` over coordinate arrays of equal shape."""
    ax, ay = s.envelope
    total = np.zeros(np.broadcast(X, Y).shape, dtype=complex)
    xp_cache: dict[int, np.ndarray] = {}
    yq_cache: dict[int, np.ndarray] = {}
    for (p, q), c in s.terms.items():
        if p not in xp_cache:
            xp_cache[p] = X**p
        if q not in yq_cache:
            yq_cache[q] = Y**q
        total += c * xp_cache[p] * yq_cache[q]
    return total * np.exp(-ax * X * X - ay * Y * Y)


def density_grid(
    s: GaussianPolyState,
    xmin: float,
    xmax: float,
    ymin: float,
    ymax: float,
    nx: int,
    ny: int,
) -> np.ndarray:
    """|psi|^2 sampled at cell centers; shape (ny, nx), row j at y_j."""
    if not (xmax > xmin and ymax > ymin):
        raise ValueError("grid ranges must have positive extent")
    if nx < 2 or ny < 2:
        raise ValueError("grid needs at least 2 points per axis")
    dx = (xmax - xmin) / nx
    dy = (ymax - ymin) / ny
    xc = xmin + dx * (np.arange(nx) + 0.5)
    yc = ymin + dy * (np.arange(ny) + 0.5)
    X, Y = np.meshgrid(xc, yc)
    vals = evaluate_grid(s, X, Y)
    return (vals.real**2 + vals.imag**2).astype(float)
