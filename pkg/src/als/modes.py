"""Hermite-Laguerre-Gauss mode construction and quantum-number maps.

The mode family interpolates between the Hermite-Gauss product states at
``alpha = 0`` and the twisted Laguerre-Gauss states at ``alpha = pi/4``.
A mode carries Cartesian indices ``(n, m)``; the twisted labels are

    l = n - m,        n_r = (n + m - |l|) / 2.

Construction expands the defining finite sum over Hermite products,

    G_{n,m}(x, y | a) = exp(-x^2 - y^2) *
        sum_k  i^k cos^(n-k)(a) sin^(m-k)(a)
               P_k^(n-k, m-k)(-cos 2a) H_{n+m-k}(sqrt2 x) H_k(sqrt2 y),

    ||G_{n,m}||^2 = pi 2^(n+m-1) n! m!,

with the Jacobi factor folded into the trigonometric prefactors,

    c_k = i^k sum_s (-1)^s C(n, k-s) C(m, s)
                     cos^(n-k+2s)(a) sin^(m+k-2s)(a),

so every exponent is nonnegative and the limits a = 0, pi/2 are exact
(all the apparent poles of the unfolded sum cancel).  At a = 0 only
k = m survives with c_m = (-i)^m, reproducing the Hermite-Gauss product
with its (-i)^m phase.

The same states arise from an SU(2) rotation of the Hermite-Gauss basis.
With the basis states |m'> = psi_{j+m', j-m'}(alpha=0) of rank
j = (n + m)/2, the coefficient matrix of the rotated family is a Wigner D
in the z-y-z convention; ``euler_angles`` returns angles (A, B, C)
satisfying

    exp(-i(A+C)/2) cos(B/2) =  cos(phi) cos(alpha) - i sin(phi) sin(alpha)
    exp(+i(A-C)/2) sin(B/2) = -cos(phi) sin(alpha) + i sin(phi) cos(alpha)

with B in [0, pi], which makes

    psi^rot_{j+m, j-m}(x, y; phi, alpha)
        = sum_{m'} D^j_{m',m}(A, B, C) psi_{j+m', j-m'}(x, y; 0)

hold exactly (as an SU(2) identity, including half-integer j).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import comb, factorial

from . import specfun
from .gstate import GaussianPolyState, linear_combine

#: Default limit on n + m; double precision degrades in the coefficient
#: sums well above this, so raising it is at the caller's risk.
ORDER_CAP = 20


@dataclass(frozen=True)
class ModeIndex:
    """Cartesian mode indices with the twisted-label maps."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise ValueError(f"mode indices must be >= 0, got ({self.n}, {self.m})")

    @property
    def l(self) -> int:
        """Orbital angular momentum projection label."""
        return self.n - self.m

    @property
    def n_r(self) -> int:
        """Radial quantum number."""
        return (self.n + self.m - abs(self.l)) // 2

    @property
    def j(self) -> float:
        """Rank of the pseudo-angular-momentum multiplet, (n + m)/2."""
        return 0.5 * (self.n + self.m)

    @property
    def m_l(self) -> float:
        """Pseudo-spin projection, l/2."""
        return 0.5 * self.l

    def to_twisted(self) -> tuple[int, int]:
        return self.n_r, self.l

    @classmethod
    def from_twisted(cls, n_r: int, l: int) -> "ModeIndex":
        if n_r < 0:
            raise ValueError(f"radial quantum number must be >= 0, got {n_r}")
        if l >= 0:
            return cls(n_r + l, n_r)
        return cls(n_r, n_r - l)


def mode_from_twisted(n_r: int, l: int) -> ModeIndex:
    """Cartesian (n, m) for twisted labels (n_r, l)."""
    return ModeIndex.from_twisted(n_r, l)


def alpha_to_beta(alpha: float, sign_e: int) -> float:
    """Field ellipticity beta for state parameter alpha and charge sign."""
    _check_sign(sign_e)
    a_tilde = 0.25 * math.pi + sign_e * (0.25 * math.pi - alpha)
    return math.sin(a_tilde) ** 2


def beta_to_alpha(beta: float, sign_e: int) -> float:
    """State parameter alpha in [0, pi/2] for field ellipticity beta.

    Inverse of ``alpha_to_beta`` on the principal branch: for negative
    charge ``beta = sin^2(alpha)``, for positive charge
    ``beta = cos^2(alpha)``.
    """
    _check_sign(sign_e)
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    root = math.sqrt(beta)
    return math.asin(root) if sign_e < 0 else math.acos(root)


def _check_sign(sign_e: int) -> None:
    if sign_e not in (-1, 1):
        raise ValueError(f"sign_e must be -1 or +1, got {sign_e}")


@dataclass(frozen=True)
class SymmetryConfig:
    """Charge sign, symmetry angles and physical scales of a setup.

    ``omega`` (rotation frequency) and ``rho_h`` (transverse radius) are
    bookkeeping for unit conversion at the boundary; all internal algebra
    runs with both equal to 1.
    """

    sign_e: int
    alpha: float
    phi: float = 0.0
    omega: float = 1.0
    rho_h: float = 1.0

    def __post_init__(self):
        _check_sign(self.sign_e)
        if not 0.0 <= self.alpha <= 0.5 * math.pi + 1e-12:
            raise ValueError(
                f"alpha must lie in [0, pi/2], got {self.alpha}; reduce "
                "out-of-range values with the alpha -> alpha +- pi/2 "
                "relabeling symmetry first"
            )
        if self.omega <= 0 or self.rho_h <= 0:
            raise ValueError("omega and rho_h must be positive")

    @property
    def beta(self) -> float:
        return alpha_to_beta(self.alpha, self.sign_e)


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha <= 0.5 * math.pi + 1e-12:
        raise ValueError(
            f"alpha must lie in [0, pi/2], got {alpha}; out-of-range values "
            "reduce via alpha -> alpha +- pi/2 with mode relabeling"
        )


def hlg_coefficients(n: int, m: int, alpha: float) -> list[complex]:
    """Coefficients c_k of H_{n+m-k}(sqrt2 x) H_k(sqrt2 y) in the mode sum.

    Folded form: finite, pole-free for every alpha including 0 and pi/2.
    """
    ca, sa = math.cos(alpha), math.sin(alpha)
    out: list[complex] = []
    for k in range(n + m + 1):
        acc = 0.0
        for s in range(max(0, k - n), min(k, m) + 1):
            term = comb(n, k - s) * comb(m, s)
            term *= ca ** (n - k + 2 * s) * sa ** (m + k - 2 * s)
            acc += -term if s % 2 else term
        out.append(1j**k * acc)
    return out


def hlg_norm_squared(n: int, m: int) -> float:
    """Squared L2 norm of the unnormalized mode sum: pi 2^(n+m-1) n! m!."""
    return math.pi * 2.0 ** (n + m - 1) * factorial(n) * factorial(m)


def _hermite_scaled(order: int) -> list[float]:
    """Coefficients of H_order(sqrt2 u) in powers of u."""
    base = specfun.hermite(order).coeffs
    return [c * 2.0 ** (0.5 * p) for p, c in enumerate(base)]


def hlg_state(
    n: int,
    m: int,
    alpha: float,
    *,
    order_cap: int = ORDER_CAP,
    normalized: bool = True,
) -> GaussianPolyState:
    """Mode state psi_{n,m}(alpha) as an exact term map.

    Unit norm when ``normalized``; at alpha = 0 this is the
    Hermite-Gauss product (including its (-i)^m phase), at alpha = pi/4
    the twisted Laguerre-Gauss state.
    """
    if n < 0 or m < 0:
        raise ValueError(f"mode indices must be >= 0, got ({n}, {m})")
    if n + m > order_cap:
        raise ValueError(
            f"mode order n+m = {n + m} exceeds the cap {order_cap}; "
            "pass order_cap explicitly to override"
        )
    _check_alpha(alpha)
    coeffs = hlg_coefficients(n, m, alpha)
    terms: dict[tuple[int, int], complex] = {}
    for k, ck in enumerate(coeffs):
        if abs(ck) == 0.0:
            continue
        hx = _hermite_scaled(n + m - k)
        hy = _hermite_scaled(k)
        for p, cp in enumerate(hx):
            if cp == 0.0:
                continue
            for q, cq in enumerate(hy):
                if cq == 0.0:
                    continue
                key = (p, q)
                terms[key] = terms.get(key, 0j) + ck * cp * cq
    state = GaussianPolyState(terms)
    if normalized:
        state = (1.0 / math.sqrt(hlg_norm_squared(n, m))) * state
    return state


def euler_angles(phi: float, alpha: float) -> tuple[float, float, float]:
    """z-y-z Euler angles (A, B, C) of the mode-family rotation.

    Defined by the pair of complex equations in the module docstring;
    B lies in [0, pi].  At the gauge-degenerate poles B = 0 and B = pi
    the convention C = 0 fixes the remaining angle.
    """
    w1 = complex(math.cos(phi) * math.cos(alpha), -math.sin(phi) * math.sin(alpha))
    w2 = complex(-math.cos(phi) * math.sin(alpha), math.sin(phi) * math.cos(alpha))
    B = 2.0 * math.atan2(abs(w2), abs(w1))
    if abs(w2) < 1e-15:
        return -2.0 * cmath.phase(w1), B, 0.0
    if abs(w1) < 1e-15:
        return 2.0 * cmath.phase(w2), B, 0.0
    A = -cmath.phase(w1) + cmath.phase(w2)
    C = -cmath.phase(w1) - cmath.phase(w2)
    return A, B, C


def schwinger_state(
    n: int,
    m: int,
    alpha: float,
    phi: float,
    *,
    order_cap: int = ORDER_CAP,
) -> GaussianPolyState:
    """Mode rotated by phi in the transverse plane:

    psi_{n,m}(x cos(phi) + y sin(phi), -x sin(phi) + y cos(phi); alpha).

    Eigenstate of the rotated-axis Hamiltonian family; unit norm.
    """
    from .operators import rotate

    return rotate(hlg_state(n, m, alpha, order_cap=order_cap), phi)


def _check_jm(j: float, m_l: float) -> tuple[int, int]:
    tj = round(2 * j)
    tm = round(2 * m_l)
    if abs(2 * j - tj) > 1e-9 or abs(2 * m_l - tm) > 1e-9:
        raise ValueError(f"j and m_l must be half-integers, got j={j}, m_l={m_l}")
    if tj < 0 or abs(tm) > tj or (tj - tm) % 2:
        raise ValueError(f"need |m_l| <= j with j - m_l integral, got j={j}, m_l={m_l}")
    return tj, tm


def wigner_decompose(
    j: float, m_l: float, A: float, B: float, C: float
) -> dict[float, complex]:
    """Expansion coefficients of the rotated mode over the alpha=0 basis.

    Returns ``{m_l': D^j_{m_l', m_l}(A, B, C)}`` for m_l' = -j ... j; the
    coefficient multiplies the basis state psi_{j+m_l', j-m_l'}(alpha=0).
    The rows are unitary: sum |coeff|^2 = 1.
    """
    tj, tm = _check_jm(j, m_l)
    out: dict[float, complex] = {}
    for tmp in range(-tj, tj + 1, 2):
        mp = 0.5 * tmp
        out[mp] = specfun.wigner_D(0.5 * tj, mp, 0.5 * tm, A, B, C)
    return out


def wigner_reconstruct(
    j: float, m_l: float, A: float, B: float, C: float
) -> GaussianPolyState:
    """Assemble the rotated mode from its Wigner expansion coefficients."""
    coeffs = wigner_decompose(j, m_l, A, B, C)
    pairs = sorted(coeffs.items())
    states = [
        hlg_state(round(j + mp), round(j - mp), 0.0) for mp, _ in pairs
    ]
    return linear_combine([c for _, c in pairs], states)
