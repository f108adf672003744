"""Orthogonal polynomials and SU(2) rotation matrix elements.

Everything is evaluated in double precision from exact integer recurrences
and factorial sums.  Coefficient growth bounds the practical range to
polynomial degrees <= 40 and rotation ranks j <= 8, which is far beyond
what the mode constructions upstream ever request.

Conventions:

* ``hermite`` returns the physicists' family,
  ``H_0 = 1``, ``H_1 = 2x``, ``H_{n+1} = 2x H_n - 2n H_{n-1}``.
* ``laguerre(n, k)`` is the generalized Laguerre polynomial ``L_n^k`` with
  ``L_0^k = 1``, ``L_1^k = 1 + k - x``.
* ``jacobi_eval(k, a, b, x)`` evaluates ``P_k^(a,b)(x)`` through the
  binomial sum

      sum_s  C(k+a, k-s) C(k+b, s) ((x-1)/2)^s ((x+1)/2)^(k-s),

  which stays valid for integer parameters down to ``a, b = -k`` because
  binomials with an oversized lower index vanish.
* ``wigner_D`` uses z-y-z Euler angles,

      D^j_{m',m}(A, B, C) = exp(-i m' A) d^j_{m',m}(B) exp(-i m C),

  with the factorial sum for the small-d function (rows indexed by m').
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import comb, factorial


@dataclass(frozen=True)
class PolyCoeffs:
    """Dense real polynomial, ``coeffs[i]`` multiplying ``x**i``."""

    coeffs: tuple[float, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        """Evaluate by Horner's scheme; works on scalars and numpy arrays."""
        acc = self.coeffs[-1] * (x * 0 + 1) if hasattr(x, "shape") else self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc


def hermite(n: int) -> PolyCoeffs:
    """Physicists' Hermite polynomial H_n as a coefficient table."""
    if n < 0:
        raise ValueError(f"Hermite order must be >= 0, got {n}")
    if n == 0:
        return PolyCoeffs((1.0,))
    prev = [1.0]
    cur = [0.0, 2.0]
    for k in range(1, n):
        nxt = [0.0] * (k + 2)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2.0 * c
        for i, c in enumerate(prev):
            nxt[i] -= 2.0 * k * c
        prev, cur = cur, nxt
    return PolyCoeffs(tuple(cur))


def laguerre(n: int, k: int) -> PolyCoeffs:
    """Generalized Laguerre polynomial L_n^k as a coefficient table."""
    if n < 0 or k < 0:
        raise ValueError(f"Laguerre indices must be >= 0, got n={n}, k={k}")
    if n == 0:
        return PolyCoeffs((1.0,))
    prev = [1.0]
    cur = [1.0 + k, -1.0]
    for i in range(1, n):
        # (i+1) L_{i+1} = (2i + k + 1 - x) L_i - (i + k) L_{i-1}
        nxt = [0.0] * (i + 2)
        for p, c in enumerate(cur):
            nxt[p] += (2 * i + k + 1) * c
            nxt[p + 1] -= c
        for p, c in enumerate(prev):
            nxt[p] -= (i + k) * c
        prev, cur = cur, [c / (i + 1) for c in nxt]
    return PolyCoeffs(tuple(cur))


def jacobi_eval(k: int, a: int, b: int, x: float) -> float:
    """Jacobi polynomial value P_k^(a,b)(x) for integer a, b >= -k."""
    if k < 0:
        raise ValueError(f"Jacobi degree must be >= 0, got {k}")
    if a < -k or b < -k:
        raise ValueError(f"Jacobi parameters must be >= -k = {-k}, got a={a}, b={b}")
    um = 0.5 * (x - 1.0)
    up = 0.5 * (x + 1.0)
    total = 0.0
    for s in range(k + 1):
        c = comb(k + a, k - s) * comb(k + b, s)
        if c:
            total += c * um**s * up ** (k - s)
    return total


def _twice(value: float, name: str) -> int:
    """Round a half-integer quantum number to an exact doubled integer."""
    doubled = round(2 * value)
    if abs(2 * value - doubled) > 1e-9:
        raise ValueError(f"{name} must be integer or half-integer, got {value}")
    return doubled


def wigner_small_d(j: float, mp: float, m: float, beta: float) -> float:
    """Wigner small-d matrix element d^j_{mp,m}(beta).

    Factorial-sum form; valid for integer and half-integer j with
    |mp| <= j, |m| <= j and j - mp, j - m integral.
    """
    tj, tmp, tm = _twice(j, "j"), _twice(mp, "mp"), _twice(m, "m")
    if tj < 0 or abs(tmp) > tj or abs(tm) > tj:
        raise ValueError(f"indices out of range: j={j}, mp={mp}, m={m}")
    if (tj - tmp) % 2 or (tj - tm) % 2:
        raise ValueError(f"j-mp and j-m must be integers: j={j}, mp={mp}, m={m}")

    j_p_mp, j_m_mp = (tj + tmp) // 2, (tj - tmp) // 2
    j_p_m, j_m_m = (tj + tm) // 2, (tj - tm) // 2
    mp_m_m = (tmp - tm) // 2

    pref = math.sqrt(
        factorial(j_p_mp) * factorial(j_m_mp) * factorial(j_p_m) * factorial(j_m_m)
    )
    c, s = math.cos(0.5 * beta), math.sin(0.5 * beta)
    total = 0.0
    for k in range(max(0, -mp_m_m), min(j_p_m, j_m_mp) + 1):
        denom = (
            factorial(j_p_m - k)
            * factorial(k)
            * factorial(mp_m_m + k)
            * factorial(j_m_mp - k)
        )
        sign = -1.0 if (mp_m_m + k) % 2 else 1.0
        total += sign * c ** (tj - mp_m_m - 2 * k) * s ** (mp_m_m + 2 * k) / denom
    return pref * total


def wigner_D(j: float, mp: float, m: float, A: float, B: float, C: float) -> complex:
    """Wigner D-matrix element D^j_{mp,m}(A, B, C), z-y-z convention."""
    d = wigner_small_d(j, mp, m, B)
    return cmath.exp(-1j * mp * A) * d * cmath.exp(-1j * m * C)
