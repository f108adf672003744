"""Transverse-Hamiltonian operator family and its SO(3) structure.

All operators are dimensionless (units of the rotation frequency omega)
over coordinates in units of the transverse radius:

    Hs = -1/4 (dxx + dyy) + (x^2 + y^2)        isotropic oscillator
    H1 = -1/4 (dxx - dyy) + (x^2 - y^2)        astigmatic difference
    H2 = -1/2 dx dy + 2 x y                    diagonal astigmatism
    H3 = -i (x dy - y dx)                      angular momentum, = Lz

The triple L_i = H_i / 2 obeys [L_i, L_j] = i eps_ijk L_k with
eps_123 = +1, and Hs commutes with all three, so every Hs level of energy
n + m + 1 carries a pseudo-spin multiplet of rank j = (n + m)/2.  The
Casimir (H1^2 + H2^2 + H3^2)/4 collapses to Hs^2/4 - 1/4 identically.

The asymmetric part of the transverse Hamiltonian is

    Has(alpha) = -sign_e [cos(2 alpha) H1 + sin(2 alpha) H3],
    Hperp(alpha) = Hs + Has(alpha),

and the general rotated form couples the pseudo-spin to the unit axis
n(phi, alpha) = (cos 2phi cos 2alpha, sin 2phi cos 2alpha, sin 2alpha):

    H = Hs - sign_e * 2 * n . L.

``Hphys`` is the same Hamiltonian before the symmetrizing coordinate
dilation, written with the field ellipticity beta:

    Hphys = -1/4 (dxx + dyy)
            - sign_e * 2 * (-i) [-beta y dx + (1 - beta) x dy]
            + 4 [beta^2 y^2 + (1 - beta)^2 x^2].

Its eigenstates are the modes psi(alpha(beta)) dilated by
(sqrt(2(1-beta)), sqrt(2 beta)), with the mode spectrum unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gstate import (
    GaussianPolyState,
    PolyDiffOperator,
    apply,
    compose,
    inner_product,
    op_commutator,
)

_TAGS_PLAIN = ("Hs", "H1", "H2", "H3", "Lz", "Casimir")


@dataclass(frozen=True)
class OperatorKind:
    """Tagged description of one operator of the family.

    ``alpha`` is required by Has/Hperp, ``beta`` and ``sign_e`` by Hphys
    (and sign_e by Hperp); no other tag takes parameters.
    """

    tag: str
    alpha: float | None = None
    beta: float | None = None
    sign_e: int | None = None

    def __post_init__(self):
        needs_alpha = self.tag in ("Has", "Hperp")
        needs_sign = self.tag in ("Has", "Hperp", "Hphys")
        needs_beta = self.tag == "Hphys"
        if self.tag not in _TAGS_PLAIN and not (needs_alpha or needs_beta):
            raise ValueError(f"unknown operator tag {self.tag!r}")
        if needs_alpha != (self.alpha is not None):
            raise ValueError(f"tag {self.tag!r}: alpha {'required' if needs_alpha else 'not accepted'}")
        if needs_beta != (self.beta is not None):
            raise ValueError(f"tag {self.tag!r}: beta {'required' if needs_beta else 'not accepted'}")
        if needs_sign != (self.sign_e is not None):
            raise ValueError(f"tag {self.tag!r}: sign_e {'required' if needs_sign else 'not accepted'}")
        if self.sign_e is not None and self.sign_e not in (-1, 1):
            raise ValueError(f"sign_e must be -1 or +1, got {self.sign_e}")

    @classmethod
    def hs(cls):
        return cls("Hs")

    @classmethod
    def h1(cls):
        return cls("H1")

    @classmethod
    def h2(cls):
        return cls("H2")

    @classmethod
    def h3(cls):
        return cls("H3")

    @classmethod
    def lz(cls):
        return cls("Lz")

    @classmethod
    def casimir(cls):
        return cls("Casimir")

    @classmethod
    def h_as(cls, alpha: float, sign_e: int = -1):
        return cls("Has", alpha=alpha, sign_e=sign_e)

    @classmethod
    def h_perp(cls, alpha: float, sign_e: int = -1):
        return cls("Hperp", alpha=alpha, sign_e=sign_e)

    @classmethod
    def h_phys(cls, beta: float, sign_e: int = -1):
        return cls("Hphys", beta=beta, sign_e=sign_e)


def _hs() -> PolyDiffOperator:
    return PolyDiffOperator(
        {(0, 0, 2, 0): -0.25, (0, 0, 0, 2): -0.25, (2, 0, 0, 0): 1.0, (0, 2, 0, 0): 1.0}
    )


def _h1() -> PolyDiffOperator:
    return PolyDiffOperator(
        {(0, 0, 2, 0): -0.25, (0, 0, 0, 2): 0.25, (2, 0, 0, 0): 1.0, (0, 2, 0, 0): -1.0}
    )


def _h2() -> PolyDiffOperator:
    return PolyDiffOperator({(0, 0, 1, 1): -0.5, (1, 1, 0, 0): 2.0})


def _h3() -> PolyDiffOperator:
    return PolyDiffOperator({(1, 0, 0, 1): -1j, (0, 1, 1, 0): 1j})


def build(kind: OperatorKind) -> PolyDiffOperator:
    """Concrete differential operator for a tagged kind (units of omega)."""
    tag = kind.tag
    if tag == "Hs":
        return _hs()
    if tag == "H1":
        return _h1()
    if tag == "H2":
        return _h2()
    if tag in ("H3", "Lz"):
        return _h3()
    if tag == "Casimir":
        h1, h2, h3 = _h1(), _h2(), _h3()
        return 0.25 * (compose(h1, h1) + compose(h2, h2) + compose(h3, h3))
    if tag == "Has":
        c, s = math.cos(2 * kind.alpha), math.sin(2 * kind.alpha)
        return (-kind.sign_e) * (c * _h1() + s * _h3())
    if tag == "Hperp":
        return _hs() + build(OperatorKind.h_as(kind.alpha, kind.sign_e))
    if tag == "Hphys":
        beta, sign = kind.beta, kind.sign_e
        if not 0.0 < beta < 1.0:
            raise ValueError(
                f"Hphys needs beta strictly inside (0, 1), got {beta}: the "
                "symmetrizing dilation degenerates at the endpoints"
            )
        terms = {
            (0, 0, 2, 0): -0.25,
            (0, 0, 0, 2): -0.25,
            (0, 1, 1, 0): sign * 2j * (-beta),
            (1, 0, 0, 1): sign * 2j * (1.0 - beta),
            (0, 2, 0, 0): 4.0 * beta**2,
            (2, 0, 0, 0): 4.0 * (1.0 - beta) ** 2,
        }
        return PolyDiffOperator(terms)
    raise ValueError(f"unknown operator tag {tag!r}")


def _as_operator(kind) -> PolyDiffOperator:
    return kind if isinstance(kind, PolyDiffOperator) else build(kind)


def commutator(kind_i, kind_j) -> PolyDiffOperator:
    """[D_i, D_j] for tagged kinds or concrete operators, normal ordered."""
    return op_commutator(_as_operator(kind_i), _as_operator(kind_j))


def pseudo_spin(i: int) -> PolyDiffOperator:
    """Pseudo-angular-momentum component L_i = H_i / 2, i in {1, 2, 3}."""
    if i == 1:
        return 0.5 * _h1()
    if i == 2:
        return 0.5 * _h2()
    if i == 3:
        return 0.5 * _h3()
    raise ValueError(f"component index must be 1, 2 or 3, got {i}")


def rotate(s: GaussianPolyState, phi: float) -> GaussianPolyState:
    """Clockwise coordinate rotation by phi:

    psi(x, y) -> psi(x cos(phi) + y sin(phi), -x sin(phi) + y cos(phi)).

    Exactly norm preserving; requires the isotropic envelope.
    """
    if s.envelope[0] != s.envelope[1]:
        raise ValueError("rotation requires an isotropic envelope")
    c, si = math.cos(phi), math.sin(phi)
    out: dict[tuple[int, int], complex] = {}
    for (p, q), coeff in s.terms.items():
        # (c x + si y)^p (-si x + c y)^q expanded by double binomial
        for i in range(p + 1):
            fx = math.comb(p, i) * c**i * si ** (p - i)
            if fx == 0.0:
                continue
            for jj in range(q + 1):
                f = fx * math.comb(q, jj) * c**jj * (-si) ** (q - jj)
                if f == 0.0:
                    continue
                key = (i + q - jj, p - i + jj)
                out[key] = out.get(key, 0j) + coeff * f
    return GaussianPolyState(out, s.envelope)


def dilate(s: GaussianPolyState, lx: float, ly: float) -> GaussianPolyState:
    """Unitary dilation psi(x, y) -> sqrt(lx ly) psi(lx x, ly y).

    The envelope exponents rescale to (ax lx^2, ay ly^2), so the result is
    generally anisotropic.
    """
    if lx <= 0 or ly <= 0:
        raise ValueError(f"dilation scales must be positive, got ({lx}, {ly})")
    root = math.sqrt(lx * ly)
    terms = {
        (p, q): c * root * lx**p * ly**q for (p, q), c in s.terms.items()
    }
    ax, ay = s.envelope
    return GaussianPolyState(terms, (ax * lx * lx, ay * ly * ly))


def expectation(s: GaussianPolyState, kind) -> complex:
    """<s| D |s> / <s|s> for a tagged kind or concrete operator."""
    nrm = inner_product(s, s).real
    if nrm <= 0.0:
        raise ValueError("expectation of a zero-norm state is undefined")
    return inner_product(s, apply(_as_operator(kind), s)) / nrm


def eigen_residual(s: GaussianPolyState, kind, lam: complex) -> float:
    """||D s - lam s|| / ||s||."""
    nrm2 = inner_product(s, s).real
    if nrm2 <= 0.0:
        raise ValueError("eigen residual of a zero-norm state is undefined")
    r = apply(_as_operator(kind), s) - complex(lam) * s
    return math.sqrt(max(inner_product(r, r).real, 0.0) / nrm2)


def spin_axis(phi: float, alpha: float) -> np.ndarray:
    """Unit axis on the mode sphere singled out by (phi, alpha)."""
    c2a = math.cos(2 * alpha)
    return np.array(
        [math.cos(2 * phi) * c2a, math.sin(2 * phi) * c2a, math.sin(2 * alpha)]
    )


def schwinger_operator(phi: float, alpha: float, sign_e: int) -> PolyDiffOperator:
    """General rotated Hamiltonian Hs - sign_e * 2 * n(phi, alpha) . L."""
    if sign_e not in (-1, 1):
        raise ValueError(f"sign_e must be -1 or +1, got {sign_e}")
    n1, n2, n3 = spin_axis(phi, alpha)
    coupling = n1 * _h1() + n2 * _h2() + n3 * _h3()
    return _hs() + (-sign_e) * coupling


def schwinger_apply(
    s: GaussianPolyState, phi: float, alpha: float, sign_e: int
) -> GaussianPolyState:
    """Action of the general rotated Hamiltonian on a state."""
    return apply(schwinger_operator(phi, alpha, sign_e), s)
