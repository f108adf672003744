"""Mode-sphere geometry and discrete geometric phases.

Each parameter pair (phi, alpha) marks the point

    n = (cos 2phi cos 2alpha, sin 2phi cos 2alpha, sin 2alpha)

on the unit sphere that classifies the rotated mode family.  Transporting
a mode around a closed parameter loop leaves a geometric phase

    Phi = -Arg prod_k <psi(v_k) | psi(v_{k+1})>

(the discrete phase-product; manifestly gauge invariant because every
vertex state enters once as a bra and once as a ket).  As the segment
count grows it converges to -(l/2) * Omega, where Omega is the signed
solid angle the loop encloses, counted positive for counterclockwise
traversal seen from the +z pole.

Solid angles are summed from signed vertex-triangle excesses fanned from
the +z pole, which handles great-circle loops and multiple windings; the
admissible parameter domain alpha in [0, pi/2] keeps every path on the
closed northern hemisphere, away from the antipode of the fan origin.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .gstate import inner_product
from .modes import schwinger_state
from .operators import spin_axis

#: Consecutive-vertex overlaps below this magnitude abort the phase product.
MIN_OVERLAP = 1e-6

_CLOSE_TOL = 1e-9


class ResolutionError(Exception):
    """The discrete path is too coarse for a meaningful phase product."""


def sphere_point(phi: float, alpha: float) -> np.ndarray:
    """Unit sphere point of the parameter pair; same formula as spin_axis."""
    return spin_axis(phi, alpha)


@dataclass(frozen=True)
class SpherePath:
    """Ordered (phi, alpha) vertices; closed paths repeat the first vertex.

    Closure is judged in sphere coordinates (azimuth 2 phi mod 2 pi), so a
    seam crossing like (phi, pi/2) == (phi + pi/2, 0) closes a loop.
    """

    vertices: tuple[tuple[float, float], ...]
    closed: bool = True

    def __post_init__(self):
        verts = tuple((float(p), float(a)) for p, a in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 2:
            raise ValueError("a path needs at least two vertices")
        if self.closed:
            first = sphere_point(*verts[0])
            last = sphere_point(*verts[-1])
            if np.linalg.norm(first - last) > _CLOSE_TOL:
                raise ValueError(
                    "closed path must end on its first vertex in sphere coordinates"
                )

    def points(self) -> np.ndarray:
        """Sphere points of all vertices, shape (len, 3)."""
        return np.array([sphere_point(p, a) for p, a in self.vertices])

    def reversed(self) -> "SpherePath":
        return SpherePath(tuple(reversed(self.vertices)), self.closed)


def latitude_loop(alpha: float, segments: int) -> SpherePath:
    """Constant-alpha loop; phi sweeps 0 -> pi so the azimuth covers 2 pi.

    Counterclockwise seen from the +z pole.
    """
    if segments < 3:
        raise ValueError("need at least 3 segments")
    phis = np.linspace(0.0, math.pi, segments + 1)
    return SpherePath(tuple((float(p), alpha) for p in phis))

def polar_loop(phi0: float, segments: int) -> SpherePath:
    """Two great-circle arcs bounding an azimuthal sector of the north cap.

    Ascends the meridian at phi0 from the equator over the pole down to
    the antipodal equator point, then returns along the equator.
    Encloses a quarter sphere (|Omega| = pi).
    """
    if segments < 4:
        raise ValueError("need at least 4 segments")
    half = segments // 2
    up = [(phi0, a) for a in np.linspace(0.0, 0.5 * math.pi, half + 1)]
    back = [
        (phi0 + 0.5 * math.pi - t, 0.0)
        for t in np.linspace(0.0, 0.5 * math.pi, segments - half + 1)[1:]
    ]
    return SpherePath(tuple((float(p), float(a)) for p, a in up + back))


def _triangle_solid_angle(v1: np.ndarray, v2: np.ndarray, v3: np.ndarray) -> float:
    """Signed solid angle of a spherical triangle (van Oosterom-Strackee)."""
    num = float(np.dot(v1, np.cross(v2, v3)))
    den = 1.0 + float(np.dot(v1, v2)) + float(np.dot(v2, v3)) + float(np.dot(v3, v1))
    return 2.0 * math.atan2(num, den)


def solid_angle(path: SpherePath) -> float:
    """Signed solid angle enclosed by a closed path, in (-4 pi, 4 pi).

    Positive for counterclockwise traversal seen from the +z pole.
    """
    if not path.closed:
        raise ValueError("solid angle is defined for closed paths only")
    pts = path.points()[:-1]
    distinct = {tuple(np.round(p, 9)) for p in pts}
    if len(distinct) < 3:
        raise ValueError("need at least 3 distinct vertices on the sphere")
    pole = np.array([0.0, 0.0, 1.0])
    total = 0.0
    npts = len(pts)
    for k in range(npts):
        total += _triangle_solid_angle(pole, pts[k], pts[(k + 1) % npts])
    if not -4.0 * math.pi < total < 4.0 * math.pi:
        raise ValueError(f"winding out of supported range: {total}")
    return total


def berry_phase(path: SpherePath, n: int, m: int) -> float:
    """Discrete geometric phase of mode (n, m) around a closed path.

    Phi = -Arg prod <psi_k|psi_{k+1}> over the cycle of vertex states;
    converges to -(l/2) * solid_angle with l = n - m.
    """
    if not path.closed:
        raise ValueError("geometric phase is defined for closed paths only")
    verts = path.vertices[:-1]
    if len(verts) < 3:
        raise ValueError("need at least 3 path vertices")
    states = [schwinger_state(n, m, a, p) for p, a in verts]
    product = 1.0 + 0j
    for k in range(len(states)):
        z = inner_product(states[k], states[(k + 1) % len(states)])
        if abs(z) < MIN_OVERLAP:
            raise ResolutionError(
                f"overlap magnitude {abs(z):.2e} at segment {k}: path too coarse"
            )
        product *= z
    return -cmath.phase(product)
