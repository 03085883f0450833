"""Pseudohyperbolic geometry of the unit disk.

Disks come in two coordinate systems: pseudohyperbolic (center ``z0`` in the
open disk, radius ``r`` in (0,1)) and Euclidean (center ``c``, radius ``R``).
Every pseudohyperbolic disk is a Euclidean disk strictly inside the unit disk
and vice versa; the conversions below are closed-form and exact inverses of
each other.  The Fuss and Chapple-Euler constructions give the inscribed
Poncelet disks used by the level-set arguments.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .config import TOL


class DiskRelation(enum.Enum):
    DISJOINT = "disjoint"
    TANGENT = "tangent"
    TWO_POINT_INTERSECTION = "two_point_intersection"
    NESTED = "nested"


@dataclass(frozen=True)
class PHDisk:
    """Pseudohyperbolic disk: |(z - z0)/(1 - conj(z0) z)| < r."""

    z0: complex
    r: float

    def __post_init__(self):
        if not abs(self.z0) < 1:
            raise ValueError(f"pseudohyperbolic center must lie in the open disk: {self.z0}")
        if not 0 < self.r < 1:
            raise ValueError(f"pseudohyperbolic radius must lie in (0, 1): {self.r}")


@dataclass(frozen=True)
class EDisk:
    """Euclidean disk |z - c| < R."""

    c: complex
    R: float

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError(f"Euclidean radius must be positive: {self.R}")

    @property
    def inside_unit_disk(self) -> bool:
        return abs(self.c) + self.R < 1


def pseudo_dist(z: complex, w: complex) -> float:
    """Pseudohyperbolic distance |z - w| / |1 - conj(w) z|; both points in the open disk."""
    if not abs(z) < 1 or not abs(w) < 1:
        raise ValueError(f"pseudo_dist needs points inside the unit disk, got |z|={abs(z)}, |w|={abs(w)}")
    return abs(z - w) / abs(1 - w.conjugate() * z)


def ph_to_euclid(d: PHDisk) -> EDisk:
    """Euclidean coordinates of a pseudohyperbolic disk."""
    a2 = abs(d.z0) ** 2
    den = 1 - d.r**2 * a2
    return EDisk((1 - d.r**2) * d.z0 / den, d.r * (1 - a2) / den)


def _unit_interval_root(s: float) -> float:
    """Root in [0, 1) of x + 1/x = s, for s >= 2.

    The two roots multiply to 1; the stable small root is 2/(s + sqrt(s^2-4)),
    which avoids the cancellation in (s - sqrt(s^2-4))/2 for large s.
    """
    if s < 2:
        raise ValueError(f"x + 1/x = {s} has no real root")
    return 2.0 / (s + math.sqrt(s * s - 4.0))


def euclid_to_ph(d: EDisk) -> PHDisk:
    """Pseudohyperbolic coordinates of a Euclidean disk strictly inside the unit disk."""
    if not d.inside_unit_disk:
        raise ValueError(f"disk must satisfy |c| + R < 1, got |c|={abs(d.c)}, R={d.R}")
    if d.c == 0:
        return PHDisk(0j, d.R)
    ac, R = abs(d.c), d.R
    mod_z0 = _unit_interval_root((ac * ac - R * R + 1) / ac)
    r = _unit_interval_root((R * R - ac * ac + 1) / R)
    z0 = mod_z0 * d.c / ac
    # Garnett's consistency identities guard the two quadratic solves.
    if abs(d.c - z0 * (1 - r * R)) > TOL.consistency or abs(R - r * (1 - ac * mod_z0)) > TOL.consistency:
        raise ArithmeticError(f"disk conversion failed consistency check for {d}")
    return PHDisk(z0, r)


def fuss_poncelet4(c: complex) -> tuple[EDisk, PHDisk]:
    """The unique Poncelet-4 inscribed disk centered at ``c``, in both coordinate systems.

    Fuss' formula gives the Euclidean radius; the pseudohyperbolic radius
    sqrt(1 + |c|^2) / sqrt(2) is always at least 1/sqrt(2).
    """
    if not abs(c) < 1:
        raise ValueError(f"center must lie in the open disk: {c}")
    a2 = abs(c) ** 2
    edisk = EDisk(c, (1 - a2) / math.sqrt(2 * (1 + a2)))
    phdisk = PHDisk(2 * c / (1 + a2), math.sqrt(1 + a2) / math.sqrt(2))
    return edisk, phdisk


def chapple_poncelet3(c: complex) -> tuple[EDisk, float]:
    """The Poncelet-3 (Chapple-Euler) inscribed circle centered at ``c``.

    Returns the Euclidean disk |z - c| = (1 - |c|^2)/2 and its pseudohyperbolic
    radius (5 - |c|^2 - sqrt(9 - 10|c|^2 + |c|^4))/4, cross-checked against the
    generic conversion.
    """
    if not abs(c) < 1:
        raise ValueError(f"center must lie in the open disk: {c}")
    a2 = abs(c) ** 2
    edisk = EDisk(c, (1 - a2) / 2)
    r = (5 - a2 - math.sqrt(9 - 10 * a2 + a2 * a2)) / 4
    if abs(r - euclid_to_ph(edisk).r) > TOL.consistency:
        raise ArithmeticError(f"Chapple radius disagrees with disk conversion at c={c}")
    return edisk, r


def disks_relation(d1: EDisk, d2: EDisk, tol: float | None = None) -> DiskRelation:
    """Classify two Euclidean disks by comparing |c1-c2|^2 with (R1 +- R2)^2.

    Either tangency (internal or external) within ``tol`` of the defining
    equality reports TANGENT.
    """
    tol = TOL.tangency if tol is None else tol
    gap2 = abs(d1.c - d2.c) ** 2
    outer2 = (d1.R + d2.R) ** 2
    inner2 = (d1.R - d2.R) ** 2
    if abs(gap2 - outer2) <= tol or abs(gap2 - inner2) <= tol:
        return DiskRelation.TANGENT
    if gap2 > outer2:
        return DiskRelation.DISJOINT
    if gap2 < inner2:
        return DiskRelation.NESTED
    return DiskRelation.TWO_POINT_INTERSECTION
