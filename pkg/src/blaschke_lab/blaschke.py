"""Finite Blaschke products: evaluation, critical points, level sets.

A finite Blaschke product is stored by its unimodular prefactor and its zero
multiset, never by expanded rational coefficients (the factored form keeps
conditioning under control).  Critical points are the disk roots of the
derivative numerator: repeated zeros contribute themselves with multiplicity
one less, and the remaining simple factor is handled by Aberth-Ehrlich
simultaneous iteration.  The open level set { |B| < r } has exactly
``degree - k`` components when it contains ``k`` critical points, which turns
component counting into a critical-value comparison; a flood-fill counter over
a sampling grid provides the independent route.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.ndimage
from numpy.polynomial import polynomial as npp

from .config import TOL
from .hypgeo import PHDisk, ph_to_euclid, pseudo_dist

TWO_SQRT2_OVER_3 = 2 * math.sqrt(2) / 3


class PoleProximityError(ValueError):
    """Evaluation point too close to a pole 1/conj(a_j); carries the zero index."""

    def __init__(self, zero_index):
        self.zero_index = zero_index
        super().__init__(f"evaluation point within pole exclusion of zero #{zero_index}")


class RootFindingError(RuntimeError):
    """Aberth iteration failed; carries sweep count and last step size."""

    def __init__(self, message, sweeps=None, last_step=None):
        self.sweeps = sweeps
        self.last_step = last_step
        super().__init__(message)


@dataclass(frozen=True)
class BlaschkeProduct:
    """lam * prod (z - a_j)/(1 - conj(a_j) z) with |lam| = 1 and all |a_j| < 1."""

    zeros: tuple
    lam: complex = 1.0 + 0j

    def __post_init__(self):
        zeros = tuple(complex(a) for a in self.zeros)
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "lam", complex(self.lam))
        if len(zeros) < 1:
            raise ValueError("a Blaschke product needs at least one zero")
        if abs(abs(self.lam) - 1) > TOL.unimodular:
            raise ValueError(f"prefactor must be unimodular, got |lam| = {abs(self.lam)}")
        for j, a in enumerate(zeros):
            if not abs(a) < 1 - TOL.zero_margin:
                raise ValueError(f"zero #{j} too close to the unit circle: |a| = {abs(a)}")

    @property
    def degree(self) -> int:
        return len(self.zeros)

    @property
    def monic(self) -> bool:
        return abs(self.lam - 1) <= TOL.unimodular

    def grouped_zeros(self, tol: float = 1e-12):
        """Distinct zeros with multiplicities, clustered within ``tol``."""
        groups: list[list[complex]] = []
        for a in self.zeros:
            for g in groups:
                if abs(a - g[0]) <= tol:
                    g.append(a)
                    break
            else:
                groups.append([a])
        return [(sum(g) / len(g), len(g)) for g in groups]

    def _check_poles(self, z: np.ndarray):
        for j, a in enumerate(self.zeros):
            if a == 0:
                continue
            if np.min(np.abs(z - 1 / a.conjugate())) <= TOL.pole_exclusion:
                raise PoleProximityError(j)

    def __call__(self, z):
        """Evaluate the product factor by factor; accepts scalars or arrays."""
        zarr = np.asarray(z, dtype=complex)
        self._check_poles(zarr)
        out = np.full(zarr.shape, self.lam, dtype=complex)
        for a in self.zeros:
            out *= (zarr - a) / (1 - a.conjugate() * zarr)
        return complex(out) if np.isscalar(z) or zarr.shape == () else out

    def derivative(self, z):
        """B'(z) by the product rule over distinct zeros (pole-free inside the disk)."""
        zarr = np.asarray(z, dtype=complex)
        self._check_poles(zarr)
        groups = self.grouped_zeros()
        phis = [(zarr - b) / (1 - b.conjugate() * zarr) for b, _ in groups]
        dphis = [(1 - abs(b) ** 2) / (1 - b.conjugate() * zarr) ** 2 for b, _ in groups]
        total = np.zeros(zarr.shape, dtype=complex)
        for k, (b, m) in enumerate(groups):
            term = m * phis[k] ** (m - 1) * dphis[k]
            for l, (_, ml) in enumerate(groups):
                if l != k:
                    term = term * phis[l] ** ml
            total = total + term
        total *= self.lam
        return complex(total) if np.isscalar(z) or zarr.shape == () else total


def random_blaschke(rng, degree: int, rho_max: float = 0.98, monic: bool = True) -> BlaschkeProduct:
    """Random product with zeros uniform in the disk of radius ``rho_max``."""
    radii = rho_max * np.sqrt(rng.uniform(size=degree))
    angles = rng.uniform(0, 2 * math.pi, size=degree)
    zeros = tuple(r * cmath.exp(1j * t) for r, t in zip(radii, angles))
    lam = 1.0 + 0j if monic else cmath.exp(2j * math.pi * rng.uniform())
    return BlaschkeProduct(zeros, lam)


def aberth_roots(coeffs, max_sweeps: int = 200, init_radius: float = 0.8) -> np.ndarray:
    """All complex roots of a polynomial (ascending coefficients) by Aberth-Ehrlich.

    Simultaneous iteration avoids deflation error at the degrees used here
    (<= ~30).  Convergence is declared when every correction drops below
    ``TOL.root_step`` relative to the root magnitude.
    """
    c = np.asarray(coeffs, dtype=complex)
    scale = np.abs(c).max()
    if scale == 0:
        raise ValueError("zero polynomial has no well-defined roots")
    while len(c) > 1 and abs(c[-1]) <= 1e-14 * scale:
        c = c[:-1]
    d = len(c) - 1
    if d == 0:
        return np.zeros(0, dtype=complex)
    dc = npp.polyder(c)
    angles = 2 * math.pi * np.arange(d) / d + 0.4
    z = init_radius * np.exp(1j * angles)
    last_step = math.inf
    for _ in range(max_sweeps):
        p = npp.polyval(z, c)
        dp = npp.polyval(z, dc)
        newton = np.where(dp != 0, p / np.where(dp == 0, 1, dp), 0.1)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        repulsion = np.sum(1.0 / diff, axis=1)
        denom = 1 - newton * repulsion
        step = newton / np.where(np.abs(denom) < 1e-300, 1e-300, denom)
        z = z - step
        last_step = float(np.max(np.abs(step) / np.maximum(1.0, np.abs(z))))
        if last_step < TOL.root_step:
            return z
    raise RootFindingError(
        f"Aberth iteration did not converge in {max_sweeps} sweeps (last step {last_step:.3e})",
        sweeps=max_sweeps,
        last_step=last_step,
    )


def _reduced_derivative_numerator(groups) -> np.ndarray:
    """Ascending coefficients of sum_k m_k (1-|b_k|^2) prod_{l != k} (z-b_l)(1-conj(b_l) z).

    This is the derivative numerator of the product after the known factors
    (z - b_k)^{m_k - 1} (1 - conj(b_k) z)^{m_k - 1} from repeated zeros are
    removed; its roots pair z <-> 1/conj(z).
    """
    total = np.zeros(1, dtype=complex)
    for k, (bk, mk) in enumerate(groups):
        term = np.array([mk * (1 - abs(bk) ** 2)], dtype=complex)
        for l, (bl, _) in enumerate(groups):
            if l == k:
                continue
            term = npp.polymul(term, np.array([-bl, 1], dtype=complex))
            term = npp.polymul(term, np.array([1, -bl.conjugate()], dtype=complex))
        total = npp.polyadd(total, term)
    return total


def critical_points(b: BlaschkeProduct) -> list[complex]:
    """The n-1 critical points of ``b`` in the open unit disk, with multiplicity.

    Each repeated zero of multiplicity m is itself a critical point of
    multiplicity m-1; the remaining ones come from the reduced derivative
    numerator.  The z <-> 1/conj(z) pairing of that polynomial's roots is
    checked as a consistency guard, and every returned point is verified to
    satisfy |B'| <= TOL.deriv_residual.
    """
    if b.degree < 2:
        raise ValueError("critical points need degree >= 2")
    groups = b.grouped_zeros()
    points: list[complex] = []
    for bk, mk in groups:
        points.extend([bk] * (mk - 1))
    if len(groups) >= 2:
        roots = aberth_roots(_reduced_derivative_numerator(groups))
        inside = [complex(z) for z in roots if abs(z) < 1 - TOL.root_inside]
        expected = len(groups) - 1
        if len(inside) != expected:
            raise RootFindingError(
                f"expected {expected} interior roots of the derivative numerator, found {len(inside)}"
            )
        for z in inside:
            if abs(z) < 1e-8:  # reciprocal partner absorbed at infinity
                continue
            partner = 1 / z.conjugate()
            if min(abs(w - partner) for w in roots) > TOL.root_pairing:
                warnings.warn(
                    f"critical-point pairing check failed at {z}: no partner near {partner}",
                    RuntimeWarning,
                )
        points.extend(inside)
    bad = [z for z in points if abs(b.derivative(z)) > TOL.deriv_residual]
    if bad:
        raise RootFindingError(f"critical point residual |B'| too large at {bad[0]}")
    return points


class LevelSetMethod(enum.Enum):
    EXACT_COUNT = "exact_count"
    GRID_LABELED = "grid_labeled"


@dataclass(frozen=True)
class LevelSetReport:
    r: float
    component_count: int
    critical_inside: tuple
    method: LevelSetMethod
    near_critical: bool = False


def level_component_count(b: BlaschkeProduct, r: float) -> LevelSetReport:
    """Number of components of { |B| < r }: degree minus enclosed critical points.

    When ``r`` sits within ``TOL.critical_gap`` of a critical value the count
    is still returned (the limiting argument keeps it valid) with the
    ``near_critical`` flag set.
    """
    if not 0 < r < 1:
        raise ValueError(f"level must lie in (0, 1): {r}")
    values = [(z, abs(b(z))) for z in critical_points(b)]
    inside = tuple((z, v) for z, v in values if v < r)
    near = any(abs(v - r) <= TOL.critical_gap for _, v in values)
    return LevelSetReport(
        r=r,
        component_count=b.degree - len(inside),
        critical_inside=inside,
        method=LevelSetMethod.EXACT_COUNT,
        near_critical=near,
    )


def level_set_box(b: BlaschkeProduct, r: float, pad: float = 0.02):
    """Axis-aligned box containing { |B| < r }.

    |B(z)| < r forces some factor below r^(1/n), so the level set sits inside
    the union of the pseudohyperbolic disks D(a_j, r^(1/n)).
    """
    s = r ** (1.0 / b.degree)
    los, his = [], []
    for a in b.zeros:
        e = ph_to_euclid(PHDisk(a, s))
        los.append((e.c.real - e.R, e.c.imag - e.R))
        his.append((e.c.real + e.R, e.c.imag + e.R))
    lo = np.min(los, axis=0) - pad
    hi = np.max(his, axis=0) + pad
    return float(lo[0]), float(hi[0]), float(lo[1]), float(hi[1])


def level_set_grid(b: BlaschkeProduct, r: float, resolution: int = 512):
    """Boolean mask of { |B| < r } over the bounding box, plus the axes."""
    x0, x1, y0, y1 = level_set_box(b, r)
    xs = np.linspace(x0, x1, resolution)
    ys = np.linspace(y0, y1, resolution)
    zz = xs[None, :] + 1j * ys[:, None]
    return xs, ys, np.abs(b(zz)) < r


def grid_component_count(b: BlaschkeProduct, r: float, resolution: int = 512) -> LevelSetReport:
    """Component count of { |B| < r } by 4-connected flood fill on a grid."""
    _, _, mask = level_set_grid(b, r, resolution)
    _, count = scipy.ndimage.label(mask)
    return LevelSetReport(
        r=r,
        component_count=int(count),
        critical_inside=(),
        method=LevelSetMethod.GRID_LABELED,
    )


def level_contains(b: BlaschkeProduct, c: BlaschkeProduct, r: float, resolution: int = 256):
    """Probe { |B| < r } subset of { |C| < r } on a grid over the level-set box.

    Returns ``(True, None)`` when no grid counterexample exists at the sampled
    resolution, else ``(False, witness)`` with |B(witness)| < r <= |C(witness)|.
    """
    if resolution < 256:
        raise ValueError("containment probe needs resolution >= 256 per axis")
    x0, x1, y0, y1 = level_set_box(b, r)
    xs = np.linspace(x0, x1, resolution)
    ys = np.linspace(y0, y1, resolution)
    zz = xs[None, :] + 1j * ys[:, None]
    bad = (np.abs(b(zz)) < r) & (np.abs(c(zz)) >= r)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        return False, complex(zz[i, j])
    return True, None


def degree2_split_radius(b: BlaschkeProduct):
    """Critical value and tangency threshold of a degree-2 product with distinct zeros.

    After moving the zeros to {0, t} by a disk automorphism (t their
    pseudohyperbolic distance), the interior critical point sits at
    s = (1 - sqrt(1 - t^2))/t and |B| there equals s^2: levels below split the
    level set into two components, levels above keep it connected.

    Returns ``(critical_value, tangency_s)``.
    """
    if b.degree != 2:
        raise ValueError("split radius is defined for degree-2 products")
    a1, a2 = b.zeros
    t = pseudo_dist(a1, a2)
    if t <= 1e-9:
        raise ValueError("zeros coincide; the unicritical case has no split radius")
    s = (1 - math.sqrt(1 - t * t)) / t
    return s * s, s


def hoffman_bound(delta: float):
    """Guaranteed max of |B| on the circle |z| = x for B(0)=0, |B'(0)| = delta.

    Returns ``(bound, radius)`` with radius x = (1 - sqrt(1 - delta^2))/delta
    and bound x^2; the bound reaches 1/2 exactly at delta = 2*sqrt(2)/3.
    """
    if not 0 < delta <= 1:
        raise ValueError(f"delta must lie in (0, 1]: {delta}")
    x = (1 - math.sqrt(max(0.0, 1 - delta * delta))) / delta
    return x * x, x


def zero_product_bound(b: BlaschkeProduct) -> bool:
    """True when prod |a_j| >= 2*sqrt(2)/3, so z*B(z) meets the Hoffman hypothesis."""
    prod = 1.0
    for a in b.zeros:
        prod *= abs(a)
    return prod >= TWO_SQRT2_OVER_3
