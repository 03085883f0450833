"""Central tolerance record.

Every numerical gate in the package reads its default from the single
``Tolerances`` instance ``TOL`` below.  Setting the environment variable
``BLASCHKE_LAB_TOL`` before import rescales the whole record: the value is
interpreted as the base tolerance (default ``1e-10``) and every field is
multiplied by ``value / 1e-10``.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

_BASE = 1e-10


@dataclass(frozen=True)
class Tolerances:
    hermitian_check: float = 1e-12      # max |H - H*| admitted as Hermitian
    eig_residual: float = 1e-10         # ||Hv - lambda v|| / max(1, ||H||)
    solve_residual: float = 1e-10       # ||MX - B|| / ||B||, max-entry norm
    pivot_ratio: float = 1e-13          # pivot magnitude vs max-entry norm
    unimodular: float = 1e-12           # | |lambda| - 1 | for prefactors
    zero_margin: float = 1e-12          # zeros must satisfy |a| < 1 - margin
    pole_exclusion: float = 1e-13       # evaluation distance to 1/conj(a)
    tangency: float = 1e-10             # squared-distance disk comparisons
    consistency: float = 1e-10          # cross-formula agreement checks
    root_step: float = 1e-12            # Aberth stopping step size
    root_inside: float = 1e-9           # |root| < 1 - root_inside counts as inside
    root_pairing: float = 1e-7          # z <-> 1/conj(z) partner matching
    deriv_residual: float = 1e-8        # |B'(zeta)| at reported critical points
    critical_gap: float = 1e-9          # level r too close to a critical value
    kit_residual: float = 1e-9          # g(B_t) = A_t and similarity residuals
    lsc_slack: float = 1e-7             # verdict passes when max >= 1/2 - slack
    table_convergence: float = 1e-7     # max-modulus change that forces doubling
    refine_theta: float = 1e-10         # golden-section window on theta
    inscribed_radius: float = 1e-6      # bisection resolution for inscribed disks

    def scaled(self, factor: float) -> "Tolerances":
        """Return a copy with every field multiplied by ``factor``."""
        return Tolerances(
            **{f.name: getattr(self, f.name) * factor for f in dataclasses.fields(self)}
        )

    @classmethod
    def from_env(cls) -> "Tolerances":
        raw = os.environ.get("BLASCHKE_LAB_TOL")
        if raw is None:
            return cls()
        return cls().scaled(float(raw) / _BASE)


TOL = Tolerances.from_env()
