"""Orbits of cluster iteration maps in arbitrary precision.

Along an orbit ``log u`` grows roughly geometrically, so after a few dozen
steps double precision no longer resolves the reduced coordinates, which
come from large cancelling combinations of the ``log u_i``.  Orbits are
therefore carried in mpmath, in log coordinates, with the working
precision raised as the magnitudes grow.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
import numpy as np

from .quiver import ExchangeMatrix, IterationMap, check_point
from .reduction import DarbouxBasis, ReducedMapEvaluator, Section, _rows_apply

GUARD_DIGITS = 25


def _digits_for(values) -> int:
    biggest = max((abs(x) for x in values), default=mpmath.mpf(1))
    return GUARD_DIGITS + 17 + int(mpmath.log10(max(biggest, 1)))


def mp_relative_error(a_log, b_log) -> float:
    return float(abs(mpmath.expm1(a_log - b_log)))


@dataclass
class Orbit:
    """``log_points[n]`` is ``log u^(n)``; projections and residuals are optional."""

    log_points: list[list]
    projected_log: list[list] | None = None
    residuals: list[float] = field(default_factory=list)

    @property
    def steps(self) -> int:
        return len(self.log_points) - 1

    def points(self, digits: int = 12) -> list[list[str]]:
        return [[mpmath.nstr(mpmath.exp(v), digits) for v in row] for row in self.log_points]

    def projected(self, digits: int = 12) -> list[list[str]] | None:
        if self.projected_log is None:
            return None
        return [[mpmath.nstr(mpmath.exp(v), digits) for v in row] for row in self.projected_log]

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)


def orbit(
    B: ExchangeMatrix,
    m: int,
    u0,
    steps: int,
    G: DarbouxBasis | None = None,
    S: Section | None = None,
) -> Orbit:
    """Iterate ``phi`` ``steps`` times from ``u0``.

    With a basis ``G`` (and section ``S``) the orbit is also projected and,
    for each step, the relative error between ``pi(u^(n+1))`` and
    ``phi_hat(pi(u^(n)))`` is recorded.
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    phi = IterationMap(B, m)
    u0 = check_point(u0, B.n)
    E = ReducedMapEvaluator(B, m, G, S) if G is not None and S is not None and G.g else None
    with mpmath.workdps(30):
        current = [mpmath.log(mpmath.mpf(float(x))) for x in u0]
    rows = [current]
    proj = []
    residuals = []
    for n in range(steps + 1):
        with mpmath.workdps(_digits_for(current)):
            if E is not None:
                proj.append(_rows_apply(G.g, current))
            if n == steps:
                break
            nxt = phi.log_eval(current)
            if E is not None:
                predicted = E.log_eval(proj[-1])
                actual = _rows_apply(G.g, nxt)
                residuals.append(
                    max((mp_relative_error(a, b) for a, b in zip(actual, predicted)), default=0.0)
                )
        rows.append(nxt)
        current = nxt
    return Orbit(rows, proj if E is not None else None, residuals)


def log_orbit_array(o: Orbit) -> np.ndarray:
    """Log coordinates as floats (exact enough for plotting, not for reduction)."""
    return np.array([[float(v) for v in row] for row in o.log_points])
