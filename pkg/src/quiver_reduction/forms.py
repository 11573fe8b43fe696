"""Log 2-forms ``sum w_ij du_i/u_i ^ du_j/u_j`` and their pullbacks.

In log coordinates ``v = log u`` such a form has constant coefficients, so
it is stored as its skew-symmetric rational coefficient matrix ``W``.  A
map ``F`` pulls it back to the form with matrix ``D^T W D`` where ``D`` is
the log-Jacobian ``d log F_a / d log u_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import dual, exact
from .exceptions import NonPositivePoint, NotSkewSymmetric, ZeroScale
from .quiver import (
    ExchangeMatrix,
    IterationMap,
    MutationMap,
    check_point,
    is_period,
    mutate_matrix,
)

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class LogTwoForm:
    w: exact.Matrix
    provenance: str = "standard-from-B"

    def __post_init__(self):
        w = exact.to_fraction_matrix(self.w)
        n = len(w)
        for i in range(n):
            if len(w[i]) != n:
                raise NotSkewSymmetric("coefficient matrix must be square")
            for j in range(i, n):
                if w[i][j] != -w[j][i]:
                    raise NotSkewSymmetric(f"w[{i + 1}][{j + 1}] != -w[{j + 1}][{i + 1}]")
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return len(self.w)

    def to_numpy(self) -> np.ndarray:
        return exact.as_float(self.w).reshape(self.n, self.n)

    def __eq__(self, other):
        if not isinstance(other, LogTwoForm):
            return NotImplemented
        return self.w == other.w

    def __hash__(self):
        return hash(self.w)


def standard_form(B: ExchangeMatrix) -> LogTwoForm:
    """The standard log presymplectic form, whose coefficient matrix is ``B``."""
    return LogTwoForm(exact.to_fraction_matrix(B.entries), "standard-from-B")


def scale_form(W: LogTwoForm, lam) -> LogTwoForm:
    lam = Fraction(lam)
    if lam == 0:
        raise ZeroScale("scale factor must be nonzero")
    return LogTwoForm(exact.scale(W.w, lam), "scaled")


def rank_and_kernel(W: LogTwoForm) -> tuple[int, list[tuple[Fraction, ...]]]:
    """Exact rank (always even) and a rational basis of the kernel."""
    r = exact.rank(W.w)
    if r % 2:
        raise ArithmeticError(f"skew-symmetric matrix with odd rank {r}")
    return r, exact.nullspace(W.w)


def pullback_by_sigma(W: LogTwoForm, m: int = 1) -> LogTwoForm:
    """Pullback along the shift ``sigma^m``: coefficient matrix ``sigma^-m W sigma^m``."""
    n = W.n
    if n == 0:
        return W
    w = W.w
    return LogTwoForm(
        tuple(tuple(w[(i - m) % n][(j - m) % n] for j in range(n)) for i in range(n)),
        W.provenance,
    )


def pullback_by_mutation(B: ExchangeMatrix, k: int) -> LogTwoForm:
    """Pullback of the standard form of ``B`` along ``mu_k``; its matrix is ``mu_k(B)``."""
    return standard_form(mutate_matrix(B, k))


def log_jacobian(fmap, u) -> np.ndarray:
    """``D[a, i] = d log F_a / d log u_i`` by forward-mode differentiation.

    ``fmap`` is either an object with a ``log_eval`` method (log coordinates
    in and out, as the maps in :mod:`quiver_reduction.quiver` provide) or a
    plain callable acting on positive coordinates.
    """
    u = check_point(u)
    if u.ndim != 1:
        raise NonPositivePoint("log_jacobian takes a single point")
    seeds = dual.Dual.seed(np.log(u))
    if hasattr(fmap, "log_eval"):
        out = fmap.log_eval(seeds)
    else:
        vals = fmap([dual.exp(s) for s in seeds])
        out = []
        for x in vals:
            if not isinstance(x, dual.Dual):
                x = dual.Dual(x, np.zeros(len(u)))
            if not x.value > 0:
                raise NonPositivePoint("map left the positive orthant")
            out.append(dual.log(x))
    rows = []
    for x in out:
        if isinstance(x, dual.Dual):
            rows.append(x.tangent)
        else:
            rows.append(np.zeros(len(u)))
    return np.array(rows).reshape(len(out), len(u))


def congruence_residual(D: np.ndarray, before, after) -> float:
    """``max |D^T before D - after|``."""
    b = np.asarray(exact.as_float(before) if not isinstance(before, np.ndarray) else before)
    a = np.asarray(exact.as_float(after) if not isinstance(after, np.ndarray) else after)
    if D.size == 0:
        return 0.0
    return float(np.max(np.abs(D.T @ b @ D - a), initial=0.0))


def sample_points(n: int, count: int, seed: int = 42) -> np.ndarray:
    """``count`` points with coordinates log-uniform in ``[1/e, e]``."""
    rng = np.random.default_rng(seed)
    return np.exp(rng.uniform(-1.0, 1.0, size=(count, n)))


@dataclass
class FormInvarianceReport:
    period: int
    numeric_passed: bool
    exact_passed: bool
    max_residual: float
    worst_point: np.ndarray | None
    n_points: int
    tol: float
    residuals: list[float] = field(default_factory=list, repr=False)

    @property
    def agree(self) -> bool:
        return self.numeric_passed == self.exact_passed

    @property
    def passed(self) -> bool:
        return self.numeric_passed and self.exact_passed


def check_form_invariance(
    B: ExchangeMatrix, m: int, points: Sequence, tol: float = DEFAULT_TOL
) -> FormInvarianceReport:
    """Compare ``phi^* omega = omega`` numerically against the exact period test.

    ``phi`` is built for the claimed ``m`` whether or not ``B`` really is
    ``m``-periodic, so a wrong claim shows up in both verdicts.
    """
    points = check_point(np.atleast_2d(points), B.n)
    phi = IterationMap(B, m, check=False)
    W = B.to_numpy()
    residuals = []
    for u in points:
        D = log_jacobian(phi, u)
        residuals.append(congruence_residual(D, W, W))
    worst = int(np.argmax(residuals)) if residuals else None
    max_res = residuals[worst] if residuals else 0.0
    return FormInvarianceReport(
        period=m,
        numeric_passed=max_res < tol,
        exact_passed=is_period(B, m),
        max_residual=max_res,
        worst_point=points[worst] if worst is not None else None,
        n_points=len(points),
        tol=tol,
        residuals=residuals,
    )


def check_mutation_congruence(B: ExchangeMatrix, k: int, u) -> float:
    """Residual ``max |D^T B D - mu_k(B)|`` with ``D`` the log-Jacobian of ``mu_k``."""
    D = log_jacobian(MutationMap(B, k), u)
    return congruence_residual(D, B.to_numpy(), mutate_matrix(B, k).to_numpy())


__all__ = [
    "LogTwoForm",
    "standard_form",
    "scale_form",
    "rank_and_kernel",
    "pullback_by_sigma",
    "pullback_by_mutation",
    "log_jacobian",
    "check_form_invariance",
    "check_mutation_congruence",
    "sample_points",
    "FormInvarianceReport",
]

