"""Darboux bases for constant log forms and the reduced iteration map.

A form with coefficient matrix ``W`` of rank ``2k`` is written as
``dg_1 ^ dg_2 + ... + dg_{2k-1} ^ dg_{2k}`` with linear functionals ``g_i``
of ``v = log u``.  Stacking the ``g_i`` as rows of ``G`` this reads
``G^T J G = W`` with ``J`` the canonical block matrix.  The monomial map
``pi(u) = exp(G log u)`` then carries the iteration map ``phi`` of a
periodic quiver down to a map ``phi_hat`` on ``2k`` coordinates which
preserves ``sum dy_{2i-1}/y_{2i-1} ^ dy_{2i}/y_{2i}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import dual, exact
from . import expression as ex
from .exceptions import (
    FullRank,
    NotPeriodic,
    NotSymplecticChange,
    RankDeficient,
    ResidualRankError,
    ShapeMismatch,
)
from .forms import LogTwoForm, log_jacobian, rank_and_kernel, standard_form
from .quiver import ExchangeMatrix, IterationMap, check_point, is_period, mutation_sequence

DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class DarbouxBasis:
    """Rows ``g_1, ..., g_{2k}`` of linear functionals in ``v = log u``.

    Rows are paired ``(g_1, g_2), (g_3, g_4), ...``.  Read as exponent
    vectors they define the reduced variables ``f_i = exp(g_i)``.
    """

    g: exact.Matrix
    n: int
    pivots: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        g = exact.to_fraction_matrix(self.g)
        if len(g) % 2:
            raise ShapeMismatch("a Darboux basis needs an even number of rows")
        if any(len(row) != self.n for row in g):
            raise ShapeMismatch(f"every row must have {self.n} entries")
        object.__setattr__(self, "g", g)

    @property
    def half_rank(self) -> int:
        return len(self.g) // 2

    @property
    def is_empty(self) -> bool:
        return not self.g

    def to_numpy(self) -> np.ndarray:
        return exact.as_float(self.g).reshape(len(self.g), self.n)

    def monomials(self, names: Sequence[str] | None = None) -> list[str]:
        names = names or [f"u{j + 1}" for j in range(self.n)]
        return [ex.format_monomial(row, names) for row in self.g]

    def linear_forms(self, names: Sequence[str] | None = None) -> list[str]:
        names = names or [f"v{j + 1}" for j in range(self.n)]
        out = []
        for row in self.g:
            terms = []
            for c, name in zip(row, names):
                if c == 0:
                    continue
                mag = abs(c)
                body = name if mag == 1 else f"{mag}*{name}"
                sign = "-" if c < 0 else "+"
                terms.append(f"{sign} {body}")
            if not terms:
                out.append("0")
                continue
            text = " ".join(terms)
            out.append(text[2:] if text[0] == "+" else "-" + text[2:])
        return out


def cartan_reduce(W: LogTwoForm) -> DarbouxBasis:
    """Constructive Darboux decomposition of a constant log form.

    Repeatedly picks the lexicographically first pair ``(i, j)``, ``i < j``,
    with nonzero residual entry ``r_ij``, sets ``a = r_i / r_ij`` and
    ``b = r_j``, and subtracts ``a b^T - b a^T``; this zeroes rows ``i`` and
    ``j`` of the residual and lowers its rank by two.  A zero form gives an
    empty basis.
    """
    n = W.n
    res = [list(row) for row in W.w]
    rows: list[tuple[Fraction, ...]] = []
    pivots = []
    while True:
        pair = next(
            ((i, j) for i in range(n) for j in range(i + 1, n) if res[i][j] != 0),
            None,
        )
        if pair is None:
            break
        i, j = pair
        a = [x / res[i][j] for x in res[i]]
        b = list(res[j])
        for p in range(n):
            if a[p] == 0 and b[p] == 0:
                continue
            for q in range(n):
                res[p][q] -= a[p] * b[q] - b[p] * a[q]
        if res[i][j] != 0 or res[j][i] != 0:
            raise ResidualRankError("pivot entry survived the rank-2 update")
        rows += [tuple(a), tuple(b)]
        pivots.append((i + 1, j + 1))
    basis = DarbouxBasis(tuple(rows), n, tuple(pivots))
    if not verify_darboux(basis, W):
        raise ResidualRankError("Darboux identity failed after reduction")
    return basis


def verify_darboux(G: DarbouxBasis, W: LogTwoForm) -> bool:
    """Exact test of ``G^T J G == W``."""
    if G.n != W.n:
        raise ShapeMismatch(f"basis acts on {G.n} coordinates, form on {W.n}")
    if G.is_empty:
        return exact.is_zero(W.w)
    J = exact.canonical_symplectic(G.half_rank)
    return exact.matmul(exact.matmul(exact.transpose(G.g), J), G.g) == W.w


def _rows_apply(matrix, v):
    return [dual.lincomb(row, v) for row in matrix]


def projection(G: DarbouxBasis, u) -> np.ndarray:
    """``pi(u) = exp(G log u)``; a 2-D ``u`` is treated row-wise."""
    u = check_point(u, G.n)
    return np.exp(np.log(u) @ G.to_numpy().T)


@dataclass(frozen=True)
class Section:
    """Right inverse ``S`` of ``G`` (``G S = I``), used as ``lift(y) = exp(S log y)``."""

    s: exact.Matrix
    columns: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "s", exact.to_fraction_matrix(self.s))

    def to_numpy(self) -> np.ndarray:
        rows = len(self.s)
        cols = len(self.s[0]) if rows else 0
        return exact.as_float(self.s).reshape(rows, cols)

    def lift(self, y) -> np.ndarray:
        y = check_point(y)
        return np.exp(np.log(y) @ self.to_numpy().T)


def build_section(G: DarbouxBasis, columns: Sequence[int] | None = None) -> Section:
    """Monomial section supported on an invertible column subset of ``G``.

    By default the leftmost independent columns are used.  ``columns``
    (0-based) selects another subset, which is handy for checking that the
    reduced map does not depend on the choice.
    """
    k2 = len(G.g)
    if columns is None:
        columns = exact.pivot_columns(G.g)
    columns = tuple(columns)
    if len(columns) != k2:
        raise RankDeficient(f"basis has rank {len(columns)} < {k2}")
    minor = tuple(tuple(row[c] for c in columns) for row in G.g)
    try:
        inv = exact.inverse(minor)
    except ZeroDivisionError:
        raise RankDeficient(f"columns {columns} do not give an invertible minor") from None
    s = [[Fraction(0)] * k2 for _ in range(G.n)]
    for r, c in enumerate(columns):
        s[c] = list(inv[r])
    section = Section(tuple(tuple(row) for row in s), columns)
    if exact.matmul(G.g, section.s) != exact.identity(k2):
        raise RankDeficient("section construction failed")
    return section


@dataclass(frozen=True)
class SymplecticChange:
    t: exact.Matrix

    def __post_init__(self):
        t = exact.to_fraction_matrix(self.t)
        n = len(t)
        if n % 2 or any(len(row) != n for row in t):
            raise NotSymplecticChange("change of basis must be square of even size")
        J = exact.canonical_symplectic(n // 2)
        if exact.matmul(exact.matmul(exact.transpose(t), J), t) != J:
            raise NotSymplecticChange("T^T J T != J")
        object.__setattr__(self, "t", t)


def apply_post_transform(G: DarbouxBasis, T) -> DarbouxBasis:
    """New basis ``T G``; ``T`` must preserve the canonical pairing."""
    if not isinstance(T, SymplecticChange):
        T = SymplecticChange(T)
    if len(T.t) != len(G.g):
        raise ShapeMismatch(f"T is {len(T.t)}x{len(T.t)} but basis has {len(G.g)} rows")
    return DarbouxBasis(exact.matmul(T.t, G.g), G.n)


class ReducedMapEvaluator:
    """``phi_hat(y) = pi(phi(lift(y)))`` on the reduced coordinates."""

    def __init__(self, B: ExchangeMatrix, m: int, G: DarbouxBasis, S: Section):
        if not is_period(B, m):
            raise NotPeriodic(f"B is not {m}-periodic; the reduced map is undefined")
        if G.n != B.n or len(S.s) != B.n:
            raise ShapeMismatch("basis, section and exchange matrix sizes differ")
        self.B, self.m, self.G, self.S = B, m, G, S
        self.phi = IterationMap(B, m, check=False)
        self.dim = len(G.g)

    def log_eval(self, w):
        v = _rows_apply(self.S.s, w)
        return _rows_apply(self.G.g, self.phi.log_eval(v))

    def __call__(self, y) -> np.ndarray:
        y = check_point(y, self.dim)
        w = list(np.log(y).T)
        out = self.log_eval(w)
        shape = np.shape(w[0])
        return np.exp(np.array([np.broadcast_to(x, shape) for x in out]).T)


def reduced_map_eval(E: ReducedMapEvaluator, y) -> np.ndarray:
    return E(y)


def log_relative_error(a_log, b_log) -> np.ndarray:
    """``|a/b - 1|`` computed from logarithms."""
    return np.abs(np.expm1(np.asarray(a_log, dtype=float) - np.asarray(b_log, dtype=float)))


@dataclass
class VerificationReport:
    name: str
    passed: bool
    max_residual: float
    worst_point: np.ndarray | None
    n_points: int
    tol: float
    residuals: list[float] = field(default_factory=list, repr=False)

    def summary(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return f"{self.name}: {verdict} (max residual {self.max_residual:.3g}, {self.n_points} points, tol {self.tol:g})"


def _report(name, residuals, points, tol) -> VerificationReport:
    residuals = [float(r) for r in residuals]
    if residuals:
        worst = int(np.argmax(residuals))
        max_res, worst_pt = residuals[worst], np.asarray(points[worst])
    else:
        max_res, worst_pt = 0.0, None
    passed = bool(np.isfinite(max_res) and max_res < tol)
    return VerificationReport(name, passed, max_res, worst_pt, len(residuals), tol, residuals)


def verify_commutation(B, m, G, S, points, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Per point relative error between ``pi(phi(u))`` and ``phi_hat(pi(u))``."""
    points = check_point(np.atleast_2d(points), B.n)
    E = ReducedMapEvaluator(B, m, G, S)
    v = list(np.log(points).T)
    direct = _rows_apply(G.g, E.phi.log_eval(v))
    via = E.log_eval(_rows_apply(G.g, v))
    shape = (len(points),)
    err = log_relative_error(
        [np.broadcast_to(x, shape) for x in direct], [np.broadcast_to(x, shape) for x in via]
    )
    return _report("commutation", err.max(axis=0) if err.size else [], points, tol)


def verify_fiber_invariance(
    G: DarbouxBasis, B: ExchangeMatrix, m: int, points, tol: float = DEFAULT_TOL, seed: int = 42
) -> VerificationReport:
    """Check that ``pi . phi`` is constant along kernel directions of the form.

    Each point is moved to ``u * exp(tau * xi)`` for every kernel basis
    vector ``xi`` (scaled to unit max-norm) and a random ``tau`` in
    ``[-1, 1]``.
    """
    rank, kernel = rank_and_kernel(standard_form(B))
    if not kernel:
        raise FullRank("form has trivial kernel")
    points = check_point(np.atleast_2d(points), B.n)
    if not is_period(B, m):
        raise NotPeriodic(f"B is not {m}-periodic")
    phi = IterationMap(B, m, check=False)
    rng = np.random.default_rng(seed)
    xis = [np.array([float(x) for x in xi]) for xi in kernel]
    xis = [xi / np.max(np.abs(xi)) for xi in xis]
    v = np.log(points)
    base = np.array(_rows_apply(G.g, phi.log_eval(list(v.T))), dtype=float).reshape(len(G.g), -1)
    worst = np.zeros(len(points))
    for xi in xis:
        tau = rng.uniform(-1.0, 1.0, size=len(points))
        moved = v + tau[:, None] * xi[None, :]
        out = np.array(_rows_apply(G.g, phi.log_eval(list(moved.T))), dtype=float).reshape(len(G.g), -1)
        err = log_relative_error(out, base)
        if err.size:
            worst = np.maximum(worst, err.max(axis=0))
    return _report("fiber invariance", worst, points, tol)


def verify_symplectic(E, points, tol: float = DEFAULT_TOL) -> VerificationReport:
    """``max |D^T J D - J|`` with ``D`` the log-Jacobian of the reduced map.

    ``E`` may be a :class:`ReducedMapEvaluator` or any callable on positive
    ``2k``-vectors (for example a closed-form reduced map).
    """
    points = check_point(np.atleast_2d(points))
    dim = points.shape[1]
    J = exact.as_float(exact.canonical_symplectic(dim // 2)).reshape(dim, dim)
    residuals = []
    for y in points:
        D = log_jacobian(E, y)
        residuals.append(float(np.max(np.abs(D.T @ J @ D - J), initial=0.0)))
    return _report("symplecticity", residuals, points, tol)


def reduced_expression(B: ExchangeMatrix, m: int, G: DarbouxBasis, S: Section) -> tuple[ex.Expr, ...]:
    """Symbolic ``pi . phi . lift`` as expression trees in ``y_1 .. y_2k``.

    No canonical simplification is attempted; the trees agree numerically
    with :class:`ReducedMapEvaluator`.
    """
    if not is_period(B, m):
        raise NotPeriodic(f"B is not {m}-periodic")
    n = B.n
    u: list[ex.Expr] = [ex.Monomial(tuple(row)) for row in S.s]
    seq = mutation_sequence(B, m)
    for j in range(m):
        k = j % n
        row = seq[j].row(k)
        plus = ex.product(ex.power(u[l], b) for l, b in enumerate(row) if b > 0)
        minus = ex.product(ex.power(u[l], -b) for l, b in enumerate(row) if b < 0)
        u[k] = ex.product([ex.add([minus, plus]), ex.power(u[k], -1)])
    shift = m % n
    u = u[shift:] + u[:shift]
    return tuple(
        ex.product(ex.power(u[j], c) for j, c in enumerate(g) if c != 0) for g in G.g
    )
