"""Quivers as skew-symmetric integer matrices, mutation and iteration maps.

Node indices are 1-based at every public entry point, matching the usual
labelling of quiver vertices ``1..N``; internally everything is 0-based.

The cyclic permutation ``sigma`` is the matrix with ones on the
superdiagonal and in the bottom-left corner.  As a map on clusters it
sends ``(u_1, ..., u_N)`` to ``(u_2, ..., u_N, u_1)``, and conjugation
``sigma^-m B sigma^m`` has entries ``b[(i - m) % N][(j - m) % N]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import dual
from .exceptions import (
    IndexOutOfRange,
    NonPositivePoint,
    NotPeriodic,
    NotSkewSymmetric,
)

DEFAULT_MAX_PERIOD = 12


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetric integer matrix ``B`` encoding a quiver.

    Entries are Python ints, so mutation never overflows.
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = self.entries
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise NotSkewSymmetric(f"exchange matrix must be square, got rows {[len(r) for r in rows]}")
        for i in range(n):
            if rows[i][i] != 0:
                raise NotSkewSymmetric(f"b[{i + 1}][{i + 1}] = {rows[i][i]} (loops are not allowed)")
            for j in range(i + 1, n):
                if rows[i][j] != -rows[j][i]:
                    raise NotSkewSymmetric(
                        f"b[{i + 1}][{j + 1}] = {rows[i][j]} but b[{j + 1}][{i + 1}] = {rows[j][i]}"
                    )

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.entries, dtype=float).reshape(self.n, self.n)

    def __str__(self) -> str:
        width = max((len(str(x)) for r in self.entries for x in r), default=1)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.entries)


def new_exchange_matrix(entries) -> ExchangeMatrix:
    """Validate a square integer array and wrap it as an :class:`ExchangeMatrix`."""
    if isinstance(entries, ExchangeMatrix):
        return entries
    rows = []
    for row in entries:
        out = []
        for x in row:
            if isinstance(x, bool) or int(x) != x:
                raise NotSkewSymmetric(f"entries must be integers, got {x!r}")
            out.append(int(x))
        rows.append(tuple(out))
    return ExchangeMatrix(tuple(rows))


@dataclass(frozen=True)
class QuiverFamilyParams:
    r: int
    s: int
    t: int
    p: int

    def __post_init__(self):
        for name in ("r", "s", "t", "p"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")


def fomin6(r, s=None, t=None, p=None) -> ExchangeMatrix:
    """Six-node quiver family with positive integer parameters ``r, s, t, p``.

    1-periodic when ``r == t`` and 2-periodic otherwise.  Accepts either a
    :class:`QuiverFamilyParams` or the four integers.
    """
    if isinstance(r, QuiverFamilyParams):
        q = r
    else:
        q = QuiverFamilyParams(r, s, t, p)
    r, s, t, p = q.r, q.s, q.t, q.p
    return new_exchange_matrix(
        [
            [0, -r, s, -p, s, -t],
            [r, 0, -t - r * s, s, -p - r * s, s],
            [-s, t + r * s, 0, -r - s * (t - p), s, -p],
            [p, -s, r + s * (t - p), 0, -t - r * s, s],
            [-s, p + r * s, -s, t + r * s, 0, -r],
            [t, -s, p, -s, r, 0],
        ]
    )


def _node(B: ExchangeMatrix, k: int) -> int:
    if isinstance(k, bool) or not 1 <= k <= B.n:
        raise IndexOutOfRange(f"node {k} outside 1..{B.n}")
    return k - 1


def _mutate0(rows: Sequence[Sequence[int]], k: int) -> tuple[tuple[int, ...], ...]:
    n = len(rows)
    out = []
    for i in range(n):
        bik = rows[i][k]
        new = []
        for j in range(n):
            if i == k or j == k:
                new.append(-rows[i][j])
            else:
                bkj = rows[k][j]
                new.append(rows[i][j] + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        out.append(tuple(new))
    return tuple(out)


def mutate_matrix(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation at node ``k`` (1-based)."""
    return ExchangeMatrix(_mutate0(B.entries, _node(B, k)))


def sigma_conjugate(B: ExchangeMatrix, m: int) -> ExchangeMatrix:
    """``sigma^-m B sigma^m``; negative ``m`` conjugates the other way."""
    n = B.n
    if n == 0:
        return B
    e = B.entries
    return ExchangeMatrix(
        tuple(tuple(e[(i - m) % n][(j - m) % n] for j in range(n)) for i in range(n))
    )


def sigma_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """Permutation matrix with ones on the superdiagonal and at ``(N, 1)``."""
    return tuple(tuple(int(j == (i + 1) % n) for j in range(n)) for i in range(n))


def mutation_sequence(B: ExchangeMatrix, m: int) -> list[ExchangeMatrix]:
    """``[B, mu_1 B, mu_2 mu_1 B, ...]`` with ``m + 1`` entries.

    Nodes beyond ``N`` wrap around cyclically (step ``j`` mutates node
    ``((j - 1) mod N) + 1``).
    """
    seq = [B]
    rows = B.entries
    for j in range(m):
        rows = _mutate0(rows, j % B.n)
        seq.append(ExchangeMatrix(rows))
    return seq


def is_period(B: ExchangeMatrix, m: int) -> bool:
    """Exact check of ``mu_m ... mu_1 (B) == sigma^-m B sigma^m``."""
    if m < 1:
        raise ValueError("period must be positive")
    if B.n == 0:
        return True
    return mutation_sequence(B, m)[-1] == sigma_conjugate(B, m)


@dataclass(frozen=True)
class PeriodResult:
    period: int | None
    conjugated: ExchangeMatrix | None
    bound: int
    mutated: ExchangeMatrix | None = None

    @property
    def found(self) -> bool:
        return self.period is not None

    def __str__(self) -> str:
        if self.period is None:
            return f"none up to {self.bound}"
        return str(self.period)


def detect_period(B: ExchangeMatrix, max_m: int = DEFAULT_MAX_PERIOD) -> PeriodResult:
    """Smallest ``m <= max_m`` for which ``B`` is ``m``-periodic."""
    if max_m < 1:
        raise ValueError("max_m must be at least 1")
    if B.n == 0:
        return PeriodResult(1, B, max_m, B)
    rows = B.entries
    for m in range(1, max_m + 1):
        rows = _mutate0(rows, (m - 1) % B.n)
        conj = sigma_conjugate(B, m)
        if rows == conj.entries:
            return PeriodResult(m, conj, max_m, ExchangeMatrix(rows))
    return PeriodResult(None, None, max_m)


def check_point(u, n: int | None = None) -> np.ndarray:
    """Return ``u`` as a float array after checking it is finite and strictly positive."""
    arr = np.asarray(u, dtype=float)
    if n is not None and arr.shape[-1:] != (n,):
        raise NonPositivePoint(f"expected a point with {n} coordinates, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)) or not np.all(arr > 0):
        raise NonPositivePoint("cluster points must have finite, strictly positive coordinates")
    return arr


def _exchange_log(row: Sequence[int], v, k: int):
    pos = dual.lincomb([b if b > 0 else 0 for b in row], v)
    neg = dual.lincomb([-b if b < 0 else 0 for b in row], v)
    return dual.logaddexp(pos, neg) - v[k]


def mutate_point(B: ExchangeMatrix, k: int, u) -> tuple[ExchangeMatrix, np.ndarray]:
    """Cluster mutation at node ``k``: returns ``(mu_k(B), mu_k(u))``.

    ``u`` may also be a 2-D array with one point per row.
    """
    k0 = _node(B, k)
    u = check_point(u, B.n)
    v = list(np.log(u).T)
    new = np.array(v)
    new[k0] = _exchange_log(B.row(k0), v, k0)
    return mutate_matrix(B, k), np.exp(new.T)


class MutationMap:
    """The birational map ``u -> mu_k(u)`` for fixed ``B`` and node ``k``."""

    def __init__(self, B: ExchangeMatrix, k: int):
        self.B = B
        self.k = k
        self._k0 = _node(B, k)
        self._row = B.row(self._k0)
        self.n = B.n

    def log_eval(self, v):
        out = list(v)
        out[self._k0] = _exchange_log(self._row, v, self._k0)
        return out

    def __call__(self, u):
        return _call_log(self, u, self.n)


class ShiftMap:
    """Coordinate shift ``sigma^m``: ``(u_1, ..., u_N) -> (u_{1+m}, ..., u_{N+m})``."""

    def __init__(self, n: int, m: int = 1):
        self.n = n
        self.m = m

    def log_eval(self, v):
        s = self.m % self.n if self.n else 0
        v = list(v)
        return v[s:] + v[:s]

    def __call__(self, u):
        return _call_log(self, u, self.n)


class IterationMap:
    """Cluster iteration map ``sigma^m mu_m ... mu_1`` of an ``m``-periodic quiver.

    Evaluation happens in log coordinates; ``log_eval`` accepts any scalar
    type understood by :mod:`quiver_reduction.dual` (floats, numpy arrays
    holding one coordinate per entry, duals, mpmath numbers).
    """

    def __init__(self, B: ExchangeMatrix, m: int, *, check: bool = True):
        if m < 1:
            raise NotPeriodic("period must be a positive integer")
        if check and not is_period(B, m):
            raise NotPeriodic(f"B is not {m}-periodic")
        self.B = B
        self.m = m
        self.n = B.n
        seq = mutation_sequence(B, m)
        self._rows = [seq[j].row(j % self.n) for j in range(m)]

    def log_eval(self, v):
        v = list(v)
        n = self.n
        for j, row in enumerate(self._rows):
            k = j % n
            v[k] = _exchange_log(row, v, k)
        s = self.m % n
        return v[s:] + v[:s]

    def __call__(self, u):
        return _call_log(self, u, self.n)


def _call_log(fmap, u, n: int) -> np.ndarray:
    u = check_point(u, n)
    v = list(np.log(u).T)
    out = fmap.log_eval(v)
    return np.exp(np.array([np.broadcast_to(x, np.shape(v[0])) for x in out]).T)


def iteration_map(B: ExchangeMatrix, m: int, u) -> np.ndarray:
    """``phi(u)`` for the ``m``-periodic quiver ``B``; rows of a 2-D ``u`` are separate points."""
    return IterationMap(B, m)(u)


def _superscript_term(name: str, exponent: int) -> str:
    return name if exponent == 1 else f"{name}^{exponent}"


def render_recurrence(B: ExchangeMatrix, m: int) -> str:
    """Shift-invariant recurrence text for an ``m``-periodic quiver.

    One line per exchange relation.  With ``m == 1`` the single sequence is
    ``u``; with ``m`` up to 3 the sequences are ``x, y, z``, otherwise
    ``u1, u2, ...``.  Cluster variable ``u_L`` belongs to sequence
    ``(L - 1) % m`` at time offset ``(L - 1) // m``.
    """
    if m < 1 or not is_period(B, m):
        raise NotPeriodic(f"B is not {m}-periodic")
    n = B.n
    if m == 1:
        names = ["u"]
    elif m <= 3:
        names = ["x", "y", "z"][:m]
    else:
        names = [f"u{c + 1}" for c in range(m)]

    def var(label: int) -> str:
        seq, off = divmod(label - 1, m)[::-1]
        return f"{names[seq]}[n+{off}]" if off else f"{names[seq]}[n]"

    seq = mutation_sequence(B, m)
    labels = list(range(1, n + 1))
    lines = []
    for j in range(m):
        k = j % n
        row = seq[j].row(k)
        neg = [_superscript_term(var(labels[l]), -b) for l, b in sorted(enumerate(row), key=lambda t: labels[t[0]]) if b < 0]
        pos = [_superscript_term(var(labels[l]), b) for l, b in sorted(enumerate(row), key=lambda t: labels[t[0]]) if b > 0]
        new_label = labels[k] + n
        lhs = f"{var(new_label)}·{var(labels[k])}"
        if not neg and not pos:
            rhs = "2"
        else:
            rhs = " + ".join("·".join(t) if t else "1" for t in (neg, pos))
        lines.append(f"{lhs} = {rhs}")
        labels[k] = new_label
    return "\n".join(lines)
