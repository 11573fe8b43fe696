"""Input validation helpers shared by the estimator and the CLI."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.utils import check_array

from .exceptions import NonPositivePoint, NotSkewSymmetric
from .quiver import ExchangeMatrix, new_exchange_matrix


def check_exchange_matrix(X) -> ExchangeMatrix:
    """Accept an :class:`ExchangeMatrix` or any square integer array-like."""
    if isinstance(X, ExchangeMatrix):
        return X
    arr = np.asarray(X, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NotSkewSymmetric(f"exchange matrix must be square, got shape {arr.shape}")
    return new_exchange_matrix(arr.tolist())


def check_positive_array(X, n_features: int | None = None) -> np.ndarray:
    """2-D float array of strictly positive finite entries, one point per row."""
    try:
        arr = check_array(X, dtype=np.float64, ensure_2d=True, ensure_all_finite=True)
    except ValueError as exc:
        raise NonPositivePoint(str(exc)) from None
    if n_features is not None and arr.shape[1] != n_features:
        raise NonPositivePoint(f"expected {n_features} coordinates per point, got {arr.shape[1]}")
    if np.any(arr <= 0):
        raise NonPositivePoint("points must be strictly positive")
    return arr


def parse_rational(text) -> Fraction:
    """``"p/q"``, integer or decimal string to ``Fraction``; rejects floats silently rounded."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise ValueError("rationals must be given exactly, as 'p/q' strings or integers")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational: {text!r}") from None


def parse_rational_matrix(rows) -> tuple[tuple[Fraction, ...], ...]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValueError("rational matrix must be a list of rows")
    return tuple(tuple(parse_rational(x) for x in row) for row in rows)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))
