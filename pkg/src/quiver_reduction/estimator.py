"""Scikit-learn style front end for the reduction pipeline."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .exceptions import NotPeriodic
from .forms import rank_and_kernel, scale_form, standard_form
from .quiver import DEFAULT_MAX_PERIOD, IterationMap, detect_period, is_period
from .reduction import (
    ReducedMapEvaluator,
    apply_post_transform,
    build_section,
    cartan_reduce,
)
from .validation import check_exchange_matrix, check_positive_array


class CartanReducer(TransformerMixin, BaseEstimator):
    """Reduce the iteration map of a periodic quiver to its Darboux coordinates.

    ``fit`` takes the exchange matrix ``B`` (not a sample matrix); after
    fitting, ``transform`` maps cluster points (rows) to reduced variables
    ``f_1 .. f_2k`` and ``inverse_transform`` lifts them back along the
    monomial section.

    Parameters
    ----------
    scale : rational, default=1
        Multiplier applied to the standard form before reduction.
    post_transform : array-like of rationals, optional
        ``2k x 2k`` matrix ``T`` with ``T^T J T = J``; the basis becomes ``T G``.
    max_period : int, default=12
        Search bound for the mutation period.
    period : int, optional
        Use this period instead of searching (it is still checked exactly).

    Attributes
    ----------
    exchange_matrix_, period_, form_, rank_, kernel_, basis_, section_
    n_features_in_ : int
    """

    def __init__(self, scale=1, post_transform=None, max_period=DEFAULT_MAX_PERIOD, period=None):
        self.scale = scale
        self.post_transform = post_transform
        self.max_period = max_period
        self.period = period

    def fit(self, X, y=None):
        B = check_exchange_matrix(X)
        if self.period is not None:
            self.period_ = self.period if is_period(B, self.period) else None
        else:
            self.period_ = detect_period(B, self.max_period).period
        self.exchange_matrix_ = B
        self.form_ = scale_form(standard_form(B), Fraction(self.scale))
        self.rank_, self.kernel_ = rank_and_kernel(self.form_)
        basis = cartan_reduce(self.form_)
        if self.post_transform is not None and not basis.is_empty:
            basis = apply_post_transform(basis, self.post_transform)
        self.basis_ = basis
        self.section_ = build_section(basis) if not basis.is_empty else None
        self.n_features_in_ = B.n
        return self

    def transform(self, X):
        check_is_fitted(self, "basis_")
        U = check_positive_array(X, self.n_features_in_)
        return np.exp(np.log(U) @ self.basis_.to_numpy().T)

    def inverse_transform(self, X):
        check_is_fitted(self, "section_")
        Y = check_positive_array(X, len(self.basis_.g))
        return self.section_.lift(Y)

    def get_feature_names_out(self, input_features=None):
        return np.array([f"f{i + 1}" for i in range(len(self.basis_.g))], dtype=object)

    def _require_period(self):
        check_is_fitted(self, "period_")
        if self.period_ is None:
            raise NotPeriodic("no verified period for this exchange matrix")

    def step(self, X):
        """One application of the iteration map to each row of ``X``."""
        self._require_period()
        U = check_positive_array(X, self.n_features_in_)
        return IterationMap(self.exchange_matrix_, self.period_, check=False)(U)

    def reduced_step(self, X):
        """One application of the reduced map to each row of ``X`` (reduced coordinates)."""
        self._require_period()
        Y = check_positive_array(X, len(self.basis_.g))
        return self.evaluator_(Y)

    @property
    def evaluator_(self) -> ReducedMapEvaluator:
        self._require_period()
        return ReducedMapEvaluator(self.exchange_matrix_, self.period_, self.basis_, self.section_)
