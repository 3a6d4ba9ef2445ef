"""scikit-learn compatible wrappers.

States enter as arrays of shape ``(n_states, d, d)``; the wrappers compose
with ``Pipeline`` and ``clone`` like any other transformer.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .channels import apply, make_channel
from .measures import as_measure
from .ordering import TIE_TOL, StateFamily, ordering_report
from .validation import check_probability, check_states


class CoherenceTransformer(TransformerMixin, BaseEstimator):
    """Map density matrices to a feature matrix of coherence values.

    Parameters
    ----------
    measures : sequence of str or CoherenceMeasure
        e.g. ``("l1", "rel", "tsallis:0.5")``.
    validate : bool
        Run density-matrix validation on every input state.
    """

    def __init__(self, measures=("l1", "rel", "tsallis:0.5"), validate=True):
        self.measures = measures
        self.validate = validate

    def _states(self, X):
        if self.validate:
            return check_states(X)
        a = np.asarray(X, dtype=complex)
        return a[None] if a.ndim == 2 else a

    def fit(self, X, y=None):
        X = self._states(X)
        self.measures_ = [as_measure(m) for m in self.measures]
        self.n_features_in_ = 1
        self.dim_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "measures_")
        X = check_states(X, dim=self.dim_) if self.validate else self._states(X)
        return np.array([[m(rho) for m in self.measures_] for rho in X])

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "measures_")
        return np.array([m.label for m in self.measures_], dtype=object)


class ChannelTransformer(TransformerMixin, BaseEstimator):
    """Apply a damping channel (``"adc"``, ``"pdc"`` or ``"identity"``) to each state."""

    def __init__(self, channel="pdc", p=0.5):
        self.channel = channel
        self.p = p

    def fit(self, X, y=None):
        check_probability(self.p)
        self.channel_ = make_channel(self.channel, self.p)
        check_states(X, dim=self.channel_.dim)
        return self

    def transform(self, X):
        check_is_fitted(self, "channel_")
        X = check_states(X, dim=self.channel_.dim)
        return np.array([apply(self.channel_, rho) for rho in X])


class OrderingAnalyzer(BaseEstimator):
    """Fit an ordering-agreement report on a family of states.

    After ``fit``, ``report_`` holds the :class:`~cohorder.ordering.OrderingReport`
    and ``score`` is the fraction of (state pair, measure pair) comparisons
    that agree.
    """

    def __init__(self, measures=("l1", "rel", "tsallis:0.5"), tie_tolerance=TIE_TOL):
        self.measures = measures
        self.tie_tolerance = tie_tolerance

    def fit(self, X, y=None):
        X = check_states(X)
        self.report_ = ordering_report(StateFamily("fit", list(X)), self.measures, self.tie_tolerance)
        return self

    def score(self, X=None, y=None):
        if X is not None:
            self.fit(X)
        check_is_fitted(self, "report_")
        total = self.report_.pair_count * self.report_.measure_pairs
        return self.report_.agreements / total if total else 1.0
