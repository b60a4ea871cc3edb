"""scikit-learn style wrappers: one row of weights per sample.

The estimators are stateless apart from the lattice cached by ``fit``; they
exist so weight sweeps can be written as ordinary pipelines::

    pipe = make_pipeline(NonresonantShift("cdo-ex1", hyperplane=5),
                         NonresonanceChecker("cdo-ex1", condition="stv"))
    W = [["1/3"] * 4 + ["-4/3"]]
    pipe.fit(W).predict(W)
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .lattice import build_lattice
from .nonres import AH, CONDITIONS, check_condition, prop4_shift
from .oscomplex import WeightSystem, aomoto_cohomology, aomoto_complex
from .validation import check_arrangement, check_weights


class _ArrangementEstimator(BaseEstimator):
    def _fit_lattice(self):
        self.arrangement_ = check_arrangement(self.arrangement)
        self.lattice_ = build_lattice(self.arrangement_)
        self.n_features_in_ = self.arrangement_.m
        return self

    def _rows(self, X):
        check_is_fitted(self, "lattice_")
        return [WeightSystem(row) for row in check_weights(X, self.n_features_in_)]


class NonresonanceChecker(ClassifierMixin, _ArrangementEstimator):
    """Predicts whether each weight vector satisfies ``condition``."""

    def __init__(self, arrangement="cdo-ex1", condition="stv", hyperplane=None):
        self.arrangement = arrangement
        self.condition = condition
        self.hyperplane = hyperplane

    def fit(self, X=None, y=None):
        if self.condition not in CONDITIONS:
            raise ValueError(f"unknown condition {self.condition!r}")
        if self.condition == AH and self.hyperplane is None:
            raise ValueError("condition 'ah' needs a hyperplane")
        self._fit_lattice()
        self.classes_ = np.array([False, True])
        return self

    def reports(self, X):
        return [check_condition(S, self.condition, self.lattice_, self.hyperplane) for S in self._rows(X)]

    def predict(self, X):
        return np.array([r.holds for r in self.reports(X)], dtype=bool)


class AomotoCohomology(TransformerMixin, _ArrangementEstimator):
    """Maps each weight vector to its Aomoto cohomology dimensions (h^0, ..., h^n)."""

    def __init__(self, arrangement="cdo-ex1", decone=None):
        self.arrangement = arrangement
        self.decone = decone

    def fit(self, X=None, y=None):
        return self._fit_lattice()

    def transform(self, X):
        rows = [aomoto_cohomology(aomoto_complex(self.arrangement_, S, self.decone)) for S in self._rows(X)]
        return np.array(rows, dtype=np.int64)


class NonresonantShift(TransformerMixin, _ArrangementEstimator):
    """Replaces each (A, H)-nonresonant weight vector by its stv-nonresonant integer shift."""

    def __init__(self, arrangement="cdo-ex1", hyperplane=1):
        self.arrangement = arrangement
        self.hyperplane = hyperplane

    def fit(self, X=None, y=None):
        return self._fit_lattice()

    def transform(self, X):
        out = [prop4_shift(S, self.hyperplane, self.lattice_).weights for S in self._rows(X)]
        arr = np.empty((len(out), self.n_features_in_), dtype=object)
        for i, row in enumerate(out):
            arr[i, :] = row
        return arr
