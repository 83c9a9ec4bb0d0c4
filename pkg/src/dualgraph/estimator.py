"""scikit-learn style wrappers so graph collections fit into estimator pipelines."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .classifier import FAMILIES, classify
from .dsl import parse_graph
from .graph import DualGraph, Shape, shape
from .normal_forms import minimalize, standardize_circular, standardize_linear


def check_graph(x):
    """Return ``x`` as a :class:`DualGraph`; DSL strings are parsed.

    Raises
    ------
    TypeError
        If ``x`` is neither a graph nor a string.
    ValueError
        If the graph is empty or the text does not parse.
    """
    if isinstance(x, str):
        x = parse_graph(x)
    if not isinstance(x, DualGraph):
        raise TypeError(f"expected a DualGraph or DSL string, got {type(x).__name__}")
    if x.is_empty():
        raise ValueError("empty graph")
    return x


def check_graphs(X):
    """Validate a sequence of graphs; a single graph is rejected to avoid silent iteration."""
    if isinstance(X, (str, DualGraph)):
        raise TypeError("expected a sequence of graphs, got a single graph")
    out = [check_graph(x) for x in X]
    if not out:
        raise ValueError("found an empty collection of graphs")
    return out


class BoundaryClassifier(ClassifierMixin, BaseEstimator):
    """Predict the boundary family label of each graph.

    The decision procedure is fixed, so ``fit`` only validates its input and
    records the label set.

    Parameters
    ----------
    strict : bool, default=True
        When False, graphs that raise library errors are labelled
        ``"NotInList"`` instead of propagating the error.

    Attributes
    ----------
    classes_ : ndarray of str
        Every family label, ``NotInList`` last.
    """

    def __init__(self, strict=True):
        self.strict = strict

    def fit(self, X, y=None):
        check_graphs(X)
        self.classes_ = np.array(FAMILIES, dtype=object)
        return self

    def predict_verdicts(self, X):
        check_is_fitted(self, "classes_")
        out = []
        for g in check_graphs(X):
            try:
                out.append(classify(g))
            except Exception:
                if self.strict:
                    raise
                out.append(None)
        return out

    def predict(self, X):
        verdicts = self.predict_verdicts(X)
        return np.array([v.family if v is not None else "NotInList" for v in verdicts], dtype=object)


class GraphNormalizer(TransformerMixin, BaseEstimator):
    """Replace each graph by its minimal or standard form.

    Parameters
    ----------
    mode : {"minimal", "standard"}, default="minimal"
        ``standard`` standardizes chains and cycles and minimalizes
        everything else.
    """

    def __init__(self, mode="minimal"):
        self.mode = mode

    def fit(self, X, y=None):
        if self.mode not in ("minimal", "standard"):
            raise ValueError(f"mode must be 'minimal' or 'standard', got {self.mode!r}")
        check_graphs(X)
        self.fitted_ = True
        return self

    def transform(self, X):
        check_is_fitted(self, "fitted_")
        return [self._one(g) for g in check_graphs(X)]

    def _one(self, g):
        if self.mode == "standard":
            s = shape(g)
            if s in (Shape.SINGLE, Shape.LINEAR):
                return standardize_linear(g)[0]
            if s is Shape.CIRCULAR:
                return standardize_circular(g)[0]
        return minimalize(g)[0]
