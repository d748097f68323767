"""scikit-learn style wrapper: fit a point cloud, get its completion."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from widthlab import completeness as cp
from widthlab._scalar import to_vector
from widthlab.geometry import contains, convex_hull
from widthlab.hulls import tight_spherical_hull, wide_spherical_hull
from widthlab.metrics import diameter, farthest_distance
from widthlab.norms import Norm, make_norm, norm_from_json


class DiametricCompletion(TransformerMixin, BaseEstimator):
    """Convex hull of the rows of ``X`` together with its spherical hulls and a completion.

    ``norm`` is a kind name (``"l1"``, ``"linf"``, ``"hexagonal_bipyramid"``,
    ...), a norm JSON dict or a polytopal :class:`~widthlab.norms.Norm`.
    Float inputs are read exactly through their shortest decimal form, so
    ``0.1`` means ``1/10``.

    After ``fit``: ``norm_``, ``body_``, ``diameter_``, ``wide_hull_``,
    ``tight_hull_``, ``completion_``, ``is_complete_``,
    ``unique_completion_`` and ``is_constant_width_``.
    ``predict`` tells whether points lie in the completion; ``transform``
    gives the distance from each point to the farthest point of the body,
    so ``transform(X) <= diameter_`` is membership in the wide hull.
    """

    def __init__(self, norm="l1", tie_rule="lex", max_iters=None):
        self.norm = norm
        self.tie_rule = tie_rule
        self.max_iters = max_iters

    def _resolve_norm(self, dim):
        if isinstance(self.norm, Norm):
            norm = self.norm
        elif isinstance(self.norm, dict):
            norm = norm_from_json(self.norm)
        else:
            norm = make_norm(self.norm, dim)
        if not norm.polytopal:
            raise ValueError("DiametricCompletion needs a polytopal norm")
        if norm.dim != dim:
            raise ValueError(f"X has {dim} features but the norm lives in dimension {norm.dim}")
        return norm

    def _rows(self, X):
        X = check_array(X, dtype=np.float64)
        return [to_vector(row.tolist()) for row in X]

    def fit(self, X, y=None):
        if self.tie_rule not in ("lex", "reverse"):
            raise ValueError("tie_rule must be 'lex' or 'reverse'")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] not in (2, 3):
            raise ValueError("points must be 2- or 3-dimensional")
        self.n_features_in_ = X.shape[1]
        self.norm_ = self._resolve_norm(X.shape[1])
        self.body_ = convex_hull(self._rows(X))
        self.diameter_ = diameter(self.norm_, self.body_).value
        wide = wide_spherical_hull(self.norm_, self.body_)
        self.wide_hull_ = wide.hull
        self.tight_hull_ = tight_spherical_hull(self.norm_, self.body_, wide).hull
        done = cp.complete_greedily(self.norm_, self.body_, self.tie_rule,
                                    self.max_iters, track_progress=False)
        self.completion_ = done.body
        self.completion_found_ = done.complete
        self.is_complete_ = done.iterations == 0 and done.complete
        self.unique_completion_ = diameter(self.norm_, self.wide_hull_).value == self.diameter_
        self.is_constant_width_ = bool(cp.is_constant_width(self.norm_, self.body_))
        return self

    def _check(self, X):
        check_is_fitted(self, "completion_")
        rows = self._rows(X)
        if rows and len(rows[0]) != self.n_features_in_:
            raise ValueError(f"X has {len(rows[0])} features, expected {self.n_features_in_}")
        return rows

    def predict(self, X):
        return np.array([contains(self.completion_, x) for x in self._check(X)])

    def transform(self, X):
        return np.array([[float(farthest_distance(self.norm_, self.body_, x))]
                         for x in self._check(X)])
