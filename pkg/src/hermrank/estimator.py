"""Estimator-style front end: configure a rank kind, ``fit`` it on one algebra.

Follows the scikit-learn conventions: hyperparameters are stored verbatim in
``__init__``, validated in ``fit``, and fitted results carry a trailing
underscore.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .engine import DEFAULT_SWEEP, KINDS, rank
from .structures import (
    AlgebraInstance,
    DomainError,
    FamilyParams,
    instance_from_json,
    instance_from_salamon,
    instantiate_family,
)


def check_instance(X) -> AlgebraInstance:
    """Accept an instance, family parameters, a Salamon string or an algebra JSON object."""
    if isinstance(X, AlgebraInstance):
        return X
    if isinstance(X, FamilyParams):
        return instantiate_family(X)
    if isinstance(X, str):
        return instance_from_salamon(X)
    if isinstance(X, dict):
        return instance_from_json(X)
    raise TypeError(f"cannot read {type(X).__name__} as an algebra; pass an AlgebraInstance, "
                    "FamilyParams, Salamon string or algebra JSON object")


def check_params(kind, sweep, seed) -> None:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {', '.join(KINDS)}, got {kind!r}")
    if isinstance(sweep, bool) or not isinstance(sweep, int) or sweep < 1:
        raise ValueError(f"sweep must be a positive integer, got {sweep!r}")
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise ValueError(f"seed must be a nonnegative integer, got {seed!r}")


class HermitianRankEstimator(BaseEstimator):
    """Maximal rank of a degenerate special-Hermitian invariant metric.

    Parameters
    ----------
    kind : {"kahler", "hlck", "skt"}
    sweep : int
        Number of Lee forms tried for ``kind="hlck"``.
    seed : int
        Seed of all random sampling; equal seeds give equal reports.
    thetas : list of Form, optional
        Extra Lee forms tried first for ``kind="hlck"``.

    Attributes
    ----------
    report_ : RankReport
    rank_ : int
        The certified lower bound (equal to the rank when ``status_ == "exact"``).
    status_ : str
    """

    def __init__(self, kind="kahler", sweep=DEFAULT_SWEEP, seed=0, thetas=None):
        self.kind = kind
        self.sweep = sweep
        self.seed = seed
        self.thetas = thetas

    def fit(self, X, y=None):
        check_params(self.kind, self.sweep, self.seed)
        instance = check_instance(X)
        self.instance_ = instance
        self.report_ = rank(self.kind, instance, seed=self.seed, sweep=self.sweep, thetas=self.thetas)
        self.rank_ = self.report_.lower
        self.upper_ = self.report_.upper
        self.status_ = self.report_.status
        return self

    def to_json(self) -> dict:
        check_is_fitted(self, "report_")
        return self.report_.to_json()


__all__ = ["DomainError", "HermitianRankEstimator", "check_instance", "check_params"]
