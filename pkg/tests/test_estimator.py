import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from hermrank.estimator import HermitianRankEstimator, check_instance
from hermrank.structures import DomainError, FamilyParams, instantiate_family


def test_params_round_trip():
    est = HermitianRankEstimator(kind="skt", sweep=5, seed=7)
    assert est.get_params() == {"kind": "skt", "sweep": 5, "seed": 7, "thetas": None}
    twin = clone(est).set_params(kind="kahler")
    assert twin.kind == "kahler" and est.kind == "skt"


@pytest.mark.parametrize("X", [
    FamilyParams.create("I", rho=0, lam=0, D=-1),
    {"family": "I", "rho": 0, "lambda": "0", "D": {"re": "-1", "im": "0"}},
])
def test_fit_accepts_inputs(X):
    est = HermitianRankEstimator(kind="skt").fit(X)
    assert (est.rank_, est.upper_, est.status_) == (2, 2, "exact")


def test_fit_on_salamon_string_and_instance():
    assert HermitianRankEstimator(kind="kahler").fit("(0,0,0,0,0,0)").rank_ == 3
    inst = instantiate_family(FamilyParams.create("P", rho=1))
    assert HermitianRankEstimator().fit(inst).rank_ == 2


def test_validation():
    with pytest.raises(ValueError):
        HermitianRankEstimator(kind="balanced").fit("(0,0,0,0,0,0)")
    with pytest.raises(ValueError):
        HermitianRankEstimator(kind="hlck", sweep=0).fit("(0,0,0,0,0,0)")
    with pytest.raises(TypeError):
        check_instance(3)
    with pytest.raises(DomainError):
        check_instance({"family": "II", "rho": 0, "B": "0", "c": "0"})


def test_unfitted():
    with pytest.raises(NotFittedError):
        HermitianRankEstimator().to_json()
