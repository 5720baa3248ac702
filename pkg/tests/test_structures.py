from fractions import Fraction

import pytest

from hermrank.forms import Form, differential
from hermrank.gaussian import GaussianRational
from hermrank.structures import (
    DomainError,
    FamilyParams,
    SalamonError,
    closed_one_forms,
    instance_from_json,
    instance_from_salamon,
    instantiate_family,
    parse_salamon,
    positivity_conditions,
)


def test_parse_h7():
    spec = parse_salamon("(0,0,0,12,13,23)")
    assert spec.describe()[3:] == ["de^4 = e^1^e^2", "de^5 = e^1^e^3", "de^6 = e^2^e^3"]


def test_parse_abelian():
    assert parse_salamon("(0,0,0,0,0,0)").is_abelian()


def test_parse_error_has_position():
    with pytest.raises(SalamonError, match="position"):
        parse_salamon("(0,0,x2)")


def test_jacobi_failure_is_named():
    with pytest.raises(SalamonError, match="Jacobi"):
        parse_salamon("(0,0,0,12,34)")


def test_h7_is_flagged():
    assert instance_from_salamon("(0,0,0,12,13,23)").invariant_only


@pytest.mark.parametrize("params", [
    dict(family="I", rho=0, lam=-1, D=0),
    dict(family="I", rho=0, lam=0, D=GaussianRational(0, -1)),
    dict(family="II", rho=0, B=0, c=0),
    dict(family="III", eps=2, sign=1),
    dict(family="P", rho=1, D=1),
])
def test_domain_violations(params):
    family = params.pop("family")
    with pytest.raises(DomainError):
        FamilyParams.create(family, **params)


@pytest.mark.parametrize("family", ["P", "I", "II", "III"])
def test_families_are_integrable_and_nilpotent(family):
    instance = instantiate_family(FamilyParams.create(family, rho=1, c=1) if family == "II"
                                  else FamilyParams.create(family))
    assert not instance.spec.integrability_defects()
    assert not instance.spec.jacobi_defects()
    for theta in closed_one_forms(instance):
        assert not differential(instance.spec, theta)
        assert theta.is_real()


def test_json_round_trip():
    params = FamilyParams.create("I", rho=1, lam=Fraction(1, 2), D=GaussianRational(2, Fraction(1, 3)))
    assert FamilyParams.from_json(params.to_json()) == params
    assert instance_from_json(params.to_json()).params == params


def test_positivity_conditions_count():
    assert len(positivity_conditions()) >= 3
