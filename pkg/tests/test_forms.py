from hermrank.forms import (
    Form,
    delbar,
    delop,
    differential,
    monomial_label,
    parse_label,
    power,
    twisted_differential,
    wedge,
)
from hermrank.gaussian import GaussianRational, I
from hermrank.structures import FamilyParams, instantiate_family


def test_wedge_antisymmetry_of_one_forms():
    a, b = Form.phi(3, 1), Form.phibar(3, 2)
    assert wedge(a, b) == -wedge(b, a)
    assert not wedge(a, a)


def test_canonical_ordering_sign():
    f = Form(3, {((2, 1), ()): GaussianRational(1)})
    assert f == Form(3, {((1, 2), ()): GaussianRational(-1)})


def test_conjugation_of_real_one_one_form():
    omega = Form(3, {((1,), (1,)): I})
    assert omega.is_real()


def test_volume_power():
    omega = Form(3, {((j,), (j,)): I for j in (1, 2, 3)})
    vol = power(omega, 3)
    assert list(vol.terms) == [((1, 2, 3), (1, 2, 3))]


def test_labels_round_trip():
    assert parse_label(monomial_label((1, 2), (1, 3))) == ((1, 2), (1, 3))
    assert monomial_label((1, 2), (1, 2)) == "phi^{12|1b2b}"


def test_d_splits_into_del_and_delbar():
    spec = instantiate_family(FamilyParams.create("I", rho=1, lam=1, D=GaussianRational(0, 1))).spec
    a = Form(3, {((3,), (2,)): GaussianRational(2, 1), ((1,), ()): GaussianRational(1)})
    assert differential(spec, a) == delop(spec, a) + delbar(spec, a)


def test_twisted_differential_with_zero_theta_is_d():
    spec = instantiate_family(FamilyParams.create("P", rho=1)).spec
    a = Form.phi(3, 3)
    assert twisted_differential(spec, Form.zero(3), a) == differential(spec, a)
