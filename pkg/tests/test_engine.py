import pytest

from hermrank.engine import (
    ThetaNotClosedError,
    TwistedSystem,
    closedness_slice,
    hlck_rank,
    kahler_rank,
    rank,
    rank_of_witness,
    skt_rank,
    verify_witness,
)
from hermrank.forms import Form
from hermrank.gaussian import GaussianRational
from hermrank.psd import verify_certificate
from hermrank.structures import FamilyParams, instance_from_salamon, instantiate_family

REPORT_KEYS = {"kind", "algebra", "rank", "witness", "theta", "certificate", "scope"}


def _inst(family, **kw):
    return instantiate_family(FamilyParams.create(family, **kw))


@pytest.mark.parametrize("family,kw,kr,skt", [
    ("P", {"rho": 0}, 3, 3),
    ("P", {"rho": 1}, 2, 2),
    ("I", {"rho": 0, "lam": 0, "D": -1}, 2, 2),
    ("I", {"rho": 0, "lam": 0, "D": 0}, 2, 3),
    ("II", {"rho": 1, "B": 0, "c": 0}, 1, 2),
    ("III", {"eps": 1, "sign": -1}, 1, 1),
])
def test_exact_ranks(family, kw, kr, skt):
    instance = _inst(family, **kw)
    for report, want in ((kahler_rank(instance), kr), (skt_rank(instance), skt)):
        assert (report.lower, report.upper, report.status) == (want, want, "exact")
        assert rank_of_witness(report) == want
        assert verify_witness(report.kind, instance, report.certificate.witness) == []
        assert verify_certificate(closedness_slice(report.kind, instance), report.certificate) == []


def test_report_json_shape():
    data = rank("skt", _inst("I", rho=0, lam=0, D=-1)).to_json()
    assert REPORT_KEYS <= set(data)
    assert data["rank"] == {"lower": 2, "upper": 2, "status": "exact"}
    assert data["scope"] == "invariant"
    assert data["algebra"] == {"family": "I", "rho": 0, "lambda": "0", "D": {"re": "-1", "im": "0"}}


def test_hlck_witness_is_d_theta_closed():
    instance = _inst("II", rho=0, B=GaussianRational(0, 1), c=1)
    report = hlck_rank(instance, sweep=50)
    assert report.lower == 2
    assert verify_witness("hlck", instance, report.certificate.witness, report.theta) == []
    assert report.sweep["sweep_max_upper"] >= report.lower


def test_hlck_same_seed_same_report():
    instance = _inst("I", rho=1, lam=1, D=0)
    a = hlck_rank(instance, sweep=100, seed=3).to_json()
    b = hlck_rank(instance, sweep=100, seed=3).to_json()
    assert a == b


def test_explicit_theta_must_be_closed():
    instance = _inst("II", rho=1, B=0, c=0)
    with pytest.raises(ThetaNotClosedError):
        hlck_rank(instance, sweep=1, thetas=[Form.phi(3, 3) + Form.phibar(3, 3)])


def test_twisted_system_matches_direct_slice():
    instance = _inst("II", rho=1, B=0, c=1)
    system = TwistedSystem(instance)
    coords = [1] + [0] * (len(system.theta_basis) - 1)
    theta = system.theta(coords)
    direct = closedness_slice("hlck", instance, theta)
    via = system.slice(coords)
    assert all(direct.contains(b) for b in via.basis) and direct.dim == via.dim


def test_h7_invariant_note():
    report = kahler_rank(instance_from_salamon("(0,0,0,12,13,23)"))
    assert any("h7" in n for n in report.notes)


def test_unknown_kind():
    with pytest.raises(ValueError):
        rank("balanced", _inst("P"))
