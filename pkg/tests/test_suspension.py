from fractions import Fraction

from hermrank.suspension import (
    QUARTIC,
    characteristic_polynomial,
    conjugate_quadratic,
    lattice_matrix,
    psd_obstruction,
    quadratic,
    quartic,
    suspension_report,
)


def test_factorisation():
    assert quadratic() * conjugate_quadratic() == quartic()


def test_companion_matrix():
    m = lattice_matrix()
    assert all(isinstance(x, int) for row in m for x in row)
    assert characteristic_polynomial(m) == [Fraction(c) for c in QUARTIC]


def test_fixed_forms_not_semipositive():
    steps = psd_obstruction()
    assert all(s.passed for s in steps)


def test_report():
    report = suspension_report()
    assert report.ok
    assert report.to_json()["verdict"].startswith("Kr(M) = 1")
    assert "[FAIL]" not in report.to_text()
