from fractions import Fraction

import pytest

from hermrank.gaussian import GaussianRational, I, as_fraction


def test_as_fraction_accepts_ratios_and_decimals():
    assert as_fraction("3/4") == Fraction(3, 4)
    assert as_fraction("0.125") == Fraction(1, 8)
    assert as_fraction(-2) == -2


@pytest.mark.parametrize("bad", ["1/0", "x", "1//2"])
def test_as_fraction_rejects_malformed(bad):
    with pytest.raises(ValueError):
        as_fraction(bad)


def test_as_fraction_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        as_fraction(True)


def test_field_operations():
    a = GaussianRational(1, 2)
    b = GaussianRational(Fraction(1, 3), -1)
    assert a * b == GaussianRational(Fraction(1, 3) + 2, Fraction(2, 3) - 1)
    assert (a / b) * b == a
    assert a * a.inverse() == 1
    assert I * I == -1
    assert a.conj() == GaussianRational(1, -2)
    assert a.abs2() == 5


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(0).inverse()


def test_json_round_trip_and_equality_with_fraction():
    a = GaussianRational(Fraction(-7, 3), Fraction(1, 2))
    assert GaussianRational.from_json(a.to_json()) == a
    assert GaussianRational(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(GaussianRational(3)) == hash(GaussianRational(3, 0))


def test_immutable():
    with pytest.raises(AttributeError):
        GaussianRational(1).re = 2


def test_pickle_and_copy():
    import copy
    import pickle

    a = GaussianRational(Fraction(2, 3), -5)
    assert pickle.loads(pickle.dumps(a)) == a
    assert copy.deepcopy([a])[0] == a
