from fractions import Fraction as F

import pytest

from lattice_kissing.lattice import catalog
from lattice_kissing.shells import ShellQuery, enumerate_shell
from lattice_kissing.theta import ThetaSeries, delta_coefficients, ramanujan_tau, sigma, theta_coefficient


def test_sigma():
    assert sigma(1, 12) == 28
    assert sigma(3, 2) == 9
    assert sigma(0, 36) == 9
    with pytest.raises(ValueError):
        sigma(1, 0)


def test_tau_values():
    assert [ramanujan_tau(n) for n in range(1, 11)] == [
        1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920,
    ]
    with pytest.raises(ValueError):
        ramanujan_tau(65)


def test_tau_multiplicative():
    t = ramanujan_tau
    assert t(6) == t(2) * t(3)
    assert t(20) == t(4) * t(5)
    # Hecke relation at p = 2
    assert t(8) == t(2) * t(4) - 2**11 * t(2)


def test_delta_starts_at_q():
    c = delta_coefficients()
    assert c[0] == 0 and c[1] == 1 and len(c) == 65


def test_e8_coefficients():
    assert ThetaSeries("E8", 4).coeffs == {0: 1, 1: 240, 2: 2160, 3: 6720, 4: 17520}


def test_leech_coefficients():
    assert [theta_coefficient("Leech", k) for k in range(5)] == [1, 0, 196560, 16773120, 398034000]
    assert ThetaSeries("Leech", 4).shell_sum(2, 4) == 415003680


def test_leech_integral_to_64():
    coeffs = ThetaSeries("Leech", 64).coeffs
    assert all(c > 0 for k, c in coeffs.items() if k >= 2)


def test_unknown_lattice():
    with pytest.raises(KeyError):
        theta_coefficient("D4", 1)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_e8_matches_enumeration(k):
    sh = enumerate_shell(ShellQuery(catalog("E8"), F(2 * k), F(2 * k)))
    assert sh.total == theta_coefficient("E8", k)
