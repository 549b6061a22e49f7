"""The octahedron constant against an independent quadrature oracle."""

import mpmath

from volbridge import V_OCT


def lobachevsky(theta):
    return -mpmath.quad(lambda t: mpmath.log(abs(2 * mpmath.sin(t))), [0, theta])


def test_voct_matches_lobachevsky_integral():
    oracle = 8 * lobachevsky(mpmath.pi / 4)
    assert abs(V_OCT - float(oracle)) < 1e-12


def test_voct_is_four_catalan():
    assert abs(V_OCT - float(4 * mpmath.catalan)) < 1e-15


def test_voct_reference_window():
    assert abs(V_OCT - 3.663862) < 1e-5
