from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import setup
from torsam.fitter import evaluate, fit, fit_values
from torsam.homology import Inconclusive, tor_table


def test_examples():
    fp = fit_values([2, 3, 4, 5, 6, 7])
    assert fp.coeffs == [2, 1] and fp.degree == 1 and fp.n0 == 0
    fp = fit_values([1, 1, 1, 1, 1])
    assert fp.coeffs == [1] and fp.degree == 0
    fp = fit_values([0] * 6)
    assert fp.coeffs == [] and fp.degree == -1 and fp(7) == 0


def test_stabilization_index():
    fp = fit_values([5, 0, 1, 2, 3, 4, 5, 6])
    assert fp.n0 == 1 and fp.coeffs == [-1, 1]
    fp = fit_values([7, 9, 0, 0, 0, 0], n_start=3)
    assert fp.n0 == 5 and fp.degree == -1


def test_no_stable_window():
    with pytest.raises(Inconclusive):
        fit_values([1, 2, 4, 8, 16])
    with pytest.raises(Inconclusive):
        fit_values([1, 2])


def test_json():
    fp = fit_values([comb(n + 2, 2) for n in range(8)])
    assert fp.to_json() == {"coeffs": [[1, 1], [3, 2], [1, 2]], "degree": 2, "n0": 0, "window": 8}


def test_fit_of_table():
    R, mods = setup("ring R = k[x,y]\nmodule k over R = coker deg(0) [[x, y]]")
    fp = fit(tor_table(mods["k"], "quotient", (1,), 6), 1)
    assert fp.degree == 1 and fp(10) == 12


def _binomial_poly(data):
    """Integer-valued polynomial sum a_j C(n, j) as rational coefficients."""
    coeffs = [Fraction(0)] * 5
    for j, a in enumerate(data):
        poly = [Fraction(1)]
        for r in range(j):
            poly = [Fraction(0)] + poly
            for s in range(len(poly) - 1):
                poly[s] -= r * poly[s + 1]
        for s, c in enumerate(poly):
            coeffs[s] += a * c / np.prod(range(1, j + 1), dtype=object)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def test_round_trip_100_random():
    rng = np.random.default_rng(0)
    for _ in range(100):
        data = [int(a) for a in rng.integers(-20, 21, size=int(rng.integers(1, 6)))]
        q = _binomial_poly(data)
        n_max = 4 + 4 + int(rng.integers(0, 4))
        vals = [int(v) for v in evaluate(q, range(n_max + 1))]
        fp = fit_values(vals)
        assert fp.coeffs == q
        assert fp.n0 == 0


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=1, max_size=5), st.lists(st.integers(-50, 50), max_size=4))
def test_fit_reproduces_tail(data, prefix):
    q = _binomial_poly(data)
    k = len(prefix)
    vals = list(prefix) + [int(v) for v in evaluate(q, range(k, k + 9))]
    fp = fit_values(vals)
    assert fp.coeffs == q
    assert fp.n0 <= k
    for n in range(fp.n0, len(vals)):
        assert fp(n) == vals[n]
    assert fp.window == len(vals) - fp.n0


def test_additivity():
    a = fit_values([1, 3, 5, 7, 9, 11])
    b = fit_values([2, 2, 2, 2, 2, 2])
    assert (a + b).same_polynomial(fit_values([3, 5, 7, 9, 11, 13]))
