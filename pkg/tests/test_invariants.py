import json

import pytest
from hypothesis import given, settings, strategies as st

from helpers import poly, ring, setup
from torsam.corpus import fuzz_corpus
from torsam.groebner import Submodule, colon, power_submodule
from torsam.homology import Inconclusive
from torsam.invariants import (UNSUPPORTED, avramov_index, find_superficial, hilbert_series, hs_function,
                               hs_polynomial_value, invariant_report, is_nonzerodivisor, is_superficial,
                               levin_index, multiplicity, polyreg, postulation_number, rho)
from torsam.module import Module
from torsam.resolution import depth_dim


def test_hilbert_samuel_regular():
    R = ring("k[x,y]")
    M = R.as_module()
    assert [hs_function(M, n) for n in range(6)] == [(n + 1) * (n + 2) // 2 for n in range(6)]
    assert postulation_number(M) == 0
    assert multiplicity(M) == 1


def test_hilbert_samuel_double_line():
    R = ring("k[x,y] / (x^2)")
    M = R.as_module()
    assert [hs_function(M, n) for n in range(6)] == [1, 3, 5, 7, 9, 11]
    assert [hs_polynomial_value(M, n) for n in range(6)] == [1, 3, 5, 7, 9, 11]
    # the polynomial 2n + 1 already matches at n = 0
    assert postulation_number(M) == 0
    assert multiplicity(M) == 2


def test_hilbert_samuel_residue_field():
    k = Module.residue_field(ring("k[x,y,z]"))
    assert [hs_function(k, n) for n in range(4)] == [1, 1, 1, 1]
    assert postulation_number(k) == 0
    with pytest.raises(ValueError):
        hs_function(k, -1)
    with pytest.raises(ValueError):
        hilbert_series(Module.free(k.ring, []))


def test_postulation_positive():
    # R/m^3 in two variables: lengths 1, 3, 6, 6, ...; the constant 6 starts at n = 2
    R = ring("k[x,y]")
    Q = R.as_module().truncation(2).explicit()
    assert [hs_function(Q, n) for n in range(5)] == [1, 3, 6, 6, 6]
    assert postulation_number(Q) == 2


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**5))
def test_postulation_definition(seed):
    M = fuzz_corpus(seed, 1)[0].M
    c = postulation_number(M)
    for n in range(c, c + 6):
        assert hs_function(M, n) == hs_polynomial_value(M, n)
    if c > 0:
        assert hs_function(M, c - 1) != hs_polynomial_value(M, c - 1)


def test_superficial_examples():
    R = ring("k[x,y]")
    x, y = R.gens()
    assert is_superficial(x, R.as_module(), 6) == (True, 0)
    D = ring("k[x,y] / (x^2)")
    x, y = D.gens()
    assert not is_superficial(x, D.as_module(), 6)[0]
    assert is_superficial(y, D.as_module(), 6)[0]
    k = Module.residue_field(D)
    assert is_superficial(x, k, 6)[0] and is_superficial(x + y, k, 6)[0]
    with pytest.raises(ValueError):
        is_superficial(x * y, D.as_module(), 4)


def _colon_equal_by_groebner(M, x, n):
    """(m^{n+1}M : x) = m^n M, both taken with the relations of M, via Groebner bases."""
    rels = list(M.columns)
    big = power_submodule(M, n + 1)
    C = colon(Submodule(M.ring, M.degrees, list(big.gens) + rels), x)
    small = Submodule(M.ring, M.degrees, list(power_submodule(M, n).gens) + rels)
    return all(small.contains(v) for v in C.gens) and all(C.contains(v) for v in small.gens)


@pytest.mark.parametrize("spec, var", [("k[x,y] / (x^2)", "y"), ("k[x,y] / (x^2)", "x"),
                                       ("k[x,y,z] / (x*y)", "x + z"), ("k[x,y,z] / (x*y)", "x")])
def test_rho_against_groebner_colon(spec, var):
    R = ring(spec)
    M = R.as_module()
    x = poly(R, var)
    eq = [_colon_equal_by_groebner(M, x, n) for n in range(6)]
    if eq[-1]:
        r = rho(x, M, 5)
        assert all(eq[r:]) and (r == 0 or not eq[r - 1])
    else:
        with pytest.raises(Inconclusive):
            rho(x, M, 5)


def test_rho_examples():
    R = ring("k[x,y]")
    assert rho(R.gens()[0], R.as_module(), 6) == 0
    D = ring("k[x,y] / (x^2)")
    y = D.gens()[1]
    assert rho(y, D.as_module(), 6) == 0
    assert rho(y, Module.free(D, [0, 0]), 6) == rho(y, D.as_module(), 6)


def test_polyreg_examples():
    R = ring("k[x,y]")
    x, y = R.gens()
    assert polyreg(Module.residue_field(R)) == 0
    assert polyreg(Module.cyclic(R, [x * x])) == 1
    assert polyreg(R.as_module()) == 0
    assert polyreg(Module.free(R, [0, 1])) == UNSUPPORTED


def test_avramov_and_levin():
    R = ring("k[x,y]")
    assert avramov_index(R.as_module(), 3, 4) == 0
    assert levin_index(Module.residue_field(R), 3, 4) == 1
    with pytest.raises(ValueError):
        levin_index(R.as_module(), 2, 0)


def test_find_superficial_is_seeded():
    D = ring("k[x,y] / (x^2)")
    a = find_superficial([D.as_module()], seed=3)
    b = find_superficial([D.as_module()], seed=3)
    assert a == b and is_superficial(a, D.as_module(), 6)[0]
    with pytest.raises(ValueError):
        find_superficial([D.as_module()], trials=0)


def test_nonzerodivisor():
    D = ring("k[x,y] / (x^2)")
    x, y = D.gens()
    assert is_nonzerodivisor(y, D.as_module(), 5)
    assert not is_nonzerodivisor(x, D.as_module(), 5)


def test_report_carries_bounds():
    R, mods = setup("ring R = k[x,y] / (x^2)\nmodule M over R = coker deg(0) [[x]]")
    rep = invariant_report(mods["M"], n_max=6)
    json.dumps(rep)
    assert rep["bounds"]["n_max"] == 6 and "i_max" in rep["bounds"] and "s_max" in rep["bounds"]
    assert (rep["dim"], rep["depth"], rep["multiplicity"]) == (1, 1, 1)
    assert rep["embdim_R"] == 2


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**5))
def test_rho_bounded_by_polyreg(seed):
    inst = fuzz_corpus(seed, 1)[0]
    M = inst.M
    pr = polyreg(M)
    if pr == UNSUPPORTED or depth_dim(M)[0] < 1:
        return
    try:
        x = find_superficial([M], 10, seed, 8)
        r = rho(x, M, 8)
    except Inconclusive:
        return
    assert r <= pr + 1
